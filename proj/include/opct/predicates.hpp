#pragma once

#include <string>
#include <utility>
#include <vector>

#include "opct/poset.hpp"

namespace opct {

struct PredicateReport {
    std::string name;
    Verdict verdict;
    std::vector<std::pair<std::string, Outcome>> detail;  // per level or level pair
};

Verdict check_graded(const Poset& p);
Verdict check_weakly_graded(const Poset& p);
Verdict check_predetermined(const Poset& p, int depth);
Verdict check_level_injective(const Poset& p, int m, int n);
PredicateReport check_level_injective_all(const Poset& p, int depth);
Verdict check_branching(const Poset& p, int depth);
Verdict check_prime_element(const Poset& p, Node e, int depth);
// Every element prime. Decided only for finite_complete posets.
Verdict check_prime(const Poset& p, int depth);
Verdict check_cap_determined_sufficient(const Poset& p, int depth);
// Exact via the cap order on finite_complete posets, else the sufficient test.
Verdict check_cap_determined(const Poset& p, int depth);

}  // namespace opct
