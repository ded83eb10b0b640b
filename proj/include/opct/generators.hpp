#pragma once

#include <stdexcept>
#include <string>

#include "opct/poset.hpp"
#include "opct/refiners.hpp"

namespace opct {

class GenerationFailed : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Level n holds 2^{n+1}-1 dyadic intervals named like "[0,1/2)" or "(1/4,3/4)".
Poset gen_arc(int depth);
// {X} then 2^{n+1} arcs of the circle; each arc covers three arcs below it.
Poset gen_circle(int depth);
// Full k-ary tree, level n has k^n nodes.
Poset gen_tree(int k, int depth);
// p_{n,i} for i <= n, named "p<n>_<i>".
Poset gen_cofinite(int depth);

inline constexpr int kMaxCrookedDepth = 4;
// Tower of paths with level sizes 1, 1, 2, 3, 9 and a straight witness level
// below the last one, so the truncation has depth+1 levels. Every
// consecutive pair is checked with is_path_crooked before returning.
Poset gen_crooked(int depth);

// Levels P_n x {n}, names "name@n".
Poset gradify(const Poset& p);
// Back-and-forth stages between gradify(p) (first poset) and p (second).
// Both posets must outlive the result.
StagedFamily gradification_stages(const Poset& p, const Poset& graded);

// Levels 0, step, 2 step, ... of a graded poset with the induced order.
Poset level_subsequence(const Poset& p, int step);

// Dyadic endpoints of arc element k (0-based) of level n: (k/2^{n+1}, (k+2)/2^{n+1}).
std::string dyadic_interval_name(int n, long long k);

}  // namespace opct
