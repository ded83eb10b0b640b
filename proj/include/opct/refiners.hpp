#pragma once

#include <stdexcept>
#include <vector>

#include "opct/combinatorics.hpp"
#include "opct/poset.hpp"
#include "opct/spectrum.hpp"

namespace opct {

class StageMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ⊐ ⊆ Q×P stored as the relation p ⊏ q: left side source P, right side target Q.
struct Refiner {
    const Poset* source = nullptr;
    const Poset* target = nullptr;
    Relation rel;

    static Refiner identity(const Poset& p);
    // p ⊏ q iff p <= q, matching by name inside whichever poset holds both.
    static Refiner order(const Poset& source, const Poset& target);
    // p ⊏ q iff q <= p, matching by name.
    static Refiner reverse_order(const Poset& source, const Poset& target);
};

// Back-and-forth data: C_n = level c_levels[n] of p, D_n = level d_levels[n]
// of q; forward[n] ⊆ C_n×D_n (left p, right q) and back[n] ⊆ D_{n+1}×C_n
// (left q, right p).
struct StagedFamily {
    const Poset* p = nullptr;
    const Poset* q = nullptr;
    std::vector<int> c_levels, d_levels;
    std::vector<Relation> forward, back;
};

Verdict check_refiner(const Refiner& r, int depth);
Verdict check_wedge_preserving(const Refiner& r, int depth);
SelectorPrefix apply_refiner(const Refiner& r, const Thread& t, int depth);

struct StarResult {
    Refiner refiner;
    bool complete = true;  // no pair was dropped for undecided wedges
};
StarResult star_of_refiner(const Refiner& r, int depth);
Refiner compose(const Refiner& first, const Refiner& second);  // p ⊏ q ⊏' s
StarResult star_compose(const Refiner& second, const Refiner& first, int depth);
// ◁ of a poset as a refiner from p to itself.
StarResult star_below_refiner(const Poset& p, int depth);
Verdict check_strong(const Refiner& r, int depth);

// r: P→Q, s: Q→P.
Verdict check_birefinable(const Refiner& r, const Refiner& s, int depth);
Verdict verify_back_and_forth(const StagedFamily& f, int depth);

}  // namespace opct
