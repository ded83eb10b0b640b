#pragma once

#include <stdexcept>

#include "opct/poset.hpp"

namespace opct {

class NotARefinement : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotAPath : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kTangledBound = 12;

// A ↬ B over all cluster pairs of A. `weak` replaces C∧D by C∩D≠∅.
// On Fails, witness lists C then D and certificate_level holds |C|.
Verdict is_tangled_refinement(const Poset& p, const NodeSet& a, const NodeSet& b, int depth, bool weak = false,
                              std::size_t bound = kTangledBound);

// Crookedness of path `fine` inside path `coarse`. On Fails the witness is (a, d).
Verdict is_path_crooked(const Poset& p, const NodeSet& fine, const NodeSet& coarse, int depth);

// Every level below the settled depth has a tangled refinement among the
// next `gap` levels.
Verdict check_tangled_poset(const Poset& p, int depth, std::size_t size_bound = kTangledBound, int gap = 3);

}  // namespace opct
