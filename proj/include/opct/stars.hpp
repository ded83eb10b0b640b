#pragma once

#include <optional>
#include <vector>

#include "opct/poset.hpp"

namespace opct {

// Common-lower-bound relation decided from the levels <= depth.
//
// Yes: a common lower bound exists in the truncation.
// No: finite_complete, an atom is involved, graded+edge_witnessing with the
//     next level available, or some pair of upper bounds is already No.
// Maybe: anything else.
class Wedges {
public:
    Wedges(const Poset& p, int depth);

    const Poset& poset() const { return *p_; }
    int depth() const { return depth_; }

    Tri operator()(Node a, Node b) const;
    Outcome decide(Node a, Node b) const;
    std::optional<Node> witness(Node a, Node b) const;
    const NodeSet& proved_with(Node a) const { return proved_[a]; }

    // Deepest level whose same-level wedges this cache can settle.
    int settled_level() const;
    bool used_edge_witnessing() const { return used_ew_; }
    void stamp(Verdict& v) const;

private:
    bool proved(Node a, Node b) const;
    bool base_no(Node a, Node b) const;

    const Poset* p_;
    int depth_;
    bool finite_;
    bool ew_;
    std::vector<NodeSet> proved_;
    mutable bool used_ew_ = false;
};

struct Star {
    NodeSet sure;
    NodeSet maybe;
    bool decided() const { return maybe.empty(); }
    NodeSet upper() const { return set_union(sure, maybe); }
};

Star star(const Wedges& w, Node p, const NodeSet& cap);
NodeSet star(const Poset& p, Node e, const NodeSet& cap, int depth);

// Every element of s lies below q.
bool all_below(const Poset& p, const NodeSet& s, Node q);

Verdict wedge(const Poset& p, Node a, Node b, int depth);
Verdict star_below(const Wedges& w, Node p, Node q);
Verdict star_below(const Poset& p, Node a, Node b, int depth);
Verdict star_refines(const Wedges& w, int m, int n);
Verdict star_refines(const Poset& p, int m, int n, int depth);
Verdict check_regular(const Poset& p, int depth, int skip_bound = 3);
Verdict check_edge_witnessing(const Poset& p, int depth);
Verdict check_star_refining(const Poset& p, int depth);
Verdict is_round(const Wedges& w, const NodeSet& s);
Verdict is_round(const Poset& p, const NodeSet& s, int depth);

// Holds with the enumeration p_1..p_n in Verdict::witness.
Verdict is_snake(const Wedges& w, const NodeSet& c);
Verdict is_snake(const Poset& p, const NodeSet& c, int depth);

}  // namespace opct
