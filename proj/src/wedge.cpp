#include <algorithm>

#include "opct/stars.hpp"

namespace opct {

Wedges::Wedges(const Poset& p, int depth)
    : p_(&p),
      depth_(std::clamp(depth, 0, p.depth())),
      finite_(p.has(kFiniteComplete) && depth_ == p.depth()),
      ew_(p.has(kGraded) && p.has(kEdgeWitnessing))
{
    proved_.assign(p.size(), {});
    for (Node r = 0; r < p.size(); ++r) {
        if (p.first_level(r) > depth_) continue;
        const NodeSet& u = p.up(r);
        for (Node a : u)
            proved_[a].insert(proved_[a].end(), u.begin(), u.end());
    }
    for (auto& s : proved_) s = normalized(std::move(s));
}

bool Wedges::proved(Node a, Node b) const { return contains(proved_[a], b); }

int Wedges::settled_level() const { return finite_ ? depth_ : depth_ - 1; }

bool Wedges::base_no(Node a, Node b) const
{
    if (proved(a, b)) return false;
    if (finite_) return true;
    if (p_->atom_marked(a) || p_->atom_marked(b)) return true;
    if (ew_ && std::max(p_->first_level(a), p_->first_level(b)) + 1 <= depth_) {
        used_ew_ = true;
        return true;
    }
    return false;
}

Tri Wedges::operator()(Node a, Node b) const
{
    if (proved(a, b)) return Tri::Yes;
    if (base_no(a, b)) return Tri::No;
    // Wedging passes upward, so a settled non-wedge above settles this pair.
    for (Node x : p_->up(a))
        for (Node y : p_->up(b))
            if ((x != a || y != b) && base_no(x, y)) return Tri::No;
    return Tri::Maybe;
}

Outcome Wedges::decide(Node a, Node b) const
{
    switch ((*this)(a, b)) {
    case Tri::Yes: return Outcome::Holds;
    case Tri::No: return Outcome::Fails;
    default: return Outcome::Unknown;
    }
}

std::optional<Node> Wedges::witness(Node a, Node b) const
{
    if (!proved(a, b)) return std::nullopt;
    NodeSet common = set_intersection(p_->down_closure({a}, depth_), p_->down_closure({b}, depth_));
    if (common.empty()) return std::nullopt;
    return p_->sorted_by_id(common).front();
}

void Wedges::stamp(Verdict& v) const
{
    if (used_ew_) v.assume("edge_witnessing");
    if (finite_) v.assume("finite_complete");
}

}  // namespace opct
