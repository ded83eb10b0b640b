#include <algorithm>
#include <bit>

#include "opct/combinatorics.hpp"

namespace opct {

Relation::Relation(std::size_t left, std::size_t right, std::vector<std::pair<Node, Node>> pairs)
    : left_(left), right_(right), pairs_(std::move(pairs)), fwd_(left), back_(right)
{
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
    for (auto [a, b] : pairs_) {
        if (a >= left_ || b >= right_) throw EndpointMismatch("relation pair out of range");
        fwd_[a].push_back(b);
        back_[b].push_back(a);
    }
    for (auto& s : back_) std::sort(s.begin(), s.end());
}

Relation Relation::identity(std::size_t n)
{
    std::vector<std::pair<Node, Node>> pairs;
    for (Node v = 0; v < n; ++v) pairs.emplace_back(v, v);
    return Relation(n, n, std::move(pairs));
}

Relation Relation::order(const Poset& p)
{
    std::vector<std::pair<Node, Node>> pairs;
    for (Node v = 0; v < p.size(); ++v)
        for (Node u : p.up(v)) pairs.emplace_back(v, u);
    return Relation(p.size(), p.size(), std::move(pairs));
}

bool Relation::related(Node a, Node b) const { return a < left_ && contains(fwd_[a], b); }

NodeSet Relation::preimage(const NodeSet& s) const
{
    NodeSet out;
    for (Node a : s) out.insert(out.end(), fwd_.at(a).begin(), fwd_.at(a).end());
    return normalized(std::move(out));
}

NodeSet Relation::image(const NodeSet& t) const
{
    NodeSet out;
    for (Node b : t) out.insert(out.end(), back_.at(b).begin(), back_.at(b).end());
    return normalized(std::move(out));
}

Relation Relation::compose(const Relation& next) const
{
    if (right_ != next.left_) throw EndpointMismatch("composition endpoints differ");
    std::vector<std::pair<Node, Node>> pairs;
    for (Node a = 0; a < left_; ++a) {
        NodeSet reach = next.preimage(fwd_[a]);
        for (Node c : reach) pairs.emplace_back(a, c);
    }
    return Relation(left_, next.right_, std::move(pairs));
}

Relation Relation::converse() const
{
    std::vector<std::pair<Node, Node>> pairs;
    for (auto [a, b] : pairs_) pairs.emplace_back(b, a);
    return Relation(right_, left_, std::move(pairs));
}

Relation Relation::restricted(const NodeSet& left_part, const NodeSet& right_part) const
{
    std::vector<std::pair<Node, Node>> pairs;
    for (auto [a, b] : pairs_)
        if (contains(left_part, a) && contains(right_part, b)) pairs.emplace_back(a, b);
    return Relation(left_, right_, std::move(pairs));
}

bool Relation::is_surjective() const
{
    return std::all_of(fwd_.begin(), fwd_.end(), [](const NodeSet& s) { return !s.empty(); });
}

bool Relation::is_injective() const
{
    for (Node b = 0; b < right_; ++b) {
        bool ok = std::any_of(back_[b].begin(), back_[b].end(), [&](Node a) { return fwd_[a].size() == 1; });
        if (!ok) return false;
    }
    return true;
}

bool Relation::subset_of(const Relation& other) const
{
    return std::all_of(pairs_.begin(), pairs_.end(), [&](auto pr) { return other.related(pr.first, pr.second); });
}

bool refines(const Poset& p, const NodeSet& s, const NodeSet& t)
{
    return std::all_of(s.begin(), s.end(), [&](Node x) {
        return std::any_of(t.begin(), t.end(), [&](Node y) { return p.leq(x, y); });
    });
}

bool refines(const Relation& r, const NodeSet& s, const NodeSet& t)
{
    return std::all_of(s.begin(), s.end(), [&](Node x) { return intersects(r.above(x), t); });
}

bool is_antichain(const Poset& p, const NodeSet& s)
{
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (p.comparable(s[i], s[j])) return false;
    return true;
}

namespace {

bool finite_at(const Poset& p, int d) { return p.has(kFiniteComplete) && d == p.depth(); }

NodeSet truncation(const Poset& p, int d)
{
    NodeSet out;
    for (Node v = 0; v < p.size(); ++v)
        if (p.first_level(v) <= d) out.push_back(v);
    return p.sorted_by_id(out);
}

}  // namespace

Verdict is_band(const Poset& p, const NodeSet& b, int depth)
{
    const int d = std::clamp(depth, 0, p.depth());
    for (Node x : truncation(p, d)) {
        bool ok = std::any_of(b.begin(), b.end(), [&](Node y) { return p.comparable(x, y); });
        if (!ok) {
            Verdict v = Verdict::make_fails({x});
            v.note = p.name(x) + " is comparable to no member";
            return v;
        }
    }
    if (finite_at(p, d)) {
        Verdict v = Verdict::make_holds();
        v.assume("finite_complete");
        return v;
    }
    // Deeper elements sit below some element of level d.
    const NodeSet& deepest = p.level(d);
    bool covered = std::all_of(deepest.begin(), deepest.end(), [&](Node x) {
        return std::any_of(b.begin(), b.end(), [&](Node y) { return p.leq(x, y); });
    });
    if (covered) {
        Verdict v = Verdict::make_holds();
        v.certificate_level = d;
        return v;
    }
    return Verdict::make_unknown(d, "level " + std::to_string(d) + " is not below the set");
}

Verdict is_cap(const Poset& p, const NodeSet& c, int depth)
{
    const int d = std::clamp(depth, 0, p.depth());
    if (c.empty()) return Verdict::make_fails();
    for (int n = 0; n <= d; ++n)
        if (refines(p, p.level(n), c)) {
            Verdict v = Verdict::make_holds();
            v.certificate_level = n;
            if (finite_at(p, d)) v.assume("finite_complete");
            return v;
        }
    // An atom outside c's down-set persists in every level, so no level refines c.
    for (Node x : truncation(p, d)) {
        bool atom = p.atom_marked(x) || (finite_at(p, d) && p.children(x).empty());
        if (atom && !std::any_of(c.begin(), c.end(), [&](Node y) { return p.leq(x, y); })) {
            Verdict v = Verdict::make_fails({x});
            v.note = "atom " + p.name(x) + " lies below no member";
            if (finite_at(p, d)) v.assume("finite_complete");
            return v;
        }
    }
    return Verdict::make_unknown(d, "no level within depth refines the set");
}

Verdict cap_order_leq(const Poset& p, Node a, Node b, int depth)
{
    const int d = std::clamp(depth, 0, p.depth());
    if (p.leq(a, b)) return Verdict::make_holds();
    if (finite_at(p, d) && p.size() <= kOracleBound) {
        OracleResult o = oracle(p);
        std::uint32_t qa = o.mask_of({a}), qb = o.mask_of({b});
        for (std::uint32_t f = 0; f <= o.full(); ++f)
            if (o.cap[f | qa] && !o.cap[f | qb]) {
                Verdict v = Verdict::make_fails(o.set_of(f));
                v.assume("finite_complete");
                v.note = "F with F+a a cap and F+b not";
                return v;
            }
        Verdict v = Verdict::make_holds();
        v.assume("finite_complete");
        return v;
    }
    // Search F among subsets of small levels.
    for (int n = 0; n <= d; ++n) {
        NodeSet lv = p.sorted_by_id(p.level(n));
        if (lv.size() > 12) continue;
        for (std::uint32_t m = 0; m < (1u << lv.size()); ++m) {
            NodeSet f;
            for (std::size_t i = 0; i < lv.size(); ++i)
                if (m >> i & 1u) f.push_back(lv[i]);
            f = normalized(std::move(f));
            if (!is_cap(p, set_union(f, {a}), d).holds()) continue;
            if (is_cap(p, set_union(f, {b}), d).fails()) {
                Verdict v = Verdict::make_fails(p.sorted_by_id(f));
                v.note = "F with F+a a cap and F+b not";
                return v;
            }
        }
    }
    return Verdict::make_unknown(d, "cap order is not decided by finite data");
}

std::uint32_t OracleResult::mask_of(const NodeSet& s) const
{
    std::uint32_t m = 0;
    for (Node v : s) {
        auto it = std::find(nodes.begin(), nodes.end(), v);
        if (it != nodes.end()) m |= 1u << (it - nodes.begin());
    }
    return m;
}

NodeSet OracleResult::set_of(std::uint32_t mask) const
{
    NodeSet out;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (mask >> i & 1u) out.push_back(nodes[i]);
    return normalized(std::move(out));
}

bool OracleResult::cap_below(std::uint32_t q, std::uint32_t r) const
{
    for (std::uint32_t f = 0; f <= full(); ++f)
        if (cap[f | q] && !cap[f | r]) return false;
    return true;
}

OracleResult oracle(const Poset& p, std::size_t bound)
{
    if (p.size() > bound || p.size() >= 31)
        throw SizeBound("oracle needs at most " + std::to_string(bound) + " elements, got " + std::to_string(p.size()));
    OracleResult o;
    const std::size_t n = p.size();
    for (Node v = 0; v < n; ++v) o.nodes.push_back(v);
    const std::uint32_t full = o.full();
    std::vector<std::uint32_t> comp(n, 0), down(n, 0);
    for (Node x = 0; x < n; ++x)
        for (Node y = 0; y < n; ++y) {
            if (p.comparable(x, y)) comp[x] |= 1u << y;
            if (p.leq(y, x)) down[x] |= 1u << y;
        }
    const std::size_t subsets = std::size_t{1} << n;
    o.band.assign(subsets, false);
    o.cap.assign(subsets, false);
    std::vector<std::uint32_t> downset(subsets, 0), reach(subsets, 0);
    for (std::uint32_t m = 1; m < subsets; ++m) {
        int low = std::countr_zero(m);
        std::uint32_t rest = m & (m - 1);
        reach[m] = reach[rest] | comp[low];
        downset[m] = downset[rest] | down[low];
        o.band[m] = reach[m] == full;
    }
    if (n == 0) o.band[0] = true;
    // C is a cap iff some band lies inside its down-set; bands are closed
    // upward, so iff the down-set itself is a band.
    for (std::uint32_t m = 0; m < subsets; ++m) o.cap[m] = o.band[downset[m]];
    for (std::uint32_t m = 0; m < subsets; ++m) {
        if (o.band[m]) o.bands.push_back(m);
        if (!o.cap[m]) continue;
        o.caps.push_back(m);
        bool minimal = true;
        for (std::uint32_t r = m; r && minimal; r &= r - 1)
            if (o.cap[m & ~(r & -r)]) minimal = false;
        if (minimal) o.minimal_caps.push_back(m);
    }
    // S meets every cap iff its complement is not a cap.
    auto selector = [&](std::uint32_t m) { return !o.cap[full & ~m]; };
    for (std::uint32_t m = 0; m < subsets; ++m) {
        if (!selector(m)) continue;
        o.selectors.push_back(m);
        bool minimal = true;
        for (std::uint32_t r = m; r && minimal; r &= r - 1)
            if (selector(m & ~(r & -r))) minimal = false;
        if (minimal) o.minimal_selectors.push_back(m);
    }
    return o;
}

}  // namespace opct
