#include "opct/poset.hpp"

#include <algorithm>
#include <functional>

namespace opct {

std::string_view to_string(Outcome o)
{
    switch (o) {
    case Outcome::Holds: return "Holds";
    case Outcome::Fails: return "Fails";
    case Outcome::Unknown: return "Unknown";
    }
    return "Unknown";
}

void Verdict::assume(const std::string& a)
{
    if (std::find(assumptions.begin(), assumptions.end(), a) == assumptions.end())
        assumptions.push_back(a);
}

Outcome both(Outcome a, Outcome b)
{
    if (a == Outcome::Fails || b == Outcome::Fails) return Outcome::Fails;
    if (a == Outcome::Unknown || b == Outcome::Unknown) return Outcome::Unknown;
    return Outcome::Holds;
}

Outcome either(Outcome a, Outcome b)
{
    if (a == Outcome::Holds || b == Outcome::Holds) return Outcome::Holds;
    if (a == Outcome::Unknown || b == Outcome::Unknown) return Outcome::Unknown;
    return Outcome::Fails;
}

Outcome negate(Outcome a)
{
    if (a == Outcome::Holds) return Outcome::Fails;
    if (a == Outcome::Fails) return Outcome::Holds;
    return Outcome::Unknown;
}

namespace {

const std::pair<Flag, const char*> kFlagNames[] = {
    {kGraded, "graded"},
    {kAtomless, "atomless"},
    {kEdgeWitnessing, "edge_witnessing"},
    {kStarRefining, "star_refining"},
    {kFiniteComplete, "finite_complete"},
};

[[noreturn]] void fail(BuildErrorKind k, const std::string& el, const std::string& msg)
{
    throw BuildError(k, el, to_string(k) + ": " + msg);
}

}  // namespace

std::string flag_name(Flag f)
{
    for (auto& [flag, name] : kFlagNames)
        if (flag == f) return name;
    return "?";
}

std::optional<Flag> flag_from_name(const std::string& s)
{
    std::string t = s;
    std::replace(t.begin(), t.end(), '-', '_');
    for (auto& [flag, name] : kFlagNames)
        if (t == name) return flag;
    return std::nullopt;
}

std::vector<std::string> flag_names(unsigned flags)
{
    std::vector<std::string> out;
    for (auto& [flag, name] : kFlagNames)
        if (flags & flag) out.emplace_back(name);
    return out;
}

std::string to_string(BuildErrorKind k)
{
    switch (k) {
    case BuildErrorKind::EmptyLevel: return "EmptyLevel";
    case BuildErrorKind::DuplicateName: return "DuplicateName";
    case BuildErrorKind::UnknownElement: return "UnknownElement";
    case BuildErrorKind::EdgeDirection: return "EdgeDirection";
    case BuildErrorKind::GradedEdgeSpan: return "GradedEdgeSpan";
    case BuildErrorKind::LevelNotAntichain: return "LevelNotAntichain";
    case BuildErrorKind::RefinementGap: return "RefinementGap";
    case BuildErrorKind::CorefinementGap: return "CorefinementGap";
    case BuildErrorKind::SharedNonAtom: return "SharedNonAtom";
    case BuildErrorKind::AtomWithLowerBound: return "AtomWithLowerBound";
    case BuildErrorKind::LevelMismatch: return "LevelMismatch";
    }
    return "?";
}

bool contains(const NodeSet& s, Node v) { return std::binary_search(s.begin(), s.end(), v); }

NodeSet set_union(const NodeSet& a, const NodeSet& b)
{
    NodeSet r;
    r.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

NodeSet set_intersection(const NodeSet& a, const NodeSet& b)
{
    NodeSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

NodeSet set_difference(const NodeSet& a, const NodeSet& b)
{
    NodeSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

bool intersects(const NodeSet& a, const NodeSet& b)
{
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else return true;
    }
    return false;
}

bool subset_of(const NodeSet& a, const NodeSet& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

NodeSet normalized(NodeSet s)
{
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

Poset Poset::build(const PosetSpec& spec)
{
    Poset p;
    p.spec_ = spec;
    p.flags_ = spec.flags;
    const bool finite = spec.flags & kFiniteComplete;

    if (spec.levels.empty()) fail(BuildErrorKind::EmptyLevel, "", "no levels");

    // Nodes in order of first appearance.
    for (std::size_t n = 0; n < spec.levels.size(); ++n) {
        const auto& lv = spec.levels[n];
        if (lv.empty()) fail(BuildErrorKind::EmptyLevel, "", "level " + std::to_string(n) + " is empty");
        NodeSet row;
        for (std::size_t i = 0; i < lv.size(); ++i) {
            const std::string& nm = lv[i];
            auto it = p.index_.find(nm);
            if (it == p.index_.end()) {
                Node v = static_cast<Node>(p.names_.size());
                p.names_.push_back(nm);
                p.index_.emplace(nm, v);
                p.ids_.push_back({static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(i)});
                p.last_level_.push_back(static_cast<int>(n));
                row.push_back(v);
                continue;
            }
            Node v = it->second;
            if (p.last_level_[v] == static_cast<int>(n))
                fail(BuildErrorKind::DuplicateName, nm, "'" + nm + "' listed twice in level " + std::to_string(n));
            if (p.last_level_[v] != static_cast<int>(n) - 1)
                fail(BuildErrorKind::CorefinementGap, nm,
                     "'" + nm + "' reappears in level " + std::to_string(n) + " after a gap");
            p.last_level_[v] = static_cast<int>(n);
            row.push_back(v);
        }
        p.levels_.push_back(std::move(row));
    }

    const std::size_t N = p.names_.size();
    p.atom_.assign(N, false);
    for (const auto& a : spec.atoms) {
        auto v = p.find(a);
        if (!v) fail(BuildErrorKind::UnknownElement, a, "atom '" + a + "' is not in any level");
        p.atom_[*v] = true;
    }

    p.parents_.assign(N, {});
    p.children_.assign(N, {});
    for (const auto& [lo, hi] : spec.edges) {
        auto a = p.find(lo);
        auto b = p.find(hi);
        if (!a) fail(BuildErrorKind::UnknownElement, lo, "edge names unknown element '" + lo + "'");
        if (!b) fail(BuildErrorKind::UnknownElement, hi, "edge names unknown element '" + hi + "'");
        int la = p.first_level(*a), lb = p.first_level(*b);
        if (la <= lb)
            fail(BuildErrorKind::EdgeDirection, lo, "edge " + lo + " < " + hi + " does not go strictly downward");
        if ((spec.flags & kGraded) && la != lb + 1)
            fail(BuildErrorKind::GradedEdgeSpan, lo,
                 "graded poset edge " + lo + " < " + hi + " skips a level");
        p.parents_[*a].push_back(*b);
        p.children_[*b].push_back(*a);
    }
    for (auto& s : p.parents_) s = normalized(std::move(s));
    for (auto& s : p.children_) s = normalized(std::move(s));

    // Closure and ranks, shallow nodes first (parents always have a
    // smaller first level).
    std::vector<Node> order(N);
    for (Node v = 0; v < N; ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(),
                     [&](Node x, Node y) { return p.first_level(x) < p.first_level(y); });
    p.up_.assign(N, {});
    p.rank_.assign(N, 0);
    for (Node v : order) {
        NodeSet u{v};
        int r = 0;
        for (Node w : p.parents_[v]) {
            u = set_union(u, p.up_[w]);
            r = std::max(r, p.rank_[w] + 1);
        }
        p.up_[v] = std::move(u);
        p.rank_[v] = r;
    }

    if (finite) {
        for (Node v = 0; v < N; ++v) {
            if (p.children_[v].empty()) p.atom_[v] = true;
            else if (p.atom_[v])
                fail(BuildErrorKind::AtomWithLowerBound, p.names_[v], "'" + p.names_[v] + "' is marked atom but has lower bounds");
        }
        int maxr = 0;
        for (Node v = 0; v < N; ++v) maxr = std::max(maxr, p.rank_[v]);
        if (maxr != p.depth())
            fail(BuildErrorKind::LevelMismatch, "", "finite poset has " + std::to_string(maxr + 1) +
                                                        " rank levels but " + std::to_string(p.depth() + 1) + " are listed");
        for (int n = 0; n <= p.depth(); ++n) {
            NodeSet expect;
            for (Node v = 0; v < N; ++v) {
                if (p.rank_[v] > n) continue;
                bool minimal = true;
                for (Node w : p.children_[v])
                    if (p.rank_[w] <= n) minimal = false;
                if (minimal) expect.push_back(v);
            }
            if (normalized(p.levels_[n]) != expect)
                fail(BuildErrorKind::LevelMismatch, "",
                     "level " + std::to_string(n) + " differs from the minimal elements of the rank-" +
                         std::to_string(n) + " cone");
        }
        return p;
    }

    for (Node v = 0; v < N; ++v) {
        if (p.atom_[v] && !p.children_[v].empty())
            fail(BuildErrorKind::AtomWithLowerBound, p.names_[v], "'" + p.names_[v] + "' is marked atom but has lower bounds");
        if (p.atom_[v] && (spec.flags & kAtomless))
            fail(BuildErrorKind::AtomWithLowerBound, p.names_[v], "atomless poset marks '" + p.names_[v] + "' as atom");
        if (p.last_level_[v] != p.first_level(v) && !p.atom_[v])
            fail(BuildErrorKind::SharedNonAtom, p.names_[v],
                 "'" + p.names_[v] + "' is shared by consecutive levels but not marked atom");
    }

    for (int n = 0; n <= p.depth(); ++n) {
        for (Node v : p.levels_[n]) {
            for (Node w : p.levels_[n])
                if (v != w && p.leq(v, w))
                    fail(BuildErrorKind::LevelNotAntichain, p.names_[v],
                         p.names_[v] + " < " + p.names_[w] + " inside level " + std::to_string(n));
            if (n > 0 && !p.in_level(v, n - 1)) {
                bool ok = false;
                for (Node w : p.levels_[n - 1]) ok = ok || p.leq(v, w);
                if (!ok)
                    fail(BuildErrorKind::RefinementGap, p.names_[v],
                         "'" + p.names_[v] + "' has no upper bound in level " + std::to_string(n - 1));
            }
            if (n < p.depth() && !p.in_level(v, n + 1)) {
                bool ok = false;
                for (Node w : p.levels_[n + 1]) ok = ok || p.leq(w, v);
                if (!ok)
                    fail(BuildErrorKind::CorefinementGap, p.names_[v],
                         "'" + p.names_[v] + "' has no lower bound in level " + std::to_string(n + 1));
            }
        }
    }
    for (Node v = 0; v < N; ++v)
        if (p.rank_[v] != p.first_level(v))
            fail(BuildErrorKind::LevelMismatch, p.names_[v],
                 "'" + p.names_[v] + "' has rank " + std::to_string(p.rank_[v]) + " but first appears in level " +
                     std::to_string(p.first_level(v)));
    return p;
}

Poset Poset::from_order(const std::vector<std::string>& names,
                        const std::vector<std::pair<std::string, std::string>>& edges, unsigned extra_flags)
{
    const std::size_t N = names.size();
    std::unordered_map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < N; ++i)
        if (!idx.emplace(names[i], i).second)
            fail(BuildErrorKind::DuplicateName, names[i], "'" + names[i] + "' listed twice");
    std::vector<std::vector<std::size_t>> ups(N), downs(N);
    for (const auto& [lo, hi] : edges) {
        auto a = idx.find(lo), b = idx.find(hi);
        if (a == idx.end()) fail(BuildErrorKind::UnknownElement, lo, "unknown element '" + lo + "'");
        if (b == idx.end()) fail(BuildErrorKind::UnknownElement, hi, "unknown element '" + hi + "'");
        ups[a->second].push_back(b->second);
        downs[b->second].push_back(a->second);
    }
    std::vector<int> rank(N, -1), state(N, 0);
    std::function<int(std::size_t)> rk = [&](std::size_t v) -> int {
        if (state[v] == 2) return rank[v];
        if (state[v] == 1) fail(BuildErrorKind::EdgeDirection, names[v], "order contains a cycle through '" + names[v] + "'");
        state[v] = 1;
        int r = 0;
        for (auto w : ups[v]) r = std::max(r, rk(w) + 1);
        state[v] = 2;
        return rank[v] = r;
    };
    int maxr = 0;
    for (std::size_t v = 0; v < N; ++v) maxr = std::max(maxr, rk(v));

    // Transitive closure to decide minimality in cones.
    std::vector<std::vector<bool>> below(N, std::vector<bool>(N, false));  // below[v][w]: w < v
    std::vector<std::size_t> ord(N);
    for (std::size_t i = 0; i < N; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](auto x, auto y) { return rank[x] > rank[y]; });
    for (auto v : ord)
        for (auto w : downs[v]) {
            below[v][w] = true;
            for (std::size_t z = 0; z < N; ++z)
                if (below[w][z]) below[v][z] = true;
        }

    PosetSpec spec;
    spec.flags = kFiniteComplete | extra_flags;
    spec.edges = edges;
    for (int n = 0; n <= maxr; ++n) {
        std::vector<std::string> lv;
        for (std::size_t v = 0; v < N; ++v) {
            if (rank[v] > n) continue;
            bool minimal = true;
            for (std::size_t w = 0; w < N; ++w)
                if (below[v][w] && rank[w] <= n) minimal = false;
            if (minimal) lv.push_back(names[v]);
        }
        // carried atoms first, then elements of rank n in input order
        std::stable_partition(lv.begin(), lv.end(), [&](const std::string& s) { return rank[idx[s]] < n; });
        spec.levels.push_back(std::move(lv));
    }
    return build(spec);
}

Poset Poset::extend(const std::vector<std::string>& new_level,
                    const std::vector<std::pair<std::string, std::string>>& new_edges) const
{
    PosetSpec s = spec_;
    s.levels.push_back(new_level);
    s.edges.insert(s.edges.end(), new_edges.begin(), new_edges.end());
    return build(s);
}

Poset Poset::with_flags(unsigned extra) const
{
    if ((flags_ | extra) == flags_) return *this;
    PosetSpec s = spec_;
    s.flags |= extra;
    return build(s);
}

const NodeSet& Poset::level(int n) const
{
    if (n < 0 || n > depth()) throw DepthExceeded("level " + std::to_string(n) + " beyond depth " + std::to_string(depth()));
    return levels_[n];
}

std::vector<Node> Poset::level_sorted(int n) const { return normalized(level(n)); }

NodeSet Poset::cone(int n) const
{
    if (n < 0 || n > depth()) throw DepthExceeded("cone " + std::to_string(n) + " beyond depth " + std::to_string(depth()));
    NodeSet out;
    for (Node v = 0; v < size(); ++v)
        if (rank_[v] <= n) out.push_back(v);
    return out;
}

std::optional<Node> Poset::find(const std::string& nm) const
{
    auto it = index_.find(nm);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Node Poset::at(const std::string& nm) const
{
    auto v = find(nm);
    if (!v) throw std::out_of_range("unknown element '" + nm + "'");
    return *v;
}

Node Poset::node(ElementId e) const
{
    if (static_cast<int>(e.level) > depth() || e.index >= levels_[e.level].size())
        throw DepthExceeded("element (" + std::to_string(e.level) + "," + std::to_string(e.index) + ") not in truncation");
    return levels_[e.level][e.index];
}

bool Poset::leq(Node a, Node b) const { return contains(up_[a], b); }

NodeSet Poset::up_closure(const NodeSet& s) const
{
    NodeSet out;
    for (Node v : s) out = set_union(out, up_[v]);
    return out;
}

NodeSet Poset::down_closure(const NodeSet& s, int max_level) const
{
    std::vector<bool> seen(size(), false);
    std::vector<Node> stack(s.begin(), s.end());
    NodeSet out;
    while (!stack.empty()) {
        Node v = stack.back();
        stack.pop_back();
        if (seen[v]) continue;
        seen[v] = true;
        if (max_level >= 0 && first_level(v) > max_level) continue;
        out.push_back(v);
        for (Node w : children_[v]) stack.push_back(w);
    }
    return normalized(std::move(out));
}

NodeSet Poset::strictly_below(Node v) const
{
    NodeSet d = down_closure({v});
    d.erase(std::find(d.begin(), d.end(), v));
    return d;
}

NodeSet Poset::upper_covers(Node v) const
{
    NodeSet out;
    for (Node w : up_[v]) {
        if (w == v) continue;
        bool cover = true;
        for (Node x : up_[v])
            if (x != v && x != w && leq(x, w)) cover = false;
        if (cover) out.push_back(w);
    }
    return out;
}

NodeSet Poset::lower_covers(Node v) const
{
    if (has(kGraded)) return children_[v];
    NodeSet below = strictly_below(v);
    NodeSet out;
    for (Node w : below) {
        bool cover = true;
        for (Node x : below)
            if (x != w && leq(w, x)) cover = false;
        if (cover) out.push_back(w);
    }
    return out;
}

Tri Poset::atom_status(Node v) const
{
    if (atom_[v]) return Tri::Yes;
    if (!children_[v].empty()) return Tri::No;
    if (has(kFiniteComplete)) return Tri::Yes;
    if (has(kAtomless)) return Tri::No;
    return Tri::Maybe;
}

NodeSet Poset::sorted_by_id(NodeSet s) const
{
    std::sort(s.begin(), s.end(), [&](Node a, Node b) { return before(a, b); });
    return s;
}

std::vector<std::string> Poset::names_of(const NodeSet& s) const
{
    std::vector<std::string> out;
    for (Node v : sorted_by_id(s)) out.push_back(names_[v]);
    return out;
}

NodeSet Poset::nodes_of(const std::vector<std::string>& nms) const
{
    NodeSet out;
    for (const auto& n : nms) out.push_back(at(n));
    return normalized(std::move(out));
}

}  // namespace opct
