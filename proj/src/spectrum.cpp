#include <algorithm>
#include <functional>

#include "opct/combinatorics.hpp"
#include "opct/spectrum.hpp"

namespace opct {

bool is_thread(const Poset& p, const Thread& t)
{
    if (t.empty() || static_cast<int>(t.size()) > p.depth() + 1) return false;
    for (std::size_t n = 0; n < t.size(); ++n) {
        if (t[n] >= p.size() || !p.in_level(t[n], static_cast<int>(n))) return false;
        if (n > 0 && !p.leq(t[n], t[n - 1])) return false;
    }
    return true;
}

Thread thread_from_names(const Poset& p, const std::vector<std::string>& names)
{
    Thread t;
    for (const auto& nm : names) t.push_back(p.at(nm));
    if (!is_thread(p, t)) throw std::invalid_argument("not a thread: each entry must lie in its level below the previous one");
    return t;
}

SelectorPrefix thread_prefix(const Poset& p, const Thread& t, bool check_regularity)
{
    if (!is_thread(p, t)) throw std::invalid_argument("not a thread");
    SelectorPrefix s;
    s.depth = static_cast<int>(t.size()) - 1;
    s.elements = p.up_closure({t.back()});
    if (check_regularity) s.certified = check_regular(p, p.depth()).holds();
    return s;
}

SelectorPrefix star_closure_prefix(const Poset& p, const SelectorPrefix& s, int depth)
{
    Wedges w(p, depth);
    for (std::size_t i = 0; i < s.elements.size(); ++i)
        for (std::size_t j = i + 1; j < s.elements.size(); ++j)
            if (w(s.elements[i], s.elements[j]) == Tri::No)
                throw NotLinked(p.name(s.elements[i]) + " and " + p.name(s.elements[j]) + " do not wedge");
    SelectorPrefix out;
    out.depth = w.depth();
    out.certified = s.certified;
    for (Node q : p.cone(w.depth())) {
        bool in = false, open = false;
        for (Node e : s.elements) {
            if (w(e, q) == Tri::No) continue;  // e ◁ q forces e ∧ q
            Verdict v = star_below(w, e, q);
            if (v.holds()) {
                in = true;
                break;
            }
            if (v.unknown()) open = true;
        }
        if (in) out.elements.push_back(q);
        else if (open) out.complete = false;
    }
    out.elements = normalized(std::move(out.elements));
    return out;
}

Verdict points_equal(const Poset& p, const Thread& t, const Thread& u, int depth)
{
    if (!is_thread(p, t) || !is_thread(p, u)) throw std::invalid_argument("not a thread");
    if (t == u) return Verdict::make_holds();
    Wedges w(p, depth);
    const std::size_t n = std::min({t.size(), u.size(), static_cast<std::size_t>(w.depth()) + 1});
    for (std::size_t k = 0; k < n; ++k)
        if (w(t[k], u[k]) == Tri::No) {
            Verdict v = Verdict::make_fails({t[k], u[k]});
            v.certificate_level = static_cast<int>(k);
            v.note = "minimal selectors are filters, so these two cannot share a point";
            w.stamp(v);
            return v;
        }
    return Verdict::make_unknown(w.depth(), "the slices still wedge at every level");
}

SpectrumEnumeration enumerate_minimal_selectors(const Poset& p)
{
    OracleResult o = oracle(p);
    SpectrumEnumeration out;
    for (std::uint32_t m : o.minimal_selectors) out.points.push_back(o.set_of(m));
    for (std::size_t i = 0; i < o.minimal_selectors.size(); ++i)
        for (std::size_t j = 0; j < o.minimal_selectors.size(); ++j) {
            std::uint32_t a = o.minimal_selectors[i], b = o.minimal_selectors[j];
            if (i != j && (a & ~b) == 0) out.t1_separated = false;
        }
    return out;
}

Verdict is_prime_subset(const Poset& p, const NodeSet& q, int depth, bool whole)
{
    const int d = std::clamp(depth, 0, p.depth());
    const bool finite = p.has(kFiniteComplete) && d == p.depth();
    NodeSet set = whole ? p.cone(p.depth()) : normalized(q);
    if (!whole && p.up_closure(set) != set) throw NotUpClosed("subset is not up-closed");
    if (finite) {
        OracleResult o = oracle(p);
        std::uint32_t mask = o.mask_of(set), covered = 0;
        for (std::uint32_t s : o.minimal_selectors)
            if ((s & ~mask) == 0) covered |= s;
        Verdict v = covered == mask ? Verdict::make_holds() : Verdict::make_fails(o.set_of(mask & ~covered));
        if (v.fails()) v.note = "these elements lie in no minimal selector inside the subset";
        v.assume("finite_complete");
        return v;
    }
    if (whole) return Verdict::make_unknown(d, "the whole poset is star-prime; roundness is not decided by a prefix");
    // A finite minimal selector of an infinite poset is the up-set of an atom.
    bool open = false;
    for (Node x : p.sorted_by_id(set)) {
        bool covered = std::any_of(set.begin(), set.end(),
                                   [&](Node a) { return p.atom_status(a) == Tri::Yes && p.leq(a, x); });
        if (covered) continue;
        bool undecided = std::any_of(set.begin(), set.end(), [&](Node a) { return p.atom_status(a) == Tri::Maybe; });
        if (undecided) {
            open = true;
            continue;
        }
        Verdict v = Verdict::make_fails({x});
        v.note = p.name(x) + " lies above no atom of the subset";
        return v;
    }
    if (open) return Verdict::make_unknown(d, "atomhood of some member is undecided");
    Verdict v = Verdict::make_holds();
    v.note = "union of up-sets of atoms";
    return v;
}

namespace {

std::vector<int> component(std::size_t n, const std::vector<std::vector<int>>& adj)
{
    std::vector<int> seen(n, 0), st{0};
    if (n == 0) return {};
    seen[0] = 1;
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int u : adj[v])
            if (!seen[u]) {
                seen[u] = 1;
                st.push_back(u);
            }
    }
    return seen;
}

}  // namespace

Verdict is_cluster(const Wedges& w, const NodeSet& c)
{
    const Poset& p = w.poset();
    NodeSet el = p.sorted_by_id(normalized(c));
    const std::size_t n = el.size();
    std::vector<std::vector<int>> sure(n), possible(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Tri t = w(el[i], el[j]);
            if (t != Tri::No) {
                possible[i].push_back(static_cast<int>(j));
                possible[j].push_back(static_cast<int>(i));
            }
            if (t == Tri::Yes) {
                sure[i].push_back(static_cast<int>(j));
                sure[j].push_back(static_cast<int>(i));
            }
        }
    auto s = component(n, sure);
    if (std::all_of(s.begin(), s.end(), [](int x) { return x; })) {
        Verdict v = Verdict::make_holds();
        w.stamp(v);
        return v;
    }
    auto q = component(n, possible);
    if (!std::all_of(q.begin(), q.end(), [](int x) { return x; })) {
        std::vector<Node> part;
        for (std::size_t i = 0; i < n; ++i)
            if (q[i]) part.push_back(el[i]);
        Verdict v = Verdict::make_fails(std::move(part));
        v.note = "the witness is a component wedging nothing else in the set";
        w.stamp(v);
        return v;
    }
    Verdict v = Verdict::make_unknown(w.depth(), "undecided wedges");
    w.stamp(v);
    return v;
}

Verdict is_cluster(const Poset& p, const NodeSet& c, int depth)
{
    Wedges w(p, depth);
    return is_cluster(w, c);
}

Verdict connectivity_report(const Poset& p, int depth)
{
    Wedges w(p, depth);
    const int last = w.settled_level();
    if (last < 0) return Verdict::make_unknown(w.depth(), "no settled level");
    bool open = false;
    for (int n = 0; n <= last; ++n) {
        Verdict v = is_cluster(w, p.level_sorted(n));
        if (v.fails()) {
            v.certificate_level = n;
            v.note = "level " + std::to_string(n) + " is not a cluster";
            return v;
        }
        if (v.unknown()) open = true;
    }
    if (open) return Verdict::make_unknown(w.depth(), "undecided wedges");
    Verdict v = Verdict::make_holds();
    v.exhausted_depth = w.depth();
    v.note = "levels 0.." + std::to_string(last) + " are clusters; the spectrum is connected when the poset is regular and prime";
    w.stamp(v);
    return v;
}

}  // namespace opct
