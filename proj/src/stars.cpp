#include <algorithm>
#include <functional>
#include <numeric>

#include "opct/stars.hpp"

namespace opct {

Star star(const Wedges& w, Node p, const NodeSet& cap)
{
    Star s;
    for (Node c : cap) {
        Tri t = w(c, p);
        if (t == Tri::Yes) s.sure.push_back(c);
        else if (t == Tri::Maybe) s.maybe.push_back(c);
    }
    s.sure = normalized(std::move(s.sure));
    s.maybe = normalized(std::move(s.maybe));
    return s;
}

NodeSet star(const Poset& p, Node e, const NodeSet& cap, int depth)
{
    Wedges w(p, depth);
    return star(w, e, cap).sure;
}

bool all_below(const Poset& p, const NodeSet& s, Node q)
{
    return std::all_of(s.begin(), s.end(), [&](Node x) { return p.leq(x, q); });
}

Verdict wedge(const Poset& p, Node a, Node b, int depth)
{
    Wedges w(p, depth);
    Verdict v;
    v.outcome = w.decide(a, b);
    if (v.holds()) v.witness = {*w.witness(a, b)};
    if (v.unknown()) v.exhausted_depth = w.depth();
    w.stamp(v);
    return v;
}

Verdict star_below(const Wedges& w, Node a, Node b)
{
    const Poset& p = w.poset();
    for (int n = 0; n <= w.depth(); ++n) {
        Star s = star(w, a, p.level_sorted(n));
        if (all_below(p, s.upper(), b)) {
            Verdict v = Verdict::make_holds(p.sorted_by_id(s.upper()));
            v.certificate_level = n;
            w.stamp(v);
            return v;
        }
    }
    if (p.has(kFiniteComplete) && w.depth() == p.depth()) {
        // the deepest level refines every cap of a finite poset
        Star s = star(w, a, p.level_sorted(w.depth()));
        NodeSet bad;
        for (Node x : s.sure)
            if (!p.leq(x, b)) bad.push_back(x);
        Verdict v = Verdict::make_fails(p.sorted_by_id(bad));
        v.certificate_level = w.depth();
        w.stamp(v);
        return v;
    }
    Verdict v = Verdict::make_unknown(w.depth(), "no level star lies below within depth");
    w.stamp(v);
    return v;
}

Verdict star_below(const Poset& p, Node a, Node b, int depth)
{
    Wedges w(p, depth);
    return star_below(w, a, b);
}

Verdict star_refines(const Wedges& w, int m, int n)
{
    const Poset& p = w.poset();
    NodeSet fine = p.level_sorted(m);
    NodeSet coarse = p.sorted_by_id(p.level_sorted(n));
    Verdict out = Verdict::make_holds();
    bool open = false;
    for (Node x : p.sorted_by_id(fine)) {
        Star s = star(w, x, fine);
        NodeSet up = s.upper();
        auto hit = std::find_if(coarse.begin(), coarse.end(), [&](Node q) { return all_below(p, up, q); });
        if (hit != coarse.end()) {
            out.pairs.emplace_back(x, *hit);
            continue;
        }
        bool possible = std::any_of(coarse.begin(), coarse.end(), [&](Node q) { return all_below(p, s.sure, q); });
        if (!possible) {
            Verdict v = Verdict::make_fails({x});
            v.witness.insert(v.witness.end(), s.sure.begin(), s.sure.end());
            v.note = "star of " + p.name(x) + " in level " + std::to_string(m) + " lies below no element of level " +
                     std::to_string(n);
            w.stamp(v);
            return v;
        }
        open = true;
    }
    if (open) {
        Verdict v = Verdict::make_unknown(w.depth(), "undecided wedges in level " + std::to_string(m));
        w.stamp(v);
        return v;
    }
    w.stamp(out);
    return out;
}

Verdict star_refines(const Poset& p, int m, int n, int depth)
{
    Wedges w(p, depth);
    return star_refines(w, m, n);
}

Verdict check_regular(const Poset& p, int depth, int skip_bound)
{
    Wedges w(p, depth);
    const int d = w.depth();
    const bool finite = p.has(kFiniteComplete) && d == p.depth();
    const int last_n = finite ? d : d - skip_bound - 1;
    if (last_n < 0) return Verdict::make_unknown(d, "no level has its skip window inside the truncation");
    Verdict out = Verdict::make_holds();
    for (int n = 0; n <= last_n; ++n) {
        int kmin = finite ? 0 : 1;
        int kmax = finite ? d - n : skip_bound;
        bool found = false;
        for (int k = kmin; k <= kmax && !found; ++k) {
            Verdict s = star_refines(w, n + k, n);
            if (s.holds()) {
                found = true;
                out.pairs.emplace_back(n + k, n);
            }
        }
        if (!found) {
            Verdict v = Verdict::make_unknown(d, "level " + std::to_string(n) + " has no star-refining level within skip " +
                                                     std::to_string(skip_bound));
            v.certificate_level = n;
            w.stamp(v);
            return v;
        }
    }
    out.note = "level pairs (fine, coarse) listed in pairs";
    out.exhausted_depth = d;
    w.stamp(out);
    return out;
}

Verdict check_edge_witnessing(const Poset& p, int depth)
{
    const int d = std::clamp(depth, 0, p.depth());
    const bool finite = p.has(kFiniteComplete) && d == p.depth();
    Wedges raw(p, p.depth());
    const int last_n = finite ? d : d - 1;
    if (last_n < 0) return Verdict::make_unknown(d, "needs two levels");
    for (int n = 0; n <= last_n; ++n) {
        NodeSet lv = p.sorted_by_id(p.level_sorted(n));
        for (std::size_t i = 0; i < lv.size(); ++i)
            for (std::size_t j = i + 1; j < lv.size(); ++j) {
                Node a = lv[i], b = lv[j];
                if (!contains(raw.proved_with(a), b)) continue;
                bool seen = false;
                if (n < p.depth())
                    for (Node r : p.level(n + 1)) seen = seen || (p.leq(r, a) && p.leq(r, b));
                if (!seen) {
                    Verdict v = Verdict::make_fails({a, b});
                    v.note = "common lower bound exists but none in level " + std::to_string(n + 1);
                    return v;
                }
            }
    }
    Verdict v = Verdict::make_holds();
    v.exhausted_depth = d;
    return v;
}

Verdict check_star_refining(const Poset& p, int depth)
{
    Wedges w(p, depth);
    const int last = w.settled_level();
    if (last < 1) return Verdict::make_unknown(w.depth(), "needs a settled level below level 0");
    Verdict out = Verdict::make_holds();
    bool open = false;
    for (int n = 0; n + 1 <= last; ++n) {
        Verdict s = star_refines(w, n + 1, n);
        if (s.fails()) {
            s.certificate_level = n;
            return s;
        }
        if (s.unknown()) open = true;
    }
    if (open) return Verdict::make_unknown(w.depth(), "undecided stars");
    out.exhausted_depth = w.depth();
    w.stamp(out);
    return out;
}

Verdict is_round(const Wedges& w, const NodeSet& s)
{
    const Poset& p = w.poset();
    bool open = false;
    Verdict out = Verdict::make_holds();
    for (Node x : p.sorted_by_id(s)) {
        Outcome o = Outcome::Fails;
        for (Node r : p.sorted_by_id(s)) {
            Verdict sb = star_below(w, r, x);
            if (sb.holds()) {
                out.pairs.emplace_back(r, x);
                o = Outcome::Holds;
                break;
            }
            if (sb.unknown()) o = Outcome::Unknown;
        }
        if (o == Outcome::Fails) {
            Verdict v = Verdict::make_fails({x});
            w.stamp(v);
            return v;
        }
        if (o == Outcome::Unknown) open = true;
    }
    if (open) return Verdict::make_unknown(w.depth());
    w.stamp(out);
    return out;
}

Verdict is_round(const Poset& p, const NodeSet& s, int depth)
{
    Wedges w(p, depth);
    return is_round(w, s);
}

namespace {

bool connected(std::size_t n, const std::vector<std::vector<int>>& adj)
{
    if (n == 0) return true;
    std::vector<bool> seen(n, false);
    std::vector<int> st{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int u : adj[v])
            if (!seen[u]) {
                seen[u] = true;
                ++count;
                st.push_back(u);
            }
    }
    return count == n;
}

}  // namespace

Verdict is_snake(const Wedges& w, const NodeSet& c)
{
    const Poset& p = w.poset();
    NodeSet el = p.sorted_by_id(normalized(c));
    const std::size_t n = el.size();
    std::vector<std::vector<int>> sure(n), possible(n);
    bool open = false;
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
            if (t == Tri::Maybe) open = true;
        }
    auto fails = [&](std::vector<Node> wit, std::string why) {
        Verdict v = Verdict::make_fails(std::move(wit));
        v.note = std::move(why);
        w.stamp(v);
        return v;
    };
    for (std::size_t i = 0; i < n; ++i)
        if (sure[i].size() > 2)
            return fails({el[i]}, p.name(el[i]) + " wedges at least three others");
    if (!connected(n, possible)) return fails({}, "wedge graph is disconnected");
    std::size_t sure_edges = 0;
    for (auto& a : sure) sure_edges += a.size();
    sure_edges /= 2;
    if (sure_edges > n - 1 || (sure_edges == n - 1 && !connected(n, sure) && n > 0))
        return fails({}, "wedge graph contains a cycle");
    if (open) {
        Verdict v = Verdict::make_unknown(w.depth(), "undecided wedges");
        w.stamp(v);
        return v;
    }
    if (!connected(n, sure)) return fails({}, "wedge graph is disconnected");
    // A connected graph with n-1 edges and degrees <= 2 is a path.
    std::size_t start = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (sure[i].size() <= 1) {
            start = i;
            break;
        }
    std::vector<Node> order;
    std::vector<bool> seen(n, false);
    int cur = static_cast<int>(start);
    while (cur >= 0) {
        order.push_back(el[cur]);
        seen[cur] = true;
        int next = -1;
        for (int u : sure[cur])
            if (!seen[u]) next = u;
        cur = next;
    }
    Verdict v = Verdict::make_holds(std::move(order));
    w.stamp(v);
    return v;
}

Verdict is_snake(const Poset& p, const NodeSet& c, int depth)
{
    Wedges w(p, depth);
    return is_snake(w, c);
}

}  // namespace opct
