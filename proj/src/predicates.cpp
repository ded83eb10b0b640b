#include <algorithm>
#include <optional>

#include "opct/combinatorics.hpp"
#include "opct/predicates.hpp"
#include "opct/stars.hpp"

namespace opct {

namespace {

int clamp_depth(const Poset& p, int depth) { return std::clamp(depth, 0, p.depth()); }
bool finite_at(const Poset& p, int d) { return p.has(kFiniteComplete) && d == p.depth(); }

NodeSet all_nodes(const Poset& p, int max_level)
{
    NodeSet out;
    for (Node v = 0; v < p.size(); ++v)
        if (p.first_level(v) <= max_level) out.push_back(v);
    return p.sorted_by_id(out);
}

Verdict finite_stamp(Verdict v, bool finite)
{
    if (finite) v.assume("finite_complete");
    return v;
}

}  // namespace

Verdict check_graded(const Poset& p)
{
    std::optional<std::pair<Node, Node>> bad;
    for (Node v : all_nodes(p, p.depth()))
        for (Node w : p.sorted_by_id(p.upper_covers(v)))
            if (p.rank(v) - p.rank(w) >= 2) {
                if (!bad || p.id(v) < p.id(bad->first) ||
                    (v == bad->first && p.id(w) < p.id(bad->second)))
                    bad = {v, w};
            }
    if (bad) {
        Verdict v = Verdict::make_fails({bad->first, bad->second});
        v.pairs = {*bad};
        v.note = "cover " + p.name(bad->first) + " < " + p.name(bad->second) + " skips a rank";
        return v;
    }
    if (!p.has(kGraded) && !p.has(kFiniteComplete))
        return Verdict::make_unknown(p.depth(), "no skipped rank inside the truncation");
    Verdict v = Verdict::make_holds();
    v.exhausted_depth = p.depth();
    return finite_stamp(v, p.has(kFiniteComplete));
}

Verdict check_weakly_graded(const Poset& p)
{
    for (Node v : all_nodes(p, p.depth()))
        if (p.last_level(v) > p.first_level(v) && p.atom_status(v) != Tri::Yes) {
            Verdict out = Verdict::make_fails({v});
            out.note = p.name(v) + " is shared by levels " + std::to_string(p.first_level(v)) + " and " +
                       std::to_string(p.first_level(v) + 1) + " but is no atom";
            return out;
        }
    Verdict v = Verdict::make_holds();
    v.exhausted_depth = p.depth();
    return finite_stamp(v, p.has(kFiniteComplete));
}

Verdict check_predetermined(const Poset& p, int depth)
{
    const int d = clamp_depth(p, depth);
    const bool finite = finite_at(p, d);
    const int last = finite ? d : d - 1;
    if (last < 0) return Verdict::make_unknown(d, "no level has its next level in the truncation");
    Verdict out = Verdict::make_holds();
    bool open = false;
    for (Node e : all_nodes(p, last)) {
        if (p.atom_status(e) == Tri::Yes) continue;
        NodeSet target = p.up(e);
        NodeSet candidates = finite || !p.has(kGraded) ? p.strictly_below(e) : p.children(e);
        std::optional<Node> found;
        for (Node q : p.sorted_by_id(candidates)) {
            if (set_difference(p.up(q), {q}) == target) {
                found = q;
                break;
            }
        }
        if (found) {
            out.pairs.emplace_back(e, *found);
            continue;
        }
        if (finite || p.has(kGraded)) {
            Verdict v = Verdict::make_fails({e});
            v.note = "no q < " + p.name(e) + " has strict up-set equal to its up-set";
            return finite_stamp(v, finite);
        }
        open = true;
    }
    if (open) return Verdict::make_unknown(d, "a witness may appear below the truncation");
    out.exhausted_depth = d;
    return finite_stamp(out, finite);
}

Verdict check_level_injective(const Poset& p, int m, int n)
{
    if (m > n || n > p.depth()) throw DepthExceeded("need m <= n <= depth");
    const NodeSet& lm = p.level(m);
    NodeSet upper = p.sorted_by_id(lm);
    NodeSet lower = p.sorted_by_id(p.level(n));
    Verdict out = Verdict::make_holds();
    for (Node x : upper) {
        std::optional<Node> priv;
        for (Node q : lower) {
            NodeSet hit;
            for (Node u : p.up(q))
                if (p.in_level(u, m)) hit.push_back(u);
            if (hit.size() == 1 && hit[0] == x) {
                priv = q;
                break;
            }
        }
        if (!priv) {
            Verdict v = Verdict::make_fails({x});
            v.note = p.name(x) + " has no private lower bound in level " + std::to_string(n);
            return v;
        }
        out.pairs.emplace_back(x, *priv);
    }
    return out;
}

PredicateReport check_level_injective_all(const Poset& p, int depth)
{
    const int d = clamp_depth(p, depth);
    PredicateReport r{"level_injective", Verdict::make_holds(), {}};
    for (int m = 0; m <= d; ++m)
        for (int n = m; n <= d; ++n) {
            Verdict v = check_level_injective(p, m, n);
            r.detail.emplace_back(std::to_string(m) + "," + std::to_string(n), v.outcome);
            if (v.fails() && r.verdict.holds()) {
                r.verdict = v;
                r.verdict.certificate_level = n;
            }
        }
    if (r.verdict.holds()) {
        r.verdict.exhausted_depth = d;
        if (!finite_at(p, d)) r.verdict.note = "levels up to " + std::to_string(d);
        r.verdict = finite_stamp(r.verdict, finite_at(p, d));
    }
    return r;
}

Verdict check_branching(const Poset& p, int depth)
{
    const int d = clamp_depth(p, depth);
    if (finite_at(p, d)) {
        // q > x must have some r < q incomparable with x.
        for (Node q : all_nodes(p, d)) {
            NodeSet below = p.sorted_by_id(p.strictly_below(q));
            for (Node x : below) {
                bool ok = std::any_of(below.begin(), below.end(), [&](Node r) { return !p.comparable(x, r); });
                if (!ok) {
                    Verdict v = Verdict::make_fails({q, x});
                    v.note = "every element below " + p.name(q) + " is comparable with " + p.name(x);
                    v.assume("finite_complete");
                    return v;
                }
            }
        }
        Verdict v = Verdict::make_holds();
        v.exhausted_depth = d;
        v.assume("finite_complete");
        return v;
    }
    if (d < 1) return Verdict::make_unknown(d, "no level has its next level in the truncation");
    bool open = false;
    for (Node q : all_nodes(p, d - 1)) {
        if (p.atom_status(q) == Tri::Yes) continue;
        NodeSet covers = p.lower_covers(q);
        if (covers.size() >= 2) continue;
        if (covers.size() == 1 && p.has(kGraded)) {
            Verdict v = Verdict::make_fails({q, covers[0]});
            v.note = p.name(q) + " has the unique predecessor " + p.name(covers[0]);
            return v;
        }
        open = true;
    }
    if (open) return Verdict::make_unknown(d, "predecessors may appear below the truncation");
    Verdict v = Verdict::make_holds();
    v.exhausted_depth = d;
    v.note = "levels below " + std::to_string(d);
    return v;
}

Verdict check_prime_element(const Poset& p, Node e, int depth)
{
    const int d = clamp_depth(p, depth);
    if (finite_at(p, d)) {
        OracleResult o = oracle(p);
        std::uint32_t bit = o.mask_of({e});
        for (std::uint32_t s : o.minimal_selectors)
            if (s & bit) {
                Verdict v = Verdict::make_holds(p.sorted_by_id(o.set_of(s)));
                v.note = "minimal selector containing " + p.name(e);
                v.assume("finite_complete");
                return v;
            }
        Verdict v = Verdict::make_fails({e});
        v.note = "no minimal selector contains " + p.name(e);
        v.assume("finite_complete");
        return v;
    }
    Wedges w(p, d);
    for (Node s : p.sorted_by_id(p.down_closure({e}, d))) {
        Verdict sb = star_below(w, s, e);
        if (sb.holds()) {
            Verdict v = Verdict::make_holds({s});
            v.certificate_level = sb.certificate_level;
            v.note = "a thread through " + p.name(s) + " selects " + p.name(e);
            v.assume("regular");
            w.stamp(v);
            return v;
        }
    }
    return Verdict::make_unknown(d, "no element star-below within depth");
}

Verdict check_prime(const Poset& p, int depth)
{
    const int d = clamp_depth(p, depth);
    if (!finite_at(p, d)) return Verdict::make_unknown(d, "primality quantifies over the whole poset");
    OracleResult o = oracle(p);
    std::uint32_t covered = 0;
    for (std::uint32_t s : o.minimal_selectors) covered |= s;
    for (Node v : all_nodes(p, d))
        if (!(covered & o.mask_of({v}))) {
            Verdict out = Verdict::make_fails({v});
            out.assume("finite_complete");
            return out;
        }
    Verdict out = Verdict::make_holds();
    out.assume("finite_complete");
    return out;
}

Verdict check_cap_determined_sufficient(const Poset& p, int depth)
{
    Verdict b = check_branching(p, depth);
    if (b.fails()) {
        b.note = "not branching: " + b.note;
        return b;
    }
    Verdict pd = check_predetermined(p, depth);
    if (b.holds() && pd.holds()) {
        Verdict v = Verdict::make_holds();
        v.note = "branching and predetermined";
        v.exhausted_depth = pd.exhausted_depth;
        for (auto& a : b.assumptions) v.assume(a);
        for (auto& a : pd.assumptions) v.assume(a);
        return v;
    }
    return Verdict::make_unknown(clamp_depth(p, depth), "sufficient condition not established");
}

Verdict check_cap_determined(const Poset& p, int depth)
{
    const int d = clamp_depth(p, depth);
    if (!finite_at(p, d) || p.size() > kOracleBound) return check_cap_determined_sufficient(p, depth);
    OracleResult o = oracle(p);
    for (Node a : all_nodes(p, d))
        for (Node b : all_nodes(p, d)) {
            if (p.leq(a, b)) continue;
            if (o.cap_below(o.mask_of({a}), o.mask_of({b}))) {
                Verdict v = Verdict::make_fails({a, b});
                v.note = p.name(a) + " is cap-below " + p.name(b) + " without lying below it";
                v.assume("finite_complete");
                return v;
            }
        }
    Verdict v = Verdict::make_holds();
    v.assume("finite_complete");
    return v;
}

}  // namespace opct
