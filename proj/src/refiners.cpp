#include <algorithm>
#include <optional>

#include "opct/refiners.hpp"
#include "opct/stars.hpp"

namespace opct {

Refiner Refiner::identity(const Poset& p) { return Refiner{&p, &p, Relation::identity(p.size())}; }

namespace {

Refiner by_name(const Poset& source, const Poset& target, bool upward)
{
    std::vector<std::pair<Node, Node>> pairs;
    for (Node a = 0; a < source.size(); ++a)
        for (Node b = 0; b < target.size(); ++b) {
            // compare inside whichever poset knows both names
            bool rel = false;
            if (auto bs = source.find(target.name(b))) rel = upward ? source.leq(a, *bs) : source.leq(*bs, a);
            else if (auto at = target.find(source.name(a))) rel = upward ? target.leq(*at, b) : target.leq(b, *at);
            if (rel) pairs.emplace_back(a, b);
        }
    return Refiner{&source, &target, Relation(source.size(), target.size(), std::move(pairs))};
}

bool finite_at(const Poset& p, int d) { return p.has(kFiniteComplete) && d >= p.depth(); }

Verdict with_level(Verdict v, int n, std::string why)
{
    v.certificate_level = n;
    v.note = std::move(why);
    return v;
}

}  // namespace

Refiner Refiner::order(const Poset& source, const Poset& target) { return by_name(source, target, true); }
Refiner Refiner::reverse_order(const Poset& source, const Poset& target) { return by_name(source, target, false); }

Verdict check_refiner(const Refiner& r, int depth)
{
    const Poset& p = *r.source;
    const Poset& q = *r.target;
    const int dq = std::clamp(depth, 0, q.depth());
    Verdict out = Verdict::make_holds();
    bool open = false;
    for (int n = 0; n <= dq; ++n) {
        NodeSet refining = r.rel.image(q.level_sorted(n));
        Verdict v = is_cap(p, refining, depth);
        if (v.fails()) return with_level(Verdict::make_fails(), n, "target level " + std::to_string(n) + " is refined by no cap");
        if (v.unknown()) open = true;
        else out.pairs.emplace_back(n, v.certificate_level);
    }
    if (open) return Verdict::make_unknown(depth, "some target level has no refining source level within depth");
    out.note = "pairs (target level, refining source level)";
    return out;
}

Verdict check_wedge_preserving(const Refiner& r, int depth)
{
    Wedges wp(*r.source, depth), wq(*r.target, depth);
    const auto& pairs = r.rel.pairs();
    bool open = false;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            auto [a, x] = pairs[i];
            auto [b, y] = pairs[j];
            Tri tp = wp(a, b);
            if (tp == Tri::No) continue;
            Tri tq = wq(x, y);
            if (tq == Tri::Yes) continue;
            if (tp == Tri::Yes && tq == Tri::No) {
                Verdict v = Verdict::make_fails({a, b, x, y});
                v.note = r.source->name(a) + " and " + r.source->name(b) + " wedge but " + r.target->name(x) + " and " +
                         r.target->name(y) + " do not";
                wp.stamp(v);
                wq.stamp(v);
                return v;
            }
            open = true;
        }
    if (open) return Verdict::make_unknown(depth, "undecided wedges");
    Verdict v = Verdict::make_holds();
    wp.stamp(v);
    wq.stamp(v);
    return v;
}

SelectorPrefix apply_refiner(const Refiner& r, const Thread& t, int depth)
{
    SelectorPrefix s = thread_prefix(*r.source, t);
    SelectorPrefix mapped;
    mapped.depth = depth;
    mapped.elements = r.rel.preimage(s.elements);
    return star_closure_prefix(*r.target, mapped, depth);
}

StarResult star_of_refiner(const Refiner& r, int depth)
{
    const Poset& p = *r.source;
    const Poset& q = *r.target;
    Wedges w(p, depth);
    // q ⊐* e iff some level's star of e lies below the set of elements related to q.
    std::vector<NodeSet> below(q.size());
    for (Node b = 0; b < q.size(); ++b) below[b] = p.down_closure(r.rel.below(b));
    std::vector<std::pair<Node, Node>> pairs;
    bool complete = true;
    for (Node e = 0; e < p.size(); ++e) {
        if (p.first_level(e) > w.depth()) continue;
        std::vector<Star> stars;
        for (int n = 0; n <= w.depth(); ++n) stars.push_back(star(w, e, p.level_sorted(n)));
        for (Node b = 0; b < q.size(); ++b) {
            bool sure = false, maybe = false;
            for (const Star& s : stars) {
                if (subset_of(s.upper(), below[b])) {
                    sure = true;
                    break;
                }
                if (subset_of(s.sure, below[b])) maybe = true;
            }
            if (sure) pairs.emplace_back(e, b);
            else if (maybe) complete = false;
        }
    }
    return {Refiner{&p, &q, Relation(p.size(), q.size(), std::move(pairs))}, complete};
}

Refiner compose(const Refiner& first, const Refiner& second)
{
    if (first.target != second.source && first.target->size() != second.source->size())
        throw EndpointMismatch("refiners do not compose");
    return Refiner{first.source, second.target, first.rel.compose(second.rel)};
}

StarResult star_compose(const Refiner& second, const Refiner& first, int depth)
{
    return star_of_refiner(compose(first, second), depth);
}

StarResult star_below_refiner(const Poset& p, int depth) { return star_of_refiner(Refiner::order(p, p), depth); }

Verdict check_strong(const Refiner& r, int depth)
{
    StarResult tri = star_below_refiner(*r.target, depth);
    StarResult s = star_compose(tri.refiner, r, depth);
    for (auto [a, b] : s.refiner.rel.pairs())
        if (!r.rel.related(a, b)) {
            Verdict v = Verdict::make_fails({a, b});
            v.note = "star-composition with the star-below relation adds " + r.source->name(a) + " -> " + r.target->name(b);
            return v;
        }
    if (s.refiner.rel == r.rel && s.complete && tri.complete) {
        Verdict v = Verdict::make_holds();
        v.exhausted_depth = depth;
        v.note = "equal at this depth";
        return v;
    }
    return Verdict::make_unknown(depth, "star-composition is a depth-bounded under-approximation");
}

namespace {

// Every pair (x, y) of rel (on one poset) must satisfy x cap-below y.
Verdict within_cap_order(const Poset& p, const Relation& rel, int depth)
{
    bool open = false;
    std::optional<OracleResult> o;
    for (auto [x, y] : rel.pairs()) {
        if (p.leq(x, y)) continue;
        if (finite_at(p, depth) && p.size() <= kOracleBound) {
            if (!o) o = oracle(p);
            if (o->cap_below(o->mask_of({x}), o->mask_of({y}))) continue;
            Verdict v = Verdict::make_fails({x, y});
            v.note = p.name(x) + " is not cap-below " + p.name(y);
            v.assume("finite_complete");
            return v;
        }
        open = true;
    }
    if (open) return Verdict::make_unknown(depth, "cap order undecided outside finite posets");
    return Verdict::make_holds();
}

}  // namespace

Verdict check_birefinable(const Refiner& r, const Refiner& s, int depth)
{
    if (r.source != s.target || r.target != s.source) throw EndpointMismatch("refiners are not opposite");
    Outcome acc = Outcome::Holds;
    for (const Refiner* x : {&r, &s}) {
        Verdict v = check_refiner(*x, depth);
        if (v.fails()) return v;
        acc = both(acc, v.outcome);
    }
    Verdict vq = within_cap_order(*r.target, s.rel.compose(r.rel), depth);
    if (vq.fails()) return vq;
    Verdict vp = within_cap_order(*r.source, r.rel.compose(s.rel), depth);
    if (vp.fails()) return vp;
    acc = both(acc, both(vq.outcome, vp.outcome));
    if (acc == Outcome::Holds) {
        Verdict v = Verdict::make_holds();
        v.note = "both composites lie in the cap order";
        return v;
    }
    return Verdict::make_unknown(depth, "not all conditions decided");
}

Verdict verify_back_and_forth(const StagedFamily& f, int depth)
{
    const Poset& p = *f.p;
    const Poset& q = *f.q;
    const int stages = depth;
    if (stages < 1 || f.forward.size() < static_cast<std::size_t>(stages) + 1 || f.back.size() < static_cast<std::size_t>(stages) ||
        f.c_levels.size() < static_cast<std::size_t>(stages) + 1 || f.d_levels.size() < static_cast<std::size_t>(stages) + 1)
        throw StageMismatch("not enough stages for depth " + std::to_string(depth));
    Wedges wp(p, p.depth()), wq(q, q.depth());
    auto level = [](const Poset& x, int n) { return x.level_sorted(n); };
    for (int n = 0; n <= stages; ++n) {
        NodeSet c = level(p, f.c_levels[n]), d = level(q, f.d_levels[n]);
        for (auto [a, b] : f.forward[n].pairs())
            if (!contains(c, a) || !contains(d, b)) throw StageMismatch("forward relation of stage " + std::to_string(n) + " leaves its levels");
        if (n < stages) {
            NodeSet d1 = level(q, f.d_levels[n + 1]);
            for (auto [a, b] : f.back[n].pairs())
                if (!contains(d1, a) || !contains(c, b)) throw StageMismatch("back relation of stage " + std::to_string(n) + " leaves its levels");
        }
    }
    bool open = false;
    // Related elements of wedging sources must wedge.
    auto co_wedge = [&](const Relation& rel, const NodeSet& from, const Wedges& wf, const Wedges& wt, int n,
                        const char* which) -> std::optional<Verdict> {
        for (std::size_t i = 0; i < from.size(); ++i)
            for (std::size_t j = i + 1; j < from.size(); ++j) {
                Tri tf = wf(from[i], from[j]);
                if (tf == Tri::No) continue;
                for (Node x : rel.above(from[i]))
                    for (Node y : rel.above(from[j])) {
                        Tri tt = wt(x, y);
                        if (tt == Tri::Yes) continue;
                        if (tf == Tri::Yes && tt == Tri::No) {
                            Verdict v = Verdict::make_fails({from[i], from[j], x, y});
                            return with_level(v, n, std::string(which) + " relation of stage " + std::to_string(n) + " is not co-wedge-preserving");
                        }
                        open = true;
                    }
            }
        return std::nullopt;
    };
    for (int n = 0; n < stages; ++n) {
        NodeSet c = level(p, f.c_levels[n]), d = level(q, f.d_levels[n]);
        NodeSet c1 = level(p, f.c_levels[n + 1]), d1 = level(q, f.d_levels[n + 1]);
        const Relation& fw = f.forward[n];
        const Relation& bk = f.back[n];
        for (Node a : c)
            if (fw.above(a).empty())
                return with_level(Verdict::make_fails({a}), n, "forward relation of stage " + std::to_string(n) + " is not surjective");
        for (Node a : d1)
            if (bk.above(a).empty())
                return with_level(Verdict::make_fails({a}), n, "back relation of stage " + std::to_string(n) + " is not surjective");
        if (auto v = co_wedge(fw, c, wp, wq, n, "forward")) return *v;
        if (auto v = co_wedge(bk, d1, wq, wp, n, "back")) return *v;
        // back_n then forward_n lands below in q
        for (Node a : d1)
            for (Node b : bk.above(a))
                for (Node x : fw.above(b))
                    if (!q.leq(a, x))
                        return with_level(Verdict::make_fails({a, x}), n, "back then forward leaves the order of the second poset");
        // forward_{n+1} then back_n lands below in p
        for (Node a : c1)
            for (Node b : f.forward[n + 1].above(a))
                for (Node x : bk.above(b))
                    if (!p.leq(a, x))
                        return with_level(Verdict::make_fails({a, x}), n, "forward then back leaves the order of the first poset");
    }
    if (open) return Verdict::make_unknown(depth, "undecided wedges");
    Verdict v = Verdict::make_holds();
    v.exhausted_depth = depth;
    v.note = "surjective, co-wedge-preserving and order-compatible stages 0.." + std::to_string(stages - 1);
    wp.stamp(v);
    wq.stamp(v);
    return v;
}

}  // namespace opct
