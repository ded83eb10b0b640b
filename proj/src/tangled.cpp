#include <algorithm>
#include <bit>

#include "opct/combinatorics.hpp"
#include "opct/stars.hpp"
#include "opct/tangled.hpp"

namespace opct {

namespace {

Verdict path_enumeration(const Wedges& w, const NodeSet& s, const char* which)
{
    Verdict v = is_snake(w, s);
    if (v.fails()) throw NotAPath(std::string(which) + " is not a path: " + v.note);
    return v;
}

}  // namespace

Verdict is_tangled_refinement(const Poset& p, const NodeSet& a_in, const NodeSet& b_in, int depth, bool weak,
                              std::size_t bound)
{
    NodeSet a = p.sorted_by_id(normalized(a_in));
    NodeSet b = normalized(b_in);
    if (!refines(p, a, b)) throw NotARefinement("first set does not refine the second");
    if (a.size() > bound) throw SizeBound("tangled check is bounded at " + std::to_string(bound) + " elements");
    Wedges w(p, depth);
    const std::size_t n = a.size();
    std::vector<std::uint32_t> adj(n, 0), shares(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        adj[i] |= 1u << i;
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                Tri t = w(a[i], a[j]);
                if (t == Tri::Maybe) return Verdict::make_unknown(w.depth(), "undecided wedges inside the refinement");
                if (t == Tri::Yes) adj[i] |= 1u << j;
            }
            bool common = std::any_of(b.begin(), b.end(), [&](Node y) { return p.leq(a[i], y) && p.leq(a[j], y); });
            if (common) shares[i] |= 1u << j;
        }
    }
    struct Cluster {
        std::uint32_t mask, reach, ext;
    };
    std::vector<Cluster> clusters;
    for (std::uint32_t m = 1; m < (1u << n); ++m) {
        std::uint32_t seen = m & -m, frontier = seen;
        while (frontier) {
            std::uint32_t next = 0;
            for (std::uint32_t f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
            next &= m & ~seen;
            seen |= next;
            frontier = next;
        }
        if (seen != m) continue;
        Cluster c{m, 0, 0};
        for (std::uint32_t f = m; f; f &= f - 1) {
            c.reach |= adj[std::countr_zero(f)];
            c.ext |= shares[std::countr_zero(f)];
        }
        clusters.push_back(c);
    }
    for (std::size_t i = 0; i < clusters.size(); ++i)
        for (std::size_t j = i; j < clusters.size(); ++j) {
            const Cluster& c = clusters[i];
            const Cluster& d = clusters[j];
            bool meet = weak ? (c.mask & d.mask) != 0 : (c.mask & d.reach) != 0;
            if (!meet) continue;
            if ((c.mask & ~d.ext) == 0 || (d.mask & ~c.ext) == 0) continue;
            std::vector<Node> wit;
            for (std::uint32_t f = c.mask; f; f &= f - 1) wit.push_back(a[std::countr_zero(f)]);
            for (std::uint32_t f = d.mask; f; f &= f - 1) wit.push_back(a[std::countr_zero(f)]);
            Verdict v = Verdict::make_fails(std::move(wit));
            v.certificate_level = std::popcount(c.mask);
            v.note = "clusters C (first entries) and D (rest) are not nested up to the coarse set";
            w.stamp(v);
            return v;
        }
    Verdict v = Verdict::make_holds();
    v.note = std::to_string(clusters.size()) + " clusters checked";
    w.stamp(v);
    return v;
}

Verdict is_path_crooked(const Poset& p, const NodeSet& fine, const NodeSet& coarse, int depth)
{
    NodeSet pf = normalized(fine), pc = normalized(coarse);
    if (!refines(p, pf, pc)) throw NotARefinement("first path does not refine the second");
    Wedges w(p, depth);
    Verdict ef = path_enumeration(w, pf, "fine set");
    Verdict ec = path_enumeration(w, pc, "coarse set");
    if (ef.unknown() || ec.unknown()) return Verdict::make_unknown(w.depth(), "path structure undecided");
    const std::vector<Node>& path = ef.witness;
    const std::size_t n = path.size();
    // For each coarse link, the sorted positions of fine links below it.
    std::vector<std::vector<int>> positions(pc.size());
    std::vector<std::vector<int>> above(n);
    for (std::size_t k = 0; k < pc.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (p.leq(path[i], pc[k])) {
                positions[k].push_back(static_cast<int>(i));
                above[i].push_back(static_cast<int>(k));
            }
    auto first_toward = [&](int from, int to, int target) {
        // position in [from, to] closest to `from` sharing a coarse link with target
        int best = to;
        for (int k : above[target]) {
            const auto& ps = positions[k];
            if (from <= to) {
                auto it = std::lower_bound(ps.begin(), ps.end(), from);
                if (it != ps.end() && *it <= to) best = std::min(best, *it);
            } else {
                auto it = std::upper_bound(ps.begin(), ps.end(), from);
                if (it != ps.begin() && *std::prev(it) >= to) best = std::max(best, *std::prev(it));
            }
        }
        return best;
    };
    auto hits = [&](int lo, int hi, int target) {
        if (lo > hi) std::swap(lo, hi);
        for (int k : above[target]) {
            const auto& ps = positions[k];
            auto it = std::lower_bound(ps.begin(), ps.end(), lo);
            if (it != ps.end() && *it <= hi) return true;
        }
        return false;
    };
    for (int i = 0; i < static_cast<int>(n); ++i)
        for (int j = 0; j < static_cast<int>(n); ++j) {
            int b = first_toward(i, j, j);
            if (!hits(b, j, i)) {
                Verdict v = Verdict::make_fails({path[i], path[j]});
                v.note = "no fold between " + p.name(path[i]) + " and " + p.name(path[j]);
                w.stamp(v);
                return v;
            }
        }
    Verdict v = Verdict::make_holds(path);
    w.stamp(v);
    return v;
}

Verdict check_tangled_poset(const Poset& p, int depth, std::size_t size_bound, int gap)
{
    Wedges w(p, depth);
    const bool finite = p.has(kFiniteComplete) && w.depth() == p.depth();
    const int settled = w.settled_level();
    const int last_n = finite ? settled : settled - 1;
    if (last_n < 0) return Verdict::make_unknown(w.depth(), "no level has a settled refinement");
    Verdict out = Verdict::make_holds();
    bool open = false;
    for (int n = 0; n <= last_n; ++n) {
        NodeSet coarse = p.level_sorted(n);
        Outcome level = Outcome::Fails;
        for (int m = n; m <= std::min(settled, n + gap) && level != Outcome::Holds; ++m) {
            NodeSet fine = p.level_sorted(m);
            Verdict v;
            bool paths = is_snake(w, fine).holds() && is_snake(w, coarse).holds();
            if (paths) v = is_path_crooked(p, fine, coarse, w.depth());
            else if (fine.size() <= size_bound) v = is_tangled_refinement(p, fine, coarse, w.depth(), false, size_bound);
            else v = Verdict::make_unknown(w.depth(), "level too large for the general check");
            if (v.holds()) {
                level = Outcome::Holds;
                out.pairs.emplace_back(m, n);
            } else if (v.unknown()) {
                level = Outcome::Unknown;
            }
        }
        if (level == Outcome::Fails) {
            Verdict v = Verdict::make_fails();
            v.certificate_level = n;
            v.note = "level " + std::to_string(n) + " has no tangled refinement within " + std::to_string(gap) +
                     " levels";
            w.stamp(v);
            return v;
        }
        if (level == Outcome::Unknown) open = true;
    }
    if (open) return Verdict::make_unknown(w.depth(), "some level undecided");
    out.exhausted_depth = w.depth();
    out.note = "level pairs (fine, coarse) in pairs; regular and weakly tangled implies tangled";
    w.stamp(out);
    return out;
}

}  // namespace opct
