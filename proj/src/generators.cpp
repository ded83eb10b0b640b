#include <algorithm>
#include <numeric>

#include "opct/generators.hpp"
#include "opct/tangled.hpp"

namespace opct {

namespace {

void require_depth(int depth, int lo = 0)
{
    if (depth < lo) throw std::invalid_argument("depth must be at least " + std::to_string(lo));
}

std::string fraction(long long num, long long den)
{
    if (num == 0) return "0";
    long long g = std::gcd(num, den);
    num /= g;
    den /= g;
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

// fraction of a turn, wrapped into (-1/2, 1]
std::string circle_point(long long num, long long den)
{
    std::string s = fraction(num < 0 ? -num : num, den);
    return num < 0 ? "-" + s : s;
}

}  // namespace

std::string dyadic_interval_name(int n, long long k)
{
    const long long den = 1LL << (n + 1);
    const long long lo = k, hi = k + 2;
    std::string s = lo <= 0 ? "[0" : "(" + fraction(lo, den);
    s += ",";
    s += hi >= den ? "1]" : fraction(hi, den) + ")";
    return s;
}

Poset gen_arc(int depth)
{
    require_depth(depth);
    if (depth > 20) throw std::invalid_argument("arc depth above 20 is not supported");
    PosetSpec s;
    s.flags = kGraded | kAtomless | kEdgeWitnessing;
    for (int n = 0; n <= depth; ++n) {
        const long long size = (1LL << (n + 1)) - 1;
        std::vector<std::string> lv;
        for (long long k = 0; k < size; ++k) {
            lv.push_back(dyadic_interval_name(n, k));
            if (n > 0) {
                // parents i with child k in {2i, 2i+1, 2i+2}
                for (long long i = (k - 1) / 2; i <= k / 2; ++i)
                    if (i >= 0 && i < (1LL << n) - 1 && k >= 2 * i && k <= 2 * i + 2)
                        s.edges.emplace_back(lv.back(), dyadic_interval_name(n - 1, i));
            }
        }
        s.levels.push_back(std::move(lv));
    }
    return Poset::build(s);
}

Poset gen_circle(int depth)
{
    require_depth(depth);
    if (depth > 20) throw std::invalid_argument("circle depth above 20 is not supported");
    PosetSpec s;
    s.flags = kGraded | kAtomless | kEdgeWitnessing;
    s.levels.push_back({"X"});
    auto arc = [](int n, long long i) {
        const long long den = 1LL << (n + 1);
        return "(" + circle_point(i - 1, den) + "," + circle_point(i + 1, den) + ")";
    };
    for (int n = 1; n <= depth; ++n) {
        const long long size = 1LL << (n + 1);
        std::vector<std::string> lv;
        for (long long j = 0; j < size; ++j) {
            lv.push_back(arc(n, j));
            if (n == 1) {
                s.edges.emplace_back(lv.back(), "X");
                continue;
            }
            // arc j lies in the parent arcs i with j in {2i-1, 2i, 2i+1} mod size
            const long long half = size / 2;
            if (j % 2 == 0) {
                s.edges.emplace_back(lv.back(), arc(n - 1, j / 2));
            } else {
                s.edges.emplace_back(lv.back(), arc(n - 1, (j - 1) / 2));
                s.edges.emplace_back(lv.back(), arc(n - 1, ((j + 1) / 2) % half));
            }
        }
        s.levels.push_back(std::move(lv));
    }
    return Poset::build(s);
}

Poset gen_tree(int k, int depth)
{
    require_depth(depth);
    if (k < 2) throw std::invalid_argument("tree arity must be at least 2");
    double total = 1, width = 1;
    for (int n = 1; n <= depth; ++n) total += (width *= k);
    if (total > 2e6) throw std::invalid_argument("tree too large");
    PosetSpec s;
    s.flags = kGraded | kAtomless | kEdgeWitnessing;
    const bool wide = k > 10;
    std::vector<std::string> prev{"t"};
    s.levels.push_back(prev);
    for (int n = 1; n <= depth; ++n) {
        std::vector<std::string> lv;
        for (const auto& parent : prev)
            for (int c = 0; c < k; ++c) {
                lv.push_back(parent + (wide ? "." : "") + std::to_string(c));
                s.edges.emplace_back(lv.back(), parent);
            }
        s.levels.push_back(lv);
        prev = std::move(lv);
    }
    return Poset::build(s);
}

Poset gen_cofinite(int depth)
{
    require_depth(depth);
    PosetSpec s;
    s.flags = kGraded | kAtomless | kEdgeWitnessing;
    auto nm = [](int n, int i) { return "p" + std::to_string(n) + "_" + std::to_string(i); };
    for (int n = 0; n <= depth; ++n) {
        std::vector<std::string> lv;
        for (int i = 0; i <= n; ++i) lv.push_back(nm(n, i));
        if (n > 0)
            for (int i = 0; i < n; ++i) {
                s.edges.emplace_back(nm(n, i), nm(n - 1, i));
                s.edges.emplace_back(nm(n, n), nm(n - 1, i));
            }
        s.levels.push_back(std::move(lv));
    }
    return Poset::build(s);
}

namespace {

// Position x on a path of L links: even x = 2u sits in link u, odd x = 2u+1
// in links u and u+1.
std::vector<std::vector<int>> crooked_walks()
{
    return {
        {},                             // level 0: single link X
        {0},                            // level 1: Y below X
        {0, 0},                         // level 2: two links below Y
        {0, 1, 2},                      // over 2 links
        {0, 1, 2, 3, 2, 1, 2, 3, 4},    // over 3 links
    };
}

}  // namespace

Poset gen_crooked(int depth)
{
    require_depth(depth, 1);
    if (depth > kMaxCrookedDepth)
        throw std::invalid_argument("crooked tower depth is limited to " + std::to_string(kMaxCrookedDepth));
    auto walks = crooked_walks();
    PosetSpec s;
    s.flags = kGraded | kAtomless | kEdgeWitnessing;
    auto nm = [](int n, std::size_t i) { return "k" + std::to_string(n) + "_" + std::to_string(i); };
    s.levels.push_back({nm(0, 0)});
    std::size_t coarse = 1;
    auto add_level = [&](int n, const std::vector<int>& walk) {
        std::vector<std::string> lv;
        for (std::size_t i = 0; i < walk.size(); ++i) {
            lv.push_back(nm(n, i));
            if (coarse == 1) {
                s.edges.emplace_back(lv.back(), nm(n - 1, 0));
                continue;
            }
            int x = walk[i];
            s.edges.emplace_back(lv.back(), nm(n - 1, static_cast<std::size_t>(x / 2)));
            if (x % 2) s.edges.emplace_back(lv.back(), nm(n - 1, static_cast<std::size_t>(x / 2 + 1)));
        }
        s.levels.push_back(std::move(lv));
        coarse = walk.size();
    };
    for (int n = 1; n <= depth; ++n) add_level(n, walks[n]);
    // straight refinement so the last path's wedges are witnessed
    std::vector<int> straight;
    if (coarse == 1) straight = {0};
    else
        for (int x = 0; x <= 2 * static_cast<int>(coarse) - 2; ++x) straight.push_back(x);
    add_level(depth + 1, straight);
    Poset p = Poset::build(s);
    for (int n = 1; n <= depth; ++n) {
        Verdict v = is_path_crooked(p, p.level_sorted(n), p.level_sorted(n - 1), p.depth());
        if (!v.holds())
            throw GenerationFailed("level " + std::to_string(n) + " is not crooked in level " + std::to_string(n - 1));
    }
    return p;
}

Poset gradify(const Poset& p)
{
    PosetSpec s;
    s.flags = kGraded | kAtomless | (p.flags() & kEdgeWitnessing);
    auto nm = [&](Node v, int n) { return p.name(v) + "@" + std::to_string(n); };
    for (int n = 0; n <= p.depth(); ++n) {
        std::vector<std::string> lv;
        for (Node v : p.level(n)) {
            lv.push_back(nm(v, n));
            if (n > 0)
                for (Node u : p.level(n - 1))
                    if (p.leq(v, u)) s.edges.emplace_back(lv.back(), nm(u, n - 1));
        }
        s.levels.push_back(std::move(lv));
    }
    return Poset::build(s);
}

StagedFamily gradification_stages(const Poset& p, const Poset& graded)
{
    if (graded.depth() != p.depth()) throw StageMismatch("gradification has a different depth");
    StagedFamily f;
    f.p = &graded;
    f.q = &p;
    const int d = p.depth();
    auto gnode = [&](Node v, int n) { return graded.at(p.name(v) + "@" + std::to_string(n)); };
    for (int n = 0; n <= d; ++n) {
        f.c_levels.push_back(n);
        f.d_levels.push_back(n);
        std::vector<std::pair<Node, Node>> fw;
        for (Node v : p.level(n)) fw.emplace_back(gnode(v, n), v);
        f.forward.emplace_back(graded.size(), p.size(), std::move(fw));
        if (n < d) {
            std::vector<std::pair<Node, Node>> bk;
            for (Node v : p.level(n + 1))
                for (Node u : p.level(n))
                    if (p.leq(v, u)) bk.emplace_back(v, gnode(u, n));
            f.back.emplace_back(p.size(), graded.size(), std::move(bk));
        }
    }
    return f;
}

Poset level_subsequence(const Poset& p, int step)
{
    if (step < 1) throw std::invalid_argument("step must be positive");
    if (!p.has(kGraded)) throw std::invalid_argument("level subsequences need a graded poset");
    PosetSpec s;
    s.flags = p.flags() & (kGraded | kAtomless | kEdgeWitnessing);
    for (int n = 0; n <= p.depth(); n += step) {
        std::vector<std::string> lv;
        for (Node v : p.level(n)) {
            lv.push_back(p.name(v));
            if (p.atom_marked(v)) s.atoms.push_back(p.name(v));
            if (n > 0)
                for (Node u : p.level(n - step))
                    if (u != v && p.leq(v, u)) s.edges.emplace_back(p.name(v), p.name(u));
        }
        s.levels.push_back(std::move(lv));
    }
    s.atoms = [&] {
        auto a = s.atoms;
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        return a;
    }();
    return Poset::build(s);
}

}  // namespace opct
