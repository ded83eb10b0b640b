// One PASS/FAIL line per acceptance criterion.
#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "opct/combinatorics.hpp"
#include "opct/generators.hpp"
#include "opct/io.hpp"
#include "opct/predicates.hpp"
#include "opct/refiners.hpp"
#include "opct/spectrum.hpp"
#include "opct/stars.hpp"
#include "opct/tangled.hpp"
#include "oracles.hpp"

using namespace opct;

namespace {

std::string fixture(const std::string& name) { return std::string(OPCT_FIXTURES) + "/" + name; }

struct Outcome2 {
    bool ok = true;
    std::string detail;
};

class Criterion {
public:
    explicit Criterion(Outcome2& o) : o_(o) {}
    void expect(bool cond, const std::string& what)
    {
        if (!cond && o_.ok) {
            o_.ok = false;
            o_.detail = what;
        }
    }

private:
    Outcome2& o_;
};

// 1: is_band / is_cap against subset enumeration on random finite posets.
Outcome2 oracle_agreement()
{
    Outcome2 out;
    Criterion c(out);
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> size(1, 9);
    std::uniform_real_distribution<double> dens(0.1, 0.6);
    long disagreements = 0, subsets = 0;
    for (int i = 0; i < 200; ++i) {
        brute::Finite f = brute::random_poset(rng, size(rng), dens(rng));
        Poset p = brute::to_poset(f);
        for (std::uint32_t m = 0; m < (1u << f.n); ++m) {
            NodeSet s;
            for (int x = 0; x < f.n; ++x)
                if (m >> x & 1) s.push_back(p.at(f.names[x]));
            s = normalized(s);
            ++subsets;
            Verdict band = is_band(p, s, p.depth());
            Verdict cap = is_cap(p, s, p.depth());
            if (band.unknown() || band.holds() != brute::is_band(f, m)) ++disagreements;
            if (cap.unknown() || cap.holds() != brute::is_cap(f, m)) ++disagreements;
        }
    }
    c.expect(disagreements == 0, std::to_string(disagreements) + " disagreements");
    out.detail += (out.detail.empty() ? "" : "; ") + std::to_string(subsets) + " subsets";
    return out;
}

// 2: fixture with a<c, b<c, b<d.
Outcome2 fixture_f1()
{
    Outcome2 out;
    Criterion c(out);
    Poset p = load_poset(fixture("f1.poset"));
    c.expect(is_band(p, p.nodes_of({"a", "d"}), p.depth()).holds(), "{a,d} is not a band");
    SpectrumEnumeration e = enumerate_minimal_selectors(p);
    for (const auto& s : e.points) c.expect(p.up_closure(s) == s, "a minimal selector is not an up-set");
    c.expect(e.t1_separated, "minimal selectors not T1-separated");
    for (std::size_t i = 0; i < e.points.size(); ++i)
        for (std::size_t j = 0; j < e.points.size(); ++j)
            if (i != j) c.expect(!subset_of(e.points[i], e.points[j]), "nested minimal selectors");
    // independent enumeration
    brute::Finite f = brute::from_edges(4, {{0, 2}, {1, 2}, {1, 3}});
    f.names = {"a", "b", "c", "d"};
    std::vector<NodeSet> expect;
    for (auto m : brute::minimal_selectors(f)) {
        NodeSet s;
        for (int x = 0; x < 4; ++x)
            if (m >> x & 1) s.push_back(p.at(f.names[x]));
        expect.push_back(normalized(s));
        c.expect(brute::is_up_set(f, m), "oracle selector is not an up-set");
    }
    auto got = e.points;
    std::sort(got.begin(), got.end());
    std::sort(expect.begin(), expect.end());
    c.expect(got == expect, "minimal selectors differ from the brute-force enumeration");
    out.detail += (out.detail.empty() ? "" : "; ") + std::to_string(got.size()) + " minimal selectors";
    return out;
}

// 3: arc at depth 6.
Outcome2 arc_predicates()
{
    Outcome2 out;
    Criterion c(out);
    Poset p = gen_arc(6);
    c.expect(check_graded(p).holds(), "graded");
    c.expect(check_predetermined(p, 6).holds(), "predetermined");
    c.expect(check_branching(p, 6).holds(), "branching");
    c.expect(check_level_injective_all(p, 6).verdict.holds(), "level-injective");
    c.expect(connectivity_report(p, 6).holds(), "connectivity");
    // level 6 needs level 7 to witness its wedges
    Poset q = gen_arc(7);
    Wedges w(q, 7);
    for (int n = 0; n <= 6; ++n) {
        c.expect(is_snake(w, q.level_sorted(n)).holds(), "level " + std::to_string(n) + " snake");
        c.expect(is_cluster(w, q.level_sorted(n)).holds(), "level " + std::to_string(n) + " cluster");
    }
    return out;
}

// 4: star refinement of arc levels against exact interval arithmetic.
Outcome2 arc_stars()
{
    Outcome2 out;
    Criterion c(out);
    Poset p = gen_arc(6);
    Wedges w(p, 6);
    int mismatches = 0;
    for (int n = 0; n <= 3; ++n) {
        for (int gap : {1, 2}) {
            Verdict v = star_refines(w, n + gap, n);
            bool expect = brute::arc_star_refines(n + gap, n);
            if (v.unknown() || v.holds() != expect) ++mismatches;
            // level 0 is the single interval [0,1], so gap 1 only fails from n = 1 on
            bool want_holds = gap == 2 || n == 0;
            c.expect(want_holds ? v.holds() : v.fails(),
                     "star_refines(" + std::to_string(n + gap) + "," + std::to_string(n) + ")");
        }
    }
    c.expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
    return out;
}

// 5: binary tree at depth 8.
Outcome2 tree_checks()
{
    Outcome2 out;
    Criterion c(out);
    Poset p = gen_tree(2, 8);
    c.expect(check_predetermined(p, 8).holds(), "predetermined");
    c.expect(check_branching(p, 8).holds(), "branching");
    c.expect(check_regular(p, 8, 1).holds(), "regular with skip 1");
    Wedges w(p, 8);
    std::mt19937 rng(7);
    NodeSet pool = p.cone(7);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < 20; ++i) {
        Node e = pool[pick(rng)];
        c.expect(star_below(w, e, e).holds(), "star_below(" + p.name(e) + ", itself)");
    }
    for (int n = 1; n <= 8; ++n) c.expect(is_cluster(w, p.level_sorted(n)).fails(), "level " + std::to_string(n) + " is a cluster");
    return out;
}

// 6: non-graded fixture.
Outcome2 nongraded()
{
    Outcome2 out;
    Criterion c(out);
    Poset p = load_poset(fixture("nongraded.poset"));
    Verdict v = check_graded(p);
    c.expect(v.fails(), "check_graded does not fail");
    c.expect(v.witness.size() == 2 && p.name(v.witness[0]) == "(1/4,2/3)" && p.name(v.witness[1]) == "(1/4,1]",
             "witness differs");
    return out;
}

// 7: cofinite fixture at depth 6.
Outcome2 cofinite()
{
    Outcome2 out;
    Criterion c(out);
    Poset p = load_poset(fixture("f6.poset"));
    c.expect(p.depth() == 6, "fixture depth");
    for (Node v = 0; v < p.size(); ++v)
        if (p.first_level(v) < p.depth())
            c.expect(p.lower_covers(v).size() == 2, p.name(v) + " has " + std::to_string(p.lower_covers(v).size()) +
                                                        " immediate predecessors");
    c.expect(check_graded(p).holds(), "graded");
    c.expect(check_predetermined(p, 6).holds(), "predetermined");
    c.expect(check_branching(p, 6).holds(), "branching");
    // the deepest level's wedges are witnessed by one more generated level
    Poset next = gen_cofinite(7);
    std::vector<std::string> lv = next.names_of(next.level(7));
    std::vector<std::pair<std::string, std::string>> edges;
    for (Node v : next.level(7))
        for (Node u : next.parents(v)) edges.emplace_back(next.name(v), next.name(u));
    Poset q = p.extend(lv, edges);
    Wedges w(q, 7);
    for (int n = 0; n <= 6; ++n) c.expect(is_cluster(w, q.level_sorted(n)).holds(), "level " + std::to_string(n) + " cluster");
    return out;
}

// Random path Q (level 1) refined by a walk P (level 2); level 3 witnesses
// consecutive overlaps in P.
Poset random_path_pair(std::mt19937& rng)
{
    std::uniform_int_distribution<int> links(1, 4);
    const int L = links(rng);
    const int top = 2 * L - 2;
    std::vector<int> walk;
    for (;;) {
        std::uniform_int_distribution<int> len(std::max(1, top + 1), 10);
        int n = len(rng);
        walk = {0};
        std::vector<bool> seen(top + 1, false);
        seen[0] = true;
        while (static_cast<int>(walk.size()) < n) {
            int x = walk.back();
            int step = top == 0 ? 0 : (x == 0 ? 1 : x == top ? -1 : (rng() % 2 ? 1 : -1));
            walk.push_back(x + step);
            seen[x + step] = true;
        }
        if (std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) break;
    }
    PosetSpec s;
    s.flags = kGraded | kAtomless | kEdgeWitnessing;
    s.levels.push_back({"X"});
    std::vector<std::string> q, f, w;
    for (int u = 0; u < L; ++u) {
        q.push_back("q" + std::to_string(u));
        s.edges.emplace_back(q.back(), "X");
    }
    for (std::size_t i = 0; i < walk.size(); ++i) {
        f.push_back("f" + std::to_string(i));
        s.edges.emplace_back(f.back(), "q" + std::to_string(walk[i] / 2));
        if (walk[i] % 2) s.edges.emplace_back(f.back(), "q" + std::to_string(walk[i] / 2 + 1));
        w.push_back("c" + std::to_string(i));
        s.edges.emplace_back(w.back(), f.back());
        if (i > 0) {
            w.push_back("o" + std::to_string(i));
            s.edges.emplace_back(w.back(), f[i - 1]);
            s.edges.emplace_back(w.back(), f[i]);
        }
    }
    s.levels.push_back(q);
    s.levels.push_back(f);
    s.levels.push_back(w);
    return Poset::build(s);
}

// 8: crookedness.
Outcome2 crookedness()
{
    Outcome2 out;
    Criterion c(out);
    Poset p = gen_crooked(4);
    for (int n = 1; n <= 4; ++n)
        c.expect(is_path_crooked(p, p.level_sorted(n), p.level_sorted(n - 1), p.depth()).holds(),
                 "crooked tower level " + std::to_string(n));
    c.expect(check_tangled_poset(p, p.depth()).holds(), "check_tangled_poset");
    Poset arc = gen_arc(4);
    c.expect(is_path_crooked(arc, arc.level_sorted(3), arc.level_sorted(2), 4).fails(), "straight arc refinement");
    std::mt19937 rng(99);
    int agree = 0, crooked = 0;
    for (int i = 0; i < 50; ++i) {
        Poset r = random_path_pair(rng);
        Verdict a = is_tangled_refinement(r, r.level_sorted(2), r.level_sorted(1), 3);
        Verdict b = is_path_crooked(r, r.level_sorted(2), r.level_sorted(1), 3);
        if (!a.unknown() && a.outcome == b.outcome) ++agree;
        if (b.holds()) ++crooked;
    }
    c.expect(agree == 50, std::to_string(50 - agree) + " disagreements");
    out.detail += (out.detail.empty() ? "" : "; ") + std::to_string(crooked) + "/50 random pairs crooked";
    return out;
}

// 9: refiners.
Outcome2 refiners()
{
    Outcome2 out;
    Criterion c(out);
    Poset arc = gen_arc(10);
    Poset even = level_subsequence(arc, 2);
    Poset graded = gradify(even);
    StagedFamily f = gradification_stages(even, graded);
    c.expect(verify_back_and_forth(f, 4).holds(), "back-and-forth with the gradification");

    Poset p = gen_arc(6);
    Poset q = level_subsequence(p, 2);
    Refiner r = Refiner::order(p, q), s = Refiner::order(q, p);
    c.expect(check_birefinable(r, s, 6).holds(), "level-subsequence inclusion is not birefinable");

    Poset t = gen_tree(2, 6);
    Thread th;
    std::string nm = "t";
    for (int n = 0; n <= 6; ++n) {
        th.push_back(t.at(nm));
        nm += "0";
    }
    SelectorPrefix got = apply_refiner(Refiner::identity(t), th, 6);
    Thread settled(th.begin(), th.end() - 1);
    SelectorPrefix own = thread_prefix(t, settled, true);
    c.expect(own.certified, "thread prefix not certified by regularity");
    c.expect(got.elements == own.elements, "identity refiner moved the thread prefix");
    return out;
}

struct Arrow {
    const char* from;
    const char* to;
};

// 10: implication diagram.
Outcome2 implications()
{
    Outcome2 out;
    Criterion c(out);
    std::vector<Poset> posets;
    for (const auto& e : std::filesystem::directory_iterator(OPCT_FIXTURES))
        if (e.path().extension() == ".poset") posets.push_back(load_poset(e.path().string()));
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> ranks(1, 4);
    std::uniform_real_distribution<double> dens(0.0, 0.7);
    for (int i = 0; i < 100; ++i) {
        brute::Finite g;
        do g = brute::random_graded(rng, ranks(rng), 3, dens(rng));
        while (g.n > 12);
        posets.push_back(brute::to_poset(g));
    }
    const std::vector<Arrow> arrows = {
        {"pb", "cap-determined"}, {"pb", "predetermined"},    {"lg", "predetermined"},
        {"lg", "graded"},         {"predetermined", "level-injective"},
        {"level-injective", "prime"}, {"level-injective", "weakly graded"},
        {"graded", "weakly graded"},  {"cap-determined", "branching"}, {"cap-determined", "prime"},
    };
    int violations = 0, fired = 0;
    for (const Poset& p : posets) {
        const int d = p.depth();
        std::map<std::string, Outcome> v;
        v["graded"] = check_graded(p).outcome;
        v["weakly graded"] = check_weakly_graded(p).outcome;
        v["predetermined"] = check_predetermined(p, d).outcome;
        v["level-injective"] = check_level_injective_all(p, d).verdict.outcome;
        v["branching"] = check_branching(p, d).outcome;
        v["prime"] = check_prime(p, d).outcome;
        v["cap-determined"] = check_cap_determined(p, d).outcome;
        v["pb"] = both(v["predetermined"], v["branching"]);
        v["lg"] = both(v["level-injective"], v["graded"]);
        for (const auto& a : arrows) {
            if (v[a.from] != Outcome::Holds) continue;
            ++fired;
            if (v[a.to] == Outcome::Fails) {
                ++violations;
                c.expect(false, std::string(a.from) + " => " + a.to + " violated");
            }
        }
    }
    c.expect(violations == 0, std::to_string(violations) + " violations");
    out.detail += (out.detail.empty() ? "" : "; ") + std::to_string(posets.size()) + " posets, " +
                  std::to_string(fired) + " arrow instances";
    return out;
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome2()>>> criteria = {
        {"oracle agreement on 200 random finite posets", oracle_agreement},
        {"fixture F1 band and selectors", fixture_f1},
        {"arc depth 6 predicates, snakes, clusters", arc_predicates},
        {"arc star refinement vs dyadic oracle", arc_stars},
        {"binary tree depth 8", tree_checks},
        {"non-graded fixture witness", nongraded},
        {"cofinite fixture depth 6", cofinite},
        {"crookedness", crookedness},
        {"refiners and gradification", refiners},
        {"implication diagram", implications},
    };
    const double limits[] = {10, 1, 5, 60, 5, 60, 60, 30, 60, 60};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome2 o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool ok = o.ok && secs < limits[i];
        if (o.ok && !ok) o.detail += "; over time limit";
        failed += !ok;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << "  (" << secs << " s";
        if (!o.detail.empty()) line << "; " << o.detail;
        line << ")";
        std::cout << line.str() << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
