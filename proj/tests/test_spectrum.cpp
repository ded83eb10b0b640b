#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "opct/generators.hpp"
#include "opct/io.hpp"
#include "opct/spectrum.hpp"
#include "opct/tangled.hpp"
#include "oracles.hpp"

using namespace opct;

namespace {

std::string fixture(const std::string& name) { return std::string(OPCT_FIXTURES) + "/" + name; }

using NameSets = std::set<std::set<std::string>>;

NameSets brute_points(const brute::Finite& f)
{
    NameSets out;
    for (std::uint32_t m : brute::minimal_selectors(f)) {
        std::set<std::string> s;
        for (int x = 0; x < f.n; ++x)
            if (m >> x & 1) s.insert(f.names[x]);
        out.insert(s);
    }
    return out;
}

NameSets library_points(const Poset& p)
{
    NameSets out;
    for (const NodeSet& s : enumerate_minimal_selectors(p).points) {
        auto names = p.names_of(s);
        out.insert(std::set<std::string>(names.begin(), names.end()));
    }
    return out;
}

}  // namespace

TEST_CASE("minimal selectors of the four element fixture")
{
    Poset p = load_poset(fixture("f1.poset"));
    SpectrumEnumeration e = enumerate_minimal_selectors(p);
    NameSets expect{{"a", "c"}, {"b", "c", "d"}};
    CHECK(library_points(p) == expect);
    CHECK(e.t1_separated);
}

TEST_CASE("minimal selectors against subset enumeration")
{
    std::mt19937 rng(5);
    for (int i = 0; i < 80; ++i) {
        brute::Finite f = brute::random_poset(rng, 1 + static_cast<int>(rng() % 8), 0.35);
        Poset p = brute::to_poset(f);
        CHECK(library_points(p) == brute_points(f));
    }
}

TEST_CASE("prime subsets against subset enumeration")
{
    std::mt19937 rng(6);
    int prime = 0, checked = 0;
    for (int i = 0; i < 60; ++i) {
        brute::Finite f = brute::random_poset(rng, 1 + static_cast<int>(rng() % 7), 0.4);
        Poset p = brute::to_poset(f);
        auto sel = brute::minimal_selectors(f);
        for (std::uint32_t m = 1; m < (1u << f.n); ++m) {
            if (!brute::is_up_set(f, m)) continue;
            std::uint32_t covered = 0;
            for (std::uint32_t s : sel)
                if ((s & ~m) == 0) covered |= s;
            NodeSet q;
            for (int x = 0; x < f.n; ++x)
                if (m >> x & 1) q.push_back(p.at(f.names[x]));
            Verdict v = is_prime_subset(p, normalized(q), p.depth());
            REQUIRE_FALSE(v.unknown());
            CHECK(v.holds() == (covered == m));
            prime += v.holds();
            ++checked;
        }
    }
    CHECK(prime > 0);
    CHECK(prime < checked);
}

TEST_CASE("prime subsets of infinite truncations")
{
    Poset tree = gen_tree(2, 4);
    CHECK_THROWS_AS(is_prime_subset(tree, {tree.at("t0")}, 4), NotUpClosed);
    Verdict v = is_prime_subset(tree, tree.up_closure({tree.at("t0")}), 4);
    CHECK(v.fails());
    CHECK(is_prime_subset(tree, {}, 4, true).unknown());
}

TEST_CASE("threads and points")
{
    Poset arc = gen_arc(4);
    Thread t = thread_from_names(arc, {"[0,1]", "(1/4,3/4)", "(3/8,5/8)", "(7/16,9/16)"});
    Thread u = thread_from_names(arc, {"[0,1]", "(1/4,3/4)", "(3/8,5/8)", "(3/8,1/2)"});
    Thread left = thread_from_names(arc, {"[0,1]", "[0,1/2)", "[0,1/4)"});
    CHECK(points_equal(arc, t, t, 4).holds());
    CHECK(points_equal(arc, t, u, 4).unknown());
    Verdict v = points_equal(arc, t, left, 4);
    REQUIRE(v.fails());
    CHECK(v.certificate_level == 2);
    CHECK_THROWS(thread_from_names(arc, {"[0,1]", "[0,1/4)"}));
    CHECK_THROWS(thread_from_names(arc, {"[0,1/2)", "[0,1/4)"}));
}

TEST_CASE("star closure of a thread")
{
    Poset tree = gen_tree(2, 5);
    Thread t = thread_from_names(tree, {"t", "t0", "t01"});
    SelectorPrefix s = star_closure_prefix(tree, thread_prefix(tree, t, true), 5);
    CHECK(s.certified);
    CHECK(tree.names_of(s.elements) == std::vector<std::string>{"t", "t0", "t01"});
    SelectorPrefix bad;
    bad.elements = tree.nodes_of({"t0", "t1"});
    CHECK_THROWS_AS(star_closure_prefix(tree, bad, 5), NotLinked);
}

TEST_CASE("connectivity")
{
    CHECK(connectivity_report(gen_arc(5), 5).holds());
    CHECK(connectivity_report(gen_circle(5), 5).holds());
    Verdict v = connectivity_report(gen_tree(2, 4), 4);
    REQUIRE(v.fails());
    CHECK(v.certificate_level == 1);
    Poset f6 = load_poset(fixture("f6.poset"));
    for (int n = 0; n <= 5; ++n) CHECK(is_cluster(f6, f6.level_sorted(n), 6).holds());
}

TEST_CASE("tangled refinements")
{
    Poset crooked = gen_crooked(4);
    CHECK(check_tangled_poset(crooked, crooked.depth()).holds());
    Poset arc = gen_arc(4);
    Verdict v = is_path_crooked(arc, arc.level_sorted(3), arc.level_sorted(2), 4);
    REQUIRE(v.fails());
    CHECK(v.witness.size() == 2);
    CHECK(is_tangled_refinement(arc, arc.level_sorted(2), arc.level_sorted(1), 4).fails());
    CHECK(is_tangled_refinement(arc, arc.level_sorted(2), arc.level_sorted(0), 4).holds());
    CHECK_THROWS_AS(is_tangled_refinement(arc, arc.level_sorted(3), arc.level_sorted(1), 4), SizeBound);
    CHECK_THROWS_AS(is_path_crooked(arc, arc.level_sorted(1), arc.level_sorted(2), 4), NotARefinement);
    Poset circle = gen_circle(4);
    CHECK_THROWS_AS(is_path_crooked(circle, circle.level_sorted(3), circle.level_sorted(2), 4), NotAPath);
    // a single level with one element is tangled in itself
    Poset tree = gen_tree(2, 3);
    CHECK(is_tangled_refinement(tree, tree.level_sorted(0), tree.level_sorted(0), 3).holds());
}
