#include <doctest.h>

#include "opct/generators.hpp"
#include "opct/io.hpp"
#include "opct/predicates.hpp"
#include "opct/stars.hpp"
#include "opct/tangled.hpp"

using namespace opct;

namespace {

std::string fixture(const std::string& name) { return std::string(OPCT_FIXTURES) + "/" + name; }

std::vector<std::size_t> sizes(const Poset& p)
{
    std::vector<std::size_t> out;
    for (int n = 0; n <= p.depth(); ++n) out.push_back(p.level_sorted(n).size());
    return out;
}

}  // namespace

TEST_CASE("arc")
{
    Poset p = gen_arc(4);
    CHECK(sizes(p) == std::vector<std::size_t>{1, 3, 7, 15, 31});
    CHECK(p.lower_covers(p.at("[0,1]")).size() == 3);
    CHECK(p.names_of(p.level_sorted(1)) == std::vector<std::string>{"[0,1/2)", "(1/4,3/4)", "(1/2,1]"});
    // consecutive elements share exactly one element of the next level
    for (int n = 0; n < 4; ++n) {
        NodeSet lvl = p.level_sorted(n);
        for (std::size_t i = 0; i + 1 < lvl.size(); ++i)
            CHECK(set_intersection(p.lower_covers(lvl[i]), p.lower_covers(lvl[i + 1])).size() == 1);
    }
    CHECK(dyadic_interval_name(2, 0) == "[0,1/4)");
    CHECK(dyadic_interval_name(2, 3) == "(3/8,5/8)");
    CHECK(dyadic_interval_name(1, 2) == "(1/2,1]");
    CHECK(check_graded(p).holds());
    CHECK_THROWS(gen_arc(21));
}

TEST_CASE("circle")
{
    Poset p = gen_circle(4);
    CHECK(sizes(p) == std::vector<std::size_t>{1, 4, 8, 16, 32});
    for (int n = 1; n < 4; ++n)
        for (Node v : p.level_sorted(n)) CHECK(p.lower_covers(v).size() == 3);
    // half the arcs of a level sit inside one coarser arc, the other half straddle two
    for (int n = 2; n <= 4; ++n) {
        std::size_t one = 0, two = 0;
        for (Node v : p.level_sorted(n)) {
            std::size_t k = p.upper_covers(v).size();
            one += k == 1;
            two += k == 2;
        }
        CHECK(one == two);
        CHECK(one + two == p.level_sorted(n).size());
    }
    CHECK(p.find("X").has_value());
}

TEST_CASE("tree")
{
    Poset p = gen_tree(3, 3);
    CHECK(sizes(p) == std::vector<std::size_t>{1, 3, 9, 27});
    CHECK(p.upper_covers(p.at("t21")) == NodeSet{p.at("t2")});
    Poset wide = gen_tree(11, 1);
    CHECK(wide.find("t.10").has_value());
    CHECK_THROWS(gen_tree(1, 3));
}

TEST_CASE("cofinite")
{
    Poset p = load_poset(fixture("f6.poset"));
    Poset g = gen_cofinite(6);
    CHECK(serialize_poset(p) == serialize_poset(g));
    CHECK(sizes(g) == std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7});
    for (int n = 0; n < 6; ++n)
        for (Node v : g.level_sorted(n)) CHECK(g.lower_covers(v).size() == 2);
}

TEST_CASE("crooked tower")
{
    Poset p = gen_crooked(4);
    CHECK(p.depth() == 5);
    std::vector<std::size_t> sz = sizes(p);
    REQUIRE(sz.size() == 6);
    sz.pop_back();
    CHECK(sz == std::vector<std::size_t>{1, 1, 2, 3, 9});
    for (int n = 1; n <= 4; ++n) CHECK(is_path_crooked(p, p.level_sorted(n), p.level_sorted(n - 1), p.depth()).holds());
    CHECK_THROWS_AS(gen_crooked(5), std::invalid_argument);
    CHECK(gen_crooked(1).depth() == 2);
}

TEST_CASE("gradification")
{
    Poset arc = gen_arc(3);
    Poset g = gradify(arc);
    CHECK(sizes(g) == sizes(arc));
    CHECK(g.find("[0,1/2)@1").has_value());
    CHECK(check_graded(g).holds());

    Poset f5 = load_poset(fixture("f5.poset"));
    Poset h = gradify(f5);
    CHECK(sizes(h) == sizes(f5));
    CHECK(check_graded(h).holds());
    CHECK(h.leq(h.at("(1,1)@2"), h.at("(0,1)@1")));
    CHECK(h.leq(h.at("(2,0)@2"), h.at("(0,0)@0")));

    Poset hh = gradify(h);
    CHECK(sizes(hh) == sizes(h));
    CHECK(hh.find("(0,1)@1@1").has_value());
    CHECK(hh.size() == h.size());

    StagedFamily f = gradification_stages(f5, h);
    CHECK(f.forward.size() == static_cast<std::size_t>(f5.depth()) + 1);
    CHECK(f.forward[1].pairs().size() == 2);
    CHECK_THROWS_AS(gradification_stages(f5, gradify(gen_arc(2))), StageMismatch);
}

TEST_CASE("level subsequences")
{
    Poset arc = gen_arc(6);
    Poset even = level_subsequence(arc, 3);
    CHECK(sizes(even) == std::vector<std::size_t>{1, 15, 127});
    CHECK(even.leq(even.at("[0,1/64)"), even.at("[0,1]")));
    CHECK_THROWS(level_subsequence(load_poset(fixture("nongraded.poset")), 2));
    CHECK_THROWS(level_subsequence(arc, 0));
}
