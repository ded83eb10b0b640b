#include <doctest.h>

#include <random>

#include "opct/generators.hpp"
#include "opct/io.hpp"
#include "opct/poset.hpp"
#include "oracles.hpp"

using namespace opct;

namespace {

std::string fixture(const char* n) { return std::string(OPCT_FIXTURES) + "/" + n; }

BuildErrorKind build_error(const PosetSpec& s)
{
    try {
        Poset::build(s);
    } catch (const BuildError& e) {
        return e.kind();
    }
    FAIL("build accepted an invalid spec");
    return BuildErrorKind::EmptyLevel;
}

}  // namespace

TEST_CASE("single cover of three elements")
{
    PosetSpec s;
    s.levels = {{"X"}, {"a", "b", "c"}};
    s.edges = {{"a", "X"}, {"b", "X"}, {"c", "X"}};
    Poset p = Poset::build(s);
    CHECK(p.depth() == 1);
    CHECK(p.size() == 4);
    CHECK(p.leq(p.at("a"), p.at("X")));
    CHECK_FALSE(p.leq(p.at("a"), p.at("b")));
}

TEST_CASE("build rejections")
{
    PosetSpec s;
    s.levels = {{"X"}, {"p", "q"}};
    s.edges = {{"p", "X"}};
    CHECK(build_error(s) == BuildErrorKind::RefinementGap);

    s.levels = {{"X", "Y"}, {"p"}};
    s.edges = {{"p", "X"}};
    CHECK(build_error(s) == BuildErrorKind::CorefinementGap);

    s.levels = {{"X"}, {"p"}, {"p"}};
    s.edges = {{"p", "X"}};
    CHECK(build_error(s) == BuildErrorKind::SharedNonAtom);

    s.levels = {{"X"}, {"X", "p"}};
    s.edges = {{"p", "X"}};
    s.atoms = {"X"};
    CHECK(build_error(s) == BuildErrorKind::AtomWithLowerBound);

    s = {};
    s.levels = {{"X"}, {}};
    CHECK(build_error(s) == BuildErrorKind::EmptyLevel);

    s = {};
    s.levels = {{"X"}, {"p"}, {"q"}};
    s.edges = {{"p", "X"}, {"q", "X"}};
    s.flags = kGraded;
    CHECK(build_error(s) == BuildErrorKind::GradedEdgeSpan);
}

TEST_CASE("extend")
{
    Poset a2 = gen_arc(2), a3 = gen_arc(3);
    std::vector<std::pair<std::string, std::string>> edges;
    for (Node v : a3.level(3))
        for (Node u : a3.parents(v)) edges.emplace_back(a3.name(v), a3.name(u));
    Poset grown = a2.extend(a3.names_of(a3.level(3)), edges);
    CHECK(grown.depth() == 3);
    CHECK(serialize_poset(grown) == serialize_poset(a3));
    CHECK_THROWS_AS(a2.extend({}, {}), BuildError);

    Poset f5 = load_poset(fixture("f5.poset"));
    Poset f6 = f5.extend({"(6,0)", "(5,1)"}, {{"(6,0)", "(5,0)"}, {"(5,1)", "(4,1)"}, {"(5,1)", "(5,0)"}});
    CHECK(f6.depth() == f5.depth() + 1);
    CHECK(f6.level(6).size() == 2);
}

TEST_CASE("order queries on the four-element fixture")
{
    Poset p = load_poset(fixture("f1.poset"));
    Node a = p.at("a"), b = p.at("b"), c = p.at("c"), d = p.at("d");
    CHECK(p.leq(a, a));
    CHECK_FALSE(p.leq(a, d));
    CHECK(p.rank(b) == 1);
    CHECK(p.rank(c) == 0);
    CHECK(p.up_closure({b}) == normalized({b, c, d}));
    CHECK(p.down_closure({c}) == normalized({a, b, c}));
    CHECK(p.atom_status(a) == Tri::Yes);
    CHECK(p.atom_status(c) == Tri::No);
}

TEST_CASE("rank and levels of the two-column poset")
{
    Poset p = load_poset(fixture("f5.poset"));
    for (int n = 0; n < p.depth(); ++n) CHECK(p.rank(p.at("(" + std::to_string(n) + ",1)")) == n + 1);
    for (int n = 1; n <= p.depth(); ++n) {
        auto names = p.names_of(p.level(n));
        std::vector<std::string> expect{"(" + std::to_string(n) + ",0)", "(" + std::to_string(n - 1) + ",1)"};
        CHECK(names == expect);
    }
    // the atomless flag settles the deepest leaves
    CHECK(p.atom_status(p.at("(5,0)")) == Tri::No);
    PosetSpec s;
    s.levels = {{"X"}, {"a"}};
    s.edges = {{"a", "X"}};
    Poset q = Poset::build(s);
    CHECK(q.atom_status(q.at("a")) == Tri::Maybe);
}

TEST_CASE("level sizes and cones")
{
    Poset arc = gen_arc(5);
    for (int n = 0; n <= 5; ++n) CHECK(arc.level(n).size() == (1u << (n + 1)) - 1);
    Poset c = gen_circle(4);
    CHECK(c.level(0).size() == 1);
    for (int n = 1; n <= 4; ++n) CHECK(c.level(n).size() == (1u << (n + 1)));
    CHECK(arc.cone(2).size() == 1 + 3 + 7);
    CHECK(arc.leq(arc.at("(1/8,3/8)"), arc.at("[0,1/2)")));
}

TEST_CASE("graded rank equals level")
{
    Poset arc = gen_arc(4);
    for (Node v = 0; v < arc.size(); ++v) CHECK(arc.rank(v) == arc.first_level(v));
}

TEST_CASE("up_closure is a closure operator and leq a partial order")
{
    std::mt19937 rng(3);
    for (int i = 0; i < 30; ++i) {
        brute::Finite f = brute::random_poset(rng, 7, 0.35);
        Poset p = brute::to_poset(f);
        for (int a = 0; a < f.n; ++a)
            for (int b = 0; b < f.n; ++b) {
                Node x = p.at(f.names[a]), y = p.at(f.names[b]);
                CHECK(p.leq(x, y) == f.le[a][b]);
                if (x != y) CHECK_FALSE((p.leq(x, y) && p.leq(y, x)));
            }
        std::uniform_int_distribution<Node> pick(0, static_cast<Node>(p.size() - 1));
        NodeSet s = normalized({pick(rng), pick(rng)});
        NodeSet t = set_union(s, {pick(rng)});
        NodeSet cs = p.up_closure(s);
        CHECK(subset_of(s, cs));
        CHECK(p.up_closure(cs) == cs);
        CHECK(subset_of(cs, p.up_closure(t)));
    }
}

TEST_CASE("levels of a finite poset are minimal elements of cones")
{
    Poset p = load_poset(fixture("nongraded.poset"));
    CHECK(p.depth() == 2);
    CHECK(p.names_of(p.level(1)) == std::vector<std::string>{"[0,2/3)", "(1/3,1]"});
    CHECK(p.rank(p.at("(1/4,2/3)")) == 2);
}
