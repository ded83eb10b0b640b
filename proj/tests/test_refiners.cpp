#include <doctest.h>

#include "opct/generators.hpp"
#include "opct/io.hpp"
#include "opct/refiners.hpp"

using namespace opct;

namespace {

std::string fixture(const std::string& name) { return std::string(OPCT_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("identity refiners")
{
    Poset tree = gen_tree(2, 5);
    Refiner id = Refiner::identity(tree);
    Verdict v = check_refiner(id, 5);
    REQUIRE(v.holds());
    CHECK(v.pairs.size() == 6);
    CHECK(v.pairs[3].first == 3);
    CHECK(v.pairs[3].second == 3);
    // wedges of the deepest level are unsettled
    CHECK(check_wedge_preserving(id, 5).unknown());
    Poset f1 = load_poset(fixture("f1.poset"));
    CHECK(check_refiner(Refiner::identity(f1), f1.depth()).holds());
    CHECK(check_wedge_preserving(Refiner::identity(f1), f1.depth()).holds());
}

TEST_CASE("wedge preservation fails on a torn map")
{
    Poset arc = gen_arc(4);
    Poset tree = gen_tree(2, 4);
    Relation rel(arc.size(), tree.size(),
                 {{arc.at("[0,1]"), tree.at("t")}, {arc.at("[0,1/2)"), tree.at("t0")}, {arc.at("(1/4,3/4)"), tree.at("t1")}});
    Refiner r{&arc, &tree, rel};
    Verdict v = check_wedge_preserving(r, 4);
    REQUIRE(v.fails());
    CHECK(arc.name(v.witness[0]) == "[0,1/2)");
    CHECK(arc.name(v.witness[1]) == "(1/4,3/4)");
    // level 2 of the tree is refined by nothing
    CHECK(check_refiner(r, 4).fails());
}

TEST_CASE("the order refiner between a poset and its level subsequence")
{
    Poset arc = gen_arc(6);
    Poset even = level_subsequence(arc, 2);
    CHECK(even.depth() == 3);
    Refiner r = Refiner::order(arc, even);
    CHECK(r.rel.related(arc.at("[0,1/4)"), even.at("[0,1/4)")));
    CHECK(r.rel.related(arc.at("[0,1/8)"), even.at("[0,1]")));
    CHECK_FALSE(r.rel.related(arc.at("[0,1/2)"), even.at("[0,1/4)")));
    Refiner back = Refiner::reverse_order(even, arc);
    CHECK(back.rel.related(even.at("[0,1/4)"), arc.at("[0,1/8)")));
    CHECK_FALSE(back.rel.related(even.at("[0,1/4)"), arc.at("[0,1/2)")));
    CHECK(check_birefinable(Refiner::order(arc, even), Refiner::order(even, arc), 6).holds());
    CHECK_THROWS_AS(check_birefinable(r, r, 6), EndpointMismatch);
}

TEST_CASE("birefinability fails off the cap order")
{
    Poset f1 = load_poset(fixture("f1.poset"));
    std::vector<std::pair<Node, Node>> pairs;
    for (Node x = 0; x < f1.size(); ++x) pairs.emplace_back(x, x);
    pairs.emplace_back(f1.at("a"), f1.at("d"));
    Refiner id = Refiner::identity(f1);
    Refiner odd{&f1, &f1, Relation(f1.size(), f1.size(), pairs)};
    REQUIRE(check_refiner(odd, f1.depth()).holds());
    Verdict v = check_birefinable(id, odd, f1.depth());
    REQUIRE(v.fails());
    REQUIRE(v.witness.size() == 2);
    CHECK(f1.name(v.witness[0]) == "a");
    CHECK(f1.name(v.witness[1]) == "d");
}

TEST_CASE("star of the order is the star-below relation")
{
    Poset arc = gen_arc(5);
    Wedges w(arc, 5);
    StarResult tri = star_below_refiner(arc, 5);
    int count = 0;
    for (Node e : arc.cone(4))
        for (Node b : arc.cone(5)) {
            Verdict v = star_below(w, e, b);
            if (v.unknown()) continue;
            CHECK(tri.refiner.rel.related(e, b) == v.holds());
            count += v.holds();
        }
    CHECK(count > 0);
    Poset tree = gen_tree(2, 4);
    StarResult t = star_below_refiner(tree, 4);
    CHECK_FALSE(t.complete);
    for (Node e = 0; e < tree.size(); ++e)
        for (Node b = 0; b < tree.size(); ++b)
            if (tree.first_level(e) < 4) CHECK(t.refiner.rel.related(e, b) == tree.leq(e, b));
}

TEST_CASE("composition")
{
    Poset tree = gen_tree(2, 3);
    Refiner id = Refiner::identity(tree);
    CHECK(compose(id, id).rel == id.rel);
    StarResult s = star_compose(id, id, 3);
    CHECK(s.refiner.rel == star_below_refiner(tree, 3).refiner.rel);
    Poset arc = gen_arc(3);
    CHECK_THROWS_AS(compose(id, Refiner::identity(arc)), EndpointMismatch);
}

TEST_CASE("strong refiners")
{
    Poset tree = gen_tree(2, 4);
    // nothing is added, but the deepest level keeps it open
    CHECK(check_strong(Refiner::order(tree, tree), 4).unknown());
    Poset arc = gen_arc(4);
    Verdict v = check_strong(Refiner::identity(arc), 4);
    CHECK(v.fails());
}

TEST_CASE("applying a refiner to a thread")
{
    Poset tree = gen_tree(3, 4);
    Thread t = thread_from_names(tree, {"t", "t2", "t21"});
    SelectorPrefix s = apply_refiner(Refiner::identity(tree), t, 4);
    CHECK(tree.names_of(s.elements) == std::vector<std::string>{"t", "t2", "t21"});
}

TEST_CASE("back and forth with the gradification")
{
    Poset f5 = load_poset(fixture("f5.poset"));
    Poset g = gradify(f5);
    StagedFamily f = gradification_stages(f5, g);
    CHECK(verify_back_and_forth(f, 3).holds());
    CHECK_THROWS_AS(verify_back_and_forth(f, 40), StageMismatch);

    StagedFamily broken = f;
    broken.forward[1] = Relation(g.size(), f5.size(), {});
    Verdict v = verify_back_and_forth(broken, 3);
    REQUIRE(v.fails());
    CHECK(v.certificate_level == 1);
    CHECK(v.note.find("forward") != std::string::npos);

    StagedFamily stray = f;
    stray.forward[0] = Relation(g.size(), f5.size(), {{g.level_sorted(0)[0], f5.level_sorted(1)[0]}});
    CHECK_THROWS_AS(verify_back_and_forth(stray, 3), StageMismatch);
}
