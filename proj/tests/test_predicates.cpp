#include <doctest.h>

#include <map>
#include <random>

#include "opct/generators.hpp"
#include "opct/io.hpp"
#include "opct/predicates.hpp"
#include "oracles.hpp"

using namespace opct;

namespace {

std::string fixture(const char* n) { return std::string(OPCT_FIXTURES) + "/" + n; }

}  // namespace

TEST_CASE("arc predicates")
{
    Poset p = gen_arc(5);
    CHECK(check_graded(p).holds());
    CHECK(check_weakly_graded(p).holds());
    CHECK(check_predetermined(p, 5).holds());
    CHECK(check_branching(p, 5).holds());
    PredicateReport r = check_level_injective_all(p, 5);
    CHECK(r.verdict.holds());
    CHECK_FALSE(r.detail.empty());
    CHECK(check_level_injective(p, 1, 3).holds());
    CHECK_THROWS_AS(check_level_injective(p, 1, 9), DepthExceeded);
}

TEST_CASE("non-graded fixture")
{
    Poset p = load_poset(fixture("nongraded.poset"));
    Verdict v = check_graded(p);
    REQUIRE(v.fails());
    CHECK(p.name(v.witness[0]) == "(1/4,2/3)");
    CHECK(p.name(v.witness[1]) == "(1/4,1]");
}

TEST_CASE("graded is undecided on non-graded infinite truncations")
{
    PosetSpec s;
    s.levels = {{"X"}, {"a", "b"}, {"c", "d"}};
    s.edges = {{"a", "X"}, {"b", "X"}, {"c", "a"}, {"d", "b"}};
    Poset p = Poset::build(s);
    CHECK(check_graded(p).unknown());
}

TEST_CASE("two-column poset is not predetermined")
{
    Poset p = load_poset(fixture("f5.poset"));
    Verdict v = check_predetermined(p, 5);
    REQUIRE(v.fails());
    CHECK(p.name(v.witness[0]) == "(0,1)");
    CHECK(check_graded(p).holds());
}

TEST_CASE("tree and cofinite predicates")
{
    Poset t = gen_tree(2, 6);
    CHECK(check_predetermined(t, 6).holds());
    CHECK(check_branching(t, 6).holds());
    Poset c = load_poset(fixture("f6.poset"));
    CHECK(check_graded(c).holds());
    CHECK(check_predetermined(c, 6).holds());
    CHECK(check_branching(c, 6).holds());
}

TEST_CASE("a chain is not branching")
{
    Poset p = Poset::from_order({"x", "y", "z"}, {{"y", "x"}, {"z", "y"}});
    CHECK(check_branching(p, p.depth()).fails());
    CHECK(check_predetermined(p, p.depth()).holds());
}

TEST_CASE("prime and cap-determined on finite posets")
{
    Poset p = load_poset(fixture("f1.poset"));
    for (Node v = 0; v < p.size(); ++v) CHECK_FALSE(check_prime_element(p, v, p.depth()).unknown());
    CHECK_FALSE(check_prime(p, p.depth()).unknown());
    CHECK_FALSE(check_cap_determined(p, p.depth()).unknown());
}

TEST_CASE("implication arrows on random graded posets")
{
    std::mt19937 rng(17);
    int fired = 0;
    for (int i = 0; i < 40; ++i) {
        brute::Finite g = brute::random_graded(rng, 3, 3, 0.4);
        Poset p = brute::to_poset(g);
        const int d = p.depth();
        std::map<std::string, Outcome> v;
        v["graded"] = check_graded(p).outcome;
        v["weakly"] = check_weakly_graded(p).outcome;
        v["pre"] = check_predetermined(p, d).outcome;
        v["li"] = check_level_injective_all(p, d).verdict.outcome;
        v["br"] = check_branching(p, d).outcome;
        v["prime"] = check_prime(p, d).outcome;
        v["cd"] = check_cap_determined(p, d).outcome;
        auto arrow = [&](Outcome from, Outcome to) {
            if (from != Outcome::Holds) return;
            ++fired;
            CHECK(to != Outcome::Fails);
        };
        arrow(both(v["pre"], v["br"]), v["cd"]);
        arrow(both(v["li"], v["graded"]), v["pre"]);
        arrow(v["pre"], v["li"]);
        arrow(v["li"], v["prime"]);
        arrow(v["li"], v["weakly"]);
        arrow(v["graded"], v["weakly"]);
        arrow(v["cd"], v["br"]);
        arrow(v["cd"], v["prime"]);
    }
    CHECK(fired > 40);
}
