#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "opct/generators.hpp"
#include "opct/io.hpp"
#include "opct/report.hpp"

using namespace opct;

namespace {

std::string fixture(const std::string& name) { return std::string(OPCT_FIXTURES) + "/" + name; }

std::size_t count(const std::string& s, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + needle.size())) ++n;
    return n;
}

nlohmann::json entry(const Poset& p, const std::string& check, const CheckArgs& a)
{
    return {{"check", check}, {"args", args_json(a)}, {"verdict", verdict_json(run_check(p, check, a), &p, pairs_are_nodes(check))}};
}

}  // namespace

TEST_CASE("poset text round trip")
{
    Poset p = gen_arc(3);
    std::string text = serialize_poset(p);
    Poset q = parse_poset(text);
    CHECK(serialize_poset(q) == text);
    CHECK(q.size() == p.size());
    CHECK(q.flags() == p.flags());
    for (const auto& e : std::filesystem::directory_iterator(OPCT_FIXTURES)) {
        Poset f = load_poset(e.path().string());
        CHECK(serialize_poset(parse_poset(serialize_poset(f))) == serialize_poset(f));
    }
}

TEST_CASE("poset syntax errors carry line numbers")
{
    const std::string text = "poset v1\nlevel 0: a\nlevel 1: b\nedge: b < c\n";
    try {
        parse_poset(text);
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 4);
    }
    CHECK_THROWS_AS(parse_poset("level 0: a\n"), SyntaxError);
    CHECK_THROWS_AS(parse_poset("poset v1\nlevel 0: a\nlevel 2: b\n"), SyntaxError);
    CHECK_THROWS_AS(load_poset(fixture("missing.poset")), IoError);
    // comments and blank lines are ignored
    Poset p = parse_poset("poset v1\n\n# top\nlevel 0: a\nlevel 1: b\nedge: b < a\n");
    CHECK(p.leq(p.at("b"), p.at("a")));
}

TEST_CASE("dot export")
{
    Poset p = gen_arc(2);
    std::string dot = export_dot(p);
    CHECK(dot.rfind("digraph \"P\" {", 0) == 0);
    CHECK(count(dot, "->") == 12);
    CHECK(count(dot, "rank=same") == 3);
    for (Node v = 0; v < p.size(); ++v) CHECK(dot.find("\"" + p.name(v) + "\"") != std::string::npos);

    Poset f6 = load_poset(fixture("f6.poset"));
    std::string d6 = export_dot(f6, {"F6", {"ranksep=0.3"}});
    CHECK(d6.find("ranksep=0.3;") != std::string::npos);
    for (int n = 0; n < 6; ++n)
        for (Node v : f6.level_sorted(n)) CHECK(count(d6, "\"" + f6.name(v) + "\" ->") == 2);
}

TEST_CASE("refiner text")
{
    Poset arc = gen_arc(2);
    Refiner id = Refiner::identity(arc);
    std::string text = serialize_refiner(id);
    CHECK(text.rfind("refiner v1\n", 0) == 0);
    Refiner back = to_refiner(parse_refiner(text), arc, arc);
    CHECK(back.rel == id.rel);
    CHECK_THROWS(to_refiner(parse_refiner("refiner v1\npair: [0,1] > nowhere\n"), arc, arc));
    CHECK_THROWS_AS(parse_refiner("refiner v1\nstage 1:\nlevels: 0 0\n"), SyntaxError);

    Poset f5 = load_poset(fixture("f5.poset"));
    Poset g = gradify(f5);
    StagedFamily f = gradification_stages(f5, g);
    StagedFamily r = to_stages(parse_refiner(serialize_stages(f)), g, f5);
    REQUIRE(r.forward.size() == f.forward.size());
    CHECK(r.back.size() == f.back.size());
    for (std::size_t n = 0; n < f.forward.size(); ++n) CHECK(r.forward[n] == f.forward[n]);
    for (std::size_t n = 0; n < f.back.size(); ++n) CHECK(r.back[n] == f.back[n]);
    CHECK(r.c_levels == f.c_levels);
    CHECK(r.d_levels == f.d_levels);
}

TEST_CASE("report entries verify against their poset")
{
    Poset ng = load_poset(fixture("nongraded.poset"));
    Poset f1 = load_poset(fixture("f1.poset"));
    Poset arc = gen_arc(4);
    CheckArgs none;
    CHECK(verify_entry(ng, entry(ng, "graded", none)).holds());
    CheckArgs lvl;
    lvl.level = 2;
    CHECK(verify_entry(arc, entry(arc, "snake", lvl)).holds());
    CheckArgs w;
    w.element = "[0,1/2)";
    w.other = "(1/4,3/4)";
    CHECK(verify_entry(arc, entry(arc, "wedge", w)).holds());
    CHECK(verify_entry(f1, entry(f1, "predetermined", none)).holds());

    // a tampered witness is rejected
    nlohmann::json bad = entry(ng, "graded", none);
    bad["verdict"]["witness"] = nlohmann::json::array({ng.name(0), ng.name(0)});
    CHECK(verify_entry(ng, bad).fails());
    nlohmann::json flipped = entry(arc, "snake", lvl);
    flipped["verdict"]["outcome"] = "Fails";
    CHECK(verify_entry(arc, flipped).fails());

    CHECK_THROWS_AS(run_check(arc, "no-such-check", none), UnknownCheck);
    CheckArgs deep;
    deep.depth = 9;
    CHECK_THROWS(run_check(arc, "graded", deep));
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
