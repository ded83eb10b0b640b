#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "opct/combinatorics.hpp"
#include "opct/predicates.hpp"
#include "opct/report.hpp"
#include "opct/spectrum.hpp"
#include "opct/stars.hpp"
#include "opct/tangled.hpp"

namespace opct {

using nlohmann::json;

json args_json(const CheckArgs& a)
{
    json j = json::object();
    j["depth"] = a.depth;
    if (!a.set.empty()) j["set"] = a.set;
    if (!a.coarse.empty()) j["coarse"] = a.coarse;
    if (!a.element.empty()) j["element"] = a.element;
    if (!a.other.empty()) j["other"] = a.other;
    if (a.m >= 0) j["levels"] = {a.m, a.n};
    if (a.level >= 0) j["level"] = a.level;
    j["skip"] = a.skip;
    j["gap"] = a.gap;
    return j;
}

CheckArgs args_from_json(const json& j)
{
    CheckArgs a;
    a.depth = j.value("depth", -1);
    a.set = j.value("set", std::vector<std::string>{});
    a.coarse = j.value("coarse", std::vector<std::string>{});
    a.element = j.value("element", std::string{});
    a.other = j.value("other", std::string{});
    if (j.contains("levels")) {
        a.m = j["levels"].at(0).get<int>();
        a.n = j["levels"].at(1).get<int>();
    }
    a.level = j.value("level", -1);
    a.skip = j.value("skip", 3);
    a.gap = j.value("gap", 3);
    return a;
}

namespace {

using CheckFn = std::function<Verdict(const Poset&, const CheckArgs&, int)>;

NodeSet set_arg(const Poset& p, const CheckArgs& a)
{
    if (a.level >= 0) {
        if (a.level > p.depth()) throw DepthExceeded("level " + std::to_string(a.level) + " is beyond the truncation");
        return p.level_sorted(a.level);
    }
    if (a.set.empty()) throw std::invalid_argument("this check needs --set or --level");
    return normalized(p.nodes_of(a.set));
}

Node element_arg(const Poset& p, const std::string& s, const char* flag)
{
    if (s.empty()) throw std::invalid_argument(std::string("this check needs ") + flag);
    return p.at(s);
}

void need_levels(const CheckArgs& a)
{
    if (a.m < 0 || a.n < 0) throw std::invalid_argument("this check needs --levels m,n");
}

const std::map<std::string, CheckFn>& registry()
{
    static const std::map<std::string, CheckFn> r = {
        {"graded", [](const Poset& p, const CheckArgs&, int) { return check_graded(p); }},
        {"weakly-graded", [](const Poset& p, const CheckArgs&, int) { return check_weakly_graded(p); }},
        {"predetermined", [](const Poset& p, const CheckArgs&, int d) { return check_predetermined(p, d); }},
        {"level-injective",
         [](const Poset& p, const CheckArgs& a, int d) {
             if (a.m >= 0) return check_level_injective(p, a.m, a.n);
             return check_level_injective_all(p, d).verdict;
         }},
        {"branching", [](const Poset& p, const CheckArgs&, int d) { return check_branching(p, d); }},
        {"prime",
         [](const Poset& p, const CheckArgs& a, int d) {
             if (!a.element.empty()) return check_prime_element(p, p.at(a.element), d);
             return check_prime(p, d);
         }},
        {"cap-determined", [](const Poset& p, const CheckArgs&, int d) { return check_cap_determined(p, d); }},
        {"regular", [](const Poset& p, const CheckArgs& a, int d) { return check_regular(p, d, a.skip); }},
        {"edge-witnessing", [](const Poset& p, const CheckArgs&, int d) { return check_edge_witnessing(p, d); }},
        {"star-refining", [](const Poset& p, const CheckArgs&, int d) { return check_star_refining(p, d); }},
        {"star-refines",
         [](const Poset& p, const CheckArgs& a, int d) {
             need_levels(a);
             return star_refines(p, a.m, a.n, d);
         }},
        {"snake", [](const Poset& p, const CheckArgs& a, int d) { return is_snake(p, set_arg(p, a), d); }},
        {"cluster", [](const Poset& p, const CheckArgs& a, int d) { return is_cluster(p, set_arg(p, a), d); }},
        {"round", [](const Poset& p, const CheckArgs& a, int d) { return is_round(p, set_arg(p, a), d); }},
        {"band", [](const Poset& p, const CheckArgs& a, int d) { return is_band(p, set_arg(p, a), d); }},
        {"cap", [](const Poset& p, const CheckArgs& a, int d) { return is_cap(p, set_arg(p, a), d); }},
        {"antichain",
         [](const Poset& p, const CheckArgs& a, int) {
             return is_antichain(p, set_arg(p, a)) ? Verdict::make_holds() : Verdict::make_fails();
         }},
        {"connectivity", [](const Poset& p, const CheckArgs&, int d) { return connectivity_report(p, d); }},
        {"tangled",
         [](const Poset& p, const CheckArgs& a, int d) { return check_tangled_poset(p, d, kTangledBound, a.gap); }},
        {"tangled-refinement",
         [](const Poset& p, const CheckArgs& a, int d) {
             return is_tangled_refinement(p, set_arg(p, a), normalized(p.nodes_of(a.coarse)), d);
         }},
        {"path-crooked",
         [](const Poset& p, const CheckArgs& a, int d) {
             return is_path_crooked(p, set_arg(p, a), normalized(p.nodes_of(a.coarse)), d);
         }},
        {"prime-subset",
         [](const Poset& p, const CheckArgs& a, int d) {
             bool whole = a.set.empty() && a.level < 0;
             return is_prime_subset(p, whole ? NodeSet{} : set_arg(p, a), d, whole);
         }},
        {"wedge",
         [](const Poset& p, const CheckArgs& a, int d) {
             return wedge(p, element_arg(p, a.element, "--element"), element_arg(p, a.other, "--other"), d);
         }},
        {"star-below",
         [](const Poset& p, const CheckArgs& a, int d) {
             return star_below(p, element_arg(p, a.element, "--element"), element_arg(p, a.other, "--other"), d);
         }},
        {"cap-order",
         [](const Poset& p, const CheckArgs& a, int d) {
             return cap_order_leq(p, element_arg(p, a.element, "--element"), element_arg(p, a.other, "--other"), d);
         }},
    };
    return r;
}

}  // namespace

std::vector<std::string> check_names()
{
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
}

Verdict run_check(const Poset& p, const std::string& name, const CheckArgs& a)
{
    auto it = registry().find(name);
    if (it == registry().end()) throw UnknownCheck("unknown check '" + name + "'");
    int d = a.depth < 0 ? p.depth() : a.depth;
    if (d > p.depth()) throw DepthExceeded("depth " + std::to_string(d) + " exceeds the truncation depth " + std::to_string(p.depth()));
    return it->second(p, a, d);
}

std::string fnv1a_hex(const std::string& text)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream s;
    s << std::hex;
    s.width(16);
    s.fill('0');
    s << h;
    return s.str();
}

bool pairs_are_nodes(const std::string& check) { return check != "regular" && check != "tangled"; }

json verdict_json(const Verdict& v, const Poset* p, bool nodes)
{
    json j;
    j["outcome"] = std::string(to_string(v.outcome));
    auto name = [&](Node x) -> json {
        if (p && x < p->size()) return p->name(x);
        return x;
    };
    j["witness"] = json::array();
    for (Node x : v.witness) j["witness"].push_back(name(x));
    j["pairs"] = json::array();
    for (auto [a, b] : v.pairs) {
        if (nodes) j["pairs"].push_back({name(a), name(b)});
        else j["pairs"].push_back({a, b});
    }
    if (v.exhausted_depth >= 0) j["exhausted_depth"] = v.exhausted_depth;
    if (v.certificate_level >= 0) j["certificate_level"] = v.certificate_level;
    j["assumptions"] = v.assumptions;
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

json Report::to_json() const
{
    json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    j["inputs"] = json::array();
    for (const auto& [path, hash] : inputs) j["inputs"].push_back({{"path", path}, {"fnv1a64", hash}});
    j["params"] = params;
    j["verdicts"] = verdicts;
    j["wall_ms"] = wall_ms;
    return j;
}

namespace {

Verdict confirmed(std::string why)
{
    Verdict v = Verdict::make_holds();
    v.note = std::move(why);
    return v;
}

Verdict contradicted(std::string why)
{
    Verdict v = Verdict::make_fails();
    v.note = std::move(why);
    return v;
}

NodeSet named(const Poset& p, const json& arr)
{
    NodeSet out;
    for (const auto& x : arr) out.push_back(p.at(x.get<std::string>()));
    return out;
}

// Witness checks that do not rerun the producing procedure.
std::optional<Verdict> direct_check(const Poset& p, const std::string& check, Outcome o, const NodeSet& wit,
                                    const CheckArgs& a)
{
    if (check == "graded" && o == Outcome::Fails) {
        if (wit.size() != 2) return contradicted("graded counterexample must be a pair");
        auto covers = p.upper_covers(wit[0]);
        if (!contains(covers, wit[1])) return contradicted("witness pair is not a cover");
        if (p.rank(wit[0]) - p.rank(wit[1]) < 2) return contradicted("witness cover does not skip a rank");
        return confirmed("cover skips a rank");
    }
    if (check == "band" && o == Outcome::Fails && !wit.empty()) {
        NodeSet b = a.level >= 0 ? p.level_sorted(a.level) : normalized(p.nodes_of(a.set));
        for (Node x : b)
            if (p.comparable(wit[0], x)) return contradicted("witness is comparable to a member");
        return confirmed("witness is comparable to no member");
    }
    if (check == "wedge" && o == Outcome::Holds && wit.size() == 1) {
        Node x = p.at(a.element), y = p.at(a.other);
        if (p.leq(wit[0], x) && p.leq(wit[0], y)) return confirmed("witness is a common lower bound");
        return contradicted("witness is not a common lower bound");
    }
    if (check == "snake" && o == Outcome::Holds) {
        int d = a.depth < 0 ? p.depth() : a.depth;
        NodeSet s = a.level >= 0 ? p.level_sorted(a.level) : normalized(p.nodes_of(a.set));
        if (normalized(wit) != s || wit.size() != s.size()) return contradicted("enumeration does not list the set");
        Wedges w(p, d);
        for (std::size_t i = 0; i < wit.size(); ++i)
            for (std::size_t j = i + 1; j < wit.size(); ++j) {
                Tri t = w(wit[i], wit[j]);
                if (j == i + 1 && t != Tri::Yes) return contradicted("consecutive links do not wedge");
                if (j > i + 1 && t != Tri::No) return contradicted("distant links are not separated");
            }
        return confirmed("enumeration is a path of wedges");
    }
    return std::nullopt;
}

}  // namespace

Verdict verify_entry(const Poset& p, const json& entry)
{
    const std::string check = entry.at("check").get<std::string>();
    CheckArgs a = args_from_json(entry.value("args", json::object()));
    const json& rec = entry.at("verdict");
    const std::string outcome = rec.at("outcome").get<std::string>();
    NodeSet wit = named(p, rec.value("witness", json::array()));
    Outcome o = outcome == "Holds" ? Outcome::Holds : outcome == "Fails" ? Outcome::Fails : Outcome::Unknown;
    if (auto v = direct_check(p, check, o, wit, a)) return *v;
    Verdict again = run_check(p, check, a);
    if (again.outcome != o)
        return contradicted("rerun gives " + std::string(to_string(again.outcome)) + ", report says " + outcome);
    if (again.witness != wit) return contradicted("rerun gives a different witness");
    return confirmed("rerun reproduces outcome and witness");
}

}  // namespace opct
