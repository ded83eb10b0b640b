#include <chrono>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "opct/combinatorics.hpp"
#include "opct/generators.hpp"
#include "opct/io.hpp"
#include "opct/predicates.hpp"
#include "opct/refiners.hpp"
#include "opct/report.hpp"
#include "opct/spectrum.hpp"
#include "opct/stars.hpp"
#include "opct/tangled.hpp"

using namespace opct;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 3;

int exit_code(Outcome o)
{
    switch (o) {
    case Outcome::Holds: return 0;
    case Outcome::Fails: return 1;
    case Outcome::Unknown: return 2;
    }
    return kExitUsage;
}

// Commas inside brackets belong to the name, as in "[0,1/2)".
std::vector<std::string> split_names(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    int open = 0;
    for (char c : s) {
        if (c == '(' || c == '[') ++open;
        if ((c == ')' || c == ']') && open > 0) --open;
        if (c == ',' && open == 0) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

struct Loaded {
    std::string path, text;
    Poset poset;
};

Loaded load(const std::string& path, const std::string& assume = {})
{
    std::string text = read_text(path);
    Poset p = parse_poset(text);
    if (!assume.empty()) {
        unsigned extra = 0;
        for (const auto& f : split_names(assume)) {
            auto fl = flag_from_name(f);
            if (!fl) throw std::invalid_argument("--assume: unknown flag '" + f + "'");
            extra |= *fl;
        }
        p = p.with_flags(extra);
    }
    return {path, text, std::move(p)};
}

std::string names(const Poset& p, const std::vector<Node>& v)
{
    std::string s;
    for (Node x : v) s += (s.empty() ? "" : " ") + p.name(x);
    return s;
}

void print_verdict(const std::string& label, const Verdict& v, const Poset* p, bool node_pairs)
{
    std::cout << label << ": " << to_string(v.outcome);
    if (!v.witness.empty()) std::cout << "  witness: " << (p ? names(*p, v.witness) : std::string("?"));
    if (v.exhausted_depth >= 0 && v.unknown()) std::cout << "  depth: " << v.exhausted_depth;
    std::cout << '\n';
    if (!v.pairs.empty() && node_pairs && p) {
        std::cout << "  pairs:";
        for (auto [a, b] : v.pairs) std::cout << " (" << p->name(a) << ", " << p->name(b) << ")";
        std::cout << '\n';
    }
    if (!v.note.empty()) std::cout << "  " << v.note << '\n';
    for (const auto& a : v.assumptions) std::cout << "  assumes " << a << '\n';
}

class Timer {
public:
    double ms() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"opct: finite truncations of omega-posets"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "emit a JSON report on standard output");

    // check
    auto* check = app.add_subcommand("check", "run one predicate on a poset file");
    std::string predicate, file, assume, set_s, coarse_s, levels_s;
    CheckArgs args;
    check->add_option("--predicate", predicate, "predicate name")->required();
    check->add_option("--depth", args.depth, "evidence depth (default: whole truncation)");
    check->add_option("--assume", assume, "extra flags, comma separated");
    check->add_option("--set", set_s, "element names, comma separated");
    check->add_option("--coarse", coarse_s, "coarse set for refinement checks");
    check->add_option("--level", args.level, "use a level as the set");
    check->add_option("--levels", levels_s, "level pair m,n");
    check->add_option("--element", args.element);
    check->add_option("--other", args.other);
    check->add_option("--skip", args.skip, "skip bound for regular");
    check->add_option("--gap", args.gap, "gap bound for tangled");
    check->add_option("file", file, "poset file or -")->required();

    // oracle
    auto* orc = app.add_subcommand("oracle", "exhaustive classification of a small finite poset");
    std::string oracle_file;
    orc->add_option("file", oracle_file)->required();

    // generate
    auto* gen = app.add_subcommand("generate", "write a generated poset");
    std::string family, of_file, out_file = "-", stages_file;
    int gen_depth = 3, arity = 2, step = 2;
    gen->add_option("family", family, "arc|circle|tree|cofinite|crooked|gradify|subsequence")->required();
    gen->add_option("--depth", gen_depth);
    gen->add_option("--k", arity, "tree arity");
    gen->add_option("--step", step, "level step for subsequence");
    gen->add_option("--of", of_file, "input poset for gradify and subsequence");
    gen->add_option("-o,--output", out_file);
    gen->add_option("--stages", stages_file, "gradify: also write the staged refiner");

    // stars
    auto* st = app.add_subcommand("stars", "star of an element in a level");
    std::string star_element, star_file;
    int cap_level = 0, star_depth = -1;
    st->add_option("--element", star_element)->required();
    st->add_option("--cap-level", cap_level)->required();
    st->add_option("--depth", star_depth);
    st->add_option("file", star_file)->required();

    // spectrum
    auto* sp = app.add_subcommand("spectrum", "spectrum tools");
    sp->require_subcommand(1);
    std::string sp_file, thread_a, thread_b;
    int sp_depth = -1, sp_gap = 3;
    auto* sp_enum = sp->add_subcommand("enumerate", "minimal selectors of a finite poset");
    auto* sp_eq = sp->add_subcommand("equal", "compare two threads");
    auto* sp_conn = sp->add_subcommand("connectivity", "level clusters");
    auto* sp_tang = sp->add_subcommand("tangled", "tangled refinements between levels");
    auto* sp_thread = sp->add_subcommand("thread", "star closure of a thread prefix");
    for (auto* s : {sp_enum, sp_eq, sp_conn, sp_tang, sp_thread}) {
        s->add_option("file", sp_file)->required();
        s->add_option("--depth", sp_depth);
    }
    sp_eq->add_option("--thread", thread_a)->required();
    sp_eq->add_option("--other", thread_b)->required();
    sp_thread->add_option("--thread", thread_a)->required();
    sp_tang->add_option("--gap", sp_gap);

    // refiner
    auto* rf = app.add_subcommand("refiner", "refiner tools");
    std::string mode, p_file, q_file, r_file, then_poset, then_refiner, rf_thread;
    int rf_depth = -1;
    rf->add_option("mode", mode, "check|apply|star|compose|strong|back-and-forth")->required();
    rf->add_option("source", p_file)->required();
    rf->add_option("target", q_file)->required();
    rf->add_option("refiner", r_file)->required();
    rf->add_option("--depth", rf_depth);
    rf->add_option("--thread", rf_thread, "apply: thread in the source");
    rf->add_option("--then-poset", then_poset, "compose: third poset");
    rf->add_option("--then", then_refiner, "compose: refiner from target to the third poset");

    // dot
    auto* dot = app.add_subcommand("dot", "Hasse diagram in DOT");
    std::string dot_file, dot_out = "-";
    dot->add_option("file", dot_file)->required();
    dot->add_option("-o,--output", dot_out);

    // verify-witness
    auto* vw = app.add_subcommand("verify-witness", "re-validate a JSON report against a poset");
    std::string vw_file, vw_report;
    vw->add_option("file", vw_file)->required();
    vw->add_option("report", vw_report)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    Timer timer;
    Report report;
    report.command = app.get_subcommands().front()->get_name();
    auto emit = [&](int code) {
        report.wall_ms = timer.ms();
        if (as_json) std::cout << report.to_json().dump(2) << '\n';
        return code;
    };

    try {
        if (*check) {
            Loaded in = load(file, assume);
            report.add_input(in.path, in.text);
            args.set = split_names(set_s);
            args.coarse = split_names(coarse_s);
            if (!levels_s.empty()) {
                auto l = split_names(levels_s);
                if (l.size() != 2) throw CLI::ValidationError("--levels", "expected m,n");
                args.m = std::stoi(l[0]);
                args.n = std::stoi(l[1]);
            }
            Verdict v = run_check(in.poset, predicate, args);
            if (!assume.empty())
                for (const auto& a : split_names(assume)) v.assume(a);
            report.params = {{"predicate", predicate}};
            report.verdicts.push_back(
                {{"check", predicate}, {"args", args_json(args)}, {"verdict", verdict_json(v, &in.poset, pairs_are_nodes(predicate))}});
            if (!as_json) print_verdict(predicate, v, &in.poset, pairs_are_nodes(predicate));
            return emit(exit_code(v.outcome));
        }

        if (*orc) {
            Loaded in = load(oracle_file);
            report.add_input(in.path, in.text);
            if (!in.poset.has(kFiniteComplete)) throw std::invalid_argument("oracle needs a finite_complete poset");
            OracleResult o = oracle(in.poset);
            auto lists = [&](const std::vector<std::uint32_t>& masks) {
                json a = json::array();
                for (auto m : masks) a.push_back(in.poset.names_of(in.poset.sorted_by_id(o.set_of(m))));
                return a;
            };
            json cls = {{"bands", lists(o.bands)},
                        {"caps", lists(o.caps)},
                        {"minimal_caps", lists(o.minimal_caps)},
                        {"selectors", lists(o.selectors)},
                        {"minimal_selectors", lists(o.minimal_selectors)}};
            report.params = cls;
            if (!as_json) {
                for (const char* k : {"bands", "caps", "minimal_caps", "selectors", "minimal_selectors"}) {
                    std::cout << k << " (" << cls[k].size() << "):";
                    for (const auto& s : cls[k]) {
                        std::cout << " {";
                        bool first = true;
                        for (const auto& x : s) {
                            std::cout << (first ? "" : ",") << x.get<std::string>();
                            first = false;
                        }
                        std::cout << "}";
                    }
                    std::cout << '\n';
                }
            }
            return emit(0);
        }

        if (*gen) {
            Poset out = [&] {
                if (family == "arc") return gen_arc(gen_depth);
                if (family == "circle") return gen_circle(gen_depth);
                if (family == "tree") return gen_tree(arity, gen_depth);
                if (family == "cofinite") return gen_cofinite(gen_depth);
                if (family == "crooked") return gen_crooked(gen_depth);
                if (family == "gradify" || family == "subsequence") {
                    if (of_file.empty()) throw CLI::RequiredError("--of");
                    Poset in = load(of_file).poset;
                    return family == "gradify" ? gradify(in) : level_subsequence(in, step);
                }
                throw CLI::ValidationError("family", "unknown family '" + family + "'");
            }();
            if (family == "gradify" && !stages_file.empty()) {
                Poset in = load(of_file).poset;
                write_text(stages_file, serialize_stages(gradification_stages(in, out)));
            }
            if (as_json && out_file == "-") throw CLI::ValidationError("--json", "generate needs -o when reporting");
            write_text(out_file, serialize_poset(out));
            report.params = {{"family", family}, {"depth", out.depth()}, {"elements", out.size()}};
            return as_json ? emit(0) : 0;
        }

        if (*st) {
            Loaded in = load(star_file);
            report.add_input(in.path, in.text);
            int d = star_depth < 0 ? in.poset.depth() : star_depth;
            Wedges w(in.poset, d);
            Node e = in.poset.at(star_element);
            if (cap_level > in.poset.depth()) throw DepthExceeded("cap level beyond the truncation");
            Star s = star(w, e, in.poset.level_sorted(cap_level));
            report.params = {{"element", star_element},
                             {"cap_level", cap_level},
                             {"sure", in.poset.names_of(in.poset.sorted_by_id(s.sure))},
                             {"undecided", in.poset.names_of(in.poset.sorted_by_id(s.maybe))}};
            if (!as_json) {
                std::cout << "star: " << names(in.poset, in.poset.sorted_by_id(s.sure)) << '\n';
                if (!s.maybe.empty()) std::cout << "undecided: " << names(in.poset, in.poset.sorted_by_id(s.maybe)) << '\n';
            }
            return emit(s.decided() ? 0 : 2);
        }

        if (*sp) {
            Loaded in = load(sp_file);
            report.add_input(in.path, in.text);
            const Poset& p = in.poset;
            int d = sp_depth < 0 ? p.depth() : sp_depth;
            auto verdict_out = [&](const std::string& label, const Verdict& v, bool nodes) {
                report.verdicts.push_back({{"check", label}, {"verdict", verdict_json(v, &p, nodes)}});
                if (!as_json) print_verdict(label, v, &p, nodes);
                return emit(exit_code(v.outcome));
            };
            if (*sp_enum) {
                SpectrumEnumeration e = enumerate_minimal_selectors(p);
                json pts = json::array();
                for (const auto& s : e.points) pts.push_back(p.names_of(p.sorted_by_id(s)));
                report.params = {{"points", pts}, {"t1_separated", e.t1_separated}};
                if (!as_json) {
                    for (const auto& s : e.points) std::cout << "point: " << names(p, p.sorted_by_id(s)) << '\n';
                    std::cout << "t1 separated: " << (e.t1_separated ? "yes" : "no") << '\n';
                }
                return emit(0);
            }
            if (*sp_eq) {
                Thread t = thread_from_names(p, split_names(thread_a));
                Thread u = thread_from_names(p, split_names(thread_b));
                return verdict_out("points-equal", points_equal(p, t, u, d), true);
            }
            if (*sp_conn) return verdict_out("connectivity", connectivity_report(p, d), true);
            if (*sp_tang) return verdict_out("tangled", check_tangled_poset(p, d, kTangledBound, sp_gap), false);
            if (*sp_thread) {
                Thread t = thread_from_names(p, split_names(thread_a));
                SelectorPrefix s = star_closure_prefix(p, thread_prefix(p, t, true), d);
                report.params = {{"elements", p.names_of(p.sorted_by_id(s.elements))},
                                 {"certified", s.certified},
                                 {"complete", s.complete}};
                if (!as_json) std::cout << "prefix: " << names(p, p.sorted_by_id(s.elements)) << '\n';
                return emit(s.complete ? 0 : 2);
            }
        }

        if (*rf) {
            Loaded ps = load(p_file), qs = load(q_file);
            std::string rtext = read_text(r_file);
            report.add_input(ps.path, ps.text);
            report.add_input(qs.path, qs.text);
            report.add_input(r_file, rtext);
            RefinerText rt = parse_refiner(rtext);
            int d = rf_depth < 0 ? std::min(ps.poset.depth(), qs.poset.depth()) : rf_depth;
            auto verdict_out = [&](const Verdict& v) {
                report.verdicts.push_back({{"check", "refiner " + mode}, {"verdict", verdict_json(v, nullptr, false)}});
                if (!as_json) print_verdict("refiner " + mode, v, nullptr, false);
                return emit(exit_code(v.outcome));
            };
            if (mode == "back-and-forth") return verdict_out(verify_back_and_forth(to_stages(rt, ps.poset, qs.poset), d));
            Refiner r = to_refiner(rt, ps.poset, qs.poset);
            if (mode == "check") {
                Verdict v = check_refiner(r, d);
                if (!v.fails()) {
                    Verdict w = check_wedge_preserving(r, d);
                    if (!w.holds()) v = w;
                }
                return verdict_out(v);
            }
            if (mode == "strong") return verdict_out(check_strong(r, d));
            if (mode == "apply") {
                if (rf_thread.empty()) throw CLI::RequiredError("--thread");
                SelectorPrefix s = apply_refiner(r, thread_from_names(ps.poset, split_names(rf_thread)), d);
                report.params = {{"elements", qs.poset.names_of(qs.poset.sorted_by_id(s.elements))}, {"complete", s.complete}};
                if (!as_json) std::cout << "image: " << names(qs.poset, qs.poset.sorted_by_id(s.elements)) << '\n';
                return emit(s.complete ? 0 : 2);
            }
            if (mode == "star" || mode == "compose") {
                std::optional<Poset> third;
                StarResult s = [&] {
                    if (mode == "star") return star_of_refiner(r, d);
                    if (then_poset.empty() || then_refiner.empty()) throw CLI::RequiredError("--then-poset and --then");
                    third = load(then_poset).poset;
                    Refiner second = to_refiner(parse_refiner(read_text(then_refiner)), qs.poset, *third);
                    return star_compose(second, r, d);
                }();
                std::string text = serialize_refiner(s.refiner);
                report.params = {{"refiner", text}, {"complete", s.complete}};
                if (!as_json) std::cout << text;
                return emit(s.complete ? 0 : 2);
            }
            throw CLI::ValidationError("mode", "unknown refiner mode '" + mode + "'");
        }

        if (*dot) {
            Poset p = load(dot_file).poset;
            write_text(dot_out, export_dot(p));
            return 0;
        }

        if (*vw) {
            Loaded in = load(vw_file);
            json rep = json::parse(read_text(vw_report));
            if (rep.value("schema", std::string{}) != kReportSchema) throw std::invalid_argument("not an " + std::string(kReportSchema) + " report");
            Outcome all = Outcome::Holds;
            for (const auto& entry : rep.at("verdicts")) {
                if (!entry.contains("args") || entry.at("verdict").at("outcome") == "Unknown") continue;
                Verdict v = verify_entry(in.poset, entry);
                all = both(all, v.outcome);
                report.verdicts.push_back({{"check", entry.at("check")}, {"verdict", verdict_json(v, &in.poset)}});
                if (!as_json) print_verdict(entry.at("check").get<std::string>(), v, &in.poset, true);
            }
            return emit(exit_code(all));
        }
    } catch (const CLI::Error& e) {
        std::cerr << "opct: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SyntaxError& e) {
        std::cerr << "opct: syntax error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SemanticError& e) {
        std::cerr << "opct: invalid poset (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "opct: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
