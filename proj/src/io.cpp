#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "opct/io.hpp"

namespace opct {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> words(std::string_view s)
{
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

struct Line {
    int number;
    std::string key;    // text before ':'
    std::string value;  // text after ':'
};

// Splits into "key: value" lines, skipping blanks and comments; the first
// significant line must equal `header`.
std::vector<Line> lines_of(std::string_view text, std::string_view header)
{
    std::vector<Line> out;
    bool seen_header = false;
    int no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++no;
        if (raw.empty() || raw.front() == '#') continue;
        if (!seen_header) {
            if (raw != header) throw SyntaxError(no, "expected header '" + std::string(header) + "'");
            seen_header = true;
            continue;
        }
        auto colon = raw.find(':');
        if (colon == std::string_view::npos) throw SyntaxError(no, "expected 'key: value'");
        out.push_back({no, std::string(trim(raw.substr(0, colon))), std::string(trim(raw.substr(colon + 1)))});
    }
    if (!seen_header) throw SyntaxError(no, "missing header '" + std::string(header) + "'");
    return out;
}

// "a < b" or "a > b"
std::pair<std::string, std::string> relation_pair(const Line& l, char op)
{
    auto w = words(l.value);
    if (w.size() != 3 || w[1] != std::string(1, op))
        throw SyntaxError(l.number, "expected '<name> " + std::string(1, op) + " <name>'");
    return {w[0], w[2]};
}

int parse_index(const Line& l, const std::string& s)
{
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size() || v < 0) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw SyntaxError(l.number, "expected a level number, got '" + s + "'");
    }
}

}  // namespace

std::string read_text(const std::string& path)
{
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text)
{
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
}

PosetSpec parse_poset_spec(std::string_view text)
{
    PosetSpec spec;
    std::set<std::string> names;
    std::vector<std::pair<int, std::pair<std::string, std::string>>> edges;
    std::vector<std::pair<int, std::string>> atoms;
    bool flags_seen = false;
    for (const Line& l : lines_of(text, "poset v1")) {
        auto head = words(l.key);
        if (l.key == "flags") {
            if (flags_seen) throw SyntaxError(l.number, "flags given twice");
            flags_seen = true;
            for (const auto& w : words(l.value)) {
                auto f = flag_from_name(w);
                if (!f) throw SyntaxError(l.number, "unknown flag '" + w + "'");
                spec.flags |= *f;
            }
        } else if (head.size() == 2 && head[0] == "level") {
            int n = parse_index(l, head[1]);
            if (n != static_cast<int>(spec.levels.size()))
                throw SyntaxError(l.number, "level " + std::to_string(n) + " out of order");
            auto lv = words(l.value);
            if (lv.empty()) throw SyntaxError(l.number, "level " + std::to_string(n) + " is empty");
            for (const auto& nm : lv) names.insert(nm);
            spec.levels.push_back(std::move(lv));
        } else if (l.key == "atom") {
            for (const auto& w : words(l.value)) atoms.emplace_back(l.number, w);
        } else if (l.key == "edge") {
            edges.emplace_back(l.number, relation_pair(l, '<'));
        } else {
            throw SyntaxError(l.number, "unknown directive '" + l.key + "'");
        }
    }
    if (spec.levels.empty()) throw SyntaxError(1, "no levels");
    for (const auto& [no, e] : edges) {
        for (const auto& nm : {e.first, e.second})
            if (!names.count(nm)) throw SyntaxError(no, "edge names unknown element '" + nm + "'");
        spec.edges.push_back(e);
    }
    for (const auto& [no, a] : atoms) {
        if (!names.count(a)) throw SyntaxError(no, "atom names unknown element '" + a + "'");
        spec.atoms.push_back(a);
    }
    return spec;
}

Poset parse_poset(std::string_view text)
{
    PosetSpec spec = parse_poset_spec(text);
    try {
        return Poset::build(spec);
    } catch (const BuildError& e) {
        throw SemanticError(e);
    }
}

std::string serialize_poset(const Poset& p)
{
    std::ostringstream out;
    out << "poset v1\n";
    auto fl = flag_names(p.flags());
    if (!fl.empty()) {
        out << "flags:";
        for (const auto& f : fl) out << ' ' << f;
        out << '\n';
    }
    for (int n = 0; n <= p.depth(); ++n) {
        out << "level " << n << ":";
        for (Node v : p.level(n)) out << ' ' << p.name(v);
        out << '\n';
    }
    std::vector<Node> atoms;
    for (const auto& a : p.spec().atoms) atoms.push_back(p.at(a));
    for (Node a : p.sorted_by_id(normalized(atoms))) out << "atom: " << p.name(a) << '\n';
    std::vector<std::pair<Node, Node>> edges;
    for (Node v = 0; v < p.size(); ++v)
        for (Node w : p.parents(v)) edges.emplace_back(v, w);
    std::sort(edges.begin(), edges.end(), [&](auto x, auto y) {
        return std::pair(p.id(x.first), p.id(x.second)) < std::pair(p.id(y.first), p.id(y.second));
    });
    for (auto [a, b] : edges) out << "edge: " << p.name(a) << " < " << p.name(b) << '\n';
    return out.str();
}

Poset load_poset(const std::string& path) { return parse_poset(read_text(path)); }

RefinerText parse_refiner(std::string_view text)
{
    RefinerText t;
    RefinerText::Stage* cur = nullptr;
    for (const Line& l : lines_of(text, "refiner v1")) {
        auto head = words(l.key);
        if (l.key == "pair") {
            if (cur) throw SyntaxError(l.number, "pair lines must precede stage sections");
            t.pairs.push_back(relation_pair(l, '>'));
        } else if (head.size() == 2 && head[0] == "stage") {
            if (!trim(l.value).empty()) throw SyntaxError(l.number, "stage header takes no value");
            int n = parse_index(l, head[1]);
            if (n != static_cast<int>(t.stages.size())) throw SyntaxError(l.number, "stage out of order");
            t.stages.push_back({});
            cur = &t.stages.back();
            cur->index = n;
        } else if (l.key == "levels" || l.key == "forward" || l.key == "back") {
            if (!cur) throw SyntaxError(l.number, "'" + l.key + "' outside a stage section");
            if (l.key == "levels") {
                auto w = words(l.value);
                if (w.size() != 2) throw SyntaxError(l.number, "expected 'levels: <c> <d>'");
                cur->c_level = parse_index(l, w[0]);
                cur->d_level = parse_index(l, w[1]);
            } else if (l.key == "forward") {
                cur->forward.push_back(relation_pair(l, '<'));
            } else {
                cur->back.push_back(relation_pair(l, '<'));
            }
        } else {
            throw SyntaxError(l.number, "unknown directive '" + l.key + "'");
        }
    }
    for (const auto& s : t.stages)
        if (s.c_level < 0) throw SyntaxError(0, "stage " + std::to_string(s.index) + " has no levels line");
    return t;
}

std::string serialize_refiner(const Refiner& r)
{
    std::ostringstream out;
    out << "refiner v1\n";
    for (auto [a, b] : r.rel.pairs()) out << "pair: " << r.target->name(b) << " > " << r.source->name(a) << '\n';
    return out.str();
}

std::string serialize_stages(const StagedFamily& f)
{
    std::ostringstream out;
    out << "refiner v1\n";
    for (std::size_t n = 0; n < f.forward.size(); ++n) {
        out << "stage " << n << ":\n";
        out << "levels: " << f.c_levels.at(n) << ' ' << f.d_levels.at(n) << '\n';
        for (auto [a, b] : f.forward[n].pairs()) out << "forward: " << f.p->name(a) << " < " << f.q->name(b) << '\n';
        if (n < f.back.size())
            for (auto [a, b] : f.back[n].pairs()) out << "back: " << f.q->name(a) << " < " << f.p->name(b) << '\n';
    }
    return out.str();
}

namespace {

Node resolve(const Poset& p, const std::string& name, const char* side)
{
    auto v = p.find(name);
    if (!v) throw std::invalid_argument(std::string(side) + " poset has no element '" + name + "'");
    return *v;
}

}  // namespace

Refiner to_refiner(const RefinerText& t, const Poset& source, const Poset& target)
{
    std::vector<std::pair<Node, Node>> pairs;
    for (const auto& [q, p] : t.pairs) pairs.emplace_back(resolve(source, p, "source"), resolve(target, q, "target"));
    return Refiner{&source, &target, Relation(source.size(), target.size(), std::move(pairs))};
}

StagedFamily to_stages(const RefinerText& t, const Poset& p, const Poset& q)
{
    StagedFamily f;
    f.p = &p;
    f.q = &q;
    for (const auto& s : t.stages) {
        f.c_levels.push_back(s.c_level);
        f.d_levels.push_back(s.d_level);
        std::vector<std::pair<Node, Node>> fw, bk;
        for (const auto& [c, d] : s.forward) fw.emplace_back(resolve(p, c, "first"), resolve(q, d, "second"));
        for (const auto& [d, c] : s.back) bk.emplace_back(resolve(q, d, "second"), resolve(p, c, "first"));
        f.forward.emplace_back(p.size(), q.size(), std::move(fw));
        f.back.emplace_back(q.size(), p.size(), std::move(bk));
    }
    if (!f.back.empty() && f.back.back().pairs().empty()) f.back.pop_back();  // nothing below the last stage
    return f;
}

std::string export_dot(const Poset& p, const DotOptions& options)
{
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    };
    std::ostringstream out;
    out << "digraph " << quote(options.graph_name) << " {\n";
    out << "  rankdir=TB;\n  node [shape=box];\n";
    for (const auto& a : options.attributes) out << "  " << a << ";\n";
    for (int n = 0; n <= p.depth(); ++n) {
        out << "  { rank=same;";
        for (Node v : p.sorted_by_id(p.level_sorted(n)))
            if (p.first_level(v) == n) out << ' ' << quote(p.name(v)) << ';';
        out << " }\n";
    }
    std::vector<Node> all(p.size());
    for (Node v = 0; v < p.size(); ++v) all[v] = v;
    all = p.sorted_by_id(all);
    for (Node v : all)
        for (Node w : p.sorted_by_id(p.lower_covers(v))) out << "  " << quote(p.name(v)) << " -> " << quote(p.name(w)) << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace opct
