#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opct/poset.hpp"
#include "opct/refiners.hpp"

namespace opct {

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

class SemanticError : public BuildError {
public:
    explicit SemanticError(const BuildError& e) : BuildError(e) {}
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// "-" reads standard input.
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

PosetSpec parse_poset_spec(std::string_view text);
Poset parse_poset(std::string_view text);
std::string serialize_poset(const Poset& p);
Poset load_poset(const std::string& path);

struct RefinerText {
    struct Stage {
        int index = 0;
        int c_level = -1, d_level = -1;
        std::vector<std::pair<std::string, std::string>> forward;  // c < d
        std::vector<std::pair<std::string, std::string>> back;     // d < c
    };
    std::vector<std::pair<std::string, std::string>> pairs;  // (q, p): q > p
    std::vector<Stage> stages;
};

RefinerText parse_refiner(std::string_view text);
std::string serialize_refiner(const Refiner& r);
std::string serialize_stages(const StagedFamily& f);
// Names resolve with p in `source` and q in `target`.
Refiner to_refiner(const RefinerText& t, const Poset& source, const Poset& target);
// Forward names: c in p, d in q.
StagedFamily to_stages(const RefinerText& t, const Poset& p, const Poset& q);

struct DotOptions {
    std::string graph_name = "P";
    std::vector<std::string> attributes;  // extra graph-level "key=value"
};
std::string export_dot(const Poset& p, const DotOptions& options = {});

}  // namespace opct
