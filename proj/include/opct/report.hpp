#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "opct/poset.hpp"

namespace opct {

inline constexpr const char* kReportSchema = "opct-report-v1";

class UnknownCheck : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Parameters of a named check. Unused fields stay empty.
struct CheckArgs {
    int depth = -1;  // -1: whole truncation
    std::vector<std::string> set, coarse;
    std::string element, other;
    int m = -1, n = -1;
    int skip = 3;
    int gap = 3;
    int level = -1;  // stands in for `set` when >= 0
};

nlohmann::json args_json(const CheckArgs& a);
CheckArgs args_from_json(const nlohmann::json& j);

std::vector<std::string> check_names();
// Runs a named single-poset check.
Verdict run_check(const Poset& p, const std::string& name, const CheckArgs& a);

std::string fnv1a_hex(const std::string& text);

// Witness nodes and node pairs are named with `p`; pass pairs_are_nodes=false
// for checks whose pairs are level numbers.
nlohmann::json verdict_json(const Verdict& v, const Poset* p, bool pairs_are_nodes = true);

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, hash of contents
    std::vector<nlohmann::json> verdicts;
    nlohmann::json params = nlohmann::json::object();
    double wall_ms = 0;

    void add_input(const std::string& path, const std::string& text) { inputs.emplace_back(path, fnv1a_hex(text)); }
    nlohmann::json to_json() const;
};

bool pairs_are_nodes(const std::string& check);

// Re-validates one recorded verdict against `p`: Holds when the recorded
// outcome and witness are confirmed, Fails when contradicted.
Verdict verify_entry(const Poset& p, const nlohmann::json& entry);

}  // namespace opct
