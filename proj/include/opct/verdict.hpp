#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace opct {

using Node = std::uint32_t;
using NodeSet = std::vector<Node>;  // kept sorted and unique

enum class Outcome { Holds, Fails, Unknown };

std::string_view to_string(Outcome o);

// Three-valued answer. Holds and Fails carry whatever evidence the
// producing check documents; Unknown records how deep the search went.
struct Verdict {
    Outcome outcome = Outcome::Unknown;
    std::vector<Node> witness;  // order matters for path enumerations
    std::vector<std::pair<Node, Node>> pairs;
    int exhausted_depth = -1;
    int certificate_level = -1;
    std::vector<std::string> assumptions;
    std::string note;

    bool holds() const { return outcome == Outcome::Holds; }
    bool fails() const { return outcome == Outcome::Fails; }
    bool unknown() const { return outcome == Outcome::Unknown; }

    static Verdict make_holds(std::vector<Node> w = {})
    {
        Verdict v;
        v.outcome = Outcome::Holds;
        v.witness = std::move(w);
        return v;
    }
    static Verdict make_fails(std::vector<Node> w = {})
    {
        Verdict v;
        v.outcome = Outcome::Fails;
        v.witness = std::move(w);
        return v;
    }
    static Verdict make_unknown(int depth, std::string why = {})
    {
        Verdict v;
        v.exhausted_depth = depth;
        v.note = std::move(why);
        return v;
    }

    void assume(const std::string& a);
};

// Kleene conjunction / disjunction on outcomes.
Outcome both(Outcome a, Outcome b);
Outcome either(Outcome a, Outcome b);
Outcome negate(Outcome a);

}  // namespace opct
