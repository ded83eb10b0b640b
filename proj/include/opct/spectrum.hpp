#pragma once

#include <stdexcept>
#include <vector>

#include "opct/poset.hpp"
#include "opct/stars.hpp"

namespace opct {

class NotLinked : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotUpClosed : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// t[n] lies in level n and t[n+1] <= t[n].
using Thread = std::vector<Node>;

struct SelectorPrefix {
    int depth = 0;
    NodeSet elements;
    bool certified = false;  // known to approximate a point (regularity checked)
    bool complete = true;    // false when undecided star_below queries were dropped
};

bool is_thread(const Poset& p, const Thread& t);
Thread thread_from_names(const Poset& p, const std::vector<std::string>& names);

SelectorPrefix thread_prefix(const Poset& p, const Thread& t, bool check_regularity = false);
SelectorPrefix star_closure_prefix(const Poset& p, const SelectorPrefix& s, int depth);
Verdict points_equal(const Poset& p, const Thread& t, const Thread& u, int depth);

struct SpectrumEnumeration {
    std::vector<NodeSet> points;  // minimal selectors
    bool t1_separated = true;
};
SpectrumEnumeration enumerate_minimal_selectors(const Poset& p);

// `whole` stands for Q = the entire poset.
Verdict is_prime_subset(const Poset& p, const NodeSet& q, int depth, bool whole = false);

Verdict is_cluster(const Wedges& w, const NodeSet& c);
Verdict is_cluster(const Poset& p, const NodeSet& c, int depth);
Verdict connectivity_report(const Poset& p, int depth);

}  // namespace opct
