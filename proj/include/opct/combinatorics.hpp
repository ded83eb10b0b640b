#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "opct/poset.hpp"

namespace opct {

class EndpointMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A relation between a left set A = {0..left-1} and a right set
// B = {0..right-1}. A pair (a, b) reads a ⊏ b.
class Relation {
public:
    Relation() = default;
    Relation(std::size_t left, std::size_t right, std::vector<std::pair<Node, Node>> pairs);

    static Relation identity(std::size_t n);
    static Relation order(const Poset& p);  // a ⊏ b iff a <= b

    std::size_t left_size() const { return left_; }
    std::size_t right_size() const { return right_; }
    const std::vector<std::pair<Node, Node>>& pairs() const { return pairs_; }
    bool related(Node a, Node b) const;
    const NodeSet& above(Node a) const { return fwd_[a]; }   // {b : a ⊏ b}
    const NodeSet& below(Node b) const { return back_[b]; }  // {a : a ⊏ b}

    NodeSet preimage(const NodeSet& s) const;  // S^⊏ = {b : some s ⊏ b}
    NodeSet image(const NodeSet& t) const;     // T^⊐ = {a : a ⊏ some t}
    Relation compose(const Relation& next) const;  // a (this∘next) c iff a ⊏ b ⊏' c
    Relation converse() const;
    Relation restricted(const NodeSet& left_part, const NodeSet& right_part) const;

    bool is_surjective() const;  // every a is related to something
    bool is_injective() const;   // every b has an a related only to b
    bool subset_of(const Relation& other) const;
    bool operator==(const Relation& o) const { return left_ == o.left_ && right_ == o.right_ && pairs_ == o.pairs_; }

private:
    std::size_t left_ = 0;
    std::size_t right_ = 0;
    std::vector<std::pair<Node, Node>> pairs_;
    std::vector<NodeSet> fwd_;
    std::vector<NodeSet> back_;
};

// S refines T: every s lies below (is related to) some t.
bool refines(const Poset& p, const NodeSet& s, const NodeSet& t);
bool refines(const Relation& r, const NodeSet& s, const NodeSet& t);

bool is_antichain(const Poset& p, const NodeSet& s);

Verdict is_band(const Poset& p, const NodeSet& b, int depth);
Verdict is_cap(const Poset& p, const NodeSet& c, int depth);
Verdict cap_order_leq(const Poset& p, Node a, Node b, int depth);

// Exhaustive classification of all subsets of a finite poset.
struct OracleResult {
    std::vector<Node> nodes;  // bit i of a mask stands for nodes[i]
    std::vector<bool> band;   // indexed by mask
    std::vector<bool> cap;
    std::vector<std::uint32_t> bands, caps, minimal_caps, selectors, minimal_selectors;

    std::uint32_t mask_of(const NodeSet& s) const;
    NodeSet set_of(std::uint32_t mask) const;
    std::uint32_t full() const { return nodes.size() >= 32 ? ~0u : ((1u << nodes.size()) - 1); }
    // Q ≾ R: for every F, F∪Q a cap implies F∪R a cap.
    bool cap_below(std::uint32_t q, std::uint32_t r) const;
};

class SizeBound : public std::length_error {
public:
    using std::length_error::length_error;
};

inline constexpr std::size_t kOracleBound = 16;

OracleResult oracle(const Poset& p, std::size_t bound = kOracleBound);

}  // namespace opct
