#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "opct/verdict.hpp"

namespace opct {

struct ElementId {
    std::uint32_t level = 0;
    std::uint32_t index = 0;
    auto operator<=>(const ElementId&) const = default;
};

enum Flag : unsigned {
    kGraded = 1u << 0,
    kAtomless = 1u << 1,
    kEdgeWitnessing = 1u << 2,
    kStarRefining = 1u << 3,
    kFiniteComplete = 1u << 4,
};

std::string flag_name(Flag f);
std::optional<Flag> flag_from_name(const std::string& s);
std::vector<std::string> flag_names(unsigned flags);

enum class BuildErrorKind {
    EmptyLevel,
    DuplicateName,
    UnknownElement,
    EdgeDirection,
    GradedEdgeSpan,
    LevelNotAntichain,
    RefinementGap,
    CorefinementGap,
    SharedNonAtom,
    AtomWithLowerBound,
    LevelMismatch,
};

std::string to_string(BuildErrorKind k);

class BuildError : public std::runtime_error {
public:
    BuildError(BuildErrorKind kind, std::string element, const std::string& what)
        : std::runtime_error(what), kind_(kind), element_(std::move(element))
    {
    }
    BuildErrorKind kind() const { return kind_; }
    const std::string& element() const { return element_; }

private:
    BuildErrorKind kind_;
    std::string element_;
};

class DepthExceeded : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Raw description accepted by Poset::build. A name listed in several
// consecutive levels denotes one element (only atoms may do that).
struct PosetSpec {
    std::vector<std::vector<std::string>> levels;
    std::vector<std::pair<std::string, std::string>> edges;  // (lower, upper)
    unsigned flags = 0;
    std::vector<std::string> atoms;
};

enum class Tri { No, Yes, Maybe };

// A finite truncation P_0..P_d of an omega-poset. Immutable once built.
class Poset {
public:
    static Poset build(const PosetSpec& spec);
    // Whole finite poset given by its order; levels are computed and the
    // result is finite_complete.
    static Poset from_order(const std::vector<std::string>& names,
                            const std::vector<std::pair<std::string, std::string>>& edges,
                            unsigned extra_flags = 0);

    Poset extend(const std::vector<std::string>& new_level,
                 const std::vector<std::pair<std::string, std::string>>& new_edges) const;

    const PosetSpec& spec() const { return spec_; }

    int depth() const { return static_cast<int>(levels_.size()) - 1; }
    std::size_t size() const { return names_.size(); }
    unsigned flags() const { return flags_; }
    bool has(Flag f) const { return (flags_ & f) != 0; }
    Poset with_flags(unsigned extra) const;

    const NodeSet& level(int n) const;  // stored order, not sorted by node
    std::vector<Node> level_sorted(int n) const;
    NodeSet cone(int n) const;

    const std::string& name(Node v) const { return names_[v]; }
    std::optional<Node> find(const std::string& name) const;
    Node at(const std::string& name) const;
    ElementId id(Node v) const { return ids_[v]; }
    Node node(ElementId e) const;
    int first_level(Node v) const { return static_cast<int>(ids_[v].level); }
    int last_level(Node v) const { return last_level_[v]; }
    bool in_level(Node v, int n) const { return n >= first_level(v) && n <= last_level_[v]; }

    bool leq(Node a, Node b) const;
    bool lt(Node a, Node b) const { return a != b && leq(a, b); }
    bool comparable(Node a, Node b) const { return leq(a, b) || leq(b, a); }
    int rank(Node v) const { return rank_[v]; }

    const NodeSet& up(Node v) const { return up_[v]; }       // v^<= (reflexive)
    const NodeSet& parents(Node v) const { return parents_[v]; }
    const NodeSet& children(Node v) const { return children_[v]; }

    NodeSet up_closure(const NodeSet& s) const;
    // Down-closure inside the truncation, cut at level max_level (-1: all).
    NodeSet down_closure(const NodeSet& s, int max_level = -1) const;
    NodeSet strictly_below(Node v) const;

    // Covering relations computed inside the truncation.
    NodeSet upper_covers(Node v) const;
    NodeSet lower_covers(Node v) const;

    bool atom_marked(Node v) const { return atom_[v]; }
    // Yes: an atom of the full poset; No: has something below; Maybe: leaf of
    // the truncation whose atomhood is not determined.
    Tri atom_status(Node v) const;

    // Lexicographic (level, index) comparison for tie-breaking.
    bool before(Node a, Node b) const { return ids_[a] < ids_[b]; }
    NodeSet sorted_by_id(NodeSet s) const;

    std::vector<std::string> names_of(const NodeSet& s) const;
    NodeSet nodes_of(const std::vector<std::string>& names) const;

private:
    PosetSpec spec_;
    unsigned flags_ = 0;
    std::vector<std::string> names_;
    std::unordered_map<std::string, Node> index_;
    std::vector<NodeSet> levels_;
    std::vector<ElementId> ids_;
    std::vector<int> last_level_;
    std::vector<NodeSet> parents_;
    std::vector<NodeSet> children_;
    std::vector<NodeSet> up_;
    std::vector<int> rank_;
    std::vector<bool> atom_;
};

bool contains(const NodeSet& s, Node v);
NodeSet set_union(const NodeSet& a, const NodeSet& b);
NodeSet set_intersection(const NodeSet& a, const NodeSet& b);
NodeSet set_difference(const NodeSet& a, const NodeSet& b);
bool intersects(const NodeSet& a, const NodeSet& b);
bool subset_of(const NodeSet& a, const NodeSet& b);
NodeSet normalized(NodeSet s);

}  // namespace opct
