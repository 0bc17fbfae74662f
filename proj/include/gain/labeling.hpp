#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "gain/digraph.hpp"
#include "gain/group.hpp"

namespace gain {

/**
 * Partial assignment of group elements to vertex and edge ids. An edge label
 * stored once is the value of the forward traversal; flexible semantics
 * derive the reverse value by negation on demand.
 */
struct Labeling {
    GroupSpec spec;
    std::map<std::string, GroupElement> on_vertices;
    std::map<std::string, GroupElement> on_edges;
};

struct UnbalancedError : std::runtime_error {
    Witness witness;
    explicit UnbalancedError(Witness w)
        : std::runtime_error("labeling is not balanced"), witness(std::move(w)) {}
};

struct CheckResult {
    bool balanced = true;
    std::optional<Witness> witness;
    explicit operator bool() const { return balanced; }
};

/**
 * Line format: `<id><TAB><comma-separated coords>`; `#` starts a comment
 * line. Ids must name a vertex or an edge of the graph (an id naming both
 * is rejected as ambiguous); missing ids stay unlabeled.
 */
Labeling parse_labeling(std::string_view text, const Digraph& g, const GroupSpec& spec);
Labeling load_labeling(const std::filesystem::path& path, const Digraph& g, const GroupSpec& spec);
std::string labeling_str(const Labeling& l, const Digraph& g);

/// Index-keyed views in graph declaration order; values are canonicalized.
/// Throws std::invalid_argument naming the first unlabeled id.
std::vector<GroupElement> vertex_values(const Labeling& l, const Digraph& g);
std::vector<GroupElement> edge_values(const Labeling& l, const Digraph& g);

Labeling edge_labeling(const Digraph& g, const GroupSpec& spec, std::span<const GroupElement> values);
Labeling vertex_labeling(const Digraph& g, const GroupSpec& spec, std::span<const GroupElement> values);
Labeling full_labeling(const Digraph& g, const GroupSpec& spec,
                       std::span<const GroupElement> vertex_vals,
                       std::span<const GroupElement> edge_vals);

/**
 * Formal group A^p x (A_2)^q describing one of the six function groups.
 */
struct StructureDescriptor {
    int a_exponent = 0;   // p
    int a2_exponent = 0;  // q

    bool operator==(const StructureDescriptor&) const = default;
    /// Cardinality against a concrete group; std::nullopt means infinite.
    std::optional<unsigned long long> cardinality(const GroupSpec& spec) const;
    std::string str() const;  // e.g. "A^3", "A_2 x A^2", "1"
};

}  // namespace gain
