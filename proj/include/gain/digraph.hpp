#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gain/group.hpp"

namespace gain {

struct GraphParseError : std::runtime_error {
    int line;
    GraphParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_), line(line_) {}
};

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Edge {
    std::string id;
    std::string tail;
    std::string head;
};

/**
 * Immutable directed multigraph. Loops and parallel edges are permitted;
 * vertex and edge ids are unique within their kind. Vertex order is the
 * order of first appearance, which downstream code uses as the canonical
 * choice of roots.
 */
class Digraph {
public:
    Digraph() = default;
    /// Endpoints not present in `vertices` are appended in order of first
    /// appearance. Throws std::invalid_argument on duplicate ids.
    Digraph(std::vector<std::string> vertices, std::vector<Edge> edges);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return vertices_.empty(); }

    const std::vector<std::string>& vertex_ids() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::size_t e) const { return edges_[e]; }
    const std::string& vertex_id(std::size_t v) const { return vertices_[v]; }

    bool has_vertex(std::string_view id) const;
    bool has_edge(std::string_view id) const;
    std::size_t vertex_index(std::string_view id) const;  // throws std::out_of_range
    std::size_t edge_index(std::string_view id) const;    // throws std::out_of_range

    std::size_t tail_index(std::size_t e) const { return tail_[e]; }
    std::size_t head_index(std::size_t e) const { return head_[e]; }

    /// Undirected incidence in declaration order: (edge index, vertex is tail).
    /// A loop appears once, as (e, true).
    const std::vector<std::pair<std::size_t, bool>>& incident(std::size_t v) const {
        return incident_[v];
    }
    const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }

private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> tail_, head_;
    std::unordered_map<std::string, std::size_t> vertex_ix_;
    std::unordered_map<std::string, std::size_t> edge_ix_;
    std::vector<std::vector<std::pair<std::size_t, bool>>> incident_;
    std::vector<std::vector<std::size_t>> out_;
};

/**
 * Line-oriented format: `v <id>` declares a vertex, `e <id> <tail> <head>`
 * a directed edge; `#` starts a comment line. In strict mode every edge
 * endpoint must be declared by a `v` line somewhere in the file.
 */
Digraph parse_graph(std::string_view text, bool strict = false);
Digraph load_graph(const std::filesystem::path& path, bool strict = false);

/// Components of the underlying undirected multigraph, ordered by first
/// vertex appearance.
std::vector<std::vector<std::string>> weak_components(const Digraph& g);
/// Same partition as per-vertex component indices.
std::vector<int> weak_component_index(const Digraph& g);

enum class StepDirection : std::uint8_t { forward, reverse };

struct WalkStep {
    std::string edge;
    StepDirection dir = StepDirection::forward;
};

/**
 * A closed walk: vertices.size() == steps.size() + 1 with equal endpoints.
 * `sum` is filled by balance checkers with the walk's nonzero label sum.
 */
struct Witness {
    std::vector<std::string> vertices;
    std::vector<WalkStep> steps;
    std::optional<GroupElement> sum;
};

enum class WalkMode { flexible, rigid, undirected };

/// Incidence, closure and edge-distinctness for the given mode: flexible
/// walks may use an edge once per direction, rigid walks are forward-only,
/// undirected walks use each edge at most once regardless of direction.
bool validate_witness(const Digraph& g, const Witness& w, WalkMode mode);

struct Bipartition {
    bool bipartite = true;
    /// 2-coloring for vertices of bipartite components; the component's
    /// first vertex is in class 0.
    std::map<std::string, int> classes;
    /// Odd closed walk from the first non-bipartite component found.
    std::optional<Witness> odd_cycle;

    // Per-index views used by the labeling machinery.
    std::vector<int> component_of;          // weak component per vertex index
    std::vector<char> component_bipartite;  // per weak component
    std::vector<int> side;                  // 0/1, or -1 inside non-bipartite components
};

Bipartition bipartition(const Digraph& g);

struct SccDecomposition {
    std::vector<int> component_of;  // per vertex index, numbered by first appearance
    int component_count = 0;        // k-bar
    std::vector<std::string> cross_edges;
    std::vector<char> edge_is_cross;  // per edge index
    int r() const { return static_cast<int>(cross_edges.size()); }
};

SccDecomposition scc(const Digraph& g);

inline constexpr int kOrientationEdgeCap = 20;

/// All 2^|E| reorientations (edge ids preserved, vertex order preserved).
/// Bit j of the enumeration index flips edge j. Throws CapExceeded when
/// |E| > max_edges.
void for_each_orientation(const Digraph& g, const std::function<void(const Digraph&)>& fn,
                          int max_edges = kOrientationEdgeCap);
std::vector<Digraph> orientations(const Digraph& g, int max_edges = kOrientationEdgeCap);

}  // namespace gain
