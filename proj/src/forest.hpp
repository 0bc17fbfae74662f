#pragma once

#include <utility>
#include <vector>

#include "gain/digraph.hpp"

// Shared spanning-forest machinery for potential propagation and
// fundamental-cycle extraction. Internal to the library.
namespace gain::detail {

struct Forest {
    std::vector<int> parent;       // parent vertex index, -1 at roots
    std::vector<int> parent_edge;  // edge index into the graph, -1 at roots
    std::vector<int> depth;
    std::vector<int> root;       // the group root reached from each vertex
    std::vector<int> bfs_order;  // parents always precede children
};

/**
 * BFS forest of the underlying undirected multigraph restricted to edges
 * whose endpoints share a group (loops are skipped). The root of each group
 * is its lowest vertex index, except that the group containing
 * `preferred_root` is rooted there.
 */
Forest bfs_forest(const Digraph& g, const std::vector<int>& group_of, int preferred_root = -1);

struct TreeWalk {
    std::vector<int> vertices;                  // from .. to inclusive
    std::vector<std::pair<int, bool>> steps;    // (edge index, traversed forward)
};

/// Unique tree path between two vertices of the same forest tree.
TreeWalk tree_path(const Digraph& g, const Forest& f, int from, int to);

}  // namespace gain::detail
