#include "forest.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <stdexcept>

namespace gain::detail {

Forest bfs_forest(const Digraph& g, const std::vector<int>& group_of, int preferred_root) {
    const std::size_t n = g.vertex_count();
    Forest f;
    f.parent.assign(n, -1);
    f.parent_edge.assign(n, -1);
    f.depth.assign(n, 0);
    f.root.assign(n, -1);
    f.bfs_order.reserve(n);

    // Pick roots: lowest vertex index per group, overridden where asked.
    int max_group = -1;
    for (int gid : group_of) max_group = std::max(max_group, gid);
    std::vector<int> root_of_group(static_cast<std::size_t>(max_group + 1), -1);
    for (std::size_t v = 0; v < n; ++v) {
        int gid = group_of[v];
        if (root_of_group[gid] < 0) root_of_group[gid] = static_cast<int>(v);
    }
    if (preferred_root >= 0) root_of_group[group_of[preferred_root]] = preferred_root;

    std::vector<char> seen(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        int start = root_of_group[group_of[v]];
        if (seen[start]) continue;
        seen[start] = 1;
        f.root[start] = start;
        std::deque<int> queue{start};
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            f.bfs_order.push_back(u);
            for (auto [e, at_tail] : g.incident(u)) {
                std::size_t other = at_tail ? g.head_index(e) : g.tail_index(e);
                if (other == static_cast<std::size_t>(u)) continue;  // loop
                if (group_of[other] != group_of[u]) continue;
                if (seen[other]) continue;
                seen[other] = 1;
                f.parent[other] = u;
                f.parent_edge[other] = static_cast<int>(e);
                f.depth[other] = f.depth[u] + 1;
                f.root[other] = start;
                queue.push_back(static_cast<int>(other));
            }
        }
    }
    return f;
}

namespace {

// Step from `child` to its parent. Forward iff the edge leaves the child.
std::pair<int, bool> up_step(const Digraph& g, const Forest& f, int child) {
    int e = f.parent_edge[child];
    bool forward = g.tail_index(e) == static_cast<std::size_t>(child);
    return {e, forward};
}

}  // namespace

TreeWalk tree_path(const Digraph& g, const Forest& f, int from, int to) {
    if (f.root[from] != f.root[to])
        throw std::logic_error("tree_path endpoints lie in different trees");

    std::vector<int> up_from_vertices, up_to_vertices;
    std::vector<std::pair<int, bool>> up_from_steps, up_to_steps;
    int a = from, b = to;
    while (f.depth[a] > f.depth[b]) {
        up_from_vertices.push_back(a);
        up_from_steps.push_back(up_step(g, f, a));
        a = f.parent[a];
    }
    while (f.depth[b] > f.depth[a]) {
        up_to_vertices.push_back(b);
        up_to_steps.push_back(up_step(g, f, b));
        b = f.parent[b];
    }
    while (a != b) {
        up_from_vertices.push_back(a);
        up_from_steps.push_back(up_step(g, f, a));
        a = f.parent[a];
        up_to_vertices.push_back(b);
        up_to_steps.push_back(up_step(g, f, b));
        b = f.parent[b];
    }

    TreeWalk walk;
    walk.vertices = std::move(up_from_vertices);
    walk.vertices.push_back(a);  // the meeting vertex
    walk.steps = std::move(up_from_steps);
    // Descend towards `to`, reversing the collected upward steps.
    for (std::size_t i = up_to_steps.size(); i-- > 0;) {
        auto [e, fwd] = up_to_steps[i];
        walk.steps.emplace_back(e, !fwd);
        walk.vertices.push_back(up_to_vertices[i]);
    }
    return walk;
}

}  // namespace gain::detail
