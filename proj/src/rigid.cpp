#include "gain/rigid.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <set>

#include "accum.hpp"
#include "forest.hpp"

namespace gain {

namespace {

std::vector<GroupElement> propagate_potential(const Digraph& g, const detail::Forest& forest,
                                              const GroupSpec& spec,
                                              std::span<const GroupElement> edge_vals) {
    std::vector<GroupElement> phi(g.vertex_count());
    for (int v : forest.bfs_order) {
        int p = forest.parent[v];
        if (p < 0) {
            phi[v] = zero_element(spec);
            continue;
        }
        int e = forest.parent_edge[v];
        phi[v] = g.head_index(e) == static_cast<std::size_t>(v) ? add(spec, phi[p], edge_vals[e])
                                                                : subtract(spec, phi[p], edge_vals[e]);
    }
    return phi;
}

GroupElement rigid_walk_sum(const Digraph& g, const GroupSpec& spec,
                            std::span<const GroupElement> edge_vals,
                            const std::vector<std::size_t>& edge_seq) {
    detail::Accum acc;
    acc.reset(spec);
    for (std::size_t e : edge_seq) acc.add(edge_vals[e]);
    return acc.value();
}

struct DirectedWalk {
    std::vector<std::size_t> vertices;  // edges.size() + 1, closed
    std::vector<std::size_t> edges;
};

Witness to_witness(const Digraph& g, const DirectedWalk& walk) {
    Witness w;
    for (std::size_t v : walk.vertices) w.vertices.push_back(g.vertex_id(v));
    for (std::size_t e : walk.edges) w.steps.push_back({g.edge(e).id, StepDirection::forward});
    return w;
}

}  // namespace

struct RigidChecker::Impl {
    const Digraph* g;
    SccDecomposition sccd;
    detail::Forest forest;

    explicit Impl(const Digraph& graph) : g(&graph), sccd(scc(graph)) {
        // The forest only follows intra-component edges; every component is
        // rooted at its first vertex.
        forest = detail::bfs_forest(graph, sccd.component_of);
    }

    std::optional<std::size_t> first_violation(const GroupSpec& spec,
                                               std::span<const GroupElement> edge_vals,
                                               const std::vector<GroupElement>& phi) const {
        detail::Accum acc;
        for (std::size_t e = 0; e < g->edge_count(); ++e) {
            if (sccd.edge_is_cross[e]) continue;
            acc.reset(spec);
            acc.add(edge_vals[e]);
            acc.add(phi[g->tail_index(e)]);
            acc.sub(phi[g->head_index(e)]);
            if (!acc.is_zero()) return e;
        }
        return std::nullopt;
    }

    // Shortest directed path inside one component, lexicographically smallest
    // edge-id sequence among equals: reverse BFS distances, then a greedy
    // forward walk choosing the least edge id at every step.
    DirectedWalk directed_path(std::size_t from, std::size_t to) const {
        const int comp = sccd.component_of[from];
        const std::size_t n = g->vertex_count();
        std::vector<int> dist(n, -1);
        std::deque<std::size_t> queue{to};
        dist[to] = 0;
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (auto [e, at_tail] : g->incident(u)) {
                if (at_tail) continue;  // want edges entering u
                std::size_t t = g->tail_index(e);
                if (sccd.component_of[t] != comp || sccd.edge_is_cross[e]) continue;
                if (dist[t] < 0) {
                    dist[t] = dist[u] + 1;
                    queue.push_back(t);
                }
            }
        }
        assert(dist[from] >= 0);

        DirectedWalk walk;
        walk.vertices.push_back(from);
        std::size_t cur = from;
        while (cur != to) {
            const std::string* best_id = nullptr;
            std::size_t best_edge = 0;
            for (std::size_t e : g->out_edges(cur)) {
                if (sccd.edge_is_cross[e]) continue;
                std::size_t h = g->head_index(e);
                if (sccd.component_of[h] != comp || dist[h] != dist[cur] - 1) continue;
                if (!best_id || g->edge(e).id < *best_id) {
                    best_id = &g->edge(e).id;
                    best_edge = e;
                }
            }
            assert(best_id);
            walk.edges.push_back(best_edge);
            cur = g->head_index(best_edge);
            walk.vertices.push_back(cur);
        }
        return walk;
    }

    // A directed cycle with nonzero sum through a violated intra-component
    // edge. The flexible fundamental cycle is rewritten into a directed
    // closed walk by replacing reverse traversals with directed paths; the
    // walk is then peeled into vertex-simple directed cycles, one of which
    // must carry the nonzero sum.
    Witness directed_witness(const GroupSpec& spec, std::span<const GroupElement> edge_vals,
                             std::size_t bad_edge) const {
        const std::size_t t = g->tail_index(bad_edge), h = g->head_index(bad_edge);
        detail::Accum acc;
        if (t == h) {
            // A violated loop is already a directed cycle.
            Witness w;
            w.vertices = {g->vertex_id(t), g->vertex_id(t)};
            w.steps = {{g->edge(bad_edge).id, StepDirection::forward}};
            acc.reset(spec);
            acc.add(edge_vals[bad_edge]);
            w.sum = acc.value();
            return w;
        }

        DirectedWalk assembled;
        assembled.vertices.push_back(t);
        auto append_forward = [&](std::size_t e) {
            assembled.edges.push_back(e);
            assembled.vertices.push_back(g->head_index(e));
        };
        auto append_reverse = [&](std::size_t e) -> std::optional<Witness> {
            // Replace the reverse traversal of e (head -> tail) by a directed
            // path; if the cycle e . path already has a nonzero sum, it is a
            // witness on its own.
            DirectedWalk path = directed_path(g->head_index(e), g->tail_index(e));
            std::vector<std::size_t> cycle_edges{e};
            cycle_edges.insert(cycle_edges.end(), path.edges.begin(), path.edges.end());
            GroupElement sum = rigid_walk_sum(*g, spec, edge_vals, cycle_edges);
            if (!is_zero(sum)) {
                DirectedWalk cycle;
                cycle.vertices.push_back(g->tail_index(e));
                cycle.vertices.insert(cycle.vertices.end(), path.vertices.begin(), path.vertices.end());
                cycle.edges = std::move(cycle_edges);
                Witness w = to_witness(*g, cycle);
                w.sum = std::move(sum);
                return w;
            }
            for (std::size_t i = 0; i < path.edges.size(); ++i) append_forward(path.edges[i]);
            return std::nullopt;
        };

        append_forward(bad_edge);
        detail::TreeWalk back = detail::tree_path(*g, forest, static_cast<int>(h), static_cast<int>(t));
        for (auto [e, fwd] : back.steps) {
            if (fwd) {
                append_forward(e);
            } else if (auto w = append_reverse(e)) {
                return *w;
            }
        }
        assert(assembled.vertices.front() == assembled.vertices.back());

        // Peel vertex-simple directed cycles off the walk; their sums add up
        // to the walk's nonzero total, so one of them is nonzero.
        std::vector<std::size_t>& vs = assembled.vertices;
        std::vector<std::size_t>& es = assembled.edges;
        for (;;) {
            std::map<std::size_t, std::size_t> seen_at;
            std::optional<std::pair<std::size_t, std::size_t>> segment;
            for (std::size_t i = 0; i < vs.size(); ++i) {
                auto [it, fresh] = seen_at.emplace(vs[i], i);
                if (!fresh) {
                    segment = {it->second, i};
                    break;
                }
            }
            assert(segment);
            auto [b, e] = *segment;
            std::vector<std::size_t> cycle_edges(es.begin() + b, es.begin() + e);
            GroupElement sum = rigid_walk_sum(*g, spec, edge_vals, cycle_edges);
            if (!is_zero(sum)) {
                DirectedWalk cycle;
                cycle.vertices.assign(vs.begin() + b, vs.begin() + e + 1);
                cycle.edges = std::move(cycle_edges);
                Witness w = to_witness(*g, cycle);
                w.sum = std::move(sum);
                return w;
            }
            // Zero-sum segment: splice it out and keep looking.
            vs.erase(vs.begin() + b + 1, vs.begin() + e + 1);
            es.erase(es.begin() + b, es.begin() + e);
            assert(!es.empty());
        }
    }
};

RigidChecker::RigidChecker(const Digraph& g) : impl_(std::make_unique<Impl>(g)) {}
RigidChecker::~RigidChecker() = default;
RigidChecker::RigidChecker(RigidChecker&&) noexcept = default;
RigidChecker& RigidChecker::operator=(RigidChecker&&) noexcept = default;

const Digraph& RigidChecker::graph() const { return *impl_->g; }
const SccDecomposition& RigidChecker::components() const { return impl_->sccd; }

bool RigidChecker::hr_balanced(const GroupSpec& spec,
                               std::span<const GroupElement> edge_vals) const {
    std::vector<GroupElement> phi = propagate_potential(*impl_->g, impl_->forest, spec, edge_vals);
    return !impl_->first_violation(spec, edge_vals, phi).has_value();
}

CheckResult RigidChecker::hr_check(const GroupSpec& spec,
                                   std::span<const GroupElement> edge_vals) const {
    std::vector<GroupElement> phi = propagate_potential(*impl_->g, impl_->forest, spec, edge_vals);
    auto e = impl_->first_violation(spec, edge_vals, phi);
    if (!e) return {};
    return {false, impl_->directed_witness(spec, edge_vals, *e)};
}

bool RigidChecker::wr_balanced(const GroupSpec& spec, std::span<const GroupElement> vertex_vals,
                               std::span<const GroupElement> edge_vals) const {
    std::vector<GroupElement> split(edge_vals.size());
    for (std::size_t e = 0; e < edge_vals.size(); ++e)
        split[e] = add(spec, edge_vals[e], vertex_vals[impl_->g->tail_index(e)]);
    return hr_balanced(spec, split);
}

CheckResult RigidChecker::wr_check(const GroupSpec& spec, std::span<const GroupElement> vertex_vals,
                                   std::span<const GroupElement> edge_vals) const {
    std::vector<GroupElement> split(edge_vals.size());
    for (std::size_t e = 0; e < edge_vals.size(); ++e)
        split[e] = add(spec, edge_vals[e], vertex_vals[impl_->g->tail_index(e)]);
    CheckResult result = hr_check(spec, split);
    if (result.balanced) return result;
    // Recompute the witness sum against the whole-graph labeling; along a
    // directed cycle it equals the split edge sum.
    detail::Accum acc;
    acc.reset(spec);
    for (std::size_t i = 0; i < result.witness->steps.size(); ++i) {
        acc.add(vertex_vals[impl_->g->vertex_index(result.witness->vertices[i])]);
        acc.add(edge_vals[impl_->g->edge_index(result.witness->steps[i].edge)]);
    }
    result.witness->sum = acc.value();
    return result;
}

std::vector<GroupElement> RigidChecker::potential(const GroupSpec& spec,
                                                  std::span<const GroupElement> edge_vals) const {
    std::vector<GroupElement> phi = propagate_potential(*impl_->g, impl_->forest, spec, edge_vals);
    if (auto e = impl_->first_violation(spec, edge_vals, phi))
        throw UnbalancedError(impl_->directed_witness(spec, edge_vals, *e));
    return phi;
}

CheckResult hr_check(const Digraph& g, const Labeling& f) {
    std::vector<GroupElement> evals = edge_values(f, g);
    return RigidChecker(g).hr_check(f.spec, evals);
}

Labeling hr_from_params(const Digraph& g, const HrParams& params) {
    const GroupSpec& spec = params.spec;
    SccDecomposition sccd = scc(g);

    std::vector<GroupElement> phi(g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        auto it = params.potential.find(g.vertex_id(v));
        if (it == params.potential.end())
            throw std::invalid_argument("missing potential for vertex '" + g.vertex_id(v) + "'");
        phi[v] = canonicalize(spec, it->second);
    }
    std::vector<int> comp_root(sccd.component_count, -1);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        int c = sccd.component_of[v];
        if (comp_root[c] < 0) comp_root[c] = static_cast<int>(v);
    }
    for (int root : comp_root)
        if (!is_zero(phi[root]))
            throw std::invalid_argument("potential must vanish at component root '" +
                                        g.vertex_id(root) + "'");

    std::size_t cross_seen = 0;
    Labeling out;
    out.spec = spec;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        GroupElement value;
        if (sccd.edge_is_cross[e]) {
            auto it = params.cross_values.find(g.edge(e).id);
            if (it == params.cross_values.end())
                throw std::invalid_argument("missing cross value for edge '" + g.edge(e).id + "'");
            value = canonicalize(spec, it->second);
            ++cross_seen;
        } else {
            value = subtract(spec, phi[g.head_index(e)], phi[g.tail_index(e)]);
        }
        out.on_edges.emplace(g.edge(e).id, std::move(value));
    }
    if (cross_seen != params.cross_values.size())
        throw std::invalid_argument("cross_values contains ids that are not cross edges");
    return out;
}

HrParams hr_params_of(const Digraph& g, const Labeling& f) {
    std::vector<GroupElement> evals = edge_values(f, g);
    RigidChecker checker(g);
    std::vector<GroupElement> phi = checker.potential(f.spec, evals);

    HrParams params;
    params.spec = f.spec;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        params.potential.emplace(g.vertex_id(v), phi[v]);
    const SccDecomposition& sccd = checker.components();
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (sccd.edge_is_cross[e]) params.cross_values.emplace(g.edge(e).id, evals[e]);
    return params;
}

Labeling br_balance(const Digraph& g, const Labeling& vertex_labels) {
    const GroupSpec& spec = vertex_labels.spec;
    std::vector<GroupElement> vvals = vertex_values(vertex_labels, g);
    Labeling out;
    out.spec = spec;
    out.on_vertices = vertex_labels.on_vertices;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        out.on_edges.emplace(g.edge(e).id, negate(spec, vvals[g.tail_index(e)]));
    return out;
}

std::pair<Labeling, Labeling> wr_split(const Digraph& g, const Labeling& h) {
    const GroupSpec& spec = h.spec;
    std::vector<GroupElement> vvals = vertex_values(h, g);
    std::vector<GroupElement> evals = edge_values(h, g);
    Labeling verts;
    verts.spec = spec;
    verts.on_vertices = h.on_vertices;
    Labeling edges;
    edges.spec = spec;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        edges.on_edges.emplace(g.edge(e).id, add(spec, evals[e], vvals[g.tail_index(e)]));
    return {std::move(verts), std::move(edges)};
}

Labeling wr_join(const Digraph& g, const Labeling& vertex_labels, const Labeling& edge_labels) {
    const GroupSpec& spec = vertex_labels.spec;
    std::vector<GroupElement> vvals = vertex_values(vertex_labels, g);
    std::vector<GroupElement> evals = edge_values(edge_labels, g);
    Labeling out;
    out.spec = spec;
    out.on_vertices = vertex_labels.on_vertices;
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        out.on_edges.emplace(g.edge(e).id, subtract(spec, evals[e], vvals[g.tail_index(e)]));
    return out;
}

CheckResult wr_check(const Digraph& g, const Labeling& h) {
    std::vector<GroupElement> vvals = vertex_values(h, g);
    std::vector<GroupElement> evals = edge_values(h, g);
    return RigidChecker(g).wr_check(h.spec, vvals, evals);
}

StructureDescriptor rigid_structure(const Digraph& g, RigidFamily family) {
    SccDecomposition sccd = scc(g);
    const int n = static_cast<int>(g.vertex_count());
    StructureDescriptor d;
    switch (family) {
        case RigidFamily::HR:
            d.a_exponent = n - sccd.component_count + sccd.r();
            break;
        case RigidFamily::BR:
            d.a_exponent = n;
            break;
        case RigidFamily::WR:
            d.a_exponent = 2 * n - sccd.component_count + sccd.r();
            break;
    }
    return d;
}

}  // namespace gain
