#include "gain/flexible.hpp"

#include <algorithm>
#include <cassert>

#include "accum.hpp"
#include "forest.hpp"

namespace gain {

namespace {

// Propagate phi over the forest so that every tree edge satisfies
// f(e) = phi(head) - phi(tail).
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

// First edge with f(e) != phi(head) - phi(tail), in declaration order.
std::optional<std::size_t> first_potential_violation(const Digraph& g, const GroupSpec& spec,
                                                     std::span<const GroupElement> edge_vals,
                                                     const std::vector<GroupElement>& phi) {
    detail::Accum acc;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        acc.reset(spec);
        acc.add(edge_vals[e]);
        acc.add(phi[g.tail_index(e)]);
        acc.sub(phi[g.head_index(e)]);
        if (!acc.is_zero()) return e;
    }
    return std::nullopt;
}

// Fundamental cycle of a violated edge: the tree path from tail to head,
// closed by the edge traversed in reverse.
Witness fundamental_witness(const Digraph& g, const detail::Forest& forest, std::size_t e) {
    Witness w;
    const std::size_t t = g.tail_index(e), h = g.head_index(e);
    detail::TreeWalk walk = detail::tree_path(g, forest, static_cast<int>(t), static_cast<int>(h));
    for (int v : walk.vertices) w.vertices.push_back(g.vertex_id(v));
    for (auto [pe, fwd] : walk.steps)
        w.steps.push_back({g.edge(pe).id, fwd ? StepDirection::forward : StepDirection::reverse});
    w.steps.push_back({g.edge(e).id, StepDirection::reverse});
    w.vertices.push_back(g.vertex_id(t));
    return w;
}

GroupElement flexible_edge_sum(const Digraph& g, const GroupSpec& spec,
                               std::span<const GroupElement> edge_vals, const Witness& w) {
    detail::Accum acc;
    acc.reset(spec);
    for (const WalkStep& s : w.steps) {
        std::size_t e = g.edge_index(s.edge);
        if (s.dir == StepDirection::forward)
            acc.add(edge_vals[e]);
        else
            acc.sub(edge_vals[e]);
    }
    return acc.value();
}

GroupElement whole_walk_sum(const Digraph& g, const GroupSpec& spec,
                            std::span<const GroupElement> vertex_vals,
                            std::span<const GroupElement> edge_vals, const Witness& w) {
    detail::Accum acc;
    acc.reset(spec);
    for (std::size_t i = 0; i < w.steps.size(); ++i) {
        acc.add(vertex_vals[g.vertex_index(w.vertices[i])]);
        std::size_t e = g.edge_index(w.steps[i].edge);
        if (w.steps[i].dir == StepDirection::forward)
            acc.add(edge_vals[e]);
        else
            acc.sub(edge_vals[e]);
    }
    return acc.value();
}

// Kinds of whole-graph violations, scanned in edge declaration order.
struct WfViolation {
    enum Kind { vertex_pair, loop_forward, loop_reverse, residual } kind;
    std::size_t edge;
};

}  // namespace

struct FlexibleChecker::Impl {
    const Digraph* g;
    Bipartition bip;
    detail::Forest forest;
    std::vector<int> comp_root;  // root vertex index per weak component

    explicit Impl(const Digraph& graph) : g(&graph), bip(bipartition(graph)) {
        forest = detail::bfs_forest(graph, bip.component_of);
        comp_root.assign(bip.component_bipartite.size(), -1);
        for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
            int c = bip.component_of[v];
            if (comp_root[c] < 0) comp_root[c] = static_cast<int>(v);
        }
    }

    std::vector<GroupElement> residual_edge_values(const GroupSpec& spec,
                                                   std::span<const GroupElement> vertex_vals,
                                                   std::span<const GroupElement> edge_vals) const {
        std::vector<GroupElement> residual(edge_vals.begin(), edge_vals.end());
        for (std::size_t e = 0; e < g->edge_count(); ++e) {
            int c = bip.component_of[g->tail_index(e)];
            if (!bip.component_bipartite[c])
                residual[e] = subtract(spec, residual[e], vertex_vals[comp_root[c]]);
        }
        return residual;
    }

    std::optional<WfViolation> first_wf_violation(const GroupSpec& spec,
                                                  std::span<const GroupElement> vertex_vals,
                                                  std::span<const GroupElement> edge_vals) const {
        detail::Accum acc;
        for (std::size_t e = 0; e < g->edge_count(); ++e) {
            std::size_t t = g->tail_index(e), h = g->head_index(e);
            if (t == h) {
                // The length-1 cycles of a loop: h(v)+h(e) = 0 and h(v)-h(e) = 0.
                acc.reset(spec);
                acc.add(vertex_vals[t]);
                acc.add(edge_vals[e]);
                if (!acc.is_zero()) return WfViolation{WfViolation::loop_forward, e};
                acc.reset(spec);
                acc.add(vertex_vals[t]);
                acc.sub(edge_vals[e]);
                if (!acc.is_zero()) return WfViolation{WfViolation::loop_reverse, e};
            } else {
                // The 2-cycle e, e-bar: h(u)+h(w) = 0.
                acc.reset(spec);
                acc.add(vertex_vals[t]);
                acc.add(vertex_vals[h]);
                if (!acc.is_zero()) return WfViolation{WfViolation::vertex_pair, e};
            }
        }
        // Vertex constraints hold; the rest is the residual edge labeling.
        std::vector<GroupElement> residual = residual_edge_values(spec, vertex_vals, edge_vals);
        std::vector<GroupElement> phi = propagate_potential(*g, forest, spec, residual);
        if (auto e = first_potential_violation(*g, spec, residual, phi))
            return WfViolation{WfViolation::residual, *e};
        return std::nullopt;
    }
};

FlexibleChecker::FlexibleChecker(const Digraph& g) : impl_(std::make_unique<Impl>(g)) {}
FlexibleChecker::~FlexibleChecker() = default;
FlexibleChecker::FlexibleChecker(FlexibleChecker&&) noexcept = default;
FlexibleChecker& FlexibleChecker::operator=(FlexibleChecker&&) noexcept = default;

const Digraph& FlexibleChecker::graph() const { return *impl_->g; }
const Bipartition& FlexibleChecker::bipart() const { return impl_->bip; }

bool FlexibleChecker::hf_balanced(const GroupSpec& spec,
                                  std::span<const GroupElement> edge_vals) const {
    std::vector<GroupElement> phi = propagate_potential(*impl_->g, impl_->forest, spec, edge_vals);
    return !first_potential_violation(*impl_->g, spec, edge_vals, phi).has_value();
}

CheckResult FlexibleChecker::hf_check(const GroupSpec& spec,
                                      std::span<const GroupElement> edge_vals) const {
    const Digraph& g = *impl_->g;
    std::vector<GroupElement> phi = propagate_potential(g, impl_->forest, spec, edge_vals);
    auto e = first_potential_violation(g, spec, edge_vals, phi);
    if (!e) return {};
    Witness w = fundamental_witness(g, impl_->forest, *e);
    w.sum = flexible_edge_sum(g, spec, edge_vals, w);
    return {false, std::move(w)};
}

bool FlexibleChecker::wf_balanced(const GroupSpec& spec, std::span<const GroupElement> vertex_vals,
                                  std::span<const GroupElement> edge_vals) const {
    return !impl_->first_wf_violation(spec, vertex_vals, edge_vals).has_value();
}

CheckResult FlexibleChecker::wf_check(const GroupSpec& spec,
                                      std::span<const GroupElement> vertex_vals,
                                      std::span<const GroupElement> edge_vals) const {
    auto violation = impl_->first_wf_violation(spec, vertex_vals, edge_vals);
    if (!violation) return {};
    const Digraph& g = *impl_->g;
    Witness w;
    const Edge& edge = g.edge(violation->edge);
    switch (violation->kind) {
        case WfViolation::vertex_pair:
            w.vertices = {edge.tail, edge.head, edge.tail};
            w.steps = {{edge.id, StepDirection::forward}, {edge.id, StepDirection::reverse}};
            break;
        case WfViolation::loop_forward:
            w.vertices = {edge.tail, edge.tail};
            w.steps = {{edge.id, StepDirection::forward}};
            break;
        case WfViolation::loop_reverse:
            w.vertices = {edge.tail, edge.tail};
            w.steps = {{edge.id, StepDirection::reverse}};
            break;
        case WfViolation::residual:
            w = fundamental_witness(g, impl_->forest, violation->edge);
            break;
    }
    w.sum = whole_walk_sum(g, spec, vertex_vals, edge_vals, w);
    return {false, std::move(w)};
}

std::vector<GroupElement> FlexibleChecker::potential(const GroupSpec& spec,
                                                     std::span<const GroupElement> edge_vals,
                                                     int root_vertex) const {
    const Digraph& g = *impl_->g;
    const detail::Forest* forest = &impl_->forest;
    detail::Forest override_forest;
    if (root_vertex >= 0 && impl_->forest.root[root_vertex] != root_vertex) {
        override_forest = detail::bfs_forest(g, impl_->bip.component_of, root_vertex);
        forest = &override_forest;
    }
    std::vector<GroupElement> phi = propagate_potential(g, *forest, spec, edge_vals);
    if (auto e = first_potential_violation(g, spec, edge_vals, phi)) {
        Witness w = fundamental_witness(g, *forest, *e);
        w.sum = flexible_edge_sum(g, spec, edge_vals, w);
        throw UnbalancedError(std::move(w));
    }
    return phi;
}

CheckResult hf_check(const Digraph& g, const Labeling& f) {
    std::vector<GroupElement> evals = edge_values(f, g);
    return FlexibleChecker(g).hf_check(f.spec, evals);
}

Labeling hf_from_potential(const Digraph& g, const std::map<std::string, GroupElement>& phi,
                           const GroupSpec& spec) {
    Labeling out;
    out.spec = spec;
    auto value_of = [&](const std::string& v) -> GroupElement {
        auto it = phi.find(v);
        if (it == phi.end()) throw std::invalid_argument("vertex '" + v + "' has no potential value");
        return canonicalize(spec, it->second);
    };
    for (const Edge& e : g.edges())
        out.on_edges.emplace(e.id, subtract(spec, value_of(e.head), value_of(e.tail)));
    return out;
}

std::map<std::string, GroupElement> hf_potential_of(const Digraph& g, const Labeling& f,
                                                    const std::string& root) {
    std::vector<GroupElement> evals = edge_values(f, g);
    int root_ix = static_cast<int>(g.vertex_index(root));
    std::vector<GroupElement> phi = FlexibleChecker(g).potential(f.spec, evals, root_ix);
    std::map<std::string, GroupElement> out;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) out.emplace(g.vertex_id(v), phi[v]);
    return out;
}

CheckResult wf_check(const Digraph& g, const Labeling& h) {
    std::vector<GroupElement> vvals = vertex_values(h, g);
    std::vector<GroupElement> evals = edge_values(h, g);
    return FlexibleChecker(g).wf_check(h.spec, vvals, evals);
}

Labeling wf_from_params(const Digraph& g, const WfParams& params) {
    const GroupSpec& spec = params.spec;
    FlexibleChecker checker(g);
    const Bipartition& bip = checker.bipart();

    // Resolve one amplitude per weak component, keyed by the component root.
    const std::size_t n = g.vertex_count();
    std::vector<int> comp_root(bip.component_bipartite.size(), -1);
    for (std::size_t v = 0; v < n; ++v) {
        int c = bip.component_of[v];
        if (comp_root[c] < 0) comp_root[c] = static_cast<int>(v);
    }
    std::vector<GroupElement> amp(comp_root.size());
    for (std::size_t c = 0; c < comp_root.size(); ++c) {
        const std::string& root_id = g.vertex_id(comp_root[c]);
        auto it = params.amplitude.find(root_id);
        if (it == params.amplitude.end())
            throw std::invalid_argument("missing amplitude for component root '" + root_id + "'");
        amp[c] = canonicalize(spec, it->second);
        if (!bip.component_bipartite[c] && !is_zero(add(spec, amp[c], amp[c])))
            throw std::invalid_argument("amplitude at root '" + root_id +
                                        "' must satisfy a + a = 0 on a non-bipartite component");
    }
    if (params.amplitude.size() != comp_root.size())
        throw std::invalid_argument("amplitude map must have exactly one entry per weak component");

    std::vector<GroupElement> t(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto it = params.potential.find(g.vertex_id(v));
        if (it == params.potential.end())
            throw std::invalid_argument("missing potential for vertex '" + g.vertex_id(v) + "'");
        t[v] = canonicalize(spec, it->second);
    }
    for (int root : comp_root)
        if (!is_zero(t[root]))
            throw std::invalid_argument("potential must vanish at component root '" +
                                        g.vertex_id(root) + "'");

    Labeling out;
    out.spec = spec;
    for (std::size_t v = 0; v < n; ++v) {
        int c = bip.component_of[v];
        GroupElement value =
            bip.component_bipartite[c] && bip.side[v] == 1 ? negate(spec, amp[c]) : amp[c];
        out.on_vertices.emplace(g.vertex_id(v), std::move(value));
    }
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        GroupElement value = subtract(spec, t[g.head_index(e)], t[g.tail_index(e)]);
        int c = bip.component_of[g.tail_index(e)];
        if (!bip.component_bipartite[c]) value = add(spec, value, amp[c]);
        out.on_edges.emplace(g.edge(e).id, std::move(value));
    }
    return out;
}

WfParams wf_params_of(const Digraph& g, const Labeling& h) {
    std::vector<GroupElement> vvals = vertex_values(h, g);
    std::vector<GroupElement> evals = edge_values(h, g);
    FlexibleChecker checker(g);
    CheckResult verdict = checker.wf_check(h.spec, vvals, evals);
    if (!verdict) throw UnbalancedError(std::move(*verdict.witness));

    const Bipartition& bip = checker.bipart();
    std::vector<int> comp_root(bip.component_bipartite.size(), -1);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        int c = bip.component_of[v];
        if (comp_root[c] < 0) comp_root[c] = static_cast<int>(v);
    }

    WfParams params;
    params.spec = h.spec;
    for (int root : comp_root) params.amplitude.emplace(g.vertex_id(root), vvals[root]);

    std::vector<GroupElement> residual(evals.begin(), evals.end());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        int c = bip.component_of[g.tail_index(e)];
        if (!bip.component_bipartite[c])
            residual[e] = subtract(h.spec, residual[e], vvals[comp_root[c]]);
    }
    std::vector<GroupElement> t = checker.potential(h.spec, residual);
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        params.potential.emplace(g.vertex_id(v), t[v]);
    return params;
}

BalanceResult bf_balance(const Digraph& g, const Labeling& vertex_labels) {
    const GroupSpec& spec = vertex_labels.spec;
    std::vector<GroupElement> vvals = vertex_values(vertex_labels, g);
    FlexibleChecker checker(g);
    const Bipartition& bip = checker.bipart();

    detail::Accum acc;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        std::size_t t = g.tail_index(e), h = g.head_index(e);
        Witness w;
        if (t == h) {
            // The loop's 2-cycle (e, e-bar) sums to 2 g(v) whatever h(e) is.
            acc.reset(spec);
            acc.add(vvals[t]);
            acc.add(vvals[t]);
            if (acc.is_zero()) continue;
            w.vertices = {g.vertex_id(t), g.vertex_id(t), g.vertex_id(t)};
        } else {
            acc.reset(spec);
            acc.add(vvals[t]);
            acc.add(vvals[h]);
            if (acc.is_zero()) continue;
            w.vertices = {g.vertex_id(t), g.vertex_id(h), g.vertex_id(t)};
        }
        w.steps = {{g.edge(e).id, StepDirection::forward}, {g.edge(e).id, StepDirection::reverse}};
        w.sum = acc.value();
        return {false, std::nullopt, std::move(w)};
    }

    // Alternation holds; f = 0 on bipartite components and f = a elsewhere.
    std::vector<int> comp_root(bip.component_bipartite.size(), -1);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        int c = bip.component_of[v];
        if (comp_root[c] < 0) comp_root[c] = static_cast<int>(v);
    }
    Labeling completed;
    completed.spec = spec;
    completed.on_vertices = vertex_labels.on_vertices;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        int c = bip.component_of[g.tail_index(e)];
        completed.on_edges.emplace(g.edge(e).id, bip.component_bipartite[c]
                                                     ? zero_element(spec)
                                                     : vvals[comp_root[c]]);
    }
    return {true, std::move(completed), std::nullopt};
}

StructureDescriptor flexible_structure(const Digraph& g, FlexibleFamily family) {
    Bipartition bip = bipartition(g);
    std::vector<int> comp_size(bip.component_bipartite.size(), 0);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) ++comp_size[bip.component_of[v]];

    StructureDescriptor d;
    for (std::size_t c = 0; c < comp_size.size(); ++c) {
        const bool bip_c = bip.component_bipartite[c];
        switch (family) {
            case FlexibleFamily::HF:
                d.a_exponent += comp_size[c] - 1;
                break;
            case FlexibleFamily::WF:
                if (bip_c)
                    d.a_exponent += comp_size[c];
                else {
                    d.a_exponent += comp_size[c] - 1;
                    d.a2_exponent += 1;
                }
                break;
            case FlexibleFamily::BF:
                if (bip_c)
                    d.a_exponent += 1;
                else
                    d.a2_exponent += 1;
                break;
        }
    }
    return d;
}

}  // namespace gain
