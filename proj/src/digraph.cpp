#include "gain/digraph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "forest.hpp"

namespace gain {

Digraph::Digraph(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (!vertex_ix_.emplace(vertices_[i], i).second)
            throw std::invalid_argument("duplicate vertex id '" + vertices_[i] + "'");
    for (const Edge& e : edges_) {
        for (const std::string* end : {&e.tail, &e.head}) {
            if (!vertex_ix_.count(*end)) {
                vertex_ix_.emplace(*end, vertices_.size());
                vertices_.push_back(*end);
            }
        }
    }
    tail_.reserve(edges_.size());
    head_.reserve(edges_.size());
    incident_.resize(vertices_.size());
    out_.resize(vertices_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (!edge_ix_.emplace(edges_[e].id, e).second)
            throw std::invalid_argument("duplicate edge id '" + edges_[e].id + "'");
        std::size_t t = vertex_ix_.at(edges_[e].tail);
        std::size_t h = vertex_ix_.at(edges_[e].head);
        tail_.push_back(t);
        head_.push_back(h);
        incident_[t].emplace_back(e, true);
        if (h != t) incident_[h].emplace_back(e, false);
        out_[t].push_back(e);
    }
}

bool Digraph::has_vertex(std::string_view id) const {
    return vertex_ix_.find(std::string(id)) != vertex_ix_.end();
}

bool Digraph::has_edge(std::string_view id) const {
    return edge_ix_.find(std::string(id)) != edge_ix_.end();
}

std::size_t Digraph::vertex_index(std::string_view id) const {
    auto it = vertex_ix_.find(std::string(id));
    if (it == vertex_ix_.end()) throw std::out_of_range("unknown vertex id '" + std::string(id) + "'");
    return it->second;
}

std::size_t Digraph::edge_index(std::string_view id) const {
    auto it = edge_ix_.find(std::string(id));
    if (it == edge_ix_.end()) throw std::out_of_range("unknown edge id '" + std::string(id) + "'");
    return it->second;
}

Digraph parse_graph(std::string_view text, bool strict) {
    std::vector<std::string> vertices;
    std::set<std::string> declared;
    struct PendingEdge {
        Edge edge;
        int line;
    };
    std::vector<PendingEdge> pending;
    std::set<std::string> edge_ids;

    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(pos, end - pos));
        pos = end + 1;
        ++lineno;

        std::istringstream is(line);
        std::vector<std::string> tok;
        for (std::string t; is >> t;) tok.push_back(std::move(t));
        if (tok.empty() || tok[0][0] == '#') {
            if (pos > text.size()) break;
            continue;
        }
        if (tok[0] == "v") {
            if (tok.size() != 2) throw GraphParseError(lineno, "expected: v <vertex-id>");
            if (!declared.insert(tok[1]).second)
                throw GraphParseError(lineno, "duplicate vertex id '" + tok[1] + "'");
            vertices.push_back(tok[1]);
        } else if (tok[0] == "e") {
            if (tok.size() != 4) throw GraphParseError(lineno, "expected: e <edge-id> <tail> <head>");
            if (!edge_ids.insert(tok[1]).second)
                throw GraphParseError(lineno, "duplicate edge id '" + tok[1] + "'");
            pending.push_back({Edge{tok[1], tok[2], tok[3]}, lineno});
        } else {
            throw GraphParseError(lineno, "unknown directive '" + tok[0] + "'");
        }
        if (pos > text.size()) break;
    }

    std::vector<Edge> edges;
    edges.reserve(pending.size());
    for (auto& p : pending) {
        if (strict) {
            if (!declared.count(p.edge.tail))
                throw GraphParseError(p.line, "edge '" + p.edge.id + "' references undeclared vertex '" +
                                                  p.edge.tail + "'");
            if (!declared.count(p.edge.head))
                throw GraphParseError(p.line, "edge '" + p.edge.id + "' references undeclared vertex '" +
                                                  p.edge.head + "'");
        }
        edges.push_back(std::move(p.edge));
    }
    return Digraph(std::move(vertices), std::move(edges));
}

Digraph load_graph(const std::filesystem::path& path, bool strict) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str(), strict);
}

std::vector<int> weak_component_index(const Digraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<int> comp(n, -1);
    int next = 0;
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (auto [e, at_tail] : g.incident(u)) {
                std::size_t other = at_tail ? g.head_index(e) : g.tail_index(e);
                if (comp[other] < 0) {
                    comp[other] = next;
                    stack.push_back(other);
                }
            }
        }
        ++next;
    }
    return comp;
}

std::vector<std::vector<std::string>> weak_components(const Digraph& g) {
    std::vector<int> comp = weak_component_index(g);
    int count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::vector<std::string>> out(count);
    for (std::size_t v = 0; v < g.vertex_count(); ++v) out[comp[v]].push_back(g.vertex_id(v));
    return out;
}

bool validate_witness(const Digraph& g, const Witness& w, WalkMode mode) {
    if (w.steps.empty()) return false;
    if (w.vertices.size() != w.steps.size() + 1) return false;
    if (w.vertices.front() != w.vertices.back()) return false;
    std::set<std::pair<std::size_t, StepDirection>> used_copies;
    std::set<std::size_t> used_edges;
    for (std::size_t i = 0; i < w.steps.size(); ++i) {
        if (!g.has_edge(w.steps[i].edge)) return false;
        std::size_t e = g.edge_index(w.steps[i].edge);
        const bool fwd = w.steps[i].dir == StepDirection::forward;
        if (mode == WalkMode::rigid && !fwd) return false;
        const std::string& from = fwd ? g.edge(e).tail : g.edge(e).head;
        const std::string& to = fwd ? g.edge(e).head : g.edge(e).tail;
        if (w.vertices[i] != from || w.vertices[i + 1] != to) return false;
        if (mode == WalkMode::flexible) {
            if (!used_copies.emplace(e, w.steps[i].dir).second) return false;
        } else {
            if (!used_edges.insert(e).second) return false;
        }
    }
    return true;
}

Bipartition bipartition(const Digraph& g) {
    Bipartition bip;
    bip.component_of = weak_component_index(g);
    const std::size_t n = g.vertex_count();
    int ncomp = n == 0 ? 0 : *std::max_element(bip.component_of.begin(), bip.component_of.end()) + 1;
    bip.component_bipartite.assign(ncomp, 1);
    bip.side.assign(n, -1);
    if (n == 0) return bip;

    detail::Forest forest = detail::bfs_forest(g, bip.component_of);
    std::vector<int> parity(n, 0);
    for (int v : forest.bfs_order)
        parity[v] = forest.parent[v] < 0 ? 0 : parity[forest.parent[v]] ^ 1;

    // An edge joining equal parities (or any loop) is an odd closed walk.
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        std::size_t t = g.tail_index(e), h = g.head_index(e);
        if (t != h && parity[t] != parity[h]) continue;
        int comp = bip.component_of[t];
        bip.component_bipartite[comp] = 0;
        if (bip.odd_cycle) continue;
        Witness odd;
        if (t == h) {
            odd.vertices = {g.vertex_id(t), g.vertex_id(t)};
            odd.steps = {{g.edge(e).id, StepDirection::forward}};
        } else {
            detail::TreeWalk walk = detail::tree_path(g, forest, static_cast<int>(t), static_cast<int>(h));
            for (int v : walk.vertices) odd.vertices.push_back(g.vertex_id(v));
            for (auto [pe, fwd] : walk.steps)
                odd.steps.push_back({g.edge(pe).id, fwd ? StepDirection::forward : StepDirection::reverse});
            odd.vertices.push_back(g.vertex_id(t));
            odd.steps.push_back({g.edge(e).id, StepDirection::reverse});
        }
        bip.odd_cycle = std::move(odd);
    }

    for (std::size_t v = 0; v < n; ++v) {
        if (!bip.component_bipartite[bip.component_of[v]]) continue;
        bip.side[v] = parity[v];
        bip.classes.emplace(g.vertex_id(v), parity[v]);
    }
    bip.bipartite =
        std::all_of(bip.component_bipartite.begin(), bip.component_bipartite.end(), [](char b) { return b; });
    return bip;
}

SccDecomposition scc(const Digraph& g) {
    const std::size_t n = g.vertex_count();
    SccDecomposition out;
    out.component_of.assign(n, -1);
    out.edge_is_cross.assign(g.edge_count(), 0);
    if (n == 0) return out;

    // Iterative Tarjan.
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    int next_index = 0, next_comp = 0;
    struct Frame {
        int v;
        std::size_t ei;
    };
    std::vector<Frame> frames;
    for (std::size_t s = 0; s < n; ++s) {
        if (index[s] >= 0) continue;
        frames.push_back({static_cast<int>(s), 0});
        index[s] = low[s] = next_index++;
        stack.push_back(static_cast<int>(s));
        on_stack[s] = 1;
        while (!frames.empty()) {
            Frame& fr = frames.back();
            const auto& outs = g.out_edges(fr.v);
            if (fr.ei < outs.size()) {
                std::size_t w = g.head_index(outs[fr.ei++]);
                if (index[w] < 0) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(static_cast<int>(w));
                    on_stack[w] = 1;
                    frames.push_back({static_cast<int>(w), 0});
                } else if (on_stack[w]) {
                    low[fr.v] = std::min(low[fr.v], index[w]);
                }
            } else {
                int v = fr.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == index[v]) {
                    for (;;) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        out.component_of[w] = next_comp;
                        if (w == v) break;
                    }
                    ++next_comp;
                }
            }
        }
    }

    // Renumber components by first vertex appearance.
    std::vector<int> renumber(next_comp, -1);
    int counted = 0;
    for (std::size_t v = 0; v < n; ++v) {
        int& target = renumber[out.component_of[v]];
        if (target < 0) target = counted++;
    }
    for (std::size_t v = 0; v < n; ++v) out.component_of[v] = renumber[out.component_of[v]];
    out.component_count = counted;

    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        if (out.component_of[g.tail_index(e)] != out.component_of[g.head_index(e)]) {
            out.edge_is_cross[e] = 1;
            out.cross_edges.push_back(g.edge(e).id);
        }
    }
    return out;
}

void for_each_orientation(const Digraph& g, const std::function<void(const Digraph&)>& fn,
                          int max_edges) {
    const std::size_t m = g.edge_count();
    if (static_cast<int>(m) > max_edges)
        throw CapExceeded("orientation enumeration over " + std::to_string(m) +
                          " edges exceeds the cap of " + std::to_string(max_edges));
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
        std::vector<Edge> edges = g.edges();
        for (std::size_t e = 0; e < m; ++e)
            if (mask & (1ull << e)) std::swap(edges[e].tail, edges[e].head);
        fn(Digraph(g.vertex_ids(), std::move(edges)));
    }
}

std::vector<Digraph> orientations(const Digraph& g, int max_edges) {
    std::vector<Digraph> out;
    out.reserve(std::size_t{1} << g.edge_count());
    for_each_orientation(g, [&](const Digraph& d) { out.push_back(d); }, max_edges);
    return out;
}

}  // namespace gain
