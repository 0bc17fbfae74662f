#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "gain/digraph.hpp"
#include "gain/group.hpp"
#include "gain/labeling.hpp"

namespace testsupport {

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(FIXTURE_DIR) / name;
}

inline gain::Digraph fixture_graph(const std::string& name) {
    return gain::load_graph(fixture(name));
}

inline gain::GroupSpec Z(const std::string& text) { return gain::parse_group_spec(text); }

inline gain::GroupElement el(std::initializer_list<long long> coords) {
    return gain::GroupElement(coords);
}

// Random multigraph with loops and parallel edges permitted; vertices v1..vn,
// edges e1..em.
inline gain::Digraph random_digraph(std::mt19937_64& rng, int max_vertices, int max_edges) {
    int n = 1 + static_cast<int>(rng() % max_vertices);
    int m = static_cast<int>(rng() % (max_edges + 1));
    std::vector<std::string> vertices;
    for (int i = 1; i <= n; ++i) vertices.push_back("v" + std::to_string(i));
    std::vector<gain::Edge> edges;
    for (int i = 1; i <= m; ++i) {
        std::string t = vertices[rng() % n];
        std::string h = vertices[rng() % n];
        edges.push_back({"e" + std::to_string(i), t, h});
    }
    return gain::Digraph(std::move(vertices), std::move(edges));
}

// All assignments of `slots` values drawn from `elems`, via callback.
template <typename Fn>
void for_all_assignments(const std::vector<gain::GroupElement>& elems, std::size_t slots, Fn&& fn) {
    std::vector<gain::GroupElement> current(slots, elems.empty() ? gain::GroupElement{} : elems[0]);
    std::vector<std::size_t> digit(slots, 0);
    for (;;) {
        fn(current);
        std::size_t i = 0;
        while (i < slots) {
            if (++digit[i] < elems.size()) {
                current[i] = elems[digit[i]];
                break;
            }
            digit[i] = 0;
            current[i] = elems[0];
            ++i;
        }
        if (i == slots) return;
    }
}

}  // namespace testsupport
