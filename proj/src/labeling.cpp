#include "gain/labeling.hpp"

#include <fstream>
#include <sstream>

namespace gain {

namespace {

unsigned long long checked_pow(unsigned long long base, int exp) {
    unsigned long long out = 1;
    for (int i = 0; i < exp; ++i)
        if (__builtin_mul_overflow(out, base, &out))
            throw std::overflow_error("cardinality overflows 64 bits");
    return out;
}

}  // namespace

Labeling parse_labeling(std::string_view text, const Digraph& g, const GroupSpec& spec) {
    Labeling l;
    l.spec = spec;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        bool last = end == text.size();
        pos = end + 1;
        ++lineno;
        // Trim a trailing carriage return from CRLF files.
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::size_t first_nonspace = line.find_first_not_of(" \t");
        if (first_nonspace == std::string_view::npos || line[first_nonspace] == '#') {
            if (last) break;
            continue;
        }
        std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos)
            throw GraphParseError(lineno, "expected <id><TAB><coords>");
        std::string id(line.substr(0, tab));
        std::string_view coords = line.substr(tab + 1);

        const bool is_v = g.has_vertex(id);
        const bool is_e = g.has_edge(id);
        if (is_v && is_e)
            throw GraphParseError(lineno, "id '" + id + "' names both a vertex and an edge");
        if (!is_v && !is_e)
            throw GraphParseError(lineno, "id '" + id + "' is not a vertex or edge of the graph");
        GroupElement value;
        try {
            value = parse_element(coords, spec);
        } catch (const std::invalid_argument& ex) {
            throw GraphParseError(lineno, ex.what());
        }
        auto& target = is_v ? l.on_vertices : l.on_edges;
        if (!target.emplace(id, std::move(value)).second)
            throw GraphParseError(lineno, "duplicate label for id '" + id + "'");
        if (last) break;
    }
    return l;
}

Labeling load_labeling(const std::filesystem::path& path, const Digraph& g, const GroupSpec& spec) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open labeling file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_labeling(buf.str(), g, spec);
}

std::string labeling_str(const Labeling& l, const Digraph& g) {
    std::ostringstream os;
    for (const auto& v : g.vertex_ids()) {
        auto it = l.on_vertices.find(v);
        if (it != l.on_vertices.end()) os << v << '\t' << element_str(it->second) << '\n';
    }
    for (const auto& e : g.edges()) {
        auto it = l.on_edges.find(e.id);
        if (it != l.on_edges.end()) os << e.id << '\t' << element_str(it->second) << '\n';
    }
    return os.str();
}

std::vector<GroupElement> vertex_values(const Labeling& l, const Digraph& g) {
    std::vector<GroupElement> out;
    out.reserve(g.vertex_count());
    for (const auto& v : g.vertex_ids()) {
        auto it = l.on_vertices.find(v);
        if (it == l.on_vertices.end())
            throw std::invalid_argument("vertex '" + v + "' is unlabeled");
        out.push_back(canonicalize(l.spec, it->second));
    }
    return out;
}

std::vector<GroupElement> edge_values(const Labeling& l, const Digraph& g) {
    std::vector<GroupElement> out;
    out.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        auto it = l.on_edges.find(e.id);
        if (it == l.on_edges.end())
            throw std::invalid_argument("edge '" + e.id + "' is unlabeled");
        out.push_back(canonicalize(l.spec, it->second));
    }
    return out;
}

Labeling edge_labeling(const Digraph& g, const GroupSpec& spec, std::span<const GroupElement> values) {
    Labeling l;
    l.spec = spec;
    for (std::size_t e = 0; e < g.edge_count(); ++e) l.on_edges.emplace(g.edge(e).id, values[e]);
    return l;
}

Labeling vertex_labeling(const Digraph& g, const GroupSpec& spec, std::span<const GroupElement> values) {
    Labeling l;
    l.spec = spec;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        l.on_vertices.emplace(g.vertex_id(v), values[v]);
    return l;
}

Labeling full_labeling(const Digraph& g, const GroupSpec& spec,
                       std::span<const GroupElement> vertex_vals,
                       std::span<const GroupElement> edge_vals) {
    Labeling l = vertex_labeling(g, spec, vertex_vals);
    for (std::size_t e = 0; e < g.edge_count(); ++e) l.on_edges.emplace(g.edge(e).id, edge_vals[e]);
    return l;
}

std::optional<unsigned long long> StructureDescriptor::cardinality(const GroupSpec& spec) const {
    if (a_exponent > 0 && !spec.finite()) return std::nullopt;
    unsigned long long card = 1;
    if (a_exponent > 0) card = checked_pow(spec.cardinality(), a_exponent);
    if (a2_exponent > 0) {
        unsigned long long a2 = involution_count(spec);
        unsigned long long pow_a2 = checked_pow(a2, a2_exponent);
        if (__builtin_mul_overflow(card, pow_a2, &card))
            throw std::overflow_error("cardinality overflows 64 bits");
    }
    return card;
}

std::string StructureDescriptor::str() const {
    std::ostringstream os;
    bool first = true;
    if (a2_exponent == 1) {
        os << "A_2";
        first = false;
    } else if (a2_exponent > 1) {
        os << "A_2^" << a2_exponent;
        first = false;
    }
    if (a_exponent > 0) {
        if (!first) os << " x ";
        os << "A";
        if (a_exponent > 1) os << "^" << a_exponent;
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

}  // namespace gain
