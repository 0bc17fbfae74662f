#pragma once

#include <map>
#include <memory>
#include <span>
#include <utility>

#include "gain/labeling.hpp"

namespace gain {

/**
 * Balance checking for the rigid semantics (forward-only traversal).
 * Precomputes the strongly connected components and a per-component
 * spanning forest once; cross edges are unconstrained, intra-component
 * edges must be a potential difference.
 */
class RigidChecker {
public:
    explicit RigidChecker(const Digraph& g);
    ~RigidChecker();
    RigidChecker(RigidChecker&&) noexcept;
    RigidChecker& operator=(RigidChecker&&) noexcept;

    const Digraph& graph() const;
    const SccDecomposition& components() const;

    bool hr_balanced(const GroupSpec& spec, std::span<const GroupElement> edge_vals) const;
    /// The witness on failure is a directed cycle inside one strongly
    /// connected component, assembled from shortest directed paths
    /// (lexicographically smallest edge-id sequence among equals).
    CheckResult hr_check(const GroupSpec& spec, std::span<const GroupElement> edge_vals) const;

    bool wr_balanced(const GroupSpec& spec, std::span<const GroupElement> vertex_vals,
                     std::span<const GroupElement> edge_vals) const;
    CheckResult wr_check(const GroupSpec& spec, std::span<const GroupElement> vertex_vals,
                         std::span<const GroupElement> edge_vals) const;

    /// Per-component potential of a balanced edge labeling, zero at each
    /// component's first vertex. Throws UnbalancedError otherwise.
    std::vector<GroupElement> potential(const GroupSpec& spec,
                                        std::span<const GroupElement> edge_vals) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

CheckResult hr_check(const Digraph& g, const Labeling& f);

/**
 * Parameters of a balanced edge labeling: a potential over all vertices
 * vanishing at each strongly connected component's first vertex, plus a
 * free value per cross edge.
 */
struct HrParams {
    GroupSpec spec;
    std::map<std::string, GroupElement> potential;
    std::map<std::string, GroupElement> cross_values;
};

Labeling hr_from_params(const Digraph& g, const HrParams& params);
HrParams hr_params_of(const Digraph& g, const Labeling& f);

/// h(v) = g(v), h(e) = -g(tail(e)); always balanced.
Labeling br_balance(const Digraph& g, const Labeling& vertex_labels);

/// h -> (h|V, f) with f(e) = h(e) + h(tail(e)); verdict-preserving.
std::pair<Labeling, Labeling> wr_split(const Digraph& g, const Labeling& h);
/// Inverse of wr_split: h(e) = f(e) - g(tail(e)).
Labeling wr_join(const Digraph& g, const Labeling& vertex_labels, const Labeling& edge_labels);

CheckResult wr_check(const Digraph& g, const Labeling& h);

enum class RigidFamily { HR, BR, WR };

/// HR: A^(|V| - kbar + r); BR: A^|V|; WR: A^(2|V| - kbar + r).
StructureDescriptor rigid_structure(const Digraph& g, RigidFamily family);

}  // namespace gain
