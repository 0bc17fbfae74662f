#pragma once

#include <map>
#include <memory>
#include <span>

#include "gain/labeling.hpp"

namespace gain {

/**
 * Balance checking for the flexible semantics (edges traversable both ways,
 * the reverse traversal contributing the negated value). Precomputes the
 * bipartition and a spanning forest once so that many labelings can be
 * checked against one graph cheaply.
 */
class FlexibleChecker {
public:
    explicit FlexibleChecker(const Digraph& g);
    ~FlexibleChecker();
    FlexibleChecker(FlexibleChecker&&) noexcept;
    FlexibleChecker& operator=(FlexibleChecker&&) noexcept;

    const Digraph& graph() const;
    const Bipartition& bipart() const;

    /// Values are index-keyed in graph declaration order and canonical.
    bool hf_balanced(const GroupSpec& spec, std::span<const GroupElement> edge_vals) const;
    CheckResult hf_check(const GroupSpec& spec, std::span<const GroupElement> edge_vals) const;

    bool wf_balanced(const GroupSpec& spec, std::span<const GroupElement> vertex_vals,
                     std::span<const GroupElement> edge_vals) const;
    CheckResult wf_check(const GroupSpec& spec, std::span<const GroupElement> vertex_vals,
                         std::span<const GroupElement> edge_vals) const;

    /// Vertex potential of a balanced edge labeling, zero at the root of each
    /// weak component (the component of `root_vertex` uses it as root when
    /// given). Throws UnbalancedError otherwise.
    std::vector<GroupElement> potential(const GroupSpec& spec, std::span<const GroupElement> edge_vals,
                                        int root_vertex = -1) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Balanced iff a vertex potential exists with f(e) = phi(head) - phi(tail)
/// per weak component; the witness on failure is the first violated
/// fundamental cycle in spanning-tree order.
CheckResult hf_check(const Digraph& g, const Labeling& f);

/// f(e) = phi(head) - phi(tail); the result is always balanced.
Labeling hf_from_potential(const Digraph& g, const std::map<std::string, GroupElement>& phi,
                           const GroupSpec& spec);

/// Inverse of hf_from_potential with phi(root) = 0 (other weak components
/// are rooted at their first vertex). Throws UnbalancedError with the
/// violating cycle if f is not balanced.
std::map<std::string, GroupElement> hf_potential_of(const Digraph& g, const Labeling& f,
                                                    const std::string& root);

/**
 * Parameters of a balanced whole-graph labeling: one vertex amplitude per
 * weak component (keyed by the component's root id) and a potential that
 * vanishes at each root. Non-bipartite components require a + a = 0.
 */
struct WfParams {
    GroupSpec spec;
    std::map<std::string, GroupElement> amplitude;
    std::map<std::string, GroupElement> potential;
};

CheckResult wf_check(const Digraph& g, const Labeling& h);
Labeling wf_from_params(const Digraph& g, const WfParams& params);
WfParams wf_params_of(const Digraph& g, const Labeling& h);

struct BalanceResult {
    bool balanceable = true;
    std::optional<Labeling> completed;  // full balanced labeling on success
    std::optional<Witness> reason;      // violating cycle otherwise
    explicit operator bool() const { return balanceable; }
};

/// A vertex labeling is balanceable iff it alternates along the bipartition
/// (with a + a = 0 forced on non-bipartite components). The completion uses
/// f = 0 on bipartite components and f = a on non-bipartite ones.
BalanceResult bf_balance(const Digraph& g, const Labeling& vertex_labels);

enum class FlexibleFamily { HF, BF, WF };

/// Exponents are summed over weak components.
StructureDescriptor flexible_structure(const Digraph& g, FlexibleFamily family);

}  // namespace gain
