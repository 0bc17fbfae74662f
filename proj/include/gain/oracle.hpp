#pragma once

#include <memory>
#include <span>

#include "gain/labeling.hpp"

namespace gain {

inline constexpr int kCycleEdgeCap = 12;
inline constexpr unsigned long long kEnumerationCap = 10'000'000;

/**
 * All edge-distinct closed walks of the graph in one traversal mode,
 * deduplicated up to rotation of the starting point (reversals are kept;
 * a cycle and its reversal vanish together). Cycles are stored with the
 * lexicographically smallest rotation first and ordered by (length, steps).
 */
struct CycleSet {
    WalkMode mode = WalkMode::flexible;
    std::vector<Witness> cycles;
};

/// Depth-first enumeration over edge sequences; complete for graphs within
/// the cap. Throws CapExceeded when |E| > max_edges.
CycleSet enumerate_cycles(const Digraph& g, WalkMode mode, int max_edges = kCycleEdgeCap);

/// The six function groups plus the undirected families used by the
/// orientation-intersection statement (UH: edges only, UW: whole graph).
enum class Family { HF, BF, WF, HR, BR, WR, UH, UW };

WalkMode family_mode(Family family);
bool family_uses_vertices(Family family);
const char* family_name(Family family);

/// Label sum along a closed walk: vertex values of the step origins when
/// included, edge values signed by traversal for the flexible mode,
/// direction-blind for the undirected mode.
GroupElement walk_sum(const Digraph& g, const Witness& w, const GroupSpec& spec,
                      std::span<const GroupElement> vertex_vals,
                      std::span<const GroupElement> edge_vals, WalkMode mode,
                      bool include_vertices);
GroupElement walk_sum(const Digraph& g, const Witness& w, const Labeling& labels, Family family);

/**
 * Precompiled cycle sums over one CycleSet, for sweeping many labelings
 * against one graph.
 */
class CycleEvaluator {
public:
    CycleEvaluator(const Digraph& g, const CycleSet& cycles);
    ~CycleEvaluator();
    CycleEvaluator(CycleEvaluator&&) noexcept;
    CycleEvaluator& operator=(CycleEvaluator&&) noexcept;

    /// Index of the first cycle with nonzero sum, -1 when all vanish.
    int first_violation(const GroupSpec& spec, std::span<const GroupElement> vertex_vals,
                        std::span<const GroupElement> edge_vals, bool include_vertices) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Literal application of the balance definition: every enumerated cycle
/// must sum to zero. Families BF and BR are existential and not accepted
/// here (see exhaustive_count).
CheckResult check_by_definition(const Digraph& g, const Labeling& labels, Family family,
                                int max_edges = kCycleEdgeCap);

/// Number of labelings passing the definitional check; for BF and BR, the
/// number of vertex labelings admitting some balancing edge labeling
/// (searched exhaustively). Throws CapExceeded when |A|^#slots exceeds
/// max_labelings.
unsigned long long exhaustive_count(const Digraph& g, Family family, const GroupSpec& spec,
                                    unsigned long long max_labelings = kEnumerationCap,
                                    int max_cycle_edges = kCycleEdgeCap);

struct OrientationAgreement {
    bool undirected_balanced = true;
    bool intersection_balanced = true;
    bool agree = true;
};

/**
 * The orientation-intersection statement: a labeling is balanced on the
 * undirected graph iff it is rigid-balanced under every one of the 2^|E|
 * orientations. Precompiles all orientations once so that many labelings
 * can be tested against one graph.
 */
class OrientationSweep {
public:
    explicit OrientationSweep(const Digraph& g, int max_edges = kOrientationEdgeCap,
                              int max_cycle_edges = kCycleEdgeCap);
    ~OrientationSweep();
    OrientationSweep(OrientationSweep&&) noexcept;
    OrientationSweep& operator=(OrientationSweep&&) noexcept;

    std::size_t orientation_count() const;

    /// Edge statement: undirected balance vs. the conjunction of hr_check.
    OrientationAgreement check_edges(const GroupSpec& spec,
                                     std::span<const GroupElement> edge_vals) const;
    /// Whole-graph statement: undirected whole-graph balance vs. wr_check.
    OrientationAgreement check_whole(const GroupSpec& spec,
                                     std::span<const GroupElement> vertex_vals,
                                     std::span<const GroupElement> edge_vals) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

OrientationAgreement orientation_intersection_check(const Digraph& g, const Labeling& edge_labels,
                                                    int max_edges = kOrientationEdgeCap);
OrientationAgreement orientation_intersection_check_whole(const Digraph& g, const Labeling& labels,
                                                          int max_edges = kOrientationEdgeCap);

}  // namespace gain
