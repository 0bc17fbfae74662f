#include "gain/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "accum.hpp"
#include "gain/rigid.hpp"

namespace gain {

namespace {

using StepKey = std::pair<int, int>;  // (edge index, 0 forward / 1 reverse)

std::vector<StepKey> smallest_rotation(std::vector<StepKey> steps) {
    std::vector<StepKey> best = steps;
    for (std::size_t shift = 1; shift < steps.size(); ++shift) {
        std::rotate(steps.begin(), steps.begin() + 1, steps.end());
        if (steps < best) best = steps;
    }
    return best;
}

struct StepOption {
    int edge;
    bool forward;
    std::size_t to;
};

}  // namespace

WalkMode family_mode(Family family) {
    switch (family) {
        case Family::HF:
        case Family::BF:
        case Family::WF:
            return WalkMode::flexible;
        case Family::HR:
        case Family::BR:
        case Family::WR:
            return WalkMode::rigid;
        case Family::UH:
        case Family::UW:
            return WalkMode::undirected;
    }
    return WalkMode::flexible;
}

bool family_uses_vertices(Family family) {
    switch (family) {
        case Family::WF:
        case Family::WR:
        case Family::UW:
        case Family::BF:
        case Family::BR:
            return true;
        default:
            return false;
    }
}

const char* family_name(Family family) {
    switch (family) {
        case Family::HF: return "HF";
        case Family::BF: return "BF";
        case Family::WF: return "WF";
        case Family::HR: return "HR";
        case Family::BR: return "BR";
        case Family::WR: return "WR";
        case Family::UH: return "UH";
        case Family::UW: return "UW";
    }
    return "?";
}

CycleSet enumerate_cycles(const Digraph& g, WalkMode mode, int max_edges) {
    const std::size_t m = g.edge_count();
    if (static_cast<int>(m) > max_edges)
        throw CapExceeded("cycle enumeration over " + std::to_string(m) +
                          " edges exceeds the cap of " + std::to_string(max_edges));

    // Step options per vertex, in (edge, forward-first) order.
    const std::size_t n = g.vertex_count();
    std::vector<std::vector<StepOption>> options(n);
    for (std::size_t e = 0; e < m; ++e) {
        std::size_t t = g.tail_index(e), h = g.head_index(e);
        options[t].push_back({static_cast<int>(e), true, h});
        if (mode != WalkMode::rigid) options[h].push_back({static_cast<int>(e), false, t});
    }

    // Usage bits: one per (edge, direction) copy in the flexible mode, one
    // per edge otherwise.
    auto bit_of = [&](const StepOption& s) -> std::uint64_t {
        return mode == WalkMode::flexible ? 1ull << (2 * s.edge + (s.forward ? 0 : 1))
                                          : 1ull << s.edge;
    };

    std::set<std::vector<StepKey>> canonical;
    std::vector<StepKey> path;
    std::uint64_t used = 0;

    // Every cycle is collected from each rotation; restricting the search to
    // vertices at or above the start enumerates it from its lowest vertex
    // only, and the rotation-canonical set removes the remaining duplicates.
    auto dfs = [&](auto&& self, std::size_t start, std::size_t cur) -> void {
        for (const StepOption& s : options[cur]) {
            if (s.to < start) continue;
            std::uint64_t bit = bit_of(s);
            if (used & bit) continue;
            used |= bit;
            path.emplace_back(s.edge, s.forward ? 0 : 1);
            if (s.to == start) canonical.insert(smallest_rotation(path));
            self(self, start, s.to);
            path.pop_back();
            used &= ~bit;
        }
    };
    for (std::size_t start = 0; start < n; ++start) dfs(dfs, start, start);

    CycleSet out;
    out.mode = mode;
    for (const auto& steps : canonical) {
        Witness w;
        for (auto [e, dir] : steps) {
            std::size_t origin = dir == 0 ? g.tail_index(e) : g.head_index(e);
            w.vertices.push_back(g.vertex_id(origin));
            w.steps.push_back({g.edge(e).id, dir == 0 ? StepDirection::forward : StepDirection::reverse});
        }
        w.vertices.push_back(w.vertices.front());
        out.cycles.push_back(std::move(w));
    }
    std::sort(out.cycles.begin(), out.cycles.end(), [](const Witness& a, const Witness& b) {
        if (a.steps.size() != b.steps.size()) return a.steps.size() < b.steps.size();
        for (std::size_t i = 0; i < a.steps.size(); ++i) {
            if (a.steps[i].edge != b.steps[i].edge) return a.steps[i].edge < b.steps[i].edge;
            if (a.steps[i].dir != b.steps[i].dir) return a.steps[i].dir < b.steps[i].dir;
        }
        return false;
    });
    return out;
}

GroupElement walk_sum(const Digraph& g, const Witness& w, const GroupSpec& spec,
                      std::span<const GroupElement> vertex_vals,
                      std::span<const GroupElement> edge_vals, WalkMode mode,
                      bool include_vertices) {
    detail::Accum acc;
    acc.reset(spec);
    for (std::size_t i = 0; i < w.steps.size(); ++i) {
        if (include_vertices) acc.add(vertex_vals[g.vertex_index(w.vertices[i])]);
        std::size_t e = g.edge_index(w.steps[i].edge);
        if (mode == WalkMode::flexible && w.steps[i].dir == StepDirection::reverse)
            acc.sub(edge_vals[e]);
        else
            acc.add(edge_vals[e]);
    }
    return acc.value();
}

GroupElement walk_sum(const Digraph& g, const Witness& w, const Labeling& labels, Family family) {
    const bool vertices = family_uses_vertices(family);
    std::vector<GroupElement> vvals;
    if (vertices) vvals = vertex_values(labels, g);
    std::vector<GroupElement> evals = edge_values(labels, g);
    return walk_sum(g, w, labels.spec, vvals, evals, family_mode(family), vertices);
}

struct CycleEvaluator::Impl {
    struct CompiledCycle {
        std::vector<int> vertex_slots;               // step origins
        std::vector<std::pair<int, int>> edge_terms;  // (edge index, +1/-1)
    };
    std::vector<CompiledCycle> cycles;

    Impl(const Digraph& g, const CycleSet& set) {
        cycles.reserve(set.cycles.size());
        for (const Witness& w : set.cycles) {
            CompiledCycle c;
            for (std::size_t i = 0; i < w.steps.size(); ++i) {
                c.vertex_slots.push_back(static_cast<int>(g.vertex_index(w.vertices[i])));
                int e = static_cast<int>(g.edge_index(w.steps[i].edge));
                int sign = set.mode == WalkMode::flexible && w.steps[i].dir == StepDirection::reverse
                               ? -1
                               : 1;
                c.edge_terms.emplace_back(e, sign);
            }
            cycles.push_back(std::move(c));
        }
    }
};

CycleEvaluator::CycleEvaluator(const Digraph& g, const CycleSet& cycles)
    : impl_(std::make_unique<Impl>(g, cycles)) {}
CycleEvaluator::~CycleEvaluator() = default;
CycleEvaluator::CycleEvaluator(CycleEvaluator&&) noexcept = default;
CycleEvaluator& CycleEvaluator::operator=(CycleEvaluator&&) noexcept = default;

int CycleEvaluator::first_violation(const GroupSpec& spec,
                                    std::span<const GroupElement> vertex_vals,
                                    std::span<const GroupElement> edge_vals,
                                    bool include_vertices) const {
    detail::Accum acc;
    for (std::size_t i = 0; i < impl_->cycles.size(); ++i) {
        const auto& c = impl_->cycles[i];
        acc.reset(spec);
        if (include_vertices)
            for (int v : c.vertex_slots) acc.add(vertex_vals[v]);
        for (auto [e, sign] : c.edge_terms) {
            if (sign > 0)
                acc.add(edge_vals[e]);
            else
                acc.sub(edge_vals[e]);
        }
        if (!acc.is_zero()) return static_cast<int>(i);
    }
    return -1;
}

CheckResult check_by_definition(const Digraph& g, const Labeling& labels, Family family,
                                int max_edges) {
    if (family == Family::BF || family == Family::BR)
        throw std::invalid_argument("balanceability is existential; use exhaustive_count");
    const bool vertices = family_uses_vertices(family);
    std::vector<GroupElement> vvals;
    if (vertices) vvals = vertex_values(labels, g);
    std::vector<GroupElement> evals = edge_values(labels, g);

    CycleSet cycles = enumerate_cycles(g, family_mode(family), max_edges);
    CycleEvaluator eval(g, cycles);
    int bad = eval.first_violation(labels.spec, vvals, evals, vertices);
    if (bad < 0) return {};
    Witness w = cycles.cycles[bad];
    w.sum = walk_sum(g, w, labels.spec, vvals, evals, family_mode(family), vertices);
    return {false, std::move(w)};
}

namespace {

unsigned long long checked_pow_capped(unsigned long long base, std::size_t exp,
                                      unsigned long long cap) {
    unsigned long long out = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (__builtin_mul_overflow(out, base, &out) || out > cap)
            throw CapExceeded("labeling sweep exceeds the enumeration cap of " + std::to_string(cap));
    }
    return out;
}

// Odometer over `slots` assignments drawn from `elems`; calls fn after every
// assignment change until all combinations are exhausted.
template <typename Fn>
void sweep_assignments(const std::vector<GroupElement>& elems, std::vector<GroupElement>& slots,
                       Fn&& fn) {
    for (auto& s : slots) s = elems[0];
    std::vector<std::size_t> digit(slots.size(), 0);
    for (;;) {
        fn();
        std::size_t i = 0;
        while (i < digit.size()) {
            if (++digit[i] < elems.size()) {
                slots[i] = elems[digit[i]];
                break;
            }
            digit[i] = 0;
            slots[i] = elems[0];
            ++i;
        }
        if (i == digit.size()) return;
    }
}

}  // namespace

unsigned long long exhaustive_count(const Digraph& g, Family family, const GroupSpec& spec,
                                    unsigned long long max_labelings, int max_cycle_edges) {
    if (family == Family::UH || family == Family::UW)
        throw std::invalid_argument("exhaustive_count covers the six directed families");
    const std::size_t n = g.vertex_count();
    const std::size_t m = g.edge_count();
    const bool existential = family == Family::BF || family == Family::BR;
    const bool vertices = family_uses_vertices(family);
    const std::size_t slots = vertices ? n + m : m;
    checked_pow_capped(spec.cardinality(), slots, max_labelings);

    const std::vector<GroupElement> elems = enumerate_elements(spec);
    CycleSet cycles = enumerate_cycles(g, family_mode(family), max_cycle_edges);
    CycleEvaluator eval(g, cycles);

    unsigned long long count = 0;
    std::vector<GroupElement> vvals(existential || vertices ? n : 0);
    std::vector<GroupElement> evals(m);
    if (existential) {
        // A vertex labeling counts when some edge labeling balances it.
        sweep_assignments(elems, vvals, [&] {
            bool found = false;
            sweep_assignments(elems, evals, [&] {
                if (!found && eval.first_violation(spec, vvals, evals, true) < 0) found = true;
            });
            if (found) ++count;
        });
    } else if (vertices) {
        std::vector<GroupElement> all(n + m);
        sweep_assignments(elems, all, [&] {
            std::copy(all.begin(), all.begin() + n, vvals.begin());
            std::copy(all.begin() + n, all.end(), evals.begin());
            if (eval.first_violation(spec, vvals, evals, true) < 0) ++count;
        });
    } else {
        sweep_assignments(elems, evals, [&] {
            if (eval.first_violation(spec, vvals, evals, false) < 0) ++count;
        });
    }
    return count;
}

struct OrientationSweep::Impl {
    Digraph base;
    std::vector<Digraph> oriented;
    std::vector<RigidChecker> checkers;
    CycleSet undirected_cycles;
    std::unique_ptr<CycleEvaluator> undirected_eval;

    Impl(const Digraph& g, int max_edges, int max_cycle_edges) : base(g) {
        oriented = orientations(base, max_edges);
        checkers.reserve(oriented.size());
        for (const Digraph& d : oriented) checkers.emplace_back(d);
        undirected_cycles = enumerate_cycles(base, WalkMode::undirected, max_cycle_edges);
        undirected_eval = std::make_unique<CycleEvaluator>(base, undirected_cycles);
    }
};

OrientationSweep::OrientationSweep(const Digraph& g, int max_edges, int max_cycle_edges)
    : impl_(std::make_unique<Impl>(g, max_edges, max_cycle_edges)) {}
OrientationSweep::~OrientationSweep() = default;
OrientationSweep::OrientationSweep(OrientationSweep&&) noexcept = default;
OrientationSweep& OrientationSweep::operator=(OrientationSweep&&) noexcept = default;

std::size_t OrientationSweep::orientation_count() const { return impl_->oriented.size(); }

OrientationAgreement OrientationSweep::check_edges(const GroupSpec& spec,
                                                   std::span<const GroupElement> edge_vals) const {
    OrientationAgreement out;
    out.undirected_balanced = impl_->undirected_eval->first_violation(spec, {}, edge_vals, false) < 0;
    out.intersection_balanced = true;
    for (const RigidChecker& checker : impl_->checkers) {
        if (!checker.hr_balanced(spec, edge_vals)) {
            out.intersection_balanced = false;
            break;
        }
    }
    out.agree = out.undirected_balanced == out.intersection_balanced;
    return out;
}

OrientationAgreement OrientationSweep::check_whole(const GroupSpec& spec,
                                                   std::span<const GroupElement> vertex_vals,
                                                   std::span<const GroupElement> edge_vals) const {
    OrientationAgreement out;
    out.undirected_balanced =
        impl_->undirected_eval->first_violation(spec, vertex_vals, edge_vals, true) < 0;
    out.intersection_balanced = true;
    for (const RigidChecker& checker : impl_->checkers) {
        if (!checker.wr_balanced(spec, vertex_vals, edge_vals)) {
            out.intersection_balanced = false;
            break;
        }
    }
    out.agree = out.undirected_balanced == out.intersection_balanced;
    return out;
}

OrientationAgreement orientation_intersection_check(const Digraph& g, const Labeling& edge_labels,
                                                    int max_edges) {
    std::vector<GroupElement> evals = edge_values(edge_labels, g);
    return OrientationSweep(g, max_edges).check_edges(edge_labels.spec, evals);
}

OrientationAgreement orientation_intersection_check_whole(const Digraph& g, const Labeling& labels,
                                                          int max_edges) {
    std::vector<GroupElement> vvals = vertex_values(labels, g);
    std::vector<GroupElement> evals = edge_values(labels, g);
    return OrientationSweep(g, max_edges).check_whole(labels.spec, vvals, evals);
}

}  // namespace gain
