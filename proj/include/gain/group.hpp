#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace gain {

/**
 * A finitely generated Abelian group Z^free_rank x Z/m_1 x ... x Z/m_k.
 *
 * Torsion factors are kept in the order given (no invariant-factor
 * normalization); structural comparisons downstream go through
 * cardinalities and doubling kernels, not spec shape.
 */
struct GroupSpec {
    int free_rank = 0;
    std::vector<long long> torsion;  // each m_i >= 2

    int rank() const { return free_rank + static_cast<int>(torsion.size()); }
    bool finite() const { return free_rank == 0; }
    /// Number of elements. Throws std::domain_error for infinite groups,
    /// std::overflow_error if the product exceeds unsigned long long.
    unsigned long long cardinality() const;
    std::string str() const;
    bool operator==(const GroupSpec&) const = default;
};

/**
 * Element coordinates: free coordinates first, then one per torsion factor.
 * Canonical form keeps torsion coordinate i inside [0, m_i). All functions
 * below return canonical elements and expect canonical inputs.
 */
using GroupElement = std::vector<long long>;

/// Parses the grammar `term ("x" term)*` with term in { Z, Z^k (k>=1),
/// Z/m (m>=2) }, whitespace-insensitive. Throws std::invalid_argument with
/// the offending position in the message.
GroupSpec parse_group_spec(std::string_view text);

GroupElement zero_element(const GroupSpec& spec);
bool is_zero(const GroupElement& a);
GroupElement canonicalize(const GroupSpec& spec, GroupElement a);
GroupElement add(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);
GroupElement negate(const GroupSpec& spec, const GroupElement& a);
GroupElement subtract(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);
GroupElement scalar_multiple(const GroupSpec& spec, long long k, const GroupElement& a);

/// Order of an element; std::nullopt means infinite (some free coordinate
/// is nonzero). For torsion-only elements this is lcm_i(m_i / gcd(m_i, c_i)).
std::optional<long long> order(const GroupSpec& spec, const GroupElement& a);

/**
 * A_2 = { a : a + a = 0 }, the doubling kernel (identity plus the
 * involutions). Isomorphic to (Z/2)^q with q = #{ i : m_i even }; the
 * generator for even factor m_i embeds as m_i/2 in that slot.
 */
struct InvolutionSubgroup {
    GroupSpec subgroup;                    // (Z/2)^q
    std::vector<GroupElement> generators;  // embeddings into the ambient group
};

InvolutionSubgroup involution_subgroup(const GroupSpec& spec);
unsigned long long involution_count(const GroupSpec& spec);  // 2^q, finite even when the group is not
std::vector<GroupElement> involution_elements(const GroupSpec& spec);

/// All elements in ascending lexicographic coordinate order.
/// Throws std::domain_error for infinite groups.
std::vector<GroupElement> enumerate_elements(const GroupSpec& spec);

/// Free coordinates are sampled uniformly from [-bound, bound].
inline constexpr long long kFreeCoordinateSampleBound = 100;

GroupElement sample_element(const GroupSpec& spec, std::mt19937_64& rng);
GroupElement sample_element(const GroupSpec& spec, std::uint64_t seed);

/// Comma-separated integers, e.g. "2,0,1"; length must match the spec.
GroupElement parse_element(std::string_view text, const GroupSpec& spec);
std::string element_str(const GroupElement& a);

}  // namespace gain
