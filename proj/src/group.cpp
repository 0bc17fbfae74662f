#include "gain/group.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gain {

namespace {

unsigned long long checked_mul(unsigned long long a, unsigned long long b) {
    unsigned long long out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw std::overflow_error("group cardinality overflows 64 bits");
    return out;
}

long long mod_reduce(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

void check_shape(const GroupSpec& spec, const GroupElement& a) {
    if (static_cast<int>(a.size()) != spec.rank())
        throw std::invalid_argument("element length " + std::to_string(a.size()) +
                                    " does not match group rank " + std::to_string(spec.rank()));
}

// Uniform draw from [0, n) without relying on std::uniform_int_distribution,
// whose output is implementation-defined.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t rem = std::numeric_limits<std::uint64_t>::max() % n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;
    for (;;) {
        std::uint64_t v = rng();
        if (v < limit) return v % n;
    }
}

}  // namespace

unsigned long long GroupSpec::cardinality() const {
    if (!finite()) throw std::domain_error("infinite group has no cardinality");
    unsigned long long card = 1;
    for (long long m : torsion) card = checked_mul(card, static_cast<unsigned long long>(m));
    return card;
}

std::string GroupSpec::str() const {
    std::ostringstream os;
    bool first = true;
    if (free_rank == 1) {
        os << "Z";
        first = false;
    } else if (free_rank > 1) {
        os << "Z^" << free_rank;
        first = false;
    }
    for (long long m : torsion) {
        if (!first) os << " x ";
        os << "Z/" << m;
        first = false;
    }
    if (first) os << "Z^0";
    return os.str();
}

GroupSpec parse_group_spec(std::string_view text) {
    GroupSpec spec;
    std::size_t i = 0;
    auto fail = [&](const std::string& msg, std::size_t pos) {
        throw std::invalid_argument("group spec: " + msg + " at position " + std::to_string(pos));
    };
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto parse_int = [&]() -> long long {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) fail("expected an integer", start);
        if (i - start > 12) fail("integer too large", start);
        long long value = 0;
        for (std::size_t j = start; j < i; ++j) value = value * 10 + (text[j] - '0');
        return value;
    };

    bool first = true;
    for (;;) {
        skip_ws();
        if (!first) {
            if (i >= text.size()) break;
            if (text[i] != 'x' && text[i] != 'X') fail("expected 'x' between terms", i);
            ++i;
            skip_ws();
        }
        if (i >= text.size() || (text[i] != 'Z' && text[i] != 'z')) fail("expected 'Z'", i);
        ++i;
        skip_ws();
        if (i < text.size() && text[i] == '^') {
            ++i;
            skip_ws();
            std::size_t pos = i;
            long long k = parse_int();
            if (k < 1) fail("free exponent below 1", pos);
            spec.free_rank += static_cast<int>(k);
        } else if (i < text.size() && text[i] == '/') {
            ++i;
            skip_ws();
            std::size_t pos = i;
            long long m = parse_int();
            if (m < 2) fail("torsion factor below 2", pos);
            spec.torsion.push_back(m);
        } else {
            spec.free_rank += 1;
        }
        first = false;
    }
    if (first) fail("empty group spec", 0);
    return spec;
}

GroupElement zero_element(const GroupSpec& spec) {
    return GroupElement(static_cast<std::size_t>(spec.rank()), 0);
}

bool is_zero(const GroupElement& a) {
    return std::all_of(a.begin(), a.end(), [](long long c) { return c == 0; });
}

GroupElement canonicalize(const GroupSpec& spec, GroupElement a) {
    check_shape(spec, a);
    for (std::size_t i = 0; i < spec.torsion.size(); ++i) {
        long long& c = a[spec.free_rank + i];
        c = mod_reduce(c, spec.torsion[i]);
    }
    return a;
}

GroupElement add(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
    check_shape(spec, a);
    check_shape(spec, b);
    GroupElement out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return canonicalize(spec, std::move(out));
}

GroupElement negate(const GroupSpec& spec, const GroupElement& a) {
    check_shape(spec, a);
    GroupElement out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return canonicalize(spec, std::move(out));
}

GroupElement subtract(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
    check_shape(spec, a);
    check_shape(spec, b);
    GroupElement out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return canonicalize(spec, std::move(out));
}

GroupElement scalar_multiple(const GroupSpec& spec, long long k, const GroupElement& a) {
    check_shape(spec, a);
    GroupElement out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = k * a[i];
    return canonicalize(spec, std::move(out));
}

std::optional<long long> order(const GroupSpec& spec, const GroupElement& a) {
    check_shape(spec, a);
    for (int i = 0; i < spec.free_rank; ++i)
        if (a[i] != 0) return std::nullopt;
    long long result = 1;
    for (std::size_t i = 0; i < spec.torsion.size(); ++i) {
        long long m = spec.torsion[i];
        long long c = a[spec.free_rank + i];
        result = std::lcm(result, m / std::gcd(m, c));
    }
    return result;
}

InvolutionSubgroup involution_subgroup(const GroupSpec& spec) {
    InvolutionSubgroup sub;
    for (std::size_t i = 0; i < spec.torsion.size(); ++i) {
        if (spec.torsion[i] % 2 != 0) continue;
        GroupElement gen = zero_element(spec);
        gen[spec.free_rank + i] = spec.torsion[i] / 2;
        sub.generators.push_back(std::move(gen));
        sub.subgroup.torsion.push_back(2);
    }
    return sub;
}

unsigned long long involution_count(const GroupSpec& spec) {
    int q = 0;
    for (long long m : spec.torsion)
        if (m % 2 == 0) ++q;
    if (q >= 64) throw std::overflow_error("involution subgroup too large");
    return 1ull << q;
}

std::vector<GroupElement> involution_elements(const GroupSpec& spec) {
    const InvolutionSubgroup sub = involution_subgroup(spec);
    const std::size_t q = sub.generators.size();
    std::vector<GroupElement> out;
    out.reserve(1u << q);
    for (std::uint64_t mask = 0; mask < (1ull << q); ++mask) {
        GroupElement e = zero_element(spec);
        for (std::size_t i = 0; i < q; ++i)
            if (mask & (1ull << i)) e = add(spec, e, sub.generators[i]);
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<GroupElement> enumerate_elements(const GroupSpec& spec) {
    if (!spec.finite()) throw std::domain_error("cannot enumerate an infinite group");
    const unsigned long long card = spec.cardinality();
    std::vector<GroupElement> out;
    out.reserve(card);
    GroupElement cur = zero_element(spec);
    const std::size_t k = spec.torsion.size();
    for (;;) {
        out.push_back(cur);
        // odometer, last coordinate fastest (ascending lexicographic order)
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (++cur[i] < spec.torsion[i]) break;
            cur[i] = 0;
            if (i == 0) return out;
        }
        if (k == 0) return out;
    }
}

GroupElement sample_element(const GroupSpec& spec, std::mt19937_64& rng) {
    GroupElement out(static_cast<std::size_t>(spec.rank()));
    const std::uint64_t span = 2 * static_cast<std::uint64_t>(kFreeCoordinateSampleBound) + 1;
    for (int i = 0; i < spec.free_rank; ++i)
        out[i] = static_cast<long long>(uniform_below(rng, span)) - kFreeCoordinateSampleBound;
    for (std::size_t i = 0; i < spec.torsion.size(); ++i)
        out[spec.free_rank + i] =
            static_cast<long long>(uniform_below(rng, static_cast<std::uint64_t>(spec.torsion[i])));
    return out;
}

GroupElement sample_element(const GroupSpec& spec, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_element(spec, rng);
}

GroupElement parse_element(std::string_view text, const GroupSpec& spec) {
    GroupElement coords;
    std::size_t i = 0;
    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("element '" + std::string(text) + "': " + msg);
    };
    while (i <= text.size()) {
        std::size_t start = i;
        while (i < text.size() && text[i] != ',') ++i;
        std::string_view tok = text.substr(start, i - start);
        // trim
        while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
        while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
        if (tok.empty()) fail("empty coordinate");
        std::size_t j = 0;
        bool neg = tok[0] == '-';
        if (neg || tok[0] == '+') ++j;
        if (j == tok.size()) fail("bad coordinate '" + std::string(tok) + "'");
        long long value = 0;
        for (; j < tok.size(); ++j) {
            if (!std::isdigit(static_cast<unsigned char>(tok[j])))
                fail("bad coordinate '" + std::string(tok) + "'");
            if (value > (std::numeric_limits<long long>::max() - 9) / 10) fail("coordinate overflow");
            value = value * 10 + (tok[j] - '0');
        }
        coords.push_back(neg ? -value : value);
        if (i == text.size()) break;
        ++i;  // skip ','
    }
    if (static_cast<int>(coords.size()) != spec.rank())
        fail("expected " + std::to_string(spec.rank()) + " coordinates, got " +
             std::to_string(coords.size()));
    return canonicalize(spec, std::move(coords));
}

std::string element_str(const GroupElement& a) {
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(a[i]);
    }
    return out;
}

}  // namespace gain
