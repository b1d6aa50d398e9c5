#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dmldc {

/// Largest number of encoders/variables any module accepts.
inline constexpr int kMaxK = 8;

/// A subset of [1:K] stored as a bitmask; element k occupies bit k-1.
struct SubsetId {
    std::uint32_t mask = 0;

    constexpr SubsetId() = default;
    constexpr explicit SubsetId(std::uint32_t m) : mask(m) {}

    static SubsetId of(std::initializer_list<int> elements);
    static SubsetId from_elements(std::span<const int> elements);
    /// [lo:hi]; empty when hi < lo.
    static constexpr SubsetId range(int lo, int hi) {
        std::uint32_t m = 0;
        for (int k = lo; k <= hi; ++k) m |= 1u << (k - 1);
        return SubsetId(m);
    }
    static constexpr SubsetId full(int K) { return range(1, K); }

    constexpr int size() const { return std::popcount(mask); }
    constexpr bool empty() const { return mask == 0; }
    constexpr bool contains(int k) const { return (mask >> (k - 1)) & 1u; }
    constexpr bool subset_of(SubsetId other) const { return (mask & ~other.mask) == 0; }
    constexpr bool disjoint(SubsetId other) const { return (mask & other.mask) == 0; }
    /// True iff no bit beyond K is set.
    constexpr bool within(int K) const { return (mask >> K) == 0; }

    constexpr SubsetId operator|(SubsetId o) const { return SubsetId(mask | o.mask); }
    constexpr SubsetId operator&(SubsetId o) const { return SubsetId(mask & o.mask); }
    constexpr SubsetId minus(SubsetId o) const { return SubsetId(mask & ~o.mask); }
    constexpr SubsetId with(int k) const { return SubsetId(mask | (1u << (k - 1))); }
    constexpr SubsetId without(int k) const { return SubsetId(mask & ~(1u << (k - 1))); }

    constexpr auto operator<=>(const SubsetId&) const = default;

    /// Elements in ascending order (1-based).
    std::vector<int> elements() const;
    /// "[1,3]" style, used as a stable key in JSON files.
    std::string to_string() const;
};

/// Parses "[1,3]", "1,3" or "{1,3}"; "[]" gives the empty set.
SubsetId parse_subset(std::string_view text);

/// All subsets of [1:K] with the given cardinality, in increasing mask order.
std::vector<SubsetId> subsets_of_size(int K, int size);

/// Elements of v whose rank inside v (ascending, 1-based) lies in `ranks`.
/// Throws std::domain_error when a rank falls outside [1:|v|].
SubsetId ranked_subset(SubsetId v, std::span<const int> ranks);

/// Drops the element of rank tau: the set of v ranked by [1:|v|] minus {tau}.
SubsetId drop_rank(SubsetId v, int tau);

/// The elements of v with rank in [1:i].
SubsetId prefix_ranks(SubsetId v, int i);

/// Binomial coefficient for small arguments.
constexpr long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace dmldc
