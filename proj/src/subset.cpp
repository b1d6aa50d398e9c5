#include "dmldc/subset.hpp"

#include <stdexcept>

namespace dmldc {

SubsetId SubsetId::of(std::initializer_list<int> elements) {
    return from_elements(std::span<const int>(elements.begin(), elements.size()));
}

SubsetId SubsetId::from_elements(std::span<const int> elements) {
    std::uint32_t m = 0;
    for (int k : elements) {
        if (k < 1 || k > 31) throw std::domain_error("subset element out of range: " + std::to_string(k));
        m |= 1u << (k - 1);
    }
    return SubsetId(m);
}

std::vector<int> SubsetId::elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint32_t m = mask; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
    return out;
}

std::string SubsetId::to_string() const {
    std::string s = "[";
    bool first = true;
    for (int k : elements()) {
        if (!first) s += ",";
        s += std::to_string(k);
        first = false;
    }
    return s + "]";
}

SubsetId parse_subset(std::string_view text) {
    std::vector<int> elements;
    int current = -1;
    for (char c : text) {
        if (c >= '0' && c <= '9') {
            current = (current < 0 ? 0 : current * 10) + (c - '0');
        } else if (c == ',' || c == ' ' || c == '[' || c == ']' || c == '{' || c == '}') {
            if (current >= 0) elements.push_back(current);
            current = -1;
        } else {
            throw std::invalid_argument("malformed subset '" + std::string(text) + "'");
        }
    }
    if (current >= 0) elements.push_back(current);
    return SubsetId::from_elements(elements);
}

std::vector<SubsetId> subsets_of_size(int K, int size) {
    std::vector<SubsetId> out;
    if (size < 0 || size > K) return out;
    const std::uint32_t limit = 1u << K;
    for (std::uint32_t m = 0; m < limit; ++m)
        if (std::popcount(m) == size) out.emplace_back(m);
    return out;
}

SubsetId ranked_subset(SubsetId v, std::span<const int> ranks) {
    const std::vector<int> elems = v.elements();
    SubsetId out;
    for (int r : ranks) {
        if (r < 1 || r > static_cast<int>(elems.size()))
            throw std::domain_error("rank " + std::to_string(r) + " outside [1:" +
                                    std::to_string(elems.size()) + "]");
        out = out.with(elems[static_cast<std::size_t>(r - 1)]);
    }
    return out;
}

SubsetId drop_rank(SubsetId v, int tau) {
    const std::vector<int> elems = v.elements();
    if (tau < 1 || tau > static_cast<int>(elems.size()))
        throw std::domain_error("rank " + std::to_string(tau) + " outside [1:" +
                                std::to_string(elems.size()) + "]");
    return v.without(elems[static_cast<std::size_t>(tau - 1)]);
}

SubsetId prefix_ranks(SubsetId v, int i) {
    SubsetId out;
    int taken = 0;
    for (std::uint32_t m = v.mask; m != 0 && taken < i; m &= m - 1, ++taken)
        out.mask |= m & (~m + 1);
    if (taken < i) throw std::domain_error("prefix rank exceeds subset size");
    return out;
}

}  // namespace dmldc
