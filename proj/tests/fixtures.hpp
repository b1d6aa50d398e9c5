#pragma once

// Small sources shared by the unit suites.

#include "dmldc/core.hpp"
#include "dmldc/lp.hpp"

#include <cmath>

namespace dmldc::testing {

/// U_1 = U_2 = one fair bit, U_3 an independent fair bit.
inline LayerPmf duplicated_bit_layer() {
    LayerPmf l;
    l.alphabet_sizes = {2, 2, 2};
    l.probs = {0.25, 0.25, 0, 0, 0, 0, 0.25, 0.25};
    return l;
}

inline LayeredSource uniform_source(int K, const LayerPmf& layer) {
    LayeredSource s;
    s.K = K;
    s.layers.assign(K, layer);
    return s;
}

inline EntropyProfile iid_bits_profile(int K) { return build_profile(uniform_source(K, iid_bits_layer(K))); }

/// Layer 2 is the duplicated-bit layer; layers 1 and 3 are i.i.d. fair bits.
inline EntropyProfile duplicated_bit_profile() {
    LayeredSource s = uniform_source(3, iid_bits_layer(3));
    s.layers[1] = duplicated_bit_layer();
    return build_profile(s);
}

inline EntropyProfile equal_bits_profile(int K) { return build_profile(uniform_source(K, equal_bits_layer(K))); }

inline double h2(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

inline WeightVector weights(std::initializer_list<long> xs) {
    WeightVector w;
    for (long x : xs) w.emplace_back(x);
    return w;
}

}  // namespace dmldc::testing
