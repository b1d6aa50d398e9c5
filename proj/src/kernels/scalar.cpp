#include "dmldc/kernels.hpp"

#include <cmath>

namespace dmldc::kernels::scalar {

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

double neg_plogp_sum(std::span<const double> p) {
    double acc = 0.0;
    for (double v : p)
        if (v > 0.0) acc -= v * std::log2(v);
    return acc;
}

}  // namespace dmldc::kernels::scalar
