#include "dmldc/kernels.hpp"

#include <atomic>
#include <cassert>

namespace dmldc::kernels {

namespace {

Isa probe() {
#if defined(DMLDC_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::Avx2;
#endif
    return Isa::Scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{probe()};
    return isa;
}

}  // namespace

Isa detected_isa() {
    static const Isa isa = probe();
    return isa;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

Isa force_isa(Isa isa) {
    if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) isa = Isa::Scalar;
    current().store(isa, std::memory_order_relaxed);
    return isa;
}

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
#ifdef DMLDC_HAVE_AVX2_KERNELS
    if (active_isa() == Isa::Avx2) return avx2::dot(a, b);
#endif
    return scalar::dot(a, b);
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    assert(x.size() == y.size());
#ifdef DMLDC_HAVE_AVX2_KERNELS
    if (active_isa() == Isa::Avx2) return avx2::axpy(alpha, x, y);
#endif
    scalar::axpy(alpha, x, y);
}

double neg_plogp_sum(std::span<const double> p) {
#ifdef DMLDC_HAVE_AVX2_KERNELS
    if (active_isa() == Isa::Avx2) return avx2::neg_plogp_sum(p);
#endif
    return scalar::neg_plogp_sum(p);
}

}  // namespace dmldc::kernels
