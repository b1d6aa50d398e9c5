#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference and an AVX2
// variant; the public entry points dispatch once at startup based on the
// running CPU. Variants are equivalence-tested against the scalar path.

#include <span>
#include <string_view>

namespace dmldc::kernels {

enum class Isa { Scalar, Avx2 };

/// Best ISA supported by this CPU and build.
Isa detected_isa();
/// ISA currently used by the dispatching entry points.
Isa active_isa();
/// Pins dispatch to `isa`; falls back to Scalar when unsupported. Returns the
/// ISA that is actually active afterwards. Intended for tests and benchmarks.
Isa force_isa(Isa isa);
std::string_view isa_name(Isa isa);

/// sum_i a[i] * b[i]; a and b must have equal length.
double dot(std::span<const double> a, std::span<const double> b);

/// y += alpha * x; x and y must have equal length.
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// -sum p log2 p over strictly positive entries (bits).
double neg_plogp_sum(std::span<const double> p);

namespace scalar {
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
double neg_plogp_sum(std::span<const double> p);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define DMLDC_HAVE_AVX2_KERNELS 1
namespace avx2 {
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
double neg_plogp_sum(std::span<const double> p);
}  // namespace avx2
#endif

}  // namespace dmldc::kernels
