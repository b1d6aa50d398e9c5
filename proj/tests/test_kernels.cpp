#include "dmldc/core.hpp"
#include "dmldc/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace dmldc;
namespace kn = dmldc::kernels;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n, bool probs) {
    std::vector<double> v(n);
    for (double& x : v) x = probs ? uniform_unit(rng) : 2 * uniform_unit(rng) - 1;
    if (probs && n > 0) {
        double s = 0;
        for (double x : v) s += x;
        for (double& x : v) x /= s;
        if (n > 3) v[n / 2] = 0.0;  // zero cells are skipped
    }
    return v;
}

}  // namespace

TEST_SUITE("kernels") {
    TEST_CASE("scalar references") {
        const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
        CHECK(kn::scalar::dot(a, b) == 32.0);
        std::vector<double> y{1, 1, 1};
        kn::scalar::axpy(2.0, a, y);
        CHECK(y == std::vector<double>{3, 5, 7});
        const std::vector<double> p{0.5, 0.25, 0.25, 0.0};
        CHECK(kn::scalar::neg_plogp_sum(p) == doctest::Approx(1.5).epsilon(1e-15));
    }

#ifdef DMLDC_HAVE_AVX2_KERNELS
    TEST_CASE("avx2 variants match scalar on every length") {
        if (kn::detected_isa() != kn::Isa::Avx2) {
            MESSAGE("CPU lacks AVX2; equivalence not exercised");
            return;
        }
        Rng rng(11);
        for (std::size_t n = 0; n < 67; ++n) {
            const auto a = random_vec(rng, n, false), b = random_vec(rng, n, false);
            CHECK(kn::avx2::dot(a, b) == doctest::Approx(kn::scalar::dot(a, b)).epsilon(1e-13));
            std::vector<double> y1 = b, y2 = b;
            kn::scalar::axpy(0.75, a, y1);
            kn::avx2::axpy(0.75, a, y2);
            for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-15));
            const auto p = random_vec(rng, n, true);
            CHECK(std::abs(kn::avx2::neg_plogp_sum(p) - kn::scalar::neg_plogp_sum(p)) <= 1e-12);
        }
    }
#endif

    TEST_CASE("dispatch can be pinned and entropies agree across ISAs") {
        const kn::Isa before = kn::active_isa();
        Rng rng(5);
        const LayerPmf layer = random_layer({3, 2, 3, 2}, PmfShape::Dense, rng);
        CHECK(kn::force_isa(kn::Isa::Scalar) == kn::Isa::Scalar);
        const auto hs = all_subset_entropies(layer);
        kn::force_isa(kn::detected_isa());
        const auto hv = all_subset_entropies(layer);
        REQUIRE(hs.size() == hv.size());
        for (std::size_t m = 0; m < hs.size(); ++m) CHECK(std::abs(hs[m] - hv[m]) <= 1e-12);
        kn::force_isa(before);
        CHECK(!kn::isa_name(kn::active_isa()).empty());
    }
}
