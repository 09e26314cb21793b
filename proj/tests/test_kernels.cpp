#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "pmfd/kernels.hpp"

using namespace pmfd::kernels;

namespace {

std::vector<double> random_values(std::size_t n, std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

class KernelEquivalence : public ::testing::Test {
protected:
    void SetUp() override {
        simd_ = avx2_table();
        if (simd_ == nullptr) GTEST_SKIP() << "no AVX2 on this machine or build";
    }
    const KernelTable& ref_ = scalar_table();
    const KernelTable* simd_ = nullptr;
    std::mt19937_64 rng_{2024};
};

}  // namespace

TEST(Ipow, MatchesStdPow) {
    for (unsigned e : {0u, 1u, 2u, 3u, 7u, 10u, 40u, 80u}) {
        for (double x : {0.0, 0.3, 0.97, 1.0, 1.01}) {
            EXPECT_NEAR(ipow(x, e), std::pow(x, static_cast<double>(e)),
                        1e-14 * std::max(1.0, std::pow(x, static_cast<double>(e))));
        }
    }
}

TEST(ActiveTable, IsOneOfTheKnownTables) {
    const KernelTable& t = active();
    EXPECT_TRUE(&t == &scalar_table() || &t == avx2_table());
}

TEST_F(KernelEquivalence, ElementwiseKernelsAreBitIdentical) {
    for (std::size_t n = 1; n < 70; ++n) {
        const auto x = random_values(n + 1, rng_, 0.0, 1.05);
        auto q = random_values(n, rng_, -3.0, 3.0);
        if (n > 3) {
            q[0] = 0.0;
            q[1] = -0.0;
        }
        for (unsigned e : {1u, 2u, 3u, 10u, 80u}) {
            std::vector<double> a(n + 1), b(n + 1);
            ref_.int_pow(x.data(), n + 1, e, 1.25, a.data());
            simd_->int_pow(x.data(), n + 1, e, 1.25, b.data());
            EXPECT_TRUE(same_bits(a, b)) << "int_pow n=" << n << " e=" << e;
        }
        std::vector<double> a(n), b(n);
        ref_.face_diff(x.data(), n, 0.0125, a.data());
        simd_->face_diff(x.data(), n, 0.0125, b.data());
        EXPECT_TRUE(same_bits(a, b)) << "face_diff n=" << n;
        ref_.upwind_flux(x.data(), q.data(), n, a.data());
        simd_->upwind_flux(x.data(), q.data(), n, b.data());
        EXPECT_TRUE(same_bits(a, b)) << "upwind_flux n=" << n;
    }
}

TEST_F(KernelEquivalence, ReductionsAgreeToRounding) {
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 64u, 1001u}) {
        const auto x = random_values(n, rng_, -2.0, 2.0);
        const auto y = random_values(n, rng_, -2.0, 2.0);
        auto close = [n](double a, double b) {
            return std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a)) + 1e-15 * static_cast<double>(n);
        };
        EXPECT_TRUE(close(ref_.sum(x.data(), n), simd_->sum(x.data(), n)));
        EXPECT_TRUE(close(ref_.sum_abs(x.data(), n), simd_->sum_abs(x.data(), n)));
        EXPECT_TRUE(close(ref_.sum_sq(x.data(), n), simd_->sum_sq(x.data(), n)));
        EXPECT_TRUE(close(ref_.sum_abs_diff(x.data(), y.data(), n), simd_->sum_abs_diff(x.data(), y.data(), n)));
        for (unsigned e : {2u, 4u, 10u})
            EXPECT_TRUE(close(ref_.sum_abs_pow(x.data(), n, e), simd_->sum_abs_pow(x.data(), n, e)));
        EXPECT_EQ(ref_.max_abs(x.data(), n), simd_->max_abs(x.data(), n));
    }
}

TEST(ScalarKernels, UpwindFluxSelectsDonor) {
    const double v[] = {0.3, 0.7, 0.2};
    const double q[] = {1.0, -2.0};
    double out[2];
    scalar_table().upwind_flux(v, q, 2, out);
    EXPECT_EQ(out[0], 0.7);   // q > 0: right node
    EXPECT_EQ(out[1], -1.4);  // q < 0: left node
}
