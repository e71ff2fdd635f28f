#include "s2w/errors.hpp"
#include "s2w/fgn.hpp"
#include "s2w/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <thread>

using namespace s2w;

namespace {

struct LagEstimate {
    double mean;
    double se;
};

// Autocovariance at lags 0..max_lag: per-replicate averages, SE across independent replicates.
std::vector<LagEstimate> lag_autocov(const FgnPlan& plan, std::uint64_t seed, std::size_t replicates,
                                     std::size_t max_lag) {
    std::vector<std::vector<double>> per_rep(max_lag + 1, std::vector<double>(replicates));
    for (std::size_t r = 0; r < replicates; ++r) {
        RngStream s(seed, "fgn-test", r);
        const auto x = fgn_sample(s, plan);
        for (std::size_t k = 0; k <= max_lag; ++k) {
            double acc = 0.0;
            for (std::size_t i = 0; i + k < x.size(); ++i) {
                acc += x[i] * x[i + k];
            }
            per_rep[k][r] = acc / static_cast<double>(x.size() - k);
        }
    }
    std::vector<LagEstimate> out;
    for (const auto& v : per_rep) {
        double mean = 0.0;
        for (double a : v) {
            mean += a;
        }
        mean /= static_cast<double>(v.size());
        double ss = 0.0;
        for (double a : v) {
            ss += (a - mean) * (a - mean);
        }
        out.push_back({mean, std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()))});
    }
    return out;
}

// A valid covariance whose size-2n circulant embedding has a negative eigenvalue.
std::vector<double> stiff_autocov(std::size_t n) {
    std::vector<double> g(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const double r = static_cast<double>(k) / static_cast<double>(n);
        g[k] = std::exp(-r * r);
    }
    g[0] += 0.05;
    return g;
}

}  // namespace

TEST(FgnPlan, WhiteNoiseEigenvaluesAreOne) {
    const FgnPlan plan = fgn_plan(0.5, 64);
    EXPECT_EQ(plan.method(), FgnMethod::circulant_fft);
    EXPECT_EQ(plan.circulant_size(), 128u);
    ASSERT_EQ(plan.eigenvalues().size(), 65u);
    for (double e : plan.eigenvalues()) {
        EXPECT_NEAR(e, 1.0, 1e-10);
    }
}

TEST(FgnPlan, StoresAutocovariance) {
    const FgnPlan plan = fgn_plan(0.75, 8);
    ASSERT_EQ(plan.autocovariance().size(), 9u);
    EXPECT_NEAR(plan.autocovariance()[1], 0.41421356, 1e-8);
    EXPECT_EQ(plan.hurst(), 0.75);
    EXPECT_EQ(plan.n(), 8u);
}

TEST(FgnPlan, EigenvaluesMatchDirectCosineSum) {
    const std::size_t n = 16;
    const FgnPlan plan = fgn_plan(0.8, n);
    const std::size_t m = 2 * n;
    std::vector<double> row(m);
    for (std::size_t j = 0; j < m; ++j) {
        row[j] = fgn_gamma(0.8, j <= n ? j : m - j);
    }
    for (std::size_t k = 0; k <= n; ++k) {
        double direct = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            direct += row[j] * std::cos(2.0 * std::numbers::pi * static_cast<double>(j * k) / static_cast<double>(m));
        }
        EXPECT_NEAR(plan.eigenvalues()[k], std::max(direct, 0.0), 1e-12) << k;
    }
}

TEST(FgnPlan, EmbeddingNonnegativeAcrossHurstGrid) {
    for (int i = 1; i <= 9; ++i) {
        const double h = 0.1 * i;
        for (std::size_t n : {16u, 256u, 4096u}) {
            const FgnPlan plan = fgn_plan(h, n);
            EXPECT_EQ(plan.method(), FgnMethod::circulant_fft) << h << " " << n;
            double max_e = 0.0;
            for (double e : plan.eigenvalues()) {
                EXPECT_GE(e, 0.0);
                max_e = std::max(max_e, e);
            }
            EXPECT_GE(plan.min_raw_eigenvalue(), -kEmbeddingTolerance * max_e) << h << " " << n;
        }
    }
}

TEST(FgnPlan, InvalidArguments) {
    EXPECT_THROW(fgn_plan(0.0, 16), DomainError);
    EXPECT_THROW(fgn_plan(1.0, 16), DomainError);
    EXPECT_THROW(fgn_plan(0.5, 1), DomainError);
    EXPECT_THROW(fgn_plan(0.5, 4096, FgnMethod::cholesky), DomainError);
}

TEST(FgnPlan, FailedEmbeddingFallsBackToCholesky) {
    const FgnPlan plan = FgnPlan::from_autocovariance(stiff_autocov(64));
    EXPECT_EQ(plan.method(), FgnMethod::cholesky);
    EXPECT_TRUE(plan.eigenvalues().empty());
    RngStream s(3, "stiff", 0);
    EXPECT_EQ(fgn_sample(s, plan).size(), 64u);
}

TEST(FgnPlan, FailedEmbeddingAboveCholeskyLimitIsAnError) {
    EXPECT_THROW(FgnPlan::from_autocovariance(stiff_autocov(kCholeskyMaxN + 52)), NumericError);
}

TEST(FgnSample, UnitMarginalVariance) {
    const FgnPlan plan = fgn_plan(0.7, 1024);
    const auto est = lag_autocov(plan, 61, 1000, 0);
    EXPECT_LE(std::abs(est[0].mean - 1.0), 5.0 * est[0].se);
}

TEST(FgnSample, LagOneAutocovarianceAtHurstPointSeven) {
    const FgnPlan plan = fgn_plan(0.7, 1024);
    const auto est = lag_autocov(plan, 62, 1000, 1);
    const double target = 0.5 * (std::pow(2.0, 1.4) - 2.0);
    EXPECT_LE(std::abs(est[1].mean - target), 5.0 * est[1].se);
}

TEST(FgnSample, AutocovarianceUpToLagFive) {
    for (double h : {0.3, 0.5, 0.75}) {
        const FgnPlan plan = fgn_plan(h, 512);
        const auto est = lag_autocov(plan, 63, 1000, 5);
        for (std::size_t k = 0; k <= 5; ++k) {
            EXPECT_LE(std::abs(est[k].mean - fgn_gamma(h, k)), 5.0 * est[k].se) << h << " lag " << k;
        }
    }
}

TEST(FgnSample, WhiteNoiseHasNoLagOneCorrelation) {
    const FgnPlan plan = fgn_plan(0.5, 1024);
    const auto est = lag_autocov(plan, 64, 500, 1);
    EXPECT_LE(std::abs(est[1].mean), 5.0 * est[1].se);
}

TEST(FgnSample, CirculantAndCholeskyAgree) {
    const FgnPlan fft = fgn_plan(0.75, 256);
    const FgnPlan chol = fgn_plan(0.75, 256, FgnMethod::cholesky);
    EXPECT_EQ(chol.method(), FgnMethod::cholesky);
    const auto a = lag_autocov(fft, 65, 1000, 5);
    const auto b = lag_autocov(chol, 66, 1000, 5);
    for (std::size_t k = 0; k <= 5; ++k) {
        EXPECT_LE(std::abs(a[k].mean - b[k].mean), 5.0 * std::hypot(a[k].se, b[k].se)) << k;
    }
}

TEST(FgnSample, SharedPlanIsThreadSafeAndDeterministic) {
    const FgnPlan plan = fgn_plan(0.3, 2048);
    std::vector<std::vector<double>> serial(8);
    for (std::size_t r = 0; r < 8; ++r) {
        RngStream s(67, "share", r);
        serial[r] = fgn_sample(s, plan);
    }
    std::vector<std::vector<double>> parallel(8);
    {
        std::vector<std::jthread> workers;
        for (std::size_t r = 0; r < 8; ++r) {
            workers.emplace_back([&, r] {
                RngStream s(67, "share", r);
                parallel[r] = fgn_sample(s, plan);
            });
        }
    }
    EXPECT_EQ(serial, parallel);
}
