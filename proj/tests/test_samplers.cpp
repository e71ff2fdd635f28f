#include "s2w/errors.hpp"
#include "s2w/oracles.hpp"
#include "s2w/paths.hpp"
#include "s2w/samplers.hpp"
#include "s2w/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace s2w;

namespace {

struct Moments {
    double mean;
    double var;
};

Moments moments(const std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : x) {
        ss += (v - mean) * (v - mean);
    }
    return {mean, ss / (n - 1.0)};
}

// CDF of the p-generalized normal through the regularized incomplete gamma function,
// independent of the sampler's construction.
double pgen_cdf(double p, double x) {
    const double tail = 0.5 * boost::math::gamma_p(1.0 / p, std::pow(std::abs(x), p) / p);
    return x >= 0.0 ? 0.5 + tail : 0.5 - tail;
}

}  // namespace

TEST(NormalSample, FirstTwoMoments) {
    RngStream s(11, "normal", 0);
    const auto x = normal_sample(s, 100000);
    const double n = 1e5;
    const auto m = moments(x);
    EXPECT_LE(std::abs(m.mean), 4.0 * std::sqrt(1.0 / n));
    double sq = 0.0;
    for (double v : x) {
        sq += v * v;
    }
    EXPECT_LE(std::abs(sq / n - 1.0), 4.0 * std::sqrt(2.0 / n));
}

TEST(NormalSample, ReplayIsBitwiseIdentical) {
    RngStream a(1, "normal", 3);
    RngStream b(1, "normal", 3);
    EXPECT_EQ(normal_sample(a, 1000), normal_sample(b, 1000));
}

TEST(NormalSample, PassesKs) {
    RngStream s(12, "normal", 0);
    const auto x = normal_sample(s, 100000);
    EXPECT_GT(ks_test_normal(x, 1.0).p_value, 1e-3);
}

TEST(NormalSample, EmptyRequestRejected) {
    RngStream s(1, "normal", 0);
    EXPECT_THROW(normal_sample(s, 0), DomainError);
}

TEST(GammaSample, MeanAtHalfShape) {
    RngStream s(21, "gamma", 0);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        sum += gamma_sample(s, 0.5);
    }
    EXPECT_LE(std::abs(sum / n - 0.5), 4.0 * std::sqrt(0.5 / n));
}

TEST(GammaSample, ShapeOneIsExponential) {
    RngStream s(22, "gamma", 0);
    std::vector<double> x(100000);
    for (double& v : x) {
        v = gamma_sample(s, 1.0);
    }
    const auto r = ks_test(x, [](double t) { return t <= 0 ? 0.0 : 1.0 - std::exp(-t); }, "Exp(1)");
    EXPECT_GT(r.p_value, 1e-3);
}

TEST(GammaSample, VarianceAtShapeTwo) {
    RngStream s(23, "gamma", 0);
    std::vector<double> x(100000);
    for (double& v : x) {
        v = gamma_sample(s, 2.0);
    }
    // Central fourth moment of Gamma(k) is 3k^2 + 6k; SE(s^2) ~ sqrt((mu4 - sigma^4)/n).
    const double se = std::sqrt((24.0 - 4.0) / 1e5);
    EXPECT_LE(std::abs(moments(x).var - 2.0), 5.0 * se);
}

TEST(GammaSample, SmallShapesMatchIncompleteGamma) {
    for (double shape : {0.1, 0.25, 0.7, 3.5}) {
        RngStream s(24, "gamma", static_cast<std::uint64_t>(shape * 100));
        std::vector<double> x(50000);
        for (double& v : x) {
            v = gamma_sample(s, shape);
            ASSERT_GE(v, 0.0);
        }
        const auto r = ks_test(
            x, [shape](double t) { return t <= 0 ? 0.0 : boost::math::gamma_p(shape, t); }, "Gamma");
        EXPECT_GT(r.p_value, 1e-3) << shape;
    }
}

TEST(GammaSample, NonPositiveShapeRejected) {
    RngStream s(1, "gamma", 0);
    EXPECT_THROW(gamma_sample(s, 0.0), DomainError);
    EXPECT_THROW(gamma_sample(s, -2.0), DomainError);
}

TEST(PgenSample, PEqualsTwoIsStandardNormal) {
    RngStream s(31, "pgen", 0);
    const auto x = pgen_sample(s, 2.0, 100000);
    EXPECT_GT(ks_test_normal(x, 1.0).p_value, 1e-3);
}

TEST(PgenSample, PEqualsOneIsLaplace) {
    RngStream s(32, "pgen", 0);
    const auto x = pgen_sample(s, 1.0, 100000);
    const auto laplace = [](double t) { return t < 0 ? 0.5 * std::exp(t) : 1.0 - 0.5 * std::exp(-t); };
    EXPECT_GT(ks_test(x, laplace, "Laplace(0,1)").p_value, 1e-3);
}

TEST(PgenSample, GeneralPMatchesIncompleteGammaCdf) {
    for (double p : {1.5, 3.0, 6.0}) {
        RngStream s(33, "pgen", static_cast<std::uint64_t>(p * 10));
        const auto x = pgen_sample(s, p, 100000);
        EXPECT_GT(ks_test(x, [p](double t) { return pgen_cdf(p, t); }, "pgen").p_value, 1e-3) << p;
    }
}

TEST(PgenSample, PthAbsoluteMomentIsOne) {
    for (double p : {1.0, 1.5, 2.0, 3.0, 4.0}) {
        RngStream s(34, "pgen", static_cast<std::uint64_t>(p * 10));
        const auto x = pgen_sample(s, p, 100000);
        double sum = 0.0;
        for (double v : x) {
            sum += std::pow(std::abs(v), p);
        }
        EXPECT_LE(std::abs(sum / 1e5 - 1.0), 4.0 * std::sqrt(p / 1e5)) << p;
    }
}

TEST(PgenSample, TwoSampleIndistinguishableFromNormal) {
    RngStream a(35, "pgen", 0);
    RngStream b(35, "normal", 0);
    const auto x = pgen_sample(a, 2.0, 100000);
    const auto y = normal_sample(b, 100000);
    EXPECT_GT(ks_test_two_sample(x, y).p_value, 1e-3);
}

TEST(PgenSample, InvalidArguments) {
    RngStream s(1, "pgen", 0);
    EXPECT_THROW(pgen_sample(s, 0.9, 10), DomainError);
    EXPECT_THROW(pgen_sample(s, 2.0, 0), DomainError);
}

TEST(SphereSample, UnitNormEveryCall) {
    RngStream s(41, "sphere", 0);
    for (std::size_t n : {1u, 2u, 3u, 17u, 256u, 4096u}) {
        for (double p : {1.0, 1.5, 2.0, 3.0, 7.5}) {
            for (int rep = 0; rep < 5; ++rep) {
                const auto x = sphere_sample(s, n, p);
                ASSERT_EQ(x.size(), n);
                EXPECT_NEAR(lp_norm(x, p), 1.0, 1e-12) << n << " " << p;
            }
        }
    }
}

TEST(SphereSample, TwoSphereCoordinateIsUniform) {
    // Archimedes: a coordinate of the uniform point on S^2 is Uniform(-1,1).
    RngStream s(42, "sphere", 0);
    std::vector<double> first(100000);
    for (double& v : first) {
        v = sphere_sample(s, 3, 2.0)[0];
    }
    const auto r = ks_test(first, [](double t) { return std::clamp(0.5 * (t + 1.0), 0.0, 1.0); }, "U(-1,1)");
    EXPECT_GT(r.p_value, 1e-3);
}

TEST(SphereSample, ScaledCoordinateApproachesPgenMarginal) {
    const std::size_t n = 1024;
    for (double p : {1.5, 3.0}) {
        RngStream s(43, "sphere", static_cast<std::uint64_t>(p * 10));
        std::vector<double> first(30000);
        const double scale = std::pow(static_cast<double>(n), 1.0 / p);
        for (double& v : first) {
            v = scale * sphere_sample(s, n, p)[0];
        }
        EXPECT_GT(ks_test(first, [p](double t) { return pgen_cdf(p, t); }, "pgen").p_value, 1e-3) << p;
    }
}

TEST(DanHeavySample, TailProbabilityAndMedian) {
    RngStream s(51, "dan", 0);
    const auto x = dan_heavy_sample(s, 100000);
    std::size_t over = 0;
    std::vector<double> mags(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        mags[i] = std::abs(x[i]);
        ASSERT_GE(mags[i], 1.0);
        over += mags[i] > 2.0 ? 1 : 0;
    }
    EXPECT_LE(std::abs(over / 1e5 - 0.25), 4.0 * std::sqrt(0.25 * 0.75 / 1e5));
    std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
    EXPECT_NEAR(mags[mags.size() / 2], std::sqrt(2.0), 0.01 * std::sqrt(2.0));
}

TEST(DanHeavySample, MeanIsZero) {
    RngStream s(52, "dan", 0);
    const auto x = dan_heavy_sample(s, 100000);
    const auto m = moments(x);
    EXPECT_LE(std::abs(m.mean), 5.0 * std::sqrt(m.var / 1e5));
}

TEST(DanHeavySample, HillTailExponentIsTwo) {
    RngStream s(53, "dan", 0);
    auto x = dan_heavy_sample(s, 1000000);
    for (double& v : x) {
        v = std::abs(v);
    }
    const std::size_t k = x.size() / 100;
    std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k), x.end(), std::greater<>());
    const double threshold = x[k];
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sum += std::log(x[i] / threshold);
    }
    const double alpha = static_cast<double>(k) / sum;
    EXPECT_NEAR(alpha, 2.0, 0.15);
}

TEST(DanHeavySample, Deterministic) {
    RngStream a(54, "dan", 9);
    RngStream b(54, "dan", 9);
    EXPECT_EQ(dan_heavy_sample(a, 500), dan_heavy_sample(b, 500));
    RngStream c(54, "dan", 9);
    EXPECT_THROW(dan_heavy_sample(c, 0), DomainError);
}
