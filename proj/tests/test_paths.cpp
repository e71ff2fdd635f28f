#include "s2w/errors.hpp"
#include "s2w/paths.hpp"
#include "s2w/samplers.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>

using namespace s2w;

namespace {

const std::vector<double> kOnes = {1, 1, 1, 1};

double rel_diff(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

}  // namespace

TEST(PrefixSums, Examples) {
    EXPECT_EQ(prefix_sums({}), std::vector<double>{0.0});
    const std::vector<double> x = {1, -1, 2};
    EXPECT_EQ(prefix_sums(x), (std::vector<double>{0, 1, 0, 2}));
}

TEST(PrefixSums, LastEqualsTotal) {
    RngStream s(1, "prefix", 0);
    const auto x = normal_sample(s, 10000);
    const auto ps = prefix_sums(x);
    EXPECT_LE(rel_diff(ps.back(), std::accumulate(x.begin(), x.end(), 0.0)), 1e-12);
}

TEST(LpNorm, Examples) {
    EXPECT_DOUBLE_EQ(lp_norm(std::vector<double>{3, 4}, 2.0), 5.0);
    EXPECT_DOUBLE_EQ(lp_norm(std::vector<double>{1, -1, 1, -1}, 1.0), 4.0);
    EXPECT_DOUBLE_EQ(lp_norm(std::vector<double>{2, 0, 0}, 7.0), 2.0);
    EXPECT_EQ(lp_norm(std::vector<double>{}, 3.0), 0.0);
    EXPECT_EQ(lp_norm(std::vector<double>{0, 0}, 3.0), 0.0);
    EXPECT_THROW(lp_norm(std::vector<double>{1.0}, 0.5), DomainError);
}

TEST(LpNorm, NoOverflowForHugeEntriesOrLargeP) {
    const std::vector<double> big = {1e300, -1e300};
    EXPECT_NEAR(lp_norm(big, 2.0) / 1e300, std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(lp_norm(big, 40.0) / 1e300, std::pow(2.0, 1.0 / 40.0), 1e-14);
    const std::vector<double> x = {10.0, 9.0};
    EXPECT_NEAR(lp_norm(x, 400.0), 10.0 * std::pow(1.0 + std::pow(0.9, 400.0), 1.0 / 400.0), 1e-13);
}

TEST(MakePath, OnesExample) {
    const SamplePath path = make_path(kOnes, 2.0, EvalMode::step);
    EXPECT_EQ(path.values(), (std::vector<double>{0, 0.5, 1, 1.5, 2}));
    EXPECT_EQ(path.normalizer(), 2.0);
    EXPECT_EQ(path.n(), 4u);
}

TEST(MakePath, ZeroInputIsDegenerate) {
    EXPECT_THROW(make_path(std::vector<double>{0, 0, 0}, 2.0, EvalMode::step), NumericError);
}

TEST(MakePath, ScaleInvariance) {
    RngStream s(2, "paths", 0);
    for (double p : {1.0, 2.0, 3.5}) {
        const auto x = normal_sample(s, 257);
        std::vector<double> scaled = x;
        for (double& v : scaled) {
            v *= 3.7;
        }
        const auto a = make_path(x, p, EvalMode::linear);
        const auto b = make_path(scaled, p, EvalMode::linear);
        for (std::size_t k = 0; k < a.values().size(); ++k) {
            EXPECT_LE(std::abs(a.values()[k] - b.values()[k]), 1e-12 * std::max(1.0, std::abs(a.values()[k])));
        }
    }
}

TEST(MakePath, OddSymmetry) {
    RngStream s(3, "paths", 0);
    const auto x = normal_sample(s, 100);
    std::vector<double> neg = x;
    for (double& v : neg) {
        v = -v;
    }
    const auto a = make_path(x, 2.0, EvalMode::step);
    const auto b = make_path(neg, 2.0, EvalMode::step);
    for (std::size_t k = 0; k < a.values().size(); ++k) {
        EXPECT_EQ(a.values()[k], -b.values()[k]);
    }
    EXPECT_EQ(sup_norm(a), sup_norm(b));
}

TEST(MakePath, QuadraticVariationIsOneAtPTwo) {
    for (std::uint64_t r = 0; r < 50; ++r) {
        RngStream s(4, "qv", r);
        const auto x = r % 2 == 0 ? normal_sample(s, 1 + 97 * r) : dan_heavy_sample(s, 1 + 97 * r);
        const auto path = make_path(x, 2.0, EvalMode::step);
        EXPECT_NEAR(quadratic_variation(path), 1.0, 1e-10) << r;
    }
}

TEST(Eval, StepAndLinearExamples) {
    const auto step = make_path(kOnes, 2.0, EvalMode::step);
    const auto linear = make_path(kOnes, 2.0, EvalMode::linear);
    EXPECT_EQ(eval(step, 0.6), 1.0);
    EXPECT_DOUBLE_EQ(eval(linear, 0.625), 1.25);
    EXPECT_EQ(eval(step, 0.0), 0.0);
    EXPECT_EQ(eval(linear, 0.0), 0.0);
    EXPECT_EQ(eval(step, 1.0), 2.0);
    EXPECT_EQ(eval(linear, 1.0), 2.0);
    EXPECT_THROW(eval(step, -0.01), DomainError);
    EXPECT_THROW(eval(step, 1.01), DomainError);
    EXPECT_THROW(eval(step, std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST(Eval, StepIsRightContinuousAndPiecewiseConstant) {
    RngStream s(5, "eval", 0);
    const auto path = make_path(normal_sample(s, 10), 2.0, EvalMode::step);
    for (std::size_t k = 0; k < 10; ++k) {
        const double left = static_cast<double>(k) / 10.0;
        const double value = eval(path, left);
        EXPECT_EQ(value, path.values()[k]);
        for (double frac : {0.1, 0.5, 0.9}) {
            EXPECT_EQ(eval(path, left + frac / 10.0), value);
        }
    }
}

TEST(Eval, LinearIsLipschitz) {
    RngStream s(6, "eval", 0);
    const auto path = make_path(normal_sample(s, 50), 2.0, EvalMode::linear);
    double max_jump = 0.0;
    for (std::size_t k = 1; k < path.values().size(); ++k) {
        max_jump = std::max(max_jump, std::abs(path.values()[k] - path.values()[k - 1]));
    }
    const double lipschitz = 50.0 * max_jump;
    for (int i = 0; i < 1000; ++i) {
        const double t = i / 1000.0;
        const double u = std::min(1.0, t + 0.0007);
        EXPECT_LE(std::abs(eval(path, u) - eval(path, t)), lipschitz * (u - t) + 1e-15);
    }
}

TEST(SupNorm, Examples) {
    EXPECT_EQ(sup_norm(make_path(kOnes, 2.0, EvalMode::step)), 2.0);
    EXPECT_EQ(sup_norm(make_path(std::vector<double>{1, -1, 1, -1}, 2.0, EvalMode::step)), 0.5);
}

TEST(Increments, Examples) {
    const auto path = make_path(kOnes, 2.0, EvalMode::step);
    EXPECT_EQ(increments(path, std::vector<double>{0.0, 1.0}), std::vector<double>{2.0});
    EXPECT_EQ(increments(path, std::vector<double>{0.25, 0.5, 1.0}), (std::vector<double>{0.5, 1.0}));
    EXPECT_THROW(increments(path, std::vector<double>{0.5, 0.25}), DomainError);
    EXPECT_THROW(increments(path, std::vector<double>{0.5, 0.5}), DomainError);
}

TEST(Increments, Telescoping) {
    RngStream s(7, "inc", 0);
    for (auto mode : {EvalMode::step, EvalMode::linear}) {
        const auto path = make_path(normal_sample(s, 333), 2.0, mode);
        const std::vector<double> times = {0.0, 0.013, 0.2, 0.5, 0.77, 0.9, 1.0};
        const auto inc = increments(path, times);
        EXPECT_NEAR(std::accumulate(inc.begin(), inc.end(), 0.0), eval(path, 1.0), 1e-12);
    }
}

TEST(PathCsv, HeaderAndRow) {
    const auto path = make_path(kOnes, 2.0, EvalMode::step);
    EXPECT_EQ(path_csv_header(4), "n,p,mode,v0,v1,v2,v3,v4");
    EXPECT_EQ(path_csv_row(path), "4,2,step,0,0.5,1,1.5,2");
    EXPECT_EQ(parse_eval_mode("linear"), EvalMode::linear);
    EXPECT_THROW(parse_eval_mode("cubic"), DomainError);
}

TEST(PathCsv, RoundTripsValuesExactly) {
    RngStream s(8, "csv", 0);
    const auto path = make_path(normal_sample(s, 20), 2.0, EvalMode::linear);
    const std::string row = path_csv_row(path);
    std::vector<double> parsed;
    std::size_t pos = 0;
    for (int field = 0; field < 3; ++field) {
        pos = row.find(',', pos) + 1;
    }
    while (pos != 0 && pos <= row.size()) {
        const auto next = row.find(',', pos);
        parsed.push_back(std::stod(row.substr(pos, next - pos)));
        pos = next == std::string::npos ? 0 : next + 1;
    }
    EXPECT_EQ(parsed, path.values());
}
