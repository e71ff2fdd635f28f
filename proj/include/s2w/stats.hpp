#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace s2w {

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t sample_size = 0;
    std::string target;
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    std::size_t points = 0;
};

struct MomentCheck {
    double estimate = 0.0;
    double standard_error = 0.0;
    double target = 0.0;
    double z_score = 0.0;
    bool pass = false;
};

/// Sample estimate with its standard error.
struct Estimate {
    double estimate = 0.0;
    double standard_error = 0.0;
};

/// Asymptotic Kolmogorov tail P(K > z), K = sup|B^0|.
double kolmogorov_survival(double z);

/// Standard normal CDF.
double normal_cdf(double x);

/// One-sample KS test against an arbitrary continuous CDF.
KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf,
                 std::string target);

/// One-sample KS test against N(0, variance).
KsResult ks_test_normal(std::span<const double> samples, double variance);

/// Two-sample KS test with the asymptotic p-value at effective size n m / (n + m).
KsResult ks_test_two_sample(std::span<const double> a, std::span<const double> b);

/// Mean and its standard error sd / sqrt(n).
Estimate mean_estimate(std::span<const double> values);

/// Sample covariance (divisor n-1) with a jackknife standard error.
Estimate empirical_cov(std::span<const std::pair<double, double>> pairs);

/// Ordinary least squares of log(means) on log(ns).
SlopeFit fit_loglog_slope(std::span<const double> ns, std::span<const double> means);

/// |z| <= z_threshold, or exact equality when standard_error is zero.
MomentCheck moment_check(double estimate, double standard_error, double target, double z_threshold);

}  // namespace s2w
