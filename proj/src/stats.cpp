#include "s2w/stats.hpp"

#include "s2w/errors.hpp"
#include "s2w/format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace s2w {

double kolmogorov_survival(double z) {
    if (!(z > 0.0)) {
        return 1.0;
    }
    if (z < 1.18) {
        // Jacobi-transformed series for the CDF; converges fast where the alternating
        // series does not.
        const double pi2 = std::numbers::pi * std::numbers::pi;
        const double w = pi2 / (8.0 * z * z);
        double cdf = 0.0;
        for (int j = 1; j < 100; ++j) {
            const double odd = 2.0 * j - 1.0;
            const double term = std::exp(-odd * odd * w);
            cdf += term;
            if (term < 1e-16) {
                break;
            }
        }
        cdf *= std::sqrt(2.0 * std::numbers::pi) / z;
        return std::clamp(1.0 - cdf, 0.0, 1.0);
    }
    double sum = 0.0;
    for (int j = 1; j < 1000; ++j) {
        const double term = 2.0 * std::exp(-2.0 * j * j * z * z);
        sum += (j % 2 == 1) ? term : -term;
        if (term < 1e-10) {
            break;
        }
    }
    return std::clamp(sum, 0.0, 1.0);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf,
                 std::string target) {
    if (samples.empty()) {
        throw DomainError("ks_test: no samples");
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        const double above = static_cast<double>(i + 1) / n - f;
        const double below = f - static_cast<double>(i) / n;
        d = std::max({d, above, below});
    }
    d = std::clamp(d, 0.0, 1.0);
    return {d, kolmogorov_survival(std::sqrt(n) * d), sorted.size(), std::move(target)};
}

KsResult ks_test_normal(std::span<const double> samples, double variance) {
    if (!(variance > 0.0)) {
        throw DomainError("ks_test_normal: variance must be positive");
    }
    const double sd = std::sqrt(variance);
    return ks_test(
        samples, [sd](double x) { return normal_cdf(x / sd); }, "N(0," + format_real(variance) + ")");
}

KsResult ks_test_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw DomainError("ks_test_two_sample: both samples must be nonempty");
    }
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const auto nx = static_cast<double>(x.size());
    const auto ny = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) {
            ++i;
        }
        while (j < y.size() && y[j] == v) {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    const double effective = nx * ny / (nx + ny);
    return {d, kolmogorov_survival(std::sqrt(effective) * d), x.size() + y.size(), "two-sample"};
}

Estimate mean_estimate(std::span<const double> values) {
    if (values.empty()) {
        throw DomainError("mean_estimate: no values");
    }
    const auto n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    const double mean = sum / n;
    if (values.size() < 2) {
        return {mean, std::numeric_limits<double>::quiet_NaN()};
    }
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

Estimate empirical_cov(std::span<const std::pair<double, double>> pairs) {
    if (pairs.size() < 2) {
        throw DomainError("empirical_cov: need at least 2 pairs");
    }
    const std::size_t count = pairs.size();
    const auto n = static_cast<double>(count);
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [x, y] : pairs) {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    // Centered sums; leave-one-out covariances follow from these in O(1) each.
    double sx = 0.0;
    double sy = 0.0;
    double sxy = 0.0;
    for (const auto& [x, y] : pairs) {
        sx += x - mx;
        sy += y - my;
        sxy += (x - mx) * (y - my);
    }
    const double cov = (sxy - sx * sy / n) / (n - 1.0);
    if (count < 3) {
        return {cov, std::numeric_limits<double>::quiet_NaN()};
    }
    std::vector<double> loo(count);
    double loo_mean = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double xi = pairs[i].first - mx;
        const double yi = pairs[i].second - my;
        const double rx = sx - xi;
        const double ry = sy - yi;
        loo[i] = (sxy - xi * yi - rx * ry / (n - 1.0)) / (n - 2.0);
        loo_mean += loo[i];
    }
    loo_mean /= n;
    double ss = 0.0;
    for (double v : loo) {
        ss += (v - loo_mean) * (v - loo_mean);
    }
    return {cov, std::sqrt((n - 1.0) / n * ss)};
}

SlopeFit fit_loglog_slope(std::span<const double> ns, std::span<const double> means) {
    if (ns.size() != means.size()) {
        throw DomainError("fit_loglog_slope: ns and means differ in length");
    }
    if (ns.size() < 3) {
        throw DomainError("fit_loglog_slope: need at least 3 points");
    }
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (!(ns[i] > 0.0) || (i > 0 && !(ns[i] > ns[i - 1]))) {
            throw DomainError("fit_loglog_slope: ns must be positive and strictly increasing");
        }
        if (!(means[i] > 0.0)) {
            throw DomainError("fit_loglog_slope: means must be positive");
        }
    }
    const auto k = static_cast<double>(ns.size());
    std::vector<double> lx(ns.size());
    std::vector<double> ly(ns.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        lx[i] = std::log(ns[i]);
        ly[i] = std::log(means[i]);
        mx += lx[i];
        my += ly[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.points = ns.size();
    double rss = 0.0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        rss += r * r;
    }
    fit.stderr_slope = std::sqrt(rss / (k - 2.0) / sxx);
    return fit;
}

MomentCheck moment_check(double estimate, double standard_error, double target, double z_threshold) {
    if (standard_error < 0.0) {
        throw DomainError("moment_check: standard error must be nonnegative");
    }
    MomentCheck out{estimate, standard_error, target, 0.0, false};
    if (standard_error == 0.0) {
        if (estimate == target) {
            out.z_score = 0.0;
            out.pass = true;
        } else {
            out.z_score = estimate > target ? std::numeric_limits<double>::infinity()
                                            : -std::numeric_limits<double>::infinity();
        }
        return out;
    }
    out.z_score = (estimate - target) / standard_error;
    out.pass = std::abs(out.z_score) <= z_threshold;
    return out;
}

}  // namespace s2w
