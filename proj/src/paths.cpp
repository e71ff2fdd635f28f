#include "s2w/paths.hpp"

#include "s2w/errors.hpp"
#include "s2w/format.hpp"

#include <algorithm>
#include <cmath>

namespace s2w {

std::string to_string(EvalMode mode) {
    return mode == EvalMode::step ? "step" : "linear";
}

EvalMode parse_eval_mode(const std::string& text) {
    if (text == "step") {
        return EvalMode::step;
    }
    if (text == "linear") {
        return EvalMode::linear;
    }
    throw DomainError("unknown evaluation mode '" + text + "' (expected step or linear)");
}

std::vector<double> prefix_sums(std::span<const double> x) {
    std::vector<double> out(x.size() + 1);
    out[0] = 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += x[i];
        out[i + 1] = acc;
    }
    return out;
}

namespace {

// Neumaier-compensated summation of f(x_i).
template <class F>
double compensated_sum(std::span<const double> x, F&& f) {
    double sum = 0.0;
    double carry = 0.0;
    for (double xi : x) {
        const double term = f(xi);
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term)) {
            carry += (sum - t) + term;
        } else {
            carry += (term - t) + sum;
        }
        sum = t;
    }
    return sum + carry;
}

}  // namespace

double lp_norm(std::span<const double> x, double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
        throw DomainError("lp_norm: p must be a finite real >= 1");
    }
    if (x.empty()) {
        return 0.0;
    }
    double scale = 0.0;
    for (double xi : x) {
        scale = std::max(scale, std::abs(xi));
    }
    if (scale == 0.0) {
        return 0.0;
    }
    const double inv = 1.0 / scale;
    if (p == 2.0) {
        const double s = compensated_sum(x, [inv](double v) {
            const double r = v * inv;
            return r * r;
        });
        return scale * std::sqrt(s);
    }
    if (p == 1.0) {
        return compensated_sum(x, [](double v) { return std::abs(v); });
    }
    const double s = compensated_sum(x, [inv, p](double v) { return std::pow(std::abs(v) * inv, p); });
    return scale * std::pow(s, 1.0 / p);
}

SamplePath::SamplePath(std::vector<double> values, EvalMode mode, double normalizer, double p)
    : values_(std::move(values)), mode_(mode), normalizer_(normalizer), p_(p) {
    if (values_.empty()) {
        throw DomainError("SamplePath: at least one grid value required");
    }
}

SamplePath make_path(std::span<const double> x, double p, EvalMode mode) {
    const double norm = lp_norm(x, p);
    if (!(norm > 0.0)) {
        throw NumericError("make_path: degenerate normalizer (input vector is zero)");
    }
    std::vector<double> values = prefix_sums(x);
    for (double& v : values) {
        v /= norm;
    }
    return SamplePath(std::move(values), mode, norm, p);
}

double eval(const SamplePath& path, double t) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw DomainError("eval: t must lie in [0,1]");
    }
    const auto& v = path.values();
    const std::size_t n = path.n();
    const double pos = static_cast<double>(n) * t;
    const auto k = std::min(static_cast<std::size_t>(std::floor(pos)), n);
    if (path.mode() == EvalMode::step || k == n) {
        return v[k];
    }
    const double frac = pos - static_cast<double>(k);
    return v[k] + frac * (v[k + 1] - v[k]);
}

double sup_norm(const SamplePath& path) {
    double m = 0.0;
    for (double v : path.values()) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

std::vector<double> increments(const SamplePath& path, std::span<const double> times) {
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw DomainError("increments: times must be strictly increasing");
        }
    }
    std::vector<double> out;
    if (times.size() < 2) {
        return out;
    }
    out.reserve(times.size() - 1);
    double previous = eval(path, times[0]);
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double current = eval(path, times[i]);
        out.push_back(current - previous);
        previous = current;
    }
    return out;
}

double quadratic_variation(const SamplePath& path) {
    const auto& v = path.values();
    double qv = 0.0;
    for (std::size_t k = 1; k < v.size(); ++k) {
        const double d = v[k] - v[k - 1];
        qv += d * d;
    }
    return qv;
}

std::string path_csv_header(std::size_t n) {
    std::string out = "n,p,mode";
    for (std::size_t k = 0; k <= n; ++k) {
        out += ",v" + std::to_string(k);
    }
    return out;
}

std::string path_csv_row(const SamplePath& path) {
    std::string out = std::to_string(path.n()) + "," + format_real(path.p()) + "," + to_string(path.mode());
    for (double v : path.values()) {
        out += ',';
        out += format_real(v);
    }
    return out;
}

}  // namespace s2w
