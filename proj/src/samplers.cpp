#include "s2w/samplers.hpp"

#include "s2w/errors.hpp"
#include "s2w/paths.hpp"

#include <cmath>

namespace s2w {

namespace {

void require_count(std::size_t n, const char* what) {
    if (n == 0) {
        throw DomainError(std::string(what) + ": empty request (n = 0)");
    }
}

void require_p(double p, const char* what) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
        throw DomainError(std::string(what) + ": p must be a finite real >= 1");
    }
}

// Marsaglia-Tsang for shape >= 1.
double gamma_large_shape(RngStream& stream, double shape) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = 0.0;
        double v = 0.0;
        do {
            x = stream.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = stream.uniform_open();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) {
            return d * v;
        }
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

}  // namespace

std::vector<double> normal_sample(RngStream& stream, std::size_t n) {
    require_count(n, "normal_sample");
    std::vector<double> out(n);
    for (double& v : out) {
        v = stream.normal();
    }
    return out;
}

double gamma_sample(RngStream& stream, double shape) {
    if (!(shape > 0.0) || !std::isfinite(shape)) {
        throw DomainError("gamma_sample: shape must be positive");
    }
    if (shape >= 1.0) {
        return gamma_large_shape(stream, shape);
    }
    // Gamma(a) = Gamma(a+1) * U^{1/a}; done in log space so tiny shapes do not underflow
    // before the final exponentiation.
    const double g = gamma_large_shape(stream, shape + 1.0);
    const double u = stream.uniform_open();
    return std::exp(std::log(g) + std::log(u) / shape);
}

std::vector<double> pgen_sample(RngStream& stream, double p, std::size_t n) {
    require_p(p, "pgen_sample");
    require_count(n, "pgen_sample");
    std::vector<double> out(n);
    const double shape = 1.0 / p;
    for (double& v : out) {
        const double g = gamma_sample(stream, shape);
        const double magnitude = p == 2.0 ? std::sqrt(2.0 * g) : std::pow(p * g, shape);
        v = stream.sign() * magnitude;
    }
    return out;
}

std::vector<double> sphere_sample(RngStream& stream, std::size_t n, double p) {
    require_p(p, "sphere_sample");
    require_count(n, "sphere_sample");
    for (int attempt = 0; attempt < 2; ++attempt) {
        std::vector<double> x = pgen_sample(stream, p, n);
        const double norm = lp_norm(x, p);
        if (norm > 0.0) {
            for (double& v : x) {
                v /= norm;
            }
            return x;
        }
    }
    throw NumericError("sphere_sample: drew the zero vector twice");
}

std::vector<double> dan_heavy_sample(RngStream& stream, std::size_t n) {
    require_count(n, "dan_heavy_sample");
    std::vector<double> out(n);
    for (double& v : out) {
        // P(|X| > x) = x^{-2}; uniform_open() plays the role of 1 - U.
        const double magnitude = 1.0 / std::sqrt(stream.uniform_open());
        v = stream.sign() * magnitude;
    }
    return out;
}

}  // namespace s2w
