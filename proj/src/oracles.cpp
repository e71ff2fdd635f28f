#include "s2w/oracles.hpp"

#include "s2w/errors.hpp"

#include <cmath>
#include <numbers>

namespace s2w {

std::string to_string(FormulaId id) {
    switch (id) {
    case FormulaId::beta_moment: return "beta_moment";
    case FormulaId::chi2_product: return "chi2_product";
    case FormulaId::normal_abs_moment: return "normal_abs_moment";
    case FormulaId::c_hurst: return "c_hurst";
    case FormulaId::fgn_gamma: return "fgn_gamma";
    case FormulaId::pgen_density: return "pgen_density";
    case FormulaId::predicted_slope: return "predicted_slope";
    case FormulaId::dirichlet_cross: return "dirichlet_cross";
    }
    return "unknown";
}

namespace {

void require_hurst(double hurst) {
    if (!(hurst > 0.0 && hurst < 1.0)) {
        throw DomainError("hurst must lie in (0,1)");
    }
}

void require_p(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) {
        throw DomainError("p must be a finite real >= 1");
    }
}

}  // namespace

OracleValue beta_second_moment(std::size_t m, std::size_t k) {
    if (m == 0 || k == 0) {
        throw DomainError("beta_second_moment: degrees of freedom must be >= 1");
    }
    const double md = static_cast<double>(m);
    const double kd = static_cast<double>(k);
    const double value = ((md + 2.0) / (md + kd + 2.0)) * (md / (md + kd));
    return {value, FormulaId::beta_moment, {{"m", md}, {"k", kd}}, 0.0};
}

OracleValue chi2_product_expectation(std::size_t m1, std::size_t m2, std::size_t m3) {
    if (m1 == 0 || m2 == 0) {
        throw DomainError("chi2_product_expectation: m1 and m2 must be >= 1");
    }
    const double a = static_cast<double>(m1);
    const double b = static_cast<double>(m2);
    const double total = a + b + static_cast<double>(m3);
    const double value = (a * b) / ((total + 2.0) * total);
    const double bound = (a / total) * (b / total);
    return {value,
            FormulaId::chi2_product,
            {{"m1", a}, {"m2", b}, {"m3", static_cast<double>(m3)}},
            bound};
}

OracleValue normal_abs_moment(double q) {
    if (!(q > 0.0) || !std::isfinite(q)) {
        throw DomainError("normal_abs_moment: q must be positive");
    }
    // log-space keeps large q finite until the result itself overflows
    const double log_value = 0.5 * q * std::numbers::ln2 + std::lgamma(0.5 * (q + 1.0)) -
                             0.5 * std::log(std::numbers::pi);
    return {std::exp(log_value), FormulaId::normal_abs_moment, {{"q", q}}, 0.0};
}

OracleValue c_hurst(double hurst) {
    require_hurst(hurst);
    OracleValue out = normal_abs_moment(1.0 / hurst);
    out.formula = FormulaId::c_hurst;
    out.params = {{"hurst", hurst}};
    return out;
}

double fgn_gamma(double hurst, std::size_t lag) {
    if (lag == 0) {
        return 1.0;
    }
    const double two_h = 2.0 * hurst;
    const double k = static_cast<double>(lag);
    return 0.5 * (std::pow(k + 1.0, two_h) - 2.0 * std::pow(k, two_h) + std::pow(k - 1.0, two_h));
}

OracleValue fgn_autocov(double hurst, std::size_t lag) {
    require_hurst(hurst);
    return {fgn_gamma(hurst, lag),
            FormulaId::fgn_gamma,
            {{"hurst", hurst}, {"lag", static_cast<double>(lag)}},
            0.0};
}

OracleValue pgen_density(double p, double x) {
    require_p(p);
    const double log_norm = std::numbers::ln2 + std::log(p) / p + std::lgamma(1.0 + 1.0 / p);
    const double value = std::exp(-std::pow(std::abs(x), p) / p - log_norm);
    return {value, FormulaId::pgen_density, {{"p", p}, {"x", x}}, 0.0};
}

OracleValue predicted_slope(const SlopeKind& kind) {
    require_p(kind.p);
    if (kind.input == SlopeKind::Input::iid) {
        return {0.5 - 1.0 / kind.p, FormulaId::predicted_slope, {{"p", kind.p}}, 0.0};
    }
    require_hurst(kind.hurst);
    return {kind.hurst - 1.0 / kind.p,
            FormulaId::predicted_slope,
            {{"p", kind.p}, {"hurst", kind.hurst}},
            0.0};
}

OracleValue dirichlet_cross_moment(std::size_t n) {
    if (n < 2) {
        throw DomainError("dirichlet_cross_moment: n must be >= 2");
    }
    const double nd = static_cast<double>(n);
    return {1.0 / (nd * (nd + 2.0)), FormulaId::dirichlet_cross, {{"n", nd}}, 1.0 / (nd * (nd - 1.0))};
}

}  // namespace s2w
