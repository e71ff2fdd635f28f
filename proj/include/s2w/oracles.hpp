#pragma once

#include <cstddef>
#include <map>
#include <string>

namespace s2w {

enum class FormulaId {
    beta_moment,
    chi2_product,
    normal_abs_moment,
    c_hurst,
    fgn_gamma,
    pgen_density,
    predicted_slope,
    dirichlet_cross,
};

std::string to_string(FormulaId id);

/// An exact closed-form value together with the formula and parameters it came from.
struct OracleValue {
    double value = 0.0;
    FormulaId formula{};
    std::map<std::string, double> params;
    /// Secondary closed form reported next to the value (chi2_product: the product bound).
    double companion = 0.0;
};

/// E[(chi2_m / (chi2_m + chi2_k))^2] = ((m+2)/(m+k+2)) (m/(m+k)), the Beta(m/2, k/2) second moment.
OracleValue beta_second_moment(std::size_t m, std::size_t k);

/// E[chi2_m1 chi2_m2 / (chi2_m1 + chi2_m2 + chi2_m3)^2] = m1 m2 / ((N+2) N) with N = m1+m2+m3.
/// `companion` holds the bound (m1/N)(m2/N).
OracleValue chi2_product_expectation(std::size_t m1, std::size_t m2, std::size_t m3);

/// E|Z|^q for Z ~ N(0,1): 2^{q/2} Gamma((q+1)/2) / sqrt(pi).
OracleValue normal_abs_moment(double q);

/// c_H = E|B^H_1|^{1/H}, the 1/H-th absolute moment of a standard normal.
OracleValue c_hurst(double hurst);

/// Autocovariance of unit-variance fractional Gaussian noise at lag k.
OracleValue fgn_autocov(double hurst, std::size_t lag);

/// Plain-value shortcut of fgn_autocov for inner loops.
double fgn_gamma(double hurst, std::size_t lag);

/// Density exp(-|x|^p/p) / (2 p^{1/p} Gamma(1+1/p)) of the p-generalized normal law.
OracleValue pgen_density(double p, double x);

/// Growth exponent of E sup|path| for the self-normalized step functional.
struct SlopeKind {
    enum class Input { iid, fbm } input = Input::iid;
    double p = 2.0;
    double hurst = 0.5;

    static SlopeKind iid(double p) { return {Input::iid, p, 0.5}; }
    static SlopeKind fbm(double hurst, double p) { return {Input::fbm, p, hurst}; }
};

/// iid: 1/2 - 1/p; fbm: H - 1/p. Negative means the path collapses to zero, zero a
/// nondegenerate limit, positive divergence.
OracleValue predicted_slope(const SlopeKind& kind);

/// E[X1^2 X2^2 / (sum_{i<=n} X_i^2)^2] = 1/(n(n+2)) for standard normal inputs.
/// `companion` holds the distribution-free bound 1/(n(n-1)).
OracleValue dirichlet_cross_moment(std::size_t n);

}  // namespace s2w
