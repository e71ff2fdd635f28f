#pragma once

#include "s2w/rng.hpp"

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace s2w {

enum class FgnMethod { circulant_fft, cholesky };

std::string to_string(FgnMethod method);

/// Largest n for which a failed circulant embedding falls back to a dense Cholesky factor.
inline constexpr std::size_t kCholeskyMaxN = 2048;

/// Eigenvalues below -kEmbeddingTolerance * max(eigenvalues) abort the embedding;
/// anything between that and zero is rounding noise and is clamped to zero.
inline constexpr double kEmbeddingTolerance = 1e-8;

/**
 * Immutable sampling plan for a stationary Gaussian sequence of length n.
 *
 * The circulant method embeds the n x n Toeplitz covariance into a circulant of size 2n
 * with first row (g(0), ..., g(n-1), g(n), g(n-1), ..., g(1)) and stores its n+1 distinct
 * eigenvalues (Davies-Harte). The Cholesky method stores the dense lower factor.
 * Plans are safe to share between threads.
 */
class FgnPlan {
public:
    /// Build from an explicit autocovariance g(0..n); autocov.size() must be n+1 with n >= 2.
    /// When `preferred` is circulant_fft and the embedding fails, falls back to Cholesky
    /// for n <= kCholeskyMaxN and throws NumericError otherwise.
    static FgnPlan from_autocovariance(std::vector<double> autocov,
                                       FgnMethod preferred = FgnMethod::circulant_fft,
                                       double hurst = 0.0);

    double hurst() const noexcept;
    std::size_t n() const noexcept;
    std::size_t circulant_size() const noexcept;
    FgnMethod method() const noexcept;
    /// Clamped circulant eigenvalues lambda_0..lambda_n (empty for the Cholesky method).
    std::span<const double> eigenvalues() const noexcept;
    /// g(0..n).
    std::span<const double> autocovariance() const noexcept;
    /// Smallest eigenvalue before clamping (0 for the Cholesky method).
    double min_raw_eigenvalue() const noexcept;

    std::vector<double> sample(RngStream& stream) const;

    struct Impl;

private:
    explicit FgnPlan(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// Plan for unit-variance fractional Gaussian noise with Hurst index `hurst`.
FgnPlan fgn_plan(double hurst, std::size_t n, FgnMethod preferred = FgnMethod::circulant_fft);

/// n draws of the stationary sequence described by `plan`.
inline std::vector<double> fgn_sample(RngStream& stream, const FgnPlan& plan) {
    return plan.sample(stream);
}

}  // namespace s2w
