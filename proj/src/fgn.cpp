#include "s2w/fgn.hpp"

#include "s2w/errors.hpp"
#include "s2w/oracles.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>

namespace s2w {

std::string to_string(FgnMethod method) {
    return method == FgnMethod::circulant_fft ? "circulant_fft" : "cholesky";
}

namespace {

// The FFTW planner is not reentrant; execution with new-array functions is.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

template <class T>
struct FftwDeleter {
    void operator()(T* p) const noexcept { fftw_free(p); }
};

template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwDeleter<T>>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t count) {
    auto* raw = static_cast<T*>(fftw_malloc(sizeof(T) * count));
    if (raw == nullptr) {
        throw std::bad_alloc();
    }
    return FftwBuffer<T>(raw);
}

}  // namespace

struct FgnPlan::Impl {
    double hurst = 0.0;
    std::size_t n = 0;
    FgnMethod method = FgnMethod::circulant_fft;
    std::vector<double> autocov;
    std::vector<double> eigen;  // lambda_0..lambda_n, clamped
    double min_raw = 0.0;
    fftw_plan c2r = nullptr;
    Eigen::MatrixXd lower;

    Impl() = default;
    Impl(const Impl&) = delete;
    Impl& operator=(const Impl&) = delete;
    ~Impl() {
        if (c2r != nullptr) {
            std::lock_guard lock(fftw_planner_mutex());
            fftw_destroy_plan(c2r);
        }
    }
};

namespace {

// Real DFT of the symmetric circulant row; returns lambda_0..lambda_n.
std::vector<double> circulant_eigenvalues(const std::vector<double>& autocov) {
    const std::size_t n = autocov.size() - 1;
    const std::size_t m = 2 * n;
    auto row = fftw_buffer<double>(m);
    auto spectrum = fftw_buffer<fftw_complex>(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        row[j] = autocov[j];
    }
    for (std::size_t j = 1; j < n; ++j) {
        row[m - j] = autocov[j];
    }
    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(m), row.get(), spectrum.get(), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    std::vector<double> eigen(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        eigen[k] = spectrum[k][0];
    }
    return eigen;
}

void build_cholesky(FgnPlan::Impl& impl) {
    const auto n = static_cast<Eigen::Index>(impl.n);
    Eigen::MatrixXd cov(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            cov(i, j) = impl.autocov[static_cast<std::size_t>(std::abs(i - j))];
        }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        throw NumericError("fgn plan: covariance matrix is not positive definite");
    }
    impl.lower = llt.matrixL();
    impl.method = FgnMethod::cholesky;
    impl.eigen.clear();
    impl.min_raw = 0.0;
}

}  // namespace

FgnPlan FgnPlan::from_autocovariance(std::vector<double> autocov, FgnMethod preferred, double hurst) {
    if (autocov.size() < 3) {
        throw DomainError("fgn plan: need n >= 2 (autocovariance of length n+1)");
    }
    if (!(autocov[0] > 0.0)) {
        throw DomainError("fgn plan: variance g(0) must be positive");
    }
    auto impl = std::make_shared<Impl>();
    impl->hurst = hurst;
    impl->n = autocov.size() - 1;
    impl->autocov = std::move(autocov);

    if (preferred == FgnMethod::cholesky) {
        if (impl->n > kCholeskyMaxN) {
            throw DomainError("fgn plan: Cholesky method limited to n <= " + std::to_string(kCholeskyMaxN));
        }
        build_cholesky(*impl);
        return FgnPlan(std::move(impl));
    }

    std::vector<double> eigen = circulant_eigenvalues(impl->autocov);
    const double max_eig = *std::max_element(eigen.begin(), eigen.end());
    const double min_eig = *std::min_element(eigen.begin(), eigen.end());
    if (min_eig < -kEmbeddingTolerance * max_eig) {
        if (impl->n <= kCholeskyMaxN) {
            build_cholesky(*impl);
            return FgnPlan(std::move(impl));
        }
        throw NumericError("fgn plan: circulant embedding failed (eigenvalue " + std::to_string(min_eig) +
                           ") and n exceeds the Cholesky limit");
    }
    impl->min_raw = min_eig;
    for (double& e : eigen) {
        e = std::max(e, 0.0);
    }
    impl->eigen = std::move(eigen);
    impl->method = FgnMethod::circulant_fft;

    const std::size_t m = 2 * impl->n;
    auto in = fftw_buffer<fftw_complex>(impl->n + 1);
    auto out = fftw_buffer<double>(m);
    {
        std::lock_guard lock(fftw_planner_mutex());
        impl->c2r = fftw_plan_dft_c2r_1d(static_cast<int>(m), in.get(), out.get(), FFTW_ESTIMATE);
    }
    if (impl->c2r == nullptr) {
        throw NumericError("fgn plan: FFTW planner failed");
    }
    return FgnPlan(std::move(impl));
}

double FgnPlan::hurst() const noexcept { return impl_->hurst; }
std::size_t FgnPlan::n() const noexcept { return impl_->n; }
std::size_t FgnPlan::circulant_size() const noexcept { return 2 * impl_->n; }
FgnMethod FgnPlan::method() const noexcept { return impl_->method; }
std::span<const double> FgnPlan::eigenvalues() const noexcept { return impl_->eigen; }
std::span<const double> FgnPlan::autocovariance() const noexcept { return impl_->autocov; }
double FgnPlan::min_raw_eigenvalue() const noexcept { return impl_->min_raw; }

std::vector<double> FgnPlan::sample(RngStream& stream) const {
    const Impl& p = *impl_;
    const std::size_t n = p.n;
    std::vector<double> result(n);

    if (p.method == FgnMethod::cholesky) {
        Eigen::VectorXd z(static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < z.size(); ++i) {
            z[i] = stream.normal();
        }
        const Eigen::VectorXd y = p.lower.triangularView<Eigen::Lower>() * z;
        std::copy(y.data(), y.data() + y.size(), result.begin());
        return result;
    }

    // Hermitian weights: a_0, a_n real with variance lambda; 0<k<n complex with
    // Re/Im each of variance lambda_k/2. The c2r transform then yields m real values
    // whose first n have the target covariance after scaling by 1/sqrt(m).
    const std::size_t m = 2 * n;
    auto in = fftw_buffer<fftw_complex>(n + 1);
    auto out = fftw_buffer<double>(m);
    in[0][0] = std::sqrt(p.eigen[0]) * stream.normal();
    in[0][1] = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double scale = std::sqrt(0.5 * p.eigen[k]);
        in[k][0] = scale * stream.normal();
        in[k][1] = scale * stream.normal();
    }
    in[n][0] = std::sqrt(p.eigen[n]) * stream.normal();
    in[n][1] = 0.0;
    fftw_execute_dft_c2r(p.c2r, in.get(), out.get());
    const double norm = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t j = 0; j < n; ++j) {
        result[j] = out[j] * norm;
    }
    return result;
}

FgnPlan fgn_plan(double hurst, std::size_t n, FgnMethod preferred) {
    if (!(hurst > 0.0 && hurst < 1.0)) {
        throw DomainError("fgn_plan: hurst must lie in (0,1)");
    }
    if (n < 2) {
        throw DomainError("fgn_plan: n must be >= 2");
    }
    std::vector<double> autocov(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        autocov[k] = fgn_gamma(hurst, k);
    }
    return FgnPlan::from_autocovariance(std::move(autocov), preferred, hurst);
}

}  // namespace s2w
