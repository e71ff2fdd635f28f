#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace s2w {

enum class EvalMode { step, linear };

std::string to_string(EvalMode mode);
EvalMode parse_eval_mode(const std::string& text);

/// Partial sums with a leading zero: out[k] = x[0] + ... + x[k-1], out.size() == x.size() + 1.
std::vector<double> prefix_sums(std::span<const double> x);

/// l_p norm, factoring out max|x_i| so large p cannot overflow. Empty input gives 0.
double lp_norm(std::span<const double> x, double p);

/**
 * Self-normalized partial-sum path on the grid {0, 1/n, ..., 1}.
 *
 * values()[k] = (x_1 + ... + x_k) / ||x||_p. In step mode the path is the cadlag
 * functional t -> values[floor(n t)]; in linear mode it interpolates between grid points.
 * Immutable once built.
 */
class SamplePath {
public:
    SamplePath(std::vector<double> values, EvalMode mode, double normalizer, double p);

    std::size_t n() const noexcept { return values_.size() - 1; }
    const std::vector<double>& values() const noexcept { return values_; }
    EvalMode mode() const noexcept { return mode_; }
    double normalizer() const noexcept { return normalizer_; }
    double p() const noexcept { return p_; }

private:
    std::vector<double> values_;
    EvalMode mode_;
    double normalizer_;
    double p_;
};

/// Throws NumericError when x is all zeros (the normalizer would vanish).
SamplePath make_path(std::span<const double> x, double p, EvalMode mode);

/// Value at t in [0,1]; step mode uses floor(n t), t = 1 maps to the last grid value.
double eval(const SamplePath& path, double t);

/// max_k |values[k]|; exact in both modes because extrema sit on grid points.
double sup_norm(const SamplePath& path);

/// eval(t_{i+1}) - eval(t_i) for strictly increasing times.
std::vector<double> increments(const SamplePath& path, std::span<const double> times);

/// Sum of squared grid increments; equals 1 at p = 2.
double quadratic_variation(const SamplePath& path);

/// CSV header "n,p,mode,v0,...,vn" for paths of size n.
std::string path_csv_header(std::size_t n);
/// One CSV row: n, p, mode, then the n+1 grid values with 17 significant digits.
std::string path_csv_row(const SamplePath& path);

}  // namespace s2w
