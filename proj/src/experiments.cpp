#include "s2w/experiments.hpp"

#include "s2w/errors.hpp"
#include "s2w/fgn.hpp"
#include "s2w/format.hpp"
#include "s2w/oracles.hpp"
#include "s2w/paths.hpp"
#include "s2w/rng.hpp"
#include "s2w/samplers.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace s2w {

std::string to_string(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::bm_convergence: return "bm_convergence";
    case ExperimentKind::trichotomy_iid: return "trichotomy_iid";
    case ExperimentKind::trichotomy_fbm: return "trichotomy_fbm";
    case ExperimentKind::symmetry_checks: return "symmetry_checks";
    case ExperimentKind::moment_oracles: return "moment_oracles";
    case ExperimentKind::selfnorm_dan: return "selfnorm_dan";
    }
    return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& text) {
    for (auto kind : {ExperimentKind::bm_convergence, ExperimentKind::trichotomy_iid,
                      ExperimentKind::trichotomy_fbm, ExperimentKind::symmetry_checks,
                      ExperimentKind::moment_oracles, ExperimentKind::selfnorm_dan}) {
        if (to_string(kind) == text) {
            return kind;
        }
    }
    throw ConfigError("experiment", "unknown experiment '" + text + "'");
}

std::string to_string(StatReport::Kind kind) {
    switch (kind) {
    case StatReport::Kind::ks: return "ks";
    case StatReport::Kind::ks_control: return "ks_control";
    case StatReport::Kind::moment: return "moment";
    case StatReport::Kind::slope: return "slope";
    case StatReport::Kind::tolerance: return "tolerance";
    case StatReport::Kind::bound: return "bound";
    }
    return "unknown";
}

namespace {

std::vector<std::size_t> doubling_grid(std::size_t from_exp, std::size_t to_exp) {
    std::vector<std::size_t> grid;
    for (std::size_t e = from_exp; e <= to_exp; ++e) {
        grid.push_back(std::size_t{1} << e);
    }
    return grid;
}

}  // namespace

ExperimentConfig default_config(ExperimentKind kind) {
    ExperimentConfig c;
    c.experiment = kind;
    switch (kind) {
    case ExperimentKind::bm_convergence:
        c.n_grid = {4096};
        c.replicates = 2000;
        c.time_points = {0.25, 0.5, 1.0};
        break;
    case ExperimentKind::trichotomy_iid:
        c.n_grid = doubling_grid(10, 16);
        c.replicates = 200;
        c.time_points = {0.25, 0.5, 1.0};
        c.ks_n = 4096;
        c.ks_replicates = 2000;
        break;
    case ExperimentKind::trichotomy_fbm:
        c.n_grid = doubling_grid(10, 16);
        c.replicates = 200;
        c.time_points = {0.25, 0.5, 1.0};
        c.ks_n = 4096;
        c.ks_replicates = 1000;
        break;
    case ExperimentKind::symmetry_checks:
        c.n_grid = {64};
        c.replicates = 100000;
        c.time_points = {0.0, 0.5, 1.0};
        break;
    case ExperimentKind::moment_oracles:
        c.n_grid = {32};
        c.replicates = 100000;
        break;
    case ExperimentKind::selfnorm_dan:
        c.n_grid = {16384};
        c.replicates = 2000;
        c.time_points = {0.25, 0.5, 1.0};
        break;
    }
    return c;
}

void validate(const ExperimentConfig& c) {
    if (c.n_grid.empty()) {
        throw ConfigError("n_grid", "must not be empty");
    }
    for (std::size_t i = 0; i < c.n_grid.size(); ++i) {
        if (c.n_grid[i] == 0) {
            throw ConfigError("n_grid", "entries must be positive");
        }
        if (i > 0 && c.n_grid[i] <= c.n_grid[i - 1]) {
            throw ConfigError("n_grid", "must be strictly increasing");
        }
    }
    if (!(c.p >= 1.0) || !std::isfinite(c.p)) {
        throw ConfigError("p", "must be a finite real >= 1");
    }
    if (!(c.hurst > 0.0 && c.hurst < 1.0)) {
        throw ConfigError("hurst", "must lie in (0,1)");
    }
    for (std::size_t i = 0; i < c.time_points.size(); ++i) {
        const double t = c.time_points[i];
        if (!(t >= 0.0 && t <= 1.0)) {
            throw ConfigError("time_points", "entries must lie in [0,1]");
        }
        if (i > 0 && !(t > c.time_points[i - 1])) {
            throw ConfigError("time_points", "must be strictly increasing");
        }
    }
    const Thresholds& th = c.thresholds;
    if (!(th.ks_level > 0.0 && th.ks_level < 1.0)) {
        throw ConfigError("ks_level", "must lie in (0,1)");
    }
    if (!(th.z >= 0.0)) {
        throw ConfigError("z_threshold", "must be nonnegative");
    }
    if (!(th.slope_tolerance >= 0.0)) {
        throw ConfigError("slope_tolerance", "must be nonnegative");
    }

    const bool distributional = c.experiment == ExperimentKind::bm_convergence ||
                                c.experiment == ExperimentKind::selfnorm_dan ||
                                c.experiment == ExperimentKind::symmetry_checks ||
                                c.experiment == ExperimentKind::moment_oracles;
    if (distributional && c.replicates < 100) {
        throw ConfigError("replicates", "distributional checks need at least 100 replicates");
    }

    switch (c.experiment) {
    case ExperimentKind::bm_convergence:
        if (c.p != 2.0) {
            throw ConfigError("p", "bm_convergence requires p = 2");
        }
        [[fallthrough]];
    case ExperimentKind::selfnorm_dan:
        if (c.time_points.empty() || c.time_points.front() <= 0.0) {
            throw ConfigError("time_points", "need at least one time point in (0,1]");
        }
        break;
    case ExperimentKind::trichotomy_iid:
    case ExperimentKind::trichotomy_fbm:
        if (c.n_grid.size() < 3) {
            throw ConfigError("n_grid", "slope fits need at least 3 sizes");
        }
        if (c.replicates < 2) {
            throw ConfigError("replicates", "need at least 2 replicates per size");
        }
        if (c.experiment == ExperimentKind::trichotomy_fbm && c.n_grid.front() < 2) {
            throw ConfigError("n_grid", "fractional Gaussian noise needs n >= 2");
        }
        if (c.ks_n < 2) {
            throw ConfigError("ks_n", "must be >= 2");
        }
        if (c.ks_replicates < 100) {
            throw ConfigError("ks_replicates", "distributional checks need at least 100 replicates");
        }
        if (c.time_points.empty() || c.time_points.front() <= 0.0) {
            throw ConfigError("time_points", "need at least one time point in (0,1]");
        }
        break;
    case ExperimentKind::symmetry_checks:
        if (c.n_grid.front() < 4) {
            throw ConfigError("n_grid", "symmetry checks need n >= 4");
        }
        if (c.time_points.size() != 3) {
            throw ConfigError("time_points", "symmetry checks need exactly three points s < u < t");
        }
        break;
    case ExperimentKind::moment_oracles:
        if (c.n_grid.front() < 4) {
            throw ConfigError("n_grid", "the tightness grid needs n >= 4");
        }
        break;
    }
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) {
        threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (std::size_t w = 0; w < threads; ++w) {
            workers.emplace_back([&] {
                for (;;) {
                    if (failed.load(std::memory_order_relaxed)) {
                        return;
                    }
                    const std::size_t i = next.fetch_add(1);
                    if (i >= count) {
                        return;
                    }
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) {
                            error = std::current_exception();
                        }
                        failed = true;
                    }
                }
            });
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string stream_id(const ExperimentConfig& c, const std::string& tag, std::size_t n) {
    return to_string(c.experiment) + "/" + tag + "/n=" + std::to_string(n);
}

StatReport ks_check(std::string id, const KsResult& r, double level) {
    return {std::move(id), StatReport::Kind::ks, r.statistic, r.p_value, kNaN, kNaN, level, r.p_value >= level};
}

StatReport ks_control_check(std::string id, const KsResult& r, double level) {
    return {std::move(id), StatReport::Kind::ks_control, r.statistic, r.p_value, kNaN, kNaN, level,
            r.p_value < level};
}

StatReport moment_report(std::string id, const Estimate& e, double target, double z) {
    const MomentCheck m = moment_check(e.estimate, e.standard_error, target, z);
    return {std::move(id), StatReport::Kind::moment, m.estimate, kNaN, m.z_score, target, z, m.pass};
}

StatReport tolerance_report(std::string id, double value, double tolerance) {
    return {std::move(id), StatReport::Kind::tolerance, value, kNaN, kNaN, 0.0, tolerance, value <= tolerance};
}

StatReport bound_report(std::string id, double value, double bound) {
    return {std::move(id), StatReport::Kind::bound, value, kNaN, kNaN, bound, kNaN, value <= bound};
}

// Per-replicate summary of one self-normalized step path.
struct PathSummary {
    std::vector<double> evals;  // at the configured time points
    double qv_error = 0.0;      // |sum of squared increments - 1|
    double sup = 0.0;
    double scaled_first = 0.0;  // n^{1/p} x_1 / ||x||_p
    double raw_endpoint = 0.0;  // S_n / sqrt(n)
};

using InputGenerator = std::function<std::vector<double>(RngStream&, std::size_t)>;

std::vector<PathSummary> draw_paths(const ExperimentConfig& c, const std::string& tag, std::size_t n,
                                    std::size_t replicates, const std::vector<double>& times,
                                    const InputGenerator& generate, const RunOptions& options) {
    std::vector<PathSummary> out(replicates);
    const std::string id = stream_id(c, tag, n);
    const double root_n = std::sqrt(static_cast<double>(n));
    const double n_pow = std::pow(static_cast<double>(n), 1.0 / c.p);
    parallel_for(replicates, options.threads, [&](std::size_t r) {
        RngStream stream(c.master_seed, id, r);
        const std::vector<double> x = generate(stream, n);
        const SamplePath path = make_path(x, c.p, EvalMode::step);
        PathSummary& s = out[r];
        s.evals.reserve(times.size());
        for (double t : times) {
            s.evals.push_back(eval(path, t));
        }
        s.qv_error = std::abs(quadratic_variation(path) - 1.0);
        s.sup = sup_norm(path);
        s.scaled_first = n_pow * path.values()[1];
        s.raw_endpoint = path.values()[n] * path.normalizer() / root_n;
    });
    return out;
}

std::vector<double> column(const std::vector<PathSummary>& draws, std::size_t time_index, double scale) {
    std::vector<double> out(draws.size());
    for (std::size_t r = 0; r < draws.size(); ++r) {
        out[r] = scale * draws[r].evals[time_index];
    }
    return out;
}

// KS of every marginal against N(0, variance(t)) and the sample covariance of every pair
// of time points against covariance(s, t).
void gaussian_process_battery(const std::string& prefix, const std::vector<PathSummary>& draws,
                              const std::vector<double>& times, double scale,
                              const std::function<double(double)>& variance,
                              const std::function<double(double, double)>& covariance,
                              const Thresholds& th, std::vector<StatReport>& checks) {
    std::vector<std::vector<double>> cols;
    for (std::size_t i = 0; i < times.size(); ++i) {
        cols.push_back(column(draws, i, scale));
        checks.push_back(ks_check(prefix + "ks_t=" + format_short(times[i]),
                                  ks_test_normal(cols.back(), variance(times[i])), th.ks_level));
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        for (std::size_t j = i + 1; j < times.size(); ++j) {
            std::vector<std::pair<double, double>> pairs(draws.size());
            for (std::size_t r = 0; r < draws.size(); ++r) {
                pairs[r] = {cols[i][r], cols[j][r]};
            }
            checks.push_back(moment_report(
                prefix + "cov_s=" + format_short(times[i]) + "_t=" + format_short(times[j]),
                empirical_cov(pairs), covariance(times[i], times[j]), th.z));
        }
    }
}

void brownian_battery(const std::string& prefix, const std::vector<PathSummary>& draws,
                      const ExperimentConfig& c, std::vector<StatReport>& checks) {
    gaussian_process_battery(
        prefix, draws, c.time_points, 1.0, [](double t) { return t; },
        [](double s, double t) { return std::min(s, t); }, c.thresholds, checks);
    double worst = 0.0;
    for (const auto& d : draws) {
        worst = std::max(worst, d.qv_error);
    }
    checks.push_back(tolerance_report(prefix + "quadratic_variation", worst, c.thresholds.qv_tolerance));
}

void finish(Report& report, std::chrono::steady_clock::time_point start) {
    report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                              [](const StatReport& s) { return s.pass; });
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string n_prefix(const ExperimentConfig& c, std::size_t n) {
    return c.n_grid.size() > 1 ? "n=" + std::to_string(n) + "/" : "";
}

// Mean sup-norm over the grid, log-log slope, and the slope check against `predicted`.
void scaling_campaign(const ExperimentConfig& c, const RunOptions& options,
                      const std::function<InputGenerator(std::size_t)>& generator_for,
                      double predicted, Report& report) {
    std::vector<double> ns;
    std::vector<double> means;
    for (std::size_t n : c.n_grid) {
        const InputGenerator gen = generator_for(n);
        const auto draws = draw_paths(c, "scaling", n, c.replicates, {}, gen, options);
        std::vector<double> sups(draws.size());
        for (std::size_t r = 0; r < draws.size(); ++r) {
            sups[r] = draws[r].sup;
        }
        const Estimate e = mean_estimate(sups);
        report.scaling.push_back({n, e.estimate, e.standard_error});
        ns.push_back(static_cast<double>(n));
        means.push_back(e.estimate);
    }
    const SlopeFit fit = fit_loglog_slope(ns, means);
    report.slope_fit = fit;
    report.predicted_slope = predicted;
    const double z = fit.stderr_slope > 0.0 ? (fit.slope - predicted) / fit.stderr_slope : kNaN;
    report.checks.push_back({"slope", StatReport::Kind::slope, fit.slope, kNaN, z, predicted,
                             c.thresholds.slope_tolerance,
                             std::abs(fit.slope - predicted) <= c.thresholds.slope_tolerance});
}

bool is_boundary(double p, double critical) {
    return std::abs(p - critical) <= 1e-9 * critical;
}

}  // namespace

Report run_bm_convergence(const ExperimentConfig& c, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    validate(c);
    if (c.experiment != ExperimentKind::bm_convergence) {
        throw ConfigError("experiment", "expected bm_convergence");
    }
    Report report;
    report.config = c;
    for (std::size_t n : c.n_grid) {
        const auto draws = draw_paths(c, "normal", n, c.replicates, c.time_points,
                                      [](RngStream& s, std::size_t k) { return normal_sample(s, k); }, options);
        const std::string prefix = n_prefix(c, n);
        brownian_battery(prefix, draws, c, report.checks);
        std::vector<double> first(draws.size());
        for (std::size_t r = 0; r < draws.size(); ++r) {
            first[r] = draws[r].scaled_first;
        }
        // n^{1/2} times one coordinate of the sphere point approaches the p = 2 marginal N(0,1).
        report.checks.push_back(ks_check(prefix + "projection_marginal", ks_test_normal(first, 1.0),
                                         c.thresholds.ks_level));
    }
    finish(report, start);
    return report;
}

Report run_trichotomy_iid(const ExperimentConfig& c, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    validate(c);
    if (c.experiment != ExperimentKind::trichotomy_iid) {
        throw ConfigError("experiment", "expected trichotomy_iid");
    }
    Report report;
    report.config = c;
    const double p = c.p;
    const InputGenerator pgen = [p](RngStream& s, std::size_t n) { return pgen_sample(s, p, n); };
    scaling_campaign(
        c, options, [&](std::size_t) { return pgen; }, predicted_slope(SlopeKind::iid(p)).value, report);
    if (is_boundary(p, 2.0)) {
        const auto draws = draw_paths(c, "battery", c.ks_n, c.ks_replicates, c.time_points, pgen, options);
        brownian_battery("limit/", draws, c, report.checks);
    }
    finish(report, start);
    return report;
}

Report run_trichotomy_fbm(const ExperimentConfig& c, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    validate(c);
    if (c.experiment != ExperimentKind::trichotomy_fbm) {
        throw ConfigError("experiment", "expected trichotomy_fbm");
    }
    Report report;
    report.config = c;
    const double h = c.hurst;
    auto generator_for = [h](std::size_t n) -> InputGenerator {
        const FgnPlan plan = fgn_plan(h, n);
        return [plan](RngStream& s, std::size_t) { return fgn_sample(s, plan); };
    };
    scaling_campaign(c, options, generator_for, predicted_slope(SlopeKind::fbm(h, c.p)).value, report);

    if (is_boundary(c.p, 1.0 / h)) {
        // At p = 1/H the path tends to B^H / c_H^H, so c_H^H Z_t ~ N(0, t^{2H}).
        const double scale = std::pow(c_hurst(h).value, h);
        const auto draws = draw_paths(c, "battery", c.ks_n, c.ks_replicates, c.time_points,
                                      generator_for(c.ks_n), options);
        gaussian_process_battery(
            "limit/", draws, c.time_points, scale, [h](double t) { return std::pow(t, 2.0 * h); },
            [h](double s, double t) {
                return 0.5 * (std::pow(s, 2.0 * h) + std::pow(t, 2.0 * h) - std::pow(std::abs(t - s), 2.0 * h));
            },
            c.thresholds, report.checks);
    }
    finish(report, start);
    return report;
}

Report run_symmetry_checks(const ExperimentConfig& c, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    validate(c);
    if (c.experiment != ExperimentKind::symmetry_checks) {
        throw ConfigError("experiment", "expected symmetry_checks");
    }
    Report report;
    report.config = c;
    const std::size_t n = c.n_grid.front();
    const auto grid_index = [n](double t) {
        return std::min(n, static_cast<std::size_t>(std::floor(static_cast<double>(n) * t)));
    };
    const std::size_t is = grid_index(c.time_points[0]);
    const std::size_t iu = grid_index(c.time_points[1]);
    const std::size_t it = grid_index(c.time_points[2]);

    constexpr std::size_t kStats = 5;
    std::vector<std::array<double, kStats>> values(c.replicates);
    const std::string id = stream_id(c, "normal", n);
    parallel_for(c.replicates, options.threads, [&](std::size_t r) {
        RngStream stream(c.master_seed, id, r);
        const std::vector<double> x = normal_sample(stream, n);
        double total = 0.0;
        for (double v : x) {
            total += v * v;
        }
        const double denom = total * total;
        // Block (a, b] contributes I1 = sum x_i^2 / V^2 and I2 = sum_{i != j} x_i x_j / V^2.
        const auto block = [&](std::size_t a, std::size_t b) {
            double sum = 0.0;
            double squares = 0.0;
            for (std::size_t i = a; i < b; ++i) {
                sum += x[i];
                squares += x[i] * x[i];
            }
            return std::pair{squares / total, (sum * sum - squares) / total};
        };
        const auto later = block(iu, it);
        const auto earlier = block(is, iu);
        values[r] = {x[0] * x[1] * x[2] * x[3] / denom, x[0] * x[0] * x[1] * x[2] / denom,
                     later.first * earlier.second, later.second * earlier.first, later.second * earlier.second};
    });

    const std::array<std::string, kStats> names = {"xixjxkxl", "xi2xjxk", "i1_tu_i2_us", "i2_tu_i1_us",
                                                   "i2_tu_i2_us"};
    for (std::size_t k = 0; k < kStats; ++k) {
        std::vector<double> col(values.size());
        for (std::size_t r = 0; r < values.size(); ++r) {
            col[r] = values[r][k];
        }
        report.checks.push_back(moment_report(names[k], mean_estimate(col), 0.0, c.thresholds.z));
    }
    finish(report, start);
    return report;
}

namespace {

double chi_square(RngStream& stream, std::size_t dof) {
    double sum = 0.0;
    for (std::size_t i = 0; i < dof; ++i) {
        const double z = stream.normal();
        sum += z * z;
    }
    return sum;
}

template <class F>
Estimate monte_carlo(const ExperimentConfig& c, const std::string& tag, const RunOptions& options, F&& draw) {
    std::vector<double> values(c.replicates);
    const std::string id = to_string(c.experiment) + "/" + tag;
    parallel_for(c.replicates, options.threads, [&](std::size_t r) {
        RngStream stream(c.master_seed, id, r);
        values[r] = draw(stream);
    });
    return mean_estimate(values);
}

}  // namespace

Report run_moment_oracles(const ExperimentConfig& c, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    validate(c);
    if (c.experiment != ExperimentKind::moment_oracles) {
        throw ConfigError("experiment", "expected moment_oracles");
    }
    Report report;
    report.config = c;
    const double z = c.thresholds.z;

    const std::vector<std::pair<std::size_t, std::size_t>> beta_params = {{1, 1}, {2, 2}, {3, 7}, {10, 90}};
    for (const auto& [m, k] : beta_params) {
        const std::string tag = "beta_m=" + std::to_string(m) + "_k=" + std::to_string(k);
        const Estimate e = monte_carlo(c, tag, options, [m = m, k = k](RngStream& s) {
            const double a = chi_square(s, m);
            const double b = chi_square(s, k);
            const double ratio = a / (a + b);
            return ratio * ratio;
        });
        report.checks.push_back(moment_report(tag, e, beta_second_moment(m, k).value, z));
    }

    const std::vector<std::array<std::size_t, 3>> chi2_params = {{1, 1, 0}, {2, 3, 5}, {1, 2, 3}, {4, 4, 8}};
    for (const auto& t : chi2_params) {
        const std::string tag = "chi2_m1=" + std::to_string(t[0]) + "_m2=" + std::to_string(t[1]) +
                                "_m3=" + std::to_string(t[2]);
        const Estimate e = monte_carlo(c, tag, options, [t](RngStream& s) {
            const double a = chi_square(s, t[0]);
            const double b = chi_square(s, t[1]);
            const double rest = chi_square(s, t[2]);
            const double total = a + b + rest;
            return a * b / (total * total);
        });
        const OracleValue exact = chi2_product_expectation(t[0], t[1], t[2]);
        report.checks.push_back(moment_report(tag, e, exact.value, z));
        report.checks.push_back(bound_report(tag + "/bound", exact.value, exact.companion));
    }

    for (std::size_t n : {std::size_t{2}, std::size_t{3}, std::size_t{10}, std::size_t{50}}) {
        const std::string tag = "dirichlet_n=" + std::to_string(n);
        const Estimate e = monte_carlo(c, tag, options, [n](RngStream& s) {
            double total = 0.0;
            double x1 = 0.0;
            double x2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double v = s.normal();
                const double sq = v * v;
                total += sq;
                if (i == 0) {
                    x1 = sq;
                } else if (i == 1) {
                    x2 = sq;
                }
            }
            return x1 * x2 / (total * total);
        });
        const OracleValue exact = dirichlet_cross_moment(n);
        report.checks.push_back(moment_report(tag, e, exact.value, z));
        report.checks.push_back(bound_report(tag + "/bound", exact.value, exact.companion));
        report.checks.push_back(bound_report(tag + "/estimate_bound", e.estimate, exact.companion));
    }

    // Fourth-moment increment bound on the sphere path at a few (s, u, t) triples.
    const std::size_t n = c.n_grid.front();
    const double nd = static_cast<double>(n);
    const std::vector<std::array<double, 3>> triples = {
        {0.0, 0.25, 0.5}, {0.1, 0.4, 0.9}, {0.0, 0.5, 1.0}, {0.25, 0.5, 0.75}};
    for (const auto& triple : triples) {
        const double s_time = triple[0];
        const double u_time = triple[1];
        const double t_time = triple[2];
        const auto idx = [nd, n](double t) {
            return std::min(n, static_cast<std::size_t>(std::floor(nd * t)));
        };
        const std::size_t is = idx(s_time);
        const std::size_t iu = idx(u_time);
        const std::size_t it = idx(t_time);
        if (iu == is || it == iu) {
            continue;  // an empty block makes the product identically zero
        }
        const std::string tag = "tightness_n=" + std::to_string(n) + "_s=" + format_short(s_time) +
                                "_u=" + format_short(u_time) + "_t=" + format_short(t_time);
        const Estimate e = monte_carlo(c, tag, options, [&](RngStream& s) {
            const std::vector<double> x = normal_sample(s, n);
            const SamplePath path = make_path(x, 2.0, EvalMode::step);
            const double a = eval(path, t_time) - eval(path, u_time);
            const double b = eval(path, u_time) - eval(path, s_time);
            return a * a * b * b;
        });
        const OracleValue exact = chi2_product_expectation(it - iu, iu - is, n - (it - is));
        const double span = static_cast<double>(it - is) / nd;
        report.checks.push_back(moment_report(tag, e, exact.value, z));
        report.checks.push_back(bound_report(tag + "/bound", exact.value, span * span));
    }

    finish(report, start);
    return report;
}

Report run_selfnorm_dan(const ExperimentConfig& c, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    validate(c);
    if (c.experiment != ExperimentKind::selfnorm_dan) {
        throw ConfigError("experiment", "expected selfnorm_dan");
    }
    if (c.p != 2.0) {
        throw ConfigError("p", "selfnorm_dan normalizes by V_n (p = 2)");
    }
    Report report;
    report.config = c;
    for (std::size_t n : c.n_grid) {
        const auto draws =
            draw_paths(c, "heavy", n, c.replicates, c.time_points,
                       [](RngStream& s, std::size_t k) { return dan_heavy_sample(s, k); }, options);
        const std::string prefix = n_prefix(c, n);
        brownian_battery(prefix, draws, c, report.checks);
        std::vector<double> raw(draws.size());
        for (std::size_t r = 0; r < draws.size(); ++r) {
            raw[r] = draws[r].raw_endpoint;
        }
        // S_n / sqrt(n) has no normal limit here; KS must reject it.
        report.checks.push_back(ks_control_check(prefix + "control_unnormalized", ks_test_normal(raw, 1.0),
                                                 c.thresholds.control_ks_level));
    }
    finish(report, start);
    return report;
}

Report run_experiment(const ExperimentConfig& c, const RunOptions& options) {
    switch (c.experiment) {
    case ExperimentKind::bm_convergence: return run_bm_convergence(c, options);
    case ExperimentKind::trichotomy_iid: return run_trichotomy_iid(c, options);
    case ExperimentKind::trichotomy_fbm: return run_trichotomy_fbm(c, options);
    case ExperimentKind::symmetry_checks: return run_symmetry_checks(c, options);
    case ExperimentKind::moment_oracles: return run_moment_oracles(c, options);
    case ExperimentKind::selfnorm_dan: return run_selfnorm_dan(c, options);
    }
    throw ConfigError("experiment", "unknown experiment");
}

}  // namespace s2w
