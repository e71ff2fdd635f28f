#pragma once

#include "s2w/stats.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace s2w {

enum class ExperimentKind {
    bm_convergence,
    trichotomy_iid,
    trichotomy_fbm,
    symmetry_checks,
    moment_oracles,
    selfnorm_dan,
};

std::string to_string(ExperimentKind kind);
/// Throws ConfigError naming `experiment` for unknown names.
ExperimentKind parse_experiment_kind(const std::string& text);

struct Thresholds {
    double z = 5.0;
    double ks_level = 1e-3;
    double slope_tolerance = 0.08;
    /// Relative tolerance of the quadratic-variation identity at p = 2.
    double qv_tolerance = 1e-10;
    /// The unnormalized control must reach a KS p-value below this to count as rejected.
    double control_ks_level = 1e-6;
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::bm_convergence;
    std::vector<std::size_t> n_grid;
    std::size_t replicates = 0;
    double p = 2.0;
    double hurst = 0.5;
    std::vector<double> time_points;
    Thresholds thresholds;
    std::uint64_t master_seed = 1;
    /// Path length and replicate count of the distributional battery that the trichotomy
    /// experiments run at their nondegenerate boundary.
    std::size_t ks_n = 4096;
    std::size_t ks_replicates = 2000;
};

/// Defaults for every field of the given experiment.
ExperimentConfig default_config(ExperimentKind kind);

/// Throws ConfigError naming the first offending key.
void validate(const ExperimentConfig& config);

/// Outcome of a single statistical check.
struct StatReport {
    enum class Kind {
        ks,          // pass iff p_value >= threshold
        ks_control,  // pass iff p_value < threshold (the null must be rejected)
        moment,      // pass iff |z_score| <= threshold
        slope,       // pass iff |statistic - target| <= threshold
        tolerance,   // pass iff statistic <= threshold
        bound,       // pass iff statistic <= target
    };

    std::string id;
    Kind kind = Kind::moment;
    double statistic = 0.0;
    /// NaN where a field does not apply to the kind.
    double p_value = 0.0;
    double z_score = 0.0;
    double target = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

std::string to_string(StatReport::Kind kind);

/// Mean sup-norm at one path length.
struct ScalingRow {
    std::size_t n = 0;
    double mean_sup = 0.0;
    double standard_error = 0.0;
};

struct Report {
    ExperimentConfig config;
    std::vector<StatReport> checks;
    bool pass = false;
    /// Wall-clock duration; kept out of serialized reports so they stay reproducible.
    double wall_seconds = 0.0;
    std::vector<ScalingRow> scaling;
    std::optional<SlopeFit> slope_fit;
    double predicted_slope = 0.0;
};

struct RunOptions {
    /// Worker count; 0 selects the hardware concurrency. Never affects results.
    std::size_t threads = 1;
};

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Exceptions propagate (the
/// first one raised wins).
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

Report run_bm_convergence(const ExperimentConfig& config, const RunOptions& options = {});
Report run_trichotomy_iid(const ExperimentConfig& config, const RunOptions& options = {});
Report run_trichotomy_fbm(const ExperimentConfig& config, const RunOptions& options = {});
Report run_symmetry_checks(const ExperimentConfig& config, const RunOptions& options = {});
Report run_moment_oracles(const ExperimentConfig& config, const RunOptions& options = {});
Report run_selfnorm_dan(const ExperimentConfig& config, const RunOptions& options = {});

/// Validates, then dispatches on config.experiment.
Report run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace s2w
