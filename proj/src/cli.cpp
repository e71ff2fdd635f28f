#include "s2w/cli.hpp"

#include "s2w/config.hpp"
#include "s2w/errors.hpp"
#include "s2w/experiments.hpp"
#include "s2w/fgn.hpp"
#include "s2w/format.hpp"
#include "s2w/paths.hpp"
#include "s2w/report_io.hpp"
#include "s2w/samplers.hpp"

#include <fmt/core.h>
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace s2w {

namespace {

struct Options {
    std::string config_path;
    std::string experiment;
    std::optional<std::string> seed;
    std::optional<std::size_t> n;
    std::optional<std::string> p;
    std::optional<std::string> hurst;
    std::optional<std::size_t> replicates;
    std::optional<std::string> ks_level;
    std::optional<std::string> z_threshold;
    std::optional<std::string> slope_tolerance;
    std::string dist;
    std::string mode = "step";
    std::string format = "json";
    std::string out_path;
    std::size_t threads = 0;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("config", "cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const Options& o, std::ostream& out, const std::string& text) {
    if (o.out_path.empty()) {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(o.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw ConfigError("out", "cannot open '" + o.out_path + "' for writing");
    }
    file << text;
}

// Precedence, lowest first: experiment defaults, SPHERE2WIENER_SEED, config file, flags.
ExperimentConfig effective_config(const Options& o, const std::optional<std::string>& env_seed,
                                  std::optional<ExperimentKind> fallback) {
    ConfigEntries entries;
    if (!o.config_path.empty()) {
        entries = read_config_entries(read_file(o.config_path));
    }
    std::optional<ExperimentKind> kind;
    if (!o.experiment.empty()) {
        kind = parse_experiment_kind(o.experiment);
    } else if (const auto it = std::find_if(entries.begin(), entries.end(),
                                            [](const auto& e) { return e.first == "experiment"; });
               it != entries.end()) {
        kind = parse_experiment_kind(it->second);
    } else {
        kind = fallback;
    }
    if (!kind) {
        throw ConfigError("experiment", "experiment required (use --config or --experiment)");
    }
    ExperimentConfig c = default_config(*kind);
    if (env_seed && !env_seed->empty()) {
        c.master_seed = parse_seed(kSeedEnvVar, *env_seed);
    }
    apply_entries(c, entries);
    if (o.seed) {
        c.master_seed = parse_seed("seed", *o.seed);
    }
    if (o.n) {
        c.n_grid = {*o.n};
    }
    if (o.p) {
        c.p = parse_real("p", *o.p);
    }
    if (o.hurst) {
        c.hurst = parse_real("hurst", *o.hurst);
    }
    if (o.replicates) {
        c.replicates = *o.replicates;
    }
    if (o.ks_level) {
        c.thresholds.ks_level = parse_real("ks_level", *o.ks_level);
    }
    if (o.z_threshold) {
        c.thresholds.z = parse_real("z_threshold", *o.z_threshold);
    }
    if (o.slope_tolerance) {
        c.thresholds.slope_tolerance = parse_real("slope_tolerance", *o.slope_tolerance);
    }
    validate(c);
    return c;
}

std::uint64_t effective_seed(const Options& o, const std::optional<std::string>& env_seed) {
    if (o.seed) {
        return parse_seed("seed", *o.seed);
    }
    if (env_seed && !env_seed->empty()) {
        return parse_seed(kSeedEnvVar, *env_seed);
    }
    return 1;
}

int cmd_verify(const Options& o, const std::optional<std::string>& env_seed, std::ostream& out,
               std::ostream& err) {
    const ExperimentConfig c = effective_config(o, env_seed, std::nullopt);
    const Report report = run_experiment(c, RunOptions{o.threads});
    write_output(o, out, o.format == "csv" ? report_to_csv(report) : report_to_json(report));
    const auto failed = std::count_if(report.checks.begin(), report.checks.end(),
                                      [](const StatReport& s) { return !s.pass; });
    err << "verify " << to_string(c.experiment) << ": " << (report.pass ? "pass" : "FAIL") << " ("
        << report.checks.size() - static_cast<std::size_t>(failed) << "/" << report.checks.size()
        << " checks, " << fmt::format("{:.2f}", report.wall_seconds) << " s)\n";
    return report.pass ? exit_pass : exit_check_failed;
}

int cmd_scaling(const Options& o, const std::optional<std::string>& env_seed, std::ostream& out,
                std::ostream& err) {
    std::optional<ExperimentKind> fallback = ExperimentKind::trichotomy_iid;
    if (o.dist == "fgn") {
        fallback = ExperimentKind::trichotomy_fbm;
    } else if (!o.dist.empty() && o.dist != "pgen") {
        throw ConfigError("dist", "scaling supports pgen or fgn inputs");
    }
    const ExperimentConfig c = effective_config(o, env_seed, fallback);
    if (c.experiment != ExperimentKind::trichotomy_iid && c.experiment != ExperimentKind::trichotomy_fbm) {
        throw ConfigError("experiment", "scaling runs trichotomy_iid or trichotomy_fbm");
    }
    const Report report = run_experiment(c, RunOptions{o.threads});
    write_output(o, out, o.format == "json" ? report_to_json(report) : scaling_to_csv(report));
    err << "scaling " << to_string(c.experiment) << ": slope " << format_short(report.slope_fit->slope)
        << " (predicted " << format_short(report.predicted_slope) << "), " << (report.pass ? "pass" : "FAIL")
        << "\n";
    return report.pass ? exit_pass : exit_check_failed;
}

struct DrawSpec {
    std::string dist;
    std::size_t n;
    double p;
    double hurst;
    std::optional<FgnPlan> plan;
};

DrawSpec draw_spec(const Options& o, std::size_t default_n) {
    DrawSpec spec{o.dist.empty() ? "normal" : o.dist, o.n.value_or(default_n), o.p ? parse_real("p", *o.p) : 2.0,
                  o.hurst ? parse_real("hurst", *o.hurst) : 0.5, std::nullopt};
    if (spec.n == 0) {
        throw ConfigError("n", "must be >= 1");
    }
    if (!(spec.p >= 1.0) || !std::isfinite(spec.p)) {
        throw ConfigError("p", "must be a finite real >= 1");
    }
    const auto& d = spec.dist;
    if (d == "fgn") {
        if (!(spec.hurst > 0.0 && spec.hurst < 1.0)) {
            throw ConfigError("hurst", "must lie in (0,1)");
        }
        if (spec.n < 2) {
            throw ConfigError("n", "fgn needs n >= 2");
        }
        spec.plan = fgn_plan(spec.hurst, spec.n);
    } else if (d != "normal" && d != "pgen" && d != "sphere" && d != "dan") {
        throw ConfigError("dist", "unknown distribution '" + d + "' (normal, pgen, sphere, dan, fgn)");
    }
    return spec;
}

std::vector<double> draw(const DrawSpec& spec, RngStream& stream) {
    if (spec.dist == "normal") {
        return normal_sample(stream, spec.n);
    }
    if (spec.dist == "pgen") {
        return pgen_sample(stream, spec.p, spec.n);
    }
    if (spec.dist == "sphere") {
        return sphere_sample(stream, spec.n, spec.p);
    }
    if (spec.dist == "dan") {
        return dan_heavy_sample(stream, spec.n);
    }
    return fgn_sample(stream, *spec.plan);
}

EchoLines draw_echo(const std::string& subcommand, const DrawSpec& spec, const Options& o,
                    std::size_t replicates, std::uint64_t seed) {
    EchoLines lines = {{"subcommand", subcommand},
                       {"dist", spec.dist},
                       {"n", std::to_string(spec.n)},
                       {"p", format_real(spec.p)}};
    if (spec.dist == "fgn") {
        lines.emplace_back("hurst", format_real(spec.hurst));
    }
    lines.emplace_back("mode", o.mode);
    lines.emplace_back("replicates", std::to_string(replicates));
    lines.emplace_back("seed", std::to_string(seed));
    return lines;
}

int cmd_sample(const Options& o, const std::optional<std::string>& env_seed, std::ostream& out) {
    const DrawSpec spec = draw_spec(o, 8);
    const EvalMode mode = parse_eval_mode(o.mode);
    const std::size_t replicates = o.replicates.value_or(1);
    const std::uint64_t seed = effective_seed(o, env_seed);
    std::vector<SamplePath> paths;
    paths.reserve(replicates);
    for (std::size_t r = 0; r < replicates; ++r) {
        RngStream stream(seed, "sample/" + spec.dist, r);
        paths.push_back(make_path(draw(spec, stream), spec.p, mode));
    }
    const EchoLines echo = draw_echo("sample", spec, o, replicates, seed);
    std::string text;
    if (o.format == "json") {
        nlohmann::ordered_json doc;
        for (const auto& [k, v] : echo) {
            doc["config"][k] = v;
        }
        doc["paths"] = nlohmann::ordered_json::array();
        for (const auto& path : paths) {
            doc["paths"].push_back({{"n", path.n()},
                                    {"p", path.p()},
                                    {"mode", to_string(path.mode())},
                                    {"normalizer", path.normalizer()},
                                    {"values", path.values()}});
        }
        text = doc.dump(2) + "\n";
    } else {
        text = csv_echo(echo) + path_csv_header(spec.n) + "\n";
        for (const auto& path : paths) {
            text += path_csv_row(path) + "\n";
        }
    }
    write_output(o, out, text);
    return exit_pass;
}

int cmd_simulate(const Options& o, const std::optional<std::string>& env_seed, std::ostream& out) {
    const DrawSpec spec = draw_spec(o, 1024);
    const std::size_t replicates = o.replicates.value_or(1000);
    const std::uint64_t seed = effective_seed(o, env_seed);
    struct Row {
        double endpoint;
        double sup;
    };
    std::vector<Row> rows(replicates);
    parallel_for(replicates, o.threads, [&](std::size_t r) {
        RngStream stream(seed, "simulate/" + spec.dist, r);
        const SamplePath path = make_path(draw(spec, stream), spec.p, EvalMode::step);
        rows[r] = {eval(path, 1.0), sup_norm(path)};
    });
    const EchoLines echo = draw_echo("simulate", spec, o, replicates, seed);
    std::string text;
    if (o.format == "json") {
        nlohmann::ordered_json doc;
        for (const auto& [k, v] : echo) {
            doc["config"][k] = v;
        }
        doc["replicates"] = nlohmann::ordered_json::array();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            doc["replicates"].push_back({{"replicate", r}, {"endpoint", rows[r].endpoint}, {"sup_norm", rows[r].sup}});
        }
        text = doc.dump(2) + "\n";
    } else {
        text = csv_echo(echo) + "replicate,endpoint,sup_norm\n";
        for (std::size_t r = 0; r < rows.size(); ++r) {
            text += std::to_string(r) + "," + format_real(rows[r].endpoint) + "," + format_real(rows[r].sup) + "\n";
        }
    }
    write_output(o, out, text);
    return exit_pass;
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--seed", o.seed, "Master seed (decimal or 0x hex); overrides config and " +
                                          std::string(kSeedEnvVar));
    sub->add_option("--n", o.n, "Path length (replaces n_grid for experiments)");
    sub->add_option("--p", o.p, "Norm exponent p >= 1 (a/b accepted)");
    sub->add_option("--hurst", o.hurst, "Hurst index in (0,1) (a/b accepted)");
    sub->add_option("--replicates", o.replicates, "Replicate count");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", o.out_path, "Write output to this file instead of stdout");
    sub->add_option("--threads", o.threads, "Worker threads (0 = all cores); results do not depend on it");
}

void add_experiment_options(CLI::App* sub, Options& o) {
    sub->add_option("--config", o.config_path, "Flat key=value configuration file");
    sub->add_option("--experiment", o.experiment, "Experiment name (overrides the config file)");
    sub->add_option("--ks-level", o.ks_level, "KS significance level");
    sub->add_option("--z-threshold", o.z_threshold, "Maximum |z| for moment checks");
    sub->add_option("--slope-tolerance", o.slope_tolerance, "Allowed |slope - predicted|");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::optional<std::string>& env_seed) {
    CLI::App app{"Self-normalized path functionals: sampling and limit-theorem verification",
                 "sphere2wiener"};
    app.require_subcommand(1);
    Options o;

    auto* verify = app.add_subcommand("verify", "Run one verification experiment and write its report");
    add_common(verify, o);
    add_experiment_options(verify, o);

    auto* scaling = app.add_subcommand("scaling", "Run a sup-norm growth campaign and fit its exponent");
    add_common(scaling, o);
    add_experiment_options(scaling, o);
    scaling->add_option("--dist", o.dist, "Input law without a config: pgen (iid) or fgn");
    o.format = "json";

    auto* sample = app.add_subcommand("sample", "Dump raw self-normalized paths as CSV");
    add_common(sample, o);
    sample->add_option("--dist", o.dist, "normal, pgen, sphere, dan or fgn");
    sample->add_option("--mode", o.mode, "step or linear")->check(CLI::IsMember({"step", "linear"}));

    auto* simulate = app.add_subcommand("simulate", "Write per-replicate endpoint and sup-norm values");
    add_common(simulate, o);
    simulate->add_option("--dist", o.dist, "normal, pgen, sphere, dan or fgn");

    // Default format: JSON for reports, CSV for raw dumps and scaling tables.
    bool format_given = false;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
        for (auto* sub : {verify, scaling, sample, simulate}) {
            if (sub->parsed() && sub->count("--format") > 0) {
                format_given = true;
            }
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_pass : exit_usage;
    }
    if (!format_given) {
        o.format = (verify->parsed()) ? "json" : "csv";
    }

    try {
        if (verify->parsed()) {
            return cmd_verify(o, env_seed, out, err);
        }
        if (scaling->parsed()) {
            return cmd_scaling(o, env_seed, out, err);
        }
        if (sample->parsed()) {
            return cmd_sample(o, env_seed, out);
        }
        return cmd_simulate(o, env_seed, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << "\n";
        return exit_numeric;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_numeric;
    }
}

}  // namespace s2w
