#include "s2w/report_io.hpp"

#include "s2w/config.hpp"
#include "s2w/format.hpp"

#include <json.hpp>

#include <cmath>

namespace s2w {

namespace {

using Json = nlohmann::ordered_json;

Json real_or_null(double v) {
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

std::string csv_real(double v) {
    return std::isfinite(v) ? format_real(v) : (std::isinf(v) ? (v > 0 ? "inf" : "-inf") : "");
}

}  // namespace

std::string csv_echo(const EchoLines& lines) {
    std::string out;
    for (const auto& [key, value] : lines) {
        out += "# " + key + "=" + value + "\n";
    }
    return out;
}

std::string stat_report_csv_header() {
    return "check_id,kind,statistic,p_value,z_score,target,threshold,pass";
}

std::string stat_report_csv_row(const StatReport& s) {
    return s.id + "," + to_string(s.kind) + "," + csv_real(s.statistic) + "," + csv_real(s.p_value) + "," +
           csv_real(s.z_score) + "," + csv_real(s.target) + "," + csv_real(s.threshold) + "," +
           (s.pass ? "true" : "false");
}

std::string report_to_json(const Report& report) {
    const ExperimentConfig& c = report.config;
    Json config = Json::object();
    config["experiment"] = to_string(c.experiment);
    config["n_grid"] = c.n_grid;
    config["replicates"] = c.replicates;
    config["p"] = c.p;
    config["hurst"] = c.hurst;
    config["time_points"] = c.time_points;
    config["seed"] = c.master_seed;
    config["ks_level"] = c.thresholds.ks_level;
    config["z_threshold"] = c.thresholds.z;
    config["slope_tolerance"] = c.thresholds.slope_tolerance;
    config["ks_n"] = c.ks_n;
    config["ks_replicates"] = c.ks_replicates;
    Json checks = Json::array();
    for (const auto& s : report.checks) {
        Json row = Json::object();
        row["id"] = s.id;
        row["kind"] = to_string(s.kind);
        row["statistic"] = real_or_null(s.statistic);
        row["p_value"] = real_or_null(s.p_value);
        row["z_score"] = real_or_null(s.z_score);
        row["target"] = real_or_null(s.target);
        row["threshold"] = real_or_null(s.threshold);
        row["pass"] = s.pass;
        checks.push_back(std::move(row));
    }
    Json doc = Json::object();
    doc["config"] = std::move(config);
    doc["checks"] = std::move(checks);
    if (!report.scaling.empty()) {
        Json rows = Json::array();
        for (const auto& r : report.scaling) {
            rows.push_back(Json{{"n", r.n},
                                {"mean_sup", real_or_null(r.mean_sup)},
                                {"standard_error", real_or_null(r.standard_error)}});
        }
        doc["scaling"] = std::move(rows);
    }
    if (report.slope_fit) {
        const SlopeFit& f = *report.slope_fit;
        doc["slope_fit"] = Json{{"slope", real_or_null(f.slope)},
                                {"intercept", real_or_null(f.intercept)},
                                {"stderr_slope", real_or_null(f.stderr_slope)},
                                {"points", f.points},
                                {"predicted", real_or_null(report.predicted_slope)}};
    }
    doc["pass"] = report.pass;
    return doc.dump(2) + "\n";
}

std::string report_to_csv(const Report& report) {
    std::string out = csv_echo(config_echo(report.config));
    out += stat_report_csv_header() + "\n";
    for (const auto& s : report.checks) {
        out += stat_report_csv_row(s) + "\n";
    }
    return out;
}

std::string scaling_to_csv(const Report& report) {
    std::string out = csv_echo(config_echo(report.config));
    out += "n,mean_sup,standard_error\n";
    for (const auto& r : report.scaling) {
        out += std::to_string(r.n) + "," + format_real(r.mean_sup) + "," + format_real(r.standard_error) + "\n";
    }
    if (report.slope_fit) {
        const SlopeFit& f = *report.slope_fit;
        out += csv_echo({{"slope", format_real(f.slope)},
                         {"intercept", format_real(f.intercept)},
                         {"stderr_slope", format_real(f.stderr_slope)},
                         {"points", std::to_string(f.points)},
                         {"predicted_slope", format_real(report.predicted_slope)},
                         {"pass", report.pass ? "true" : "false"}});
    }
    return out;
}

}  // namespace s2w
