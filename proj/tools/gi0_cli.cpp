#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gi0/config.hpp"
#include "gi0/estimators.hpp"
#include "gi0/harness.hpp"
#include "gi0/model.hpp"
#include "gi0/raster.hpp"
#include "gi0/report.hpp"
#include "gi0/thresholds.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> read_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::vector<double> v;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line == "z") continue;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (!tok.empty()) v.push_back(std::stod(tok));
        }
    }
    return v;
}

std::vector<gi0::EstimatorConfig> parse_methods(const std::vector<std::string>& names,
                                                const std::vector<std::string>& fallback) {
    std::vector<gi0::EstimatorConfig> out;
    for (const std::string& n : names.empty() ? fallback : names) {
        out.push_back(gi0::config_for(n));
    }
    return out;
}

gi0::ThresholdRule parse_rule(const std::string& name, std::uint64_t seed) {
    if (name == "u0") return gi0::ThresholdRule::u0();
    if (name == "q10") return gi0::ThresholdRule::quantile(0.10);
    if (name == "q20") return gi0::ThresholdRule::quantile(0.20);
    if (name == "hill") return gi0::ThresholdRule::hill();
    if (name == "ad") return gi0::ThresholdRule::ad_auto(5, 0.05, 99, seed);
    throw std::invalid_argument("unknown threshold rule: " + name +
                                " (expected u0|q10|q20|hill|ad)");
}

gi0::RasterFormat parse_format(const std::string& f) {
    if (f == "csv-matrix") return gi0::RasterFormat::CsvMatrix;
    if (f == "raw-f32") return gi0::RasterFormat::RawF32;
    throw std::invalid_argument("unknown raster format: " + f);
}

void write_sample_csv(const std::vector<double>& v, std::ostream& out) {
    char buf[64];
    out << "z\n";
    for (double z : v) {
        std::snprintf(buf, sizeof buf, "%.17g", z);
        out << buf << "\n";
    }
}

// Per-alpha line plots of one metric against sample size.
void emit_metric_plots(const std::vector<gi0::MetricsRow>& rows, const std::string& out_dir) {
    std::vector<double> alphas;
    for (const auto& r : rows) {
        if (std::find(alphas.begin(), alphas.end(), r.alpha) == alphas.end()) {
            alphas.push_back(r.alpha);
        }
    }
    struct MetricDef {
        const char* name;
        double gi0::MetricsRow::* field;
    };
    const MetricDef defs[] = {{"convergence", &gi0::MetricsRow::convergence_rate},
                              {"bias_alpha", &gi0::MetricsRow::bias_alpha},
                              {"mse_alpha", &gi0::MetricsRow::mse_alpha}};
    for (double alpha : alphas) {
        for (const MetricDef& def : defs) {
            std::map<std::string, gi0::Series> by_method;
            for (const auto& r : rows) {
                if (r.alpha != alpha) continue;
                gi0::Series& s = by_method[r.method];
                s.name = r.method;
                s.x.push_back(static_cast<double>(r.n));
                s.y.push_back(r.*(def.field));
            }
            std::vector<gi0::Series> series;
            for (auto& [_, s] : by_method) series.push_back(std::move(s));
            char fname[128];
            std::snprintf(fname, sizeof fname, "%s/%s_alpha%g.svg", out_dir.c_str(), def.name,
                          alpha);
            gi0::render_plot(series, gi0::PlotKind::Line, fname);
        }
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Single-look G0 texture model: sampling, estimation and benchmarks"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    int replicates = 0;  // 0 = subcommand default
    std::string out_dir = ".";
    std::string format = "csv-matrix";
    app.add_option("--seed", seed, "master seed");
    app.add_option("--replicates", replicates, "Monte Carlo replicates override");
    app.add_option("--out-dir", out_dir, "output directory");
    app.add_option("--format", format, "raster format: csv-matrix | raw-f32");

    // sample
    auto* cmd_sample = app.add_subcommand("sample", "draw a (possibly contaminated) sample");
    std::size_t n = 100;
    double alpha = -5.0, gamma = 1.0, epsilon = 0.0, c_value = 0.0;
    std::string out_path;
    cmd_sample->add_option("--n", n, "sample size");
    cmd_sample->add_option("--alpha", alpha, "texture parameter (< 0)");
    cmd_sample->add_option("--gamma", gamma, "scale parameter (> 0)");
    cmd_sample->add_option("--epsilon", epsilon, "contamination probability");
    cmd_sample->add_option("--c-value", c_value, "contaminant intensity");
    cmd_sample->add_option("--out", out_path, "output CSV (default stdout)");

    // fit
    auto* cmd_fit = app.add_subcommand("fit", "fit estimators to a sample file");
    std::string fit_input;
    std::vector<std::string> fit_methods;
    std::string fit_rule = "u0";
    cmd_fit->add_option("--input", fit_input, "sample CSV, one value per line")->required();
    cmd_fit->add_option("--method", fit_methods, "estimators (repeatable)");
    cmd_fit->add_option("--threshold", fit_rule, "threshold rule: u0|q10|q20|hill|ad");

    // sweep
    auto* cmd_sweep = app.add_subcommand("sweep", "run an experiment grid from a JSON config");
    std::string sweep_config;
    cmd_sweep->add_option("--config", sweep_config, "grid config JSON")->required();

    // seif
    auto* cmd_seif = app.add_subcommand("seif", "stylized empirical influence curves");
    double seif_alpha = -5.0, seif_gamma = 100.0, c_from = 25.0, c_to = 1000.0;
    int c_points = 40;
    std::vector<std::size_t> seif_sizes{25, 49, 81, 121};
    std::vector<std::string> seif_methods;
    cmd_seif->add_option("--alpha", seif_alpha, "texture parameter");
    cmd_seif->add_option("--gamma", seif_gamma, "scale parameter");
    cmd_seif->add_option("--n", seif_sizes, "sample sizes (repeatable)");
    cmd_seif->add_option("--c-from", c_from, "smallest contaminant");
    cmd_seif->add_option("--c-to", c_to, "largest contaminant");
    cmd_seif->add_option("--c-points", c_points, "contaminant grid size");
    cmd_seif->add_option("--method", seif_methods, "estimators (repeatable)");

    // thresholds
    auto* cmd_thr = app.add_subcommand("thresholds", "threshold-rule comparison preset");

    // roi-fit
    auto* cmd_roi = app.add_subcommand("roi-fit", "fit regions of interest of a raster");
    std::string roi_raster, roi_file, roi_out = "roi_fit.csv";
    std::vector<std::string> roi_methods;
    cmd_roi->add_option("--raster", roi_raster, "raster path")->required();
    cmd_roi->add_option("--rois", roi_file, "ROI JSON file")->required();
    cmd_roi->add_option("--method", roi_methods, "estimators (repeatable)");
    cmd_roi->add_option("--out", roi_out, "output CSV name (within --out-dir)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            app.exit(e);
            return kExitOk;
        }
        std::cerr << e.what() << "\n\n" << app.help();
        return kExitValidation;
    }

    const std::vector<std::string> six = {"MGF:ADR", "MDPD", "MPLE", "LME", "MLE", "PWM"};
    const std::vector<std::string> roi_defaults = {"MLE", "MPLE", "LME", "PWM", "MDPD"};

    if (cmd_sample->parsed()) {
        gi0::TextureParams p{alpha, gamma};
        gi0::Sample s = epsilon > 0.0
                            ? gi0::sample_contaminated(n, p, {epsilon, c_value}, seed)
                            : gi0::sample(n, p, seed);
        if (out_path.empty()) {
            write_sample_csv(s.values(), std::cout);
        } else {
            std::ofstream out(out_path);
            if (!out) throw std::runtime_error(out_path + ": cannot open for writing");
            write_sample_csv(s.values(), out);
        }
        return kExitOk;
    }

    if (cmd_fit->parsed()) {
        gi0::Sample s(read_values(fit_input));
        if (s.size() < 2) {
            std::cerr << "fit: InsufficientSample (need at least 2 observations)\n";
            return kExitValidation;
        }
        gi0::ThresholdRule rule = parse_rule(fit_rule, seed);
        gi0::ThresholdResult tr = gi0::select_threshold(s, rule);
        std::printf("threshold %s: u=%.6g retained=%zu/%zu\n", rule.label().c_str(), tr.u,
                    tr.excesses.size(), s.size());
        std::printf("%-10s %12s %12s %14s %6s %10s\n", "method", "alpha", "gamma", "status",
                    "iters", "time_ms");
        for (const gi0::EstimatorConfig& cfg : parse_methods(fit_methods, six)) {
            gi0::FitResult r = gi0::fit(tr.excesses, cfg);
            std::printf("%-10s %12.5f %12.5g %14s %6d %10.3f\n", cfg.label().c_str(),
                        r.params.alpha, r.params.gamma, gi0::status_name(r.status),
                        r.iterations, r.wall_time * 1e3);
        }
        return kExitOk;
    }

    if (cmd_sweep->parsed()) {
        gi0::ExperimentGrid grid = gi0::grid_from_json_text(slurp(sweep_config));
        if (replicates > 0) grid.replicates = replicates;
        std::vector<gi0::MetricsRow> rows = gi0::run_grid(grid);
        gi0::write_csv(rows, out_dir + "/metrics.csv");
        gi0::write_json(rows, out_dir + "/metrics.json");
        emit_metric_plots(rows, out_dir);
        std::printf("wrote %zu rows to %s/metrics.{csv,json}\n", rows.size(), out_dir.c_str());
        return kExitOk;
    }

    if (cmd_seif->parsed()) {
        std::vector<double> c_grid;
        for (int i = 0; i < c_points; ++i) {
            c_grid.push_back(c_from + (c_to - c_from) * i / (c_points - 1));
        }
        gi0::TextureParams p{seif_alpha, seif_gamma};
        std::ofstream csv(out_dir + "/seif.csv");
        if (!csv) throw std::runtime_error(out_dir + "/seif.csv: cannot open for writing");
        csv << "method,n,c,alpha_hat\n";
        for (std::size_t sz : seif_sizes) {
            std::vector<gi0::Series> series;
            for (const gi0::EstimatorConfig& cfg : parse_methods(seif_methods, six)) {
                gi0::SeifCurve curve = gi0::seif_curve(cfg, sz, p, c_grid);
                gi0::Series s{curve.method, curve.c_grid, curve.estimates};
                series.push_back(s);
                for (std::size_t i = 0; i < c_grid.size(); ++i) {
                    char buf[160];
                    std::snprintf(buf, sizeof buf, "%s,%zu,%.17g,%.17g\n",
                                  curve.method.c_str(), sz, c_grid[i], curve.estimates[i]);
                    csv << buf;
                }
            }
            gi0::render_plot(series, gi0::PlotKind::Line,
                             out_dir + "/seif_n" + std::to_string(sz) + ".svg");
        }
        std::printf("wrote SEIF curves to %s\n", out_dir.c_str());
        return kExitOk;
    }

    if (cmd_thr->parsed()) {
        std::vector<gi0::MetricsRow> all;
        for (gi0::ExperimentGrid grid : gi0::threshold_comparison_preset(
                 replicates > 0 ? replicates : 200)) {
            grid.master_seed = seed;
            const std::string rule = grid.threshold_rule.label();
            for (gi0::MetricsRow row : gi0::run_grid(grid)) {
                row.method += "@" + rule;
                all.push_back(std::move(row));
            }
        }
        gi0::write_csv(all, out_dir + "/thresholds.csv");

        // Rule ranking at each n: mean alpha-MSE across the (alpha, gamma) grid.
        std::ofstream rank(out_dir + "/thresholds_ranking.csv");
        if (!rank) throw std::runtime_error("thresholds_ranking.csv: cannot open for writing");
        rank << "n,method,rule,mean_mse_alpha\n";
        std::map<std::tuple<std::size_t, std::string>, std::map<std::string, std::pair<double, int>>>
            agg;
        for (const gi0::MetricsRow& row : all) {
            const auto at = row.method.find('@');
            const std::string method = row.method.substr(0, at);
            const std::string rule = row.method.substr(at + 1);
            if (!std::isfinite(row.mse_alpha)) continue;
            auto& cell = agg[{row.n, method}][rule];
            cell.first += row.mse_alpha;
            cell.second += 1;
        }
        for (const auto& [key, rules] : agg) {
            for (const auto& [rule, acc] : rules) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "%zu,%s,%s,%.17g\n", std::get<0>(key),
                              std::get<1>(key).c_str(), rule.c_str(), acc.first / acc.second);
                rank << buf;
            }
        }
        std::printf("wrote %s/thresholds.csv and thresholds_ranking.csv\n", out_dir.c_str());
        return kExitOk;
    }

    if (cmd_roi->parsed()) {
        gi0::Raster raster = gi0::load_raster(roi_raster, parse_format(format));
        std::vector<gi0::RoiSpec> rois = gi0::rois_from_json_text(slurp(roi_file));
        gi0::RoiFitTable table =
            gi0::roi_fit(raster, rois, parse_methods(roi_methods, roi_defaults));
        gi0::write_roi_csv(table, out_dir + "/" + roi_out);
        std::printf("wrote %s/%s\n", out_dir.c_str(), roi_out.c_str());
        return kExitOk;
    }

    return kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::runtime_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    }
}
