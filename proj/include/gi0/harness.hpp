#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gi0/estimators.hpp"
#include "gi0/model.hpp"
#include "gi0/thresholds.hpp"

namespace gi0 {

// Monte Carlo sweep definition.
struct ExperimentGrid {
    std::vector<double> alphas;
    std::vector<double> gammas;
    std::vector<std::size_t> sizes;
    int replicates = 300;
    std::uint64_t master_seed = 1;
    std::optional<ContaminationSpec> contamination;
    std::vector<EstimatorConfig> methods;
    ThresholdRule threshold_rule;
    // When false, per-fit wall times are not measured and median_time_ms
    // is reported as 0, making whole outputs byte-reproducible.
    bool measure_time = true;

    bool valid() const;
    std::size_t cell_count() const;
};

// Per-cell summary over converged replicates.
struct MetricsRow {
    std::string method;
    double alpha = 0.0;
    double gamma = 0.0;
    std::size_t n = 0;
    double convergence_rate = 0.0;
    double bias_alpha = 0.0;
    double mse_alpha = 0.0;
    double bias_gamma = 0.0;
    double mse_gamma = 0.0;
    double median_time_ms = 0.0;
    int replicates_used = 0;  // converged replicates entering bias/MSE
};

// workers = 0 picks the hardware concurrency. Results are identical
// for any worker count.
std::vector<MetricsRow> run_grid(const ExperimentGrid& grid, int workers = 0);

// Stylized empirical influence function: alpha estimates as the
// largest element of a deterministic quantile sample sweeps a grid of
// contaminant values. Failures appear as NaN gaps.
struct SeifCurve {
    std::string method;
    std::size_t n = 0;
    TextureParams params{-1.0, 1.0};
    std::vector<double> c_grid;
    std::vector<double> estimates;
};

SeifCurve seif_curve(const EstimatorConfig& method, std::size_t n,
                     const TextureParams& p, const std::vector<double>& c_grid);

struct TimingSummary {
    std::string method;
    double median_ms = 0.0;
    double q1_ms = 0.0;
    double q3_ms = 0.0;
};

// Per-method wall time over identical seeded samples.
std::vector<TimingSummary> timing_benchmark(const std::vector<EstimatorConfig>& methods,
                                            std::size_t n, const TextureParams& p,
                                            int replicates, std::uint64_t seed);

// Threshold-rule comparison: one grid per rule, sizes {25,49,81},
// alpha {-8,-5,-2}, gamma {0.1,1,10}, methods {MDPD, MLE}.
std::vector<ExperimentGrid> threshold_comparison_preset(int replicates = 200);

// Full estimator comparison: sizes {25,49,81,121,500},
// alpha {-8,-5,-2}, gamma {0.1,1,10,100}, the six compared methods.
ExperimentGrid estimator_comparison_preset(int replicates = 300);

}  // namespace gi0
