#pragma once

#include <string>
#include <vector>

#include "gi0/harness.hpp"
#include "gi0/raster.hpp"

namespace gi0 {

// Fixed CSV header for metric rows:
// method,alpha,gamma,n,convergence_rate,bias_alpha,mse_alpha,
// bias_gamma,mse_gamma,median_time_ms,replicates_used
// Numbers carry 17 significant digits for lossless roundtrips.
std::string metrics_csv(const std::vector<MetricsRow>& rows);
std::vector<MetricsRow> parse_metrics_csv(const std::string& text);
void write_csv(const std::vector<MetricsRow>& rows, const std::string& path);
void write_json(const std::vector<MetricsRow>& rows, const std::string& path);
std::vector<MetricsRow> read_json(const std::string& path);

std::string roi_table_csv(const RoiFitTable& table);
void write_roi_csv(const RoiFitTable& table, const std::string& path);

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

enum class PlotKind { Line, Box };

// Self-contained deterministic SVG. NaN points are skipped; the skip
// count is embedded as metadata and returned.
std::string render_plot_svg(const std::vector<Series>& series, PlotKind kind,
                            int* skipped = nullptr);
int render_plot(const std::vector<Series>& series, PlotKind kind,
                const std::string& path);

}  // namespace gi0
