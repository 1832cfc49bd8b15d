#include "gi0/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gi0 {

namespace {

constexpr const char* kHeader =
    "method,alpha,gamma,n,convergence_rate,bias_alpha,mse_alpha,"
    "bias_gamma,mse_gamma,median_time_ms,replicates_used";

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << text;
    if (!out) throw std::runtime_error(path + ": write failed");
}

nlohmann::json row_to_json(const MetricsRow& r) {
    auto maybe = [](double v) {
        return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
    };
    return nlohmann::json{{"method", r.method},
                          {"alpha", r.alpha},
                          {"gamma", r.gamma},
                          {"n", r.n},
                          {"convergence_rate", r.convergence_rate},
                          {"bias_alpha", maybe(r.bias_alpha)},
                          {"mse_alpha", maybe(r.mse_alpha)},
                          {"bias_gamma", maybe(r.bias_gamma)},
                          {"mse_gamma", maybe(r.mse_gamma)},
                          {"median_time_ms", r.median_time_ms},
                          {"replicates_used", r.replicates_used}};
}

MetricsRow row_from_json(const nlohmann::json& j) {
    auto maybe = [](const nlohmann::json& v) {
        return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
    };
    MetricsRow r;
    r.method = j.at("method").get<std::string>();
    r.alpha = j.at("alpha").get<double>();
    r.gamma = j.at("gamma").get<double>();
    r.n = j.at("n").get<std::size_t>();
    r.convergence_rate = j.at("convergence_rate").get<double>();
    r.bias_alpha = maybe(j.at("bias_alpha"));
    r.mse_alpha = maybe(j.at("mse_alpha"));
    r.bias_gamma = maybe(j.at("bias_gamma"));
    r.mse_gamma = maybe(j.at("mse_gamma"));
    r.median_time_ms = j.at("median_time_ms").get<double>();
    r.replicates_used = j.at("replicates_used").get<int>();
    return r;
}

}  // namespace

std::string metrics_csv(const std::vector<MetricsRow>& rows) {
    std::ostringstream out;
    out << kHeader << "\n";
    for (const MetricsRow& r : rows) {
        out << r.method << ',' << num(r.alpha) << ',' << num(r.gamma) << ',' << r.n << ','
            << num(r.convergence_rate) << ',' << num(r.bias_alpha) << ',' << num(r.mse_alpha)
            << ',' << num(r.bias_gamma) << ',' << num(r.mse_gamma) << ','
            << num(r.median_time_ms) << ',' << r.replicates_used << "\n";
    }
    return out.str();
}

std::vector<MetricsRow> parse_metrics_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kHeader) {
        throw std::runtime_error("parse_metrics_csv: unexpected header");
    }
    std::vector<MetricsRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::vector<std::string> f;
        while (std::getline(ss, tok, ',')) f.push_back(tok);
        if (f.size() != 11) throw std::runtime_error("parse_metrics_csv: bad row");
        MetricsRow r;
        r.method = f[0];
        r.alpha = std::stod(f[1]);
        r.gamma = std::stod(f[2]);
        r.n = static_cast<std::size_t>(std::stoull(f[3]));
        r.convergence_rate = std::stod(f[4]);
        r.bias_alpha = std::stod(f[5]);
        r.mse_alpha = std::stod(f[6]);
        r.bias_gamma = std::stod(f[7]);
        r.mse_gamma = std::stod(f[8]);
        r.median_time_ms = std::stod(f[9]);
        r.replicates_used = std::stoi(f[10]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_csv(const std::vector<MetricsRow>& rows, const std::string& path) {
    write_text(path, metrics_csv(rows));
}

void write_json(const std::vector<MetricsRow>& rows, const std::string& path) {
    nlohmann::json arr = nlohmann::json::array();
    for (const MetricsRow& r : rows) arr.push_back(row_to_json(r));
    write_text(path, arr.dump(2) + "\n");
}

std::vector<MetricsRow> read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    nlohmann::json arr;
    in >> arr;
    std::vector<MetricsRow> rows;
    for (const auto& j : arr) rows.push_back(row_from_json(j));
    return rows;
}

std::string roi_table_csv(const RoiFitTable& table) {
    std::ostringstream out;
    out << "roi,n";
    for (const std::string& m : table.methods) out << ',' << m << ',' << m << "_status";
    out << "\n";
    for (const RoiFitRow& row : table.rows) {
        out << row.roi << ',' << row.n;
        for (std::size_t i = 0; i < row.alpha.size(); ++i) {
            out << ',' << num(row.alpha[i]) << ',' << row.status[i];
        }
        out << "\n";
    }
    return out.str();
}

void write_roi_csv(const RoiFitTable& table, const std::string& path) {
    write_text(path, roi_table_csv(table));
}

namespace {

struct Bounds {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -std::numeric_limits<double>::infinity();
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -std::numeric_limits<double>::infinity();

    void include(double x, double y) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    void pad() {
        if (xmax <= xmin) {
            xmin -= 0.5;
            xmax += 0.5;
        }
        if (ymax <= ymin) {
            ymin -= 0.5;
            ymax += 0.5;
        }
    }
};

constexpr double kW = 640.0, kH = 420.0;
constexpr double kL = 70.0, kR = 150.0, kT = 20.0, kB = 50.0;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

double quantile_sorted(const std::vector<double>& v, double q) {
    const double h = (static_cast<double>(v.size()) - 1.0) * q;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - std::floor(h)) * (v[hi] - v[lo]);
}

}  // namespace

std::string render_plot_svg(const std::vector<Series>& series, PlotKind kind,
                            int* skipped_out) {
    if (series.empty()) throw std::invalid_argument("render_plot: no series");
    for (const Series& s : series) {
        if (s.x.empty() || s.x.size() != s.y.size()) {
            throw std::invalid_argument("render_plot: series must be nonempty with equal x/y");
        }
    }

    int skipped = 0;
    Bounds b;
    if (kind == PlotKind::Line) {
        for (const Series& s : series) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
                    b.include(s.x[i], s.y[i]);
                } else {
                    ++skipped;
                }
            }
        }
    } else {
        for (std::size_t si = 0; si < series.size(); ++si) {
            for (double v : series[si].y) {
                if (std::isfinite(v)) {
                    b.include(static_cast<double>(si), v);
                } else {
                    ++skipped;
                }
            }
        }
        b.include(-0.5, b.ymin);
        b.include(static_cast<double>(series.size()) - 0.5, b.ymax);
    }
    b.pad();

    auto px = [&](double x) { return kL + (x - b.xmin) / (b.xmax - b.xmin) * (kW - kL - kR); };
    auto py = [&](double y) { return kH - kB - (y - b.ymin) / (b.ymax - b.ymin) * (kH - kT - kB); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
    out << "<!-- skipped: " << skipped << " -->\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes with four ticks per dimension
    out << "<g stroke=\"black\" stroke-width=\"1\">";
    out << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL << "\" y2=\""
        << kH - kB << "\"/>";
    out << "<line x1=\"" << kL << "\" y1=\"" << kH - kB << "\" x2=\"" << kW - kR
        << "\" y2=\"" << kH - kB << "\"/></g>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
    for (int t = 0; t <= 4; ++t) {
        const double fx = b.xmin + (b.xmax - b.xmin) * t / 4.0;
        const double fy = b.ymin + (b.ymax - b.ymin) * t / 4.0;
        out << "<text x=\"" << num6(px(fx)) << "\" y=\"" << kH - kB + 16
            << "\" text-anchor=\"middle\">" << num6(fx) << "</text>\n";
        out << "<text x=\"" << kL - 6 << "\" y=\"" << num6(py(fy) + 4)
            << "\" text-anchor=\"end\">" << num6(fy) << "</text>\n";
    }
    out << "</g>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const Series& s = series[si];
        const char* color = kColors[si % 8];
        if (kind == PlotKind::Line) {
            std::ostringstream pts;
            std::size_t used = 0;
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
                pts << num6(px(s.x[i])) << ',' << num6(py(s.y[i])) << ' ';
                ++used;
            }
            if (used > 1) {
                out << "<polyline fill=\"none\" stroke=\"" << color
                    << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
            }
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
                out << "<circle cx=\"" << num6(px(s.x[i])) << "\" cy=\"" << num6(py(s.y[i]))
                    << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
            }
        } else {
            std::vector<double> v;
            for (double y : s.y)
                if (std::isfinite(y)) v.push_back(y);
            if (v.empty()) continue;
            std::sort(v.begin(), v.end());
            const double q1 = quantile_sorted(v, 0.25), q2 = quantile_sorted(v, 0.5),
                         q3 = quantile_sorted(v, 0.75);
            const double cx = px(static_cast<double>(si));
            const double half = 0.35 * (kW - kL - kR) / static_cast<double>(series.size()) / 2.0;
            out << "<g stroke=\"" << color << "\" fill=\"none\" stroke-width=\"1.5\">";
            out << "<rect x=\"" << num6(cx - half) << "\" y=\"" << num6(py(q3)) << "\" width=\""
                << num6(2 * half) << "\" height=\"" << num6(py(q1) - py(q3)) << "\"/>";
            out << "<line x1=\"" << num6(cx - half) << "\" y1=\"" << num6(py(q2)) << "\" x2=\""
                << num6(cx + half) << "\" y2=\"" << num6(py(q2)) << "\"/>";
            out << "<line x1=\"" << num6(cx) << "\" y1=\"" << num6(py(v.front())) << "\" x2=\""
                << num6(cx) << "\" y2=\"" << num6(py(q1)) << "\"/>";
            out << "<line x1=\"" << num6(cx) << "\" y1=\"" << num6(py(q3)) << "\" x2=\""
                << num6(cx) << "\" y2=\"" << num6(py(v.back())) << "\"/></g>\n";
        }
        out << "<text font-family=\"sans-serif\" font-size=\"12\" x=\"" << kW - kR + 12
            << "\" y=\"" << kT + 16 + 16 * static_cast<double>(si) << "\" fill=\"" << color
            << "\">" << s.name << "</text>\n";
    }
    out << "</svg>\n";
    if (skipped_out) *skipped_out = skipped;
    return out.str();
}

int render_plot(const std::vector<Series>& series, PlotKind kind, const std::string& path) {
    int skipped = 0;
    write_text(path, render_plot_svg(series, kind, &skipped));
    return skipped;
}

}  // namespace gi0
