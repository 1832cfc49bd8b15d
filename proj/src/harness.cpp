#include "gi0/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "gi0/rng.hpp"

namespace gi0 {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& body) {
    if (workers <= 0) {
        workers = static_cast<int>(std::thread::hardware_concurrency());
        if (workers <= 0) workers = 1;
    }
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    const int spawn = std::min<std::size_t>(workers, count);
    pool.reserve(spawn);
    for (int t = 0; t < spawn; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
}

double median_of(std::vector<double> v) {
    if (v.empty()) return kNaN;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double quartile_of(std::vector<double> v, double q) {
    if (v.empty()) return kNaN;
    std::sort(v.begin(), v.end());
    const double h = (static_cast<double>(v.size()) - 1.0) * q;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - std::floor(h)) * (v[hi] - v[lo]);
}

struct ReplicateOutcome {
    bool converged = false;
    double err_alpha = 0.0;  // estimate minus truth
    double err_gamma = 0.0;
    double time_ms = 0.0;
};

struct Cell {
    std::size_t method;
    std::size_t alpha;
    std::size_t gamma;
    std::size_t size;
};

}  // namespace

bool ExperimentGrid::valid() const {
    if (alphas.empty() || gammas.empty() || sizes.empty() || methods.empty()) return false;
    if (replicates < 1) return false;
    for (double a : alphas)
        if (!(a < 0.0)) return false;
    for (double g : gammas)
        if (!(g > 0.0)) return false;
    for (std::size_t n : sizes)
        if (n < 2) return false;
    for (const EstimatorConfig& m : methods)
        if (!m.valid()) return false;
    if (contamination && !contamination->valid()) return false;
    return threshold_rule.valid();
}

std::size_t ExperimentGrid::cell_count() const {
    return methods.size() * alphas.size() * gammas.size() * sizes.size();
}

std::vector<MetricsRow> run_grid(const ExperimentGrid& grid, int workers) {
    if (!grid.valid()) throw std::invalid_argument("run_grid: invalid grid");

    std::vector<Cell> cells;
    cells.reserve(grid.cell_count());
    for (std::size_t m = 0; m < grid.methods.size(); ++m)
        for (std::size_t a = 0; a < grid.alphas.size(); ++a)
            for (std::size_t g = 0; g < grid.gammas.size(); ++g)
                for (std::size_t s = 0; s < grid.sizes.size(); ++s)
                    cells.push_back({m, a, g, s});

    const std::size_t reps = static_cast<std::size_t>(grid.replicates);
    // One sample stream per (alpha, gamma, size, replicate): methods see
    // identical data, and the stream is independent of the method list.
    const UniformStream root = make_stream(grid.master_seed);
    auto replicate_seed = [&](const Cell& c, std::size_t rep) {
        return root.child(c.alpha).child(c.gamma).child(c.size).child(rep).key();
    };

    std::vector<ReplicateOutcome> outcomes(cells.size() * reps);
    parallel_for(cells.size() * reps, workers, [&](std::size_t task) {
        const Cell& c = cells[task / reps];
        const std::size_t rep = task % reps;
        const TextureParams truth{grid.alphas[c.alpha], grid.gammas[c.gamma]};
        const std::size_t n = grid.sizes[c.size];
        const std::uint64_t seed = replicate_seed(c, rep);

        Sample s = grid.contamination
                       ? sample_contaminated(n, truth, *grid.contamination, seed)
                       : sample(n, truth, seed);

        ReplicateOutcome& out = outcomes[task];
        double u = 0.0;
        const Sample* data = &s;
        ThresholdResult tr;
        if (grid.threshold_rule.kind != ThresholdRule::Kind::U0) {
            ThresholdRule rule = grid.threshold_rule;
            rule.seed = rng::combine(seed, 0x7472756c65ULL);
            try {
                tr = select_threshold(s, rule);
            } catch (const std::exception&) {
                return;  // not converged
            }
            u = tr.u;
            data = &tr.excesses;
        }
        if (data->size() < 2) return;

        FitResult r = fit(*data, grid.methods[c.method]);
        out.time_ms = grid.measure_time ? r.wall_time * 1e3 : 0.0;
        if (r.status != FitStatus::Converged) return;
        out.converged = true;
        out.err_alpha = r.params.alpha - truth.alpha;
        // Excesses of a G0(alpha, gamma) law follow G0(alpha, gamma + u).
        out.err_gamma = r.params.gamma - (truth.gamma + u);
    });

    std::vector<MetricsRow> rows;
    rows.reserve(cells.size());
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const Cell& c = cells[ci];
        MetricsRow row;
        row.method = grid.methods[c.method].label();
        row.alpha = grid.alphas[c.alpha];
        row.gamma = grid.gammas[c.gamma];
        row.n = grid.sizes[c.size];

        std::vector<double> times;
        double sa = 0.0, sg = 0.0, qa = 0.0, qg = 0.0;
        int used = 0;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            const ReplicateOutcome& o = outcomes[ci * reps + rep];
            times.push_back(o.time_ms);
            if (!o.converged) continue;
            ++used;
            sa += o.err_alpha;
            sg += o.err_gamma;
            qa += o.err_alpha * o.err_alpha;
            qg += o.err_gamma * o.err_gamma;
        }
        row.replicates_used = used;
        row.convergence_rate = static_cast<double>(used) / static_cast<double>(reps);
        if (used > 0) {
            row.bias_alpha = sa / used;
            row.mse_alpha = qa / used;
            row.bias_gamma = sg / used;
            row.mse_gamma = qg / used;
        } else {
            row.bias_alpha = row.mse_alpha = row.bias_gamma = row.mse_gamma = kNaN;
        }
        row.median_time_ms = grid.measure_time ? median_of(times) : 0.0;
        rows.push_back(std::move(row));
    }
    return rows;
}

SeifCurve seif_curve(const EstimatorConfig& method, std::size_t n,
                     const TextureParams& p, const std::vector<double>& c_grid) {
    if (n < 5) throw std::invalid_argument("seif_curve: need n >= 5");
    for (double c : c_grid)
        if (!(c > 0.0)) throw std::invalid_argument("seif_curve: contaminants must be positive");

    const Sample base = stylized_sample(n, p);
    SeifCurve curve;
    curve.method = method.label();
    curve.n = n;
    curve.params = p;
    curve.c_grid = c_grid;
    curve.estimates.reserve(c_grid.size());
    for (double c : c_grid) {
        std::vector<double> values = base.values();
        values.back() = c;  // largest stylized point carries the contaminant
        FitResult r = fit(Sample(std::move(values)), method);
        const bool usable = r.status == FitStatus::Converged ||
                            r.status == FitStatus::BoundaryHit;
        curve.estimates.push_back(usable ? r.params.alpha : kNaN);
    }
    return curve;
}

std::vector<TimingSummary> timing_benchmark(const std::vector<EstimatorConfig>& methods,
                                            std::size_t n, const TextureParams& p,
                                            int replicates, std::uint64_t seed) {
    if (replicates < 30) throw std::invalid_argument("timing_benchmark: need >= 30 replicates");
    const UniformStream root = make_stream(seed);
    std::vector<Sample> samples;
    samples.reserve(replicates);
    for (int r = 0; r < replicates; ++r) {
        samples.push_back(sample(n, p, root.child(static_cast<std::uint64_t>(r)).key()));
    }
    std::vector<TimingSummary> out;
    for (const EstimatorConfig& m : methods) {
        std::vector<double> times;
        times.reserve(replicates);
        for (const Sample& s : samples) {
            FitResult r = fit(s, m);
            times.push_back(r.wall_time * 1e3);
        }
        TimingSummary t;
        t.method = m.label();
        t.median_ms = median_of(times);
        t.q1_ms = quartile_of(times, 0.25);
        t.q3_ms = quartile_of(times, 0.75);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<ExperimentGrid> threshold_comparison_preset(int replicates) {
    std::vector<ThresholdRule> rules{
        ThresholdRule::u0(), ThresholdRule::quantile(0.10), ThresholdRule::quantile(0.20),
        ThresholdRule::hill(), ThresholdRule::ad_auto()};
    std::vector<ExperimentGrid> grids;
    for (const ThresholdRule& rule : rules) {
        ExperimentGrid g;
        g.alphas = {-8.0, -5.0, -2.0};
        g.gammas = {0.1, 1.0, 10.0};
        g.sizes = {25, 49, 81};
        g.replicates = replicates;
        g.master_seed = 20230901;
        g.methods = {config_for(Method::Mdpd), config_for(Method::Mle)};
        g.threshold_rule = rule;
        grids.push_back(std::move(g));
    }
    return grids;
}

ExperimentGrid estimator_comparison_preset(int replicates) {
    ExperimentGrid g;
    g.alphas = {-8.0, -5.0, -2.0};
    g.gammas = {0.1, 1.0, 10.0, 100.0};
    g.sizes = {25, 49, 81, 121, 500};
    g.replicates = replicates;
    g.master_seed = 20230902;
    g.methods = {config_for("MGF:ADR"), config_for(Method::Mdpd),
                 config_for(Method::Mple), config_for(Method::Lme),
                 config_for(Method::Mle), config_for(Method::Pwm)};
    return g;
}

}  // namespace gi0
