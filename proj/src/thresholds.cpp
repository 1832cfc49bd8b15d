#include "gi0/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gi0/estimators.hpp"
#include "gi0/gof.hpp"
#include "gi0/rng.hpp"

namespace gi0 {

ThresholdRule ThresholdRule::quantile(double p) {
    ThresholdRule r;
    r.kind = Kind::Quantile;
    r.quantile_level = p;
    return r;
}

ThresholdRule ThresholdRule::hill(int window) {
    ThresholdRule r;
    r.kind = Kind::Hill;
    r.hill_window = window;
    return r;
}

ThresholdRule ThresholdRule::ad_auto(int candidates, double alpha_level, int n_boot,
                                     std::uint64_t seed) {
    ThresholdRule r;
    r.kind = Kind::AdAuto;
    r.candidates = candidates;
    r.alpha_level = alpha_level;
    r.n_boot = n_boot;
    r.seed = seed;
    return r;
}

bool ThresholdRule::valid() const {
    switch (kind) {
        case Kind::U0: return true;
        case Kind::Quantile: return quantile_level > 0.0 && quantile_level < 1.0;
        case Kind::Hill: return hill_window >= 0;
        case Kind::AdAuto:
            return candidates >= 3 && alpha_level > 0.0 && alpha_level <= 0.5 &&
                   n_boot >= 99;
    }
    return false;
}

std::string ThresholdRule::label() const {
    switch (kind) {
        case Kind::U0: return "u0";
        case Kind::Quantile: {
            const int pct = static_cast<int>(std::lround(quantile_level * 100.0));
            return "u_q" + std::to_string(pct);
        }
        case Kind::Hill: return "u_Hill";
        case Kind::AdAuto: return "u_AD";
    }
    return "?";
}

double empirical_quantile(const Sample& sample, double p) {
    if (sample.empty()) throw std::invalid_argument("empirical_quantile: empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("empirical_quantile: p in [0,1]");
    const std::vector<double>& z = sample.sorted();
    const double h = (static_cast<double>(z.size()) - 1.0) * p;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, z.size() - 1);
    return z[lo] + (h - std::floor(h)) * (z[hi] - z[lo]);
}

ThresholdResult excesses(const Sample& sample, double u) {
    if (!(u >= 0.0)) throw std::invalid_argument("excesses: threshold must be nonnegative");
    const std::vector<double>& z = sample.sorted();
    std::vector<double> ex;
    for (double v : z) {
        if (v > u) ex.push_back(v - u);
    }
    if (ex.empty()) throw std::runtime_error("excesses: no exceedances above threshold");
    ThresholdResult r;
    r.u = u;
    r.retained_fraction = static_cast<double>(ex.size()) / static_cast<double>(z.size());
    r.excesses = Sample(std::move(ex));
    return r;
}

ThresholdResult hill_threshold(const Sample& sample, int window) {
    const std::vector<double>& z = sample.sorted();
    const std::size_t n = z.size();
    if (n < 20) throw std::invalid_argument("hill_threshold: need n >= 20");
    for (double v : z) {
        if (!(v > 0.0)) throw std::invalid_argument("hill_threshold: requires positive data");
    }

    // Hill estimates H_k for k = 2 .. n/2 over the upper order statistics.
    const std::size_t kmax = n / 2;
    std::vector<double> hills;  // hills[j] = H_{j+2}
    std::vector<std::size_t> ks;
    double tail_log_sum = std::log(z[n - 1]);
    for (std::size_t k = 2; k <= kmax; ++k) {
        tail_log_sum += std::log(z[n - k + 1 - 1]);
        const double hk =
            tail_log_sum / static_cast<double>(k) - std::log(z[n - k - 1]);
        hills.push_back(hk);
        ks.push_back(k);
    }

    int w = window > 0 ? window : std::max<int>(5, static_cast<int>(n) / 20);
    if (static_cast<std::size_t>(w) > hills.size()) {
        throw std::invalid_argument("hill_threshold: window wider than the k-range");
    }

    // Most stable stretch of the Hill plot: window with minimum sd.
    std::size_t best = 0;
    double best_sd = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + w <= hills.size(); ++i) {
        double mean = 0.0;
        for (int j = 0; j < w; ++j) mean += hills[i + j];
        mean /= w;
        double ss = 0.0;
        for (int j = 0; j < w; ++j) {
            const double d = hills[i + j] - mean;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / w);
        if (sd < best_sd) {
            best_sd = sd;
            best = i;
        }
    }
    const std::size_t k_star = ks[best];
    return excesses(sample, z[n - k_star - 1]);
}

ThresholdResult ad_auto_threshold(const Sample& sample, int candidates,
                                  double alpha_level, int n_boot, std::uint64_t seed) {
    if (candidates < 3) throw std::invalid_argument("ad_auto_threshold: candidates >= 3");
    EstimatorConfig cfg = config_for(Method::Mle);

    ThresholdResult last;
    for (int c = 0; c < candidates; ++c) {
        const double level = static_cast<double>(c) / candidates;
        const double u = level == 0.0 ? 0.0 : empirical_quantile(sample, level);
        ThresholdResult tr;
        try {
            tr = excesses(sample, u);
        } catch (const std::runtime_error&) {
            continue;  // no exceedances at this candidate
        }
        if (tr.excesses.size() < 2) continue;
        FitResult refit = fit(tr.excesses, cfg);
        if (refit.status == FitStatus::Diverged ||
            refit.status == FitStatus::InsufficientSample) {
            last = tr;
            continue;
        }
        double pv;
        try {
            pv = ad_pvalue(tr.excesses, refit.params, n_boot,
                           rng::combine(seed, static_cast<std::uint64_t>(c)));
        } catch (const std::runtime_error&) {
            last = tr;
            continue;
        }
        if (pv >= alpha_level) return tr;  // smallest accepted threshold
        last = tr;
    }
    last.all_rejected = true;
    return last;
}

ThresholdResult select_threshold(const Sample& sample, const ThresholdRule& rule) {
    if (!rule.valid()) throw std::invalid_argument("select_threshold: invalid rule");
    switch (rule.kind) {
        case ThresholdRule::Kind::U0:
            return excesses(sample, 0.0);
        case ThresholdRule::Kind::Quantile: {
            if (sample.size() < 10) {
                throw std::invalid_argument("select_threshold: quantile rule needs n >= 10");
            }
            return excesses(sample, empirical_quantile(sample, rule.quantile_level));
        }
        case ThresholdRule::Kind::Hill:
            return hill_threshold(sample, rule.hill_window);
        case ThresholdRule::Kind::AdAuto:
            return ad_auto_threshold(sample, rule.candidates, rule.alpha_level,
                                     rule.n_boot, rule.seed);
    }
    throw std::logic_error("select_threshold: unreachable");
}

}  // namespace gi0
