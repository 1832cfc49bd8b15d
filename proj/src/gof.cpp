#include "gi0/gof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gi0/estimators.hpp"
#include "gi0/rng.hpp"

namespace gi0 {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

const char* gof_name(GofStat s) {
    switch (s) {
        case GofStat::Ks: return "KS";
        case GofStat::Cm: return "CM";
        case GofStat::Ad: return "AD";
        case GofStat::AdR: return "ADR";
        case GofStat::AdL: return "ADL";
        case GofStat::Ad2R: return "AD2R";
        case GofStat::Ad2L: return "AD2L";
        case GofStat::Ad2: return "AD2";
    }
    return "?";
}

GofStat gof_from_name(const std::string& name) {
    if (name == "KS") return GofStat::Ks;
    if (name == "CM") return GofStat::Cm;
    if (name == "AD") return GofStat::Ad;
    if (name == "ADR") return GofStat::AdR;
    if (name == "ADL") return GofStat::AdL;
    if (name == "AD2R") return GofStat::Ad2R;
    if (name == "AD2L") return GofStat::Ad2L;
    if (name == "AD2") return GofStat::Ad2;
    throw std::invalid_argument("unknown goodness-of-fit statistic: " + name);
}

bool UniformizedSample::open_interval() const {
    for (double v : u) {
        if (!(v > 0.0 && v < 1.0)) return false;
    }
    return true;
}

UniformizedSample uniformize(const Sample& sample, const TextureParams& p) {
    if (sample.empty()) throw std::invalid_argument("uniformize: empty sample");
    const std::vector<double>& z = sample.sorted();
    UniformizedSample out;
    out.u.resize(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) out.u[i] = cdf(z[i], p);
    return out;
}

double gof_stat(GofStat stat, const UniformizedSample& us) {
    const std::vector<double>& u = us.u;
    if (u.empty()) throw std::invalid_argument("gof_stat: empty sample");
    const std::size_t m = u.size();
    const double n = static_cast<double>(m);

    const bool needs_open =
        stat != GofStat::Ks && stat != GofStat::Cm;
    if (needs_open && !us.open_interval()) return kInf;

    switch (stat) {
        case GofStat::Ks: {
            double d = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double hi = static_cast<double>(i + 1) / n - u[i];
                const double lo = u[i] - static_cast<double>(i) / n;
                d = std::max(d, std::max(hi, lo));
            }
            return d;
        }
        case GofStat::Cm: {
            double s = 1.0 / (12.0 * n);
            for (std::size_t i = 0; i < m; ++i) {
                const double t = u[i] - (2.0 * static_cast<double>(i + 1) - 1.0) / (2.0 * n);
                s += t * t;
            }
            return s;
        }
        case GofStat::Ad: {
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double w = 2.0 * static_cast<double>(i + 1) - 1.0;
                s += w * (std::log(u[i]) + std::log1p(-u[m - 1 - i]));
            }
            return -n - s / n;
        }
        case GofStat::AdR: {
            double su = 0.0, s = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                su += u[i];
                const double w = 2.0 * static_cast<double>(i + 1) - 1.0;
                s += w * std::log1p(-u[m - 1 - i]);
            }
            return n / 2.0 - 2.0 * su - s / n;
        }
        case GofStat::AdL: {
            double su = 0.0, s = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                su += u[i];
                const double w = 2.0 * static_cast<double>(i + 1) - 1.0;
                s += w * std::log(u[i]);
            }
            return -1.5 * n + 2.0 * su - s / n;
        }
        case GofStat::Ad2R: {
            double sl = 0.0, s = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                sl += std::log1p(-u[i]);
                const double w = 2.0 * static_cast<double>(i + 1) - 1.0;
                s += w / (1.0 - u[m - 1 - i]);
            }
            return 2.0 * sl + s / n;
        }
        case GofStat::Ad2L: {
            double sl = 0.0, s = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                sl += std::log(u[i]);
                const double w = 2.0 * static_cast<double>(i + 1) - 1.0;
                s += w / u[i];
            }
            return 2.0 * sl + s / n;
        }
        case GofStat::Ad2:
            return gof_stat(GofStat::Ad2R, us) + gof_stat(GofStat::Ad2L, us);
    }
    return kInf;
}

double ad_pvalue(const Sample& sample, const TextureParams& p, int n_boot,
                 std::uint64_t seed) {
    if (n_boot < 99) throw std::invalid_argument("ad_pvalue: n_boot must be >= 99");
    if (!p.valid()) throw std::invalid_argument("ad_pvalue: invalid parameters");
    const double observed = gof_stat(GofStat::Ad, uniformize(sample, p));

    EstimatorConfig cfg = config_for(Method::Mle);
    const UniformStream root = make_stream(seed);
    int used = 0, exceed = 0, dropped = 0;
    for (int b = 0; b < n_boot; ++b) {
        const std::uint64_t rep_seed = root.child(static_cast<std::uint64_t>(b)).key();
        Sample synth = gi0::sample(sample.size(), p, rep_seed);
        FitResult refit = fit(synth, cfg);
        if (refit.status == FitStatus::Diverged ||
            refit.status == FitStatus::InsufficientSample) {
            ++dropped;
            continue;
        }
        const double stat = gof_stat(GofStat::Ad, uniformize(synth, refit.params));
        ++used;
        if (stat > observed) ++exceed;
    }
    if (dropped * 2 >= n_boot) {
        throw std::runtime_error("ad_pvalue: too many bootstrap refits diverged");
    }
    return static_cast<double>(exceed) / static_cast<double>(used);
}

}  // namespace gi0
