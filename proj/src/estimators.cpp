#include "gi0/estimators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "optimize.hpp"

namespace gi0 {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGradTolPerN = 1e-6;  // stationarity residual per observation

double sum_log1p_ratio(const std::vector<double>& z, double gamma) {
    double s = 0.0;
    for (double v : z) s += std::log1p(v / gamma);
    return s;
}

// Negative penalized log-likelihood pieces. The MPLE penalty
// exp{eta/(eta-1)} with eta = -1/alpha reduces, on the log scale, to
// lambda/(1+alpha), which diverges to -inf as alpha -> -1 from below.
double mple_penalty(double alpha, double lambda) {
    if (alpha >= -1.0) return -kInf;
    return lambda / (1.0 + alpha);
}

struct Edges {
    bool alpha_edge;
    bool gamma_edge;
    bool any() const { return alpha_edge || gamma_edge; }
};

Edges edge_check(const TextureParams& p, const EstimatorConfig& cfg) {
    const double aw = cfg.alpha_box.hi - cfg.alpha_box.lo;
    const bool ae = (p.alpha - cfg.alpha_box.lo) <= 1e-7 * aw ||
                    (cfg.alpha_box.hi - p.alpha) <= 1e-7 * aw;
    const double lw = std::log(cfg.gamma_box.hi / cfg.gamma_box.lo);
    const bool ge = std::log(p.gamma / cfg.gamma_box.lo) <= 1e-7 * lw ||
                    std::log(cfg.gamma_box.hi / p.gamma) <= 1e-7 * lw;
    return {ae, ge};
}

TextureParams clamp_to_box(double alpha, double gamma, const EstimatorConfig& cfg) {
    if (!std::isfinite(alpha)) alpha = alpha > 0 ? cfg.alpha_box.hi : cfg.alpha_box.lo;
    if (!std::isfinite(gamma)) gamma = gamma > 0 ? cfg.gamma_box.hi : cfg.gamma_box.lo;
    return TextureParams{cfg.alpha_box.clamp(alpha), cfg.gamma_box.clamp(gamma)};
}

// Log-likelihood gradient (d/d alpha, d/d gamma).
std::pair<double, double> loglik_grad(const std::vector<double>& z,
                                      const TextureParams& p) {
    const double n = static_cast<double>(z.size());
    double s = 0.0, t = 0.0;
    for (double v : z) {
        s += std::log1p(v / p.gamma);
        t += v / (p.gamma * (p.gamma + v));
    }
    const double ga = n / p.alpha + s;
    const double gg = -(p.alpha - 1.0) * t - n / p.gamma;
    return {ga, gg};
}

// MDPD objective: integral term minus weighted empirical term,
// averaged over the sample. Closed-form integral of f^(1+omega).
double mdpd_integral(const TextureParams& p, double omega) {
    const double b = -p.alpha;
    const double d = (1.0 + b) * (1.0 + omega) - 1.0;
    return std::pow(b, 1.0 + omega) / (std::pow(p.gamma, omega) * d);
}

double mdpd_objective(const std::vector<double>& z, const TextureParams& p,
                      double omega) {
    const double b = -p.alpha;
    double acc = 0.0;
    const double lf0 = std::log(b) - std::log(p.gamma);
    for (double v : z) {
        const double lf = lf0 - (b + 1.0) * std::log1p(v / p.gamma);
        acc += std::exp(omega * lf);
    }
    acc /= static_cast<double>(z.size());
    return mdpd_integral(p, omega) - (1.0 + 1.0 / omega) * acc;
}

std::pair<double, double> mdpd_grad(const std::vector<double>& z,
                                    const TextureParams& p, double omega) {
    const double b = -p.alpha;
    const double d = (1.0 + b) * (1.0 + omega) - 1.0;
    const double integral = mdpd_integral(p, omega);
    // dI/dalpha = -dI/db; dI/db = (1+omega) omega (1+b) b^omega / (gamma^omega d^2)
    const double dI_db = (1.0 + omega) * omega * (1.0 + b) * std::pow(b, omega) /
                         (std::pow(p.gamma, omega) * d * d);
    const double dI_da = -dI_db;
    const double dI_dg = -omega * integral / p.gamma;

    double ma = 0.0, mg = 0.0;
    const double lf0 = std::log(b) - std::log(p.gamma);
    for (double v : z) {
        const double l1 = std::log1p(v / p.gamma);
        const double fw = std::exp(omega * (lf0 - (b + 1.0) * l1));
        ma += fw * (l1 + 1.0 / p.alpha);
        mg += fw * (-1.0 / p.gamma + (b + 1.0) * v / (p.gamma * (p.gamma + v)));
    }
    const double n = static_cast<double>(z.size());
    const double ga = dI_da - (1.0 + omega) * ma / n;
    const double gg = dI_dg - (1.0 + omega) * mg / n;
    return {ga, gg};
}

// MGF objective: chosen statistic of the model-CDF transform of the
// ascending order statistics.
double mgf_objective(const std::vector<double>& sorted_z, const TextureParams& p,
                     GofStat stat) {
    UniformizedSample u;
    u.u.resize(sorted_z.size());
    for (std::size_t i = 0; i < sorted_z.size(); ++i) {
        u.u[i] = -std::expm1(p.alpha * std::log1p(sorted_z[i] / p.gamma));
    }
    return gof_stat(stat, u);
}

struct BoxedObjective {
    const EstimatorConfig* cfg;
    // Objective over (alpha, log gamma).
    std::function<double(const TextureParams&)> f;

    double operator()(detail::Point2 q) const {
        return f(TextureParams{q.x, std::exp(q.y)});
    }
};

// Fixed Latin-square restart points, as (alpha fraction, log-gamma fraction).
constexpr std::array<std::pair<double, double>, 5> kStarts{{
    {0.10, 0.50}, {0.30, 0.90}, {0.50, 0.30}, {0.70, 0.70}, {0.90, 0.10}}};

struct SearchOutcome {
    TextureParams params{-1.0, 1.0};
    double objective = kInf;
    int iterations = 0;
};

// Simplex search with restarts plus coordinate polish, over the boxes
// (possibly narrowed by the caller).
SearchOutcome simplex_search(const EstimatorConfig& cfg, Interval alpha_box,
                             const std::function<double(const TextureParams&)>& f,
                             const std::vector<TextureParams>& extra_starts) {
    const detail::Point2 lo{alpha_box.lo, std::log(cfg.gamma_box.lo)};
    const detail::Point2 hi{alpha_box.hi, std::log(cfg.gamma_box.hi)};
    BoxedObjective obj{&cfg, f};

    detail::Min2 best;
    auto consider = [&](detail::Point2 start) {
        detail::Min2 m = detail::nelder_mead_box(obj, lo, hi, start, 1e-14,
                                                 5 * cfg.max_iter);
        best.iterations += m.iterations;
        if (m.f < best.f) {
            best.p = m.p;
            best.f = m.f;
        }
    };
    for (auto [fa, fg] : kStarts) {
        consider({lo.x + fa * (hi.x - lo.x), lo.y + fg * (hi.y - lo.y)});
    }
    for (const TextureParams& s : extra_starts) {
        consider({alpha_box.clamp(s.alpha),
                  std::clamp(std::log(s.gamma), lo.y, hi.y)});
    }
    best = detail::coordinate_polish(obj, lo, hi, best, 8);

    SearchOutcome out;
    out.params = TextureParams{best.p.x, std::exp(best.p.y)};
    out.objective = best.f;
    out.iterations = best.iterations;
    return out;
}

// Moment-based starting point for the simplex methods, when finite.
std::vector<TextureParams> data_starts(const Sample& sample,
                                       const EstimatorConfig& cfg) {
    std::vector<TextureParams> out;
    const std::vector<double>& z = sample.values();
    const double n = static_cast<double>(z.size());
    const double mean = std::accumulate(z.begin(), z.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : z) ss += (v - mean) * (v - mean);
    const double var = n > 1 ? ss / (n - 1.0) : 0.0;
    MomentEstimate m = mom_from_moments(mean, var);
    if (m.valid && cfg.alpha_box.contains(m.alpha) && cfg.gamma_box.contains(m.gamma)) {
        out.push_back(TextureParams{m.alpha, m.gamma});
    }
    return out;
}

}  // namespace

const char* method_name(Method m) {
    switch (m) {
        case Method::Mle: return "MLE";
        case Method::Mple: return "MPLE";
        case Method::Mom: return "MOM";
        case Method::Pwm: return "PWM";
        case Method::Lme: return "LME";
        case Method::Mdpd: return "MDPD";
        case Method::Mgf: return "MGF";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    std::string base = name;
    const auto colon = name.find(':');
    if (colon != std::string::npos) base = name.substr(0, colon);
    if (base == "MLE") return Method::Mle;
    if (base == "MPLE") return Method::Mple;
    if (base == "MOM") return Method::Mom;
    if (base == "PWM") return Method::Pwm;
    if (base == "LME") return Method::Lme;
    if (base == "MDPD") return Method::Mdpd;
    if (base == "MGF") return Method::Mgf;
    throw std::invalid_argument("unknown estimation method: " + name);
}

bool EstimatorConfig::valid() const {
    return alpha_box.lo < alpha_box.hi && alpha_box.hi < 0.0 && gamma_box.lo > 0.0 &&
           gamma_box.lo < gamma_box.hi && tol > 0.0 && max_iter > 0 &&
           mdpd_omega > 0.0 && mple_lambda > 0.0 && lme_r > -1.0 && lme_r < 0.0;
}

std::string EstimatorConfig::label() const {
    if (method == Method::Mgf) return std::string("MGF:") + gof_name(mgf_stat);
    return method_name(method);
}

EstimatorConfig config_for(Method m) {
    EstimatorConfig cfg;
    cfg.method = m;
    return cfg;
}

EstimatorConfig config_for(const std::string& name) {
    EstimatorConfig cfg;
    cfg.method = method_from_name(name);
    const auto colon = name.find(':');
    if (cfg.method == Method::Mgf && colon != std::string::npos) {
        cfg.mgf_stat = gof_from_name(name.substr(colon + 1));
    }
    return cfg;
}

const char* status_name(FitStatus s) {
    switch (s) {
        case FitStatus::Converged: return "Converged";
        case FitStatus::Diverged: return "Diverged";
        case FitStatus::BoundaryHit: return "BoundaryHit";
        case FitStatus::InsufficientSample: return "InsufficientSample";
    }
    return "?";
}

double loglik(const Sample& sample, const TextureParams& p) {
    if (sample.empty()) throw std::invalid_argument("loglik: empty sample");
    if (!p.valid()) throw std::invalid_argument("loglik: invalid parameters");
    const double n = static_cast<double>(sample.size());
    return n * std::log(-p.alpha) - n * std::log(p.gamma) +
           (p.alpha - 1.0) * sum_log1p_ratio(sample.values(), p.gamma);
}

double objective_value(const EstimatorConfig& cfg, const Sample& sample,
                       const TextureParams& p) {
    switch (cfg.method) {
        case Method::Mle:
            return -loglik(sample, p);
        case Method::Mple:
            return -(loglik(sample, p) + mple_penalty(p.alpha, cfg.mple_lambda));
        case Method::Mdpd:
            return mdpd_objective(sample.values(), p, cfg.mdpd_omega);
        case Method::Mgf:
            return mgf_objective(sample.sorted(), p, cfg.mgf_stat);
        default:
            throw std::invalid_argument("objective_value: method has no search objective");
    }
}

FitResult fit_mle(const Sample& sample, const EstimatorConfig& cfg) {
    const std::vector<double>& z = sample.values();
    const double n = static_cast<double>(z.size());
    FitResult r;

    // Profile likelihood: alpha has a closed form given gamma.
    auto alpha_for = [&](double gamma) {
        const double s = sum_log1p_ratio(z, gamma);
        return cfg.alpha_box.clamp(s > 0.0 ? -n / s : cfg.alpha_box.lo);
    };
    auto neg_profile = [&](double lg) {
        const double gamma = std::exp(lg);
        const TextureParams p{alpha_for(gamma), gamma};
        return -loglik(sample, p);
    };
    const double llo = std::log(cfg.gamma_box.lo), lhi = std::log(cfg.gamma_box.hi);
    detail::ScalarMin m =
        detail::scan_golden_min(neg_profile, llo, lhi, 240, 1e-12 * (lhi - llo),
                                200 + cfg.max_iter);
    const double gamma = std::exp(m.x);
    r.params = TextureParams{alpha_for(gamma), gamma};
    r.objective = m.fx;
    r.iterations = m.iterations;

    const Edges e = edge_check(r.params, cfg);
    if (e.any()) {
        r.status = FitStatus::BoundaryHit;
    } else {
        auto [ga, gg] = loglik_grad(z, r.params);
        const double tol = kGradTolPerN * n;
        r.status = (std::abs(ga) <= tol && std::abs(gg) * std::max(r.params.gamma, 1.0) <= tol)
                       ? FitStatus::Converged
                       : FitStatus::Diverged;
    }
    return r;
}

FitResult fit_mple(const Sample& sample, const EstimatorConfig& cfg) {
    const std::vector<double>& z = sample.values();
    const double n = static_cast<double>(z.size());
    FitResult r;

    // The penalty confines alpha to (-inf, -1); narrow the box accordingly.
    const Interval abox{cfg.alpha_box.lo, std::min(cfg.alpha_box.hi, -1.0 - 1e-9)};
    if (abox.lo >= abox.hi) {
        r.status = FitStatus::Diverged;
        r.params = clamp_to_box(cfg.alpha_box.lo, 1.0, cfg);
        return r;
    }

    int iters = 0;
    auto inner = [&](double gamma) {
        const double s = sum_log1p_ratio(z, gamma);
        auto g = [&](double alpha) {
            return -(n * std::log(-alpha) + (alpha - 1.0) * s - n * std::log(gamma) +
                     mple_penalty(alpha, cfg.mple_lambda));
        };
        detail::ScalarMin am = detail::scan_golden_min(
            g, abox.lo, abox.hi, 60, 1e-12 * (abox.hi - abox.lo), cfg.max_iter);
        iters += am.iterations;
        return am;
    };
    auto neg_profile = [&](double lg) { return inner(std::exp(lg)).fx; };
    const double llo = std::log(cfg.gamma_box.lo), lhi = std::log(cfg.gamma_box.hi);
    detail::ScalarMin m =
        detail::scan_golden_min(neg_profile, llo, lhi, 160, 1e-12 * (lhi - llo),
                                200 + cfg.max_iter);
    const double gamma = std::exp(m.x);
    detail::ScalarMin am = inner(gamma);
    r.params = TextureParams{am.x, gamma};
    r.objective = m.fx;
    r.iterations = m.iterations + iters;

    const Edges e = edge_check(r.params, cfg);
    const double aw = abox.hi - abox.lo;
    const bool inner_edge = (r.params.alpha - abox.lo) <= 1e-7 * aw;
    if (e.any() || inner_edge) {
        r.status = FitStatus::BoundaryHit;
    } else {
        auto [ga, gg] = loglik_grad(z, r.params);
        ga -= cfg.mple_lambda / ((1.0 + r.params.alpha) * (1.0 + r.params.alpha));
        const double tol = kGradTolPerN * n;
        r.status = (std::abs(ga) <= tol && std::abs(gg) * std::max(r.params.gamma, 1.0) <= tol)
                       ? FitStatus::Converged
                       : FitStatus::Diverged;
    }
    return r;
}

MomentEstimate mom_from_moments(double mean, double variance) {
    const double m2 = mean * mean;
    if (!(variance > m2)) return {0.0, 0.0, false};
    const double alpha = 2.0 * variance / (m2 - variance);
    const double gamma = mean * (m2 + variance) / (variance - m2);
    return {alpha, gamma, alpha < 0.0 && gamma > 0.0};
}

MomentEstimate pwm_from_moments(double mean, double theta) {
    const double den = 4.0 * theta - mean;
    if (std::abs(den) <= 1e-12 * std::max(1.0, std::abs(mean))) return {0.0, 0.0, false};
    const double alpha = (mean - 2.0 * theta) / den;
    const double gamma = 2.0 * theta * mean / (mean - 4.0 * theta);
    return {alpha, gamma, alpha < 0.0 && gamma > 0.0};
}

FitResult fit_mom(const Sample& sample, const EstimatorConfig& cfg) {
    const std::vector<double>& z = sample.values();
    const double n = static_cast<double>(z.size());
    const double mean = std::accumulate(z.begin(), z.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : z) ss += (v - mean) * (v - mean);
    const double variance = ss / (n - 1.0);

    FitResult r;
    r.iterations = 1;
    MomentEstimate m = mom_from_moments(mean, variance);
    if (!m.valid) {
        r.status = FitStatus::Diverged;
        r.params = clamp_to_box(m.alpha == 0.0 ? cfg.alpha_box.hi : m.alpha,
                                m.gamma == 0.0 ? mean : m.gamma, cfg);
        return r;
    }
    r.params = clamp_to_box(m.alpha, m.gamma, cfg);
    r.status = (r.params.alpha == m.alpha && r.params.gamma == m.gamma)
                   ? FitStatus::Converged
                   : FitStatus::BoundaryHit;
    return r;
}

FitResult fit_pwm(const Sample& sample, const EstimatorConfig& cfg) {
    const std::vector<double>& z = sample.sorted();
    const double n = static_cast<double>(z.size());
    double mean = 0.0, theta = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        mean += z[i];
        theta += (n - static_cast<double>(i + 1)) / (n - 1.0) * z[i];
    }
    mean /= n;
    theta /= n;

    FitResult r;
    r.iterations = 1;
    MomentEstimate m = pwm_from_moments(mean, theta);
    if (!m.valid) {
        r.status = FitStatus::Diverged;
        r.params = clamp_to_box(m.alpha == 0.0 ? cfg.alpha_box.hi : m.alpha,
                                m.gamma == 0.0 ? mean : m.gamma, cfg);
        return r;
    }
    r.params = clamp_to_box(m.alpha, m.gamma, cfg);
    r.status = (r.params.alpha == m.alpha && r.params.gamma == m.gamma)
                   ? FitStatus::Converged
                   : FitStatus::BoundaryHit;
    return r;
}

FitResult fit_lme(const Sample& sample, const EstimatorConfig& cfg) {
    const std::vector<double>& z = sample.values();
    const double n = static_cast<double>(z.size());
    const double r_order = cfg.lme_r;
    FitResult out;

    auto xi_of = [&](double b) { return sum_log1p_ratio(z, 1.0 / b) / n; };
    // Estimating equation: mean (1 + b z)^(-r/xi(b)) = 1/(1+r).
    auto h = [&](double b) {
        const double xi = xi_of(b);
        if (!(xi > 0.0)) return kInf;
        double acc = 0.0;
        for (double v : z) acc += std::exp(-(r_order / xi) * std::log1p(b * v));
        return acc / n - 1.0 / (1.0 + r_order);
    };

    const double blo = 1.0 / cfg.gamma_box.hi, bhi = 1.0 / cfg.gamma_box.lo;
    const int n_scan = 240;
    double prev_b = blo, prev_h = h(blo);
    int iters = 1;
    double root = std::numeric_limits<double>::quiet_NaN();
    for (int i = 1; i <= n_scan; ++i) {
        const double b = blo * std::pow(bhi / blo, static_cast<double>(i) / n_scan);
        const double hb = h(b);
        ++iters;
        if (std::isfinite(prev_h) && std::isfinite(hb) && (prev_h <= 0.0) != (hb <= 0.0)) {
            auto lh = [&](double lb) { return h(std::exp(lb)); };
            detail::ScalarMin bm = detail::bisect_root(
                lh, std::log(prev_b), std::log(b), prev_h, hb, 1e-13, cfg.max_iter);
            iters += bm.iterations;
            root = std::exp(bm.x);
            break;
        }
        prev_b = b;
        prev_h = hb;
    }
    out.iterations = iters;
    if (!std::isfinite(root)) {
        out.status = FitStatus::Diverged;
        out.params = clamp_to_box(-1.0, 1.0, cfg);
        return out;
    }
    const double xi = xi_of(root);
    const double alpha = -1.0 / xi;
    const double gamma = 1.0 / root;
    out.params = clamp_to_box(alpha, gamma, cfg);
    out.objective = h(root);
    out.status = (out.params.alpha == alpha && out.params.gamma == gamma)
                     ? FitStatus::Converged
                     : FitStatus::BoundaryHit;
    return out;
}

FitResult fit_mdpd(const Sample& sample, const EstimatorConfig& cfg) {
    const std::vector<double>& z = sample.values();
    const double n = static_cast<double>(z.size());
    auto f = [&](const TextureParams& p) {
        return mdpd_objective(z, p, cfg.mdpd_omega);
    };
    SearchOutcome s = simplex_search(cfg, cfg.alpha_box, f, data_starts(sample, cfg));

    FitResult r;
    r.params = s.params;
    r.objective = s.objective;
    r.iterations = s.iterations;
    const Edges e = edge_check(r.params, cfg);
    if (e.any()) {
        r.status = FitStatus::BoundaryHit;
    } else {
        auto [ga, gg] = mdpd_grad(z, r.params, cfg.mdpd_omega);
        // Residual threshold on the n-scaled objective, as for the
        // likelihood methods.
        const double tol = kGradTolPerN * n;
        r.status = (std::abs(ga) * n <= tol &&
                    std::abs(gg) * n * std::max(r.params.gamma, 1.0) <= tol)
                       ? FitStatus::Converged
                       : FitStatus::Diverged;
    }
    return r;
}

FitResult fit_mgf(const Sample& sample, const EstimatorConfig& cfg) {
    const std::vector<double>& sorted_z = sample.sorted();
    auto f = [&](const TextureParams& p) {
        return mgf_objective(sorted_z, p, cfg.mgf_stat);
    };
    SearchOutcome s = simplex_search(cfg, cfg.alpha_box, f, data_starts(sample, cfg));

    FitResult r;
    r.params = s.params;
    r.objective = s.objective;
    r.iterations = s.iterations;
    if (!std::isfinite(s.objective)) {
        r.status = FitStatus::Diverged;
        return r;
    }
    const Edges e = edge_check(r.params, cfg);
    r.status = e.any() ? FitStatus::BoundaryHit : FitStatus::Converged;
    return r;
}

FitResult fit(const Sample& sample, const EstimatorConfig& cfg) {
    if (!cfg.valid()) throw std::invalid_argument("fit: invalid estimator configuration");
    const auto t0 = std::chrono::steady_clock::now();
    FitResult r;
    if (sample.size() < 2) {
        r.status = FitStatus::InsufficientSample;
        r.params = clamp_to_box(-1.0, 1.0, cfg);
    } else {
        try {
            switch (cfg.method) {
                case Method::Mle: r = fit_mle(sample, cfg); break;
                case Method::Mple: r = fit_mple(sample, cfg); break;
                case Method::Mom: r = fit_mom(sample, cfg); break;
                case Method::Pwm: r = fit_pwm(sample, cfg); break;
                case Method::Lme: r = fit_lme(sample, cfg); break;
                case Method::Mdpd: r = fit_mdpd(sample, cfg); break;
                case Method::Mgf: r = fit_mgf(sample, cfg); break;
            }
        } catch (const std::exception&) {
            r.status = FitStatus::Diverged;
            r.params = clamp_to_box(-1.0, 1.0, cfg);
        }
    }
    const auto t1 = std::chrono::steady_clock::now();
    r.wall_time = std::chrono::duration<double>(t1 - t0).count();
    return r;
}

}  // namespace gi0
