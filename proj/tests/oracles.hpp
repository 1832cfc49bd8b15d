#pragma once

// Independent numerical oracles used by the test suites: adaptive
// quadrature, empirical-distribution distances, finite differences and
// a dense grid search. None of these share code with the library's
// optimizer or quadrature-free closed forms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

namespace oracles {

// Adaptive Simpson on [a, b].
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double eps,
                               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * eps) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps = 1e-12) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return adaptive_simpson(f, a, b, fa, fm, fb, simpson(f, a, b, fa, fm, fb), eps, 40);
}

// Integral over [0, inf) through the substitution z = t/(1-t).
inline double integrate_halfline(const std::function<double(double)>& f, double eps = 1e-12) {
    auto g = [&](double t) {
        const double om = 1.0 - t;
        return f(t / om) / (om * om);
    };
    return integrate(g, 0.0, 1.0 - 1e-12, eps);
}

// One-sample Kolmogorov-Smirnov distance against a CDF.
inline double ks_distance(std::vector<double> data, const std::function<double(double)>& cdf) {
    std::sort(data.begin(), data.end());
    const double n = static_cast<double>(data.size());
    double d = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double u = cdf(data[i]);
        d = std::max(d, std::max((i + 1) / n - u, u - i / n));
    }
    return d;
}

// Asymptotic one-sample KS critical value.
inline double ks_critical(std::size_t n, double alpha_level) {
    const double c = std::sqrt(-0.5 * std::log(alpha_level / 2.0));
    return c / std::sqrt(static_cast<double>(n));
}

// Central finite-difference gradient of a scalar function of (a, b).
inline std::pair<double, double> fd_gradient(const std::function<double(double, double)>& f,
                                             double a, double b, double ha, double hb) {
    const double ga = (f(a + ha, b) - f(a - ha, b)) / (2.0 * ha);
    const double gb = (f(a, b + hb) - f(a, b - hb)) / (2.0 * hb);
    return {ga, gb};
}

// Dense grid search plus local refinement over a rectangle in
// (alpha, log gamma); independent cross-check for optimizer-backed fits.
struct GridMin {
    double alpha = 0.0;
    double gamma = 0.0;
    double value = 0.0;
};

inline GridMin grid_search(const std::function<double(double, double)>& f, double alpha_lo,
                           double alpha_hi, double gamma_lo, double gamma_hi, int coarse = 400,
                           int refinements = 24) {
    double alo = alpha_lo, ahi = alpha_hi;
    double llo = std::log(gamma_lo), lhi = std::log(gamma_hi);
    GridMin best;
    best.value = std::numeric_limits<double>::infinity();
    int pts = coarse;
    for (int pass = 0; pass <= refinements; ++pass) {
        int bi = 0, bj = 0;
        double pass_best = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= pts; ++i) {
            const double a = alo + (ahi - alo) * i / pts;
            for (int j = 0; j <= pts; ++j) {
                const double g = std::exp(llo + (lhi - llo) * j / pts);
                const double v = f(a, g);
                if (v < pass_best) {
                    pass_best = v;
                    bi = i;
                    bj = j;
                }
            }
        }
        const double a = alo + (ahi - alo) * bi / pts;
        const double lg = llo + (lhi - llo) * bj / pts;
        if (pass_best < best.value) {
            best.value = pass_best;
            best.alpha = a;
            best.gamma = std::exp(lg);
        }
        const double astep = (ahi - alo) / pts, lstep = (lhi - llo) / pts;
        alo = std::max(alpha_lo, a - 1.5 * astep);
        ahi = std::min(alpha_hi, a + 1.5 * astep);
        llo = std::max(std::log(gamma_lo), lg - 1.5 * lstep);
        lhi = std::min(std::log(gamma_hi), lg + 1.5 * lstep);
        pts = 24;
    }
    return best;
}

// Finite-difference Newton refinement of a 2-D minimum in
// (alpha, log gamma), with a compass/diagonal pattern-search fallback
// so that strongly correlated ridges and box-boundary minima are still
// tightened to high precision when the Newton model is unusable.
inline GridMin newton_polish(const std::function<double(double, double)>& f, GridMin start,
                             double alpha_lo, double alpha_hi, double gamma_lo,
                             double gamma_hi, int iters = 2000) {
    double a = std::clamp(start.alpha, alpha_lo, alpha_hi);
    const double llo = std::log(gamma_lo), lhi = std::log(gamma_hi);
    double l = std::clamp(std::log(start.gamma), llo, lhi);
    auto g = [&](double aa, double ll) { return f(aa, std::exp(ll)); };
    const double h = 1e-6;
    double best = g(a, l);
    double step = 0.25;
    for (int it = 0; it < iters && step > 1e-14; ++it) {
        bool improved = false;

        // Damped Newton attempt with backtracking.
        const double ga = (g(a + h, l) - g(a - h, l)) / (2 * h);
        const double gl = (g(a, l + h) - g(a, l - h)) / (2 * h);
        const double haa = (g(a + h, l) - 2 * best + g(a - h, l)) / (h * h);
        const double hll = (g(a, l + h) - 2 * best + g(a, l - h)) / (h * h);
        const double hal = (g(a + h, l + h) - g(a + h, l - h) - g(a - h, l + h) +
                            g(a - h, l - h)) /
                           (4 * h * h);
        const double det = haa * hll - hal * hal;
        if (std::isfinite(det) && det > 0.0 && haa > 0.0) {
            double da = -(ga * hll - gl * hal) / det;
            double dl = -(gl * haa - ga * hal) / det;
            // Near-singular Hessians produce absurdly long steps along
            // the ridge; cap them so backtracking can find a usable one.
            const double len = std::max(std::abs(da), std::abs(dl));
            if (len > 4.0) {
                da *= 4.0 / len;
                dl *= 4.0 / len;
            }
            double t = 1.0;
            for (int back = 0; back < 40; ++back, t *= 0.5) {
                const double an = std::clamp(a + t * da, alpha_lo, alpha_hi);
                const double ln = std::clamp(l + t * dl, llo, lhi);
                const double v = g(an, ln);
                if (v < best) {
                    a = an;
                    l = ln;
                    best = v;
                    improved = true;
                    break;
                }
            }
        }

        // Golden-section line search along the Hessian's smallest-
        // curvature eigenvector: on a nearly singular ridge that is the
        // valley direction, which neither Newton nor axis moves resolve.
        if (std::isfinite(det)) {
            const double tr = haa + hll;
            const double disc = std::sqrt((haa - hll) * (haa - hll) + 4.0 * hal * hal);
            const double lmin = 0.5 * (tr - disc);
            double ua = hal, ul = lmin - haa;
            if (std::abs(ua) + std::abs(ul) < 1e-300) {
                ua = lmin - hll;
                ul = hal;
            }
            const double norm = std::hypot(ua, ul);
            if (norm > 0.0) {
                ua /= norm;
                ul /= norm;
                auto line = [&](double t) {
                    return g(std::clamp(a + t * ua, alpha_lo, alpha_hi),
                             std::clamp(l + t * ul, llo, lhi));
                };
                double tlo = -1.0, thi = 1.0;
                const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
                double t1 = thi - phi * (thi - tlo), t2 = tlo + phi * (thi - tlo);
                double f1 = line(t1), f2 = line(t2);
                for (int k = 0; k < 120; ++k) {
                    if (f1 < f2) {
                        thi = t2;
                        t2 = t1;
                        f2 = f1;
                        t1 = thi - phi * (thi - tlo);
                        f1 = line(t1);
                    } else {
                        tlo = t1;
                        t1 = t2;
                        f1 = f2;
                        t2 = tlo + phi * (thi - tlo);
                        f2 = line(t2);
                    }
                }
                const double tb = 0.5 * (tlo + thi);
                const double vb = line(tb);
                if (vb < best) {
                    a = std::clamp(a + tb * ua, alpha_lo, alpha_hi);
                    l = std::clamp(l + tb * ul, llo, lhi);
                    best = vb;
                    improved = true;
                }
            }
        }

        // Pattern search over compass and diagonal moves; the diagonals
        // let the search walk along a tilted valley floor.
        static const int dirs[8][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                       {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
        bool moved = false;
        for (const auto& d : dirs) {
            const double an = std::clamp(a + d[0] * step, alpha_lo, alpha_hi);
            const double ln = std::clamp(l + d[1] * step, llo, lhi);
            const double v = g(an, ln);
            if (v < best) {
                a = an;
                l = ln;
                best = v;
                moved = true;
            }
        }
        if (!moved && !improved) step *= 0.5;
    }
    return {a, std::exp(l), best};
}

// Mean and standard error of a vector.
struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

inline MeanSe mean_se(const std::vector<double>& v) {
    MeanSe r;
    const double n = static_cast<double>(v.size());
    for (double x : v) r.mean += x;
    r.mean /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - r.mean) * (x - r.mean);
    r.se = std::sqrt(ss / (n - 1.0) / n);
    return r;
}

}  // namespace oracles
