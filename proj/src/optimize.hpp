#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace gi0::detail {

struct ScalarMin {
    double x = 0.0;
    double fx = std::numeric_limits<double>::infinity();
    int iterations = 0;
};

// Golden-section minimization on [lo, hi].
template <typename F>
ScalarMin golden_min(F&& f, double lo, double hi, double xtol, int max_iter) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    int it = 2;
    while (b - a > xtol && it < max_iter) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
        ++it;
    }
    ScalarMin r;
    r.x = f1 <= f2 ? x1 : x2;
    r.fx = std::min(f1, f2);
    r.iterations = it;
    return r;
}

// Coarse scan followed by golden section in the bracketing cell.
// Robust against mild multimodality of profile objectives.
template <typename F>
ScalarMin scan_golden_min(F&& f, double lo, double hi, int n_scan, double xtol,
                          int max_iter) {
    double best_x = lo, best_f = std::numeric_limits<double>::infinity();
    int best_i = 0;
    for (int i = 0; i <= n_scan; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / n_scan;
        const double fx = f(x);
        if (fx < best_f) {
            best_f = fx;
            best_x = x;
            best_i = i;
        }
    }
    const double step = (hi - lo) / n_scan;
    const double a = std::max(lo, best_x - step);
    const double b = std::min(hi, best_x + step);
    ScalarMin r = golden_min(f, a, b, xtol, max_iter);
    r.iterations += n_scan + 1;
    if (best_f < r.fx) {
        r.x = best_x;
        r.fx = best_f;
    }
    (void)best_i;
    return r;
}

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

struct Min2 {
    Point2 p;
    double f = std::numeric_limits<double>::infinity();
    int iterations = 0;
};

// Nelder-Mead on a rectangle; candidates outside are evaluated at the
// projection plus a quadratic pull-back so minima can sit on an edge.
template <typename F>
Min2 nelder_mead_box(F&& f, Point2 lo, Point2 hi, Point2 start, double ftol,
                     int max_iter) {
    const double wx = hi.x - lo.x, wy = hi.y - lo.y;
    auto boxed = [&](Point2 q) {
        Point2 c{std::clamp(q.x, lo.x, hi.x), std::clamp(q.y, lo.y, hi.y)};
        const double dx = (q.x - c.x) / wx, dy = (q.y - c.y) / wy;
        return std::pair<Point2, double>{c, 1e6 * (dx * dx + dy * dy)};
    };
    auto eval = [&](Point2 q) {
        auto [c, pen] = boxed(q);
        return f(c) + pen;
    };

    std::array<Point2, 3> v{start,
                            Point2{std::clamp(start.x + 0.10 * wx, lo.x, hi.x), start.y},
                            Point2{start.x, std::clamp(start.y + 0.10 * wy, lo.y, hi.y)}};
    std::array<double, 3> fv{eval(v[0]), eval(v[1]), eval(v[2])};
    int it = 3;

    auto order = [&] {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2 - i; ++j)
                if (fv[j + 1] < fv[j]) {
                    std::swap(fv[j], fv[j + 1]);
                    std::swap(v[j], v[j + 1]);
                }
    };
    order();

    while (it < max_iter) {
        const double spread = std::abs(fv[2] - fv[0]);
        const double size = std::max(std::abs(v[2].x - v[0].x) / wx,
                                     std::abs(v[2].y - v[0].y) / wy) +
                            std::max(std::abs(v[1].x - v[0].x) / wx,
                                     std::abs(v[1].y - v[0].y) / wy);
        if (spread <= ftol * (1.0 + std::abs(fv[0])) && size <= 1e-10) break;

        Point2 centroid{(v[0].x + v[1].x) / 2, (v[0].y + v[1].y) / 2};
        auto at = [&](double t) {
            return Point2{centroid.x + t * (centroid.x - v[2].x),
                          centroid.y + t * (centroid.y - v[2].y)};
        };
        Point2 xr = at(1.0);
        double fr = eval(xr);
        ++it;
        if (fr < fv[0]) {
            Point2 xe = at(2.0);
            double fe = eval(xe);
            ++it;
            if (fe < fr) {
                v[2] = xe;
                fv[2] = fe;
            } else {
                v[2] = xr;
                fv[2] = fr;
            }
        } else if (fr < fv[1]) {
            v[2] = xr;
            fv[2] = fr;
        } else {
            Point2 xc = at(fr < fv[2] ? 0.5 : -0.5);
            double fc = eval(xc);
            ++it;
            if (fc < std::min(fr, fv[2])) {
                v[2] = xc;
                fv[2] = fc;
            } else {
                for (int i = 1; i < 3; ++i) {
                    v[i] = Point2{(v[i].x + v[0].x) / 2, (v[i].y + v[0].y) / 2};
                    fv[i] = eval(v[i]);
                }
                it += 2;
            }
        }
        order();
    }

    Min2 r;
    auto [c, pen] = boxed(v[0]);
    (void)pen;
    r.p = c;
    r.f = f(c);
    r.iterations = it + 1;
    return r;
}

// Alternating 1-D golden refinements of a 2-D minimum; tightens a
// simplex result toward stationarity without derivatives.
template <typename F>
Min2 coordinate_polish(F&& f, Point2 lo, Point2 hi, Min2 in, int rounds) {
    Min2 r = in;
    double wx = 0.02 * (hi.x - lo.x), wy = 0.02 * (hi.y - lo.y);
    for (int round = 0; round < rounds; ++round) {
        {
            auto g = [&](double x) { return f(Point2{x, r.p.y}); };
            const double a = std::max(lo.x, r.p.x - wx), b = std::min(hi.x, r.p.x + wx);
            ScalarMin m = golden_min(g, a, b, 1e-13 * (hi.x - lo.x), 200);
            r.iterations += m.iterations;
            if (m.fx < r.f) {
                r.p.x = m.x;
                r.f = m.fx;
            }
        }
        {
            auto g = [&](double y) { return f(Point2{r.p.x, y}); };
            const double a = std::max(lo.y, r.p.y - wy), b = std::min(hi.y, r.p.y + wy);
            ScalarMin m = golden_min(g, a, b, 1e-13 * (hi.y - lo.y), 200);
            r.iterations += m.iterations;
            if (m.fx < r.f) {
                r.p.y = m.x;
                r.f = m.fx;
            }
        }
        wx *= 0.25;
        wy *= 0.25;
    }
    return r;
}

// Bisection for a scalar root on a bracketing interval.
template <typename F>
ScalarMin bisect_root(F&& f, double a, double b, double fa, double fb, double xtol,
                      int max_iter) {
    ScalarMin r;
    int it = 0;
    while (b - a > xtol && it < max_iter) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        ++it;
        if ((fa <= 0.0) == (fm <= 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    r.x = 0.5 * (a + b);
    r.fx = f(r.x);
    r.iterations = it + 1;
    (void)fb;
    return r;
}

}  // namespace gi0::detail
