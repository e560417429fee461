#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "steerxy/errors.hpp"

namespace steerxy {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    int max_panels = 10000;
};

namespace detail {

// Gauss-Kronrod 7-15 pair on [-1,1]. Abscissae are symmetric; odd indices of
// xgk (and the centre) carry the embedded 7-point Gauss rule.
inline constexpr double kGk15X[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kGk15Wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kGk15Wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline void gk15(const F& f, double a, double b, double& value, double& err) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    const double fc = f(c);
    double resk = kGk15Wk[7] * fc;
    double resg = kGk15Wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = hw * kGk15X[j];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        resk += kGk15Wk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kGk15Wg[(j - 1) / 2] * (f1 + f2);
    }
    value = resk * hw;
    err = std::abs((resk - resg) * hw);
}

struct Panel {
    double err, a, b, value;
    // worst panel first; the left endpoint breaks ties so the subdivision
    // order (and hence the result bits) never depends on heap internals
    bool operator<(const Panel& o) const {
        if (err != o.err) return err < o.err;
        return a < o.a;
    }
};

}  // namespace detail

// Globally adaptive integration of f over [a, b]: the panel with the largest
// error estimate is bisected until the summed estimate falls below abs_tol.
// `breaks` marks interior points where the integrand may be non-smooth;
// panels never straddle them. Throws NumericalError when the panel budget is
// exhausted.
template <class F>
double integrate_adaptive(const F& f, double a, double b, QuadratureOptions opt = {},
                          std::span<const double> breaks = {}) {
    std::vector<double> edges{a};
    for (double x : breaks)
        if (x > a && x < b) edges.push_back(x);
    std::sort(edges.begin() + 1, edges.end());
    edges.push_back(b);

    std::priority_queue<detail::Panel> panels;
    double total = 0.0, total_err = 0.0;
    int n_panels = 0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        double v, e;
        detail::gk15(f, edges[i], edges[i + 1], v, e);
        panels.push({e, edges[i], edges[i + 1], v});
        total += v;
        total_err += e;
        ++n_panels;
    }

    while (total_err > opt.abs_tol) {
        if (n_panels >= opt.max_panels)
            throw NumericalError("adaptive quadrature: panel budget exhausted before reaching tolerance");
        const detail::Panel w = panels.top();
        panels.pop();
        const double mid = 0.5 * (w.a + w.b);
        double v1, e1, v2, e2;
        detail::gk15(f, w.a, mid, v1, e1);
        detail::gk15(f, mid, w.b, v2, e2);
        total += (v1 + v2) - w.value;
        total_err += (e1 + e2) - w.err;
        panels.push({e1, w.a, mid, v1});
        panels.push({e2, mid, w.b, v2});
        ++n_panels;
        if (mid <= w.a || mid >= w.b) break;  // interval at double resolution
    }
    return total;
}

}  // namespace steerxy
