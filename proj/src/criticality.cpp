#include "steerxy/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "steerxy/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace steerxy {

namespace {

std::string format_h(double h) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", h);
    return buf;
}

// Run f(i) for i in [0, n): plain loop for Serial, OpenMP loop for Parallel.
// Each index owns its output slot, so both paths produce identical bits.
// The first exception wins and is rethrown after the loop.
template <class F>
void for_each_index(int n, Exec exec, const F& f) {
    if (exec == Exec::Serial) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    bool failed = false;
    std::string message;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < n; ++i) {
        try {
            f(i);
        } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical(steerxy_sweep_error)
#endif
            {
                if (!failed) {
                    failed = true;
                    message = e.what();
                }
            }
        }
    }
    if (failed) throw NumericalError(message);
}

double parabola_offset(double y0, double y1, double y2) {
    const double den = y0 - 2.0 * y1 + y2;
    if (den == 0.0) return 0.0;
    return 0.5 * (y0 - y2) / den;  // in units of the grid step, within (-1, 1) at an extremum
}

double parabola_value(double y0, double y1, double y2, double delta) {
    return y1 - 0.25 * (y0 - y2) * delta;
}

}  // namespace

void HRange::validate() const {
    if (!(lo < hi)) throw ValidationError("h range: lo must be < hi");
    if (!(step > 0)) throw ValidationError("h range: step must be > 0");
    const double n = (hi - lo) / step;
    if (std::abs(n - std::round(n)) > 1e-9)
        throw ValidationError("h range: step must divide (hi - lo)");
}

int HRange::points() const {
    validate();
    return static_cast<int>(std::round((hi - lo) / step)) + 1;
}

std::vector<double> difference_derivative(std::span<const double> y, double step) {
    const int n = static_cast<int>(y.size());
    if (n < 2) throw ValidationError("difference_derivative: need at least two samples");
    std::vector<double> d(n);
    d[0] = (y[1] - y[0]) / step;
    for (int i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * step);
    d[n - 1] = (y[n - 1] - y[n - 2]) / step;
    return d;
}

SweepTable table_from_samples(double gamma, ChainSize size, int r, double h0, double step,
                              std::span<const double> s, std::span<const double> s10) {
    if (!s10.empty() && s10.size() != s.size())
        throw ValidationError("table_from_samples: S10 column length mismatch");
    SweepTable table;
    table.gamma = gamma;
    table.size = size;
    table.r = r;
    table.h0 = h0;
    table.step = step;

    const std::vector<double> ds = difference_derivative(s, step);
    std::vector<double> ds10;
    if (!s10.empty()) ds10 = difference_derivative(s10, step);

    table.rows.resize(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
        SweepRow& row = table.rows[i];
        row.h = h0 + static_cast<double>(i) * step;
        row.s = s[i];
        row.ds_dh = ds[i];
        if (!s10.empty()) {
            row.s10 = s10[i];
            row.ds10_dh = ds10[i];
        }
    }
    return table;
}

SweepTable sweep(double gamma, ChainSize size, HRange range, int r, bool with_inequality,
                 Exec exec) {
    range.validate();
    ChainParams{gamma, std::max(range.lo, 0.0), size, r}.validate();  // reject bad params before any row runs
    const int n = range.points();
    std::vector<double> s(n), s10;
    if (with_inequality) s10.resize(n);

    const AxisSet axes = with_inequality ? axis_set(10) : AxisSet{};

    for_each_index(n, exec, [&](int i) {
        const double h = range.at(i);
        try {
            ChainParams params{gamma, h, size, r};
            const TwoQubitState state = reduced_state(params);
            s[i] = steerability(state);
            if (with_inequality) s10[i] = quantum_value_optimized(state, axes);
        } catch (const std::exception& e) {
            throw NumericalError("sweep at h = " + format_h(h) + ": " + e.what());
        }
    });

    return table_from_samples(gamma, size, r, range.lo, range.step, s, s10);
}

PeakEstimate pseudocritical(const SweepTable& table) {
    const int n = static_cast<int>(table.rows.size());
    if (n < 3) throw ValidationError("pseudocritical: table needs at least 3 rows");

    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
        const double mag = std::abs(table.rows[i].ds_dh);
        if (mag > best) {
            best = mag;
            arg = i;
        }
    }
    if (arg == 0 || arg == n - 1)
        throw NumericalError("pseudocritical: extremum on the grid boundary (grid too narrow)");

    const double y0 = table.rows[arg - 1].ds_dh;
    const double y1 = table.rows[arg].ds_dh;
    const double y2 = table.rows[arg + 1].ds_dh;
    const double delta = parabola_offset(y0, y1, y2);
    return {table.rows[arg].h + delta * table.step,
            std::abs(parabola_value(y0, y1, y2, delta))};
}

PeakEstimate refined_peak(double gamma, ChainSize size, int r, HRange coarse, Exec exec) {
    if (size.is_thermodynamic())
        throw ValidationError("refined_peak: finite sizes only (the thermodynamic hump is unbounded)");
    const double target = std::max(1e-6, 0.02 / static_cast<double>(size.n()));

    SweepTable table = sweep(gamma, size, coarse, r, false, exec);
    PeakEstimate est = pseudocritical(table);
    double step = coarse.step;
    while (step > target) {
        const double next = std::max(step / 10.0, target);
        const double half_width = 8.0 * step;
        const int half_points = static_cast<int>(std::ceil(half_width / next));
        HRange zoom{est.h_m - half_points * next, est.h_m + half_points * next, next};
        table = sweep(gamma, size, zoom, r, false, exec);
        est = pseudocritical(table);
        step = next;
    }
    return est;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    const size_t n = x.size();
    if (n != y.size() || n < 2) throw ValidationError("fit_line: need two same-length samples");
    double sx = 0, sy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw ValidationError("fit_line: degenerate abscissae");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (size_t i = 0; i < n; ++i) {
        const double res = y[i] - (fit.slope * x[i] + fit.intercept);
        ss += res * res;
    }
    fit.rms = std::sqrt(ss / n);
    return fit;
}

double thermo_derivative_at(double gamma, double h, int r) {
    const double d = std::abs(h - 1.0);
    const double step = std::max(1e-7, d / 50.0);
    const ChainSize size = ChainSize::thermodynamic();
    const double s_plus = steerability(reduced_state({gamma, h + step, size, r}));
    const double s_minus = steerability(reduced_state({gamma, h - step, size, r}));
    return (s_plus - s_minus) / (2.0 * step);
}

namespace {

Kappa1Fit kappa1_from_samples(const std::function<double(double)>& ds_dh, double d_lo, double d_hi,
                              FitSide side, int points_per_side, Exec exec) {
    if (!(0 < d_lo && d_lo < d_hi && d_hi <= 0.1))
        throw ValidationError("fit_kappa1: window must satisfy 0 < d_lo < d_hi <= 0.1");
    if (points_per_side < 2) throw ValidationError("fit_kappa1: need at least 2 points per side");

    std::vector<double> ds(points_per_side);
    const double ln_lo = std::log(d_lo), ln_hi = std::log(d_hi);
    for (int i = 0; i < points_per_side; ++i)
        ds[i] = std::exp(ln_lo + (ln_hi - ln_lo) * i / (points_per_side - 1.0));

    const auto fit_one = [&](double sign) {
        std::vector<double> x(points_per_side), y(points_per_side);
        for_each_index(points_per_side, exec, [&](int i) {
            x[i] = std::log(ds[i]);
            y[i] = ds_dh(1.0 + sign * ds[i]);
        });
        return fit_line(x, y);
    };

    Kappa1Fit out;
    out.d_lo = d_lo;
    out.d_hi = d_hi;
    out.points_per_side = points_per_side;
    if (side == FitSide::Below || side == FitSide::Both) out.below = fit_one(-1.0);
    if (side == FitSide::Above || side == FitSide::Both) out.above = fit_one(+1.0);
    // headline: the h < 1 side unless only the other one was requested
    const LinearFit& headline = out.below ? *out.below : *out.above;
    out.kappa1 = headline.slope;
    out.rms = headline.rms;
    return out;
}

}  // namespace

Kappa1Fit fit_kappa1(double gamma, double d_lo, double d_hi, FitSide side, int points_per_side,
                     int r, Exec exec) {
    return kappa1_from_samples([gamma, r](double h) { return thermo_derivative_at(gamma, h, r); },
                               d_lo, d_hi, side, points_per_side, exec);
}

Kappa1Fit fit_kappa1_with(const std::function<double(double)>& ds_dh, double d_lo, double d_hi,
                          FitSide side, int points_per_side) {
    return kappa1_from_samples(ds_dh, d_lo, d_hi, side, points_per_side, Exec::Serial);
}

LinearFit fit_kappa2_points(std::span<const int> sizes, std::span<const double> peaks) {
    std::vector<double> x(sizes.size());
    for (size_t i = 0; i < sizes.size(); ++i) x[i] = std::log(static_cast<double>(sizes[i]));
    return fit_line(x, peaks);
}

Kappa2Fit fit_kappa2(double gamma, std::span<const int> sizes, HRange coarse, int r, Exec exec) {
    if (sizes.size() < 5) throw ValidationError("fit_kappa2: need at least 5 sizes");
    int largest = 0;
    for (int n : sizes) largest = std::max(largest, n);
    if (largest < 1601) throw ValidationError("fit_kappa2: largest size must be >= 1601");

    Kappa2Fit out;
    out.peaks.reserve(sizes.size());
    for (int n : sizes) {
        const PeakEstimate est = refined_peak(gamma, ChainSize::finite(n), r, coarse, exec);
        out.peaks.push_back({n, est.h_m, est.peak});
    }
    std::vector<double> peak_values(sizes.size());
    for (size_t i = 0; i < sizes.size(); ++i) peak_values[i] = out.peaks[i].peak;
    const LinearFit fit = fit_kappa2_points(sizes, peak_values);
    out.kappa2 = fit.slope;
    out.rms = fit.rms;
    return out;
}

ScalingFit scaling_fit(double gamma, std::span<const int> sizes, double d_lo, double d_hi,
                       FitSide side, HRange coarse, int r, int points_per_side, Exec exec) {
    ScalingFit fit;
    fit.k1 = fit_kappa1(gamma, d_lo, d_hi, side, points_per_side, r, exec);
    fit.k2 = fit_kappa2(gamma, sizes, coarse, r, exec);
    fit.nu = std::abs(fit.k1.kappa1 / fit.k2.kappa2);
    return fit;
}

}  // namespace steerxy
