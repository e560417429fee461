#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "steerxy/steering_ineq.hpp"
#include "steerxy/xychain.hpp"

namespace steerxy {

// Sweep rows are independent; Parallel evaluates them with OpenMP and writes
// each row into its preassigned slot, so the assembled table is bit-identical
// to the Serial reference regardless of thread count.
enum class Exec { Serial, Parallel };

struct HRange {
    double lo = 0.0, hi = 2.0, step = 0.002;
    void validate() const;  // lo < hi, step > 0, step divides (hi-lo) within 1e-9
    int points() const;     // number of grid nodes
    double at(int i) const { return lo + i * step; }
};

struct SweepRow {
    double h = 0;
    double s = 0;                    // steerability S
    std::optional<double> s10;      // optimized 10-setting quantum value
    double ds_dh = 0;
    std::optional<double> ds10_dh;
};

struct SweepTable {
    double gamma = 0.6;
    ChainSize size = ChainSize::thermodynamic();
    int r = 1;
    double h0 = 0, step = 0;
    std::vector<SweepRow> rows;

    bool has_inequality() const { return !rows.empty() && rows.front().s10.has_value(); }
};

// Derivative of uniformly spaced samples: central differences at interior
// points, one-sided at the ends. Exact on affine data.
std::vector<double> difference_derivative(std::span<const double> y, double step);

// Assemble a table (with derivative columns) from precomputed S samples.
SweepTable table_from_samples(double gamma, ChainSize size, int r, double h0, double step,
                              std::span<const double> s, std::span<const double> s10 = {});

// S (and optionally the optimized 10-setting value) over a uniform h grid.
// Errors from the underlying evaluation are rethrown annotated with the
// offending h.
SweepTable sweep(double gamma, ChainSize size, HRange range, int r = 1,
                 bool with_inequality = false, Exec exec = Exec::Parallel);

// Pseudocritical extremum of a finite-size table. The transition shows up as
// the grid point where |dS/dh| is largest; a parabola through the three
// surrounding derivative values refines the location. `peak` is the magnitude
// of the refined extremal derivative. Throws NumericalError when the extremum
// sits on the grid boundary (grid too narrow).
struct PeakEstimate {
    double h_m;
    double peak;
};

PeakEstimate pseudocritical(const SweepTable& table);

// Pseudocritical estimate with the grid refined around the extremum until the
// step reaches max(1e-6, 0.02/N), so that the hump stays resolved as it
// narrows with N. Finite sizes only.
PeakEstimate refined_peak(double gamma, ChainSize size, int r = 1,
                          HRange coarse = {0.5, 1.5, 0.002}, Exec exec = Exec::Parallel);

// Ordinary least squares y = slope*x + intercept; rms of residuals.
// Adding a constant to y shifts the intercept only.
struct LinearFit {
    double slope = 0, intercept = 0, rms = 0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

enum class FitSide { Below, Above, Both };

// dS/dh in the thermodynamic limit by central differences with step
// max(1e-7, |h-1|/50), small against the distance to the critical point.
double thermo_derivative_at(double gamma, double h, int r = 1);

// Least-squares slope of dS/dh against ln|h - 1|, sampled log-uniformly with
// points_per_side nodes inside [d_lo, d_hi] on the requested side(s) of h = 1.
// With Both, both sides are fitted and reported; the headline kappa1 is the
// h < 1 side, the one that reproduces the published slope.
struct Kappa1Fit {
    double kappa1 = 0, rms = 0;  // headline
    std::optional<LinearFit> below, above;
    double d_lo = 0, d_hi = 0;
    int points_per_side = 0;
};

Kappa1Fit fit_kappa1(double gamma, double d_lo, double d_hi, FitSide side = FitSide::Both,
                     int points_per_side = 24, int r = 1, Exec exec = Exec::Parallel);

// Same fit against an injected derivative function (test seam).
Kappa1Fit fit_kappa1_with(const std::function<double(double)>& ds_dh, double d_lo, double d_hi,
                          FitSide side = FitSide::Both, int points_per_side = 24);

// Least-squares slope of the refined peak magnitude against ln N.
// Requires at least 5 odd sizes with the largest >= 1601.
struct SizePeak {
    int n;
    double h_m;
    double peak;
};

struct Kappa2Fit {
    double kappa2 = 0, rms = 0;
    std::vector<SizePeak> peaks;
};

Kappa2Fit fit_kappa2(double gamma, std::span<const int> sizes,
                     HRange coarse = {0.5, 1.5, 0.002}, int r = 1, Exec exec = Exec::Parallel);

LinearFit fit_kappa2_points(std::span<const int> sizes, std::span<const double> peaks);

// kappa1, kappa2 and the critical exponent nu = |kappa1 / kappa2|.
struct ScalingFit {
    Kappa1Fit k1;
    Kappa2Fit k2;
    double nu = 0;
};

ScalingFit scaling_fit(double gamma, std::span<const int> sizes, double d_lo = 1e-3,
                       double d_hi = 5e-2, FitSide side = FitSide::Both,
                       HRange coarse = {0.5, 1.5, 0.002}, int r = 1,
                       int points_per_side = 24, Exec exec = Exec::Parallel);

}  // namespace steerxy
