#include "steerxy/xychain.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "steerxy/errors.hpp"
#include "steerxy/quadrature.hpp"

namespace steerxy {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr int kMaxSeparation = 64;
}  // namespace

ChainSize ChainSize::finite(int n) {
    if (n < 3 || n % 2 == 0)
        throw ValidationError("chain size must be an odd integer >= 3");
    ChainSize s;
    s.n_ = n;
    return s;
}

int ChainSize::n() const {
    if (is_thermodynamic()) throw ValidationError("thermodynamic size has no spin count");
    return n_;
}

void ChainParams::validate() const {
    if (!(gamma >= 0.0 && gamma <= 1.0))
        throw ValidationError("anisotropy gamma must lie in [0, 1]");
    if (!(h >= 0.0)) throw ValidationError("field strength h must be >= 0");
    if (r < 1 || r > kMaxSeparation)
        throw ValidationError("site separation r must lie in [1, 64]");
}

double g_r_finite(const ChainParams& params, int r) {
    params.validate();
    const int m = params.size.modes();  // throws when thermodynamic
    const double n = static_cast<double>(params.size.n());
    double sum = 0.0;
    for (int k = 1; k <= m; ++k) {
        const double phi = 2.0 * kPi * k / n;
        const double a = params.h - std::cos(phi);
        const double b = params.gamma * std::sin(phi);
        const double lambda = std::sqrt(a * a + b * b);
        if (lambda == 0.0)
            throw NumericalError("g_r_finite: degenerate mode, Lambda_k = 0 (gamma = 0 with h = cos phi_k)");
        sum += (a * std::cos(r * phi) + b * std::sin(r * phi)) / lambda;
    }
    return sum / m;
}

double g_r_limit(const ChainParams& params, int r) {
    params.validate();
    const double gamma = params.gamma;
    const double h = params.h;
    const auto integrand = [gamma, h, r](double phi) {
        const double a = h - std::cos(phi);
        const double b = gamma * std::sin(phi);
        const double lambda = std::sqrt(a * a + b * b);
        if (lambda == 0.0) return 0.0;  // measure-zero point inside a pre-split panel
        return (a * std::cos(r * phi) + b * std::sin(r * phi)) / lambda;
    };

    // On the XX line the integrand jumps at phi = arccos(h) for h < 1;
    // splitting there keeps every panel smooth.
    std::vector<double> breaks;
    if (gamma == 0.0 && h < 1.0) breaks.push_back(std::acos(h));

    return integrate_adaptive(integrand, 0.0, kPi, {}, breaks) / kPi;
}

double g_r(const ChainParams& params, int r) {
    return params.size.is_thermodynamic() ? g_r_limit(params, r) : g_r_finite(params, r);
}

CorrelatorSet correlators(const ChainParams& params) {
    params.validate();
    const int r = params.r;

    CorrelatorSet c;
    for (int k = -(r + 1); k <= r + 1; ++k) c.g[k] = g_r(params, k);

    c.sz = -c.g[0];
    c.szsz = c.g[0] * c.g[0] - c.g[r] * c.g[-r];

    const auto toeplitz_det = [&](int offset) {
        std::vector<double> t(static_cast<size_t>(r) * r);
        for (int row = 0; row < r; ++row)
            for (int col = 0; col < r; ++col) t[row * r + col] = c.g.at(row - col + offset);
        return lu_determinant(std::move(t), r);
    };
    c.sxsx = toeplitz_det(-1);
    c.sysy = toeplitz_det(+1);
    return c;
}

TwoQubitState reduced_state(const ChainParams& params) {
    const CorrelatorSet c = correlators(params);
    return from_pauli(c.sz, c.sz, c.szsz, c.sxsx, c.sysy);
}

}  // namespace steerxy
