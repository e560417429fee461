#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "steerxy/errors.hpp"
#include "steerxy/xychain.hpp"
#include "test_support.hpp"

using namespace steerxy;
namespace ts = steerxy::testsupport;

namespace {

constexpr double kPi = std::numbers::pi;

ChainParams thermo(double gamma, double h, int r = 1) {
    return {gamma, h, ChainSize::thermodynamic(), r};
}

ChainParams finite(double gamma, double h, int n, int r = 1) {
    return {gamma, h, ChainSize::finite(n), r};
}

}  // namespace

TEST_CASE("chain size and parameter validation") {
    CHECK_THROWS_AS(ChainSize::finite(4), ValidationError);
    CHECK_THROWS_AS(ChainSize::finite(1), ValidationError);
    CHECK_THROWS_AS(ChainSize::finite(-3), ValidationError);
    CHECK(ChainSize::finite(11).modes() == 5);
    CHECK(ChainSize::thermodynamic().is_thermodynamic());
    CHECK_THROWS_AS(ChainSize::thermodynamic().n(), ValidationError);

    CHECK_THROWS_AS(thermo(-0.1, 0.5).validate(), ValidationError);
    CHECK_THROWS_AS(thermo(1.1, 0.5).validate(), ValidationError);
    CHECK_THROWS_AS(thermo(0.5, -0.1).validate(), ValidationError);
    CHECK_THROWS_AS(thermo(0.5, 0.5, 0).validate(), ValidationError);
    CHECK_THROWS_AS(thermo(0.5, 0.5, 65).validate(), ValidationError);
}

TEST_CASE("g_r_finite: Ising zero-field reductions") {
    // at gamma = 1, h = 0 the summand for r = -1 collapses to -1
    for (int n : {5, 11, 101, 1001})
        CHECK(g_r_finite(finite(1.0, 0.0, n), -1) == doctest::Approx(-1.0).epsilon(1e-12));

    // r = 0: sum of -cos over the half period is +1/2, so G_0 = 1/(N-1)
    for (int n : {101, 1001})
        CHECK(g_r_finite(finite(1.0, 0.0, n), 0) == doctest::Approx(1.0 / (n - 1)).epsilon(1e-12));
}

TEST_CASE("g_r_finite matches a brute-force transcription at N = 11") {
    const double gamma = 0.6, h = 0.5;
    double expected = 0.0;
    for (int k = 1; k <= 5; ++k) {
        const double phi = 2.0 * kPi * k / 11.0;
        const double num = (h - std::cos(phi)) * std::cos(phi) + gamma * std::sin(phi) * std::sin(phi);
        expected += num / std::sqrt(std::pow(h - std::cos(phi), 2) + std::pow(gamma * std::sin(phi), 2));
    }
    expected /= 5.0;
    CHECK(g_r_finite(finite(gamma, h, 11), 1) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("g_r_finite: degenerate XX mode is rejected") {
    const double h = std::cos(2.0 * kPi * 1.0 / 5.0);  // Lambda_1 = 0 exactly
    CHECK_THROWS_AS(g_r_finite(finite(0.0, h, 5), 1), NumericalError);
}

TEST_CASE("g_r_limit: Ising zero-field analytic values") {
    CHECK(std::abs(g_r_limit(thermo(1.0, 0.0), 2)) <= 1e-10);
    CHECK(g_r_limit(thermo(1.0, 0.0), -1) == doctest::Approx(-1.0).epsilon(1e-10));
    // critical Ising nearest neighbour: G_{-1} = -2/pi
    CHECK(g_r_limit(thermo(1.0, 1.0), -1) == doctest::Approx(-2.0 / kPi).epsilon(1e-10));
}

TEST_CASE("g_r_limit: frozen quadrature oracle values") {
    // computed independently with adaptive quadrature at 1e-12 tolerance
    CHECK(g_r_limit(thermo(0.6, 0.5), 0) == doctest::Approx(0.288355585692437).epsilon(1e-9));
    CHECK(g_r_limit(thermo(0.6, 0.5), 1) == doctest::Approx(-0.083746156823982).epsilon(1e-9));
    CHECK(g_r_limit(thermo(0.6, 0.5), -1) == doctest::Approx(-0.902887654170980).epsilon(1e-9));
    CHECK(g_r_limit(thermo(0.6, 1.3), 0) == doctest::Approx(0.918961426827394).epsilon(1e-9));
    CHECK(g_r_limit(thermo(0.2, 0.8), -1) == doctest::Approx(-0.591053928483566).epsilon(1e-9));
}

TEST_CASE("g_r_limit handles the XX line, split at the Fermi point") {
    // gamma = 0, h < 1: G_0 = 1 - 2 arccos(h)/pi, G_r = -(2/(pi r)) sin(r arccos h)
    for (double h : {0.3, 0.9}) {
        const double phi0 = std::acos(h);
        CHECK(g_r_limit(thermo(0.0, h), 0) == doctest::Approx(1 - 2 * phi0 / kPi).epsilon(1e-10));
        for (int r : {1, 2, 3})
            CHECK(g_r_limit(thermo(0.0, h), r) ==
                  doctest::Approx(-2.0 * std::sin(r * phi0) / (kPi * r)).epsilon(1e-10));
        // even in r on the XX line
        CHECK(g_r_limit(thermo(0.0, h), -2) == doctest::Approx(g_r_limit(thermo(0.0, h), 2)).epsilon(1e-10));
    }
    // gamma = 0, h > 1: polarized, G_r = delta_{r,0}
    CHECK(g_r_limit(thermo(0.0, 1.5), 0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(g_r_limit(thermo(0.0, 1.5), 1)) <= 1e-10);
    CHECK(std::abs(g_r_limit(thermo(0.0, 1.5), 2)) <= 1e-10);
}

TEST_CASE("finite sums converge to the integral, monotonically in N") {
    const struct {
        double gamma, h;
        int r;
    } cases[] = {{0.6, 0.5, 1}, {0.6, 1.3, 2}, {1.0, 0.4, 1}, {0.2, 1.7, 3}};
    for (const auto& c : cases) {
        const double lim = g_r_limit(thermo(c.gamma, c.h), c.r);
        double prev = 1e9;
        for (int n : {101, 401, 1601}) {
            const double diff = std::abs(g_r_finite(finite(c.gamma, c.h, n), c.r) - lim);
            CHECK(diff < prev);
            prev = diff;
        }
        CHECK(std::abs(g_r_finite(finite(c.gamma, c.h, 4001), c.r) - lim) < 1e-3);
    }
}

TEST_CASE("G_r is smooth in h away from the critical point") {
    double prev = g_r_limit(thermo(0.6, 0.0), 1);
    for (double h = 0.01; h <= 2.0001; h += 0.01) {
        const double cur = g_r_limit(thermo(0.6, h), 1);
        const double jump = std::abs(cur - prev);
        if (std::abs(h - 1.0) > 0.07)
            CHECK(jump < 0.05);
        else
            CHECK(jump < 0.1);  // steeper but still finite through h = 1
        prev = cur;
    }
}

TEST_CASE("correlators: Ising zero field") {
    const CorrelatorSet c = correlators(thermo(1.0, 0.0));
    CHECK(std::abs(c.sz) <= 1e-10);
    CHECK(std::abs(c.szsz) <= 1e-10);
    CHECK(c.sxsx == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(std::abs(c.sysy) <= 1e-10);
}

TEST_CASE("correlators: large-field polarization probe") {
    const CorrelatorSet c = correlators(thermo(0.6, 10.0));
    CHECK(std::abs(c.sz) > 0.99);
    CHECK(std::abs(c.sxsx) < 0.1);
    CHECK(std::abs(c.sysy) < 0.1);
}

TEST_CASE("correlators: thermodynamic values are the N -> inf limit") {
    const CorrelatorSet lim = correlators(thermo(0.6, 1.0));
    const CorrelatorSet fin = correlators(finite(0.6, 1.0, 4001));
    CHECK(std::abs(lim.sz - fin.sz) < 1e-3);
    CHECK(std::abs(lim.szsz - fin.szsz) < 1e-3);
    CHECK(std::abs(lim.sxsx - fin.sxsx) < 1e-3);
    CHECK(std::abs(lim.sysy - fin.sysy) < 1e-3);
}

TEST_CASE("correlator set invariants") {
    for (double h : {0.2, 0.8, 1.4}) {
        const CorrelatorSet c = correlators(thermo(0.6, h, 2));
        CHECK(c.szsz == c.g.at(0) * c.g.at(0) - c.g.at(2) * c.g.at(-2));  // rebuilt from stored g
        for (double v : {c.sz, c.szsz, c.sxsx, c.sysy}) CHECK(std::abs(v) <= 1.0 + 1e-9);
        CHECK(c.g.size() == 7);  // k in [-3, 3]
    }
}

TEST_CASE("Toeplitz reduction at r = 1 gives the bare kernel values") {
    const CorrelatorSet c = correlators(thermo(0.6, 0.5, 1));
    CHECK(c.sxsx == c.g.at(-1));  // 1x1 determinant, bit identical
    CHECK(c.sysy == c.g.at(1));
}

TEST_CASE("Toeplitz determinants at r = 2, 3 match the frozen oracle") {
    // independently computed (quadrature + numpy determinants)
    const CorrelatorSet c2 = correlators(thermo(0.6, 1.2, 2));
    CHECK(c2.szsz == doctest::Approx(0.814693916172037).epsilon(1e-9));
    CHECK(c2.sxsx == doctest::Approx(0.204532813131876).epsilon(1e-9));
    CHECK(c2.sysy == doctest::Approx(-0.071340311807278).epsilon(1e-9));

    const CorrelatorSet c3 = correlators(thermo(0.6, 1.2, 3));
    CHECK(c3.sxsx == doctest::Approx(-0.135388551763543).epsilon(1e-9));
    CHECK(c3.sysy == doctest::Approx(0.027354570442140).epsilon(1e-9));
}

TEST_CASE("lu_determinant agrees with Laplace expansion on a 3x3") {
    const std::vector<double> m = {2, -1, 0.5, 3, 0.25, -2, -1, 4, 1};
    const double laplace = 2 * (0.25 * 1 - (-2) * 4) - (-1) * (3 * 1 - (-2) * (-1)) + 0.5 * (3 * 4 - 0.25 * (-1));
    CHECK(lu_determinant(m, 3) == doctest::Approx(laplace).epsilon(1e-14));
}

TEST_CASE("reduced_state: Ising zero field spectrum and steerability") {
    const TwoQubitState s = reduced_state(thermo(1.0, 0.0));
    REQUIRE(s.pauli().has_value());
    CHECK(std::abs(s.pauli()->zz) <= 1e-10);
    CHECK(s.pauli()->xx == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(std::abs(s.pauli()->yy) <= 1e-10);
    CHECK(std::abs(s.pauli()->z1) <= 1e-10);

    const PtEigenvalues pt = pt_eigenvalues(s);
    CHECK(pt.lambda[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(pt.lambda[1] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(pt.lambda[2] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(pt.lambda[3] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(std::abs(steerability(s)) <= 1e-9);
}

TEST_CASE("reduced_state: large field approaches the polarized product state") {
    const TwoQubitState s = reduced_state(thermo(0.6, 10.0));
    Mat4 down;  // |11><11|
    down(3, 3) = 1.0;
    CHECK(ts::trace_distance(s.matrix(), down) < 0.01);
}

TEST_CASE("steerability region markers at gamma = 0.6 (thermodynamic, r = 1)") {
    // positive below the onset, negative above it (the onset sits near h = 0.8)
    CHECK(steerability(reduced_state(thermo(0.6, 0.7))) > 0);
    CHECK(steerability(reduced_state(thermo(0.6, 0.9))) < 0);
    CHECK(steerability(reduced_state(thermo(0.6, 1.1))) < 0);

    // frozen oracle values for S
    CHECK(steerability(reduced_state(thermo(0.6, 0.5))) == doctest::Approx(0.003556651228702).epsilon(1e-9));
    CHECK(steerability(reduced_state(thermo(0.6, 1.2))) == doctest::Approx(-0.099101839223401).epsilon(1e-9));
}

TEST_CASE("every grid state passes the TwoQubitState invariants") {
    for (double gamma : {0.2, 0.6, 1.0}) {
        for (double h = 0.0; h <= 2.0001; h += 0.01) {
            const TwoQubitState s = reduced_state(thermo(gamma, h));  // throws if unphysical
            const std::array<double, 4> w = hermitian_eigenvalues4(s.matrix());
            CHECK(w[0] >= -1e-10);
        }
    }
}

TEST_CASE("finite-size states are physical too") {
    for (double h : {0.0, 0.5, 1.0, 1.5})
        CHECK_NOTHROW(reduced_state(finite(0.6, h, 101)));
}
