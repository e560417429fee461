#pragma once

#include <map>

#include "steerxy/qstate.hpp"

namespace steerxy {

// Chain size: finite odd N >= 3, or the thermodynamic limit.
class ChainSize {
  public:
    static ChainSize finite(int n);       // throws ValidationError unless n odd and >= 3
    static ChainSize thermodynamic() { return ChainSize{}; }

    bool is_thermodynamic() const { return n_ == 0; }
    int n() const;                        // throws when thermodynamic
    int modes() const { return (n() - 1) / 2; }  // M = (N-1)/2

    bool operator==(const ChainSize&) const = default;

  private:
    ChainSize() = default;
    int n_ = 0;  // 0 encodes the thermodynamic limit
};

// Model parameters. The chain is critical at h = 1 for every gamma;
// gamma = 0 is the XX line, gamma = 1 the Ising line.
struct ChainParams {
    double gamma = 0.6;  // anisotropy, in [0, 1]
    double h = 0.0;      // transverse field strength, >= 0
    ChainSize size = ChainSize::thermodynamic();
    int r = 1;           // site separation, 1 <= r <= 64

    void validate() const;  // throws ValidationError
};

// Ground-state pair kernel G_r of the XY chain.
//
// Finite chain (N odd, M = (N-1)/2, phi_k = 2 pi k / N):
//   G_r = (1/M) sum_{k=1}^{M} [ (h - cos phi_k) cos(r phi_k)
//                               + gamma sin phi_k sin(r phi_k) ] / Lambda_k,
//   Lambda_k = sqrt((h - cos phi_k)^2 + gamma^2 sin^2 phi_k).
//
// Thermodynamic limit:
//   G_r = (1/pi) Int_0^pi [ (h - cos phi) cos(r phi)
//                           + gamma sin phi sin(r phi) ] / Lambda_phi dphi.
//
// At h = 0 both reduce term by term to the zero-field form
//   (1/M) sum [ -cos phi_k cos(r phi_k) + gamma sin phi_k sin(r phi_k) ] / Lambda_k,
//   Lambda_k = sqrt(gamma^2 sin^2 phi_k + cos^2 phi_k),
// which is the standard exact solution with the field switched off.
//
// g_r_finite throws NumericalError when some Lambda_k is exactly zero (only
// possible on the XX line when h = cos phi_k). g_r_limit integrates with
// absolute tolerance 1e-10 and at most 10^4 panels; on the XX line with
// h < 1 the integrand has a jump at phi = arccos(h) and the interval is
// pre-split there, so gamma = 0 is never an error.
double g_r_finite(const ChainParams& params, int r);
double g_r_limit(const ChainParams& params, int r);
double g_r(const ChainParams& params, int r);  // dispatches on params.size

// Spin correlators at separation r. The map g holds G_k for
// k in [-(r+1), r+1]; it is local to each call, so concurrent calls with
// identical inputs return identical results without shared state.
struct CorrelatorSet {
    std::map<int, double> g;
    double sz;    // <sigma^z>            = -G_0
    double szsz;  // <sigma^z_i sigma^z_j> = G_0^2 - G_r G_{-r}
    double sxsx;  // det T_x, (T_x)_{mn} = G_{m-n-1}   (r x r Toeplitz)
    double sysy;  // det T_y, (T_y)_{mn} = G_{m-n+1}
};

// For r = 1 the determinants reduce to the bare entries: sxsx = G_{-1},
// sysy = G_{+1}. Determinants are evaluated by LU with partial pivoting.
CorrelatorSet correlators(const ChainParams& params);

// Two-site reduced density matrix: from_pauli(sz, sz, szsz, sxsx, sysy);
// translation invariance gives z1 = z2.
TwoQubitState reduced_state(const ChainParams& params);

}  // namespace steerxy
