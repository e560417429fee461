#pragma once

#include <array>
#include <optional>
#include <string>

#include "steerxy/linalg.hpp"

namespace steerxy {

// Pauli expansion coefficients of a two-qubit X-form state,
//   rho = (I + z1 Z(x)I + z2 I(x)Z + zz Z(x)Z + xx X(x)X + yy Y(x)Y
//            + xy X(x)Y + yx Y(x)X) / 4.
// The chain's ground state is invariant under the parity flip
// (sx -> -sx, sy -> sy on every site), which forces the xy/yx cross terms to
// vanish; from_pauli fixes them to zero and pauli_decompose lets callers
// verify that on any assembled matrix.
struct PauliCorrelations {
    double z1 = 0, z2 = 0, zz = 0, xx = 0, yy = 0, xy = 0, yx = 0;
};

// Two-qubit density matrix in the product basis |00>,|01>,|10>,|11>.
// Valid instances are Hermitian and unit trace within 1e-12 and positive
// semidefinite down to -1e-10 (tiny negative eigenvalues from quadrature
// round-off are tolerated; anything lower is rejected at construction).
class TwoQubitState {
  public:
    // Validates the invariants above; caches the Pauli decomposition when the
    // matrix is X-form within 1e-12.
    static TwoQubitState from_matrix(const Mat4& m);

    const Mat4& matrix() const { return m_; }
    const std::optional<PauliCorrelations>& pauli() const { return pauli_; }

  private:
    friend TwoQubitState from_pauli(double, double, double, double, double);
    TwoQubitState() = default;
    Mat4 m_;
    std::optional<PauliCorrelations> pauli_;
};

// Ascending eigenvalues of the partial transpose of a two-qubit state.
// They sum to 1, the smallest is >= -1/2 and the largest <= 1.
struct PtEigenvalues {
    std::array<double, 4> lambda{};
};

// rho = (I + z1 Z(x)I + z2 I(x)Z + zz Z(x)Z + xx X(x)X + yy Y(x)Y)/4.
// Inputs must lie in [-1,1] (a 1e-9 slack absorbs quadrature round-off).
// Throws NonPositiveStateError when the correlations are inconsistent.
TwoQubitState from_pauli(double z1, double z2, double zz, double xx, double yy);

// Transposition of the second qubit's indices: out(ab,a'b') = in(ab',a'b).
// An exact entry permutation, hence an involution; the result is Hermitian
// and unit trace but need not be positive.
Mat4 partial_transpose_b(const Mat4& m);
Mat4 partial_transpose_b(const TwoQubitState& s);

// Eigenvalues of the partial transpose, ascending. X-form states (cached
// decomposition with xy = yx = 0) use the closed-form 2x2 blocks
//   [(1+zz) +- sqrt((z1+z2)^2 + (xx+yy)^2)]/4,
//   [(1-zz) +- sqrt((z1-z2)^2 + (xx-yy)^2)]/4;
// anything else falls back to the generic Jacobi eigensolver.
PtEigenvalues pt_eigenvalues(const TwoQubitState& s);

// Always the generic 4x4 eigensolver. Kept as the independent route for
// cross-checking the closed forms.
PtEigenvalues pt_eigenvalues_generic(const TwoQubitState& s);

// Steerability function S = lam1 + lam2 - (lam1 - lam2)^2 over the two
// smallest partial-transpose eigenvalues; S < 0 certifies steering.
// S is symmetric in lam1, lam2, so degenerate ties need no tie-break.
double steerability(const TwoQubitState& s);
double steerability(const PtEigenvalues& pt);

// Standard two-qubit concurrence in [0,1] via the spin-flip construction:
// eigenvalues of sqrt(rho) rho~ sqrt(rho) with rho~ = (Y(x)Y) rho* (Y(x)Y).
double concurrence(const TwoQubitState& s);

// Full Pauli read-out of an arbitrary 4x4 matrix: tr(m sigma_a (x) sigma_b)
// for the terms named in PauliCorrelations.
PauliCorrelations pauli_decompose(const Mat4& m);

// 16 whitespace-separated re/im pairs, row major, 17 significant digits.
std::string serialize(const TwoQubitState& s);

}  // namespace steerxy
