#include "steerxy/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "steerxy/errors.hpp"

namespace steerxy {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;   // quadrature can shave eigenvalues slightly below 0
constexpr double kInputSlack = 1e-9;  // round-off slack on the [-1,1] input range

// sigma_a (x) sigma_b as dense 4x4, a,b in {0:I, 1:X, 2:Y, 3:Z}
Mat4 pauli_kron(int a, int b) {
    static const Complex P[4][2][2] = {
        {{1, 0}, {0, 1}},                                  // I
        {{0, 1}, {1, 0}},                                  // X
        {{0, Complex(0, -1)}, {Complex(0, 1), 0}},         // Y
        {{1, 0}, {0, -1}},                                 // Z
    };
    Mat4 m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = P[a][i][j] * P[b][k][l];
    return m;
}

double min_eigenvalue(const Mat4& m) { return hermitian_eigenvalues4(m)[0]; }

double real_pauli_overlap(const Mat4& m, int a, int b) {
    // tr(m sigma_a (x) sigma_b); real for Hermitian m
    const Mat4 op = pauli_kron(a, b);
    Complex t = 0;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) t += m(i, k) * op(k, i);
    return t.real();
}

bool x_form_within(const Mat4& m, PauliCorrelations& out, double tol) {
    out = pauli_decompose(m);
    Mat4 rebuilt = Complex(0.25) * Mat4::identity();
    rebuilt = rebuilt + Complex(0.25 * out.z1) * pauli_kron(3, 0);
    rebuilt = rebuilt + Complex(0.25 * out.z2) * pauli_kron(0, 3);
    rebuilt = rebuilt + Complex(0.25 * out.zz) * pauli_kron(3, 3);
    rebuilt = rebuilt + Complex(0.25 * out.xx) * pauli_kron(1, 1);
    rebuilt = rebuilt + Complex(0.25 * out.yy) * pauli_kron(2, 2);
    rebuilt = rebuilt + Complex(0.25 * out.xy) * pauli_kron(1, 2);
    rebuilt = rebuilt + Complex(0.25 * out.yx) * pauli_kron(2, 1);
    double defect = 0;
    for (int i = 0; i < 16; ++i) defect = std::max(defect, std::abs(rebuilt.a[i] - m.a[i]));
    return defect <= tol;
}

}  // namespace

TwoQubitState TwoQubitState::from_matrix(const Mat4& m) {
    if (hermiticity_defect(m) > kHermTol)
        throw ValidationError("two-qubit state: matrix is not Hermitian within 1e-12");
    if (std::abs(trace(m) - Complex(1.0)) > kTraceTol)
        throw ValidationError("two-qubit state: trace differs from 1 by more than 1e-12");
    const double min_eig = min_eigenvalue(m);
    if (min_eig < -kPsdTol) throw NonPositiveStateError(min_eig);

    TwoQubitState s;
    s.m_ = m;
    PauliCorrelations pc;
    if (x_form_within(m, pc, kHermTol)) s.pauli_ = pc;
    return s;
}

TwoQubitState from_pauli(double z1, double z2, double zz, double xx, double yy) {
    for (double v : {z1, z2, zz, xx, yy})
        if (!(std::abs(v) <= 1.0 + kInputSlack))
            throw ValidationError("from_pauli: correlations must lie in [-1, 1]");

    Mat4 m;
    const double d00 = 0.25 * (1 + z1 + z2 + zz);
    const double d01 = 0.25 * (1 + z1 - z2 - zz);
    const double d10 = 0.25 * (1 - z1 + z2 - zz);
    const double d11 = 0.25 * (1 - z1 - z2 + zz);
    const double corner = 0.25 * (xx - yy);  // (00,11) entry
    const double inner = 0.25 * (xx + yy);   // (01,10) entry
    m(0, 0) = d00;
    m(1, 1) = d01;
    m(2, 2) = d10;
    m(3, 3) = d11;
    m(0, 3) = m(3, 0) = corner;
    m(1, 2) = m(2, 1) = inner;

    const double min_eig = min_eigenvalue(m);
    if (min_eig < -kPsdTol) throw NonPositiveStateError(min_eig);

    TwoQubitState s;
    s.m_ = m;
    s.pauli_ = PauliCorrelations{z1, z2, zz, xx, yy, 0.0, 0.0};
    return s;
}

Mat4 partial_transpose_b(const Mat4& m) {
    Mat4 out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int ap = 0; ap < 2; ++ap)
                for (int bp = 0; bp < 2; ++bp)
                    out(2 * a + b, 2 * ap + bp) = m(2 * a + bp, 2 * ap + b);
    return out;
}

Mat4 partial_transpose_b(const TwoQubitState& s) { return partial_transpose_b(s.matrix()); }

PtEigenvalues pt_eigenvalues(const TwoQubitState& s) {
    const auto& pc = s.pauli();
    if (pc && pc->xy == 0.0 && pc->yx == 0.0) {
        const double outer = std::sqrt((pc->z1 + pc->z2) * (pc->z1 + pc->z2) +
                                       (pc->xx + pc->yy) * (pc->xx + pc->yy));
        const double inner = std::sqrt((pc->z1 - pc->z2) * (pc->z1 - pc->z2) +
                                       (pc->xx - pc->yy) * (pc->xx - pc->yy));
        std::array<double, 4> lam = {0.25 * ((1 + pc->zz) + outer), 0.25 * ((1 + pc->zz) - outer),
                                     0.25 * ((1 - pc->zz) + inner), 0.25 * ((1 - pc->zz) - inner)};
        std::sort(lam.begin(), lam.end());
        return {lam};
    }
    return pt_eigenvalues_generic(s);
}

PtEigenvalues pt_eigenvalues_generic(const TwoQubitState& s) {
    return {hermitian_eigenvalues4(partial_transpose_b(s.matrix()))};
}

double steerability(const PtEigenvalues& pt) {
    const double l1 = pt.lambda[0];
    const double l2 = pt.lambda[1];
    return l1 + l2 - (l1 - l2) * (l1 - l2);
}

double steerability(const TwoQubitState& s) { return steerability(pt_eigenvalues(s)); }

double concurrence(const TwoQubitState& s) {
    const Mat4& rho = s.matrix();

    // rho~ = (Y(x)Y) conj(rho) (Y(x)Y)
    Mat4 conj_rho;
    for (int i = 0; i < 16; ++i) conj_rho.a[i] = std::conj(rho.a[i]);
    const Mat4 yy = pauli_kron(2, 2);
    const Mat4 rho_tilde = yy * conj_rho * yy;

    // sqrt(rho) from the spectral decomposition
    std::array<double, 4> w;
    Mat4 v;
    hermitian_eigensystem4(rho, w, v);
    Mat4 sqrt_rho;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Complex acc = 0;
            for (int k = 0; k < 4; ++k)
                acc += v(i, k) * std::sqrt(std::max(0.0, w[k])) * std::conj(v(j, k));
            sqrt_rho(i, j) = acc;
        }

    const Mat4 m = sqrt_rho * rho_tilde * sqrt_rho;  // Hermitian PSD
    std::array<double, 4> mu = hermitian_eigenvalues4(m);
    for (double& x : mu) x = std::sqrt(std::max(0.0, x));
    // mu ascending: C = max(0, mu4 - mu3 - mu2 - mu1)
    return std::max(0.0, mu[3] - mu[2] - mu[1] - mu[0]);
}

PauliCorrelations pauli_decompose(const Mat4& m) {
    PauliCorrelations pc;
    pc.z1 = real_pauli_overlap(m, 3, 0);
    pc.z2 = real_pauli_overlap(m, 0, 3);
    pc.zz = real_pauli_overlap(m, 3, 3);
    pc.xx = real_pauli_overlap(m, 1, 1);
    pc.yy = real_pauli_overlap(m, 2, 2);
    pc.xy = real_pauli_overlap(m, 1, 2);
    pc.yx = real_pauli_overlap(m, 2, 1);
    return pc;
}

std::string serialize(const TwoQubitState& s) {
    std::string out;
    char buf[64];
    for (int i = 0; i < 16; ++i) {
        const Complex z = s.matrix().a[i];
        std::snprintf(buf, sizeof buf, "%.17g %.17g", z.real(), z.imag());
        if (i) out += ' ';
        out += buf;
    }
    return out;
}

}  // namespace steerxy
