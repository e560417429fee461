#include "steerxy/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "steerxy/errors.hpp"

namespace steerxy {

NonPositiveStateError::NonPositiveStateError(double min_eig)
    : Error([min_eig] {
          char buf[96];
          std::snprintf(buf, sizeof buf,
                        "correlations yield a non-positive density matrix (min eigenvalue %.6e)",
                        min_eig);
          return std::string(buf);
      }()),
      min_eigenvalue(min_eig) {}

Mat4 Mat4::identity() {
    Mat4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
}

Mat4 operator*(const Mat4& x, const Mat4& y) {
    Mat4 z;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const Complex xik = x(i, k);
            for (int j = 0; j < 4; ++j) z(i, j) += xik * y(k, j);
        }
    return z;
}

Mat4 operator+(const Mat4& x, const Mat4& y) {
    Mat4 z;
    for (int i = 0; i < 16; ++i) z.a[i] = x.a[i] + y.a[i];
    return z;
}

Mat4 operator-(const Mat4& x, const Mat4& y) {
    Mat4 z;
    for (int i = 0; i < 16; ++i) z.a[i] = x.a[i] - y.a[i];
    return z;
}

Mat4 operator*(Complex s, const Mat4& x) {
    Mat4 z;
    for (int i = 0; i < 16; ++i) z.a[i] = s * x.a[i];
    return z;
}

Mat4 adjoint(const Mat4& x) {
    Mat4 z;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) z(i, j) = std::conj(x(j, i));
    return z;
}

Complex trace(const Mat4& x) { return x(0, 0) + x(1, 1) + x(2, 2) + x(3, 3); }

double hermiticity_defect(const Mat4& x) {
    double d = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) d = std::max(d, std::abs(x(i, j) - std::conj(x(j, i))));
    return d;
}

std::vector<double> hermitian_eigenvalues(std::vector<Complex> a, int n,
                                          std::vector<Complex>* vectors, double tol) {
    auto at = [&](int i, int j) -> Complex& { return a[i * n + j]; };
    std::vector<Complex> v;
    if (vectors) {
        v.assign(n * n, Complex(0));
        for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;
    }

    double fro = 0;
    for (const Complex& z : a) fro += std::norm(z);
    fro = std::sqrt(fro);
    const double stop = tol * std::max(1.0, fro);

    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2.0 * std::norm(at(i, j));
        if (std::sqrt(off) <= stop) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = at(p, q);
                const double mag = std::abs(apq);
                if (mag < 1e-300) continue;
                const Complex phase = apq / mag;  // apq = mag * e^{i phi}
                const double app = at(p, p).real();
                const double aqq = at(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // A <- J^dag A J with J_pp = J_qq = c, J_pq = s*phase,
                // J_qp = -s*conj(phase); kills the (p,q) entry exactly.
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const Complex akp = at(k, p);
                    const Complex akq = at(k, q);
                    at(k, p) = c * akp - s * std::conj(phase) * akq;
                    at(k, q) = s * phase * akp + c * akq;
                    at(p, k) = std::conj(at(k, p));
                    at(q, k) = std::conj(at(k, q));
                }
                at(p, p) = c * c * app + s * s * aqq - 2.0 * c * s * mag;
                at(q, q) = s * s * app + c * c * aqq + 2.0 * c * s * mag;
                at(p, q) = 0.0;
                at(q, p) = 0.0;

                if (vectors) {
                    for (int k = 0; k < n; ++k) {
                        const Complex vkp = v[k * n + p];
                        const Complex vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * std::conj(phase) * vkq;
                        v[k * n + q] = s * phase * vkp + c * vkq;
                    }
                }
            }
        }
    }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return at(i, i).real() < at(j, j).real(); });

    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = at(order[i], order[i]).real();
    if (vectors) {
        vectors->assign(n * n, Complex(0));
        for (int col = 0; col < n; ++col)
            for (int k = 0; k < n; ++k) (*vectors)[k * n + col] = v[k * n + order[col]];
    }
    return w;
}

std::array<double, 4> hermitian_eigenvalues4(const Mat4& x) {
    std::vector<Complex> a(x.a.begin(), x.a.end());
    const std::vector<double> w = hermitian_eigenvalues(std::move(a), 4);
    return {w[0], w[1], w[2], w[3]};
}

void hermitian_eigensystem4(const Mat4& x, std::array<double, 4>& w, Mat4& v) {
    std::vector<Complex> a(x.a.begin(), x.a.end());
    std::vector<Complex> vec;
    const std::vector<double> ww = hermitian_eigenvalues(std::move(a), 4, &vec);
    for (int i = 0; i < 4; ++i) w[i] = ww[i];
    for (int i = 0; i < 16; ++i) v.a[i] = vec[i];
}

double lu_determinant(std::vector<double> m, int n) {
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(m[col * n + col]);
        for (int row = col + 1; row < n; ++row) {
            const double cand = std::abs(m[row * n + col]);
            if (cand > best) {
                best = cand;
                pivot = row;
            }
        }
        if (best == 0.0) return 0.0;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(m[pivot * n + j], m[col * n + j]);
            det = -det;
        }
        const double d = m[col * n + col];
        det *= d;
        for (int row = col + 1; row < n; ++row) {
            const double f = m[row * n + col] / d;
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) m[row * n + j] -= f * m[col * n + j];
        }
    }
    return det;
}

double dot3(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

double norm3(const Vec3& x) { return std::sqrt(dot3(x, x)); }

Vec3 normalized3(const Vec3& x) {
    const double n = norm3(x);
    return {x[0] / n, x[1] / n, x[2] / n};
}

Vec3 matvec3(const Mat3& m, const Vec3& x) {
    return {m[0] * x[0] + m[1] * x[1] + m[2] * x[2],
            m[3] * x[0] + m[4] * x[1] + m[5] * x[2],
            m[6] * x[0] + m[7] * x[1] + m[8] * x[2]};
}

Mat3 matmul3(const Mat3& x, const Mat3& y) {
    Mat3 z{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            for (int j = 0; j < 3; ++j) z[3 * i + j] += x[3 * i + k] * y[3 * k + j];
    return z;
}

Mat3 transpose3(const Mat3& m) {
    return {m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]};
}

std::array<double, 3> singular_values3(const Mat3& m) {
    // eigenvalues of m^T m via the Hermitian solver
    const Mat3 mt = transpose3(m);
    const Mat3 g = matmul3(mt, m);
    std::vector<Complex> a(9);
    for (int i = 0; i < 9; ++i) a[i] = g[i];
    const std::vector<double> w = hermitian_eigenvalues(std::move(a), 3);
    return {std::sqrt(std::max(0.0, w[2])), std::sqrt(std::max(0.0, w[1])),
            std::sqrt(std::max(0.0, w[0]))};
}

}  // namespace steerxy
