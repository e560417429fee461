#pragma once

#include <array>
#include <complex>
#include <vector>

namespace steerxy {

using Complex = std::complex<double>;

// Dense complex 4x4, row major. Plain value type.
struct Mat4 {
    std::array<Complex, 16> a{};

    Complex& operator()(int i, int j) { return a[4 * i + j]; }
    const Complex& operator()(int i, int j) const { return a[4 * i + j]; }

    static Mat4 identity();
};

Mat4 operator*(const Mat4& x, const Mat4& y);
Mat4 operator+(const Mat4& x, const Mat4& y);
Mat4 operator-(const Mat4& x, const Mat4& y);
Mat4 operator*(Complex s, const Mat4& x);
Mat4 adjoint(const Mat4& x);
Complex trace(const Mat4& x);
double hermiticity_defect(const Mat4& x);  // max_ij |x_ij - conj(x_ji)|

// Eigenvalues of an n x n complex Hermitian matrix by cyclic Jacobi rotations,
// returned ascending. The off-diagonal Frobenius norm is driven below
// tol * max(1, ||A||_F). If `vectors` is non-null it receives the unitary V
// (row major) with A = V diag(w) V^dag, columns ordered to match w.
std::vector<double> hermitian_eigenvalues(std::vector<Complex> a, int n,
                                          std::vector<Complex>* vectors = nullptr,
                                          double tol = 1e-14);

std::array<double, 4> hermitian_eigenvalues4(const Mat4& x);
void hermitian_eigensystem4(const Mat4& x, std::array<double, 4>& w, Mat4& v);

// Determinant of a real dense n x n matrix (row major) by LU with partial
// pivoting. Returns 0 on an exactly singular pivot.
double lu_determinant(std::vector<double> m, int n);

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<double, 9>;  // row major

double dot3(const Vec3& x, const Vec3& y);
double norm3(const Vec3& x);
Vec3 normalized3(const Vec3& x);
Vec3 matvec3(const Mat3& m, const Vec3& x);
Mat3 matmul3(const Mat3& x, const Mat3& y);
Mat3 transpose3(const Mat3& m);

// Singular values of a real 3x3, descending.
std::array<double, 3> singular_values3(const Mat3& m);

}  // namespace steerxy
