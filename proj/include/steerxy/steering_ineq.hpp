#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "steerxy/linalg.hpp"
#include "steerxy/qstate.hpp"

namespace steerxy {

// Measurement-axis family for the N-setting steering functional
// S_N = (1/N) sum_k <A_k sigma_{n_k}^B>, with the local-hidden-state bound C_N.
struct AxisSet {
    int n_settings = 0;
    std::vector<Vec3> axes;  // unit vectors
    double bound = 0;        // C_N
};

// Canonical sets:
//   2  -> {x, z},           C_2 = 1/sqrt(2)
//   3  -> {x, y, z},        C_3 = 1/sqrt(3)
//   10 -> the ten antipodal vertex directions of a regular dodecahedron
//         (equivalently icosahedron face centres), C_10 = 0.5236 as published.
// The N = 10 orientation is the golden-ratio embedding listed in
// steering_ineq.cpp; pairwise |dot| values are 1/3 and sqrt(5)/3.
AxisSet axis_set(int n_settings);

// Plain-text axes, one per line, three reals each, normalized on load.
// Writes a note to `warn` when any renormalization exceeds 1e-6.
AxisSet axis_set_from_file(const std::string& path, double bound,
                           std::ostream* warn = nullptr);

// t_ab = <sigma_a (x) sigma_b>, a,b in {x,y,z}. Diagonal for states built by
// from_pauli. Every singular value of a physical state's matrix is <= 1;
// construction enforces this within 1e-10.
struct CorrelationMatrix {
    Mat3 t{};
};

CorrelationMatrix correlation_matrix(const TwoQubitState& s);

struct Rotation {
    Mat3 m{};
    static Rotation identity();
    static Rotation euler_zyz(double alpha, double beta, double gamma);
    static Rotation axis_angle(const Vec3& axis, double angle);
};

// Quantum value at a fixed orientation of Bob's axes: with b_k = R n_k and
// Alice free to measure along T b_k / |T b_k| per setting,
//   value = (1/N) sum_k || T b_k ||.
double quantum_value(const CorrelationMatrix& t, const AxisSet& axes, const Rotation& orientation);
double quantum_value(const TwoQubitState& s, const AxisSet& axes, const Rotation& orientation);

// Maximum over orientations R in SO(3): 15-degree Euler grid, then compass
// refinement of the angles down to 1e-6. Deterministic.
double quantum_value_optimized(const CorrelationMatrix& t, const AxisSet& axes, Rotation* best = nullptr);
double quantum_value_optimized(const TwoQubitState& s, const AxisSet& axes, Rotation* best = nullptr);

struct Violation {
    double value;  // optimized quantum value
    double bound;  // C_N
    bool violated; // value > bound
};

Violation violation(const TwoQubitState& s, int n_settings);

}  // namespace steerxy
