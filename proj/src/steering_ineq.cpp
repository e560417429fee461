#include "steerxy/steering_ineq.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "steerxy/errors.hpp"

namespace steerxy {

namespace {

constexpr double kPi = std::numbers::pi;

// Golden-ratio embedding of the dodecahedron: one representative per
// antipodal vertex pair, first nonzero coordinate positive, norm sqrt(3)
// before normalization. Pairwise |dot| is 1/3 or sqrt(5)/3.
std::vector<Vec3> dodecahedron_axes() {
    const double p = (1.0 + std::sqrt(5.0)) / 2.0;
    const double q = 1.0 / p;
    const std::vector<Vec3> raw = {
        {1, 1, 1},  {1, 1, -1}, {1, -1, 1}, {1, -1, -1},
        {0, q, p},  {0, q, -p},
        {q, p, 0},  {q, -p, 0},
        {p, 0, q},  {p, 0, -q},
    };
    std::vector<Vec3> axes;
    axes.reserve(raw.size());
    for (const Vec3& v : raw) axes.push_back(normalized3(v));
    return axes;
}

}  // namespace

AxisSet axis_set(int n_settings) {
    switch (n_settings) {
        case 2:
            return {2, {{1, 0, 0}, {0, 0, 1}}, 1.0 / std::sqrt(2.0)};
        case 3:
            return {3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 1.0 / std::sqrt(3.0)};
        case 10:
            // The published bound, 4 significant figures. The exact maximum of
            // the LHS functional over this axis set is (3+sqrt(5))/10.
            return {10, dodecahedron_axes(), 0.5236};
        default:
            throw ValidationError("axis_set: supported settings are 2, 3 and 10");
    }
}

AxisSet axis_set_from_file(const std::string& path, double bound, std::ostream* warn) {
    std::ifstream in(path);
    if (!in) throw ValidationError("axis_set_from_file: cannot open " + path);
    AxisSet set;
    set.bound = bound;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        Vec3 v{};
        if (!(ls >> v[0] >> v[1] >> v[2]))
            throw ValidationError("axis_set_from_file: malformed axis on line " + std::to_string(lineno));
        const double n = norm3(v);
        if (n == 0.0)
            throw ValidationError("axis_set_from_file: zero axis on line " + std::to_string(lineno));
        if (std::abs(n - 1.0) > 1e-6 && warn)
            *warn << "axis on line " << lineno << " renormalized (|norm - 1| = " << std::abs(n - 1.0)
                  << ")\n";
        set.axes.push_back({v[0] / n, v[1] / n, v[2] / n});
    }
    if (set.axes.empty()) throw ValidationError("axis_set_from_file: no axes in " + path);
    set.n_settings = static_cast<int>(set.axes.size());
    return set;
}

CorrelationMatrix correlation_matrix(const TwoQubitState& s) {
    CorrelationMatrix t;
    if (const auto& pc = s.pauli(); pc.has_value()) {
        // X-form states carry no xz/zx/yz/zy components
        t.t = {pc->xx, pc->xy, 0, pc->yx, pc->yy, 0, 0, 0, pc->zz};
    } else {
        const Mat4& m = s.matrix();
        const auto overlap = [&m](int a, int b) {  // tr(rho sigma_a (x) sigma_b)
            static const Complex P[4][2][2] = {
                {{1, 0}, {0, 1}},
                {{0, 1}, {1, 0}},
                {{0, Complex(0, -1)}, {Complex(0, 1), 0}},
                {{1, 0}, {0, -1}},
            };
            Complex tr = 0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k)
                        for (int l = 0; l < 2; ++l)
                            tr += m(2 * i + k, 2 * j + l) * P[a][j][i] * P[b][l][k];
            return tr.real();
        };
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b) t.t[3 * (a - 1) + (b - 1)] = overlap(a, b);
    }
    if (singular_values3(t.t)[0] > 1.0 + 1e-10)
        throw NumericalError("correlation matrix has a singular value above 1");
    return t;
}

Rotation Rotation::identity() { return {{1, 0, 0, 0, 1, 0, 0, 0, 1}}; }

Rotation Rotation::euler_zyz(double alpha, double beta, double gamma) {
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double cb = std::cos(beta), sb = std::sin(beta);
    const double cc = std::cos(gamma), sc = std::sin(gamma);
    const Mat3 rz1 = {ca, -sa, 0, sa, ca, 0, 0, 0, 1};
    const Mat3 ry = {cb, 0, sb, 0, 1, 0, -sb, 0, cb};
    const Mat3 rz2 = {cc, -sc, 0, sc, cc, 0, 0, 0, 1};
    return {matmul3(rz1, matmul3(ry, rz2))};
}

Rotation Rotation::axis_angle(const Vec3& axis, double angle) {
    const Vec3 u = normalized3(axis);
    const double c = std::cos(angle), s = std::sin(angle), t = 1 - c;
    return {{c + u[0] * u[0] * t,        u[0] * u[1] * t - u[2] * s, u[0] * u[2] * t + u[1] * s,
             u[1] * u[0] * t + u[2] * s, c + u[1] * u[1] * t,        u[1] * u[2] * t - u[0] * s,
             u[2] * u[0] * t - u[1] * s, u[2] * u[1] * t + u[0] * s, c + u[2] * u[2] * t}};
}

double quantum_value(const CorrelationMatrix& t, const AxisSet& axes, const Rotation& orientation) {
    double sum = 0.0;
    for (const Vec3& n : axes.axes) {
        const Vec3 b = matvec3(orientation.m, n);
        sum += norm3(matvec3(t.t, b));
    }
    return sum / static_cast<double>(axes.axes.size());
}

double quantum_value(const TwoQubitState& s, const AxisSet& axes, const Rotation& orientation) {
    return quantum_value(correlation_matrix(s), axes, orientation);
}

double quantum_value_optimized(const CorrelationMatrix& t, const AxisSet& axes, Rotation* best) {
    const double coarse = kPi / 12.0;  // 15 degrees

    double best_v = -1.0;
    double ba = 0, bb = 0, bc = 0;
    for (double a = 0; a < 2 * kPi - 1e-12; a += coarse)
        for (double b = 0; b <= kPi + 1e-12; b += coarse)
            for (double c = 0; c < 2 * kPi - 1e-12; c += coarse) {
                const double v = quantum_value(t, axes, Rotation::euler_zyz(a, b, c));
                if (v > best_v) {
                    best_v = v;
                    ba = a;
                    bb = b;
                    bc = c;
                }
            }

    // compass refinement on the Euler angles
    double step = coarse;
    while (step > 1e-6) {
        bool improved = false;
        const double cand[6][3] = {{ba + step, bb, bc}, {ba - step, bb, bc}, {ba, bb + step, bc},
                                   {ba, bb - step, bc}, {ba, bb, bc + step}, {ba, bb, bc - step}};
        for (const auto& c3 : cand) {
            const double v = quantum_value(t, axes, Rotation::euler_zyz(c3[0], c3[1], c3[2]));
            if (v > best_v) {
                best_v = v;
                ba = c3[0];
                bb = c3[1];
                bc = c3[2];
                improved = true;
            }
        }
        if (!improved) step *= 0.5;
    }

    if (best) *best = Rotation::euler_zyz(ba, bb, bc);
    return best_v;
}

double quantum_value_optimized(const TwoQubitState& s, const AxisSet& axes, Rotation* best) {
    return quantum_value_optimized(correlation_matrix(s), axes, best);
}

Violation violation(const TwoQubitState& s, int n_settings) {
    const AxisSet axes = axis_set(n_settings);
    const double value = quantum_value_optimized(s, axes);
    return {value, axes.bound, value > axes.bound};
}

}  // namespace steerxy
