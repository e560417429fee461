// Timing comparison of the serial reference sweep against the OpenMP path,
// plus a bit-identity check between the two row sets.
#include <cmath>
#include <cstdio>

#include "steerxy/criticality.hpp"

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

namespace {

double now_seconds() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
#endif
}

struct Workload {
    const char* name;
    steerxy::ChainSize size;
    steerxy::HRange range;
    bool with_ineq;
};

bool identical(const steerxy::SweepTable& a, const steerxy::SweepTable& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (size_t i = 0; i < a.rows.size(); ++i) {
        const auto& x = a.rows[i];
        const auto& y = b.rows[i];
        if (x.h != y.h || x.s != y.s || x.ds_dh != y.ds_dh) return false;
        if (x.s10.has_value() != y.s10.has_value()) return false;
        if (x.s10 && (*x.s10 != *y.s10 || *x.ds10_dh != *y.ds10_dh)) return false;
    }
    return true;
}

}  // namespace

int main() {
    using namespace steerxy;

    const Workload workloads[] = {
        {"thermodynamic S, 1001 pts", ChainSize::thermodynamic(), {0.0, 2.0, 0.002}, false},
        {"finite N=3201 S, 501 pts", ChainSize::finite(3201), {0.5, 1.5, 0.002}, false},
        {"thermodynamic S+S10, 101 pts", ChainSize::thermodynamic(), {0.9, 1.1, 0.002}, true},
    };

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both paths run serially\n");
#endif
    std::printf("%-32s %12s %12s %9s %s\n", "workload", "serial [s]", "parallel [s]", "speedup",
                "rows identical");

    for (const Workload& w : workloads) {
        double t0 = now_seconds();
        const SweepTable serial = sweep(0.6, w.size, w.range, 1, w.with_ineq, Exec::Serial);
        double t1 = now_seconds();
        const SweepTable parallel = sweep(0.6, w.size, w.range, 1, w.with_ineq, Exec::Parallel);
        double t2 = now_seconds();

        const double ts = t1 - t0, tp = t2 - t1;
        std::printf("%-32s %12.3f %12.3f %8.2fx %s\n", w.name, ts, tp, ts / tp,
                    identical(serial, parallel) ? "yes" : "NO");
    }
    return 0;
}
