// Times the OpenMP sweep path against the serial reference on the cylinder
// splice family and checks that both produce identical rows.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "zas/geometry.hpp"
#include "zas/models.hpp"
#include "zas/parallel.hpp"

namespace {

double now() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct Row {
    double m, zas;
};

std::vector<Row> sweep(std::size_t n, bool parallel) {
    std::vector<Row> rows(n);
    // exceptions must not escape the worker lambda under OpenMP
    std::vector<std::string> failures(n);
    zas::num::parallel_for(n, parallel, [&](std::size_t i) {
        const double L = 40.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        try {
            const auto built =
                zas::model::build(zas::model::ModelSpec::schwarzschild_with_cylinder(1.0, L));
            rows[i].m = zas::geom::adm_mass(built.profile);
            const auto zm = zas::geom::zas_mass(built.profile);
            rows[i].zas = zm.value();
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < n; ++i) {
        if (failures[i].empty()) continue;
        std::fprintf(stderr, "row %zu failed: %s\n", i, failures[i].c_str());
        std::exit(1);
    }
    return rows;
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? static_cast<std::size_t>(std::atoll(argv[1])) : 64;
    if (n < 2) {
        std::fprintf(stderr, "need at least 2 rows\n");
        return 2;
    }
#ifdef _OPENMP
    const int threads = omp_get_max_threads();
#else
    const int threads = 1;
#endif

    sweep(8, false);  // warm up allocators and quadrature tables

    const double t0 = now();
    const auto serial = sweep(n, false);
    const double t1 = now();
    const auto parallel = sweep(n, true);
    const double t2 = now();

    bool identical = true;
    for (std::size_t i = 0; i < n; ++i)
        identical = identical && serial[i].m == parallel[i].m && serial[i].zas == parallel[i].zas;

    std::printf("cylinder splice sweep, %zu rows\n", n);
    std::printf("serial reference: %8.3f s\n", t1 - t0);
    std::printf("parallel (%d thread%s): %8.3f s\n", threads, threads == 1 ? "" : "s", t2 - t1);
    std::printf("speedup: %.2fx\n", (t1 - t0) / (t2 - t1));
    std::printf("rows identical across both paths: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
