// Timing harness for the OpenMP kernels against their serial references.
// Usage: bench_kernels [repeats]

#include "bolab/engine.hpp"
#include "bolab/lax.hpp"
#include "bolab/scattering.hpp"
#include "bolab/soliton.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace bolab;

namespace {

double time_once(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count() / 1e6;
}

double best_of(int repeats, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) best = std::min(best, time_once(fn));
    return best;
}

void report(const std::string& name, double serial, double parallel) {
    std::printf("%-28s serial %8.3fs   omp %8.3fs   speedup %.2fx\n", name.c_str(), serial,
                parallel, serial / parallel);
}

} // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif

    {
        std::vector<SolitonParam> ps;
        for (int j = 1; j <= 4000; ++j)
            ps.emplace_back(cplx(0.01 * j, 0.5 + 0.002 * j));
        SolitonFamily fam(ps);
        const Grid1D g = Grid1D::centered(200.0, 8192);
        report("family_field (4000 poles)",
               best_of(repeats, [&] { family_field_serial(fam, 1.0, g, 1e-14); }),
               best_of(repeats, [&] { family_field(fam, 1.0, g, 1e-14); }));
    }

    {
        std::vector<double> lam;
        for (int k = 1; k <= 60; ++k) lam.push_back(-2.0 / (k * k));
        AsymptoticSpectrum spec = AsymptoticSpectrum::from_lambdas(lam);
        std::vector<double> xs;
        for (int i = 0; i < 4096; ++i) xs.push_back(-200.0 + 0.09765625 * i);
        report("exact_field (N=60, 4096 pts)",
               best_of(repeats, [&] { exact_field_serial(spec, 100.0, xs); }),
               best_of(repeats, [&] { exact_field(spec, 100.0, xs); }));
    }

    {
        const Grid1D g = Grid1D::centered(200.0, 4096);
        auto u = SampledField::sample(g, [](double x) { return 2.0 / (x * x + 1.0); });
        report("toeplitz_of (M=1024)",
               best_of(repeats, [&] { toeplitz_of_serial(u, 1024); }),
               best_of(repeats, [&] { toeplitz_of(u, 1024); }));
    }

    {
        const Grid1D g = Grid1D::centered(200.0, 4096);
        auto u = SampledField::sample(
            g, [](double x) { return 0.05 * std::exp(-(x / 4.0) * (x / 4.0)); });
        SweepOptions opt;
        opt.lambda_max = 1.0;
        report("zeta_sweep (lambda <= 1)",
               best_of(repeats, [&] { zeta_sweep_serial(u, opt); }),
               best_of(repeats, [&] { zeta_sweep(u, opt); }));
    }
    return 0;
}
