#ifndef BOLAB_TEST_UTIL_HPP
#define BOLAB_TEST_UTIL_HPP

#include "bolab/engine.hpp"
#include "bolab/field.hpp"

#include <random>

namespace bolab_test {

inline double r_i(double x) { return 2.0 / (x * x + 1.0); }

inline bolab::SampledField r_i_field(const bolab::Grid1D& g, double shift = 0.0) {
    return bolab::SampledField::sample(g, [&](double x) { return r_i(x - shift); });
}

/// Random valid spectrum: N distinct negative eigenvalues with a minimum
/// separation (keeps the coupling matrices well scaled), centers in
/// [-5, 5], phases in [0, 2pi).
inline bolab::AsymptoticSpectrum random_spectrum(std::mt19937& rng, int n_max,
                                                 bool random_phases) {
    std::uniform_int_distribution<int> nd(1, n_max);
    const int N = nd(rng);
    std::uniform_real_distribution<double> lam(-3.0, -0.1);
    std::vector<double> ls;
    while (static_cast<int>(ls.size()) < N) {
        const double cand = lam(rng);
        bool ok = true;
        for (double l : ls)
            if (std::abs(l - cand) < 0.05) ok = false;
        if (ok) ls.push_back(cand);
    }
    std::sort(ls.begin(), ls.end());
    std::uniform_real_distribution<double> cen(-5.0, 5.0), pha(0.0, 2.0 * M_PI);
    std::vector<double> cs(N), ps(N, 0.0);
    for (int k = 0; k < N; ++k) {
        cs[k] = cen(rng);
        if (random_phases) ps[k] = pha(rng);
    }
    return bolab::AsymptoticSpectrum(ls, cs, ps);
}

} // namespace bolab_test

#endif
