#ifndef BOLAB_RESOLUTION_HPP
#define BOLAB_RESOLUTION_HPP

#include "bolab/engine.hpp"
#include "bolab/evolution.hpp"
#include "bolab/scattering.hpp"

#include <string>
#include <vector>

namespace bolab {

/// Power-law eigenvalue model lambda_k = -C1 k^{-alpha}, alpha > 1.
struct SpectralLaw {
    double c1 = 1.0;
    double c2 = 1.0;
    double alpha = 2.0;

    SpectralLaw(double C1, double C2, double a) : c1(C1), c2(C2), alpha(a) {
        if (!(c1 > 0.0) || !(c2 > 0.0) || !(alpha > 1.0))
            throw std::invalid_argument("SpectralLaw: need C1, C2 > 0 and alpha > 1");
    }

    double lambda(long k) const { return -c1 * std::pow(static_cast<double>(k), -alpha); }
    std::vector<double> lambdas(long N) const;
    /// Integral-bound certificate for sum_{k>N} 4 |lambda_k|.
    double tail_bound(long N) const { return 4.0 * c1 / (alpha - 1.0) * std::pow(double(N), 1.0 - alpha); }
    AsymptoticSpectrum spectrum(long N) const;
};

struct ErrorCurve {
    std::vector<double> times;
    std::vector<double> errors;
    std::string norm_kind;
};

struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// sum_{k>N} 4|lambda_k| over an explicit list.
double tail_error(const std::vector<double>& lambdas, long N);
/// Certified integral bound for a law (dominates the exact tail).
double tail_error(const SpectralLaw& law, long N);

/// Triple sum  sum_{j,k,l<=N, j!=l, k!=l} |l_k| / (|l_j-l_l|^2 |l_k-l_l|),
/// by direct enumeration. Duplicate eigenvalues are rejected.
double dyn_error(const std::vector<double>& lambdas, long N);
/// Same quantity through the factored form sum_l A_l B_l (independent
/// summation route, used as a cross-check and for fast scans).
double dyn_error_factored(const std::vector<double>& lambdas, long N);

struct MinimaxResult {
    long n_star = 0;
    double bound = 0.0;
};

/// min over N of tail(N) + dyn(N)/t for an explicit list.
MinimaxResult minimax_bound(const std::vector<double>& lambdas, double t);
/// Law version: scans N up to scan_cap with the certified tail bound.
MinimaxResult minimax_bound(const SpectralLaw& law, double t, long scan_cap = 200);

struct GapCheckResult {
    bool ok = false;
    int worst_j = 0, worst_k = 0; // 1-based pair with the smallest margin
    double worst_margin = 0.0;    // min over pairs of lhs/rhs of the gap bound
    double amplitude_margin = 0.0; // min over k of C1 k^-alpha - |lambda_k|
};

/// Checks |lambda_k| <= C1 k^-alpha and
/// |lambda_j - lambda_k| >= C2 |j-k| max(j,k)^{-alpha-1} over all pairs.
GapCheckResult gap_check(const std::vector<double>& lambdas, double c1, double c2,
                         double alpha);

/// Sup over a crest-refined x grid of |exact_solution - soliton_sum| for
/// each time. The refinement adds windows of width 10 y_k (64 points each)
/// around every predicted crest x = c_k t - x_k^inf.
ErrorCurve measure_interaction_error(const AsymptoticSpectrum& spec,
                                     const std::vector<double>& times, const Grid1D& grid,
                                     int threads = 0);

/// Least squares on (log t, log err). Requires >= 3 points, errors > 0.
DecayFit fit_decay(const ErrorCurve& curve);

struct RadiationResult {
    ErrorCurve l2;
    ErrorCurve linf;
    SampledField u_infinity;
    /// Wrap-around diagnostic: max |u| over the outer 2% of the box at the
    /// final time, relative to the initial peak. Near 1 means the box was
    /// too small for the time span.
    double edge_activity = 0.0;
};

struct RadiationOptions {
    SweepOptions sweep;
    EvolveOptions evolve;
    int lax_band = 1024;  // band size for the bound-state check
    double epsilon = 0.0; // bound-state threshold, 0 -> 5 dxi
};

/// Theorem-1-style experiment: verify the data has no bound state, build
/// u_inf^+ from the distorted coefficients, and measure
/// r(t) = ||bo_evolve(u0)(t) - free_propagate(u_inf, t)|| in L2 and Linf.
/// Refuses data with bound states.
RadiationResult radiation_experiment(const SampledField& u0, const std::vector<double>& times,
                                     const RadiationOptions& opt = {}, int threads = 0);

} // namespace bolab

#endif
