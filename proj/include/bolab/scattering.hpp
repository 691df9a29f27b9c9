#ifndef BOLAB_SCATTERING_HPP
#define BOLAB_SCATTERING_HPP

#include "bolab/field.hpp"

#include <string>
#include <vector>

namespace bolab {

/// Jost solution m_-(x, lambda): fixed point of m = e^{i lambda x} + i K m,
/// K m(x) = int_{x_min}^x e^{i lambda (x-y)} Pi(u0 m)(y) dy.
struct JostSolution {
    Grid1D grid;
    double lambda = 0.0;
    std::vector<cplx> samples;
    double residual = 0.0;        // max |m - (e + iKm)| after the solve
    double boundary_defect = 0.0; // |e^{-i lambda x_min} m(x_min) - 1|
    int iterations = 0;
    bool used_direct_solve = false;
};

struct JostOptions {
    double tol = 1e-10;
    int max_iter = 200;
    /// Fall back to the dense (1 - iK) solve when iteration stalls.
    bool allow_direct = true;
};

/// Solve the Volterra fixed point at one lambda > 0. Fixed-point iteration
/// first; when it is not contractive a dense solve of (1 - iK) on the grid
/// is used. Throws numerical_error when neither route reaches tol.
JostSolution jost_solve(const SampledField& u0, double lambda, const JostOptions& opt = {});

/// zeta(lambda) = <Pi u0, m_-(., lambda)>, conjugate-linear second slot.
cplx distorted_coefficient(const SampledField& u0, double lambda, const JostOptions& opt = {});

struct DistortedSpectrum {
    Grid1D grid;
    std::vector<double> lambdas;   // positive box frequencies k*dxi
    std::vector<cplx> zeta;
    std::vector<double> residuals; // Volterra residual per lambda
};

struct SweepOptions {
    JostOptions jost;
    /// Stop the sweep above this lambda (coefficients are set to zero
    /// there); 0 means the full positive-frequency band.
    double lambda_max = 0.0;
};

/// zeta over the positive frequency band of the box (OpenMP over lambda).
DistortedSpectrum zeta_sweep(const SampledField& u0, const SweepOptions& opt = {},
                             int threads = 0);
/// Serial reference for zeta_sweep.
DistortedSpectrum zeta_sweep_serial(const SampledField& u0, const SweepOptions& opt = {});

/// Radiation profile u_inf^+: Hardy coefficients zeta(xi) on xi > 0,
/// returned as the real field 2 Re of the inverse transform.
SampledField radiation_profile(const SampledField& u0, const DistortedSpectrum& zs);
SampledField radiation_profile(const SampledField& u0, const SweepOptions& opt = {},
                               int threads = 0);

/// CSV dump: lambda, re_zeta, im_zeta, residual.
void write_zeta_csv(const DistortedSpectrum& zs, const std::string& path);

} // namespace bolab

#endif
