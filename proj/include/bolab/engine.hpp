#ifndef BOLAB_ENGINE_HPP
#define BOLAB_ENGINE_HPP

#include "bolab/field.hpp"
#include "bolab/soliton.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace bolab {

/// Numerical failure inside the solver (near-singular matrices, blow-up).
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Asymptotic scattering data of a multisoliton: eigenvalues
/// lambda_1 < ... < lambda_N < 0 with asymptotic centers and phases.
/// Per index: width y_k = 1/(2|lambda_k|), speed c_k = 2|lambda_k|.
struct AsymptoticSpectrum {
    std::vector<double> lambdas;
    std::vector<double> centers;
    std::vector<double> phases;

    AsymptoticSpectrum() = default;
    AsymptoticSpectrum(std::vector<double> lam, std::vector<double> cen,
                       std::vector<double> pha);

    /// Centers and phases zero.
    static AsymptoticSpectrum from_lambdas(std::vector<double> lam);

    int size() const { return static_cast<int>(lambdas.size()); }
    double y(int k) const { return 1.0 / (2.0 * std::abs(lambdas[k])); }
    double c(int k) const { return 2.0 * std::abs(lambdas[k]); }

    /// Pole view p_k = -center_k + i y_k, matching the soliton module.
    SolitonFamily pole_family() const;
};

/// The three matrices of the resolvent representation at one (t, x).
struct ResolventMatrices {
    Eigen::MatrixXcd D; // diagonal, D_kk = x - c_k t + x_k^inf + i y_k^inf
    Eigen::MatrixXcd E; // zero diagonal coupling
    Eigen::MatrixXcd W; // rank-one coefficient matrix, W_kk = 1
};

ResolventMatrices build_matrices(const AsymptoticSpectrum& spec, double t, double x);

/// Exact multisoliton value at one point: 2 Re( i sum_{jk} W_jk (D+E)^-1_jk ).
/// Throws numerical_error when the linear solve is near-singular
/// (reciprocal condition below 1e-12).
double exact_solution(const AsymptoticSpectrum& spec, double t, double x);

/// Superposition of the decoupled soliton profiles (order-0 term).
double soliton_sum(const AsymptoticSpectrum& spec, double t, double x);

/// Neumann-expansion term of given order:
/// i sum_{jk} W_jk [(-1)^m D^-1 (E D^-1)^m]_jk.
cplx neumann_term(const AsymptoticSpectrum& spec, double t, double x, int order);

struct NeumannDiagnostics {
    cplx order0;
    double order1_max = 0.0;           // |order-1 term|, analytically zero
    cplx order2;
    double order2_bound = 0.0;         // second_order_bound at this t
    double spectral_radius_proxy = 0.0; // operator norm of D^-1 E
};

NeumannDiagnostics neumann_diagnostics(const AsymptoticSpectrum& spec, double t, double x,
                                       double order2_constant = 1.0);

/// Coupling A_jk = W_jk E_jk = 2i y_j y_k / (y_k - y_j); phase independent,
/// antisymmetric. j = k is rejected.
cplx coupling(const AsymptoticSpectrum& spec, int j, int k);

/// (C'/t) sum over j,k,l <= N, j != l, k != l of
/// |lambda_k| / (|lambda_j - lambda_l|^2 |lambda_k - lambda_l|).
double second_order_bound(const AsymptoticSpectrum& spec, int N, double t,
                          double constant = 1.0);

/// Partial-fraction form of the solution at fixed t:
/// u(t,x) = 2 Re( sum_r residue_r / (x - z_r) ), Im z_r < 0.
/// This is the same rational function the matrix formula produces; it gives
/// O(N) point evaluation and exact Fourier coefficients.
struct PoleRepresentation {
    double t = 0.0;
    std::vector<cplx> z;       // poles, lower half-plane
    std::vector<cplx> residue;

    double eval(double x) const;
    /// Continuum Fourier coefficient uhat(xi) for xi >= 0.
    cplx fourier(double xi) const;
};

/// Diagonalization-based partial fractions. Throws numerical_error when the
/// eigenbasis is too ill-conditioned to reproduce exact_solution to 1e-9.
PoleRepresentation pole_representation(const AsymptoticSpectrum& spec, double t);

/// exact_solution over a set of points (OpenMP; threads = 0 -> runtime default).
std::vector<double> exact_field(const AsymptoticSpectrum& spec, double t,
                                const std::vector<double>& xs, int threads = 0);
/// Serial reference for exact_field.
std::vector<double> exact_field_serial(const AsymptoticSpectrum& spec, double t,
                                       const std::vector<double>& xs);

/// Samples of the box-periodized solution, synthesized from the exact
/// Fourier coefficients of the pole representation. Spectrally smooth on
/// the periodic grid (no restriction seam), so spectral operators act on it
/// with full accuracy.
SampledField periodized_field(const AsymptoticSpectrum& spec, double t, const Grid1D& grid);

/// Sup over the grid of the discrete BO residual
/// |(u(t+dt)-u(t-dt))/(2dt) - dx|D|u + dx(u^2)| with spectral derivatives.
/// Fields are sampled by periodized_field; the square is formed from point
/// samples on a doubled grid and truncated back to the base band, so the
/// quadratic term carries no sampling alias. What remains is the O(dt^2)
/// of the central difference plus periodization images in u^2 (1/x^4
/// tails, far below every stated tolerance).
double pde_residual(const AsymptoticSpectrum& spec, double t, const Grid1D& grid, double dt);

/// Spectrum file: one "lambda center phase" line per soliton, '#' comments
/// ignored; validated for strict ordering lambda_1 < ... < 0.
AsymptoticSpectrum read_spectrum_file(const std::string& path);

} // namespace bolab

#endif
