#ifndef BOLAB_LAX_HPP
#define BOLAB_LAX_HPP

#include "bolab/field.hpp"
#include "bolab/soliton.hpp"

#include <Eigen/Dense>

#include <string>

namespace bolab {

/// Dense Galerkin matrix on the positive-frequency band xi_m = m dxi,
/// m = 1..M <= n/2.
struct DiscretizedOperator {
    Grid1D grid;            // underlying spatial grid
    int M = 0;              // band size, M <= n/2
    Eigen::MatrixXcd matrix;
    bool aliasing_warning = false; // significant data energy near Nyquist

    double xi(int m) const { return (m + 1) * grid.dxi(); } // m = 0..M-1
};

/// Toeplitz multiplication-then-project operator: entries
/// uhat(xi_m - xi_k) / box length. Hermitian for real u. OpenMP assembly.
DiscretizedOperator toeplitz_of(const SampledField& u, int M = 1024, int threads = 0);
/// Serial reference for toeplitz_of.
DiscretizedOperator toeplitz_of_serial(const SampledField& u, int M = 1024);

/// diag(xi_m - dxi/2) - toeplitz_of(u). The half-cell shift identifies the
/// multiplier with the midpoint of the frequency cell ((m-1)dxi, m dxi];
/// the box band samples the continuum multiplier xi with an O(dxi/2) bias
/// otherwise, which shifts every bound state by the same amount.
DiscretizedOperator lax_matrix(const SampledField& u, int M = 1024, int threads = 0);

struct SpectrumResult {
    std::vector<double> eigenvalues;  // ascending
    Eigen::MatrixXcd eigenvectors;    // orthonormal columns
    std::vector<double> negative_part; // eigenvalues < -epsilon
};

/// Full Hermitian eigendecomposition of the Lax matrix; negative_part
/// collects eigenvalues below -epsilon (epsilon <= 0 selects 5*dxi).
SpectrumResult discrete_spectrum(const SampledField& u, double epsilon = 0.0, int M = 1024,
                                 int threads = 0);

struct TraceIdentity {
    double lhs = 0.0; // 2 pi sum of |negative eigenvalues|
    double rhs = 0.0; // ||Pi u||^2 estimated on the line
    double gap = 0.0; // rhs - lhs
};

/// Trace identity check. rhs is the Parseval sum of the Hardy coefficients
/// plus the half-cell (0, dxi/2) boundary contribution dxi |uhat(0+)|^2/(4 pi),
/// the one piece of the line integral the box frequencies never see.
TraceIdentity trace_identity(const SampledField& u, double epsilon = 0.0, int M = 1024,
                             int threads = 0);

struct MeromorphicF {
    cplx direct;    // sum 1/(z + p_m)
    cplx via_hardy; // -i * hardy_closed_form
};

/// Resolvent-trace meromorphic function evaluated two ways; the two values
/// agree to machine precision.
MeromorphicF meromorphic_F(const SolitonFamily& fam, cplx z, long J);

/// CSV dump: index, lambda, is_negative.
void write_spectrum_csv(const SpectrumResult& s, double epsilon, const std::string& path);

} // namespace bolab

#endif
