#include "bolab/lax.hpp"

#include "bolab/engine.hpp"
#include "bolab/io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace bolab {

namespace {

DiscretizedOperator toeplitz_impl(const SampledField& u, int M, bool parallel, int threads) {
    const Grid1D& g = u.grid;
    if (M < 1 || M > g.n / 2) throw std::invalid_argument("toeplitz_of: need 1 <= M <= n/2");
    std::vector<cplx> hat = spectrum(u);

    DiscretizedOperator op;
    op.grid = g;
    op.M = M;
    op.matrix.resize(M, M);

    double peak = 0.0, nyq = 0.0;
    for (int k = 0; k < g.n; ++k) peak = std::max(peak, std::abs(hat[k]));
    for (int k = g.n * 7 / 16; k < g.n * 9 / 16; ++k) nyq = std::max(nyq, std::abs(hat[k]));
    op.aliasing_warning = nyq > 1e-8 * std::max(peak, 1e-300);

    const double inv_len = 1.0 / g.length();
#ifdef _OPENMP
    if (parallel && threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
#pragma omp parallel for schedule(static) if (parallel)
    for (int m = 0; m < M; ++m)
        for (int k = 0; k < M; ++k) {
            const int d = m - k;
            op.matrix(m, k) = hat[(d % g.n + g.n) % g.n] * inv_len;
        }
    return op;
}

} // namespace

DiscretizedOperator toeplitz_of(const SampledField& u, int M, int threads) {
    return toeplitz_impl(u, M, true, threads);
}

DiscretizedOperator toeplitz_of_serial(const SampledField& u, int M) {
    return toeplitz_impl(u, M, false, 0);
}

DiscretizedOperator lax_matrix(const SampledField& u, int M, int threads) {
    DiscretizedOperator op = toeplitz_of(u, M, threads);
    op.matrix = -op.matrix;
    const double half = 0.5 * u.grid.dxi();
    for (int m = 0; m < M; ++m) op.matrix(m, m) += op.xi(m) - half;
    return op;
}

SpectrumResult discrete_spectrum(const SampledField& u, double epsilon, int M, int threads) {
    const DiscretizedOperator op = lax_matrix(u, M, threads);
    if (epsilon <= 0.0) epsilon = 5.0 * u.grid.dxi();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op.matrix);
    if (es.info() != Eigen::Success)
        throw numerical_error("discrete_spectrum: eigensolver failed");

    SpectrumResult r;
    r.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + M);
    r.eigenvectors = es.eigenvectors();
    for (double lam : r.eigenvalues)
        if (lam < -epsilon) r.negative_part.push_back(lam);
    return r;
}

TraceIdentity trace_identity(const SampledField& u, double epsilon, int M, int threads) {
    TraceIdentity t;
    const SpectrumResult s = discrete_spectrum(u, epsilon, M, threads);
    for (double lam : s.negative_part) t.lhs += 2.0 * M_PI * std::abs(lam);

    const HardyCoeffs h = szego_project(u);
    const std::vector<cplx> full = spectrum(u);
    const double boundary =
        u.grid.dxi() * std::norm(full[0]) / (4.0 * M_PI); // missing (0, dxi/2) cell
    t.rhs = h.norm2_sq() + boundary;
    t.gap = t.rhs - t.lhs;
    return t;
}

MeromorphicF meromorphic_F(const SolitonFamily& fam, cplx z, long J) {
    if (!(z.imag() > 0.0)) throw std::domain_error("meromorphic_F: need Im z > 0");
    if (fam.is_finite()) J = std::min(J, fam.finite_count());
    MeromorphicF f;
    cplx s(0.0);
    for (long j = 1; j <= J; ++j) {
        const cplx d = z + fam.pole(j);
        if (std::abs(d) < 1e-12) throw std::domain_error("meromorphic_F: pole collision");
        s += 1.0 / d;
    }
    f.direct = s;
    f.via_hardy = cplx(0.0, -1.0) * hardy_closed_form(fam, z, J);
    return f;
}

void write_spectrum_csv(const SpectrumResult& s, double epsilon, const std::string& path) {
    CsvWriter csv(path, {"index", "lambda", "is_negative"});
    for (size_t i = 0; i < s.eigenvalues.size(); ++i)
        csv.row({static_cast<double>(i + 1), s.eigenvalues[i],
                 s.eigenvalues[i] < -epsilon ? 1.0 : 0.0});
}

} // namespace bolab
