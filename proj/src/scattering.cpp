#include "bolab/scattering.hpp"

#include "bolab/engine.hpp"
#include "bolab/io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <Eigen/Dense>

#include <cmath>

namespace bolab {

namespace {

// Workspace for repeated applications of K at fixed u0 and lambda.
struct JostKernel {
    const Grid1D& g;
    const std::vector<cplx>& u0;
    double lambda;
    std::vector<cplx> phase;   // e^{i lambda x_j}
    std::vector<cplx> scratch;

    JostKernel(const SampledField& u, double lam)
        : g(u.grid), u0(u.values), lambda(lam), phase(g.n), scratch(g.n) {
        for (int j = 0; j < g.n; ++j) phase[j] = std::polar(1.0, lambda * g.x(j));
    }

    // out = e + i K m  (out may alias m)
    void apply(const std::vector<cplx>& m, std::vector<cplx>& out) {
        for (int j = 0; j < g.n; ++j) scratch[j] = u0[j] * m[j];
        project_positive(scratch);
        // cumulative trapezoid of e^{-i lambda y} g(y)
        const double dx = g.dx();
        cplx acc(0.0);
        cplx prev = std::conj(phase[0]) * scratch[0];
        out[0] = phase[0];
        for (int j = 1; j < g.n; ++j) {
            const cplx cur = std::conj(phase[j]) * scratch[j];
            acc += 0.5 * dx * (prev + cur);
            prev = cur;
            out[j] = phase[j] * (1.0 + cplx(0.0, 1.0) * acc);
        }
    }

    // in-place Szego projection of a complex sample vector
    void project_positive(std::vector<cplx>& v) const {
        const Fft& fft = fft_for(g.n);
        fft.forward(v.data(), v.data());
        v[0] = cplx(0.0);
        for (int k = g.n / 2; k < g.n; ++k) v[k] = cplx(0.0);
        fft.inverse(v.data(), v.data());
    }
};

double residual_of(JostKernel& K, const std::vector<cplx>& m) {
    std::vector<cplx> rhs(m.size());
    K.apply(m, rhs);
    double r = 0.0;
    for (size_t j = 0; j < m.size(); ++j) r = std::max(r, std::abs(m[j] - rhs[j]));
    return r;
}

// Dense solve of (1 - iK) m = e. K = C_lambda P diag(u0) is assembled
// column by column from the circulant projector kernel.
std::vector<cplx> direct_solve(const SampledField& u0, double lambda) {
    const Grid1D& g = u0.grid;
    const int n = g.n;
    const Fft& fft = fft_for(n);

    // circulant kernel of the Szego projector: P e_0
    std::vector<cplx> p(n, cplx(0.0));
    for (int k = 1; k < n / 2; ++k) p[k] = cplx(1.0);
    p = fft.inverse(p); // p[j] = (1/n) sum_{0<k<n/2} e^{2pi i jk/n}

    std::vector<cplx> phase(n), iphase(n);
    for (int j = 0; j < n; ++j) {
        phase[j] = std::polar(1.0, lambda * g.x(j));
        iphase[j] = std::conj(phase[j]);
    }

    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(n, n);
    const double dx = g.dx();
    std::vector<cplx> col(n), h(n);
    for (int l = 0; l < n; ++l) {
        const cplx ul = u0.values[l];
        if (ul == cplx(0.0)) continue;
        for (int j = 0; j < n; ++j) col[j] = ul * p[(j - l + n) % n]; // P diag(u0) e_l
        for (int j = 0; j < n; ++j) h[j] = iphase[j] * col[j];
        cplx acc(0.0);
        cplx prev = h[0];
        // A -= i K: subtract i * e^{i lambda x_j} * cumtrapz(h)_j
        for (int j = 1; j < n; ++j) {
            acc += 0.5 * dx * (prev + h[j]);
            prev = h[j];
            A(j, l) -= cplx(0.0, 1.0) * phase[j] * acc;
        }
    }
    Eigen::VectorXcd e(n);
    for (int j = 0; j < n; ++j) e(j) = phase[j];
    Eigen::VectorXcd m = A.partialPivLu().solve(e);
    return std::vector<cplx>(m.data(), m.data() + n);
}

} // namespace

JostSolution jost_solve(const SampledField& u0, double lambda, const JostOptions& opt) {
    if (!(lambda > 0.0)) throw std::invalid_argument("jost_solve: lambda must be > 0");
    const Grid1D& g = u0.grid;

    JostSolution sol;
    sol.grid = g;
    sol.lambda = lambda;

    JostKernel K(u0, lambda);
    std::vector<cplx> m(g.n), next(g.n);
    for (int j = 0; j < g.n; ++j) m[j] = K.phase[j];

    double res = 0.0;
    bool converged = false;
    for (int it = 0; it < opt.max_iter; ++it) {
        K.apply(m, next);
        res = 0.0;
        for (int j = 0; j < g.n; ++j) res = std::max(res, std::abs(next[j] - m[j]));
        m.swap(next);
        sol.iterations = it + 1;
        if (res < opt.tol) {
            converged = true;
            break;
        }
        if (!std::isfinite(res) || res > 1e8) break; // diverging, stop early
    }

    if (!converged) {
        if (!opt.allow_direct)
            throw numerical_error("jost_solve: no convergence at lambda=" +
                                  std::to_string(lambda) +
                                  ", last residual=" + std::to_string(res));
        m = direct_solve(u0, lambda);
        sol.used_direct_solve = true;
    }

    sol.residual = residual_of(K, m);
    if (sol.residual > std::max(opt.tol, 1e-8 * (1.0 + norm_linf(u0))) && sol.used_direct_solve)
        throw numerical_error("jost_solve: direct solve failed at lambda=" +
                              std::to_string(lambda));
    sol.boundary_defect = std::abs(std::conj(K.phase[0]) * m[0] - cplx(1.0));
    sol.samples = std::move(m);
    return sol;
}

cplx distorted_coefficient(const SampledField& u0, double lambda, const JostOptions& opt) {
    const JostSolution sol = jost_solve(u0, lambda, opt);
    const SampledField pi0 = hardy_field(szego_project(u0));
    cplx s(0.0);
    for (int j = 0; j < u0.grid.n; ++j) s += pi0.values[j] * std::conj(sol.samples[j]);
    return s * u0.grid.dx();
}

namespace {

DistortedSpectrum sweep_impl(const SampledField& u0, const SweepOptions& opt, bool parallel,
                             int threads) {
    const Grid1D& g = u0.grid;
    DistortedSpectrum out;
    out.grid = g;
    const int K = g.n / 2 - 1;
    out.lambdas.resize(K);
    out.zeta.assign(K, cplx(0.0));
    out.residuals.assign(K, 0.0);
    for (int k = 1; k <= K; ++k) out.lambdas[k - 1] = k * g.dxi();

    const SampledField pi0 = hardy_field(szego_project(u0));
    const double cap = opt.lambda_max > 0.0 ? opt.lambda_max : out.lambdas.back() + 1.0;

#ifdef _OPENMP
    if (parallel && threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
    std::string failure; // exceptions must not unwind out of the omp region
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
    for (int k = 1; k <= K; ++k) {
        if (out.lambdas[k - 1] > cap) continue;
        try {
            const JostSolution sol = jost_solve(u0, out.lambdas[k - 1], opt.jost);
            cplx s(0.0);
            for (int j = 0; j < g.n; ++j) s += pi0.values[j] * std::conj(sol.samples[j]);
            out.zeta[k - 1] = s * g.dx();
            out.residuals[k - 1] = sol.residual;
        } catch (const std::exception& e) {
#pragma omp critical
            if (failure.empty()) failure = e.what();
        }
    }
    if (!failure.empty()) throw numerical_error("zeta_sweep: " + failure);
    return out;
}

} // namespace

DistortedSpectrum zeta_sweep(const SampledField& u0, const SweepOptions& opt, int threads) {
    return sweep_impl(u0, opt, true, threads);
}

DistortedSpectrum zeta_sweep_serial(const SampledField& u0, const SweepOptions& opt) {
    return sweep_impl(u0, opt, false, 0);
}

SampledField radiation_profile(const SampledField& u0, const DistortedSpectrum& zs) {
    HardyCoeffs h(u0.grid);
    for (int i = 0; i < h.count(); ++i) h.coeff[i] = zs.zeta[i];
    return to_real_field(h);
}

SampledField radiation_profile(const SampledField& u0, const SweepOptions& opt, int threads) {
    return radiation_profile(u0, zeta_sweep(u0, opt, threads));
}

void write_zeta_csv(const DistortedSpectrum& zs, const std::string& path) {
    CsvWriter csv(path, {"lambda", "re_zeta", "im_zeta", "residual"});
    for (size_t i = 0; i < zs.lambdas.size(); ++i)
        csv.row({zs.lambdas[i], zs.zeta[i].real(), zs.zeta[i].imag(), zs.residuals[i]});
}

} // namespace bolab
