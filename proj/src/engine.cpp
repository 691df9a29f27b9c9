#include "bolab/engine.hpp"

#include "bolab/io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <Eigen/Eigenvalues>

#include <cmath>
#include <fstream>
#include <sstream>

namespace bolab {

AsymptoticSpectrum::AsymptoticSpectrum(std::vector<double> lam, std::vector<double> cen,
                                       std::vector<double> pha)
    : lambdas(std::move(lam)), centers(std::move(cen)), phases(std::move(pha)) {
    if (lambdas.size() != centers.size() || lambdas.size() != phases.size())
        throw std::invalid_argument("AsymptoticSpectrum: length mismatch");
    for (size_t k = 0; k < lambdas.size(); ++k) {
        if (!(lambdas[k] < 0.0))
            throw std::invalid_argument("AsymptoticSpectrum: eigenvalues must be negative");
        if (k > 0 && !(lambdas[k] > lambdas[k - 1]))
            throw std::invalid_argument("AsymptoticSpectrum: eigenvalues must increase strictly");
    }
}

AsymptoticSpectrum AsymptoticSpectrum::from_lambdas(std::vector<double> lam) {
    std::vector<double> zero(lam.size(), 0.0);
    return AsymptoticSpectrum(std::move(lam), zero, zero);
}

SolitonFamily AsymptoticSpectrum::pole_family() const {
    // Re p_k = +x_k^inf so that R_{p_k}(x - c_k t) reproduces the k-th
    // decoupled term (both peak at x = c_k t - x_k^inf).
    std::vector<SolitonParam> poles;
    poles.reserve(lambdas.size());
    for (int k = 0; k < size(); ++k) poles.emplace_back(cplx(centers[k], y(k)));
    return SolitonFamily(std::move(poles));
}

ResolventMatrices build_matrices(const AsymptoticSpectrum& spec, double t, double x) {
    const int N = spec.size();
    if (N < 1) throw std::invalid_argument("build_matrices: empty spectrum");
    ResolventMatrices m;
    m.D = Eigen::MatrixXcd::Zero(N, N);
    m.E = Eigen::MatrixXcd::Zero(N, N);
    m.W = Eigen::MatrixXcd::Zero(N, N);
    for (int k = 0; k < N; ++k)
        m.D(k, k) = cplx(x - spec.c(k) * t + spec.centers[k], spec.y(k));
    for (int j = 0; j < N; ++j) {
        for (int k = 0; k < N; ++k) {
            const double yj = spec.y(j), yk = spec.y(k);
            m.W(j, k) = std::sqrt(yj / yk) *
                        std::polar(1.0, spec.phases[k] - spec.phases[j]);
            if (j != k)
                m.E(j, k) = cplx(0.0, 2.0) * std::pow(yk, 1.5) * std::sqrt(yj) /
                            (yk - yj) * std::polar(1.0, spec.phases[j] - spec.phases[k]);
        }
    }
    return m;
}

namespace {

// W is rank one: W_jk = a_j b_k with a_j = sqrt(y_j) e^{-i th_j},
// b_k = e^{i th_k}/sqrt(y_k). The double sum collapses to a^T (D+E)^-1 b,
// one linear solve per evaluation.
struct EngineCore {
    int N;
    Eigen::VectorXcd a, b, d0; // d0 = -c_k t is added per (t,x) below
    Eigen::MatrixXcd E;
    std::vector<double> c;

    explicit EngineCore(const AsymptoticSpectrum& spec) : N(spec.size()) {
        a.resize(N);
        b.resize(N);
        d0.resize(N);
        c.resize(N);
        E = Eigen::MatrixXcd::Zero(N, N);
        for (int k = 0; k < N; ++k) {
            const double yk = spec.y(k);
            a(k) = std::sqrt(yk) * std::polar(1.0, -spec.phases[k]);
            b(k) = std::polar(1.0, spec.phases[k]) / std::sqrt(yk);
            d0(k) = cplx(spec.centers[k], yk);
            c[k] = spec.c(k);
        }
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                if (j != k) {
                    const double yj = spec.y(j), yk = spec.y(k);
                    E(j, k) = cplx(0.0, 2.0) * std::pow(yk, 1.5) * std::sqrt(yj) /
                              (yk - yj) *
                              std::polar(1.0, spec.phases[j] - spec.phases[k]);
                }
    }

    Eigen::MatrixXcd system(double t, double x) const {
        Eigen::MatrixXcd M = E;
        for (int k = 0; k < N; ++k) M(k, k) += d0(k) + cplx(x - c[k] * t);
        return M;
    }

    double eval(double t, double x) const {
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(system(t, x));
        if (lu.rcond() < 1e-12)
            throw numerical_error("exact_solution: near-singular resolvent at t=" +
                                  std::to_string(t) + ", x=" + std::to_string(x));
        const cplx s = a.cwiseProduct(lu.solve(b)).sum(); // plain a^T v
        return 2.0 * (cplx(0.0, 1.0) * s).real();
    }
};

} // namespace

double exact_solution(const AsymptoticSpectrum& spec, double t, double x) {
    if (spec.size() == 0) return 0.0;
    return EngineCore(spec).eval(t, x);
}

double soliton_sum(const AsymptoticSpectrum& spec, double t, double x) {
    double s = 0.0;
    for (int k = 0; k < spec.size(); ++k) {
        const double yk = spec.y(k);
        const double arg = x - spec.c(k) * t + spec.centers[k];
        s += 2.0 * yk / (arg * arg + yk * yk);
    }
    return s;
}

cplx neumann_term(const AsymptoticSpectrum& spec, double t, double x, int order) {
    if (order < 0) throw std::invalid_argument("neumann_term: order < 0");
    if (spec.size() == 0) return cplx(0.0);
    EngineCore core(spec);
    Eigen::VectorXcd dinv(core.N);
    for (int k = 0; k < core.N; ++k)
        dinv(k) = 1.0 / (core.d0(k) + cplx(x - core.c[k] * t));
    Eigen::VectorXcd v = core.b;
    for (int m = 0; m < order; ++m) {
        v = dinv.asDiagonal() * v;
        v = core.E * v;
    }
    v = dinv.asDiagonal() * v;
    const double sign = (order % 2 == 0) ? 1.0 : -1.0;
    return cplx(0.0, 1.0) * sign * core.a.cwiseProduct(v).sum();
}

NeumannDiagnostics neumann_diagnostics(const AsymptoticSpectrum& spec, double t, double x,
                                       double order2_constant) {
    NeumannDiagnostics d;
    d.order0 = neumann_term(spec, t, x, 0);
    d.order1_max = std::abs(neumann_term(spec, t, x, 1));
    d.order2 = neumann_term(spec, t, x, 2);
    d.order2_bound = (t > 0.0 && spec.size() > 0)
                         ? second_order_bound(spec, spec.size(), t, order2_constant)
                         : 0.0;
    if (spec.size() > 0) {
        EngineCore core(spec);
        Eigen::MatrixXcd M = core.system(t, x).diagonal().cwiseInverse().asDiagonal() * core.E;
        d.spectral_radius_proxy = M.operatorNorm();
    }
    return d;
}

cplx coupling(const AsymptoticSpectrum& spec, int j, int k) {
    if (j == k) throw std::invalid_argument("coupling: j = k");
    const double yj = spec.y(j), yk = spec.y(k);
    return cplx(0.0, 2.0) * yj * yk / (yk - yj);
}

double second_order_bound(const AsymptoticSpectrum& spec, int N, double t, double constant) {
    if (!(t > 0.0)) throw std::invalid_argument("second_order_bound: t <= 0");
    N = std::min(N, spec.size());
    double s = 0.0;
    for (int l = 0; l < N; ++l)
        for (int j = 0; j < N; ++j) {
            if (j == l) continue;
            const double djl = std::abs(spec.lambdas[j] - spec.lambdas[l]);
            for (int k = 0; k < N; ++k) {
                if (k == l) continue;
                const double dkl = std::abs(spec.lambdas[k] - spec.lambdas[l]);
                s += std::abs(spec.lambdas[k]) / (djl * djl * dkl);
            }
        }
    return constant / t * s;
}

double PoleRepresentation::eval(double x) const {
    cplx s(0.0);
    for (size_t r = 0; r < z.size(); ++r) s += residue[r] / (cplx(x) - z[r]);
    return 2.0 * s.real();
}

cplx PoleRepresentation::fourier(double xi) const {
    if (xi < 0.0) throw std::invalid_argument("PoleRepresentation::fourier: xi < 0");
    // uhat(xi) = -2 pi i sum_r residue_r e^{-i xi z_r} for xi >= 0
    // (the xi -> 0+ limit is the total mass, 2 pi per soliton)
    cplx s(0.0);
    for (size_t r = 0; r < z.size(); ++r)
        s += residue[r] * std::exp(cplx(0.0, -xi) * z[r]);
    return cplx(0.0, -2.0 * M_PI) * s;
}

PoleRepresentation pole_representation(const AsymptoticSpectrum& spec, double t) {
    PoleRepresentation rep;
    rep.t = t;
    if (spec.size() == 0) return rep;
    EngineCore core(spec);
    const Eigen::MatrixXcd M = core.system(t, 0.0); // x enters as +x I
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
    if (es.info() != Eigen::Success)
        throw numerical_error("pole_representation: eigensolver failed");
    const Eigen::MatrixXcd& V = es.eigenvectors();
    const Eigen::VectorXcd coef_a = V.transpose() * core.a;
    const Eigen::VectorXcd coef_b = V.lu().solve(core.b);
    rep.z.resize(core.N);
    rep.residue.resize(core.N);
    for (int r = 0; r < core.N; ++r) {
        // u = 2 Re( i a^T (M + xI)^-1 b ); eigenvalue w gives pole z = -w
        rep.z[r] = -es.eigenvalues()(r);
        rep.residue[r] = cplx(0.0, 1.0) * coef_a(r) * coef_b(r);
        if (!(rep.z[r].imag() < 0.0))
            throw numerical_error("pole_representation: pole not in the lower half-plane");
    }
    // cross-check against the unconditionally stable LU path
    for (double x : {0.0, 1.7, -23.0}) {
        const double ref = core.eval(t, x);
        if (std::abs(rep.eval(x) - ref) > 1e-9 * std::max(1.0, std::abs(ref)))
            throw numerical_error("pole_representation: ill-conditioned eigenbasis");
    }
    return rep;
}

static std::vector<double> exact_field_impl(const AsymptoticSpectrum& spec, double t,
                                            const std::vector<double>& xs, bool parallel,
                                            int threads) {
    std::vector<double> out(xs.size(), 0.0);
    if (spec.size() == 0) return out;
    EngineCore core(spec);
#ifdef _OPENMP
    if (parallel && threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
    std::string failure;
#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i < static_cast<long>(xs.size()); ++i) {
        try {
            out[i] = core.eval(t, xs[i]);
        } catch (const std::exception& e) {
#pragma omp critical
            if (failure.empty()) failure = e.what();
        }
    }
    if (!failure.empty()) throw numerical_error(failure);
    return out;
}

std::vector<double> exact_field(const AsymptoticSpectrum& spec, double t,
                                const std::vector<double>& xs, int threads) {
    return exact_field_impl(spec, t, xs, true, threads);
}

std::vector<double> exact_field_serial(const AsymptoticSpectrum& spec, double t,
                                       const std::vector<double>& xs) {
    return exact_field_impl(spec, t, xs, false, 0);
}

SampledField periodized_field(const AsymptoticSpectrum& spec, double t, const Grid1D& grid) {
    if (spec.size() == 0) return SampledField(grid);
    const PoleRepresentation rep = pole_representation(spec, t);
    std::vector<cplx> coeffs(grid.n, cplx(0.0));
    for (int k = 0; k <= grid.n / 2; ++k) coeffs[k] = rep.fourier(k * grid.dxi());
    coeffs[grid.n / 2] = cplx(coeffs[grid.n / 2].real(), 0.0);
    for (int k = 1; k < grid.n / 2; ++k) coeffs[grid.n - k] = std::conj(coeffs[k]);
    SampledField f = field_from_spectrum(grid, coeffs);
    for (cplx& v : f.values) v = cplx(v.real());
    return f;
}

double pde_residual(const AsymptoticSpectrum& spec, double t, const Grid1D& grid, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("pde_residual: dt <= 0");
    if (spec.size() == 0) return 0.0;

    const SampledField um = periodized_field(spec, t - dt, grid);
    const SampledField u0 = periodized_field(spec, t, grid);
    const SampledField up = periodized_field(spec, t + dt, grid);

    const Fft& fft = fft_for(grid.n);
    std::vector<cplx> hat = fft.forward(u0.values);
    std::vector<cplx> lin_hat(grid.n);
    for (int k = 0; k < grid.n; ++k) {
        const double xi = grid.xi(k);
        lin_hat[k] = cplx(0.0, xi * std::abs(xi)) * hat[k];
    }
    const std::vector<cplx> lin = fft.inverse(lin_hat);

    // u^2 from point samples on the doubled grid, truncated to the base band
    const int n = grid.n, n2 = 2 * n;
    const PoleRepresentation rep = pole_representation(spec, t);
    std::vector<cplx> fine(n2);
    const double fine_dx = 0.5 * grid.dx();
    for (int j = 0; j < n2; ++j) {
        const double v = rep.eval(grid.x_min + j * fine_dx);
        fine[j] = cplx(v * v);
    }
    const std::vector<cplx> sq_fine = fft_for(n2).forward(fine);
    std::vector<cplx> nl_hat(n, cplx(0.0));
    for (int k = 0; k < n / 2; ++k)
        nl_hat[k] = 0.5 * sq_fine[k] * cplx(0.0, grid.xi(k));
    for (int k = 1; k <= n / 2; ++k)
        nl_hat[n - k] = 0.5 * sq_fine[n2 - k] * cplx(0.0, grid.xi(n - k));
    const std::vector<cplx> nl = fft.inverse(nl_hat);

    double sup = 0.0;
    for (int j = 0; j < n; ++j) {
        const double ut = (up.values[j].real() - um.values[j].real()) / (2.0 * dt);
        sup = std::max(sup, std::abs(ut - lin[j].real() + nl[j].real()));
    }
    return sup;
}

AsymptoticSpectrum read_spectrum_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open spectrum file: " + path);
    std::vector<double> lam, cen, pha;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double l, c, th;
        if (!(ls >> l)) continue;
        if (!(ls >> c >> th))
            throw config_error(path + ":" + std::to_string(lineno) +
                               ": expected \"lambda center phase\"");
        lam.push_back(l);
        cen.push_back(c);
        pha.push_back(th);
    }
    return AsymptoticSpectrum(std::move(lam), std::move(cen), std::move(pha));
}

} // namespace bolab
