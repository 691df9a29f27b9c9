#include "bolab/resolution.hpp"

#include "bolab/lax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bolab {

std::vector<double> SpectralLaw::lambdas(long N) const {
    std::vector<double> out(N);
    for (long k = 1; k <= N; ++k) out[k - 1] = lambda(k);
    return out;
}

AsymptoticSpectrum SpectralLaw::spectrum(long N) const {
    return AsymptoticSpectrum::from_lambdas(lambdas(N));
}

double tail_error(const std::vector<double>& lambdas, long N) {
    if (N < 0) throw std::invalid_argument("tail_error: N < 0");
    double s = 0.0;
    for (size_t k = static_cast<size_t>(N); k < lambdas.size(); ++k)
        s += 4.0 * std::abs(lambdas[k]);
    return s;
}

double tail_error(const SpectralLaw& law, long N) {
    if (N < 1) throw std::invalid_argument("tail_error: N < 1 for laws");
    return law.tail_bound(N);
}

static void check_distinct(const std::vector<double>& lambdas, long N) {
    for (long j = 0; j < N; ++j)
        for (long k = j + 1; k < N; ++k)
            if (lambdas[j] == lambdas[k])
                throw std::invalid_argument("dyn_error: duplicate eigenvalues");
}

double dyn_error(const std::vector<double>& lambdas, long N) {
    if (N < 1) throw std::invalid_argument("dyn_error: N < 1");
    N = std::min<long>(N, lambdas.size());
    check_distinct(lambdas, N);
    double s = 0.0;
    for (long l = 0; l < N; ++l)
        for (long j = 0; j < N; ++j) {
            if (j == l) continue;
            const double djl = std::abs(lambdas[j] - lambdas[l]);
            for (long k = 0; k < N; ++k) {
                if (k == l) continue;
                s += std::abs(lambdas[k]) /
                     (djl * djl * std::abs(lambdas[k] - lambdas[l]));
            }
        }
    return s;
}

double dyn_error_factored(const std::vector<double>& lambdas, long N) {
    if (N < 1) throw std::invalid_argument("dyn_error_factored: N < 1");
    N = std::min<long>(N, lambdas.size());
    check_distinct(lambdas, N);
    double s = 0.0;
    for (long l = 0; l < N; ++l) {
        double A = 0.0, B = 0.0;
        for (long j = 0; j < N; ++j) {
            if (j == l) continue;
            const double d = std::abs(lambdas[j] - lambdas[l]);
            A += 1.0 / (d * d);
            B += std::abs(lambdas[j]) / d;
        }
        s += A * B;
    }
    return s;
}

MinimaxResult minimax_bound(const std::vector<double>& lambdas, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("minimax_bound: t <= 0");
    MinimaxResult best;
    best.bound = std::numeric_limits<double>::infinity();
    for (long N = 1; N <= static_cast<long>(lambdas.size()); ++N) {
        const double v = tail_error(lambdas, N) + dyn_error_factored(lambdas, N) / t;
        if (v < best.bound) {
            best.bound = v;
            best.n_star = N;
        }
    }
    return best;
}

MinimaxResult minimax_bound(const SpectralLaw& law, double t, long scan_cap) {
    if (!(t > 0.0)) throw std::invalid_argument("minimax_bound: t <= 0");
    const std::vector<double> lam = law.lambdas(scan_cap);
    MinimaxResult best;
    best.bound = std::numeric_limits<double>::infinity();
    for (long N = 1; N <= scan_cap; ++N) {
        const double v = law.tail_bound(N) + dyn_error_factored(lam, N) / t;
        if (v < best.bound) {
            best.bound = v;
            best.n_star = N;
        }
    }
    return best;
}

GapCheckResult gap_check(const std::vector<double>& lambdas, double c1, double c2,
                         double alpha) {
    if (lambdas.empty()) throw std::invalid_argument("gap_check: empty list");
    GapCheckResult r;
    r.ok = true;
    r.worst_margin = std::numeric_limits<double>::infinity();
    r.amplitude_margin = std::numeric_limits<double>::infinity();
    const long N = static_cast<long>(lambdas.size());
    for (long k = 1; k <= N; ++k) {
        const double margin =
            c1 * std::pow(static_cast<double>(k), -alpha) - std::abs(lambdas[k - 1]);
        r.amplitude_margin = std::min(r.amplitude_margin, margin);
        if (margin < 0.0) r.ok = false;
    }
    for (long j = 1; j <= N; ++j)
        for (long k = j + 1; k <= N; ++k) {
            const double lhs = std::abs(lambdas[j - 1] - lambdas[k - 1]);
            const double rhs = c2 * std::abs(static_cast<double>(j - k)) *
                               std::pow(static_cast<double>(std::max(j, k)), -alpha - 1.0);
            const double ratio = lhs / rhs;
            if (ratio < r.worst_margin) {
                r.worst_margin = ratio;
                r.worst_j = static_cast<int>(j);
                r.worst_k = static_cast<int>(k);
            }
            if (lhs < rhs) r.ok = false;
        }
    return r;
}

ErrorCurve measure_interaction_error(const AsymptoticSpectrum& spec,
                                     const std::vector<double>& times, const Grid1D& grid,
                                     int threads) {
    ErrorCurve curve;
    curve.norm_kind = "Linf";
    curve.times = times;
    curve.errors.resize(times.size(), 0.0);

    std::vector<double> base(grid.n);
    for (int j = 0; j < grid.n; ++j) base[j] = grid.x(j);

    for (size_t ti = 0; ti < times.size(); ++ti) {
        const double t = times[ti];
        std::vector<double> xs = base;
        for (int k = 0; k < spec.size(); ++k) {
            const double crest = spec.c(k) * t - spec.centers[k];
            const double w = 10.0 * spec.y(k);
            for (int i = 0; i < 64; ++i)
                xs.push_back(crest - 0.5 * w + w * i / 63.0);
        }
        const std::vector<double> ue = exact_field(spec, t, xs, threads);
        double sup = 0.0;
        for (size_t i = 0; i < xs.size(); ++i)
            sup = std::max(sup, std::abs(ue[i] - soliton_sum(spec, t, xs[i])));
        curve.errors[ti] = sup;
    }
    return curve;
}

DecayFit fit_decay(const ErrorCurve& curve) {
    const size_t n = curve.times.size();
    if (n < 3) throw std::invalid_argument("fit_decay: need >= 3 points");
    if (curve.errors.size() != n) throw std::invalid_argument("fit_decay: length mismatch");
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        if (!(curve.errors[i] > 0.0))
            throw std::invalid_argument("fit_decay: nonpositive error value");
        const double x = std::log(curve.times[i]);
        const double y = std::log(curve.errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double dn = static_cast<double>(n);
    const double vx = sxx - sx * sx / dn;
    const double vy = syy - sy * sy / dn;
    const double cxy = sxy - sx * sy / dn;
    DecayFit f;
    f.slope = cxy / vx;
    f.intercept = (sy - f.slope * sx) / dn;
    f.r_squared = vy > 0.0 ? (cxy * cxy) / (vx * vy) : 1.0;
    return f;
}

RadiationResult radiation_experiment(const SampledField& u0, const std::vector<double>& times,
                                     const RadiationOptions& opt, int threads) {
    // the decomposition below has no soliton component; insist on data
    // without bound states
    const SpectrumResult sr = discrete_spectrum(u0, opt.epsilon, opt.lax_band, threads);
    if (!sr.negative_part.empty())
        throw std::invalid_argument(
            "radiation_experiment: bound state detected (lambda_1 = " +
            std::to_string(sr.negative_part.front()) +
            "); mixed soliton+radiation data is not supported here");

    RadiationResult out;
    out.u_infinity = radiation_profile(u0, opt.sweep, threads);
    out.l2.norm_kind = "L2";
    out.linf.norm_kind = "Linf";
    out.l2.times = out.linf.times = times;

    const Trajectory traj = bo_evolve(u0, times, opt.evolve);
    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
        const Snapshot& s = traj.snapshots[i];
        SampledField diff = free_propagate(out.u_infinity, s.time);
        for (int j = 0; j < u0.grid.n; ++j)
            diff.values[j] = s.field.values[j] - diff.values[j];
        out.l2.errors.push_back(norm_l2(diff));
        out.linf.errors.push_back(norm_linf(diff));
    }

    // wrap-around is diagnosed, not prevented
    const double peak0 = std::max(norm_linf(u0), 1e-300);
    const SampledField& last = traj.snapshots.back().field;
    const int collar = std::max(1, u0.grid.n / 50);
    double edge = 0.0;
    for (int j = 0; j < collar; ++j) {
        edge = std::max(edge, std::abs(last.values[j]));
        edge = std::max(edge, std::abs(last.values[u0.grid.n - 1 - j]));
    }
    out.edge_activity = edge / peak0;
    return out;
}

} // namespace bolab
