#include "bolab/soliton.hpp"

#include "bolab/io.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bolab {

SolitonFamily::SolitonFamily(std::vector<SolitonParam> poles) : poles_(std::move(poles)) {}

SolitonFamily::SolitonFamily(PoleGenerator gen) : gen_(std::move(gen)) {
    if (!gen_->pole || !gen_->supnorm_tail_bound)
        throw std::invalid_argument("SolitonFamily: generator needs pole rule and tail bound");
}

SolitonFamily SolitonFamily::inverse_square_widths() {
    PoleGenerator g;
    g.pole = [](long j) { return cplx(0.0, static_cast<double>(j) * static_cast<double>(j)); };
    // sum_{j>J} 2/j^2 <= int_J^inf 2/x^2 dx = 2/J
    g.supnorm_tail_bound = [](long J) { return J > 0 ? 2.0 / static_cast<double>(J) : 1e300; };
    return SolitonFamily(g);
}

cplx SolitonFamily::pole(long j) const {
    if (j < 1) throw std::out_of_range("SolitonFamily::pole: 1-based index");
    if (is_finite()) {
        if (j > finite_count()) throw std::out_of_range("SolitonFamily::pole: index past end");
        return poles_[j - 1].p;
    }
    return gen_->pole(j);
}

long SolitonFamily::index_limit() const {
    return is_finite() ? finite_count() : gen_->index_limit;
}

bool SolitonFamily::is_ordered(long J) const {
    double prev = -1.0;
    for (long j = 1; j <= J; ++j) {
        const double im = pole(j).imag();
        if (im <= prev) return false;
        prev = im;
    }
    return true;
}

double SolitonFamily::supnorm_tail_bound(long J) const {
    if (is_finite()) {
        double s = 0.0;
        for (long j = std::max(J, 0L) + 1; j <= finite_count(); ++j)
            s += 2.0 / poles_[j - 1].width();
        return s;
    }
    return gen_->supnorm_tail_bound(J);
}

double soliton_profile(const SolitonParam& p, double t, double x) {
    const cplx z = cplx(x - t / p.width()) + p.p;
    return 2.0 * p.width() / std::norm(z);
}

namespace {

long truncation_index(const SolitonFamily& fam, double tail_tol) {
    if (fam.is_finite()) return fam.finite_count();
    // certified tail bounds are nonincreasing; bisect for the first index
    // with bound < tail_tol
    long lo = 1, hi = fam.index_limit();
    if (!(fam.supnorm_tail_bound(hi) < tail_tol))
        throw std::runtime_error("family_field: tail bound does not reach tolerance "
                                 "within the index limit (non-summable family?)");
    while (lo < hi) {
        const long mid = lo + (hi - lo) / 2;
        if (fam.supnorm_tail_bound(mid) < tail_tol)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

} // namespace

static FamilyFieldResult family_field_impl(const SolitonFamily& fam, double t,
                                           const Grid1D& grid, double tail_tol,
                                           bool parallel, int threads) {
    const long J = truncation_index(fam, tail_tol);
    FamilyFieldResult out;
    out.truncation_index = J;
    out.tail_bound = fam.is_finite() ? 0.0 : fam.supnorm_tail_bound(J);
    out.field = SampledField(grid);

    // gather pole data once; generators may be arbitrary callables
    std::vector<double> re(J), im(J);
    for (long j = 1; j <= J; ++j) {
        const cplx p = fam.pole(j);
        if (!(p.imag() > 0.0)) throw std::domain_error("family_field: pole with Im p <= 0");
        re[j - 1] = p.real();
        im[j - 1] = p.imag();
    }

#ifdef _OPENMP
    if (parallel && threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        double s = 0.0;
        for (long j = 0; j < J; ++j) {
            const double a = x - t / im[j] + re[j];
            s += 2.0 * im[j] / (a * a + im[j] * im[j]);
        }
        out.field.values[i] = cplx(s);
    }
    return out;
}

FamilyFieldResult family_field(const SolitonFamily& fam, double t, const Grid1D& grid,
                               double tail_tol, int threads) {
    return family_field_impl(fam, t, grid, tail_tol, true, threads);
}

FamilyFieldResult family_field_serial(const SolitonFamily& fam, double t, const Grid1D& grid,
                                      double tail_tol) {
    return family_field_impl(fam, t, grid, tail_tol, false, 0);
}

double summability(const SolitonFamily& fam, long J) {
    if (fam.is_finite()) J = std::min(J, fam.finite_count());
    std::vector<cplx> p(J);
    for (long j = 1; j <= J; ++j) p[j - 1] = fam.pole(j);
    double s = 0.0;
    for (long j = 0; j < J; ++j)
        for (long k = 0; k < J; ++k) s += p[j].imag() / std::norm(p[j] - std::conj(p[k]));
    return s;
}

cplx hardy_closed_form(const SolitonFamily& fam, cplx z, long J) {
    if (z.imag() < 0.0) throw std::domain_error("hardy_closed_form: Im z < 0");
    if (fam.is_finite()) J = std::min(J, fam.finite_count());
    cplx s(0.0);
    for (long j = 1; j <= J; ++j) {
        const cplx d = z + fam.pole(j);
        if (std::abs(d) < 1e-12) throw std::domain_error("hardy_closed_form: pole collision");
        s += 1.0 / d;
    }
    return cplx(0.0, 1.0) * s;
}

L2IdentityResult l2_identity(const SolitonFamily& fam, const Grid1D& grid, long J) {
    if (fam.is_finite()) J = std::min(J, fam.finite_count());
    L2IdentityResult r;
    r.rhs = 4.0 * M_PI * summability(fam, J);

    double quad = 0.0;
    for (int i = 0; i < grid.n; ++i)
        quad += std::norm(hardy_closed_form(fam, cplx(grid.x(i)), J));
    quad *= grid.dx();

    // exact tail of int |sum_j 1/(x+p_j)|^2 over |x| beyond the box:
    // pairwise integrals of 1/((x+p_j)(x+conj p_k)) in closed form
    const double L = std::max(std::abs(grid.x_min), std::abs(grid.x_max));
    cplx tail(0.0);
    for (long j = 1; j <= J; ++j) {
        for (long k = 1; k <= J; ++k) {
            const cplx a = fam.pole(j), c = std::conj(fam.pole(k));
            // int_L^inf dx/((x+a)(x+c)) + int_{-inf}^{-L} dx/((x+a)(x+c))
            tail += std::log((L + c) / (L + a)) / (c - a);
            tail += std::log((L - c) / (L - a)) / (a - c);
        }
    }
    r.box_tail = tail.real();
    r.lhs = quad + r.box_tail;
    return r;
}

SolitonFamily read_pole_file(const std::string& path, int* dropped) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open pole file: " + path);
    std::vector<SolitonParam> poles;
    int drop_count = 0;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double re, im;
        if (!(ls >> re)) continue; // blank
        if (!(ls >> im))
            throw config_error(path + ":" + std::to_string(lineno) + ": expected \"re im\"");
        if (im < 0.0)
            throw config_error(path + ":" + std::to_string(lineno) + ": Im p < 0");
        if (im == 0.0) {
            ++drop_count; // zero-width poles contribute nothing
            continue;
        }
        poles.emplace_back(cplx(re, im));
    }
    if (dropped) *dropped = drop_count;
    return SolitonFamily(std::move(poles));
}

} // namespace bolab
