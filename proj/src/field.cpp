#include "bolab/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace bolab {

const Fft& fft_for(int n) {
    static std::mutex m;
    static std::map<int, std::unique_ptr<Fft>> cache;
    std::lock_guard<std::mutex> lock(m);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<Fft>(n)).first;
    return *it->second;
}

SampledField::SampledField(const Grid1D& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.n)
        throw std::invalid_argument("SampledField: length mismatch");
}

SampledField::SampledField(const Grid1D& g) : grid(g), values(g.n, cplx(0.0)) {}

SampledField SampledField::from_real(const Grid1D& g, const std::vector<double>& v) {
    if (static_cast<int>(v.size()) != g.n)
        throw std::invalid_argument("SampledField: length mismatch");
    std::vector<cplx> c(g.n);
    for (int j = 0; j < g.n; ++j) c[j] = cplx(v[j]);
    return SampledField(g, std::move(c));
}

bool SampledField::is_real(double rel_tol) const {
    double max_im = 0.0, max_abs = 0.0;
    for (const cplx& v : values) {
        max_im = std::max(max_im, std::abs(v.imag()));
        max_abs = std::max(max_abs, std::abs(v));
    }
    return max_im <= rel_tol * std::max(max_abs, 1e-300);
}

std::vector<double> SampledField::real_part() const {
    std::vector<double> out(values.size());
    for (size_t j = 0; j < values.size(); ++j) out[j] = values[j].real();
    return out;
}

double HardyCoeffs::norm2_sq() const {
    double s = 0.0;
    for (const cplx& c : coeff) s += std::norm(c);
    return s / grid.length();
}

std::vector<cplx> spectrum(const SampledField& f) {
    const Grid1D& g = f.grid;
    std::vector<cplx> out = fft_for(g.n).forward(f.values);
    // continuum normalization: uhat(xi_k) = dx e^{-i xi_k x_min} sum_j ...
    const double dx = g.dx();
    for (int k = 0; k < g.n; ++k) {
        const double xi = g.xi(k);
        out[k] *= dx * std::polar(1.0, -xi * g.x_min);
    }
    return out;
}

SampledField field_from_spectrum(const Grid1D& g, const std::vector<cplx>& coeffs) {
    if (static_cast<int>(coeffs.size()) != g.n)
        throw std::invalid_argument("field_from_spectrum: length mismatch");
    std::vector<cplx> raw(g.n);
    const double inv_dx = 1.0 / g.dx();
    for (int k = 0; k < g.n; ++k) {
        const double xi = g.xi(k);
        raw[k] = coeffs[k] * inv_dx * std::polar(1.0, xi * g.x_min);
    }
    return SampledField(g, fft_for(g.n).inverse(raw));
}

HardyCoeffs szego_project(const SampledField& f) {
    std::vector<cplx> full = spectrum(f);
    HardyCoeffs h(f.grid);
    for (int k = 1; k <= f.grid.n / 2 - 1; ++k) h.coeff[k - 1] = full[k];
    return h;
}

SampledField hardy_field(const HardyCoeffs& h) {
    const Grid1D& g = h.grid;
    std::vector<cplx> full(g.n, cplx(0.0));
    for (int k = 1; k <= g.n / 2 - 1; ++k) full[k] = h.coeff[k - 1];
    return field_from_spectrum(g, full);
}

SampledField to_real_field(const HardyCoeffs& h) {
    SampledField hp = hardy_field(h);
    for (cplx& v : hp.values) v = cplx(2.0 * v.real());
    return hp;
}

SampledField abs_d(const SampledField& f) {
    const Grid1D& g = f.grid;
    const Fft& fft = fft_for(g.n);
    std::vector<cplx> hat = fft.forward(f.values);
    for (int k = 0; k < g.n; ++k) hat[k] *= std::abs(g.xi(k));
    return SampledField(g, fft.inverse(hat));
}

SampledField derivative(const SampledField& f) {
    const Grid1D& g = f.grid;
    const Fft& fft = fft_for(g.n);
    std::vector<cplx> hat = fft.forward(f.values);
    for (int k = 0; k < g.n; ++k) hat[k] *= cplx(0.0, g.xi(k));
    return SampledField(g, fft.inverse(hat));
}

double norm_l2(const SampledField& f) {
    double s = 0.0;
    for (const cplx& v : f.values) s += std::norm(v);
    return std::sqrt(s * f.grid.dx());
}

double norm_linf(const SampledField& f) {
    double m = 0.0;
    for (const cplx& v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double norm(const SampledField& f, NormKind kind, double s, double alpha) {
    switch (kind) {
    case NormKind::L2:
        return norm_l2(f);
    case NormKind::Linf:
        return norm_linf(f);
    case NormKind::Hs: {
        if (s < 0.0) throw std::invalid_argument("norm: s < 0");
        std::vector<cplx> hat = spectrum(f);
        double acc = 0.0;
        for (int k = 0; k < f.grid.n; ++k) {
            const double xi = f.grid.xi(k);
            acc += std::pow(1.0 + xi * xi, s) * std::norm(hat[k]);
        }
        return std::sqrt(acc / f.grid.length());
    }
    case NormKind::Weighted: {
        if (s < 0.0 || alpha < 0.0) throw std::invalid_argument("norm: s or alpha < 0");
        SampledField w = f;
        for (int j = 0; j < f.grid.n; ++j) {
            const double x = f.grid.x(j);
            w.values[j] *= std::pow(1.0 + x * x, 0.5 * alpha);
        }
        return norm(w, NormKind::Hs, s);
    }
    }
    throw std::logic_error("norm: bad kind");
}

cplx inner_product(const SampledField& f, const SampledField& g) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("inner_product: grid mismatch");
    cplx s(0.0);
    for (int j = 0; j < f.grid.n; ++j) s += f.values[j] * std::conj(g.values[j]);
    return s * f.grid.dx();
}

double gagliardo_nirenberg_ratio(const SampledField& f) {
    const double sup = norm_linf(f);
    const double l2 = norm_l2(f);
    const double dl2 = norm_l2(derivative(f));
    if (l2 * dl2 < 1e-300) throw std::domain_error("gagliardo_nirenberg_ratio: vanishing field");
    return sup * sup / (l2 * dl2);
}

} // namespace bolab
