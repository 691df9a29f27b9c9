#ifndef BOLAB_FIELD_HPP
#define BOLAB_FIELD_HPP

#include "bolab/fft.hpp"
#include "bolab/grid.hpp"

#include <string>
#include <vector>

namespace bolab {

/// Process-wide cached FFT plan for size n.
const Fft& fft_for(int n);

/// Complex samples on a periodic grid. Real-valued data is stored with
/// (numerically) vanishing imaginary part; see is_real().
struct SampledField {
    Grid1D grid;
    std::vector<cplx> values;

    SampledField() = default;
    SampledField(const Grid1D& g, std::vector<cplx> v);
    /// Zero field.
    explicit SampledField(const Grid1D& g);

    static SampledField from_real(const Grid1D& g, const std::vector<double>& v);
    /// Sample a callable f(x) over the grid.
    template <class F>
    static SampledField sample(const Grid1D& g, F&& f) {
        std::vector<cplx> v(g.n);
        for (int j = 0; j < g.n; ++j) v[j] = cplx(f(g.x(j)));
        return SampledField(g, std::move(v));
    }

    bool is_real(double rel_tol = 1e-12) const;
    std::vector<double> real_part() const;
};

/// Spectral coefficients restricted to strictly positive frequencies
/// xi_k = k*dxi, k = 1..n/2-1, in the continuum Fourier-transform
/// normalization: coeff[k-1] ~ int f(x) e^{-i xi_k x} dx.
struct HardyCoeffs {
    Grid1D grid;
    std::vector<cplx> coeff; // length n/2-1, index k-1 <-> frequency k*dxi

    HardyCoeffs() = default;
    explicit HardyCoeffs(const Grid1D& g) : grid(g), coeff(g.n / 2 - 1, cplx(0.0)) {}

    int count() const { return static_cast<int>(coeff.size()); }
    double xi(int k) const { return k * grid.dxi(); } // k = 1..n/2-1
    /// Parseval L2 norm squared: sum |coeff|^2 / box length.
    double norm2_sq() const;
};

/// Full spectrum in continuum normalization, indexed like raw FFT bins.
std::vector<cplx> spectrum(const SampledField& f);
/// Inverse of spectrum(): rebuild samples from continuum coefficients.
SampledField field_from_spectrum(const Grid1D& g, const std::vector<cplx>& coeffs);

/// Szego projector: keep strictly positive frequencies.
HardyCoeffs szego_project(const SampledField& f);

/// 2 Re of the inverse transform of h extended by zero to xi <= 0.
SampledField to_real_field(const HardyCoeffs& h);

/// Complex field with spectrum h on xi > 0 and zero elsewhere (the Hardy
/// component itself, before taking 2 Re).
SampledField hardy_field(const HardyCoeffs& h);

/// Fourier multiplier |xi|; the zero mode is annihilated.
SampledField abs_d(const SampledField& f);

/// Spectral derivative (multiplier i xi).
SampledField derivative(const SampledField& f);

enum class NormKind { L2, Linf, Hs, Weighted };

/// Norms used throughout: L2 by periodic-trapezoid quadrature, Linf as the
/// max sample magnitude, Hs with (1+xi^2)^{s/2} weights, Weighted(s,alpha)
/// as the Hs norm of <x>^alpha f.
double norm(const SampledField& f, NormKind kind, double s = 0.0, double alpha = 0.0);

double norm_l2(const SampledField& f);
double norm_linf(const SampledField& f);

/// <f, g> = int f conj(g) dx by quadrature (conjugate-linear second slot).
cplx inner_product(const SampledField& f, const SampledField& g);

/// ||f||_inf^2 / (||f||_2 ||f'||_2). For real decaying fields this is
/// bounded by 1 up to discretization error.
double gagliardo_nirenberg_ratio(const SampledField& f);

} // namespace bolab

#endif
