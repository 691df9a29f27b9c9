#ifndef BOLAB_SOLITON_HPP
#define BOLAB_SOLITON_HPP

#include "bolab/field.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bolab {

/// One rational soliton, parametrized by a pole p in the upper half-plane.
/// Width is Im p, velocity 1/Im p, peak height 2/Im p at x = -Re p.
struct SolitonParam {
    cplx p;

    explicit SolitonParam(cplx pole) : p(pole) {
        if (!(p.imag() > 0.0)) throw std::invalid_argument("SolitonParam: Im p must be > 0");
    }
    double width() const { return p.imag(); }
    double velocity() const { return 1.0 / p.imag(); }
};

/// Rule generating pole j (1-based) together with a certified bound on the
/// sup-norm tail sum_{j>J} 2/Im p_j.
struct PoleGenerator {
    std::function<cplx(long)> pole;
    std::function<double(long)> supnorm_tail_bound;
    long index_limit = 100000000;
};

/// Finite pole list, or a lazily generated family with certified tails.
class SolitonFamily {
  public:
    SolitonFamily() = default;
    explicit SolitonFamily(std::vector<SolitonParam> poles);
    explicit SolitonFamily(PoleGenerator gen);

    /// Poles p_j = i j^2 (tail sum_{j>J} 2/j^2 <= 2/J).
    static SolitonFamily inverse_square_widths();

    bool is_finite() const { return !gen_.has_value(); }
    long finite_count() const { return static_cast<long>(poles_.size()); }
    cplx pole(long j) const; // 1-based
    long index_limit() const;

    /// True when Im p is strictly increasing over the first J poles.
    bool is_ordered(long J) const;

    /// Certified bound on sum_{j>J} 2/Im p_j (zero for finite families
    /// once J >= count).
    double supnorm_tail_bound(long J) const;

  private:
    std::vector<SolitonParam> poles_;
    std::optional<PoleGenerator> gen_;
};

/// R_p evaluated at (t, x): 2 Im p / |x - t/Im p + p|^2.
double soliton_profile(const SolitonParam& p, double t, double x);

struct FamilyFieldResult {
    SampledField field;
    long truncation_index = 0;
    double tail_bound = 0.0; // achieved sup-norm tail
};

/// Pointwise sum of soliton profiles, truncated once the certified tail
/// drops below tail_tol. Throws if the tail cannot reach tail_tol within
/// the family's index limit. OpenMP over grid points; threads = 0 keeps
/// the runtime default.
FamilyFieldResult family_field(const SolitonFamily& fam, double t, const Grid1D& grid,
                               double tail_tol, int threads = 0);

/// Serial reference for family_field (same truncation, plain loop).
FamilyFieldResult family_field_serial(const SolitonFamily& fam, double t, const Grid1D& grid,
                                      double tail_tol);

/// Partial double sum  sum_{j,k<=J} Im p_j / |p_j - conj(p_k)|^2.
double summability(const SolitonFamily& fam, long J);

/// i sum_{j<=J} 1/(z + p_j), Im z >= 0. Twice its real part on the real
/// axis reproduces the family field at t = 0.
cplx hardy_closed_form(const SolitonFamily& fam, cplx z, long J);

struct L2IdentityResult {
    double lhs = 0.0;       // quadrature of |hardy_closed_form|^2 (+ tail)
    double rhs = 0.0;       // 4 pi sum_{j,k} Im p_j / |p_j - conj p_k|^2
    double box_tail = 0.0;  // analytic contribution from |x| > box
};

/// Two routes to ||Pi u_0||_2^2: grid quadrature of the closed-form Hardy
/// function (with the exact rational tail beyond the box added), against
/// the residue double sum.
L2IdentityResult l2_identity(const SolitonFamily& fam, const Grid1D& grid, long J);

/// Pole list file: one "re im" pair per line, '#' comments and blank lines
/// ignored. Poles on the real axis (Im p = 0) contribute nothing and are
/// dropped; the count of dropped poles is reported through *dropped when
/// given. Im p < 0 is an error.
SolitonFamily read_pole_file(const std::string& path, int* dropped = nullptr);

} // namespace bolab

#endif
