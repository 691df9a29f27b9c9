#include "bolab/lax.hpp"

#include "doctest.h"
#include "test_util.hpp"

#include <cmath>
#include <random>

using namespace bolab;
using bolab_test::r_i_field;

namespace {
const Grid1D kBox = Grid1D::centered(200.0, 4096);
} // namespace

TEST_CASE("toeplitz of zero and of a single cosine") {
    SampledField zero(kBox);
    DiscretizedOperator t0 = toeplitz_of(zero, 64);
    CHECK(t0.matrix.norm() == 0.0);

    const double dxi = kBox.dxi();
    auto u = SampledField::sample(kBox, [&](double x) { return 2.0 * std::cos(dxi * x); });
    DiscretizedOperator t1 = toeplitz_of(u, 64);
    for (int m = 0; m < 64; ++m)
        for (int k = 0; k < 64; ++k) {
            const cplx v = t1.matrix(m, k);
            if (std::abs(m - k) == 1)
                CHECK(std::abs(v - cplx(1.0)) < 1e-10);
            else
                CHECK(std::abs(v) < 1e-10);
        }
}

TEST_CASE("matrix action equals projected multiplication") {
    SampledField u = r_i_field(kBox);
    const int M = 512;
    DiscretizedOperator T = toeplitz_of(u, M);

    // f = e^{i xi_1 x}: coefficient vector e_1 in the band
    SampledField f(kBox);
    for (int j = 0; j < kBox.n; ++j) f.values[j] = std::polar(1.0, kBox.dxi() * kBox.x(j));
    Eigen::VectorXcd fhat = Eigen::VectorXcd::Zero(M);
    fhat(0) = cplx(kBox.length()); // continuum coefficient of e^{i xi_1 x}

    const Eigen::VectorXcd out = T.matrix * fhat;

    SampledField uf(kBox);
    for (int j = 0; j < kBox.n; ++j) uf.values[j] = u.values[j] * f.values[j];
    const HardyCoeffs proj = szego_project(uf);

    double scale = 0.0;
    for (int m = 0; m < M; ++m) scale = std::max(scale, std::abs(proj.coeff[m]));
    for (int m = 0; m < M; ++m)
        CHECK(std::abs(out(m) - proj.coeff[m]) <= 1e-8 * scale);
}

TEST_CASE("toeplitz parallel assembly matches the serial reference") {
    SampledField u = r_i_field(kBox);
    DiscretizedOperator a = toeplitz_of(u, 96);
    DiscretizedOperator b = toeplitz_of_serial(u, 96);
    CHECK((a.matrix - b.matrix).norm() == 0.0);
}

TEST_CASE("lax matrix is hermitian and linear in u") {
    SampledField u = r_i_field(kBox);
    DiscretizedOperator L = lax_matrix(u, 256);
    CHECK((L.matrix - L.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-10);

    SampledField u2 = u;
    for (auto& v : u2.values) v *= 3.0;
    DiscretizedOperator T1 = toeplitz_of(u, 128), T3 = toeplitz_of(u2, 128);
    CHECK((T3.matrix - 3.0 * T1.matrix).cwiseAbs().maxCoeff() < 1e-10);

    SampledField zero(kBox);
    DiscretizedOperator L0 = lax_matrix(zero, 32);
    // pure multiplier band: positive diagonal spaced by dxi, no negative part
    for (int m = 0; m < 32; ++m) CHECK(L0.matrix(m, m).real() > 0.0);
    CHECK(std::abs(L0.matrix(5, 5).real() - L0.matrix(4, 4).real() - kBox.dxi()) < 1e-14);
}

TEST_CASE("one-soliton bound state sits at -1/2") {
    SampledField u = r_i_field(kBox);
    SpectrumResult s = discrete_spectrum(u, 0.0, 1024);
    REQUIRE(s.negative_part.size() == 1);
    CHECK(std::abs(s.negative_part[0] + 0.5) <= 1e-3);

    // eigenvalues ascending, eigenvectors unitary
    for (size_t i = 1; i < s.eigenvalues.size(); ++i)
        CHECK(s.eigenvalues[i] >= s.eigenvalues[i - 1]);
    Eigen::MatrixXcd G = s.eigenvectors.adjoint() * s.eigenvectors;
    CHECK((G - Eigen::MatrixXcd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("zero field has no bound states") {
    SpectrumResult s = discrete_spectrum(SampledField(kBox), 0.0, 128);
    CHECK(s.negative_part.empty());
}

TEST_CASE("two separated solitons give two bound states") {
    auto u = SampledField::sample(kBox, [](double x) {
        const double a = x - 30.0, b = x + 30.0;
        return 2.0 / (a * a + 1.0) + 4.0 / (b * b + 4.0);
    });
    SpectrumResult s = discrete_spectrum(u, 0.0, 1024);
    REQUIRE(s.negative_part.size() == 2);
    CHECK(std::abs(s.negative_part[0] + 0.5) <= 1e-2 * 0.5);
    CHECK(std::abs(s.negative_part[1] + 0.25) <= 1e-2 * 0.25);
}

TEST_CASE("bound states are stable under band refinement") {
    SampledField u = r_i_field(kBox);
    SpectrumResult a = discrete_spectrum(u, 0.0, 512);
    SpectrumResult b = discrete_spectrum(u, 0.0, 1024);
    REQUIRE(a.negative_part.size() == 1);
    REQUIRE(b.negative_part.size() == 1);
    CHECK(std::abs(a.negative_part[0] - b.negative_part[0]) <= 1e-3);
}

TEST_CASE("trace identity: soliton saturates, radiation leaves a gap") {
    SampledField u = r_i_field(kBox);
    TraceIdentity tr = trace_identity(u, 0.0, 1024);
    CHECK(std::abs(tr.gap) <= 5e-3 * tr.rhs);
    CHECK(tr.lhs == doctest::Approx(M_PI).epsilon(2e-3));

    auto bump = SampledField::sample(kBox, [](double x) { return 0.05 * std::exp(-x * x); });
    TraceIdentity tg = trace_identity(bump, 0.0, 1024);
    CHECK(tg.lhs == 0.0); // no bound state at this amplitude
    CHECK(tg.gap == tg.rhs);
    CHECK(tg.gap > 1e-3);

    TraceIdentity tz = trace_identity(SampledField(kBox), 0.0, 128);
    CHECK(tz.lhs == 0.0);
    CHECK(tz.rhs == 0.0);
    CHECK(tz.gap == 0.0);
}

TEST_CASE("trace gap shrinks with box and band for soliton data, not for radiation") {
    // soliton route: gap decreases when resolution doubles
    const Grid1D small = Grid1D::centered(100.0, 2048);
    TraceIdentity c = trace_identity(r_i_field(small), 0.0, 512);
    TraceIdentity f = trace_identity(r_i_field(kBox), 0.0, 1024);
    CHECK(std::abs(f.gap) < std::abs(c.gap));

    // soliton plus a radiation bump: gap converges to something positive
    auto mixed_small = SampledField::sample(small, [](double x) {
        return 2.0 / (x * x + 1.0) + 0.05 * std::exp(-(x - 20.0) * (x - 20.0));
    });
    auto mixed_big = SampledField::sample(kBox, [](double x) {
        return 2.0 / (x * x + 1.0) + 0.05 * std::exp(-(x - 20.0) * (x - 20.0));
    });
    TraceIdentity m1 = trace_identity(mixed_small, 0.0, 512);
    TraceIdentity m2 = trace_identity(mixed_big, 0.0, 1024);
    CHECK(m1.gap > 1e-3);
    CHECK(m2.gap > 1e-3);
    CHECK(std::abs(m2.gap - m1.gap) < 0.5 * m1.gap);
}

TEST_CASE("separated one-soliton eigenvalues match -1/(2y)") {
    // widths 1, 2/3, 1/2 -> lambdas -1/2, -3/4, -1
    auto u = SampledField::sample(kBox, [](double x) {
        const double y1 = 1.0, y2 = 2.0 / 3.0, y3 = 0.5;
        const double a = x, b = x - 60.0, c = x + 60.0;
        return 2.0 * y1 / (a * a + y1 * y1) + 2.0 * y2 / (b * b + y2 * y2) +
               2.0 * y3 / (c * c + y3 * y3);
    });
    SpectrumResult s = discrete_spectrum(u, 0.0, 1024);
    REQUIRE(s.negative_part.size() == 3);
    const double expect[3] = {-1.0, -0.75, -0.5};
    for (int i = 0; i < 3; ++i)
        CHECK(std::abs(s.negative_part[i] - expect[i]) <= 1e-2 * std::abs(expect[i]));
}

TEST_CASE("meromorphic F: direct sum equals the Hardy route") {
    SolitonFamily one(std::vector<SolitonParam>{SolitonParam(cplx(0.0, 1.0))});
    MeromorphicF f1 = meromorphic_F(one, cplx(0.0, 1.0), 1);
    CHECK(std::abs(f1.direct - cplx(0.0, -0.5)) < 1e-15);
    CHECK(std::abs(f1.via_hardy - cplx(0.0, -0.5)) < 1e-15);

    SolitonFamily two(std::vector<SolitonParam>{SolitonParam(cplx(0.0, 1.0)),
                                                SolitonParam(cplx(0.0, 2.0))});
    MeromorphicF f2 = meromorphic_F(two, cplx(0.0, 1.0), 2);
    CHECK(std::abs(f2.direct - (1.0 / cplx(0.0, 2.0) + 1.0 / cplx(0.0, 3.0))) < 1e-15);

    std::mt19937 rng(55);
    std::uniform_real_distribution<double> re(-3.0, 3.0), im(0.2, 3.0);
    std::vector<SolitonParam> ps;
    for (int j = 0; j < 5; ++j) ps.emplace_back(cplx(re(rng), im(rng)));
    SolitonFamily fam(ps);
    for (int trial = 0; trial < 20; ++trial) {
        const cplx z(re(rng), im(rng));
        MeromorphicF f = meromorphic_F(fam, z, 5);
        CHECK(std::abs(f.direct - f.via_hardy) <= 1e-14 * std::max(1.0, std::abs(f.direct)));
    }

    CHECK_THROWS_AS(meromorphic_F(one, cplx(1.0, 0.0), 1), std::domain_error);
}

TEST_CASE("aliasing warning fires on Nyquist-heavy data") {
    SampledField smooth = r_i_field(kBox);
    CHECK_FALSE(toeplitz_of(smooth, 64).aliasing_warning);
    SampledField spiky(kBox);
    for (int j = 0; j < kBox.n; ++j)
        spiky.values[j] = (j % 2 == 0 ? 1.0 : -1.0) * 0.01 + 2.0 / (kBox.x(j) * kBox.x(j) + 1.0);
    CHECK(toeplitz_of(spiky, 64).aliasing_warning);
}
