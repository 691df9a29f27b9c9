#include "bolab/soliton.hpp"

#include "bolab/io.hpp"
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>

using namespace bolab;

TEST_CASE("soliton_profile closed-form values") {
    const SolitonParam pi_(cplx(0.0, 1.0));
    CHECK(soliton_profile(pi_, 0.0, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(soliton_profile(pi_, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    const SolitonParam p2(cplx(0.0, 2.0)); // crest speed 1/2
    CHECK(soliton_profile(p2, 4.0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("translation covariance is exact") {
    const double a = 1.375; // representable shift
    const SolitonParam p(cplx(0.5, 1.5));
    const SolitonParam shifted(p.p + a);
    for (double x : {-3.0, 0.25, 7.5})
        CHECK(soliton_profile(shifted, 2.0, x) == soliton_profile(p, 2.0, x + a));
}

TEST_CASE("soliton mass approaches 2 pi like 1/L") {
    const SolitonParam p(cplx(0.0, 1.0));
    double defect_prev = 0.0;
    double ratio_check[2];
    int i = 0;
    for (double L : {100.0, 200.0, 400.0}) {
        const Grid1D g = Grid1D::centered(L, 4096);
        double mass = 0.0;
        for (int j = 0; j < g.n; ++j) mass += soliton_profile(p, 0.0, g.x(j));
        mass *= g.dx();
        const double defect = 2.0 * M_PI - mass;
        CHECK(defect > 0.0);
        CHECK(defect < 10.0 / L);
        if (i > 0) ratio_check[i - 1] = defect_prev / defect;
        defect_prev = defect;
        ++i;
    }
    // halving 1/L halves the defect
    CHECK(ratio_check[0] == doctest::Approx(2.0).epsilon(0.05));
    CHECK(ratio_check[1] == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("family_field sums profiles") {
    const Grid1D g = Grid1D::centered(50.0, 1024);
    SolitonFamily one(std::vector<SolitonParam>{SolitonParam(cplx(0.0, 1.0))});
    const FamilyFieldResult r1 = family_field(one, 0.0, g, 1e-12);
    for (int j = 0; j < g.n; j += 37) {
        const double x = g.x(j);
        CHECK(r1.field.values[j].real() == doctest::Approx(2.0 / (x * x + 1.0)).epsilon(1e-14));
    }

    SolitonFamily two(std::vector<SolitonParam>{SolitonParam(cplx(0.0, 1.0)),
                                                SolitonParam(cplx(0.0, 2.0))});
    const FamilyFieldResult r2 = family_field(two, 0.0, g, 1e-12);
    const int j0 = g.n / 2; // x = 0
    CHECK(g.x(j0) == 0.0);
    CHECK(r2.field.values[j0].real() == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("infinite family truncates against its certified tail") {
    SolitonFamily fam = SolitonFamily::inverse_square_widths();
    const Grid1D g = Grid1D::centered(10.0, 8);
    const FamilyFieldResult r = family_field(fam, 0.0, g, 1e-6);
    // first J with 2/J < 1e-6
    CHECK(r.truncation_index == 2000001);
    CHECK(r.tail_bound < 1e-6);
    CHECK(r.tail_bound > 0.9e-6);

    // an unreachable tolerance fails loudly
    PoleGenerator slow;
    slow.pole = [](long j) { return cplx(0.0, static_cast<double>(j)); }; // tail ~ log, divergent
    slow.supnorm_tail_bound = [](long) { return 1.0; };
    slow.index_limit = 1000;
    CHECK_THROWS_AS(family_field(SolitonFamily(slow), 0.0, g, 1e-6), std::runtime_error);
}

TEST_CASE("family_field parallel kernel matches the serial reference") {
    std::vector<SolitonParam> ps;
    for (int j = 1; j <= 40; ++j)
        ps.emplace_back(cplx(0.3 * j - 6.0, 0.25 + 0.11 * j));
    SolitonFamily fam(ps);
    const Grid1D g = Grid1D::centered(80.0, 2048);
    const FamilyFieldResult a = family_field(fam, 1.5, g, 1e-14);
    const FamilyFieldResult b = family_field_serial(fam, 1.5, g, 1e-14);
    REQUIRE(a.truncation_index == b.truncation_index);
    for (int j = 0; j < g.n; ++j) CHECK(a.field.values[j] == b.field.values[j]);
}

TEST_CASE("summability partial sums") {
    SolitonFamily one(std::vector<SolitonParam>{SolitonParam(cplx(0.0, 1.0))});
    CHECK(summability(one, 1) == doctest::Approx(0.25).epsilon(1e-15));

    SolitonFamily pair1(std::vector<SolitonParam>{SolitonParam(cplx(0.0, 1.0)),
                                                  SolitonParam(cplx(1.0, 1.0))});
    // 1/4 + 1/5 + 1/5 + 1/4
    CHECK(summability(pair1, 2) == doctest::Approx(0.9).epsilon(1e-14));

    SolitonFamily pair2(std::vector<SolitonParam>{SolitonParam(cplx(0.0, 1.0)),
                                                  SolitonParam(cplx(0.0, 2.0))});
    // 1/4 + 1/9 + 2/9 + 2/16 = 17/24
    CHECK(summability(pair2, 2) == doctest::Approx(17.0 / 24.0).epsilon(1e-14));
}

TEST_CASE("summability partial sums never decrease (property)") {
    SolitonFamily fam = SolitonFamily::inverse_square_widths();
    double prev = 0.0;
    for (long J = 1; J <= 40; ++J) {
        const double s = summability(fam, J);
        CHECK(s >= prev);
        prev = s;
    }
}

TEST_CASE("hardy_closed_form values and field consistency") {
    SolitonFamily one(std::vector<SolitonParam>{SolitonParam(cplx(0.0, 1.0))});
    CHECK(std::abs(hardy_closed_form(one, cplx(0.0), 1) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(hardy_closed_form(one, cplx(1.0), 1) - cplx(0.5, 0.5)) < 1e-15);

    SolitonFamily two(std::vector<SolitonParam>{SolitonParam(cplx(0.0, 1.0)),
                                                SolitonParam(cplx(0.0, 2.0))});
    CHECK(std::abs(hardy_closed_form(two, cplx(0.0), 2) - cplx(1.5)) < 1e-15);

    // 2 Re(closed form) = family field at t = 0
    const Grid1D g = Grid1D::centered(30.0, 512);
    const FamilyFieldResult ff = family_field(two, 0.0, g, 1e-12);
    for (int j = 0; j < g.n; j += 19) {
        const double u = 2.0 * hardy_closed_form(two, cplx(g.x(j)), 2).real();
        CHECK(std::abs(u - ff.field.values[j].real()) < 1e-12);
    }

    CHECK_THROWS_AS(hardy_closed_form(one, cplx(0.0, -1.0), 1), std::domain_error);
    // z = -p collision
    CHECK_THROWS_AS(hardy_closed_form(SolitonFamily(std::vector<SolitonParam>{
                                          SolitonParam(cplx(1.0, 1e-13))}),
                                      cplx(-1.0, 0.0), 1),
                    std::domain_error);
}

TEST_CASE("l2 identity: quadrature vs residue double sum") {
    const Grid1D g = Grid1D::centered(400.0, 8192);

    SolitonFamily one(std::vector<SolitonParam>{SolitonParam(cplx(0.0, 1.0))});
    const L2IdentityResult r1 = l2_identity(one, g, 1);
    CHECK(r1.rhs == doctest::Approx(M_PI).epsilon(1e-14));
    CHECK(std::abs(r1.lhs - M_PI) < 1e-7); // arctan closed form = pi

    SolitonFamily two(std::vector<SolitonParam>{SolitonParam(cplx(0.0, 1.0)),
                                                SolitonParam(cplx(0.0, 2.0))});
    const L2IdentityResult r2 = l2_identity(two, g, 2);
    CHECK(r2.rhs == doctest::Approx(4.0 * M_PI * 17.0 / 24.0).epsilon(1e-14));
    CHECK(std::abs(r2.lhs - r2.rhs) < 1e-4 * r2.rhs);
}

TEST_CASE("pole files") {
    const std::string path = "test_poles_tmp.txt";
    {
        std::ofstream out(path);
        out << "# two poles and a dropped real one\n";
        out << "0.0 1.0\n";
        out << "\n";
        out << "1.5 2.0   # comment\n";
        out << "3.0 0.0\n";
    }
    int dropped = 0;
    SolitonFamily fam = read_pole_file(path, &dropped);
    CHECK(fam.finite_count() == 2);
    CHECK(dropped == 1);
    CHECK(fam.pole(2) == cplx(1.5, 2.0));
    std::remove(path.c_str());

    CHECK_THROWS_AS(read_pole_file("does_not_exist.txt"), config_error);

    {
        std::ofstream out(path);
        out << "0.0 -1.0\n";
    }
    CHECK_THROWS_AS(read_pole_file(path), config_error);
    std::remove(path.c_str());
}
