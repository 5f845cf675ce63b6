#include <doctest.h>

#include <numbers>

#include "szego/symbol.hpp"

using namespace szego;

namespace {

Vec vec(std::initializer_list<cxd> vals) {
    Vec v(vals.size());
    int i = 0;
    for (auto c : vals) v[i++] = c;
    return v;
}

// Independent oracle for the power series of A/B: evaluate on a circle of
// radius 1/2 and invert the DFT. Shares no code with the recurrence route.
Vec series_by_sampling(const RationalSymbol& r, int n) {
    const int m = 4 * n;
    const double rho = 0.5;
    std::vector<cxd> vals(m);
    for (int i = 0; i < m; ++i) {
        const cxd z = std::polar(rho, 2.0 * std::numbers::pi * i / m);
        cxd a{0.0, 0.0}, b{0.0, 0.0};
        for (auto it = r.num.rbegin(); it != r.num.rend(); ++it) a = a * z + *it;
        for (auto it = r.den.rbegin(); it != r.den.rend(); ++it) b = b * z + *it;
        vals[i] = a / b;
    }
    Vec out(n);
    for (int k = 0; k < n; ++k) {
        cxd acc{0.0, 0.0};
        for (int i = 0; i < m; ++i)
            acc += vals[i] * std::polar(1.0, -2.0 * std::numbers::pi * k * i / m);
        out[k] = acc / (double(m) * std::pow(rho, k));
    }
    return out;
}

} // namespace

TEST_CASE("rational_to_fourier matches the hand expansion of z/(1-pz)^2") {
    const double p = 0.5;
    RationalSymbol r({cxd{0, 0}, cxd{1, 0}}, {cxd{1, 0}, cxd{-2 * p, 0}, cxd{p * p, 0}});
    const FourierSymbol u = rational_to_fourier(r, 64);
    // û(n) = n p^{n-1}
    const double expect[] = {0.0, 1.0, 1.0, 0.75, 0.5, 0.3125};
    for (int n = 0; n < 6; ++n)
        CHECK(std::abs(u.coeff(n) - expect[n]) < 1e-14);
    const Vec oracle = series_by_sampling(r, 20);
    for (int n = 0; n < 20; ++n)
        CHECK(std::abs(u.coeff(n) - oracle[n]) < 1e-9 * std::pow(2.0, -0.0));
}

TEST_CASE("rational_to_fourier trivial symbols") {
    const FourierSymbol one = rational_to_fourier(RationalSymbol({cxd{1, 0}}, {cxd{1, 0}}), 16);
    CHECK(std::abs(one.coeff(0) - 1.0) < 1e-16);
    CHECK(one.coeffs().tail(15).norm() == 0.0);

    const cxd c{0.3, -0.7};
    const FourierSymbol mono =
        rational_to_fourier(RationalSymbol({cxd{0, 0}, c}, {cxd{1, 0}}), 16);
    CHECK(std::abs(mono.coeff(1) - c) < 1e-16);
    CHECK(std::abs(mono.coeff(0)) == 0.0);
}

TEST_CASE("rational_to_fourier reports unresolved tails") {
    RationalSymbol r({cxd{1, 0}}, {cxd{1, 0}, cxd{-0.999, 0}});
    CHECK_THROWS_AS((void)rational_to_fourier(r, 64), TailNotResolved);
    CHECK_NOTHROW((void)rational_to_fourier_auto(r, 64, 65536));
}

TEST_CASE("pole inside the disc is rejected") {
    CHECK_THROWS_AS(RationalSymbol({cxd{1, 0}}, {cxd{1, 0}, cxd{-1.2, 0}}), PoleInsideDisc);
    // common factor (1 - 0.5 z) in A and B
    CHECK_THROWS_AS(RationalSymbol({cxd{1, 0}, cxd{-2.0, 0}}, {cxd{1, 0}, cxd{-2.0, 0}}),
                    InvalidSymbol);
}

TEST_CASE("szego_project_product") {
    SUBCASE("|z|^2 projects to the constant 1") {
        const FourierSymbol u{vec({cxd{0, 0}, cxd{1, 0}})};
        const FourierSymbol p = szego_project_product(u, u);
        CHECK(std::abs(p.coeff(0) - 1.0) < 1e-16);
        CHECK(std::abs(p.coeff(1)) == 0.0);
    }
    SUBCASE("2x2 convolution by hand") {
        const cxd b{0.4, 0.3}, c{-0.2, 0.9};
        const FourierSymbol u{vec({b, c})};
        const FourierSymbol p = szego_project_product(u, u);
        CHECK(std::abs(p.coeff(0) - (std::norm(b) + std::norm(c))) < 1e-15);
        CHECK(std::abs(p.coeff(1) - c * std::conj(b)) < 1e-15);
    }
    SUBCASE("zero second factor") {
        const FourierSymbol u{vec({cxd{1, 2}, cxd{3, 4}})};
        CHECK(szego_project_product(u, FourierSymbol::zeros(2)).norm() == 0.0);
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS((void)szego_project_product(FourierSymbol::zeros(2),
                                                    FourierSymbol::zeros(3)),
                        DimensionMismatch);
    }
}

TEST_CASE("inner products") {
    CHECK(std::abs(inner(FourierSymbol{vec({cxd{0, 0}, cxd{1, 0}})},
                         FourierSymbol{vec({cxd{0, 0}, cxd{1, 0}})}) -
                   1.0) < 1e-16);
    CHECK(std::abs(inner(FourierSymbol{vec({cxd{1, 0}, cxd{1, 0}})},
                         FourierSymbol{vec({cxd{1, 0}, cxd{-1, 0}})})) < 1e-16);

    // Q of z/(1-z/2)^2 equals (1+r)/(1-r)^3 at r = 1/4
    RationalSymbol r({cxd{0, 0}, cxd{1, 0}}, {cxd{1, 0}, cxd{-1.0, 0}, cxd{0.25, 0}});
    const FourierSymbol u = rational_to_fourier(r, 64);
    const double q = inner(u, u).real();
    CHECK(std::abs(q - 80.0 / 27.0) < 1e-12);
}

TEST_CASE("sobolev_norm_sq") {
    const FourierSymbol z{vec({cxd{0, 0}, cxd{1, 0}})};
    CHECK(sobolev_norm_sq(z, SobolevIndex(1.0)) == doctest::Approx(2.0).epsilon(1e-15));

    // sum against the direct series for 1/(1-pz), p=0.9
    const double p = 0.9;
    RationalSymbol r({cxd{1, 0}}, {cxd{1, 0}, cxd{-p, 0}});
    const FourierSymbol u = rational_to_fourier_auto(r, 128, 8192);
    double direct = 0.0;
    for (int j = 0; j < u.trunc_dim(); ++j)
        direct += std::pow(p, 2 * j) * (1.0 + double(j) * j);
    CHECK(sobolev_norm_sq(u, SobolevIndex(1.0)) == doctest::Approx(direct).epsilon(1e-12));

    // s = 0 is the mass
    CHECK(sobolev_norm_sq(u, SobolevIndex(0.0)) ==
          doctest::Approx(u.coeffs().squaredNorm()).epsilon(1e-15));
}

TEST_CASE("fit_rational roundtrips") {
    SUBCASE("z/(1-pz)^2") {
        RationalSymbol r({cxd{0, 0}, cxd{1, 0}}, {cxd{1, 0}, cxd{-1.0, 0}, cxd{0.25, 0}});
        const FourierSymbol u = rational_to_fourier(r, 96);
        const RationalSymbol fit = fit_rational(u, 4);
        REQUIRE(fit.den.size() == 3);
        CHECK(std::abs(fit.den[1] - r.den[1]) < 1e-8);
        CHECK(std::abs(fit.den[2] - r.den[2]) < 1e-8);
        CHECK(std::abs(fit.num[1] - cxd{1, 0}) < 1e-8);
    }
    SUBCASE("constant") {
        const cxd c{0.3, 0.4};
        Vec v = Vec::Zero(32);
        v[0] = c;
        const RationalSymbol fit = fit_rational(FourierSymbol(std::move(v)), 1);
        CHECK(std::abs(fit.num[0] - c) < 1e-14);
        CHECK(fit.den.size() == 1);
    }
    SUBCASE("V(3) two-term symbol") {
        const cxd b{0.5, 0.0}, c{0.3, -0.1}, p{0.35, 0.15};
        RationalSymbol r({b, c - b * p}, {cxd{1, 0}, -p});
        const FourierSymbol u = rational_to_fourier(r, 96);
        const RationalSymbol fit = fit_rational(u, 3);
        CHECK(std::abs(fit.den[1] - (-p)) < 1e-9);
        CHECK(std::abs(fit.num[0] - b) < 1e-9);
        CHECK(std::abs(fit.num[1] - (c - b * p)) < 1e-9);
    }
    SUBCASE("wrong class is detected") {
        RationalSymbol r({cxd{0, 0}, cxd{1, 0}}, {cxd{1, 0}, cxd{-1.0, 0}, cxd{0.25, 0}});
        const FourierSymbol u = rational_to_fourier(r, 96);
        CHECK_THROWS_AS((void)fit_rational(u, 6), RankMismatch);
    }
}

TEST_CASE("fit_rational o rational_to_fourier is the identity on random symbols") {
    std::mt19937_64 gen(7);
    auto uniform = [&](double a, double b) {
        return a + (b - a) * double(gen() >> 11) * 0x1.0p-53;
    };
    for (int trial = 0; trial < 25; ++trial) {
        const cxd p1 = std::polar(uniform(0.2, 0.7), uniform(0.0, 6.28));
        const cxd p2 = std::polar(uniform(0.2, 0.7), uniform(0.0, 6.28));
        const cxd a0 = std::polar(uniform(0.3, 1.0), uniform(0.0, 6.28));
        const cxd a1 = std::polar(uniform(0.3, 1.0), uniform(0.0, 6.28));
        RationalSymbol r({a0, a1}, {cxd{1, 0}, -(p1 + p2), p1 * p2});
        const FourierSymbol u = rational_to_fourier_auto(r);
        const RationalSymbol fit = fit_rational(u, 4);
        const FourierSymbol u2 = rational_to_fourier(fit, u.trunc_dim());
        CHECK((u2.coeffs() - u.coeffs()).norm() < 1e-8 * u.norm());
    }
}

TEST_CASE("zero symbol is legal in this module") {
    const FourierSymbol z = FourierSymbol::zeros(16);
    CHECK(szego_project_product(z, z).norm() == 0.0);
    CHECK(std::abs(inner(z, z)) == 0.0);
    CHECK(sobolev_norm_sq(z, SobolevIndex(2.0)) == 0.0);
}
