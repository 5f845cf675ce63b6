#include <doctest.h>

#include <random>

#include "szego/hankel.hpp"

using namespace szego;

namespace {

Vec vec(std::initializer_list<cxd> vals) {
    Vec v(vals.size());
    int i = 0;
    for (auto c : vals) v[i++] = c;
    return v;
}

FourierSymbol random_symbol(std::mt19937_64& gen, int n, double decay = 0.75) {
    Vec v(n);
    auto u01 = [&] { return double(gen() >> 11) * 0x1.0p-53; };
    double w = 1.0;
    for (int i = 0; i < n; ++i) {
        v[i] = w * cxd{2.0 * u01() - 1.0, 2.0 * u01() - 1.0};
        w *= decay;
    }
    return FourierSymbol(std::move(v));
}

FourierSymbol v4_sample(double scale = 1.0) {
    const cxd p1{0.35, 0.2}, p2{-0.1, 0.45};
    RationalSymbol r({cxd{0.4 * scale, 0.1 * scale}, cxd{0.2 * scale, -0.5 * scale}},
                     {cxd{1, 0}, -(p1 + p2), p1 * p2});
    return rational_to_fourier_auto(r);
}

} // namespace

TEST_CASE("hankel_square on elementary symbols") {
    SUBCASE("u = z has a double singular value 1") {
        const FourierSymbol u{vec({cxd{0, 0}, cxd{1, 0}, cxd{0, 0}})};
        const Mat m = hankel_square(u);
        CHECK(std::abs(m(0, 0) - 1.0) < 1e-15);
        CHECK(std::abs(m(1, 1) - 1.0) < 1e-15);
        CHECK(std::abs(m(2, 2)) < 1e-15);
    }
    SUBCASE("u = 0") { CHECK(hankel_square(FourierSymbol::zeros(8)).norm() == 0.0); }
    SUBCASE("2x2 block with determinant |c|^4") {
        const cxd b{0.3, -0.2}, c{0.7, 0.1};
        const FourierSymbol u{vec({b, c})};
        const Mat m = hankel_square(u);
        CHECK(std::abs(m(0, 0) - (std::norm(b) + std::norm(c))) < 1e-15);
        CHECK(std::abs(m(0, 1) - b * std::conj(c)) < 1e-15);
        CHECK(std::abs(m(1, 0) - c * std::conj(b)) < 1e-15);
        const cxd det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
        CHECK(std::abs(det - std::norm(c) * std::norm(c)) < 1e-14);
    }
}

TEST_CASE("K^2 = H^2 - (.|u)u to machine precision") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 8; ++trial) {
        const FourierSymbol u = random_symbol(gen, 32);
        const Mat h2 = hankel_square(u);
        const Mat k2 = shifted_square(u);
        const Mat rank1 = u.coeffs() * u.coeffs().adjoint();
        CHECK((h2 - k2 - rank1).norm() <= 1e-12 * h2.norm());
    }
    const FourierSymbol z{vec({cxd{0, 0}, cxd{1, 0}})};
    const Mat k2 = shifted_square(z);
    CHECK(std::abs(k2(0, 0) - 1.0) < 1e-15);   // K_u^2 acts only on the constants
    CHECK(std::abs(k2(1, 1)) < 1e-15);
}

TEST_CASE("apply_hankel") {
    std::mt19937_64 gen(3);
    const FourierSymbol u = random_symbol(gen, 24);
    SUBCASE("H_u(1) = u") {
        Vec e0 = Vec::Zero(24);
        e0[0] = 1.0;
        CHECK((apply_hankel(u, FourierSymbol(std::move(e0))).coeffs() - u.coeffs()).norm() <
              1e-15 * u.norm());
    }
    SUBCASE("antilinearity: H_u(i h) = -i H_u(h)") {
        const FourierSymbol h = random_symbol(gen, 24);
        const Vec lhs = apply_hankel(u, FourierSymbol(Vec(cxd{0, 1} * h.coeffs()))).coeffs();
        const Vec rhs = cxd{0, -1} * apply_hankel(u, h).coeffs();
        CHECK((lhs - rhs).norm() < 1e-15 * rhs.norm());
    }
    SUBCASE("apply twice equals the square matrix") {
        const FourierSymbol h = random_symbol(gen, 24);
        const Vec twice = apply_hankel(u, apply_hankel(u, h)).coeffs();
        const Vec square = hankel_square(u) * h.coeffs();
        CHECK((twice - square).norm() <= 1e-12 * square.norm());
    }
}

TEST_CASE("singular_spectrum of the V(4) example symbol") {
    // closed form for u = z/(1-pz)^2: sigma^2 = (1+4r+r^2 +- (1+r)sqrt(1+6r+r^2))/(2(1-r)^4)
    const double r = 0.25, p = 0.5;
    RationalSymbol rs({cxd{0, 0}, cxd{1, 0}}, {cxd{1, 0}, cxd{-2 * p, 0}, cxd{p * p, 0}});
    const FourierSymbol u = rational_to_fourier(rs, 128);
    const SpectralData sd = singular_spectrum(u);

    const double root = (1 + r) * std::sqrt(1 + 6 * r + r * r);
    const double s1 = (1 + 4 * r + r * r + root) / (2 * std::pow(1 - r, 4));
    const double s2 = (1 + 4 * r + r * r - root) / (2 * std::pow(1 - r, 4));
    REQUIRE(sd.k.size() == 2);
    CHECK(sd.k[0].value == doctest::Approx(s1).epsilon(1e-10));
    CHECK(sd.k[1].value == doctest::Approx(s2).epsilon(1e-10));
    CHECK(sd.rank_h == 2);
    CHECK(sd.rank_k == 2);
    for (const auto& mv : sd.merged) CHECK(std::abs(mv.dim_h - mv.dim_k) == 1);
    // all four values simple, K-dominant values are the even entries
    REQUIRE(sd.merged.size() == 4);
    CHECK(sd.merged[0].dom == Dominance::H);
    CHECK(sd.merged[1].dom == Dominance::K);
    CHECK(sd.merged[2].dom == Dominance::H);
    CHECK(sd.merged[3].dom == Dominance::K);
}

TEST_CASE("merged value for u = c z (H-dominant with multiplicity)") {
    const cxd c{0.6, -0.3};
    const FourierSymbol u{vec({cxd{0, 0}, c, cxd{0, 0}, cxd{0, 0}})};
    const SpectralData sd = singular_spectrum(u);
    REQUIRE(sd.merged.size() == 1);
    CHECK(sd.merged[0].value == doctest::Approx(std::norm(c)).epsilon(1e-12));
    CHECK(sd.merged[0].dim_h == 2);
    CHECK(sd.merged[0].dim_k == 1);
    CHECK(sd.merged[0].dom == Dominance::H);
    const InterlacementResult il = interlacement_check(sd);
    CHECK(il.ok);
}

TEST_CASE("constant symbol: K side empty") {
    const cxd c{0.8, 0.1};
    Vec v = Vec::Zero(8);
    v[0] = c;
    const SpectralData sd = singular_spectrum(FourierSymbol(std::move(v)));
    CHECK(sd.k.empty());
    REQUIRE(sd.h.size() == 1);
    CHECK(sd.h[0].value == doctest::Approx(std::norm(c)).epsilon(1e-12));
    CHECK(sd.merged[0].dom == Dominance::H);
}

TEST_CASE("zero symbol raises") {
    CHECK_THROWS_AS((void)singular_spectrum(FourierSymbol::zeros(8)), ZeroSymbol);
}

TEST_CASE("gauge invariance of the singular values") {
    std::mt19937_64 gen(19);
    const FourierSymbol u = v4_sample();
    const SpectralData sd = singular_spectrum(u);

    const double theta = 1.234, alpha = -0.71;
    Vec rotated = std::polar(1.0, theta) * u.coeffs();
    Vec twisted = u.coeffs();
    for (int n = 0; n < u.trunc_dim(); ++n) twisted[n] *= std::polar(1.0, alpha * n);

    for (const Vec& w : {rotated, twisted}) {
        const SpectralData sd2 = singular_spectrum(FourierSymbol(Vec(w)));
        REQUIRE(sd2.k.size() == sd.k.size());
        REQUIRE(sd2.h.size() == sd.h.size());
        for (std::size_t i = 0; i < sd.k.size(); ++i)
            CHECK(sd2.k[i].value == doctest::Approx(sd.k[i].value).epsilon(1e-10));
        for (std::size_t i = 0; i < sd.h.size(); ++i)
            CHECK(sd2.h[i].value == doctest::Approx(sd.h[i].value).epsilon(1e-10));
    }
    (void)gen;
}

TEST_CASE("rank identity rg H + rg K = d") {
    std::mt19937_64 gen(5);
    auto u01 = [&] { return double(gen() >> 11) * 0x1.0p-53; };
    for (int d = 2; d <= 7; ++d) {
        // build a class-d symbol directly
        const int nb = d / 2, na = (d % 2 == 0) ? d / 2 - 1 : (d - 1) / 2;
        std::vector<cxd> den{cxd{1, 0}};
        for (int i = 0; i < nb; ++i) {
            const cxd p = std::polar(0.25 + 0.4 * u01(), 6.28 * u01());
            std::vector<cxd> next(den.size() + 1, cxd{0, 0});
            for (std::size_t k = 0; k < den.size(); ++k) {
                next[k] += den[k];
                next[k + 1] -= p * den[k];
            }
            den = next;
        }
        std::vector<cxd> num(na + 1);
        for (auto& c : num) c = std::polar(0.4 + 0.6 * u01(), 6.28 * u01());
        const FourierSymbol u = rational_to_fourier_auto(RationalSymbol(num, den));
        const SpectralData sd = singular_spectrum(u);
        CHECK(sd.rank_h + sd.rank_k == d);
    }
}

TEST_CASE("projections decompose u and are orthogonal across eigenvalues") {
    const FourierSymbol u = v4_sample();
    const SpectralData sd = singular_spectrum(u);
    const Projections p = eigen_projections(u, sd);

    Vec sum = p.u_inf;
    for (const auto& uk : p.u_k) sum += uk;
    CHECK((sum - u.coeffs()).norm() < 1e-10 * u.norm());

    Vec sum_h = Vec::Zero(u.trunc_dim());
    for (const auto& uj : p.u_j) sum_h += uj;
    CHECK((sum_h - u.coeffs()).norm() < 1e-10 * u.norm());

    for (std::size_t a = 0; a < p.u_k.size(); ++a)
        for (std::size_t b = a + 1; b < p.u_k.size(); ++b)
            CHECK(std::abs(p.u_k[a].dot(p.u_k[b])) < 1e-10 * u.norm() * u.norm());

    // w_k^K colinear to u_k^K on a generic V(4) symbol
    for (std::size_t k = 0; k < p.u_k.size(); ++k) {
        const cxd lambda = p.u_k[k].dot(p.w_k[k]) / p.u_k[k].squaredNorm();
        CHECK((p.w_k[k] - std::conj(lambda) * p.u_k[k]).norm() < 1e-10 * p.w_k[k].norm());
    }
}

TEST_CASE("u = z: u_1^K = 0, w_1^K = (1,0,...), u_inf^K = u") {
    const FourierSymbol u{vec({cxd{0, 0}, cxd{1, 0}, cxd{0, 0}})};
    const SpectralData sd = singular_spectrum(u);
    const Projections p = eigen_projections(u, sd);
    REQUIRE(p.u_k.size() == 1);
    CHECK(p.u_k[0].norm() < 1e-12);
    CHECK(std::abs(p.w_k[0][0] - 1.0) < 1e-12);
    CHECK((p.u_inf - u.coeffs()).norm() < 1e-12);
}

TEST_CASE("eigen-phase normalization K_u u_k = sigma_k e^{i psi_k} u_k") {
    const FourierSymbol u = v4_sample();
    const SpectralData sd = singular_spectrum(u);
    const Projections p = eigen_projections(u, sd);
    std::size_t gik = 0;
    for (const auto& mv : sd.merged) {
        if (mv.dim_k == 0) continue;
        if (mv.dom == Dominance::K && mv.dim_k == 1) {
            REQUIRE(mv.angle.has_value());
            const FourierSymbol uk{Vec(p.u_k[gik])};
            const Vec lhs = apply_shifted_hankel(u, uk).coeffs();
            const Vec rhs =
                std::sqrt(mv.value) * std::polar(1.0, *mv.angle) * p.u_k[gik];
            CHECK((lhs - rhs).norm() <= 1e-8 * p.u_k[gik].norm());
        }
        ++gik;
    }
}

TEST_CASE("norm formulas from the interlaced values") {
    SUBCASE("V(2): ||u_1^H||^2 = rho_1^2 - sigma_1^2") {
        RationalSymbol r({cxd{0.7, 0.3}}, {cxd{1, 0}, cxd{-0.4, -0.2}});
        const FourierSymbol u = rational_to_fourier_auto(r);
        const SpectralData sd = singular_spectrum(u);
        CHECK(norm_formula_check(u, sd) < 1e-8);
        const Projections p = eigen_projections(u, sd);
        CHECK(p.u_j[0].squaredNorm() ==
              doctest::Approx(sd.h[0].value - sd.k[0].value).epsilon(1e-10));
    }
    SUBCASE("V(4) example") {
        RationalSymbol r({cxd{0, 0}, cxd{1, 0}}, {cxd{1, 0}, cxd{-1.0, 0}, cxd{0.25, 0}});
        const FourierSymbol u = rational_to_fourier(r, 128);
        CHECK(norm_formula_check(u, singular_spectrum(u)) < 1e-8);
    }
    SUBCASE("degenerate spectrum is rejected") {
        const FourierSymbol u{vec({cxd{0, 0}, cxd{1, 0}, cxd{0, 0}})};
        CHECK_THROWS_AS((void)norm_formula_check(u, singular_spectrum(u)), DegenerateSpectrum);
    }
}

TEST_CASE("interlacement on random rational symbols, and a fabricated violation") {
    const FourierSymbol u = v4_sample();
    SpectralData sd = singular_spectrum(u);
    CHECK(interlacement_check(sd).ok);
    CHECK(interlacement_check(sd).worst_gap > 0.0);

    std::swap(sd.merged[0].dom, sd.merged[1].dom);
    sd.merged[0].dim_h = 0;
    sd.merged[0].dim_k = 1;
    CHECK_FALSE(interlacement_check(sd).ok);
}

TEST_CASE("subspace fast path agrees with the dense route") {
    // large truncation, small rank: exercises the projected SVD
    RationalSymbol r({cxd{0.2, 0.4}, cxd{0.5, -0.1}},
                     {cxd{1, 0}, cxd{-0.9, 0.3}, cxd{0.25, -0.2}});
    const FourierSymbol u = rational_to_fourier_auto(r, 512, 2048);
    REQUIRE(u.trunc_dim() >= 512);
    const SpectralData fast = singular_spectrum(u);

    const FourierSymbol small = rational_to_fourier_auto(r, 128, 2048).resized(160);
    const SpectralData dense = singular_spectrum(small);
    REQUIRE(fast.k.size() == dense.k.size());
    for (std::size_t i = 0; i < fast.k.size(); ++i)
        CHECK(fast.k[i].value == doctest::Approx(dense.k[i].value).epsilon(1e-9));
    for (std::size_t i = 0; i < fast.h.size(); ++i)
        CHECK(fast.h[i].value == doctest::Approx(dense.h[i].value).epsilon(1e-9));

    // eigenvector quality: H^2 v = lambda v through the operator action
    const Mat h2 = hankel_square(u);
    for (const auto& g : fast.h) {
        const Vec v = g.basis.col(0);
        CHECK((h2 * v - g.value * v).norm() < 1e-9 * fast.leading);
    }
}
