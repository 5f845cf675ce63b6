#include "szego/symbol.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace szego {

namespace {

bool all_finite(const Vec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
    }
    return true;
}

// Roots of a polynomial (lowest degree first) via the companion matrix of
// the monic reversal. Leading zero coefficients are trimmed first.
std::vector<cxd> poly_roots(const std::vector<cxd>& poly) {
    int deg = static_cast<int>(poly.size()) - 1;
    while (deg > 0 && std::abs(poly[deg]) == 0.0) --deg;
    if (deg <= 0) return {};
    Mat companion = Mat::Zero(deg, deg);
    for (int i = 0; i < deg; ++i) {
        companion(i, deg - 1) = -poly[i] / poly[deg];
        if (i + 1 < deg) companion(i + 1, i) = 1.0;
    }
    Eigen::ComplexEigenSolver<Mat> es(companion, /*computeEigenvectors=*/false);
    std::vector<cxd> roots(es.eigenvalues().data(), es.eigenvalues().data() + deg);
    return roots;
}

cxd poly_eval(const std::vector<cxd>& poly, cxd z) {
    cxd acc{0.0, 0.0};
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * z + *it;
    return acc;
}

} // namespace

FourierSymbol::FourierSymbol(Vec coeffs) : c_(std::move(coeffs)) {
    if (!all_finite(c_)) throw InvalidSymbol("non-finite Fourier coefficient");
}

FourierSymbol FourierSymbol::zeros(int n) { return FourierSymbol(Vec::Zero(n)); }

double FourierSymbol::relative_tail_mass(int k) const {
    const int n = trunc_dim();
    if (n == 0) return 0.0;
    k = std::min(k, n);
    const double total = c_.squaredNorm();
    if (total == 0.0) return 0.0;
    return c_.tail(k).squaredNorm() / total;
}

FourierSymbol FourierSymbol::resized(int n) const {
    Vec out = Vec::Zero(n);
    out.head(std::min<Eigen::Index>(n, c_.size())) = c_.head(std::min<Eigen::Index>(n, c_.size()));
    return FourierSymbol(std::move(out));
}

RationalSymbol::RationalSymbol(std::vector<cxd> a, std::vector<cxd> b)
    : num(std::move(a)), den(std::move(b)) {
    if (den.empty()) den = {cxd{1.0, 0.0}};
    if (num.empty()) num = {cxd{0.0, 0.0}};
    // d = 2N when deg B = N > deg A; d = 2N+1 when deg A = N >= deg B.
    int da = deg_num(), db = deg_den();
    while (da > 0 && std::abs(num[da]) == 0.0) --da;
    while (db > 0 && std::abs(den[db]) == 0.0) --db;
    num.resize(da + 1);
    den.resize(db + 1);
    if (da == 0 && std::abs(num[0]) == 0.0)
        class_d = 0;   // zero symbol
    else
        class_d = (db > da) ? 2 * db : 2 * da + 1;
    validate();
}

void RationalSymbol::validate() const {
    if (den.empty() || std::abs(den[0] - cxd{1.0, 0.0}) > 1e-12)
        throw InvalidSymbol("denominator must satisfy B(0)=1");
    for (const auto& c : num)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw InvalidSymbol("non-finite numerator coefficient");
    const auto roots = poly_roots(den);
    for (const auto& z : roots) {
        if (std::abs(z) <= 1.0 + kRootMargin)
            throw PoleInsideDisc("root of B at |z|=" + std::to_string(std::abs(z)));
        if (std::abs(poly_eval(num, z)) < 1e-9)
            throw InvalidSymbol("A and B share a root (not coprime)");
    }
}

std::vector<cxd> RationalSymbol::poles() const {
    auto roots = poly_roots(den);
    std::vector<cxd> ps;
    ps.reserve(roots.size());
    for (const auto& z : roots) ps.push_back(1.0 / z);
    std::sort(ps.begin(), ps.end(),
              [](cxd a, cxd b) { return std::abs(a) > std::abs(b); });
    return ps;
}

FourierSymbol rational_to_fourier(const RationalSymbol& r, int n, double tail_tol) {
    r.validate();
    if (n < r.deg_num() + 1) throw InvalidSymbol("truncation below numerator degree");
    Vec u = Vec::Zero(n);
    const int db = r.deg_den();
    for (int k = 0; k < n; ++k) {
        cxd s = (k <= r.deg_num()) ? r.num[k] : cxd{0.0, 0.0};
        for (int m = 1; m <= std::min(k, db); ++m) s -= r.den[m] * u[k - m];
        u[k] = s;
    }
    FourierSymbol out(std::move(u));
    if (out.relative_tail_mass() > tail_tol)
        throw TailNotResolved("tail mass " + std::to_string(out.relative_tail_mass()) +
                              " at N=" + std::to_string(n));
    return out;
}

FourierSymbol rational_to_fourier_auto(const RationalSymbol& r, int n0, int nmax,
                                       double tail_tol) {
    for (int n = n0; n <= nmax; n *= 2) {
        try {
            return rational_to_fourier(r, n, tail_tol);
        } catch (const TailNotResolved&) {
            if (2 * n > nmax) throw;
        }
    }
    throw TailNotResolved("pole too close to the circle for N <= " + std::to_string(nmax));
}

FourierSymbol szego_project_product(const FourierSymbol& u, const FourierSymbol& v) {
    if (u.trunc_dim() != v.trunc_dim())
        throw DimensionMismatch("szego_project_product: " + std::to_string(u.trunc_dim()) +
                                " vs " + std::to_string(v.trunc_dim()));
    const int n = u.trunc_dim();
    Vec c(n);
    for (int i = 0; i < n; ++i)
        c[i] = u.coeffs().tail(n - i).dot(v.coeffs().head(n - i));
    // Eigen's dot conjugates its *first* argument: tail(u).dot(head(v)) is
    // sum conj(û(i+m)) v̂(m), so conjugate to land on sum û(i+m) conj(v̂(m)).
    c = c.conjugate();
    return FourierSymbol(std::move(c));
}

cxd inner(const FourierSymbol& u, const FourierSymbol& v) {
    if (u.trunc_dim() != v.trunc_dim())
        throw DimensionMismatch("inner: " + std::to_string(u.trunc_dim()) + " vs " +
                                std::to_string(v.trunc_dim()));
    return v.coeffs().dot(u.coeffs());   // dot conjugates v: sum û conj(v̂)
}

double sobolev_norm_sq(const FourierSymbol& u, SobolevIndex s) {
    double acc = 0.0;
    for (int n = 0; n < u.trunc_dim(); ++n) {
        const double w = std::pow(1.0 + double(n) * double(n), s.s);
        acc += w * std::norm(u.coeff(n));
    }
    return acc;
}

FourierSymbol analytic_product(const FourierSymbol& u, const FourierSymbol& v) {
    if (u.trunc_dim() != v.trunc_dim())
        throw DimensionMismatch("analytic_product");
    const int n = u.trunc_dim();
    Vec c = Vec::Zero(n);
    for (int i = 0; i < n; ++i) {
        cxd acc{0.0, 0.0};
        for (int j = 0; j <= i; ++j) acc += u.coeff(j) * v.coeff(i - j);
        c[i] = acc;
    }
    return FourierSymbol(std::move(c));
}

RationalSymbol fit_rational(const FourierSymbol& u, int d) {
    if (d < 1) throw InvalidSymbol("fit_rational: class must be >= 1");
    const int nb = d / 2;                              // deg B
    const int na = (d % 2 == 0) ? d / 2 - 1 : (d - 1) / 2;   // max deg A
    const int rank_h = (d + 1) / 2;  // expected numerical rank of the Hankel matrix
    const int n = u.trunc_dim();
    if (n < 2 * nb + 9 + na) throw InvalidSymbol("fit_rational: truncation too short");

    // Numerical rank of the Hankel coefficient matrix at cutoff 1e-10 s_max.
    const int m = std::min(n, std::max(2 * rank_h + 8, 24));
    Mat hank(m, m);
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l) hank(j, l) = u.coeff(j + l);
    Eigen::JacobiSVD<Mat> svd(hank);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > 1e-10 * sv[0]) ++rank;
    if (sv[0] == 0.0 || rank != rank_h)
        throw RankMismatch("Hankel rank " + std::to_string(rank) + ", expected " +
                           std::to_string(rank_h) + " for class " + std::to_string(d));

    // Least squares for B on the recurrence rows nb..2nb+8:
    // sum_{m=0..nb} b_m û(k-m) = 0 with b_0 = 1.
    std::vector<cxd> b(nb + 1, cxd{0.0, 0.0});
    b[0] = 1.0;
    if (nb > 0) {
        const int rows = nb + 9;
        Mat a(rows, nb);
        Vec rhs(rows);
        for (int i = 0; i < rows; ++i) {
            const int k = nb + i;
            for (int mm = 1; mm <= nb; ++mm) a(i, mm - 1) = u.coeff(k - mm);
            rhs[i] = -u.coeff(k);
        }
        Eigen::JacobiSVD<Mat> ls(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
        ls.setThreshold(1e-10);
        Vec bv = ls.solve(rhs);
        for (int mm = 1; mm <= nb; ++mm) b[mm] = bv[mm - 1];
    }

    // A = leading block of conv(B, û).
    std::vector<cxd> a(na + 1, cxd{0.0, 0.0});
    for (int k = 0; k <= na; ++k) {
        cxd acc{0.0, 0.0};
        for (int mm = 0; mm <= std::min(k, nb); ++mm) acc += b[mm] * u.coeff(k - mm);
        a[k] = acc;
    }

    try {
        return RationalSymbol(std::move(a), std::move(b));
    } catch (const PoleInsideDisc&) {
        throw;
    } catch (const InvalidSymbol& e) {
        throw RankMismatch(std::string("recovered symbol invalid: ") + e.what());
    }
}

} // namespace szego
