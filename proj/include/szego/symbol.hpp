// Hardy-space symbols: truncated Fourier representation, rational (A/B)
// representation, conversions, inner products and Sobolev norms.
//
// Conventions used throughout the library:
//   - u is identified with its nonnegative-frequency coefficients
//     (û(0),...,û(N-1)); all products are dense truncated convolutions.
//   - (f|g) := sum_n f_n conj(g_n), so (e^{inx}|e^{imx}) = delta_{nm}.
//   - Pi is the projection onto nonnegative modes; Pi(u vbar) has
//     coefficients c_n = sum_m û(n+m) conj(v̂(m)).

#ifndef SZEGO_SYMBOL_HPP
#define SZEGO_SYMBOL_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "szego/errors.hpp"

namespace szego {

using cxd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

constexpr double kDefaultTailTol = 1e-24;   // on squared mass
constexpr double kRootMargin = 1e-9;        // poles must satisfy |root| > 1 + margin
constexpr int kDefaultTruncDim = 128;
constexpr int kMaxTruncDim = 2048;

/// Truncated nonnegative-frequency coefficient vector of a symbol u in L^2_+.
class FourierSymbol {
public:
    FourierSymbol() = default;
    explicit FourierSymbol(Vec coeffs);                  // throws InvalidSymbol on NaN/Inf
    static FourierSymbol zeros(int n);

    int trunc_dim() const { return static_cast<int>(c_.size()); }
    const Vec& coeffs() const { return c_; }
    cxd coeff(int n) const { return n < trunc_dim() ? c_[n] : cxd{0.0, 0.0}; }

    double norm() const { return c_.norm(); }
    bool is_zero(double tol = 0.0) const { return c_.norm() <= tol; }

    /// Relative mass of the last `k` coefficients; the truncation is
    /// considered resolved when this is <= tail_tol.
    double relative_tail_mass(int k = 8) const;

    FourierSymbol resized(int n) const;                  // truncate or zero-pad

private:
    Vec c_;
};

/// Element of V(d): u = A/B with A,B coprime, B(0)=1, no B-root in the
/// closed unit disc. Coefficients are stored lowest degree first.
struct RationalSymbol {
    std::vector<cxd> num;   // A
    std::vector<cxd> den;   // B, den[0] == 1
    int class_d = 0;

    RationalSymbol() = default;
    RationalSymbol(std::vector<cxd> a, std::vector<cxd> b);   // infers class_d, validates

    void validate() const;   // throws PoleInsideDisc / InvalidSymbol
    int deg_num() const { return static_cast<int>(num.size()) - 1; }
    int deg_den() const { return static_cast<int>(den.size()) - 1; }
    std::vector<cxd> poles() const;   // reciprocals of the roots of B, all inside the disc
};

struct SobolevIndex {
    double s = 0.0;
    explicit SobolevIndex(double s_) : s(s_) {
        if (s < 0.0) throw InvalidSymbol("Sobolev exponent must be >= 0");
    }
};

// Power-series expansion of A/B by the linear recurrence
// û(n) = a_n - sum_m b_m û(n-m). Throws TailNotResolved if the relative
// tail mass at this N exceeds tail_tol.
FourierSymbol rational_to_fourier(const RationalSymbol& r, int n,
                                  double tail_tol = kDefaultTailTol);

// Same, with N starting at n0 and doubled (up to nmax) until the tail resolves.
FourierSymbol rational_to_fourier_auto(const RationalSymbol& r,
                                       int n0 = kDefaultTruncDim,
                                       int nmax = kMaxTruncDim,
                                       double tail_tol = kDefaultTailTol);

/// Pi(u vbar): c_n = sum_m û(n+m) conj(v̂(m)). With v = u this is Pi(|u|^2).
FourierSymbol szego_project_product(const FourierSymbol& u, const FourierSymbol& v);

/// (u|v) = sum û(n) conj(v̂(n)).
cxd inner(const FourierSymbol& u, const FourierSymbol& v);

/// sum (1+n^2)^s |û(n)|^2.
double sobolev_norm_sq(const FourierSymbol& u, SobolevIndex s);

/// Truncated analytic product u·v (plain convolution, modes >= N dropped).
FourierSymbol analytic_product(const FourierSymbol& u, const FourierSymbol& v);

// Kronecker-type linear prediction: recover (A,B) of class d from û.
// B of degree floor(d/2) is the least-squares annihilator of the coefficient
// recurrence (rows N..2N+8), A the leading block of conv(B,û). The Hankel
// coefficient matrix must have numerical rank ceil(d/2) at the SVD cutoff
// 1e-10·s_max (RankMismatch otherwise); recovered poles must lie inside the
// disc with margin (PoleInsideDisc otherwise).
RationalSymbol fit_rational(const FourierSymbol& u, int d);

} // namespace szego

#endif
