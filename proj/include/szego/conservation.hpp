// Conserved quantities and the generating-series machinery: Q, M, J, the
// Hamiltonian, the laws ell_k = (2Q+sigma_k^2)||u_k^K||^2 - ||w_k^K||^2 and
// their kernel analogue ell_inf, the moment functionals J_n = (H_u^n(1)|1),
// the resolvent samples J^(m)(x) = ((I-xH_u^2)^{-1} H_u^m(1) | 1) together
// with the K-side family, and the rational generating function
//     R(x) = (J_2^2 + x|J^(3)(x)|^2 - x^2 J^(4)(x)^2) / J^(0)(x)
//          = sum_k ell_k/(1-x sigma_k^2) + ell_inf,
// with F(x) = 2 J_2 - x R(x).

#ifndef SZEGO_CONSERVATION_HPP
#define SZEGO_CONSERVATION_HPP

#include <map>
#include <string>
#include <vector>

#include "szego/hankel.hpp"

namespace szego {

constexpr double kDefaultResonanceMargin = 1e-6;

double mass(const FourierSymbol& u);        // Q = sum |û(n)|^2
double momentum(const FourierSymbol& u);    // M = sum n |û(n)|^2
cxd j_factor(const FourierSymbol& u);       // J = (u | Pi(|u|^2))

struct ConservationReport {
    double Q = 0.0, M = 0.0;
    cxd J{0.0, 0.0};
    double hamiltonian = 0.0;                       // |J|^2 / 2
    std::vector<std::pair<double, double>> ells;    // (sigma_k^2, ell_k), decreasing keys
    double ell_inf = 0.0;
    double ell_inf_kernel_route = 0.0;              // ||u_inf||^2 (2Q - |(u|1)|^2)
    std::vector<std::pair<double, cxd>> xis;        // simple K-dominant values only
    double identity_residual = 0.0;  // worst of the sum rules (see check())

    double ell_sum() const;          // sum ell_k + ell_inf
    void check(double tol = 1e-9) const;   // throws InconsistentInputs
};

ConservationReport ell(const FourierSymbol& u, const SpectralData& sd,
                       const Projections& proj);

/// Closed-form (ell_1, ell_2) on V(4) from the 2x2 linear system.
std::pair<double, double> v4_closed_form_ells(double q, double j2abs,
                                              double sigma1_sq, double sigma2_sq);

/// J_1..J_nmax by repeated application of H_u to the constant symbol.
std::vector<cxd> moments(const FourierSymbol& u, int n_max);

struct SeriesSample {
    double x = 0.0;
    double j0 = 0.0;   // J^(0)(x)
    cxd j1{};          // J^(1)(x) = Z(x)
    double j2 = 0.0;   // J^(2)(x)
    cxd j3{};          // J^(3)(x)
    double j4 = 0.0;   // J^(4)(x)
    cxd z{};           // Z(x), kept explicit for the bracket lemmas
    double kk = 0.0;   // ((I-xK^2)^{-1} 1 | 1)
    cxd ki{};          // ((I-xK^2)^{-1} u | 1)
    double kp = 0.0;   // ((I-xK^2)^{-1} u | u)
    double r_val = 0.0;
    double f_val = 0.0;
};

// Shared context for sampling the series at many x: one spectral
// decomposition, resolvents applied through it.
class SeriesEvaluator {
public:
    explicit SeriesEvaluator(const FourierSymbol& u,
                             double resonance_margin = kDefaultResonanceMargin);
    SeriesEvaluator(const FourierSymbol& u, const SpectralData& sd,
                    double resonance_margin = kDefaultResonanceMargin);

    SeriesSample sample(double x) const;       // throws ResonantX
    bool resonant(double x) const;
    double f_value(double x) const;            // F(x) alone
    Vec resolve_h(double x, const Vec& v) const;   // (I - x H_u^2)^{-1} v
    Vec resolve_k(double x, const Vec& v) const;

    const FourierSymbol& symbol() const { return u_; }
    const SpectralData& spectral() const { return sd_; }

private:
    FourierSymbol u_;
    SpectralData sd_;
    double margin_;
    std::vector<Vec> hpow_;   // H_u^m(1), m = 0..4
};

SeriesSample series_sample(const FourierSymbol& u, double x);

/// 12 points in [-2/sigma_1^2, 0) u (0, 0.9/sigma_1^2], nudged off resonances.
std::vector<double> default_x_grid(const SpectralData& sd, int n = 12,
                                   double margin = kDefaultResonanceMargin);

struct IdentityReport {
    std::map<std::string, double> residuals;
    double max_residual = 0.0;
};

// Relative residuals of the resolvent identities (lien-res, KJ, KJ2, the
// K-resolvent expansion of R), the generating identity with the ell's, the
// J-bar sum over xi_k, and the two routes to F(x), sampled on the default
// x grid.
IdentityReport identity_suite(const FourierSymbol& u);

} // namespace szego

#endif
