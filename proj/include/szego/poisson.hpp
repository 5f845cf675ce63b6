// Poisson-bracket engine over the truncated Hardy-space coordinates.
//
// The symplectic form is omega(h1,h2) = Im (h1|h2). The gradient g of a real
// functional F is defined by dF(u)·h = Re (h|g); the Hamiltonian field is
// X_F = -i g, and
//     {F,G} = omega(X_F, X_G) = Im (g_F | g_G).
// Complex-valued functionals are bracketed through their real and imaginary
// parts (complex-bilinear extension), as needed by the series lemmas.

#ifndef SZEGO_POISSON_HPP
#define SZEGO_POISSON_HPP

#include <functional>
#include <string>
#include <vector>

#include "szego/conservation.hpp"

namespace szego {

constexpr double kDefaultFdStep = 1e-5;

struct Functional {
    std::string name;
    std::function<double(const FourierSymbol&)> eval;
    std::function<Vec(const FourierSymbol&)> grad;   // optional analytic gradient
    bool analytic() const { return static_cast<bool>(grad); }
};

struct ComplexFunctional {
    std::string name;
    std::function<cxd(const FourierSymbol&)> eval;
    Functional real_part() const;
    Functional imag_part() const;
};

// Central differences in the 2N real coordinates with step h0·max(1,||u||);
// analytic gradients are returned directly. Throws EvalFailure if the
// functional fails to evaluate.
Vec gradient(const Functional& f, const FourierSymbol& u, double h0 = kDefaultFdStep);

double bracket(const Functional& f, const Functional& g, const FourierSymbol& u,
               double h0 = kDefaultFdStep);

/// Complex-bilinear bracket {F,G} for complex-valued F, G.
cxd bracket(const ComplexFunctional& f, const ComplexFunctional& g, const FourierSymbol& u,
            double h0 = kDefaultFdStep);

struct BracketReport {
    std::vector<std::string> labels;
    Eigen::MatrixXd values;       // antisymmetric
    Eigen::MatrixXd scales;       // |grad F_i| |grad F_j|
    double max_normalized = 0.0;  // over asserted rows (ell_k, sigma_k^2, F-pairs)
    std::vector<std::string> informational;   // labels excluded from the max (ell_inf)
};

// All pairs among {ell_k}, {sigma_k^2} plus sampled {F(x),F(y)} pairs;
// ell_inf rows are included but informational.
BracketReport involution_report(const FourierSymbol& u, int n_f_pairs = 3,
                                double h0 = kDefaultFdStep);

// Library of standard functionals.
Functional functional_mass();
Functional functional_momentum();
Functional functional_hamiltonian();
Functional functional_sigma_sq(int k);       // k-th distinct eigenvalue of K_u^2 (1-based)
Functional functional_ell(int k);            // paired with sigma_k^2
Functional functional_ell_inf();
Functional functional_generating_f(double x);   // F(x), analytic gradient
ComplexFunctional functional_j_resolvent(int m, double x);   // J^(m)(x)
ComplexFunctional functional_z(double x);                    // Z(x)
Functional functional_abs_z_sq(double x);                    // |Z(x)|^2
Functional functional_j0(double x);                          // J^(0)(x)

} // namespace szego

#endif
