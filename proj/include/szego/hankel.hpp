// Hankel and shifted Hankel operators of a symbol u, and their spectral
// analysis.
//
// H_u is the antilinear map h -> Pi(u hbar); on coefficients
// (H_u h)_j = sum_m û(j+m) conj(ĥ(m)), i.e. the complex-symmetric Hankel
// matrix applied to conj(h). K_u = H_u S = H_{S*u} shifts the symbol by one.
// The squares H_u^2, K_u^2 are Hermitian PSD with
//     K_u^2 = H_u^2 - (·|u) u.
// Their distinct eigenvalues rho_j^2 (H side) and sigma_k^2 (K side)
// interlace, and each merged singular value is either H-dominant
// (dim E = dim F + 1) or K-dominant (dim F = dim E + 1).
//
// Eigen-phases of simple singular values are defined by
//     H_u(u_j^H) = rho_j e^{i phi_j} u_j^H,   K_u(u_k^K) = sigma_k e^{i psi_k} u_k^K,
// where u_j^H / u_k^K are the projections of u onto the eigenspaces. The
// degree-0 Blaschke product attached to a simple K-dominant sigma_k is
// e^{i psi_k}; for a simple H-dominant rho_j it is e^{-i phi_j}.

#ifndef SZEGO_HANKEL_HPP
#define SZEGO_HANKEL_HPP

#include <optional>
#include <vector>

#include "szego/symbol.hpp"

namespace szego {

constexpr double kDefaultGroupTol = 1e-8;
constexpr double kDefaultRankFloor = 1e-20;   // on eigenvalues of the squares

Mat hankel_matrix(const FourierSymbol& u);          // A_{jm} = û(j+m)
Mat hankel_square(const FourierSymbol& u);          // matrix of H_u^2
Mat shifted_square(const FourierSymbol& u);         // matrix of K_u^2

FourierSymbol apply_hankel(const FourierSymbol& u, const FourierSymbol& h);
FourierSymbol apply_shifted_hankel(const FourierSymbol& u, const FourierSymbol& h);

enum class Dominance { H, K };

/// One eigenvalue group of H_u^2 or K_u^2 (value, multiplicity, orthonormal basis).
struct EigenGroup {
    double value = 0.0;
    int mult = 0;
    Mat basis;   // N x mult
};

/// One entry of the merged decreasing singular-value list.
struct MergedValue {
    double value = 0.0;       // squared singular value
    int dim_h = 0;            // dim E_u(s)
    int dim_k = 0;            // dim F_u(s)
    Dominance dom = Dominance::H;
    std::optional<double> angle;   // phi (H-dominant) or psi (K-dominant), simple values only
};

struct SpectralData {
    std::vector<EigenGroup> h;        // decreasing, eigenvalues of H_u^2 above floor
    std::vector<EigenGroup> k;        // same for K_u^2
    std::vector<MergedValue> merged;  // decreasing union with dominance flags
    double leading = 0.0;             // largest eigenvalue across both squares
    int rank_h = 0, rank_k = 0;
    int kernel_dim_hint = 0;          // trunc_dim - rank_k
    double group_tol = kDefaultGroupTol;

    std::vector<double> h_values() const;
    std::vector<double> k_values() const;
};

// Eigendecomposition of both squares (via SVD of the coefficient Hankel
// matrices), grouping, dominance classification and eigen-phases.
// Throws ZeroSymbol, and AmbiguousGrouping when a spectral gap falls in the
// (group_tol, 10 group_tol) gray zone or a merged value has |dimE-dimF| != 1.
SpectralData singular_spectrum(const FourierSymbol& u,
                               double group_tol = kDefaultGroupTol,
                               double rank_floor = kDefaultRankFloor);

/// Projections of u and Pi(|u|^2) onto the eigenspaces.
struct Projections {
    std::vector<Vec> u_k;   // per K-group: projection of u onto F_u(sigma_k)
    std::vector<Vec> w_k;   // per K-group: projection of Pi(|u|^2)
    std::vector<Vec> u_j;   // per H-group: projection of u onto E_u(rho_j)
    Vec u_inf;              // u - sum u_k  (kernel part, by subtraction)
    Vec w_inf;              // Pi(|u|^2) - sum w_k
};

Projections eigen_projections(const FourierSymbol& u, const SpectralData& sd);

// Closed-form norms ||u_j^H||^2, ||u_k^K||^2 as interlacement products
// against the projector route; returns the max relative residual.
// Requires a simple spectrum (DegenerateSpectrum otherwise).
double norm_formula_check(const FourierSymbol& u, const SpectralData& sd);

struct InterlacementResult {
    bool ok = false;
    double worst_gap = 0.0;   // smallest signed gap in the merged chain
};

InterlacementResult interlacement_check(const SpectralData& sd);

} // namespace szego

#endif
