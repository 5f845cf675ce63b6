// Inverse spectral reconstruction for simple (degree-0 Blaschke) data:
// from interlaced singular values s_1 > s_2 > ... > s_{2q} >= 0 and angles
// psi_1..psi_{2q}, build
//     c_{j,k}(z) = (s_{2j-1} - z s_{2k} e^{i(psi_{2j-1}+psi_{2k})})
//                  / (s_{2j-1}^2 - s_{2k}^2)
// and recover u(z) = sum_{j,k} [C(z)^{-1}]_{j,k} e^{i psi_{2k-1}}.
//
// Odd entries are the H-side Blaschke angles (-phi_j in terms of the
// eigen-phase H_u u_j^H = rho_j e^{i phi_j} u_j^H), even entries the K-side
// ones (+psi_k).

#ifndef SZEGO_INVERSE_HPP
#define SZEGO_INVERSE_HPP

#include "szego/hankel.hpp"

namespace szego {

struct InverseSpectralInput {
    std::vector<double> s;        // strictly decreasing, s.back() >= 0, even count
    std::vector<double> angles;   // same length

    void validate() const;        // throws InvalidSymbol
    int q() const { return static_cast<int>(s.size()) / 2; }
};

/// C(z) for |z| < 1 (and, for valid data, on the closed disc).
Mat c_matrix(const InverseSpectralInput& inp, cxd z);

/// Condition number diagnostic; NumericalSingularity beyond 1e12 is the caller's call.
double c_matrix_cond(const InverseSpectralInput& inp, cxd z);

// Evaluate the reconstruction on a circle of radius rho_eval and recover
// coefficients by the scaled DFT, doubling the sample count until the tail
// resolves. The result must pass the V(2q) (or V(2q-1) when s_{2q}=0) rank
// test. Throws TailNotResolved / RankMismatch / NumericalSingularity.
FourierSymbol reconstruct(const InverseSpectralInput& inp, int n = kDefaultTruncDim,
                          double rho_eval = 1.0, double tail_tol = kDefaultTailTol);

// Extract (s, angles) from a simple spectrum; UnsupportedMultiplicity when
// any merged value is not simple, DegenerateSpectrum when angles are missing.
InverseSpectralInput spectral_to_input(const SpectralData& sd);

/// Full pipeline residual: extract, reconstruct, compare in relative L^2.
double roundtrip(const FourierSymbol& u);

} // namespace szego

#endif
