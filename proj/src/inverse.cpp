#include "szego/inverse.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>

namespace szego {

void InverseSpectralInput::validate() const {
    if (s.empty() || s.size() % 2 != 0 || s.size() != angles.size())
        throw InvalidSymbol("inverse data needs 2q values with matching angles");
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] - s[i + 1] < 1e-10)
            throw InvalidSymbol("singular values must decrease strictly (margin 1e-10)");
    if (s.back() < 0.0) throw InvalidSymbol("singular values must be nonnegative");
}

Mat c_matrix(const InverseSpectralInput& inp, cxd z) {
    const int q = inp.q();
    Mat c(q, q);
    for (int j = 0; j < q; ++j) {
        const double sj = inp.s[2 * j];
        const cxd pj = std::polar(1.0, inp.angles[2 * j]);
        for (int k = 0; k < q; ++k) {
            const double sk = inp.s[2 * k + 1];
            const cxd pk = std::polar(1.0, inp.angles[2 * k + 1]);
            c(j, k) = (sj - z * sk * pj * pk) / (sj * sj - sk * sk);
        }
    }
    return c;
}

double c_matrix_cond(const InverseSpectralInput& inp, cxd z) {
    Eigen::JacobiSVD<Mat> svd(c_matrix(inp, z));
    const auto& sv = svd.singularValues();
    if (sv[sv.size() - 1] <= 0.0) return std::numeric_limits<double>::infinity();
    return sv[0] / sv[sv.size() - 1];
}

namespace {

// u(z) summed over the inverse of C(z)
cxd evaluate_at(const InverseSpectralInput& inp, cxd z) {
    const int q = inp.q();
    Mat c = c_matrix(inp, z);
    Eigen::PartialPivLU<Mat> lu(c);
    Vec psi_h(q);
    for (int k = 0; k < q; ++k) psi_h[k] = std::polar(1.0, inp.angles[2 * k]);
    // sum_j [C^{-1}]_{jk} Psi_{2k-1} = 1^T C^{-1} psi_h
    Vec row = lu.solve(psi_h);
    return row.sum();
}

} // namespace

FourierSymbol reconstruct(const InverseSpectralInput& inp, int n, double rho_eval,
                          double tail_tol) {
    inp.validate();
    {
        // invertibility diagnostic at a few sample points
        const cxd probes[] = {cxd{0.0, 0.0}, cxd{0.5, 0.0}, cxd{0.0, -0.7}, cxd{0.6, 0.6}};
        for (cxd z : probes)
            if (c_matrix_cond(inp, z) > 1e12)
                throw NumericalSingularity("C(z) condition number beyond 1e12");
    }

    const double two_pi = 2.0 * std::numbers::pi;
    for (int m = std::max(n, 32); m <= 4 * kMaxTruncDim; m *= 2) {
        std::vector<cxd> vals(m);
        for (int i = 0; i < m; ++i)
            vals[i] = evaluate_at(inp, std::polar(rho_eval, two_pi * i / m));
        Vec coeff = Vec::Zero(m);
        for (int k = 0; k < m; ++k) {
            cxd acc{0.0, 0.0};
            for (int i = 0; i < m; ++i)
                acc += vals[i] * std::polar(1.0, -two_pi * k * i / m);
            coeff[k] = acc / (double(m) * std::pow(rho_eval, k));
        }
        FourierSymbol out{std::move(coeff)};
        if (out.relative_tail_mass() <= tail_tol) {
            const int d_even = 2 * inp.q();
            const int d = (inp.s.back() == 0.0) ? d_even - 1 : d_even;
            fit_rational(out, d);   // rank test; throws RankMismatch on failure
            return out.trunc_dim() > n ? out : out.resized(n);
        }
    }
    throw TailNotResolved("reconstruction tail above tolerance at max sampling");
}

InverseSpectralInput spectral_to_input(const SpectralData& sd) {
    InverseSpectralInput inp;
    for (const auto& mv : sd.merged) {
        if (mv.dim_h + mv.dim_k != 1)
            throw UnsupportedMultiplicity("inverse input requires simple singular values");
        if (!mv.angle)
            throw DegenerateSpectrum("missing eigen-phase for a simple singular value");
        inp.s.push_back(std::sqrt(mv.value));
        inp.angles.push_back(mv.dom == Dominance::H ? -*mv.angle : *mv.angle);
    }
    if (inp.s.size() % 2 == 1) {
        // odd class: the kernel contributes s_{2q} = 0 with a free angle
        inp.s.push_back(0.0);
        inp.angles.push_back(0.0);
    }
    return inp;
}

double roundtrip(const FourierSymbol& u) {
    const SpectralData sd = singular_spectrum(u);
    const InverseSpectralInput inp = spectral_to_input(sd);
    const FourierSymbol rec = reconstruct(inp, u.trunc_dim());
    const int n = std::min(rec.trunc_dim(), u.trunc_dim());
    const double scale = u.norm();
    return (rec.coeffs().head(n) - u.coeffs().head(n)).norm() / std::max(scale, 1e-300);
}

} // namespace szego
