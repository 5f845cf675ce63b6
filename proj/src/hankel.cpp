#include "szego/hankel.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace szego {

namespace {

Vec shifted_coeffs(const FourierSymbol& u) {
    const int n = u.trunc_dim();
    Vec s = Vec::Zero(n);
    if (n > 1) s.head(n - 1) = u.coeffs().tail(n - 1);
    return s;
}

struct RawSpectrum {
    std::vector<double> values;   // eigenvalues of A A^H (squared singular values), desc
    Mat vectors;                  // N x r orthonormal
    double sv_leading = 0.0;      // largest singular value of A
};

Mat dense_hankel(const Vec& c) {
    const int n = static_cast<int>(c.size());
    Mat a = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j)
        a.row(j).head(n - j) = c.tail(n - j).transpose();
    return a;
}

RawSpectrum keep_above(const Eigen::VectorXd& sv, const Mat& u, double sv_floor_rel) {
    RawSpectrum out;
    out.sv_leading = sv.size() ? sv[0] : 0.0;
    const double cut = sv_floor_rel * out.sv_leading;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] > cut && sv[i] > 0.0) ++r;
    out.values.resize(r);
    out.vectors = u.leftCols(r);
    for (int i = 0; i < r; ++i) out.values[i] = sv[i] * sv[i];
    return out;
}

RawSpectrum dense_spectrum(const Vec& c, double sv_floor_rel) {
    const Mat a = dense_hankel(c);
    if (c.size() <= 160) {
        Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU);
        return keep_above(svd.singularValues(), svd.matrixU(), sv_floor_rel);
    }
    Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeThinU);
    return keep_above(svd.singularValues(), svd.matrixU(), sv_floor_rel);
}

// Rank-revealing subspace route for large truncations: the columns of the
// Hankel matrix are the shifts S*^l of the coefficient vector, so for a
// finite-rank symbol a small leading block already spans the column space.
// Project, SVD the small block, and verify the capture residual on probe
// columns; any failure falls back to the dense SVD.
bool subspace_spectrum(const Vec& c, double sv_floor_rel, RawSpectrum& out) {
    const int n = static_cast<int>(c.size());
    Vec padded = Vec::Zero(2 * n);
    padded.head(n) = c;
    const double cnorm = c.norm();
    if (cnorm == 0.0) return false;

    for (int k = 16; k <= std::min(n / 2, 96); k *= 2) {
        Mat cols(n, k);
        for (int l = 0; l < k; ++l) cols.col(l) = padded.segment(l, n);
        Eigen::HouseholderQR<Mat> qr(cols);
        Mat q = qr.householderQ() * Mat::Identity(n, k);

        Mat b(k, n);
        for (int m = 0; m < n; ++m) b.col(m) = q.adjoint() * padded.segment(m, n);

        Eigen::JacobiSVD<Mat> svd(b.adjoint(), Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        const double s0 = sv[0];

        // headroom: the trailing subspace directions must be spectrally empty
        int above = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv[i] > sv_floor_rel * s0) ++above;
        if (above > k - 4) continue;

        // capture residual on probe columns not used to build the basis
        const int probes[] = {k, k + 1, k + 2, k + 7, n / 3, 2 * n / 3, n - 2};
        double worst = 0.0;
        for (int l : probes) {
            if (l < 0 || l >= n) continue;
            Vec col = padded.segment(l, n);
            worst = std::max(worst, (col - q * (q.adjoint() * col)).norm());
        }
        if (worst > 1e-12 * s0) continue;

        Mat vecs = q * svd.matrixV();
        out = keep_above(sv, vecs, sv_floor_rel);
        return true;
    }
    return false;
}

RawSpectrum hankel_spectrum(const Vec& c, double sv_floor_rel) {
    if (c.size() >= 256) {
        RawSpectrum out;
        if (subspace_spectrum(c, sv_floor_rel, out)) return out;
    }
    return dense_spectrum(c, sv_floor_rel);
}

std::vector<EigenGroup> group_values(const RawSpectrum& raw, double group_tol,
                                     const char* side) {
    std::vector<EigenGroup> groups;
    const int r = static_cast<int>(raw.values.size());
    int i = 0;
    while (i < r) {
        int j = i;
        while (j + 1 < r) {
            const double gap = (raw.values[i] - raw.values[j + 1]) / raw.values[i];
            if (gap < group_tol) {
                ++j;
            } else {
                if (gap < 10.0 * group_tol)
                    throw AmbiguousGrouping(std::string(side) + " gap " + std::to_string(gap) +
                                            " inside the gray zone");
                break;
            }
        }
        EigenGroup g;
        g.mult = j - i + 1;
        double mean = 0.0;
        for (int t = i; t <= j; ++t) mean += raw.values[t];
        g.value = mean / g.mult;
        g.basis = raw.vectors.middleCols(i, g.mult);
        groups.push_back(std::move(g));
        i = j + 1;
    }
    return groups;
}

Vec project_onto(const Mat& basis, const Vec& v) { return basis * (basis.adjoint() * v); }

} // namespace

Mat hankel_matrix(const FourierSymbol& u) { return dense_hankel(u.coeffs()); }

Mat hankel_square(const FourierSymbol& u) {
    const Mat a = dense_hankel(u.coeffs());
    return a * a.adjoint();
}

Mat shifted_square(const FourierSymbol& u) {
    const Mat a = dense_hankel(shifted_coeffs(u));
    return a * a.adjoint();
}

FourierSymbol apply_hankel(const FourierSymbol& u, const FourierSymbol& h) {
    if (u.trunc_dim() != h.trunc_dim()) throw DimensionMismatch("apply_hankel");
    const int n = u.trunc_dim();
    Vec out(n);
    const Vec hc = h.coeffs().conjugate();
    for (int j = 0; j < n; ++j)
        out[j] = u.coeffs().tail(n - j).transpose() * hc.head(n - j);
    return FourierSymbol(std::move(out));
}

FourierSymbol apply_shifted_hankel(const FourierSymbol& u, const FourierSymbol& h) {
    return apply_hankel(FourierSymbol(shifted_coeffs(u)), h);
}

std::vector<double> SpectralData::h_values() const {
    std::vector<double> v;
    v.reserve(h.size());
    for (const auto& g : h) v.push_back(g.value);
    return v;
}

std::vector<double> SpectralData::k_values() const {
    std::vector<double> v;
    v.reserve(k.size());
    for (const auto& g : k) v.push_back(g.value);
    return v;
}

SpectralData singular_spectrum(const FourierSymbol& u, double group_tol, double rank_floor) {
    if (u.is_zero()) throw ZeroSymbol("singular_spectrum of the zero symbol");
    const double sv_floor_rel = std::sqrt(rank_floor);

    SpectralData sd;
    sd.group_tol = group_tol;
    RawSpectrum raw_h = hankel_spectrum(u.coeffs(), sv_floor_rel);
    RawSpectrum raw_k = hankel_spectrum(shifted_coeffs(u), sv_floor_rel);
    // a common floor, referenced to the larger operator
    const double lead_sv = std::max(raw_h.sv_leading, raw_k.sv_leading);
    auto refloor = [&](RawSpectrum& raw) {
        const double cut = rank_floor * lead_sv * lead_sv;
        int r = 0;
        while (r < static_cast<int>(raw.values.size()) && raw.values[r] > cut) ++r;
        raw.values.resize(r);
        raw.vectors = raw.vectors.leftCols(r).eval();
    };
    refloor(raw_h);
    refloor(raw_k);

    sd.h = group_values(raw_h, group_tol, "H");
    sd.k = group_values(raw_k, group_tol, "K");
    sd.leading = lead_sv * lead_sv;
    for (const auto& g : sd.h) sd.rank_h += g.mult;
    for (const auto& g : sd.k) sd.rank_k += g.mult;
    sd.kernel_dim_hint = u.trunc_dim() - sd.rank_k;

    // merge the two decreasing lists, deciding dominance by dimension count
    std::size_t ih = 0, ik = 0;
    while (ih < sd.h.size() || ik < sd.k.size()) {
        MergedValue mv;
        const bool have_h = ih < sd.h.size();
        const bool have_k = ik < sd.k.size();
        if (have_h && have_k) {
            const double a = sd.h[ih].value, b = sd.k[ik].value;
            const double diff = std::abs(a - b) / std::max(a, b);
            if (diff < group_tol) {
                mv.value = 0.5 * (a + b);
                mv.dim_h = sd.h[ih].mult;
                mv.dim_k = sd.k[ik].mult;
                ++ih, ++ik;
            } else if (diff < 10.0 * group_tol) {
                throw AmbiguousGrouping("H/K value separation " + std::to_string(diff) +
                                        " inside the gray zone");
            } else if (a > b) {
                mv.value = a;
                mv.dim_h = sd.h[ih++].mult;
            } else {
                mv.value = b;
                mv.dim_k = sd.k[ik++].mult;
            }
        } else if (have_h) {
            mv.value = sd.h[ih].value;
            mv.dim_h = sd.h[ih++].mult;
        } else {
            mv.value = sd.k[ik].value;
            mv.dim_k = sd.k[ik++].mult;
        }
        if (std::abs(mv.dim_h - mv.dim_k) != 1)
            throw AmbiguousGrouping("merged value " + std::to_string(mv.value) +
                                    " has dim E = " + std::to_string(mv.dim_h) +
                                    ", dim F = " + std::to_string(mv.dim_k));
        mv.dom = (mv.dim_h > mv.dim_k) ? Dominance::H : Dominance::K;
        sd.merged.push_back(mv);
    }

    // eigen-phases of simple dominant values
    const double un = u.norm();
    std::size_t gih = 0, gik = 0;
    for (auto& mv : sd.merged) {
        if (mv.dom == Dominance::H) {
            const auto& g = sd.h[gih];
            if (g.mult == 1) {
                Vec uj = project_onto(g.basis, u.coeffs());
                if (uj.norm() > 1e-10 * un) {
                    FourierSymbol ujs{Vec(uj)};
                    mv.angle = std::arg(inner(apply_hankel(u, ujs), ujs));
                }
            }
        } else {
            const auto& g = sd.k[gik];
            if (g.mult == 1) {
                Vec uk = project_onto(g.basis, u.coeffs());
                if (uk.norm() > 1e-10 * un) {
                    FourierSymbol uks{Vec(uk)};
                    mv.angle = std::arg(inner(apply_shifted_hankel(u, uks), uks));
                }
            }
        }
        if (mv.dim_h > 0) ++gih;
        if (mv.dim_k > 0) ++gik;
    }
    return sd;
}

Projections eigen_projections(const FourierSymbol& u, const SpectralData& sd) {
    Projections p;
    const Vec& uc = u.coeffs();
    const Vec w = szego_project_product(u, u).coeffs();
    Vec uk_sum = Vec::Zero(uc.size());
    Vec wk_sum = Vec::Zero(uc.size());
    for (const auto& g : sd.k) {
        p.u_k.push_back(project_onto(g.basis, uc));
        p.w_k.push_back(project_onto(g.basis, w));
        uk_sum += p.u_k.back();
        wk_sum += p.w_k.back();
    }
    for (const auto& g : sd.h) p.u_j.push_back(project_onto(g.basis, uc));
    p.u_inf = uc - uk_sum;
    p.w_inf = w - wk_sum;
    return p;
}

double norm_formula_check(const FourierSymbol& u, const SpectralData& sd) {
    for (const auto& mv : sd.merged)
        if (mv.dim_h + mv.dim_k > 1)
            throw DegenerateSpectrum("norm_formula_check needs a simple spectrum");

    // Sigma_u^H with the K-dominant value sigma(s) just below each
    std::vector<double> rho, sig_of_rho;
    for (std::size_t i = 0; i < sd.merged.size(); ++i) {
        if (sd.merged[i].dom != Dominance::H) continue;
        rho.push_back(sd.merged[i].value);
        sig_of_rho.push_back(i + 1 < sd.merged.size() && sd.merged[i + 1].dom == Dominance::K
                                 ? sd.merged[i + 1].value
                                 : 0.0);
    }

    Projections p = eigen_projections(u, sd);
    double worst = 0.0;
    std::size_t kseen = 0;
    for (std::size_t j = 0; j < rho.size(); ++j) {
        const double s2 = rho[j], sg2 = sig_of_rho[j];
        double uh = (s2 - sg2), uk = (s2 - sg2);
        for (std::size_t l = 0; l < rho.size(); ++l) {
            if (l == j) continue;
            uh *= (s2 - sig_of_rho[l]) / (s2 - rho[l]);
            uk *= (sg2 - rho[l]) / (sg2 - sig_of_rho[l]);
        }
        const double uh_num = p.u_j[j].squaredNorm();
        worst = std::max(worst, std::abs(uh - uh_num) / std::max(uh_num, 1e-300));
        if (sg2 > 0.0) {
            const double uk_num = p.u_k[kseen].squaredNorm();
            worst = std::max(worst, std::abs(uk - uk_num) / std::max(uk_num, 1e-300));
            ++kseen;
        }
    }
    return worst;
}

InterlacementResult interlacement_check(const SpectralData& sd) {
    InterlacementResult res;
    res.ok = true;
    res.worst_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sd.merged.size(); ++i) {
        const Dominance expect = (i % 2 == 0) ? Dominance::H : Dominance::K;
        if (sd.merged[i].dom != expect) res.ok = false;
        if (i + 1 < sd.merged.size()) {
            const double gap = sd.merged[i].value - sd.merged[i + 1].value;
            res.worst_gap = std::min(res.worst_gap, gap);
            if (gap < 0.0) res.ok = false;
        }
    }
    if (sd.merged.empty()) res.worst_gap = 0.0;
    return res;
}

} // namespace szego
