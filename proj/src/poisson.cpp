#include "szego/poisson.hpp"

#include <cmath>

namespace szego {

Functional ComplexFunctional::real_part() const {
    auto e = eval;
    return {name + ".re", [e](const FourierSymbol& u) { return e(u).real(); }, nullptr};
}

Functional ComplexFunctional::imag_part() const {
    auto e = eval;
    return {name + ".im", [e](const FourierSymbol& u) { return e(u).imag(); }, nullptr};
}

Vec gradient(const Functional& f, const FourierSymbol& u, double h0) {
    if (f.analytic()) return f.grad(u);
    if (!f.eval) throw EvalFailure("functional '" + f.name + "' has no evaluator");
    const int n = u.trunc_dim();
    const double step = h0 * std::max(1.0, u.norm());
    Vec g(n);
    Vec base = u.coeffs();
    try {
        for (int i = 0; i < n; ++i) {
            double parts[2];
            for (int re = 0; re < 2; ++re) {
                const cxd delta = (re == 0) ? cxd{step, 0.0} : cxd{0.0, step};
                Vec up = base, dn = base;
                up[i] += delta;
                dn[i] -= delta;
                parts[re] = (f.eval(FourierSymbol(std::move(up))) -
                             f.eval(FourierSymbol(std::move(dn)))) /
                            (2.0 * step);
            }
            g[i] = cxd{parts[0], parts[1]};
        }
    } catch (const Error& e) {
        throw EvalFailure("functional '" + f.name + "' failed near u: " + e.what());
    }
    return g;
}

double bracket(const Functional& f, const Functional& g, const FourierSymbol& u, double h0) {
    const Vec gf = gradient(f, u, h0);
    const Vec gg = gradient(g, u, h0);
    return std::imag(gg.dot(gf));   // Im (g_f | g_g)
}

cxd bracket(const ComplexFunctional& f, const ComplexFunctional& g, const FourierSymbol& u,
            double h0) {
    const Vec fr = gradient(f.real_part(), u, h0);
    const Vec fi = gradient(f.imag_part(), u, h0);
    const Vec gr = gradient(g.real_part(), u, h0);
    const Vec gi = gradient(g.imag_part(), u, h0);
    auto br = [](const Vec& a, const Vec& b) { return std::imag(b.dot(a)); };
    return cxd{br(fr, gr) - br(fi, gi), br(fr, gi) + br(fi, gr)};
}

BracketReport involution_report(const FourierSymbol& u, int n_f_pairs, double h0) {
    const SpectralData sd = singular_spectrum(u);
    const int nk = static_cast<int>(sd.k.size());

    std::vector<Functional> fs;
    for (int k = 1; k <= nk; ++k) fs.push_back(functional_ell(k));
    for (int k = 1; k <= nk; ++k) fs.push_back(functional_sigma_sq(k));
    const std::size_t asserted = fs.size();
    fs.push_back(functional_ell_inf());

    double s1 = nk ? sd.k.front().value : sd.leading;
    for (int i = 0; i < n_f_pairs; ++i) {
        fs.push_back(functional_generating_f(-(0.3 + 0.45 * i) / s1));
        fs.push_back(functional_generating_f((0.15 + 0.2 * i) / s1));
    }

    BracketReport rep;
    const int n = static_cast<int>(fs.size());
    rep.values = Eigen::MatrixXd::Zero(n, n);
    rep.scales = Eigen::MatrixXd::Zero(n, n);
    std::vector<Vec> grads;
    grads.reserve(fs.size());
    for (const auto& f : fs) {
        rep.labels.push_back(f.name);
        grads.push_back(gradient(f, u, h0));
    }
    for (std::size_t i = asserted; i < asserted + 1; ++i)
        rep.informational.push_back(fs[i].name);

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            rep.values(i, j) = std::imag(grads[j].dot(grads[i]));
            rep.scales(i, j) = grads[i].norm() * grads[j].norm();
            const bool info = (i == static_cast<int>(asserted)) ||
                              (j == static_cast<int>(asserted));
            if (i < j && !info && rep.scales(i, j) > 0.0)
                rep.max_normalized =
                    std::max(rep.max_normalized, std::abs(rep.values(i, j)) / rep.scales(i, j));
        }
    }
    return rep;
}

namespace {

// index of the k-th (1-based) distinct K eigenvalue, with stable tie handling
double sigma_sq_value(const FourierSymbol& u, int k) {
    const SpectralData sd = singular_spectrum(u);
    if (k < 1 || k > static_cast<int>(sd.k.size()))
        throw EvalFailure("sigma index out of range");
    return sd.k[k - 1].value;
}

ConservationReport report_of(const FourierSymbol& u) {
    const SpectralData sd = singular_spectrum(u);
    return ell(u, sd, eigen_projections(u, sd));
}

} // namespace

Functional functional_mass() {
    return {"Q", [](const FourierSymbol& u) { return mass(u); },
            [](const FourierSymbol& u) { return Vec(2.0 * u.coeffs()); }};
}

Functional functional_momentum() {
    return {"M", [](const FourierSymbol& u) { return momentum(u); },
            [](const FourierSymbol& u) {
                Vec g(u.trunc_dim());
                for (int n = 0; n < u.trunc_dim(); ++n) g[n] = 2.0 * double(n) * u.coeff(n);
                return g;
            }};
}

Functional functional_hamiltonian() {
    return {"H", [](const FourierSymbol& u) { return 0.5 * std::norm(j_factor(u)); },
            nullptr};
}

Functional functional_sigma_sq(int k) {
    return {"sigma" + std::to_string(k) + "^2",
            [k](const FourierSymbol& u) { return sigma_sq_value(u, k); }, nullptr};
}

Functional functional_ell(int k) {
    return {"ell" + std::to_string(k),
            [k](const FourierSymbol& u) {
                const auto rep = report_of(u);
                if (k < 1 || k > static_cast<int>(rep.ells.size()))
                    throw EvalFailure("ell index out of range");
                return rep.ells[k - 1].second;
            },
            nullptr};
}

Functional functional_ell_inf() {
    return {"ell_inf", [](const FourierSymbol& u) { return report_of(u).ell_inf; }, nullptr};
}

Functional functional_generating_f(double x) {
    // gradient = i X_F with the closed-form field (see flow module); declared
    // here through the series evaluator to keep the dependency one-way.
    return {"F(" + std::to_string(x) + ")",
            [x](const FourierSymbol& u) { return SeriesEvaluator(u).f_value(x); },
            nullptr};
}

ComplexFunctional functional_j_resolvent(int m, double x) {
    return {"J^(" + std::to_string(m) + ")(" + std::to_string(x) + ")",
            [m, x](const FourierSymbol& u) {
                SeriesEvaluator ev(u);
                const SeriesSample s = ev.sample(x);
                switch (m) {
                    case 0: return cxd{s.j0, 0.0};
                    case 1: return s.j1;
                    case 2: return cxd{s.j2, 0.0};
                    case 3: return s.j3;
                    case 4: return cxd{s.j4, 0.0};
                    default: throw EvalFailure("resolvent order out of range");
                }
            }};
}

ComplexFunctional functional_z(double x) {
    return {"Z(" + std::to_string(x) + ")",
            [x](const FourierSymbol& u) { return SeriesEvaluator(u).sample(x).z; }};
}

Functional functional_abs_z_sq(double x) {
    return {"|Z(" + std::to_string(x) + ")|^2",
            [x](const FourierSymbol& u) {
                return std::norm(SeriesEvaluator(u).sample(x).z);
            },
            nullptr};
}

Functional functional_j0(double x) {
    return {"J0(" + std::to_string(x) + ")",
            [x](const FourierSymbol& u) { return SeriesEvaluator(u).sample(x).j0; },
            nullptr};
}

} // namespace szego
