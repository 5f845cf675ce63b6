#include "szego/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "szego/parallel.hpp"

namespace szego {

FourierSymbol vector_field_H(const FourierSymbol& u) {
    const FourierSymbol p = szego_project_product(u, u);
    const cxd j = inner(u, p);
    const FourierSymbol usq = analytic_product(u, u);
    const cxd mtwoij = cxd{0.0, -2.0} * j;
    const cxd mijbar = cxd{0.0, -1.0} * std::conj(j);
    return FourierSymbol(mtwoij * p.coeffs() + mijbar * usq.coeffs());
}

FourierSymbol vector_field_F(const FourierSymbol& u, double x) {
    const int n = u.trunc_dim();
    SeriesEvaluator ev(u);
    const SeriesSample s = ev.sample(x);   // throws ResonantX

    Vec e0 = Vec::Zero(n);
    e0[0] = 1.0;
    const Vec w0 = ev.resolve_h(x, e0);
    const Vec w1 = ev.resolve_h(x, u.coeffs());   // = H_u(w0) for real x
    const FourierSymbol w0s{Vec(w0)}, w1s{Vec(w1)};
    const Vec hw1 = apply_hankel(u, w1s).coeffs();

    Vec expr = 4.0 * u.coeffs();
    expr += x * (4.0 * s.j2 - 2.0 * s.f_val) * analytic_product(w0s, w1s).coeffs();
    expr += (-2.0 * x * x) * std::conj(s.j3) * analytic_product(w1s, w1s).coeffs();
    const FourierSymbol hw1s{Vec(hw1)};
    expr += (-2.0 * x * x * x) * s.j3 * analytic_product(hw1s, hw1s).coeffs();
    expr += (-4.0 * x * x) * s.j3 * hw1;

    return FourierSymbol(Vec((cxd{0.0, -1.0} / s.j0) * expr));
}

FourierSymbol VectorField::operator()(const FourierSymbol& u) const {
    return kind == Kind::hamiltonian ? vector_field_H(u) : vector_field_F(u, x);
}

std::string VectorField::name() const {
    return kind == Kind::hamiltonian ? "X_H" : "X_F(" + std::to_string(x) + ")";
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                 kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                 kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 35.0 / 384 - 5179.0 / 57600, kE3 = 500.0 / 1113 - 7571.0 / 16695,
                 kE4 = 125.0 / 192 - 393.0 / 640, kE5 = -2187.0 / 6784 + 92097.0 / 339200,
                 kE6 = 11.0 / 84 - 187.0 / 2100, kE7 = -1.0 / 40;

double error_norm(const Vec& err, const Vec& y0, const Vec& y1, double atol, double rtol) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double e = std::abs(err[i]) / sc;
        acc += e * e;
    }
    return std::sqrt(acc / double(err.size()));
}

struct LinearFit {
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

LinearFit fit_line(const std::vector<double>& t, const std::vector<double>& v) {
    LinearFit f;
    const std::size_t n = t.size();
    if (n < 2) return f;
    double mt = 0.0, mv = 0.0;
    for (std::size_t i = 0; i < n; ++i) mt += t[i], mv += v[i];
    mt /= n, mv /= n;
    double stt = 0.0, stv = 0.0, svv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        stt += (t[i] - mt) * (t[i] - mt);
        stv += (t[i] - mt) * (v[i] - mv);
        svv += (v[i] - mv) * (v[i] - mv);
    }
    if (stt == 0.0) return f;
    f.slope = stv / stt;
    f.intercept = mv - f.slope * mt;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = v[i] - (f.slope * t[i] + f.intercept);
        ss_res += r * r;
    }
    f.r2 = (svv > 0.0) ? 1.0 - ss_res / svv : 1.0;
    return f;
}

} // namespace

Trajectory integrate(const FourierSymbol& u0, const VectorField& field, double t_end,
                     const IntegrateOptions& opts) {
    Trajectory traj;
    const double dir = (t_end >= 0.0) ? 1.0 : -1.0;
    const double t_span = std::abs(t_end);

    Vec y = u0.coeffs();
    auto f_of = [&field](const Vec& v) { return field(FourierSymbol(Vec(v))).coeffs(); };

    double t = 0.0;
    traj.times.push_back(0.0);
    traj.states.push_back(u0);

    Vec k1 = f_of(y);
    double h = opts.initial_step;
    if (h <= 0.0) {
        const double fn = k1.norm();
        const double yn = std::max(y.norm(), 1.0);
        h = (fn > 1e-300) ? 0.01 * yn / fn : 0.1 * t_span;
        h = std::min(h, 0.1 * std::max(t_span, 1e-12));
    }

    double err_old = 1e-4;
    double next_sample = std::min(opts.sample_dt, t_span);
    const double t_eps = 1e-12 * std::max(1.0, t_span);

    while (t_span - t > t_eps) {
        if (h < 1e-14 * std::max(1.0, t_span))
            throw StepSizeUnderflow("step " + std::to_string(h) + " at t = " +
                                    std::to_string(dir * t));
        const double stop = std::min(next_sample, t_span);
        bool clipped = false;
        if (t + h >= stop - t_eps) {
            h = stop - t;
            clipped = true;
        }
        const double hs = dir * h;   // signed step

        const Vec k2 = f_of(y + hs * (kA21 * k1));
        const Vec k3 = f_of(y + hs * (kA31 * k1 + kA32 * k2));
        const Vec k4 = f_of(y + hs * (kA41 * k1 + kA42 * k2 + kA43 * k3));
        const Vec k5 = f_of(y + hs * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
        const Vec k6 =
            f_of(y + hs * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
        const Vec ynew =
            y + hs * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
        const Vec k7 = f_of(ynew);
        const Vec errv =
            hs * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);

        const double err = error_norm(errv, y, ynew, opts.atol, opts.rtol);
        if (err <= 1.0) {
            t += h;
            y = ynew;
            k1 = k7;   // FSAL
            ++traj.stats.accepted;
            traj.stats.max_local_error = std::max(traj.stats.max_local_error, err);

            if (std::abs(t - stop) <= t_eps && std::abs(t - next_sample) <= t_eps) {
                traj.times.push_back(dir * t);
                traj.states.push_back(FourierSymbol(Vec(y)));
                next_sample += opts.sample_dt;
            } else if (std::abs(t - t_span) <= t_eps) {
                traj.times.push_back(dir * t);
                traj.states.push_back(FourierSymbol(Vec(y)));
            }

            // truncation watchdog: double the dimension when mass reaches the tail
            FourierSymbol cur{Vec(y)};
            if (cur.relative_tail_mass() > opts.tail_tol) {
                const int n = static_cast<int>(y.size());
                if (2 * n > opts.max_dim)
                    throw TailNotResolved("state tail unresolved at max dimension " +
                                          std::to_string(n));
                Vec grown = Vec::Zero(2 * n);
                grown.head(n) = y;
                y = grown;
                k1 = f_of(y);
                ++traj.stats.doublings;
            }

            const double e = std::max(err, 1e-10);
            double fac = 0.9 * std::pow(e, -0.14) * std::pow(err_old, 0.08);
            fac = std::clamp(fac, 0.2, 5.0);
            err_old = e;
            double hnew = h * fac;
            if (clipped) hnew = std::max(hnew, h * 2.0);   // do not let clipping shrink h
            h = hnew;
        } else {
            ++traj.stats.rejected;
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        }
    }
    traj.stats.final_dim = static_cast<int>(y.size());
    if (traj.times.back() != t_end && std::abs(traj.times.back() - t_end) > t_eps) {
        traj.times.push_back(t_end);
        traj.states.push_back(FourierSymbol(Vec(y)));
    }
    return traj;
}

void analyze_trajectory(Trajectory& traj, const std::vector<double>& s_list,
                        int pole_class_d) {
    traj.s_list = s_list;
    traj.analysis.assign(traj.states.size(), SampleAnalysis{});
    parallel_for(traj.states.size(), [&](std::size_t i) {
        const FourierSymbol& u = traj.states[i];
        SampleAnalysis rec;
        for (double s : s_list) rec.sobolev_sq.push_back(sobolev_norm_sq(u, SobolevIndex(s)));
        if (!u.is_zero()) {
            const SpectralData sd = singular_spectrum(u);
            const Projections proj = eigen_projections(u, sd);
            rec.report = ell(u, sd, proj);
            rec.rank_h = sd.rank_h;
            rec.rank_k = sd.rank_k;
            for (std::size_t k = 0; k < sd.k.size(); ++k) {
                rec.uk_norm_sq.push_back(proj.u_k[k].squaredNorm());
                rec.wk_uk_inner.push_back(proj.u_k[k].dot(proj.w_k[k]));   // (w_k|u_k)
            }
            std::size_t gik = 0;
            for (const auto& mv : sd.merged) {
                if (mv.dim_k > 0) {
                    rec.k_angles.push_back(
                        (mv.dom == Dominance::K && mv.dim_k == 1) ? mv.angle : std::nullopt);
                    ++gik;
                }
            }
            if (pole_class_d > 0) {
                try {
                    rec.poles = fit_rational(u, pole_class_d).poles();
                } catch (const Error&) {
                    rec.poles.clear();
                }
            }
        }
        traj.analysis[i] = std::move(rec);
    });
}

double V4ClosedForm::y_of_t(double t) const {
    return 2.0 * a * b / ((a - b) + (a + b) * std::cosh(tau * (t - t0)));
}

double V4ClosedForm::u1_norm_sq(double t) const {
    return Q * y_of_t(t) / (sigma1_sq - sigma2_sq);
}

V4ClosedForm v4_closed_form(const FourierSymbol& u0) {
    const SpectralData sd = singular_spectrum(u0);
    if (sd.k.size() != 2 || sd.k[0].mult != 1 || sd.k[1].mult != 1)
        throw DegenerateSpectrum("V(4) closed form needs two simple K eigenvalues");
    const Projections proj = eigen_projections(u0, sd);
    const ConservationReport rep = ell(u0, sd, proj);

    V4ClosedForm cf;
    cf.Q = rep.Q;
    cf.sigma1_sq = sd.k[0].value;
    cf.sigma2_sq = sd.k[1].value;
    const double q2 = cf.Q * cf.Q;
    if (std::abs(rep.ells[0].second) > 1e-8 * q2)
        throw NotOnResonantLeaf("ell_1 = " + std::to_string(rep.ells[0].second) +
                                " (|ell_1| must be <= 1e-8 Q^2)");

    const double p0 = 4.0 * (cf.Q + cf.sigma2_sq) * (cf.sigma1_sq - cf.sigma2_sq) - q2;
    if (p0 <= 0.0)
        throw NotOnResonantLeaf("P(0) = " + std::to_string(p0) + " not positive");
    const double beta = 3.0 * cf.Q + 2.0 * cf.sigma2_sq;
    const double disc = std::sqrt(beta * beta + p0);
    cf.a = beta + disc;    // -lambda_1
    cf.b = p0 / cf.a;      // lambda_2
    cf.A = cf.Q;
    cf.tau = cf.Q * std::sqrt(p0);

    const double x0 = proj.u_k[0].squaredNorm();
    const double y0 = (cf.sigma1_sq - cf.sigma2_sq) * x0 / cf.Q;
    const double ch = std::max((2.0 * cf.a * cf.b / y0 - (cf.a - cf.b)) / (cf.a + cf.b), 1.0);
    const double t0_mag = std::acosh(ch) / cf.tau;
    // y increases initially iff t0 > 0
    const double xdot0 = 2.0 * std::imag(rep.J * proj.u_k[0].dot(proj.w_k[0]));
    cf.t0 = (xdot0 >= 0.0) ? t0_mag : -t0_mag;
    return cf;
}

namespace {

void require_analyzed(const Trajectory& traj) {
    if (traj.analysis.size() != traj.states.size() || traj.states.empty())
        throw InconsistentInputs("trajectory has not been analyzed");
}

// Crossing policy for per-k traces: on a resonant leaf (ell_k ~ 0) vanishing
// projections are the expected turbulent decay, and for ell_k < 0 the
// projection is identically zero; only a dip with ell_k > 0 is a crossing.
bool sample_usable(const Trajectory& traj, std::size_t i, int k, double ell_k0) {
    const auto& rec = traj.analysis[i];
    if (k > static_cast<int>(rec.uk_norm_sq.size())) return false;
    const double un2 = rec.report.Q;
    const double dip = 1e-20 * un2;
    if (rec.uk_norm_sq[k - 1] > dip) return true;
    const double q2 = rec.report.Q * rec.report.Q;
    if (ell_k0 > 1e-6 * q2)
        throw CrossingDetected("u_" + std::to_string(k) + "^K vanished at t = " +
                               std::to_string(traj.times[i]));
    return false;
}

} // namespace

double projection_evolution_residual(const Trajectory& traj, int k) {
    require_analyzed(traj);
    const double ell_k0 = traj.analysis.front().report.ells.size() >= std::size_t(k)
                              ? traj.analysis.front().report.ells[k - 1].second
                              : 0.0;
    double worst = 0.0, scale = 0.0;
    std::vector<double> defects;
    for (std::size_t i = 1; i + 1 < traj.states.size(); ++i) {
        if (!sample_usable(traj, i - 1, k, ell_k0) || !sample_usable(traj, i, k, ell_k0) ||
            !sample_usable(traj, i + 1, k, ell_k0))
            continue;
        const double dt = traj.times[i + 1] - traj.times[i - 1];
        const double fd = (traj.analysis[i + 1].uk_norm_sq[k - 1] -
                           traj.analysis[i - 1].uk_norm_sq[k - 1]) /
                          dt;
        const double rhs =
            2.0 * std::imag(traj.analysis[i].report.J * traj.analysis[i].wk_uk_inner[k - 1]);
        defects.push_back(std::abs(fd - rhs));
        scale = std::max({scale, std::abs(fd), std::abs(rhs)});
    }
    for (double d : defects) worst = std::max(worst, d / std::max(scale, 1e-300));
    return defects.empty() ? 0.0 : worst;
}

double lax_residual(const Trajectory& traj) {
    require_analyzed(traj);
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < traj.states.size(); ++i) {
        const FourierSymbol& u = traj.states[i];
        const int n = u.trunc_dim();
        const int nprev = traj.states[i - 1].trunc_dim();
        const int nnext = traj.states[i + 1].trunc_dim();
        const int m = std::min({n, nprev, nnext});

        const Mat k2 = shifted_square(u).topLeftCorner(m, m);
        const Mat k2p = shifted_square(traj.states[i - 1]).topLeftCorner(m, m);
        const Mat k2n = shifted_square(traj.states[i + 1]).topLeftCorner(m, m);
        const double dt = traj.times[i + 1] - traj.times[i - 1];

        const cxd j = traj.analysis[i].report.J;
        Mat toep = Mat::Zero(m, m);
        for (int r = 0; r < m; ++r)
            for (int c = 0; c <= r; ++c) toep(r, c) = u.coeff(r - c);
        const Mat b = cxd{0.0, -1.0} * (std::conj(j) * toep + j * toep.adjoint());

        const Mat defect = (k2n - k2p) / dt - (b * k2 - k2 * b);
        worst = std::max(worst, defect.norm() / std::max(k2.norm(), 1e-300));
    }
    return worst;
}

AngleTrace blaschke_angle_trace(const Trajectory& traj, int k) {
    require_analyzed(traj);
    const double ell_k0 = traj.analysis.front().report.ells.size() >= std::size_t(k)
                              ? traj.analysis.front().report.ells[k - 1].second
                              : 0.0;
    AngleTrace tr;
    double offset = 0.0;
    bool have_prev = false;
    double prev_raw = 0.0;
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        if (!sample_usable(traj, i, k, ell_k0)) continue;
        const auto& rec = traj.analysis[i];
        if (k > static_cast<int>(rec.k_angles.size()) || !rec.k_angles[k - 1]) continue;
        const double raw = *rec.k_angles[k - 1];
        if (have_prev) {
            double d = raw - prev_raw;
            while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi, offset -= 2.0 * std::numbers::pi;
            while (d < -std::numbers::pi) d += 2.0 * std::numbers::pi, offset += 2.0 * std::numbers::pi;
        }
        prev_raw = raw;
        have_prev = true;
        tr.times.push_back(traj.times[i]);
        tr.psi.push_back(raw + offset);
    }

    // residual of dpsi/dt = 2 Re(J xi_k) on interior points of the trace
    double scale = 0.0;
    std::vector<double> defects;
    for (std::size_t i = 1; i + 1 < tr.times.size(); ++i) {
        const double fd = (tr.psi[i + 1] - tr.psi[i - 1]) / (tr.times[i + 1] - tr.times[i - 1]);
        // locate the trajectory sample for this trace point
        const auto it = std::lower_bound(traj.times.begin(), traj.times.end(), tr.times[i]);
        const std::size_t si = static_cast<std::size_t>(it - traj.times.begin());
        const auto& rec = traj.analysis[si];
        const cxd xi = rec.wk_uk_inner[k - 1] / rec.uk_norm_sq[k - 1];
        const double rhs = 2.0 * std::real(rec.report.J * xi);
        defects.push_back(std::abs(fd - rhs));
        scale = std::max({scale, std::abs(fd), std::abs(rhs)});
    }
    for (double d : defects)
        tr.max_residual = std::max(tr.max_residual, d / std::max(scale, 1e-300));
    return tr;
}

GrowthReport growth_and_poles(const Trajectory& traj, const std::vector<double>& s_list) {
    require_analyzed(traj);
    GrowthReport rep;
    const double t_begin = 0.5 * (traj.times.front() + traj.times.back());
    rep.fit_t_begin = t_begin;
    const double window = traj.times.back() - t_begin;

    auto fit_or_throw = [&](const std::vector<double>& t, const std::vector<double>& v,
                            const char* what) {
        const LinearFit f = fit_line(t, v);
        if (std::abs(f.slope) * window > 0.1 && f.r2 < 0.99)
            throw FitUnreliable(std::string(what) + ": slope " + std::to_string(f.slope) +
                                " with R^2 " + std::to_string(f.r2));
        return GrowthFit{f.slope, f.r2};
    };

    for (std::size_t si = 0; si < s_list.size(); ++si) {
        std::vector<double> t, v;
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            if (traj.times[i] < t_begin) continue;
            if (si < traj.analysis[i].sobolev_sq.size() &&
                traj.analysis[i].sobolev_sq[si] > 0.0) {
                t.push_back(traj.times[i]);
                v.push_back(std::log(traj.analysis[i].sobolev_sq[si]));
            }
        }
        rep.sobolev_slopes[s_list[si]] = fit_or_throw(t, v, "sobolev growth fit");
    }

    std::vector<double> t, v;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& poles = traj.analysis[i].poles;
        if (poles.empty()) continue;
        double pmax = 0.0, psecond = 0.0;
        for (const auto& p : poles) {
            const double m = std::abs(p);
            if (m > pmax) {
                psecond = pmax;
                pmax = m;
            } else {
                psecond = std::max(psecond, m);
            }
        }
        rep.max_bounded_pole = std::max(rep.max_bounded_pole, psecond);
        if (traj.times[i] >= t_begin && pmax < 1.0) {
            t.push_back(traj.times[i]);
            v.push_back(std::log(1.0 - pmax * pmax));
        }
    }
    if (!t.empty()) rep.pole_escape = fit_or_throw(t, v, "pole escape fit");
    return rep;
}

} // namespace szego
