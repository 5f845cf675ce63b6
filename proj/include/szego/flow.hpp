// Hamiltonian flows and their numerical analysis: the vector fields X_H and
// X_F(x), an adaptive Dormand-Prince 5(4) integrator with PI step control
// and automatic truncation doubling, per-sample conservation/spectral
// analysis, the V(4) closed-form cosh profile, Lax and projection-evolution
// residuals, Blaschke angle traces, and Sobolev-growth/pole-escape fits.

#ifndef SZEGO_FLOW_HPP
#define SZEGO_FLOW_HPP

#include <map>
#include <optional>

#include "szego/conservation.hpp"

namespace szego {

/// X_H(u) = -2iJ Pi(|u|^2) - i conj(J) u^2.
FourierSymbol vector_field_H(const FourierSymbol& u);

/// X_F(x)(u): the five-term closed form built from w0 = (I-xH^2)^{-1}(1),
/// w1 = (I-xH^2)^{-1}(u). Throws ResonantX.
FourierSymbol vector_field_F(const FourierSymbol& u, double x);

struct VectorField {
    enum class Kind { hamiltonian, generating };
    Kind kind = Kind::hamiltonian;
    double x = 0.0;

    static VectorField hamiltonian() { return {Kind::hamiltonian, 0.0}; }
    static VectorField generating(double x) { return {Kind::generating, x}; }
    FourierSymbol operator()(const FourierSymbol& u) const;
    std::string name() const;
};

struct StepStats {
    long accepted = 0;
    long rejected = 0;
    double max_local_error = 0.0;   // in units of the mixed tolerance
    int final_dim = 0;
    int doublings = 0;
};

/// Per-sample analysis record (filled by analyze_trajectory).
struct SampleAnalysis {
    ConservationReport report;
    std::vector<double> sobolev_sq;        // one per requested exponent
    std::vector<cxd> poles;                // |p| decreasing; empty if not fitted
    std::vector<double> uk_norm_sq;        // per distinct sigma_k^2
    std::vector<cxd> wk_uk_inner;          // (w_k | u_k)
    std::vector<std::optional<double>> k_angles;   // psi_k, simple K-dominant
    int rank_h = 0, rank_k = 0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<FourierSymbol> states;
    StepStats stats;
    std::vector<double> s_list;            // Sobolev exponents used in analysis
    std::vector<SampleAnalysis> analysis;  // empty until analyze_trajectory

    const SampleAnalysis& record(std::size_t i) const { return analysis.at(i); }
};

struct IntegrateOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double sample_dt = 0.05;
    double tail_tol = kDefaultTailTol;
    int max_dim = kMaxTruncDim;
    double initial_step = 0.0;   // 0 = automatic
};

// Integrate du/dt = field(u) from u0 over [0, T] (T may be negative),
// sampling every sample_dt. Throws StepSizeUnderflow / TailNotResolved.
Trajectory integrate(const FourierSymbol& u0, const VectorField& field, double t_end,
                     const IntegrateOptions& opts = {});

// Fill traj.analysis (parallel over samples). pole_class_d > 0 enables
// rational re-fitting of each sample at that class.
void analyze_trajectory(Trajectory& traj, const std::vector<double>& s_list,
                        int pole_class_d = 0);

/// Closed-form turbulence profile on the resonant leaf ell_1 = 0 of V(4).
struct V4ClosedForm {
    double Q = 0.0, sigma1_sq = 0.0, sigma2_sq = 0.0;
    double a = 0.0, b = 0.0, A = 0.0;   // (y')^2 = A^2 y^2 (y+a)(b-y)
    double tau = 0.0;                   // A sqrt(ab) = Q sqrt(4(Q+s2)(s1-s2)-Q^2)
    double t0 = 0.0;

    double y_of_t(double t) const;
    double u1_norm_sq(double t) const;  // Q y(t) / (sigma1^2 - sigma2^2)
};

V4ClosedForm v4_closed_form(const FourierSymbol& u0);   // NotOnResonantLeaf if ell_1 != 0

// max over interior samples of the relative defect of
// d/dt ||u_k^K||^2 = 2 Im(J (w_k|u_k)), k 1-based.
double projection_evolution_residual(const Trajectory& traj, int k);

// max over interior samples of ||dK^2/dt - [B_u, K^2]||_F / ||K^2||_F with
// B_u = -i(T_{conj(J)u} + T_{J conj(u)}).
double lax_residual(const Trajectory& traj);

struct AngleTrace {
    std::vector<double> times;
    std::vector<double> psi;      // unwrapped
    double max_residual = 0.0;    // d psi/dt vs 2 Re(J xi_k)
};

AngleTrace blaschke_angle_trace(const Trajectory& traj, int k);

struct GrowthFit {
    double slope = 0.0;
    double r2 = 0.0;
};

struct GrowthReport {
    std::map<double, GrowthFit> sobolev_slopes;   // per exponent, on log of squared norm
    GrowthFit pole_escape;                        // slope of log(1-|p(t)|^2), escaping pole
    double max_bounded_pole = 0.0;                // max |p| over the remaining poles
    double fit_t_begin = 0.0;
};

// Least-squares slopes on the trailing half of the run. FitUnreliable only
// when a significant trend (|slope|·window > 0.1) has R^2 < 0.99.
GrowthReport growth_and_poles(const Trajectory& traj, const std::vector<double>& s_list);

} // namespace szego

#endif
