#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "sqg/fractional.hpp"
#include "sqg/ledger.hpp"

namespace sqg {

enum class Integrator { if_rk2, if_rk4 };

/// Time-integration parameters for (QG) and (TD) runs. The dissipation is
/// integrated exactly through its exponential, so the CFL constraint is
/// advective only.
struct SolverConfig {
  double alpha = 0.5;  // dissipation order, [0, 1)
  double dt = 1e-3;
  double t_end = 1.0;
  double cfl = 0.4;
  bool dealias = true;
  Integrator integrator = Integrator::if_rk4;

  void validate() const;
};

struct SimulationState {
  double t = 0.0;
  SpectralField theta;  // mean-zero
  TimeSeriesLedger ledger;
  double initial_sup = 0.0;  // blowup reference ||theta0||_inf
};

/// Prescribed velocity/forcing for the linear transport-diffusion runs.
using TimeVelocity =
    std::function<std::pair<SpectralField, SpectralField>(double)>;
using TimeForcing = std::function<SpectralField(double)>;

/// v . grad(theta) formed in physical space with the velocity of the
/// active scalar itself, transformed back and dealiased. The output mean
/// vanishes to rounding (divergence-free advection).
SpectralField nonlinear_term(const SpectralField& theta);

/// max_k |k . vhat(k)| / max(k_max |vhat|): spectral divergence check.
double relative_spectral_divergence(const SpectralField& v1,
                                    const SpectralField& v2);

/// Integrating-factor stepper for (QG) and (TD); owns the tabulated
/// symbols and the dyadic family used for the ledger records.
class Evolver {
 public:
  Evolver(const Grid& g, const SolverConfig& cfg);

  const DyadicFamily& family() const { return fam_; }
  const SolverConfig& config() const { return cfg_; }

  /// Fresh state with the t=0 ledger row appended.
  SimulationState make_state(const SpectralField& theta0,
                             bool with_forcing_rows = false,
                             const TimeForcing* f = nullptr) const;

  /// One step of the (QG) self-advection equation; appends ledger data.
  /// Throws CflError when dt > cfl h / max|v| and BlowupError on NaN or
  /// 1e6-fold sup growth (the state keeps the last valid field).
  void step_qg(SimulationState& s) const;

  /// One step of (TD) with prescribed divergence-free velocity and
  /// optional forcing.
  void step_td(SimulationState& s, const TimeVelocity& v,
               const TimeForcing* f = nullptr) const;

  SpectralField nonlinear(const SpectralField& theta) const;

 private:
  struct StageResult {
    SpectralField advection;
    double max_speed = 0.0;
  };
  StageResult advect(const SpectralField& theta, const SpectralField* v1,
                     const SpectralField* v2) const;
  SpectralField rhs(const SpectralField& theta, double t,
                    const TimeVelocity* v, const TimeForcing* f,
                    double* max_speed) const;
  void advance(SimulationState& s, const TimeVelocity* v,
               const TimeForcing* f) const;
  void append_ledger(SimulationState& s, const TimeForcing* f) const;

  Grid grid_;
  SolverConfig cfg_;
  DyadicFamily fam_;
  std::vector<double> half_exp_, full_exp_;  // exp(-dt/2 |k|^a), exp(-dt ...)
  std::vector<std::complex<double>> r1_, r2_, d1_, d2_;
  std::vector<double> mask_;
};

struct RunResult {
  SimulationState state;
  bool blowup = false;
  std::string blowup_reason;
  int steps = 0;
};

using RunObserver = std::function<void(const SimulationState&, int step)>;

/// Full (QG) run to t_end; on blowup returns the partial result instead of
/// throwing. The observer fires after the initial record and every step.
RunResult run_qg(const SpectralField& theta0, const SolverConfig& cfg,
                 const RunObserver& observer = nullptr);

/// Full (TD) run; validates the prescribed velocity's divergence once
/// (relative tolerance 1e-8) before stepping.
RunResult run_td(const SpectralField& theta0, const SolverConfig& cfg,
                 const TimeVelocity& v, const TimeForcing* f = nullptr,
                 const RunObserver& observer = nullptr);

/// Successive linear (TD) solves theta_{n+1}: velocity from theta_n,
/// initial data S_n theta0; theta_0 is the zero trajectory.
struct SchemeState {
  std::vector<double> sample_times;
  /// diffs[n-1][i] = ||theta_n - theta_{n-1}||_{B^0_{inf,1}} at sample i
  std::vector<std::vector<double>> diffs;
  std::vector<double> diff_sup;  // sup over samples, index n-1
  bool aborted = false;
  int aborted_iterate = -1;
};

SchemeState run_iterative_scheme(const SpectralField& theta0,
                                 const SolverConfig& cfg, int n_max, double T,
                                 int sample_every = 10);

/// Critical-norm table of the initial data: ||theta0|| in B^{1-a}_{inf,1}
/// and in B^{s_c^p}_{p,1}, s_c^p = 1 + 2/p - alpha, p in {1, 2, inf}.
struct SmallnessReport {
  double b_smallness = 0.0;
  std::map<double, double> b_critical;
};

SmallnessReport smallness_report(const SpectralField& theta0, double alpha,
                                 const DyadicFamily& fam);

/// sum_q (1 - e^{-c t 2^{q alpha}})^{1/2} 2^{q(1-alpha)} ||Delta_q
/// theta0||_inf, nondecreasing in t and saturating at the B^{1-a}_{inf,1}
/// norm.
double local_time_functional(const SpectralField& theta0, double alpha,
                             double c, double t, const DyadicFamily& fam);

/// sup{t : local_time_functional(t) <= eta} by bisection; +inf when the
/// saturation value stays below eta.
double local_time_horizon(const SpectralField& theta0, double alpha, double c,
                          double eta, const DyadicFamily& fam);

/// Both sides of the smoothing estimate with unit constant:
/// lhs = ||theta||_{tilde L^r_T B^{s+a/r}_{p,1}},
/// rhs_data = ||theta0||_{B^s_{p,1}} + ||f||_{L^1_T B^s_{p,1}},
/// ratio = lhs / (e^{V(T)} rhs_data).
struct Theorem2Probe {
  double lhs = 0.0;
  double rhs_data = 0.0;
  double V = 0.0;
  double ratio = 0.0;
};

Theorem2Probe theorem2_probe(const TimeSeriesLedger& ledger,
                             const SpectralField& theta0, double alpha,
                             double s, double p, double r, double T,
                             const DyadicFamily& fam);

}  // namespace sqg
