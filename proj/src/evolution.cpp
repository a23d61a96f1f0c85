#include "sqg/evolution.hpp"

#include <cmath>

#include "sqg/transform.hpp"

namespace sqg {

void SolverConfig::validate() const {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw ConfigError("alpha must lie in [0, 1)");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(cfl > 0.0 && cfl < 1.0)) throw ConfigError("cfl must lie in (0, 1)");
  if (!(t_end >= 0.0)) throw ConfigError("t_end must be nonnegative");
}

SpectralField nonlinear_term(const SpectralField& theta) {
  SolverConfig cfg;
  Evolver ev(theta.grid(), cfg);
  return ev.nonlinear(theta);
}

double relative_spectral_divergence(const SpectralField& v1,
                                    const SpectralField& v2) {
  const Grid& g = v1.grid();
  double div_max = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Wavevector w = g.wavevector(i);
    if (w.nyquist) continue;
    div_max = std::max(div_max, std::abs(w.k1 * v1[i] + w.k2 * v2[i]));
    ref = std::max(ref, w.mod * (std::abs(v1[i]) + std::abs(v2[i])));
  }
  return ref == 0.0 ? 0.0 : div_max / ref;
}

Evolver::Evolver(const Grid& g, const SolverConfig& cfg)
    : grid_(g), cfg_(cfg), fam_(g) {
  cfg_.validate();
  const std::size_t N = g.size();
  half_exp_.resize(N);
  full_exp_.resize(N);
  r1_.resize(N);
  r2_.resize(N);
  d1_.resize(N);
  d2_.resize(N);
  mask_.assign(N, 1.0);
  const int kc = dealias_cutoff(g.n);
  const Multiplier R1 = riesz_multiplier(1), R2 = riesz_multiplier(2);
  const Multiplier D1 = derivative_multiplier(1), D2 = derivative_multiplier(2);
  for (std::size_t i = 0; i < N; ++i) {
    const Wavevector w = g.wavevector(i);
    const double lam = std::pow(w.mod, cfg_.alpha);
    half_exp_[i] = std::exp(-0.5 * cfg_.dt * lam);
    full_exp_[i] = std::exp(-cfg_.dt * lam);
    r1_[i] = R1.symbol(w);
    r2_[i] = R2.symbol(w);
    d1_[i] = D1.symbol(w);
    d2_[i] = D2.symbol(w);
    if (cfg_.dealias && (std::abs(w.m1) > kc || std::abs(w.m2) > kc))
      mask_[i] = 0.0;
  }
}

Evolver::StageResult Evolver::advect(const SpectralField& theta,
                                     const SpectralField* v1h,
                                     const SpectralField* v2h) const {
  const std::size_t N = grid_.size();
  SpectralField a(grid_), b(grid_);
  // velocity: prescribed, or Riesz of theta itself
  if (v1h) {
    a = *v1h;
    b = *v2h;
  } else {
    for (std::size_t i = 0; i < N; ++i) {
      a[i] = -r2_[i] * theta[i];
      b[i] = r1_[i] * theta[i];
    }
  }
  PhysicalField v1 = inverse(a);
  PhysicalField v2 = inverse(b);
  for (std::size_t i = 0; i < N; ++i) {
    a[i] = d1_[i] * theta[i];
    b[i] = d2_[i] * theta[i];
  }
  PhysicalField t1 = inverse(a);
  PhysicalField t2 = inverse(b);

  double max_speed = 0.0;
  PhysicalField w(grid_);
  for (std::size_t i = 0; i < N; ++i) {
    w[i] = v1[i] * t1[i] + v2[i] * t2[i];
    max_speed = std::max(max_speed,
                         std::max(std::abs(v1[i]), std::abs(v2[i])));
  }
  SpectralField adv = forward(w);
  for (std::size_t i = 0; i < N; ++i) adv[i] *= mask_[i];
  return {std::move(adv), max_speed};
}

SpectralField Evolver::nonlinear(const SpectralField& theta) const {
  if (!theta.mean_zero())
    throw DomainError("nonlinear term requires a mean-zero field");
  return advect(theta, nullptr, nullptr).advection;
}

SpectralField Evolver::rhs(const SpectralField& theta, double t,
                           const TimeVelocity* v, const TimeForcing* f,
                           double* max_speed) const {
  SpectralField out(grid_);
  if (v) {
    auto [v1, v2] = (*v)(t);
    StageResult st = advect(theta, &v1, &v2);
    out = std::move(st.advection);
    if (max_speed) *max_speed = st.max_speed;
  } else {
    StageResult st = advect(theta, nullptr, nullptr);
    out = std::move(st.advection);
    if (max_speed) *max_speed = st.max_speed;
  }
  out *= -1.0;
  if (f) out += (*f)(t);
  return out;
}

void Evolver::advance(SimulationState& s, const TimeVelocity* v,
                      const TimeForcing* f) const {
  const std::size_t N = grid_.size();
  const double dt = cfg_.dt;
  const double t = s.t;
  SpectralField& th = s.theta;

  double speed = 0.0;
  SpectralField n1 = rhs(th, t, v, f, &speed);
  if (speed > 0.0) {
    const double required = cfg_.cfl * grid_.spacing() / speed;
    if (dt > required) throw CflError(dt, required);
  }

  SpectralField out(grid_);
  if (cfg_.integrator == Integrator::if_rk2) {
    SpectralField stage(grid_);
    for (std::size_t i = 0; i < N; ++i)
      stage[i] = full_exp_[i] * (th[i] + dt * n1[i]);
    SpectralField n2 = rhs(stage, t + dt, v, f, nullptr);
    for (std::size_t i = 0; i < N; ++i)
      out[i] = full_exp_[i] * th[i] +
               0.5 * dt * (full_exp_[i] * n1[i] + n2[i]);
  } else {
    SpectralField stage(grid_);
    for (std::size_t i = 0; i < N; ++i)
      stage[i] = half_exp_[i] * (th[i] + 0.5 * dt * n1[i]);
    SpectralField n2 = rhs(stage, t + 0.5 * dt, v, f, nullptr);
    for (std::size_t i = 0; i < N; ++i)
      stage[i] = half_exp_[i] * th[i] + 0.5 * dt * n2[i];
    SpectralField n3 = rhs(stage, t + 0.5 * dt, v, f, nullptr);
    for (std::size_t i = 0; i < N; ++i)
      stage[i] = full_exp_[i] * th[i] + dt * half_exp_[i] * n3[i];
    SpectralField n4 = rhs(stage, t + dt, v, f, nullptr);
    for (std::size_t i = 0; i < N; ++i)
      out[i] = full_exp_[i] * th[i] +
               dt / 6.0 *
                   (full_exp_[i] * n1[i] +
                    2.0 * half_exp_[i] * (n2[i] + n3[i]) + n4[i]);
  }
  // the advection term conserves the mean analytically; pin the mode
  out.project_mean_zero();

  if (!out.all_finite()) throw BlowupError(t + dt, "non-finite coefficients");
  s.theta = std::move(out);
  s.t = t + dt;
  const double sup = lp_norm(inverse(s.theta), kInf);
  if (s.initial_sup > 0.0 && sup > 1e6 * s.initial_sup)
    throw BlowupError(s.t, "sup norm grew by more than 1e6x");
}

void Evolver::append_ledger(SimulationState& s, const TimeForcing* f) const {
  static const std::vector<double> ps = {1.0, 2.0, kInf};
  PhysicalField th = inverse(s.theta);
  std::vector<double> lp = {lp_norm(th, 1.0), lp_norm(th, 2.0),
                            lp_norm(th, kInf)};

  std::vector<std::vector<double>> blocks;
  blocks.reserve(fam_.q_max() - fam_.q_min() + 1);
  for (int q = fam_.q_min(); q <= fam_.q_max(); ++q) {
    if (!fam_.active(q)) {
      blocks.push_back({0.0, 0.0, 0.0});
      continue;
    }
    PhysicalField b = inverse(fam_.block(s.theta, q));
    blocks.push_back({lp_norm(b, 1.0), lp_norm(b, 2.0), lp_norm(b, kInf)});
  }

  // ||grad v||_inf as the max over the four entries sup |d_i v_j|
  double grad_inf = 0.0;
  {
    SpectralField v1(grid_), v2(grid_);
    for (std::size_t i = 0; i < grid_.size(); ++i) {
      v1[i] = -r2_[i] * s.theta[i];
      v2[i] = r1_[i] * s.theta[i];
    }
    for (const SpectralField* v : {&v1, &v2}) {
      SpectralField g1(grid_), g2(grid_);
      for (std::size_t i = 0; i < grid_.size(); ++i) {
        g1[i] = d1_[i] * (*v)[i];
        g2[i] = d2_[i] * (*v)[i];
      }
      grad_inf = std::max(grad_inf, lp_norm(inverse(g1), kInf));
      grad_inf = std::max(grad_inf, lp_norm(inverse(g2), kInf));
    }
  }

  if (f) {
    SpectralField fh = (*f)(s.t);
    PhysicalField fp = inverse(fh);
    std::vector<double> f_lp = {lp_norm(fp, 1.0), lp_norm(fp, 2.0),
                                lp_norm(fp, kInf)};
    std::vector<std::vector<double>> f_blocks;
    for (int q = fam_.q_min(); q <= fam_.q_max(); ++q) {
      if (!fam_.active(q)) {
        f_blocks.push_back({0.0, 0.0, 0.0});
        continue;
      }
      PhysicalField b = inverse(fam_.block(fh, q));
      f_blocks.push_back(
          {lp_norm(b, 1.0), lp_norm(b, 2.0), lp_norm(b, kInf)});
    }
    s.ledger.append(s.t, lp, blocks, grad_inf, f_lp, f_blocks);
  } else {
    s.ledger.append(s.t, lp, blocks, grad_inf);
  }
}

SimulationState Evolver::make_state(const SpectralField& theta0,
                                    bool with_forcing_rows,
                                    const TimeForcing* f) const {
  if (!theta0.mean_zero())
    throw DomainError("initial data must be mean-zero");
  SimulationState s;
  s.t = 0.0;
  s.theta = theta0;
  s.ledger = TimeSeriesLedger(fam_.q_min(), fam_.q_max(), {1.0, 2.0, kInf});
  s.initial_sup = lp_norm(inverse(theta0), kInf);
  append_ledger(s, with_forcing_rows ? f : nullptr);
  return s;
}

void Evolver::step_qg(SimulationState& s) const {
  advance(s, nullptr, nullptr);
  append_ledger(s, nullptr);
}

void Evolver::step_td(SimulationState& s, const TimeVelocity& v,
                      const TimeForcing* f) const {
  advance(s, &v, f);
  append_ledger(s, f);
}

RunResult run_qg(const SpectralField& theta0, const SolverConfig& cfg,
                 const RunObserver& observer) {
  Evolver ev(theta0.grid(), cfg);
  RunResult res;
  res.state = ev.make_state(theta0);
  if (observer) observer(res.state, 0);
  const int steps = static_cast<int>(std::llround(cfg.t_end / cfg.dt));
  for (int k = 1; k <= steps; ++k) {
    try {
      ev.step_qg(res.state);
    } catch (const BlowupError& e) {
      res.blowup = true;
      res.blowup_reason = e.what();
      return res;
    }
    res.steps = k;
    if (observer) observer(res.state, k);
  }
  return res;
}

RunResult run_td(const SpectralField& theta0, const SolverConfig& cfg,
                 const TimeVelocity& v, const TimeForcing* f,
                 const RunObserver& observer) {
  auto [v1, v2] = v(0.0);
  if (relative_spectral_divergence(v1, v2) > 1e-8)
    throw ConfigError("prescribed velocity is not divergence-free");
  if (f && !(*f)(0.0).mean_zero())
    throw ConfigError("forcing must be mean-zero");

  Evolver ev(theta0.grid(), cfg);
  RunResult res;
  res.state = ev.make_state(theta0, f != nullptr, f);
  if (observer) observer(res.state, 0);
  const int steps = static_cast<int>(std::llround(cfg.t_end / cfg.dt));
  for (int k = 1; k <= steps; ++k) {
    try {
      ev.step_td(res.state, v, f);
    } catch (const BlowupError& e) {
      res.blowup = true;
      res.blowup_reason = e.what();
      return res;
    }
    res.steps = k;
    if (observer) observer(res.state, k);
  }
  return res;
}

SchemeState run_iterative_scheme(const SpectralField& theta0,
                                 const SolverConfig& cfg, int n_max, double T,
                                 int sample_every) {
  const Grid& g = theta0.grid();
  SolverConfig scfg = cfg;
  scfg.t_end = T;
  Evolver ev(g, scfg);
  const DyadicFamily& fam = ev.family();
  const int steps = static_cast<int>(std::llround(T / scfg.dt));

  SchemeState out;
  for (int k = 0; k <= steps; k += sample_every) out.sample_times.push_back(k * scfg.dt);

  // theta_0 is the zero trajectory
  std::vector<SpectralField> prev(steps + 1, SpectralField(g));
  const BesovSpec diff_spec{0.0, kInf, 1.0, true};

  for (int it = 1; it <= n_max; ++it) {
    // velocity of the previous iterate, linearly interpolated in time
    TimeVelocity vel = [&prev, &scfg, steps](double t) {
      const double pos = t / scfg.dt;
      int i = static_cast<int>(std::floor(pos));
      i = std::max(0, std::min(i, steps - 1));
      const double w = std::min(std::max(pos - i, 0.0), 1.0);
      SpectralField th = (1.0 - w) * prev[i] + w * prev[i + 1];
      return riesz_velocity(th);
    };

    SpectralField init = fam.lowpass(theta0, it - 1);  // S_n theta0
    init.project_mean_zero();
    SimulationState s = ev.make_state(init);
    std::vector<SpectralField> traj;
    traj.reserve(steps + 1);
    traj.push_back(s.theta);
    bool aborted = false;
    for (int k = 1; k <= steps; ++k) {
      try {
        ev.step_td(s, vel, nullptr);
      } catch (const BlowupError&) {
        aborted = true;
        break;
      }
      traj.push_back(s.theta);
    }
    if (aborted) {
      out.aborted = true;
      out.aborted_iterate = it;
      break;
    }

    std::vector<double> d;
    double sup = 0.0;
    for (int k = 0; k <= steps; k += sample_every) {
      SpectralField diff = traj[k] - prev[k];
      diff.project_mean_zero();
      const double val = besov_norm(diff, diff_spec, fam);
      d.push_back(val);
      sup = std::max(sup, val);
    }
    out.diffs.push_back(std::move(d));
    out.diff_sup.push_back(sup);
    prev = std::move(traj);
  }
  return out;
}

SmallnessReport smallness_report(const SpectralField& theta0, double alpha,
                                 const DyadicFamily& fam) {
  if (!theta0.mean_zero())
    throw DomainError("smallness report requires mean-zero data");
  SmallnessReport rep;
  rep.b_smallness =
      besov_norm(theta0, BesovSpec{1.0 - alpha, kInf, 1.0, true}, fam);
  for (double p : {1.0, 2.0, kInf}) {
    const double sc = 1.0 + 2.0 / p - alpha;
    rep.b_critical[p] = besov_norm(theta0, BesovSpec{sc, p, 1.0, true}, fam);
  }
  return rep;
}

double local_time_functional(const SpectralField& theta0, double alpha,
                             double c, double t, const DyadicFamily& fam) {
  if (!(c > 0.0)) throw ConfigError("rate constant c must be positive");
  double acc = 0.0;
  for (int q : fam.active_blocks()) {
    const double decay = 1.0 - std::exp(-c * t * std::pow(2.0, q * alpha));
    acc += std::sqrt(decay) * std::pow(2.0, q * (1.0 - alpha)) *
           lp_norm(inverse(fam.block(theta0, q)), kInf);
  }
  return acc;
}

double local_time_horizon(const SpectralField& theta0, double alpha, double c,
                          double eta, const DyadicFamily& fam) {
  // per-block weights 2^{q(1-alpha)} ||Delta_q theta0||_inf, computed once
  std::vector<std::pair<int, double>> weights;
  double sat = 0.0;
  for (int q : fam.active_blocks()) {
    const double w = std::pow(2.0, q * (1.0 - alpha)) *
                     lp_norm(inverse(fam.block(theta0, q)), kInf);
    weights.emplace_back(q, w);
    sat += w;
  }
  if (sat <= eta) return kInf;

  auto value = [&](double t) {
    double acc = 0.0;
    for (const auto& [q, w] : weights)
      acc += std::sqrt(1.0 - std::exp(-c * t * std::pow(2.0, q * alpha))) * w;
    return acc;
  };
  double lo = 0.0, hi = 1.0;
  while (value(hi) <= eta) hi *= 2.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (value(mid) <= eta ? lo : hi) = mid;
  }
  return lo;
}

Theorem2Probe theorem2_probe(const TimeSeriesLedger& ledger,
                             const SpectralField& theta0, double alpha,
                             double s, double p, double r, double T,
                             const DyadicFamily& fam) {
  if (!(s > -1.0 && s < 1.0)) throw DomainError("s must lie in (-1, 1)");
  if (r != 1.0 && r != 2.0 && r != kInf)
    throw DomainError("r must be one of {1, 2, inf}");

  Theorem2Probe probe;
  const double s_lhs = s + (r == kInf ? 0.0 : alpha / r);
  probe.lhs = mixed_time_norm(ledger, BesovSpec{s_lhs, p, 1.0, true}, r, T,
                              /*tilde=*/true);
  probe.rhs_data = besov_norm(theta0, BesovSpec{s, p, 1.0, true}, fam);
  if (ledger.has_forcing())
    probe.rhs_data += mixed_time_norm_forcing(
        ledger, BesovSpec{s, p, 1.0, true}, 1.0, T, /*tilde=*/false);
  const std::vector<double> V = ledger.V();
  probe.V = V.front();
  for (std::size_t i = 0; i < ledger.times().size(); ++i)
    if (ledger.times()[i] <= T + 1e-12) probe.V = V[i];
  probe.ratio = probe.lhs / (std::exp(probe.V) * probe.rhs_data);
  return probe;
}

}  // namespace sqg
