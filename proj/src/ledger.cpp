#include "sqg/ledger.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace sqg {
namespace {

std::string fmt_double(double x) {
  if (x == kInf) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// L^r of a sampled nonnegative function on [0, T]: trapezoid quadrature
/// of g^r (max of samples for r = inf).
double time_lr(const std::vector<double>& t, const std::vector<double>& g,
               double r, double T) {
  if (t.size() == 1 || T == 0.0) {
    // degenerate interval: the L^inf convention (sup = the sample)
    return r == kInf ? g.front() : (r == 1.0 ? 0.0 : 0.0);
  }
  if (r == kInf) {
    double m = 0.0;
    for (std::size_t i = 0; i < t.size() && t[i] <= T + 1e-12; ++i)
      m = std::max(m, g[i]);
    return m;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < t.size() && t[i] < T; ++i) {
    const double dt = std::min(t[i + 1], T) - t[i];
    const double a = std::pow(g[i], r), b = std::pow(g[i + 1], r);
    acc += 0.5 * dt * (a + b);
  }
  return std::pow(acc, 1.0 / r);
}

}  // namespace

TimeSeriesLedger::TimeSeriesLedger(int q_min, int q_max,
                                   std::vector<double> ps)
    : q_min_(q_min), q_max_(q_max), ps_(std::move(ps)) {}

std::size_t TimeSeriesLedger::p_index(double p) const {
  for (std::size_t i = 0; i < ps_.size(); ++i)
    if (ps_[i] == p) return i;
  throw IncompleteLedgerError("ledger does not record p = " + fmt_double(p));
}

void TimeSeriesLedger::append(double time, const std::vector<double>& lp,
                              const std::vector<std::vector<double>>& block_lp,
                              double grad_v_inf,
                              const std::vector<double>& f_lp,
                              const std::vector<std::vector<double>>& f_block_lp) {
  times_.push_back(time);
  lp_.push_back(lp);
  std::vector<double> flat;
  flat.reserve(block_lp.size() * ps_.size());
  for (const auto& row : block_lp)
    for (double v : row) flat.push_back(v);
  block_lp_.push_back(std::move(flat));
  grad_v_inf_.push_back(grad_v_inf);
  if (!f_lp.empty()) {
    f_lp_.push_back(f_lp);
    std::vector<double> fflat;
    for (const auto& row : f_block_lp)
      for (double v : row) fflat.push_back(v);
    f_block_lp_.push_back(std::move(fflat));
  }
}

double TimeSeriesLedger::lp(std::size_t row, double p) const {
  return lp_[row][p_index(p)];
}

double TimeSeriesLedger::block_lp(std::size_t row, int q, double p) const {
  if (q < q_min_ || q > q_max_)
    throw IncompleteLedgerError("block q out of recorded range");
  return block_lp_[row][(q - q_min_) * ps_.size() + p_index(p)];
}

double TimeSeriesLedger::forcing_lp(std::size_t row, double p) const {
  if (f_lp_.empty()) throw IncompleteLedgerError("no forcing recorded");
  return f_lp_[row][p_index(p)];
}

double TimeSeriesLedger::forcing_block_lp(std::size_t row, int q,
                                          double p) const {
  if (f_block_lp_.empty()) throw IncompleteLedgerError("no forcing recorded");
  return f_block_lp_[row][(q - q_min_) * ps_.size() + p_index(p)];
}

std::vector<double> TimeSeriesLedger::V() const {
  std::vector<double> v(times_.size(), 0.0);
  for (std::size_t i = 1; i < times_.size(); ++i)
    v[i] = v[i - 1] + 0.5 * (times_[i] - times_[i - 1]) *
                          (grad_v_inf_[i] + grad_v_inf_[i - 1]);
  return v;
}

void TimeSeriesLedger::write_csv(const std::string& path) const {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ConfigError("cannot open " + tmp);
    out << "time,p,lp,q,block_lp,grad_v_inf\n";
    for (std::size_t row = 0; row < times_.size(); ++row) {
      for (int q = q_min_; q <= q_max_; ++q) {
        for (std::size_t pi = 0; pi < ps_.size(); ++pi) {
          out << fmt_double(times_[row]) << ',' << fmt_double(ps_[pi]) << ','
              << fmt_double(lp_[row][pi]) << ',' << q << ','
              << fmt_double(block_lp_[row][(q - q_min_) * ps_.size() + pi])
              << ',' << fmt_double(grad_v_inf_[row]) << '\n';
        }
      }
    }
  }
  std::filesystem::rename(tmp, path);
}

namespace {

double mixed_norm_impl(const TimeSeriesLedger& led, const BesovSpec& spec,
                       double r, double T, bool tilde, bool forcing) {
  if (!led.covers(T))
    throw IncompleteLedgerError("ledger does not cover [0, T]");
  const auto& ts = led.times();
  std::size_t rows = 0;
  while (rows < ts.size() && ts[rows] <= T + 1e-12) ++rows;
  std::vector<double> sub_t(ts.begin(), ts.begin() + rows);

  auto block_at = [&](std::size_t row, int q) {
    return forcing ? led.forcing_block_lp(row, q, spec.p)
                   : led.block_lp(row, q, spec.p);
  };

  if (tilde) {
    std::vector<double> terms;
    for (int q = led.q_min(); q <= led.q_max(); ++q) {
      std::vector<double> g(rows);
      for (std::size_t i = 0; i < rows; ++i) g[i] = block_at(i, q);
      terms.push_back(std::pow(2.0, q * spec.s) * time_lr(sub_t, g, r, T));
    }
    return lm_norm(terms, spec.m);
  }
  std::vector<double> inst(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<double> terms;
    for (int q = led.q_min(); q <= led.q_max(); ++q)
      terms.push_back(std::pow(2.0, q * spec.s) * block_at(i, q));
    inst[i] = lm_norm(terms, spec.m);
  }
  return time_lr(sub_t, inst, r, T);
}

}  // namespace

double mixed_time_norm(const TimeSeriesLedger& ledger, const BesovSpec& spec,
                       double r, double T, bool tilde) {
  return mixed_norm_impl(ledger, spec, r, T, tilde, false);
}

double mixed_time_norm_forcing(const TimeSeriesLedger& ledger,
                               const BesovSpec& spec, double r, double T,
                               bool tilde) {
  return mixed_norm_impl(ledger, spec, r, T, tilde, true);
}

}  // namespace sqg
