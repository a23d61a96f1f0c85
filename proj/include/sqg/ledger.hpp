#pragma once

#include <string>
#include <vector>

#include "sqg/littlewood_paley.hpp"

namespace sqg {

/// Per-timestep records: global L^p norms, per-block L^p norms, the
/// velocity Lipschitz norm, and (for forced runs) the forcing data.
/// Appended by the time loop (single writer), read-only afterwards.
class TimeSeriesLedger {
 public:
  TimeSeriesLedger() = default;
  TimeSeriesLedger(int q_min, int q_max, std::vector<double> ps);

  const std::vector<double>& ps() const { return ps_; }
  int q_min() const { return q_min_; }
  int q_max() const { return q_max_; }
  const std::vector<double>& times() const { return times_; }
  std::size_t rows() const { return times_.size(); }

  /// One record; block_lp and f_block_lp are indexed [q - q_min][p_index].
  void append(double time, const std::vector<double>& lp,
              const std::vector<std::vector<double>>& block_lp,
              double grad_v_inf,
              const std::vector<double>& f_lp = {},
              const std::vector<std::vector<double>>& f_block_lp = {});

  double lp(std::size_t row, double p) const;
  double block_lp(std::size_t row, int q, double p) const;
  double forcing_lp(std::size_t row, double p) const;
  double forcing_block_lp(std::size_t row, int q, double p) const;
  double grad_v_inf(std::size_t row) const { return grad_v_inf_[row]; }
  bool has_forcing() const { return !f_lp_.empty(); }

  /// V(t_i) = int_0^{t_i} ||grad v||_inf dtau by the trapezoid rule;
  /// nondecreasing.
  std::vector<double> V() const;

  /// One CSV row per (time, q, p): time,p,lp,q,block_lp,grad_v_inf.
  void write_csv(const std::string& path) const;

  std::size_t p_index(double p) const;
  bool covers(double T) const {
    return !times_.empty() && times_.front() <= 0.0 &&
           times_.back() >= T - 1e-12;
  }

 private:
  int q_min_ = 0;
  int q_max_ = -1;
  std::vector<double> ps_;
  std::vector<double> times_;
  std::vector<std::vector<double>> lp_;        // [row][p]
  std::vector<std::vector<double>> block_lp_;  // [row][(q-q_min)*np + p]
  std::vector<double> grad_v_inf_;
  std::vector<std::vector<double>> f_lp_;
  std::vector<std::vector<double>> f_block_lp_;
};

/// Mixed space-time Besov norm over [0, T] from the recorded per-block
/// data. tilde = true: l^m over q of 2^{qs} (L^r-in-time of the block L^p
/// norm); tilde = false: L^r-in-time of the instantaneous Besov norm.
/// Time integrals use the trapezoid rule on the recorded grid.
double mixed_time_norm(const TimeSeriesLedger& ledger, const BesovSpec& spec,
                       double r, double T, bool tilde);

/// Same functional applied to the recorded forcing norms.
double mixed_time_norm_forcing(const TimeSeriesLedger& ledger,
                               const BesovSpec& spec, double r, double T,
                               bool tilde);

}  // namespace sqg
