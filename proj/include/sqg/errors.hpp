#pragma once

#include <stdexcept>
#include <string>

namespace sqg {

/// Invalid grid, solver or experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation applied outside its mathematical domain
/// (e.g. a mean-zero-only multiplier on a field with a nonzero mean).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rescaling factor the same-grid resampler cannot represent.
class UnsupportedScaleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Map that is not exactly measure-preserving on the square lattice.
class UnsupportedMapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mixed space-time norm was requested from a ledger missing the data.
class IncompleteLedgerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ratio of norms where the denominator block is identically zero.
class UndefinedRatioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Timestep violates the advective CFL constraint; carries the admissible dt.
class CflError : public std::runtime_error {
 public:
  CflError(double requested, double required)
      : std::runtime_error("dt " + std::to_string(requested) +
                           " violates CFL; required dt <= " +
                           std::to_string(required)),
        requested_dt(requested),
        required_dt(required) {}
  double requested_dt;
  double required_dt;
};

/// Solution lost validity (NaN or runaway sup norm); the last valid
/// state is kept by the caller that owns the run loop.
class BlowupError : public std::runtime_error {
 public:
  BlowupError(double time, const std::string& reason)
      : std::runtime_error("blowup detected at t=" + std::to_string(time) +
                           ": " + reason),
        t(time) {}
  double t;
};

}  // namespace sqg
