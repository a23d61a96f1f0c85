#pragma once

#include <string>

#include "sqg/field.hpp"

namespace sqg {

/// Snapshot metadata, stored in a JSON sidecar next to the raw data.
struct SnapshotMeta {
  int n = 0;
  double length = kTwoPi;
  int d = 2;
  double time = 0.0;
  std::string name;
};

/// Writes <base>.bin (raw little-endian float64, row-major) and
/// <base>.json (the sidecar). Round trips are bit-exact.
void write_snapshot(const std::string& base, const PhysicalField& u,
                    double time, const std::string& name);

/// Reads the pair written by write_snapshot. `base` may also be the path
/// of either file of the pair.
std::pair<PhysicalField, SnapshotMeta> read_snapshot(const std::string& base);

}  // namespace sqg
