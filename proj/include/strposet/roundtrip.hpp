#pragma once

// Hidden-relabeling round trips: rename X by a random rho*, induce phi on
// Str, reconstruct rho from phi, and compare with rho*.

#include <cstdint>
#include <optional>

#include "strposet/conditions.hpp"
#include "strposet/reconstruction.hpp"

namespace strposet {

struct RoundTripOptions {
  std::uint64_t seed = 0;
  /// Redirect one node of phi before reconstructing.
  bool corrupt = false;
  /// K-set size cap; chosen from the battery and X when empty.
  std::optional<std::size_t> kset_cap;
  CurveMethod method = CurveMethod::KSets;
  unsigned threads = 1;
  BatteryParams battery;
};

struct RoundTripResult {
  IsoMap hidden;
  BatteryResult battery;
  std::size_t kset_cap = 0;
  std::optional<StrNode> corrupted;
  std::optional<StrIso> phi;
  Reconstruction reconstruction;
  /// rho was produced and equals the hidden map.
  bool recovered = false;
  /// rho was produced but differs from the hidden map. Never expected.
  bool mismatch = false;
};

/// The K-set cap used when none is given: the smallest cap that separates
/// every curve on X, searched up to one more than the largest J3 witness.
std::size_t default_kset_cap(const PosetFragment& fragment, const BatteryResult& battery);

RoundTripResult run_roundtrip(const PosetFragment& fragment, const RoundTripOptions& options);

}  // namespace strposet
