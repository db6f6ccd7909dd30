#pragma once

// The shared fragment corpus used by the property tests and the acceptance
// binary: seeded random fragments, small affine-plane models, and the two
// hand-built fragments, each with a few fibers chosen for enumeration.

#include <string>
#include <vector>

#include "strposet/fragment.hpp"

namespace corpus {

struct FiberSpec {
  strposet::TierSet second;
  strposet::TierSet support;
  std::size_t amax = 0;
};

struct Entry {
  std::string name;
  strposet::PosetFragment fragment;
  std::size_t max_tier = strposet::kDefaultTierCap;
  std::vector<FiberSpec> fibers;
};

inline constexpr std::size_t kSupportCap = 8;
inline constexpr std::size_t kAmaxCap = 5;
inline constexpr std::size_t kFibersPerFragment = 4;

/// Up to four fibers: singleton ordinates first, then common upper sets of
/// curve pairs. Ray ordinates (B = up(x) for some curve x) are skipped.
std::vector<FiberSpec> pick_fibers(const strposet::PosetFragment& fragment);

/// Built once; 24 fragments.
const std::vector<Entry>& all();

}  // namespace corpus
