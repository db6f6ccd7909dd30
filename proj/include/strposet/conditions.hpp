#pragma once

// Finite-witness checkers for the conditions P1-P5 and the J-poset axioms J1-J4.
//
// Infinitude clauses become caller-supplied thresholds, and every quantifier
// ranges over the fragment only. A report that "holds" says nothing about
// extensions of the fragment.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strposet/fragment.hpp"

namespace strposet {

enum class Condition { P1, P2, P3, P4, P5, J1, J2, J3, J4 };

std::string to_string(Condition c);

struct WitnessEntry {
  /// Named parts of the checked instance, e.g. {"S", ...}, {"T", ...}.
  std::vector<std::pair<std::string, ElementSet>> instance;
  /// The witness found; empty for a failed instance.
  std::optional<ElementSet> witness;
  std::string note;

  bool failed() const { return !witness.has_value(); }
};

struct ConditionReport {
  Condition condition = Condition::P1;
  bool holds = true;
  std::vector<std::pair<std::string, std::int64_t>> params;
  std::vector<WitnessEntry> witnesses;
  std::string semantics;

  std::int64_t param(const std::string& name) const;
  /// First failed entry, if any.
  const WitnessEntry* first_failure() const;
};

/// P1..P4 in that order. P3 uses threshold k; P4 reports the largest number
/// of common upper bounds over pairs of distinct curves as param "max_common".
std::vector<ConditionReport> check_p1_to_p4(const PosetFragment& fragment, std::size_t k = 2);

/// Some curve w below every point of T such that every point above both w and
/// some s in S lies in T. Lowest index wins. Throws Error on empty S or T.
std::optional<std::size_t> find_p5_witness(const PosetFragment& fragment, const TierSet& s,
                                           const TierSet& t);

/// P5 over every nonempty S with |S| <= s_max and T with |T| <= t_max.
ConditionReport check_p5(const PosetFragment& fragment, std::size_t s_max = 1,
                         std::size_t t_max = 1);

ConditionReport check_j1(const PosetFragment& fragment);
/// Every curve has at least k points above it.
ConditionReport check_j2(const PosetFragment& fragment, std::size_t k = 2);

/// K within the curves below m, disjoint from F, |K| <= size_cap, with
/// mub K = {m}. Searched by increasing |K|, lexicographic within a size.
std::optional<TierSet> find_j3_witness(const PosetFragment& fragment, std::size_t m,
                                       const TierSet& forbidden, std::size_t size_cap = 4);

/// find_j3_witness for every point m and every F with |F| <= f_max. Only F
/// inside the curves below m are enumerated; curves elsewhere never occur in
/// a candidate K. Param "max_witness_size" is the largest K returned.
ConditionReport check_j3(const PosetFragment& fragment, std::size_t f_max = 2,
                         std::size_t size_cap = 4);

/// Every nonempty T of points with |T| <= t_max has a common curve below it.
ConditionReport check_j4(const PosetFragment& fragment, std::size_t t_max = 2);

struct SpecialT {
  /// Lowest-index curve outside S below every point of T.
  std::optional<std::size_t> direct;
  /// Point above no element of S, used by the two-step construction.
  std::optional<std::size_t> fresh_point;
  /// Lowest-index curve below T together with fresh_point.
  std::optional<std::size_t> via_fresh_point;

  std::optional<std::size_t> t() const { return direct; }
};

/// A curve t outside S with t < T, found both by direct search and by first
/// choosing a point v above no element of S and then a curve below T and v.
/// Throws Error on empty T, or if the two routes contradict each other.
SpecialT find_special_t(const PosetFragment& fragment, const TierSet& s, const TierSet& t);

struct BatteryParams {
  std::size_t k = 2;
  std::size_t f_max = 2;
  std::size_t j3_size_cap = 4;
  std::size_t t_max = 2;
};

/// Fragment-level J2/J3/J4 checks required before a reconstruction round trip.
struct BatteryResult {
  bool passed = false;
  std::vector<std::string> reasons;
  std::size_t max_j3_witness_size = 0;
  std::vector<ConditionReport> reports;
};

BatteryResult run_battery(const PosetFragment& fragment, const BatteryParams& params = {});

}  // namespace strposet
