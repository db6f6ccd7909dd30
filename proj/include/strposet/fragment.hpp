#pragma once

// Finite two-dimensional posets with a unique minimal node, stored as the
// bipartite incidence between height-one and height-two elements.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "strposet/tier_set.hpp"

namespace strposet {

enum class Tier : std::uint8_t { Min = 0, H1 = 1, H2 = 2 };

struct ElementId {
  Tier tier = Tier::Min;
  std::size_t index = 0;

  static constexpr ElementId min() { return {Tier::Min, 0}; }
  static constexpr ElementId h1(std::size_t i) { return {Tier::H1, i}; }
  static constexpr ElementId h2(std::size_t i) { return {Tier::H2, i}; }

  friend auto operator<=>(const ElementId&, const ElementId&) = default;
};

/// A subset of the whole fragment, split by tier.
struct ElementSet {
  bool min = false;
  TierSet h1;
  TierSet h2;

  static ElementSet of(std::initializer_list<ElementId> items);
  static ElementSet curves(const TierSet& s) { return {false, s, {}}; }
  static ElementSet points(const TierSet& s) { return {false, {}, s}; }

  bool contains(ElementId e) const;
  void insert(ElementId e);
  std::size_t size() const { return (min ? 1 : 0) + h1.size() + h2.size(); }
  bool empty() const { return size() == 0; }
  std::vector<ElementId> elements() const;

  friend bool operator==(const ElementSet&, const ElementSet&) = default;
};

struct Labels {
  std::vector<std::string> h1;
  std::vector<std::string> h2;

  bool empty() const { return h1.empty() && h2.empty(); }
  friend bool operator==(const Labels&, const Labels&) = default;
};

using Incidence = std::vector<std::pair<std::size_t, std::size_t>>;

/// Immutable once built. The order is: Min below everything, x1 < x2 exactly
/// when (x1, x2) is an incidence pair, nothing else strict.
class PosetFragment {
 public:
  PosetFragment() = default;

  /// Throws ValidationError on out-of-range or duplicate pairs, or when a
  /// tier exceeds kMaxTierCapacity. Other invariants are left to validate().
  static PosetFragment from_pairs(std::size_t n1, std::size_t n2, const Incidence& incidence,
                                  Labels labels = {});

  std::size_t n1() const { return up_.size(); }
  std::size_t n2() const { return down_.size(); }

  /// Height-two elements above height-one element x.
  const TierSet& up(std::size_t x) const { return up_.at(x); }
  /// Height-one elements below height-two element m.
  const TierSet& down(std::size_t m) const { return down_.at(m); }
  bool below(std::size_t x, std::size_t m) const { return up_.at(x).contains(m); }

  TierSet all_h1() const { return TierSet::prefix(n1()); }
  TierSet all_h2() const { return TierSet::prefix(n2()); }

  /// Intersection of up(x) over xs; all of X2 when xs is empty.
  TierSet common_up(const TierSet& xs) const;
  /// Intersection of down(m) over ms; all of X1 when ms is empty.
  TierSet common_down(const TierSet& ms) const;
  /// Union of up(x) over xs.
  TierSet any_up(const TierSet& xs) const;

  /// Sorted (i, j) pairs.
  Incidence incidence() const;
  std::size_t incidence_size() const;

  const Labels& labels() const { return labels_; }
  bool has_labels() const { return !labels_.empty(); }
  std::string h1_label(std::size_t i) const;
  std::string h2_label(std::size_t j) const;
  std::string label(ElementId e) const;

  friend bool operator==(const PosetFragment&, const PosetFragment&) = default;

 private:
  std::vector<TierSet> up_;
  std::vector<TierSet> down_;
  Labels labels_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const PosetFragment& fragment, std::size_t max_tier = kDefaultTierCap);
/// Throws ValidationError listing every violation.
void require_valid(const PosetFragment& fragment, std::size_t max_tier = kDefaultTierCap);

/// Throws Error when e does not belong to the fragment.
void check_element(const PosetFragment& fragment, ElementId e);

bool leq(const PosetFragment& fragment, ElementId x, ElementId y);

/// G(A): elements above every element of A. The empty set yields everything.
ElementSet upper_set(const PosetFragment& fragment, const ElementSet& a);
/// G*(A) = G(A) \ A.
ElementSet strict_upper_set(const PosetFragment& fragment, const ElementSet& a);
/// L(A): elements below every element of A. The empty set yields everything.
ElementSet lower_set(const PosetFragment& fragment, const ElementSet& a);
/// L*(A) = L(A) \ A.
ElementSet strict_lower_set(const PosetFragment& fragment, const ElementSet& a);

/// Minimal elements of a subset.
ElementSet minimal_elements(const PosetFragment& fragment, const ElementSet& s);

/// Minimal upper bounds: min G(A). Throws Error on empty A.
ElementSet mub(const PosetFragment& fragment, const ElementSet& a);

/// True iff mub(K) is exactly the point set B, for K a set of curves.
bool mub_equals_points(const PosetFragment& fragment, const TierSet& k, const TierSet& b);

/// Length of the longest chain ending at e.
int height(const PosetFragment& fragment, ElementId e);
/// Length of the longest chain in the fragment.
int dim(const PosetFragment& fragment);

}  // namespace strposet
