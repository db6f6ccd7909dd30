#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace strposet {

inline constexpr std::size_t kSmallPosetLimit = 12;

/// A finite poset given by its full order relation, leq[i][j] meaning i <= j.
/// No validation beyond shape; callers build it from a genuine order.
class AbstractPoset {
 public:
  AbstractPoset() = default;
  explicit AbstractPoset(std::vector<std::vector<bool>> leq);

  std::size_t size() const { return leq_.size(); }
  bool leq(std::size_t i, std::size_t j) const { return leq_[i][j]; }
  bool less(std::size_t i, std::size_t j) const { return i != j && leq_[i][j]; }

  /// Pairs (i, j) with i < j and nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

  /// Longest chain length (number of strict steps).
  int dimension() const;

 private:
  std::vector<std::vector<bool>> leq_;
};

/// r minimal elements under a single top.
AbstractPoset make_I(std::size_t r);
/// n-element chain.
AbstractPoset make_chain(std::size_t n);

/// Brute-force order isomorphism test with pruning. Throws CapacityError when
/// either poset has more than kSmallPosetLimit elements.
bool small_poset_isomorphic(const AbstractPoset& p, const AbstractPoset& q);

}  // namespace strposet
