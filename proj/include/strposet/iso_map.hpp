#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "strposet/fragment.hpp"

namespace strposet {

/// Height-preserving bijection between two fragments, one permutation per
/// tier. Min maps to Min implicitly.
class IsoMap {
 public:
  IsoMap() = default;
  /// Throws ValidationError unless both maps are permutations.
  IsoMap(std::vector<std::size_t> h1_map, std::vector<std::size_t> h2_map);

  static IsoMap identity(std::size_t n1, std::size_t n2);

  std::size_t n1() const { return h1_.size(); }
  std::size_t n2() const { return h2_.size(); }
  std::size_t h1(std::size_t x) const { return h1_.at(x); }
  std::size_t h2(std::size_t m) const { return h2_.at(m); }
  const std::vector<std::size_t>& h1_map() const { return h1_; }
  const std::vector<std::size_t>& h2_map() const { return h2_; }

  ElementId apply(ElementId e) const;
  TierSet apply_h1(const TierSet& s) const;
  TierSet apply_h2(const TierSet& s) const;

  IsoMap inverse() const;

  friend bool operator==(const IsoMap&, const IsoMap&) = default;

 private:
  std::vector<std::size_t> h1_;
  std::vector<std::size_t> h2_;
};

/// Incidence violations of `map` as an isomorphism source -> target; empty
/// when it is one.
std::vector<std::string> iso_violations(const PosetFragment& source, const PosetFragment& target,
                                        const IsoMap& map);
bool is_isomorphism(const PosetFragment& source, const PosetFragment& target, const IsoMap& map);

/// The fragment obtained by renaming every element of `source` through `map`.
/// Labels travel with their elements.
PosetFragment apply_iso(const PosetFragment& source, const IsoMap& map);

/// Uniformly random per-tier renaming, deterministic in seed.
std::pair<PosetFragment, IsoMap> relabel(const PosetFragment& fragment, std::uint64_t seed);

/// Uniform random permutation of {0..n-1} by Fisher-Yates with rejection
/// sampling, so results do not depend on the standard library's distributions.
template <typename Rng>
std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);

/// Uniform integer in [0, bound) by rejection sampling. bound > 0.
template <typename Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  while (true) {
    std::uint64_t v = rng();
    if (v < limit) return v % bound;
  }
}

template <typename Rng>
std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(p[i - 1], p[j]);
  }
  return p;
}

}  // namespace strposet
