#include "strposet/iso_map.hpp"

#include <random>

#include "strposet/error.hpp"

namespace strposet {

namespace {

bool is_permutation_vector(const std::vector<std::size_t>& p) {
  std::vector<bool> seen(p.size(), false);
  for (auto v : p) {
    if (v >= p.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::vector<std::size_t> invert(const std::vector<std::size_t>& p) {
  std::vector<std::size_t> inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
  return inv;
}

}  // namespace

IsoMap::IsoMap(std::vector<std::size_t> h1_map, std::vector<std::size_t> h2_map)
    : h1_(std::move(h1_map)), h2_(std::move(h2_map)) {
  if (!is_permutation_vector(h1_)) throw ValidationError("h1 map is not a bijection");
  if (!is_permutation_vector(h2_)) throw ValidationError("h2 map is not a bijection");
}

IsoMap IsoMap::identity(std::size_t n1, std::size_t n2) {
  std::vector<std::size_t> a(n1), b(n2);
  for (std::size_t i = 0; i < n1; ++i) a[i] = i;
  for (std::size_t j = 0; j < n2; ++j) b[j] = j;
  return IsoMap(std::move(a), std::move(b));
}

ElementId IsoMap::apply(ElementId e) const {
  switch (e.tier) {
    case Tier::Min: return e;
    case Tier::H1: return ElementId::h1(h1(e.index));
    case Tier::H2: return ElementId::h2(h2(e.index));
  }
  return e;
}

TierSet IsoMap::apply_h1(const TierSet& s) const {
  TierSet out;
  for (auto i : s) out.insert(h1(i));
  return out;
}

TierSet IsoMap::apply_h2(const TierSet& s) const {
  TierSet out;
  for (auto j : s) out.insert(h2(j));
  return out;
}

IsoMap IsoMap::inverse() const { return IsoMap(invert(h1_), invert(h2_)); }

std::vector<std::string> iso_violations(const PosetFragment& source, const PosetFragment& target,
                                        const IsoMap& map) {
  std::vector<std::string> out;
  if (map.n1() != source.n1() || map.n1() != target.n1() || map.n2() != source.n2() ||
      map.n2() != target.n2()) {
    out.push_back("tier sizes of map, source and target disagree");
    return out;
  }
  for (std::size_t i = 0; i < source.n1(); ++i) {
    for (std::size_t j = 0; j < source.n2(); ++j) {
      const bool s = source.below(i, j);
      const bool t = target.below(map.h1(i), map.h2(j));
      if (s != t) {
        out.push_back("pair (" + source.h1_label(i) + ", " + source.h2_label(j) + "): " +
                      (s ? "incident in source but not in target"
                         : "incident in target but not in source"));
      }
    }
  }
  return out;
}

bool is_isomorphism(const PosetFragment& source, const PosetFragment& target, const IsoMap& map) {
  return iso_violations(source, target, map).empty();
}

PosetFragment apply_iso(const PosetFragment& source, const IsoMap& map) {
  if (map.n1() != source.n1() || map.n2() != source.n2())
    throw ValidationError("map does not match fragment tier sizes");
  Incidence pairs;
  for (auto [i, j] : source.incidence()) pairs.emplace_back(map.h1(i), map.h2(j));
  Labels labels;
  if (source.has_labels()) {
    labels.h1.resize(source.n1());
    labels.h2.resize(source.n2());
    for (std::size_t i = 0; i < source.n1(); ++i) labels.h1[map.h1(i)] = source.h1_label(i);
    for (std::size_t j = 0; j < source.n2(); ++j) labels.h2[map.h2(j)] = source.h2_label(j);
  }
  return PosetFragment::from_pairs(source.n1(), source.n2(), pairs, std::move(labels));
}

std::pair<PosetFragment, IsoMap> relabel(const PosetFragment& fragment, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto p1 = random_permutation(fragment.n1(), rng);
  auto p2 = random_permutation(fragment.n2(), rng);
  IsoMap map(std::move(p1), std::move(p2));
  return {apply_iso(fragment, map), map};
}

}  // namespace strposet
