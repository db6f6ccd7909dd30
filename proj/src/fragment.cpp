#include "strposet/fragment.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "strposet/error.hpp"

namespace strposet {

ElementSet ElementSet::of(std::initializer_list<ElementId> items) {
  ElementSet s;
  for (auto e : items) s.insert(e);
  return s;
}

bool ElementSet::contains(ElementId e) const {
  switch (e.tier) {
    case Tier::Min: return min;
    case Tier::H1: return h1.contains(e.index);
    case Tier::H2: return h2.contains(e.index);
  }
  return false;
}

void ElementSet::insert(ElementId e) {
  switch (e.tier) {
    case Tier::Min: min = true; break;
    case Tier::H1: h1.insert(e.index); break;
    case Tier::H2: h2.insert(e.index); break;
  }
}

std::vector<ElementId> ElementSet::elements() const {
  std::vector<ElementId> out;
  if (min) out.push_back(ElementId::min());
  for (auto i : h1) out.push_back(ElementId::h1(i));
  for (auto j : h2) out.push_back(ElementId::h2(j));
  return out;
}

PosetFragment PosetFragment::from_pairs(std::size_t n1, std::size_t n2, const Incidence& incidence,
                                        Labels labels) {
  if (n1 > kMaxTierCapacity || n2 > kMaxTierCapacity) {
    std::ostringstream os;
    os << "tier size exceeds storage capacity " << kMaxTierCapacity << " (n1=" << n1
       << ", n2=" << n2 << ")";
    throw ValidationError(os.str());
  }
  PosetFragment f;
  f.up_.assign(n1, TierSet{});
  f.down_.assign(n2, TierSet{});
  for (std::size_t k = 0; k < incidence.size(); ++k) {
    auto [i, j] = incidence[k];
    if (i >= n1 || j >= n2) {
      std::ostringstream os;
      os << "incidence[" << k << "]: pair [" << i << "," << j << "] out of range (n1=" << n1
         << ", n2=" << n2 << ")";
      throw ValidationError(os.str());
    }
    if (f.up_[i].contains(j)) {
      std::ostringstream os;
      os << "incidence[" << k << "]: duplicate pair [" << i << "," << j << "]";
      throw ValidationError(os.str());
    }
    f.up_[i].insert(j);
    f.down_[j].insert(i);
  }
  f.labels_ = std::move(labels);
  return f;
}

TierSet PosetFragment::common_up(const TierSet& xs) const {
  TierSet out = all_h2();
  for (auto x : xs) out &= up_.at(x);
  return out;
}

TierSet PosetFragment::common_down(const TierSet& ms) const {
  TierSet out = all_h1();
  for (auto m : ms) out &= down_.at(m);
  return out;
}

TierSet PosetFragment::any_up(const TierSet& xs) const {
  TierSet out;
  for (auto x : xs) out |= up_.at(x);
  return out;
}

Incidence PosetFragment::incidence() const {
  Incidence out;
  for (std::size_t i = 0; i < up_.size(); ++i)
    for (auto j : up_[i]) out.emplace_back(i, j);
  return out;
}

std::size_t PosetFragment::incidence_size() const {
  std::size_t n = 0;
  for (const auto& u : up_) n += u.size();
  return n;
}

std::string PosetFragment::h1_label(std::size_t i) const {
  if (i < labels_.h1.size()) return labels_.h1[i];
  return "c" + std::to_string(i);
}

std::string PosetFragment::h2_label(std::size_t j) const {
  if (j < labels_.h2.size()) return labels_.h2[j];
  return "p" + std::to_string(j);
}

std::string PosetFragment::label(ElementId e) const {
  switch (e.tier) {
    case Tier::Min: return "0";
    case Tier::H1: return h1_label(e.index);
    case Tier::H2: return h2_label(e.index);
  }
  return "?";
}

ValidationReport validate(const PosetFragment& fragment, std::size_t max_tier) {
  ValidationReport report;
  auto add = [&](std::string msg) { report.violations.push_back(std::move(msg)); };
  const std::size_t cap = std::min(max_tier, kMaxTierCapacity);
  if (fragment.n1() == 0) add("n1 must be at least 1");
  if (fragment.n2() == 0) add("n2 must be at least 1");
  if (fragment.n1() > cap)
    add("n1=" + std::to_string(fragment.n1()) + " exceeds tier cap " + std::to_string(cap));
  if (fragment.n2() > cap)
    add("n2=" + std::to_string(fragment.n2()) + " exceeds tier cap " + std::to_string(cap));
  for (std::size_t j = 0; j < fragment.n2(); ++j) {
    if (fragment.down(j).empty())
      add("height-2 element has height < 2: " + fragment.h2_label(j) +
          " has nothing below it in X1");
  }
  const auto& labels = fragment.labels();
  if (!labels.empty()) {
    if (labels.h1.size() != fragment.n1())
      add("labels.h1 has " + std::to_string(labels.h1.size()) + " entries, expected " +
          std::to_string(fragment.n1()));
    if (labels.h2.size() != fragment.n2())
      add("labels.h2 has " + std::to_string(labels.h2.size()) + " entries, expected " +
          std::to_string(fragment.n2()));
  }
  return report;
}

void require_valid(const PosetFragment& fragment, std::size_t max_tier) {
  auto report = validate(fragment, max_tier);
  if (report.ok()) return;
  std::string msg = "invalid fragment:";
  for (const auto& v : report.violations) msg += "\n  " + v;
  throw ValidationError(msg);
}

void check_element(const PosetFragment& fragment, ElementId e) {
  bool ok = true;
  switch (e.tier) {
    case Tier::Min: ok = e.index == 0; break;
    case Tier::H1: ok = e.index < fragment.n1(); break;
    case Tier::H2: ok = e.index < fragment.n2(); break;
  }
  if (!ok) {
    throw Error("element (tier " + std::to_string(static_cast<int>(e.tier)) + ", index " +
                std::to_string(e.index) + ") does not belong to the fragment");
  }
}

namespace {

void check_set(const PosetFragment& fragment, const ElementSet& s) {
  if (!s.h1.is_subset_of(fragment.all_h1()) || !s.h2.is_subset_of(fragment.all_h2()))
    throw Error("element set contains elements outside the fragment");
}

}  // namespace

bool leq(const PosetFragment& fragment, ElementId x, ElementId y) {
  check_element(fragment, x);
  check_element(fragment, y);
  if (x == y) return true;
  if (x.tier == Tier::Min) return true;
  if (x.tier == Tier::H1 && y.tier == Tier::H2) return fragment.below(x.index, y.index);
  return false;
}

ElementSet upper_set(const PosetFragment& fragment, const ElementSet& a) {
  check_set(fragment, a);
  ElementSet out;
  const std::size_t n_points = a.h2.size();
  if (n_points >= 2) return out;
  if (n_points == 1) {
    const std::size_t m = a.h2.first();
    // m is above a's other members iff each of them is Min or below m.
    if (a.h1.is_subset_of(fragment.down(m))) out.h2.insert(m);
    return out;
  }
  const std::size_t n_curves = a.h1.size();
  if (n_curves == 0) {
    // a is ∅ or {Min}; every element bounds it.
    out.min = true;
    out.h1 = fragment.all_h1();
    out.h2 = fragment.all_h2();
    return out;
  }
  if (n_curves == 1) out.h1 = a.h1;
  out.h2 = fragment.common_up(a.h1);
  return out;
}

ElementSet strict_upper_set(const PosetFragment& fragment, const ElementSet& a) {
  ElementSet g = upper_set(fragment, a);
  if (a.min) g.min = false;
  g.h1 -= a.h1;
  g.h2 -= a.h2;
  return g;
}

ElementSet lower_set(const PosetFragment& fragment, const ElementSet& a) {
  check_set(fragment, a);
  ElementSet out;
  out.min = true;  // Min is below everything, including every member of a
  if (a.min) return out;
  const std::size_t n_curves = a.h1.size();
  if (n_curves >= 2) return out;
  if (n_curves == 1) {
    const std::size_t x = a.h1.first();
    if (a.h2.is_subset_of(fragment.up(x))) out.h1.insert(x);
    return out;
  }
  const std::size_t n_points = a.h2.size();
  if (n_points == 0) {
    out.h1 = fragment.all_h1();
    out.h2 = fragment.all_h2();
    return out;
  }
  if (n_points == 1) out.h2 = a.h2;
  out.h1 = fragment.common_down(a.h2);
  return out;
}

ElementSet strict_lower_set(const PosetFragment& fragment, const ElementSet& a) {
  ElementSet l = lower_set(fragment, a);
  if (a.min) l.min = false;
  l.h1 -= a.h1;
  l.h2 -= a.h2;
  return l;
}

ElementSet minimal_elements(const PosetFragment& fragment, const ElementSet& s) {
  check_set(fragment, s);
  if (s.min) return ElementSet::of({ElementId::min()});
  ElementSet out;
  out.h1 = s.h1;
  // A point is minimal unless some member curve lies below it.
  for (auto m : s.h2)
    if (!s.h1.intersects(fragment.down(m))) out.h2.insert(m);
  return out;
}

ElementSet mub(const PosetFragment& fragment, const ElementSet& a) {
  if (a.empty()) throw Error("mub of the empty set is undefined");
  return minimal_elements(fragment, upper_set(fragment, a));
}

bool mub_equals_points(const PosetFragment& fragment, const TierSet& k, const TierSet& b) {
  if (k.size() < 2) return false;
  return fragment.common_up(k) == b;
}

int height(const PosetFragment& fragment, ElementId e) {
  check_element(fragment, e);
  switch (e.tier) {
    case Tier::Min: return 0;
    case Tier::H1: return 1;
    case Tier::H2: return fragment.down(e.index).empty() ? 1 : 2;
  }
  return 0;
}

int dim(const PosetFragment& fragment) {
  if (fragment.incidence_size() > 0) return 2;
  if (fragment.n1() + fragment.n2() > 0) return 1;
  return 0;
}

}  // namespace strposet
