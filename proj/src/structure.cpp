#include "strposet/structure.hpp"

#include <algorithm>
#include <string>

#include "strposet/conditions.hpp"
#include "strposet/error.hpp"

namespace strposet {

namespace {

void require_member(const PosetFragment& f, const StrPair& p, const char* what) {
  if (!str_member(f, p.first, p.second))
    throw Error(std::string(what) + " is not a member of Str X");
}

bool size_then_lex(const TierSet& a, const TierSet& b) {
  const auto sa = a.size(), sb = b.size();
  if (sa != sb) return sa < sb;
  return a.to_vector() < b.to_vector();
}

void fill_order(const PosetFragment& f, FiberView& view) {
  const std::size_t n = view.size();
  view.order.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      view.order[i][j] = str_leq(f, view.node(i), view.node(j));
}

}  // namespace

std::string curve_list(const PosetFragment& fragment, const TierSet& curves) {
  std::string out;
  for (auto x : curves) {
    if (!out.empty()) out += ',';
    out += fragment.h1_label(x);
  }
  return out;
}

std::string point_list(const PosetFragment& fragment, const TierSet& points) {
  std::string out;
  for (auto m : points) {
    if (!out.empty()) out += ',';
    out += fragment.h2_label(m);
  }
  return out;
}

std::string node_text(const PosetFragment& fragment, const StrNode& node) {
  if (const auto* ray = std::get_if<RayNode>(&node)) return "ray(" + fragment.h1_label(ray->curve) + ")";
  const auto& p = std::get<StrPair>(node);
  return curve_list(fragment, p.first) + "|" + point_list(fragment, p.second);
}

StrPair materialize(const PosetFragment& fragment, const StrNode& node) {
  if (const auto* ray = std::get_if<RayNode>(&node)) {
    if (ray->curve >= fragment.n1()) throw Error("ray of an unknown curve");
    return {TierSet::singleton(ray->curve), fragment.up(ray->curve)};
  }
  return std::get<StrPair>(node);
}

bool str_member(const PosetFragment& fragment, const TierSet& a, const TierSet& b) {
  if (a.empty() || b.empty()) return false;
  if (!a.is_subset_of(fragment.all_h1()) || !b.is_subset_of(fragment.all_h2())) return false;
  return !w_max(fragment, a, b).empty();
}

bool str_member(const PosetFragment& fragment, const StrNode& node) {
  const auto p = materialize(fragment, node);
  return str_member(fragment, p.first, p.second);
}

TierSet w_max(const PosetFragment& fragment, const TierSet& c, const TierSet& d) {
  return c & fragment.common_down(d);
}

bool dominates_via(const PosetFragment& fragment, const StrPair& upper, const StrPair& lower,
                   const TierSet& w) {
  require_member(fragment, upper, "dominating pair");
  require_member(fragment, lower, "dominated pair");
  const auto& [c, d] = upper;
  const auto& [a, b] = lower;
  // E1
  if (!a.is_proper_subset_of(c) || !d.is_subset_of(b)) return false;
  // E2
  if (w.empty() || !w.is_subset_of(c)) return false;
  if (!d.is_subset_of(fragment.common_up(w))) return false;
  // E3: every point above some a in A and above all of W lies in D.
  return (fragment.any_up(a) & fragment.common_up(w)).is_subset_of(d);
}

bool str_leq(const PosetFragment& fragment, const StrPair& lower, const StrPair& upper) {
  if (lower == upper) {
    require_member(fragment, lower, "pair");
    return true;
  }
  return dominates_via(fragment, upper, lower, w_max(fragment, upper.first, upper.second));
}

bool str_leq(const PosetFragment& fragment, const StrNode& lower, const StrNode& upper) {
  return str_leq(fragment, materialize(fragment, lower), materialize(fragment, upper));
}

bool str_leq_bruteforce(const PosetFragment& fragment, const StrPair& lower,
                        const StrPair& upper) {
  if (upper.first.size() > kBruteForceLimit)
    throw CapacityError("brute-force order check supports |C| <= 16");
  require_member(fragment, lower, "pair");
  require_member(fragment, upper, "pair");
  if (lower == upper) return true;
  bool found = false;
  for_each_subset(upper.first.to_vector(), kBruteForceLimit, [&](const TierSet& w) {
    if (!found && dominates_via(fragment, upper, lower, w)) found = true;
  });
  return found;
}

std::size_t ell(const PosetFragment& fragment, const TierSet& a, const TierSet& b) {
  if (!str_member(fragment, a, b)) throw Error("ell: pair is not a member of Str X");
  return w_max(fragment, a, b).size();
}

std::size_t eta(const PosetFragment& fragment, const TierSet& a, const TierSet& b) {
  return a.size() - ell(fragment, a, b);
}

bool fiber_height_positive(const PosetFragment& fragment, const TierSet& a, const TierSet& b) {
  if (a.size() > kBruteForceLimit) throw CapacityError("fiber_height_positive supports |A| <= 16");
  if (!str_member(fragment, a, b)) throw Error("fiber_height_positive: pair is not a member");
  bool found = false;
  for_each_subset(a.to_vector(), kBruteForceLimit, [&](const TierSet& k) {
    if (!found && mub_equals_points(fragment, k, b)) found = true;
  });
  return found;
}

bool is_ray_ordinate(const PosetFragment& fragment, const TierSet& b) {
  for (std::size_t x = 0; x < fragment.n1(); ++x)
    if (fragment.up(x) == b) return true;
  return false;
}

std::optional<std::size_t> FiberView::find(const TierSet& a) const {
  for (std::size_t i = 0; i < firsts.size(); ++i)
    if (firsts[i] == a) return i;
  return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> FiberView::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !order[i][j]) continue;
      bool between = false;
      for (std::size_t k = 0; k < n && !between; ++k)
        between = k != i && k != j && order[i][k] && order[k][j];
      if (!between) out.emplace_back(i, j);
    }
  }
  return out;
}

AbstractPoset FiberView::as_poset() const { return AbstractPoset(order); }

FiberView down_set_in_fiber(const PosetFragment& fragment, const TierSet& a, const TierSet& b) {
  if (a.size() > kBruteForceLimit) throw CapacityError("down_set_in_fiber supports |A| <= 16");
  const StrPair top{a, b};
  require_member(fragment, top, "pair");
  FiberView view;
  view.second = b;
  view.support = a;
  view.amax = a.size();
  // Anything below (A, B) has first ordinate inside A (E1).
  for_each_subset(a.to_vector(), kBruteForceLimit, [&](const TierSet& sub) {
    if (str_member(fragment, sub, b) && str_leq(fragment, StrPair{sub, b}, top))
      view.firsts.push_back(sub);
  });
  std::sort(view.firsts.begin(), view.firsts.end(), size_then_lex);
  fill_order(fragment, view);
  return view;
}

FiberView enumerate_fiber(const PosetFragment& fragment, const TierSet& b, const TierSet& support,
                          std::size_t amax) {
  if (amax > kBruteForceLimit) throw CapacityError("enumerate_fiber supports amax <= 16");
  if (!support.is_subset_of(fragment.all_h1())) throw Error("support contains unknown curves");
  if (!b.is_subset_of(fragment.all_h2())) throw Error("fiber ordinate contains unknown points");
  FiberView view;
  view.second = b;
  view.support = support;
  view.amax = amax;
  const auto items = support.to_vector();
  for (std::size_t size = 1; size <= amax; ++size) {
    for_each_combination(items, size, [&](const TierSet& a) {
      if (str_member(fragment, a, b)) {
        view.firsts.push_back(a);
        if (view.firsts.size() > kFiberNodeBudget)
          throw CapacityError("fiber enumeration exceeded the node budget");
      }
      return true;
    });
  }
  fill_order(fragment, view);
  return view;
}

CountCheck counting_formula(const PosetFragment& fragment, const TierSet& a, const TierSet& b) {
  if (!fiber_height_positive(fragment, a, b))
    throw Error("counting formula needs a node of positive height in its fiber");
  const auto l = ell(fragment, a, b);
  const auto e = a.size() - l;
  CountCheck out;
  out.predicted = ((std::uint64_t{1} << l) - 1) << e;
  out.actual = down_set_in_fiber(fragment, a, b).size();
  return out;
}

bool parity_mub_check(const PosetFragment& fragment, const TierSet& a, const TierSet& b) {
  if (!fiber_height_positive(fragment, a, b))
    throw Error("parity check needs a node of positive height in its fiber");
  return mub(fragment, ElementSet::curves(a)) == ElementSet::points(b);
}

bool down_set_is_I2(const PosetFragment& fragment, const TierSet& a, const TierSet& b) {
  const auto view = down_set_in_fiber(fragment, a, b);
  if (view.size() > kSmallPosetLimit) return false;
  return small_poset_isomorphic(view.as_poset(), make_I(2));
}

bool detect_I2(const PosetFragment& fragment, const TierSet& a, const TierSet& b) {
  if (!str_member(fragment, a, b)) throw Error("detect_I2: pair is not a member");
  const bool by_mub = a.size() == 2 && mub(fragment, ElementSet::curves(a)) == ElementSet::points(b);
  if (a.size() <= kBruteForceLimit && by_mub != down_set_is_I2(fragment, a, b))
    throw Error("detect_I2: mub characterization and down-set shape disagree");
  return by_mub;
}

MuResult mu_statistic(const PosetFragment& fragment, std::size_t x, std::size_t m,
                      std::size_t amax) {
  if (x >= fragment.n1() || m >= fragment.n2() || !fragment.below(x, m))
    throw Error("mu statistic needs x < m");
  MuResult out;
  out.ge4 = true;
  for (auto y : fragment.down(m)) {
    if (y != x && mub_equals_points(fragment, TierSet{x, y}, TierSet::singleton(m))) {
      out.ge4 = false;
      break;
    }
  }

  // Dropping curves not below m from a positive-height A keeps it positive and
  // shrinks its down-set, so the minimum is attained inside the curves below m,
  // where the down-set grows with |A|.
  const TierSet point = TierSet::singleton(m);
  const auto others = (fragment.down(m) - TierSet::singleton(x)).to_vector();
  const std::size_t max_size = std::min(amax, kBruteForceLimit);
  for (std::size_t size = 2; size <= max_size && !out.mu; ++size) {
    for_each_combination(others, size - 1, [&](const TierSet& rest) {
      TierSet a = rest;
      a.insert(x);
      if (!fiber_height_positive(fragment, a, point)) return true;
      const std::uint64_t count = down_set_in_fiber(fragment, a, point).size();
      if (!out.mu || count < *out.mu) {
        out.mu = count;
        out.argmin = a;
      }
      return true;
    });
  }
  return out;
}

std::optional<StrPair> join_at_point(const PosetFragment& fragment, const StrPair& first,
                                     const StrPair& second, std::size_t b,
                                     std::size_t size_cap) {
  if (!first.second.contains(b) || !second.second.contains(b))
    throw Error("join_at_point: both nodes must contain the point");
  const TierSet avoid = first.first | second.first;
  auto k = find_j3_witness(fragment, b, avoid, size_cap);
  if (!k) return std::nullopt;
  return StrPair{*k | avoid, TierSet::singleton(b)};
}

}  // namespace strposet
