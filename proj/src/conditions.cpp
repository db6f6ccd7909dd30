#include "strposet/conditions.hpp"

#include <algorithm>
#include <string>

#include "strposet/error.hpp"

namespace strposet {

namespace {

constexpr const char* kFiniteSemantics =
    "finite-witness: quantifiers range over the fragment; infinitude clauses replaced by "
    "thresholds";

ConditionReport make_report(Condition c) {
  ConditionReport r;
  r.condition = c;
  r.semantics = kFiniteSemantics;
  return r;
}

ElementSet curve(std::size_t x) { return ElementSet::of({ElementId::h1(x)}); }

void check_curves(const PosetFragment& f, const TierSet& s, const char* what) {
  if (!s.is_subset_of(f.all_h1())) throw Error(std::string(what) + " contains unknown curves");
}

void check_points(const PosetFragment& f, const TierSet& s, const char* what) {
  if (!s.is_subset_of(f.all_h2())) throw Error(std::string(what) + " contains unknown points");
}

}  // namespace

std::string to_string(Condition c) {
  switch (c) {
    case Condition::P1: return "P1";
    case Condition::P2: return "P2";
    case Condition::P3: return "P3";
    case Condition::P4: return "P4";
    case Condition::P5: return "P5";
    case Condition::J1: return "J1";
    case Condition::J2: return "J2";
    case Condition::J3: return "J3";
    case Condition::J4: return "J4";
  }
  return "?";
}

std::int64_t ConditionReport::param(const std::string& name) const {
  for (const auto& [k, v] : params)
    if (k == name) return v;
  throw Error("report has no parameter " + name);
}

const WitnessEntry* ConditionReport::first_failure() const {
  for (const auto& w : witnesses)
    if (w.failed()) return &w;
  return nullptr;
}

std::vector<ConditionReport> check_p1_to_p4(const PosetFragment& fragment, std::size_t k) {
  std::vector<ConditionReport> out;

  auto p1 = make_report(Condition::P1);
  p1.semantics = "unique minimal node holds by representation; countability is trivial";
  out.push_back(std::move(p1));

  auto p2 = make_report(Condition::P2);
  const int d = dim(fragment);
  p2.holds = d == 2;
  p2.params.emplace_back("dim", d);
  out.push_back(std::move(p2));

  auto p3 = make_report(Condition::P3);
  p3.params.emplace_back("k", static_cast<std::int64_t>(k));
  for (std::size_t x = 0; x < fragment.n1(); ++x) {
    const std::size_t above = fragment.up(x).size();
    if (above < k) {
      p3.holds = false;
      p3.witnesses.push_back({{{"x", curve(x)}},
                              std::nullopt,
                              std::to_string(above) + " points above, need " +
                                  std::to_string(k)});
    }
  }
  out.push_back(std::move(p3));

  auto p4 = make_report(Condition::P4);
  p4.semantics = "common upper sets are always finite on a fragment; the bound is reported";
  std::int64_t best = 0;
  std::optional<std::pair<std::size_t, std::size_t>> best_pair;
  for (std::size_t x = 0; x < fragment.n1(); ++x) {
    for (std::size_t y = x + 1; y < fragment.n1(); ++y) {
      const auto common = static_cast<std::int64_t>((fragment.up(x) & fragment.up(y)).size());
      if (!best_pair || common > best) {
        best = common;
        best_pair = std::pair{x, y};
      }
    }
  }
  p4.params.emplace_back("max_common", best);
  if (best_pair) {
    auto [x, y] = *best_pair;
    p4.witnesses.push_back({{{"x", curve(x)}, {"y", curve(y)}},
                            ElementSet::points(fragment.up(x) & fragment.up(y)),
                            "pair attaining the maximum"});
  }
  out.push_back(std::move(p4));
  return out;
}

std::optional<std::size_t> find_p5_witness(const PosetFragment& fragment, const TierSet& s,
                                           const TierSet& t) {
  if (s.empty() || t.empty()) throw Error("P5 witness search needs nonempty S and T");
  check_curves(fragment, s, "S");
  check_points(fragment, t, "T");
  const TierSet candidates = fragment.common_down(t);
  for (auto w : candidates) {
    bool ok = true;
    for (auto x : s) {
      // Points above both x and w; Min and curves are never strictly above a curve.
      if (!(fragment.up(x) & fragment.up(w)).is_subset_of(t)) {
        ok = false;
        break;
      }
    }
    if (ok) return w;
  }
  return std::nullopt;
}

ConditionReport check_p5(const PosetFragment& fragment, std::size_t s_max, std::size_t t_max) {
  auto r = make_report(Condition::P5);
  r.params.emplace_back("s_max", static_cast<std::int64_t>(s_max));
  r.params.emplace_back("t_max", static_cast<std::int64_t>(t_max));
  const auto curves = fragment.all_h1().to_vector();
  const auto points = fragment.all_h2().to_vector();
  std::int64_t checked = 0;
  for (std::size_t ss = 1; ss <= s_max; ++ss) {
    for_each_combination(curves, ss, [&](const TierSet& s) {
      for (std::size_t ts = 1; ts <= t_max; ++ts) {
        for_each_combination(points, ts, [&](const TierSet& t) {
          ++checked;
          if (!find_p5_witness(fragment, s, t)) {
            r.holds = false;
            r.witnesses.push_back({{{"S", ElementSet::curves(s)}, {"T", ElementSet::points(t)}},
                                   std::nullopt,
                                   "no height-one w satisfies (a) and (b)"});
          }
          return true;
        });
      }
      return true;
    });
  }
  r.params.emplace_back("instances", checked);
  return r;
}

ConditionReport check_j1(const PosetFragment& fragment) {
  auto r = make_report(Condition::J1);
  const int d = dim(fragment);
  r.holds = d == 2;
  r.params.emplace_back("dim", d);
  r.semantics = "mub sets are finite on every fragment; only the dimension is checked";
  return r;
}

ConditionReport check_j2(const PosetFragment& fragment, std::size_t k) {
  auto r = make_report(Condition::J2);
  r.params.emplace_back("k", static_cast<std::int64_t>(k));
  for (std::size_t x = 0; x < fragment.n1(); ++x) {
    const std::size_t above = fragment.up(x).size();
    if (above < k) {
      r.holds = false;
      r.witnesses.push_back({{{"x", curve(x)}},
                             std::nullopt,
                             std::to_string(above) + " points above, need " +
                                 std::to_string(k)});
    }
  }
  return r;
}

std::optional<TierSet> find_j3_witness(const PosetFragment& fragment, std::size_t m,
                                       const TierSet& forbidden, std::size_t size_cap) {
  if (m >= fragment.n2()) throw Error("J3 witness search: unknown point");
  const TierSet target = TierSet::singleton(m);
  const auto candidates = (fragment.down(m) - forbidden).to_vector();
  // Singletons have mub {x}, never a point.
  for (std::size_t size = 2; size <= size_cap; ++size) {
    std::optional<TierSet> found;
    for_each_combination(candidates, size, [&](const TierSet& k) {
      if (fragment.common_up(k) == target) {
        found = k;
        return false;
      }
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

ConditionReport check_j3(const PosetFragment& fragment, std::size_t f_max, std::size_t size_cap) {
  auto r = make_report(Condition::J3);
  r.params.emplace_back("f_max", static_cast<std::int64_t>(f_max));
  r.params.emplace_back("size_cap", static_cast<std::int64_t>(size_cap));
  std::size_t max_size = 0;
  std::int64_t checked = 0;
  for (std::size_t m = 0; m < fragment.n2(); ++m) {
    const auto below = fragment.down(m).to_vector();
    for (std::size_t fs = 0; fs <= f_max; ++fs) {
      for_each_combination(below, fs, [&](const TierSet& forbidden) {
        ++checked;
        auto k = find_j3_witness(fragment, m, forbidden, size_cap);
        if (k) {
          max_size = std::max(max_size, k->size());
        } else {
          r.holds = false;
          r.witnesses.push_back(
              {{{"m", ElementSet::of({ElementId::h2(m)})}, {"F", ElementSet::curves(forbidden)}},
               std::nullopt,
               "no K disjoint from F with mub K = {m} and |K| <= " + std::to_string(size_cap)});
        }
        return true;
      });
    }
  }
  r.params.emplace_back("instances", checked);
  r.params.emplace_back("max_witness_size", static_cast<std::int64_t>(max_size));
  return r;
}

ConditionReport check_j4(const PosetFragment& fragment, std::size_t t_max) {
  auto r = make_report(Condition::J4);
  r.params.emplace_back("t_max", static_cast<std::int64_t>(t_max));
  const auto points = fragment.all_h2().to_vector();
  for (std::size_t ts = 1; ts <= t_max; ++ts) {
    for_each_combination(points, ts, [&](const TierSet& t) {
      if (fragment.common_down(t).empty()) {
        r.holds = false;
        r.witnesses.push_back({{{"T", ElementSet::points(t)}},
                               std::nullopt,
                               "no height-one element below every point of T"});
      }
      return true;
    });
  }
  return r;
}

SpecialT find_special_t(const PosetFragment& fragment, const TierSet& s, const TierSet& t) {
  if (t.empty()) throw Error("special t search needs nonempty T");
  check_curves(fragment, s, "S");
  check_points(fragment, t, "T");
  SpecialT out;
  const TierSet direct = fragment.common_down(t) - s;
  if (!direct.empty()) out.direct = direct.first();

  const TierSet fresh = fragment.all_h2() - fragment.any_up(s);
  if (!fresh.empty()) {
    out.fresh_point = fresh.first();
    TierSet tv = t;
    tv.insert(*out.fresh_point);
    const TierSet below = fragment.common_down(tv);
    if (!below.empty()) out.via_fresh_point = below.first();
  }

  if (out.via_fresh_point) {
    const std::size_t v = *out.via_fresh_point;
    if (s.contains(v) || !t.is_subset_of(fragment.up(v)) || !out.direct)
      throw Error("special t routes disagree: two-step construction returned an invalid t");
  }
  return out;
}

BatteryResult run_battery(const PosetFragment& fragment, const BatteryParams& params) {
  BatteryResult out;
  auto j2 = check_j2(fragment, params.k);
  auto j3 = check_j3(fragment, params.f_max, params.j3_size_cap);
  auto j4 = check_j4(fragment, params.t_max);
  auto note = [&](const ConditionReport& r) {
    if (r.holds) return;
    const auto* f = r.first_failure();
    std::string reason = to_string(r.condition) + " fails";
    if (f != nullptr) {
      std::string at;
      for (const auto& [name, set] : f->instance) {
        std::string items;
        for (const auto& e : set.elements()) items += (items.empty() ? "" : ",") + fragment.label(e);
        at += (at.empty() ? " at " : ", ") + name + "={" + items + "}";
      }
      reason += at + " (" + f->note + ")";
    }
    out.reasons.push_back(std::move(reason));
  };
  note(j2);
  note(j3);
  note(j4);
  out.max_j3_witness_size = static_cast<std::size_t>(j3.param("max_witness_size"));
  out.passed = out.reasons.empty();
  out.reports = {std::move(j2), std::move(j3), std::move(j4)};
  return out;
}

}  // namespace strposet
