#include "strposet/reconstruction.hpp"

#include <algorithm>
#include <random>
#include <thread>

namespace strposet {

namespace {

StrNode apply_node(const IsoMap& rho, const StrNode& node) {
  if (const auto* ray = std::get_if<RayNode>(&node)) return RayNode{rho.h1(ray->curve)};
  const auto& p = std::get<StrPair>(node);
  return StrPair{rho.apply_h1(p.first), rho.apply_h2(p.second)};
}

std::optional<std::size_t> singleton_point(const TierSet& b) {
  if (b.size() != 1) return std::nullopt;
  return b.first();
}

std::string list_points(const PosetFragment& f, const std::vector<std::size_t>& ms) {
  std::string out;
  for (auto m : ms) {
    if (!out.empty()) out += ", ";
    out += f.h2_label(m);
  }
  return out;
}

/// Unresolves both ends of every collision and records it.
template <typename Entries>
void resolve_collisions(std::vector<std::optional<std::size_t>>& map, const Entries& entries,
                        std::vector<Conflict>& conflicts, ConflictKind kind, std::size_t cap) {
  std::map<std::size_t, std::size_t> first_source;
  std::vector<std::size_t> clashing;
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (!map[i]) continue;
    auto [it, fresh] = first_source.emplace(*map[i], i);
    if (fresh) continue;
    Conflict c;
    c.kind = kind;
    if (kind == ConflictKind::FiberCollision) {
      c.points = {it->second, i};
      c.image_points = {*map[i]};
    } else {
      c.curves = {it->second, i};
      c.image_curves = {*map[i]};
    }
    c.kset_cap = cap;
    for (const auto& e : entries) {
      if constexpr (std::is_same_v<typename Entries::value_type, Rho2Entry>) {
        if (e.point == it->second || e.point == i) c.nodes.push_back(e.witness);
      } else {
        if ((e.curve == it->second || e.curve == i) && !e.evidence.empty())
          c.nodes.push_back(e.evidence.front());
      }
    }
    c.detail = "two sources resolve to the same image";
    conflicts.push_back(std::move(c));
    clashing.push_back(it->second);
    clashing.push_back(i);
  }
  for (auto i : clashing) map[i].reset();
}

}  // namespace

// ---------------------------------------------------------------------------
// Domains

DomainSpec DomainSpec::transported(const IsoMap& rho) const {
  DomainSpec out = *this;
  for (auto& b : out.fibers) b = rho.apply_h2(b);
  if (!support.empty()) out.support = rho.apply_h1(support);
  return out;
}

DomainSpec default_domain(const PosetFragment& fragment, std::size_t kset_cap, bool include_rays,
                          std::size_t amax) {
  DomainSpec spec;
  for (std::size_t m = 0; m < fragment.n2(); ++m) spec.fibers.push_back(TierSet::singleton(m));
  spec.amax = amax;
  spec.include_rays = include_rays;
  spec.kset_cap = kset_cap;
  return spec;
}

std::vector<StrNode> build_domain(const PosetFragment& fragment, const DomainSpec& spec) {
  std::set<StrNode> nodes;
  const TierSet support = spec.support.empty() ? fragment.all_h1() : spec.support;
  if (!support.is_subset_of(fragment.all_h1())) throw Error("domain support contains unknown curves");
  const auto items = support.to_vector();
  for (const auto& b : spec.fibers) {
    if (b.empty() || !b.is_subset_of(fragment.all_h2()))
      throw Error("domain fiber ordinate must be a nonempty set of known points");
    // Members of the fiber need a curve below all of B.
    const auto below = (support & fragment.common_down(b)).to_vector();
    if (below.empty()) continue;
    for (std::size_t size = 1; size <= spec.amax; ++size) {
      for_each_combination(items, size, [&](const TierSet& a) {
        if (str_member(fragment, a, b)) {
          nodes.insert(StrPair{a, b});
          if (nodes.size() > kFiberNodeBudget)
            throw CapacityError("domain exceeded the node budget");
        }
        return true;
      });
    }
  }
  if (spec.kset_cap > 0) {
    for (std::size_t x = 0; x < fragment.n1(); ++x)
      for (auto& k : k_sets(fragment, x, spec.kset_cap)) nodes.insert(k);
  }
  if (spec.include_rays) {
    for (std::size_t x = 0; x < fragment.n1(); ++x) {
      nodes.erase(StrPair{TierSet::singleton(x), fragment.up(x)});
      nodes.insert(RayNode{x});
    }
  }
  return {nodes.begin(), nodes.end()};
}

// ---------------------------------------------------------------------------
// StrIso

StrIso StrIso::from_table(PosetFragment source, PosetFragment target,
                          const std::vector<std::pair<StrNode, StrNode>>& table) {
  auto fwd = std::make_shared<std::map<StrNode, StrNode>>();
  auto inv = std::make_shared<std::map<StrNode, StrNode>>();
  for (const auto& [from, to] : table) {
    if (!fwd->emplace(from, to).second)
      throw ValidationError("table lists node " + node_text(source, from) + " twice");
    if (!inv->emplace(to, from).second)
      throw ValidationError("table sends two nodes to " + node_text(target, to));
  }
  std::vector<StrNode> sd, td;
  for (const auto& [k, v] : *fwd) sd.push_back(k);
  for (const auto& [k, v] : *inv) td.push_back(k);
  return from_oracle(
      std::move(source), std::move(target), std::move(sd), std::move(td),
      [fwd](const StrNode& n) { return fwd->at(n); }, [inv](const StrNode& n) { return inv->at(n); },
      true);
}

StrIso StrIso::from_oracle(PosetFragment source, PosetFragment target,
                           std::vector<StrNode> source_domain, std::vector<StrNode> target_domain,
                           Oracle forward, Oracle inverse, bool concurrent_safe) {
  StrIso out;
  out.source_ = std::make_shared<const PosetFragment>(std::move(source));
  out.target_ = std::make_shared<const PosetFragment>(std::move(target));
  out.source_set_ = {source_domain.begin(), source_domain.end()};
  out.target_set_ = {target_domain.begin(), target_domain.end()};
  out.source_domain_ = {out.source_set_.begin(), out.source_set_.end()};
  out.target_domain_ = {out.target_set_.begin(), out.target_set_.end()};
  out.forward_ = std::move(forward);
  out.inverse_ = std::move(inverse);
  out.concurrent_safe_ = concurrent_safe;
  out.probes_ = std::make_shared<std::atomic<std::uint64_t>>(0);
  return out;
}

StrNode StrIso::forward(const StrNode& node) const {
  if (!in_source_domain(node))
    throw Error("probe outside the source domain: " + node_text(*source_, node));
  probes_->fetch_add(1);
  return forward_(node);
}

StrNode StrIso::inverse(const StrNode& node) const {
  if (!in_target_domain(node))
    throw Error("probe outside the target domain: " + node_text(*target_, node));
  probes_->fetch_add(1);
  return inverse_(node);
}

std::vector<std::pair<StrNode, StrNode>> StrIso::table() const {
  std::vector<std::pair<StrNode, StrNode>> out;
  out.reserve(source_domain_.size());
  for (const auto& n : source_domain_) out.emplace_back(n, forward(n));
  return out;
}

StrIso induce_str_iso(const IsoMap& rho, const PosetFragment& source, const PosetFragment& target,
                      const DomainSpec& spec) {
  const auto problems = iso_violations(source, target, rho);
  if (!problems.empty()) throw ValidationError("rho is not an isomorphism: " + problems.front());
  auto sd = build_domain(source, spec);
  auto td = build_domain(target, spec.transported(rho));
  const IsoMap inv = rho.inverse();
  return StrIso::from_oracle(
      source, target, std::move(sd), std::move(td),
      [rho](const StrNode& n) { return apply_node(rho, n); },
      [inv](const StrNode& n) { return apply_node(inv, n); }, true);
}

std::vector<std::string> str_iso_violations(const StrIso& phi) {
  constexpr std::size_t kMaxReported = 32;
  std::vector<std::string> out;
  std::size_t suppressed = 0;
  auto report = [&](std::string msg) {
    if (out.size() < kMaxReported)
      out.push_back(std::move(msg));
    else
      ++suppressed;
  };
  const auto& x = phi.source();
  const auto& y = phi.target();
  const auto& dom = phi.source_domain();

  std::vector<StrPair> src, img;
  std::vector<bool> usable(dom.size(), true);
  std::set<StrNode> hit;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const StrNode image = phi.forward(dom[i]);
    src.push_back(materialize(x, dom[i]));
    if (!phi.in_target_domain(image)) {
      report("image of " + node_text(x, dom[i]) + " is outside the target domain");
      usable[i] = false;
      img.push_back({});
      continue;
    }
    hit.insert(image);
    img.push_back(materialize(y, image));
    if (phi.inverse(image) != dom[i])
      report("inverse does not undo forward at " + node_text(x, dom[i]));
  }
  for (const auto& t : phi.target_domain()) {
    if (hit.count(t) == 0) report("target node " + node_text(y, t) + " is not an image");
  }

  // Order, both ways. E1 is necessary for a strict relation, so pairs failing
  // it on both sides need no further work.
  auto e1 = [](const StrPair& lo, const StrPair& up) {
    return lo.first.is_proper_subset_of(up.first) && up.second.is_subset_of(lo.second);
  };
  for (std::size_t i = 0; i < dom.size(); ++i) {
    if (!usable[i]) continue;
    for (std::size_t j = 0; j < dom.size(); ++j) {
      if (i == j || !usable[j]) continue;
      const bool cx = e1(src[i], src[j]);
      const bool cy = e1(img[i], img[j]);
      if (!cx && !cy) continue;
      const bool lx = cx && str_leq(x, src[i], src[j]);
      const bool ly = cy && str_leq(y, img[i], img[j]);
      if (lx != ly) {
        report(node_text(x, dom[i]) + (lx ? " <= " : " !<= ") + node_text(x, dom[j]) +
               " but images disagree");
      }
    }
  }
  if (suppressed > 0) out.push_back(std::to_string(suppressed) + " further violations");
  return out;
}

std::pair<StrIso, StrNode> corrupt_str_iso(const StrIso& phi, std::uint64_t seed) {
  const auto& x = phi.source();
  const auto& y = phi.target();
  if (y.n2() < 2) throw Error("corruption needs at least two target points");
  std::map<std::size_t, std::vector<StrNode>> by_point;
  for (const auto& n : phi.source_domain()) {
    if (auto m = singleton_point(materialize(x, n).second)) by_point[*m].push_back(n);
  }
  std::vector<StrNode> eligible;
  for (const auto& [m, nodes] : by_point)
    if (nodes.size() >= 2) eligible.insert(eligible.end(), nodes.begin(), nodes.end());
  if (eligible.empty()) throw Error("no singleton fiber has two domain nodes to corrupt");

  std::mt19937_64 rng(seed);
  const StrNode victim = eligible[uniform_below(rng, eligible.size())];
  auto table = phi.table();
  auto fwd = std::make_shared<std::map<StrNode, StrNode>>(table.begin(), table.end());
  auto inv = std::make_shared<std::map<StrNode, StrNode>>();
  for (const auto& [k, v] : table) inv->emplace(v, k);

  const StrPair image = materialize(y, fwd->at(victim));
  const std::size_t n = image.second.first();
  const std::size_t shifted = (n + 1 + uniform_below(rng, y.n2() - 1)) % y.n2();
  (*fwd)[victim] = StrPair{image.first, TierSet::singleton(shifted)};

  auto corrupted = StrIso::from_oracle(
      x, y, phi.source_domain(), phi.target_domain(),
      [fwd](const StrNode& node) { return fwd->at(node); },
      [inv](const StrNode& node) { return inv->at(node); }, true);
  return {std::move(corrupted), victim};
}

// ---------------------------------------------------------------------------
// Conflicts

std::string to_string(ConflictKind kind) {
  switch (kind) {
    case ConflictKind::FiberIncoherent: return "fiber-incoherent";
    case ConflictKind::NonSingletonImage: return "non-singleton-image";
    case ConflictKind::FiberCollision: return "fiber-collision";
    case ConflictKind::Ambiguity: return "ambiguity";
    case ConflictKind::CurveCollision: return "curve-collision";
    case ConflictKind::MissingKSets: return "missing-k-sets";
    case ConflictKind::RayMismatch: return "ray-mismatch";
    case ConflictKind::IncidenceViolation: return "incidence-violation";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Points

Rho2Result rho2_from_phi(const StrIso& phi) {
  const auto& x = phi.source();
  const auto& y = phi.target();
  std::vector<std::vector<StrNode>> fiber(x.n2());
  for (const auto& n : phi.source_domain()) {
    if (auto m = singleton_point(materialize(x, n).second)) fiber[*m].push_back(n);
  }
  std::vector<std::size_t> missing;
  for (std::size_t m = 0; m < x.n2(); ++m)
    if (fiber[m].empty()) missing.push_back(m);
  if (!missing.empty())
    throw Error("no domain node in the fiber of point(s) " + list_points(x, missing));

  Rho2Result out;
  out.map.assign(x.n2(), std::nullopt);
  for (std::size_t m = 0; m < x.n2(); ++m) {
    std::optional<std::size_t> target;
    StrNode first_node, first_image;
    bool bad = false;
    for (const auto& node : fiber[m]) {
      const StrNode image = phi.forward(node);
      const auto n = singleton_point(materialize(y, image).second);
      if (!n) {
        Conflict c;
        c.kind = ConflictKind::NonSingletonImage;
        c.points = {m};
        c.nodes = {node};
        c.images = {image};
        c.detail = "node of fiber " + x.h2_label(m) + " lands outside every singleton fiber";
        out.conflicts.push_back(std::move(c));
        bad = true;
        break;
      }
      if (!target) {
        target = n;
        first_node = node;
        first_image = image;
      } else if (*target != *n) {
        Conflict c;
        c.kind = ConflictKind::FiberIncoherent;
        c.points = {m};
        c.image_points = {*target, *n};
        c.nodes = {first_node, node};
        c.images = {first_image, image};
        c.detail = "fiber " + x.h2_label(m) + " is split between " + y.h2_label(*target) +
                   " and " + y.h2_label(*n);
        out.conflicts.push_back(std::move(c));
        bad = true;
        break;
      }
    }
    if (bad) continue;
    out.map[m] = target;
    out.entries.push_back({m, *target, first_node});
  }
  resolve_collisions(out.map, out.entries, out.conflicts, ConflictKind::FiberCollision, 0);
  std::erase_if(out.entries, [&](const Rho2Entry& e) { return !out.map[e.point]; });
  return out;
}

// ---------------------------------------------------------------------------
// Curves

std::vector<StrPair> k_sets(const PosetFragment& fragment, std::size_t x, std::size_t size_cap) {
  if (x >= fragment.n1()) throw Error("k_sets: unknown curve");
  std::vector<StrPair> out;
  for (auto b : fragment.up(x)) {
    const TierSet target = TierSet::singleton(b);
    const auto partners = (fragment.down(b) - TierSet::singleton(x)).to_vector();
    for (std::size_t size = 1; size + 1 <= size_cap; ++size) {
      for_each_combination(partners, size, [&](const TierSet& rest) {
        TierSet k = rest;
        k.insert(x);
        if (fragment.common_up(k) == target) out.push_back({k, target});
        return true;
      });
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t choose_kset_cap(const PosetFragment& fragment, std::size_t max_cap) {
  for (std::size_t cap = 2; cap < max_cap; ++cap) {
    bool ok = true;
    for (std::size_t x = 0; x < fragment.n1() && ok; ++x) {
      const auto ks = k_sets(fragment, x, cap);
      TierSet common = fragment.all_h1();
      for (const auto& k : ks) common = common & k.first;
      ok = !ks.empty() && common == TierSet::singleton(x);
    }
    if (ok) return cap;
  }
  return std::max<std::size_t>(max_cap, 2);
}

namespace {

struct CurveOutcome {
  std::optional<Rho1Entry> entry;
  std::optional<Conflict> conflict;
};

CurveOutcome resolve_curve(const StrIso& psi, std::size_t x, const std::vector<StrPair>& ks,
                           std::size_t cap) {
  const auto& y = psi.target();
  CurveOutcome out;
  TierSet common = y.all_h1();
  std::vector<StrNode> nodes, images;
  for (const auto& k : ks) {
    const StrNode image = psi.forward(k);
    common = common & materialize(y, image).first;
    nodes.emplace_back(k);
    images.push_back(image);
  }
  if (common.size() == 1) {
    out.entry = Rho1Entry{x, common.first(), std::move(nodes), false};
  } else {
    Conflict c;
    c.kind = ConflictKind::Ambiguity;
    c.curves = {x};
    c.nodes = std::move(nodes);
    c.images = std::move(images);
    c.candidates = common;
    c.kset_cap = cap;
    c.detail = "K-set images of " + psi.source().h1_label(x) + " share " +
               std::to_string(common.size()) + " curves {" + curve_list(y, common) + "}";
    out.conflict = std::move(c);
  }
  return out;
}

}  // namespace

Rho1Result rho1_from_psi(const StrIso& psi, std::size_t size_cap, unsigned threads) {
  const auto& x = psi.source();
  std::vector<std::vector<StrPair>> ks(x.n1());
  ReconstructionTrace starved;
  for (std::size_t c = 0; c < x.n1(); ++c) {
    ks[c] = k_sets(x, c, size_cap);
    if (ks[c].empty()) {
      Conflict conflict;
      conflict.kind = ConflictKind::MissingKSets;
      conflict.curves = {c};
      conflict.kset_cap = size_cap;
      conflict.detail = "curve " + x.h1_label(c) + " has no K-set of size <= " +
                        std::to_string(size_cap);
      starved.conflicts.push_back(std::move(conflict));
    }
  }
  if (!starved.conflicts.empty()) {
    std::string names;
    for (const auto& c : starved.conflicts) {
      if (!names.empty()) names += ", ";
      names += x.h1_label(c.curves.front());
    }
    throw ReconstructionError("no K-sets for curve(s) " + names, std::move(starved));
  }

  std::vector<CurveOutcome> outcomes(x.n1());
  const unsigned workers =
      psi.concurrent_safe() ? std::max(1u, std::min<unsigned>(threads, x.n1())) : 1u;
  if (workers <= 1) {
    for (std::size_t c = 0; c < x.n1(); ++c) outcomes[c] = resolve_curve(psi, c, ks[c], size_cap);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t c = next++; c < x.n1(); c = next++)
            outcomes[c] = resolve_curve(psi, c, ks[c], size_cap);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  Rho1Result out;
  out.map.assign(x.n1(), std::nullopt);
  for (std::size_t c = 0; c < x.n1(); ++c) {
    if (outcomes[c].entry) {
      out.map[c] = outcomes[c].entry->image;
      out.entries.push_back(std::move(*outcomes[c].entry));
    } else {
      out.conflicts.push_back(std::move(*outcomes[c].conflict));
    }
  }
  resolve_collisions(out.map, out.entries, out.conflicts, ConflictKind::CurveCollision, size_cap);
  std::erase_if(out.entries, [&](const Rho1Entry& e) { return !out.map[e.curve]; });
  return out;
}

Rho1Result rho1_from_rays(const StrIso& phi) {
  const auto& x = phi.source();
  std::vector<std::size_t> missing;
  for (std::size_t c = 0; c < x.n1(); ++c)
    if (!phi.in_source_domain(RayNode{c})) missing.push_back(c);
  if (!missing.empty()) {
    std::string names;
    for (auto c : missing) {
      if (!names.empty()) names += ", ";
      names += x.h1_label(c);
    }
    throw Error("rays missing from the domain: " + names);
  }
  Rho1Result out;
  out.map.assign(x.n1(), std::nullopt);
  for (std::size_t c = 0; c < x.n1(); ++c) {
    const StrNode ray = RayNode{c};
    const StrNode image = phi.forward(ray);
    if (const auto* r = std::get_if<RayNode>(&image)) {
      out.map[c] = r->curve;
      out.entries.push_back({c, r->curve, {ray}, true});
    } else {
      Conflict conflict;
      conflict.kind = ConflictKind::RayMismatch;
      conflict.curves = {c};
      conflict.nodes = {ray};
      conflict.images = {image};
      conflict.detail = "ray of " + x.h1_label(c) + " is sent to a finite node";
      out.conflicts.push_back(std::move(conflict));
    }
  }
  resolve_collisions(out.map, out.entries, out.conflicts, ConflictKind::CurveCollision, 0);
  std::erase_if(out.entries, [&](const Rho1Entry& e) { return !out.map[e.curve]; });
  return out;
}

// ---------------------------------------------------------------------------
// Assembly

Reconstruction reconstruct(const StrIso& phi, const ReconstructOptions& options) {
  const auto& x = phi.source();
  const auto& y = phi.target();
  if (x.n1() != y.n1() || x.n2() != y.n2())
    throw Error("source and target fragments have different tier sizes");
  const std::uint64_t start = phi.probes();
  Reconstruction out;
  auto& trace = out.trace;

  auto r2 = rho2_from_phi(phi);
  trace.rho2 = std::move(r2.entries);
  trace.conflicts = std::move(r2.conflicts);

  Rho1Result r1;
  try {
    r1 = options.method == CurveMethod::Rays ? rho1_from_rays(phi)
                                             : rho1_from_psi(phi, options.kset_cap, options.threads);
  } catch (const ReconstructionError& e) {
    for (const auto& c : e.trace().conflicts) trace.conflicts.push_back(c);
    trace.probes = phi.probes() - start;
    return out;
  }
  trace.rho1 = std::move(r1.entries);
  for (auto& c : r1.conflicts) trace.conflicts.push_back(std::move(c));

  const bool complete =
      std::all_of(r2.map.begin(), r2.map.end(), [](const auto& v) { return v.has_value(); }) &&
      std::all_of(r1.map.begin(), r1.map.end(), [](const auto& v) { return v.has_value(); });
  if (complete && trace.conflicts.empty()) {
    std::vector<std::size_t> h1(x.n1()), h2(x.n2());
    for (std::size_t c = 0; c < x.n1(); ++c) h1[c] = *r1.map[c];
    for (std::size_t m = 0; m < x.n2(); ++m) h2[m] = *r2.map[m];
    IsoMap rho(std::move(h1), std::move(h2));
    for (std::size_t c = 0; c < x.n1(); ++c) {
      for (std::size_t m = 0; m < x.n2(); ++m) {
        if (x.below(c, m) == y.below(rho.h1(c), rho.h2(m))) continue;
        Conflict conflict;
        conflict.kind = ConflictKind::IncidenceViolation;
        conflict.curves = {c};
        conflict.points = {m};
        conflict.image_curves = {rho.h1(c)};
        conflict.image_points = {rho.h2(m)};
        conflict.detail = x.h1_label(c) + (x.below(c, m) ? " < " : " !< ") + x.h2_label(m) +
                          " is not mirrored by " + y.h1_label(rho.h1(c)) + " and " +
                          y.h2_label(rho.h2(m));
        trace.conflicts.push_back(std::move(conflict));
      }
    }
    if (trace.conflicts.empty()) out.rho = std::move(rho);
  }
  trace.probes = phi.probes() - start;
  return out;
}

std::pair<IsoMap, ReconstructionTrace> build_rho(const StrIso& phi,
                                                 const ReconstructOptions& options) {
  auto r = reconstruct(phi, options);
  if (!r.rho) {
    std::string what = "reconstruction failed";
    if (!r.trace.conflicts.empty()) {
      const auto& c = r.trace.conflicts.front();
      what += ": " + to_string(c.kind) + " (" + c.detail + ")";
      if (r.trace.conflicts.size() > 1)
        what += " and " + std::to_string(r.trace.conflicts.size() - 1) + " more";
    }
    throw ReconstructionError(what, std::move(r.trace));
  }
  return {std::move(*r.rho), std::move(r.trace)};
}

bool replay_conflict(const StrIso& phi, const Conflict& conflict) {
  const auto& x = phi.source();
  const auto& y = phi.target();
  auto image_point = [&](const StrNode& n) {
    return singleton_point(materialize(y, phi.forward(n)).second);
  };
  auto in_fiber = [&](const StrNode& n, std::size_t m) {
    return materialize(x, n).second == TierSet::singleton(m);
  };
  auto curve_candidates = [&](std::size_t c) {
    TierSet common = y.all_h1();
    for (const auto& k : k_sets(x, c, conflict.kset_cap))
      common = common & materialize(y, phi.forward(k)).first;
    return common;
  };

  switch (conflict.kind) {
    case ConflictKind::FiberIncoherent: {
      if (conflict.nodes.size() != 2 || conflict.points.size() != 1) return false;
      const auto m = conflict.points.front();
      if (!in_fiber(conflict.nodes[0], m) || !in_fiber(conflict.nodes[1], m)) return false;
      const auto n0 = image_point(conflict.nodes[0]);
      const auto n1 = image_point(conflict.nodes[1]);
      return n0 && n1 && *n0 != *n1;
    }
    case ConflictKind::NonSingletonImage: {
      if (conflict.nodes.size() != 1 || conflict.points.size() != 1) return false;
      return in_fiber(conflict.nodes[0], conflict.points[0]) && !image_point(conflict.nodes[0]);
    }
    case ConflictKind::FiberCollision: {
      if (conflict.nodes.size() != 2 || conflict.points.size() != 2) return false;
      if (conflict.points[0] == conflict.points[1]) return false;
      if (!in_fiber(conflict.nodes[0], conflict.points[0]) ||
          !in_fiber(conflict.nodes[1], conflict.points[1]))
        return false;
      const auto n0 = image_point(conflict.nodes[0]);
      const auto n1 = image_point(conflict.nodes[1]);
      return n0 && n1 && *n0 == *n1;
    }
    case ConflictKind::Ambiguity: {
      if (conflict.curves.size() != 1) return false;
      const auto c = conflict.curves.front();
      const auto expected = k_sets(x, c, conflict.kset_cap);
      if (conflict.nodes.size() != expected.size()) return false;
      for (std::size_t i = 0; i < expected.size(); ++i)
        if (conflict.nodes[i] != StrNode{expected[i]}) return false;
      const TierSet common = curve_candidates(c);
      return common.size() != 1 && common == conflict.candidates;
    }
    case ConflictKind::CurveCollision: {
      if (conflict.curves.size() != 2 || conflict.curves[0] == conflict.curves[1]) return false;
      const bool rays = !conflict.nodes.empty() && is_ray(conflict.nodes.front());
      std::optional<std::size_t> images[2];
      for (int i = 0; i < 2; ++i) {
        const auto c = conflict.curves[i];
        if (rays) {
          const StrNode image = phi.forward(RayNode{c});
          if (const auto* r = std::get_if<RayNode>(&image)) images[i] = r->curve;
        } else {
          const TierSet common = curve_candidates(c);
          if (common.size() == 1) images[i] = common.first();
        }
      }
      return images[0] && images[1] && *images[0] == *images[1];
    }
    case ConflictKind::MissingKSets:
      return conflict.curves.size() == 1 && k_sets(x, conflict.curves[0], conflict.kset_cap).empty();
    case ConflictKind::RayMismatch: {
      if (conflict.curves.size() != 1) return false;
      return !is_ray(phi.forward(RayNode{conflict.curves[0]}));
    }
    case ConflictKind::IncidenceViolation: {
      if (conflict.curves.size() != 1 || conflict.points.size() != 1 ||
          conflict.image_curves.size() != 1 || conflict.image_points.size() != 1)
        return false;
      return x.below(conflict.curves[0], conflict.points[0]) !=
             y.below(conflict.image_curves[0], conflict.image_points[0]);
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Factorization and extension

FactorizationReport verify_factorization(const StrIso& phi, const IsoMap& rho, std::size_t sample,
                                         std::uint64_t seed) {
  const auto& y = phi.target();
  const auto& dom = phi.source_domain();
  std::vector<std::size_t> picks(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) picks[i] = i;
  if (sample > 0 && sample < dom.size()) {
    std::mt19937_64 rng(seed);
    auto perm = random_permutation(dom.size(), rng);
    perm.resize(sample);
    std::sort(perm.begin(), perm.end());
    picks = std::move(perm);
  }
  const IsoMap inv = rho.inverse();
  FactorizationReport out;
  for (auto i : picks) {
    const StrNode& node = dom[i];
    const StrNode image = phi.forward(node);
    const StrNode expected = apply_node(rho, node);
    ++out.checked;
    if (image == expected) continue;
    FactorizationViolation v{node, image, expected, {}, {}};
    const StrPair mat = materialize(y, image);
    v.a_star = inv.apply_h1(mat.first & y.all_h1());
    v.b_star = inv.apply_h2(mat.second & y.all_h2());
    out.violations.push_back(std::move(v));
  }
  return out;
}

StrIso extend_psi_to_phi(const StrIso& psi, std::size_t size_cap) {
  auto r = rho1_from_psi(psi, size_cap);
  if (!r.conflicts.empty()) {
    ReconstructionTrace trace;
    trace.rho1 = r.entries;
    trace.conflicts = r.conflicts;
    trace.probes = psi.probes();
    throw ReconstructionError("curves are not determined by their K-sets: " +
                                  r.conflicts.front().detail,
                              std::move(trace));
  }
  auto table = psi.table();
  std::erase_if(table, [](const auto& e) { return is_ray(e.first); });
  for (std::size_t c = 0; c < psi.source().n1(); ++c)
    table.emplace_back(RayNode{c}, RayNode{*r.map[c]});
  return StrIso::from_table(psi.source(), psi.target(), table);
}

}  // namespace strposet
