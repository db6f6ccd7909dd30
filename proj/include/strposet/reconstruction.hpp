#pragma once

// Recovering a poset isomorphism rho: X -> Y from an isomorphism phi of
// structure posets. phi is only ever probed on an explicit, finite domain of
// nodes. Points are recovered from where singleton fibers go, curves either
// from ray images or from the images of their K-sets (nodes (K, {b}) with
// x in K and mub K = {b}).

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "strposet/error.hpp"
#include "strposet/fragment.hpp"
#include "strposet/iso_map.hpp"
#include "strposet/structure.hpp"

namespace strposet {

/// Which nodes of Str X a map is defined on.
struct DomainSpec {
  /// Second ordinates whose fibers are enumerated.
  std::vector<TierSet> fibers;
  /// Curves allowed in first ordinates of fiber nodes; empty means all of X1.
  TierSet support;
  std::size_t amax = 1;
  bool include_rays = false;
  /// When nonzero, every K-set node with |K| <= kset_cap is added.
  std::size_t kset_cap = 0;

  /// The same domain renamed through rho.
  DomainSpec transported(const IsoMap& rho) const;
};

/// Every singleton fiber {m}, nodes of size <= amax, plus K-sets up to kset_cap.
DomainSpec default_domain(const PosetFragment& fragment, std::size_t kset_cap,
                          bool include_rays = false, std::size_t amax = 1);

/// Sorted, duplicate-free node list. With rays included, a finite node equal
/// to some ray's materialization is represented by the ray only.
std::vector<StrNode> build_domain(const PosetFragment& fragment, const DomainSpec& spec);

/// A map between finite parts of Str X and Str Y, backed by a table or by a
/// callable oracle. Probes outside the source (or target) domain throw.
/// Copies share one probe counter.
class StrIso {
 public:
  using Oracle = std::function<StrNode(const StrNode&)>;

  static StrIso from_table(PosetFragment source, PosetFragment target,
                           const std::vector<std::pair<StrNode, StrNode>>& table);
  static StrIso from_oracle(PosetFragment source, PosetFragment target,
                            std::vector<StrNode> source_domain, std::vector<StrNode> target_domain,
                            Oracle forward, Oracle inverse, bool concurrent_safe);

  StrNode forward(const StrNode& node) const;
  StrNode inverse(const StrNode& node) const;

  const PosetFragment& source() const { return *source_; }
  const PosetFragment& target() const { return *target_; }
  const std::vector<StrNode>& source_domain() const { return source_domain_; }
  const std::vector<StrNode>& target_domain() const { return target_domain_; }
  bool in_source_domain(const StrNode& n) const { return source_set_.count(n) != 0; }
  bool in_target_domain(const StrNode& n) const { return target_set_.count(n) != 0; }

  /// Whether forward/inverse may be called from several threads at once.
  bool concurrent_safe() const { return concurrent_safe_; }
  std::uint64_t probes() const { return probes_->load(); }
  void reset_probes() const { probes_->store(0); }

  /// forward evaluated on the whole source domain, in domain order.
  std::vector<std::pair<StrNode, StrNode>> table() const;

 private:
  StrIso() = default;

  std::shared_ptr<const PosetFragment> source_;
  std::shared_ptr<const PosetFragment> target_;
  std::vector<StrNode> source_domain_;
  std::vector<StrNode> target_domain_;
  std::set<StrNode> source_set_;
  std::set<StrNode> target_set_;
  Oracle forward_;
  Oracle inverse_;
  bool concurrent_safe_ = false;
  std::shared_ptr<std::atomic<std::uint64_t>> probes_;
};

/// (A, B) -> (rho A, rho B) and Ray(x) -> Ray(rho x), on the domain spec over
/// X and its transport over Y. Throws ValidationError unless rho is an
/// isomorphism source -> target.
StrIso induce_str_iso(const IsoMap& rho, const PosetFragment& source,
                      const PosetFragment& target, const DomainSpec& spec);

/// Domain invariants: images land in the target domain, forward and inverse
/// compose to the identity both ways, and the order is preserved and
/// reflected on every in-domain pair. Empty when all hold.
std::vector<std::string> str_iso_violations(const StrIso& phi);

/// A copy of phi (as a table) with one node in a singleton fiber {m} sent to a
/// different fiber. The node is chosen by seed among fibers with at least two
/// domain nodes. Throws Error if no such fiber exists.
std::pair<StrIso, StrNode> corrupt_str_iso(const StrIso& phi, std::uint64_t seed);

enum class ConflictKind {
  FiberIncoherent,    // two nodes of one fiber {m} land in different fibers
  NonSingletonImage,  // a node of fiber {m} lands in a fiber whose ordinate is not a point
  FiberCollision,     // two fibers {m1}, {m2} land in the same fiber
  Ambiguity,          // K-set images of x do not pin down one curve
  CurveCollision,     // two curves resolve to the same image
  MissingKSets,       // x has no K-set within the cap
  RayMismatch,        // Ray(x) is not sent to a ray
  IncidenceViolation  // the assembled map breaks incidence
};

std::string to_string(ConflictKind kind);

struct Conflict {
  ConflictKind kind = ConflictKind::Ambiguity;
  /// Source elements the conflict is about, by tier.
  std::vector<std::size_t> curves;
  std::vector<std::size_t> points;
  /// Image-side elements involved (the resolved images, for collisions and
  /// incidence violations).
  std::vector<std::size_t> image_curves;
  std::vector<std::size_t> image_points;
  /// Source nodes whose images force the conflict, and those images.
  std::vector<StrNode> nodes;
  std::vector<StrNode> images;
  /// Surviving candidates for ambiguities.
  TierSet candidates;
  std::size_t kset_cap = 0;
  std::string detail;
};

struct Rho2Entry {
  std::size_t point = 0;
  std::size_t image = 0;
  StrNode witness;
};

struct Rho1Entry {
  std::size_t curve = 0;
  std::size_t image = 0;
  /// K-set nodes (or the single ray) whose images determined the entry.
  std::vector<StrNode> evidence;
  bool via_ray = false;
};

struct ReconstructionTrace {
  std::vector<Rho2Entry> rho2;
  std::vector<Rho1Entry> rho1;
  std::vector<Conflict> conflicts;
  std::uint64_t probes = 0;
};

class ReconstructionError : public Error {
 public:
  ReconstructionError(const std::string& what, ReconstructionTrace trace)
      : Error(what), trace_(std::move(trace)) {}
  const ReconstructionTrace& trace() const noexcept { return trace_; }

 private:
  ReconstructionTrace trace_;
};

struct Rho2Result {
  /// Indexed by point of X; empty where unresolved.
  std::vector<std::optional<std::size_t>> map;
  std::vector<Rho2Entry> entries;
  std::vector<Conflict> conflicts;
};

/// Points from singleton fibers. Throws Error listing the points with no
/// node of their fiber in the domain.
Rho2Result rho2_from_phi(const StrIso& phi);

/// All (K, {b}) with x in K, 2 <= |K| <= size_cap and mub K = {b}, sorted.
std::vector<StrPair> k_sets(const PosetFragment& fragment, std::size_t x, std::size_t size_cap);

/// Smallest cap in [2, max_cap] at which, for every curve x, x is the only
/// curve shared by all of its K-sets. Returns max_cap when none works. Uses X
/// alone, so no probes are spent.
std::size_t choose_kset_cap(const PosetFragment& fragment, std::size_t max_cap);

struct Rho1Result {
  std::vector<std::optional<std::size_t>> map;
  std::vector<Rho1Entry> entries;
  std::vector<Conflict> conflicts;
};

/// Curves as the intersection of the first ordinates of psi's K-set images.
/// Runs curves on `threads` workers when psi is concurrent-safe; the result
/// does not depend on the thread count. Throws ReconstructionError when some
/// curve has no K-set within the cap.
Rho1Result rho1_from_psi(const StrIso& psi, std::size_t size_cap, unsigned threads = 1);

/// Curves read off ray images. Every Ray(x) must be in phi's domain.
Rho1Result rho1_from_rays(const StrIso& phi);

enum class CurveMethod { KSets, Rays };

struct ReconstructOptions {
  CurveMethod method = CurveMethod::KSets;
  std::size_t kset_cap = 3;
  unsigned threads = 1;
};

struct Reconstruction {
  std::optional<IsoMap> rho;
  ReconstructionTrace trace;
};

/// Assembles rho from its tiers and checks incidence both ways. Never throws
/// for conflicts: rho is empty and the trace lists them.
Reconstruction reconstruct(const StrIso& phi, const ReconstructOptions& options);

/// reconstruct, throwing ReconstructionError (with the trace) unless rho is
/// fully resolved.
std::pair<IsoMap, ReconstructionTrace> build_rho(const StrIso& phi,
                                                 const ReconstructOptions& options);

/// Re-evaluates the conflict against phi (and, for incidence violations, the
/// two fragments). True when the cited nodes still exhibit it.
bool replay_conflict(const StrIso& phi, const Conflict& conflict);

struct FactorizationViolation {
  StrNode node;
  StrNode image;
  StrNode expected;
  /// rho^-1 of the image's ordinates; equal to (A, B) exactly when clean.
  TierSet a_star;
  TierSet b_star;
};

struct FactorizationReport {
  std::size_t checked = 0;
  std::vector<FactorizationViolation> violations;
  bool clean() const { return violations.empty(); }
};

/// phi(A, B) == (rho A, rho B) on the source domain, or on `sample` nodes
/// drawn by seed when 0 < sample < domain size.
FactorizationReport verify_factorization(const StrIso& phi, const IsoMap& rho,
                                         std::size_t sample = 0, std::uint64_t seed = 0);

/// psi on finite nodes plus Ray(a) -> Ray(c), with c from the K-set method.
/// Throws ReconstructionError on any curve conflict.
StrIso extend_psi_to_phi(const StrIso& psi, std::size_t size_cap);

}  // namespace strposet
