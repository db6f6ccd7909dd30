#pragma once

// The structure poset Str X of a fragment: pairs (A, B) of a nonempty curve
// set A and point set B with some a in A below all of B, ordered by domination.
// Fibers (Str X)_B collect the pairs with a fixed second ordinate.
//
// The domination clause "a < m and W < m implies m in D" quantifies over the
// fragment's points only.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "strposet/fragment.hpp"
#include "strposet/small_poset.hpp"

namespace strposet {

/// A node with both ordinates finite.
struct StrPair {
  TierSet first;   // A, curves
  TierSet second;  // B, points

  friend bool operator==(const StrPair&, const StrPair&) = default;
  friend auto operator<=>(const StrPair&, const StrPair&) = default;
};

/// The node (x, G(x)) of a curve with its full upper set.
struct RayNode {
  std::size_t curve = 0;

  friend bool operator==(const RayNode&, const RayNode&) = default;
  friend auto operator<=>(const RayNode&, const RayNode&) = default;
};

using StrNode = std::variant<StrPair, RayNode>;

inline bool is_ray(const StrNode& n) { return std::holds_alternative<RayNode>(n); }

/// Comma-separated labels, e.g. "a,b".
std::string curve_list(const PosetFragment& fragment, const TierSet& curves);
std::string point_list(const PosetFragment& fragment, const TierSet& points);
/// "a,b|d,e" for finite pairs, "ray(a)" for rays.
std::string node_text(const PosetFragment& fragment, const StrNode& node);

/// Rays become ({x}, up(x)); finite pairs are returned as is.
StrPair materialize(const PosetFragment& fragment, const StrNode& node);

bool str_member(const PosetFragment& fragment, const TierSet& a, const TierSet& b);
/// Rays are members whenever their curve has a point above it.
bool str_member(const PosetFragment& fragment, const StrNode& node);

/// The largest W inside C with W < D: {c in C : c < d for all d in D}.
TierSet w_max(const PosetFragment& fragment, const TierSet& c, const TierSet& d);

/// (C, D) dominates (A, B) via W. Throws Error when either pair is not a member.
bool dominates_via(const PosetFragment& fragment, const StrPair& upper, const StrPair& lower,
                   const TierSet& w);

/// lower <= upper in Str X, decided with the single witness w_max(C, D).
/// Throws Error on non-members.
bool str_leq(const PosetFragment& fragment, const StrPair& lower, const StrPair& upper);
bool str_leq(const PosetFragment& fragment, const StrNode& lower, const StrNode& upper);

inline constexpr std::size_t kBruteForceLimit = 16;

/// Same relation, trying every W inside C. Throws CapacityError if |C| > 16.
bool str_leq_bruteforce(const PosetFragment& fragment, const StrPair& lower,
                        const StrPair& upper);

/// |{a in A : a < B}|, at least 1 for members. Throws Error on non-members.
std::size_t ell(const PosetFragment& fragment, const TierSet& a, const TierSet& b);
/// |A| - ell(A, B).
std::size_t eta(const PosetFragment& fragment, const TierSet& a, const TierSet& b);

/// Whether (A, B) is above some other node of its fiber: some K inside A has
/// mub K = B. Subset enumeration; CapacityError if |A| > 16.
bool fiber_height_positive(const PosetFragment& fragment, const TierSet& a, const TierSet& b);

/// True when B is exactly the upper set of some curve, so (x, B) is the
/// materialization of a ray.
bool is_ray_ordinate(const PosetFragment& fragment, const TierSet& b);

/// A fiber (Str X)_B, or a subposet of it, with its order precomputed.
struct FiberView {
  TierSet second;
  TierSet support;
  std::size_t amax = 0;
  /// First ordinates, sorted by size and then lexicographically.
  std::vector<TierSet> firsts;
  /// order[i][j] iff node i <= node j.
  std::vector<std::vector<bool>> order;

  std::size_t size() const { return firsts.size(); }
  StrPair node(std::size_t i) const { return {firsts.at(i), second}; }
  std::optional<std::size_t> find(const TierSet& a) const;
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;
  AbstractPoset as_poset() const;
};

/// L_B(A, B): every member (A', B) with A' inside A and (A', B) <= (A, B).
/// Throws on non-members and CapacityError if |A| > 16.
FiberView down_set_in_fiber(const PosetFragment& fragment, const TierSet& a, const TierSet& b);

inline constexpr std::size_t kFiberNodeBudget = std::size_t{1} << 20;

/// Members (A, B) with A inside support and 1 <= |A| <= amax. amax <= 16.
FiberView enumerate_fiber(const PosetFragment& fragment, const TierSet& b, const TierSet& support,
                          std::size_t amax = 4);

struct CountCheck {
  std::uint64_t predicted = 0;  // (2^ell - 1) * 2^eta
  std::uint64_t actual = 0;     // |L_B(A, B)|
};

/// Throws Error unless fiber_height_positive(A, B).
CountCheck counting_formula(const PosetFragment& fragment, const TierSet& a, const TierSet& b);

/// B == mub(A), for positive-height pairs. Throws Error otherwise.
bool parity_mub_check(const PosetFragment& fragment, const TierSet& a, const TierSet& b);

/// |A| = 2 and mub(A) = B, cross-checked against the shape of L_B(A, B);
/// throws Error if the two disagree.
bool detect_I2(const PosetFragment& fragment, const TierSet& a, const TierSet& b);
/// Shape test alone: L_B(A, B) is order-isomorphic to I_2.
bool down_set_is_I2(const PosetFragment& fragment, const TierSet& a, const TierSet& b);

struct MuResult {
  /// Smallest |L_m(A, m)| over positive-height A containing x; empty = infinity.
  std::optional<std::uint64_t> mu;
  /// No y with mub{x, y} = {m}.
  bool ge4 = false;
  /// First A attaining mu.
  TierSet argmin;

  bool infinite() const { return !mu.has_value(); }
};

/// Throws Error unless x < m.
MuResult mu_statistic(const PosetFragment& fragment, std::size_t x, std::size_t m,
                      std::size_t amax = 4);

/// Given nodes sharing point b, the node (K + A + C, b) above both, with K a
/// J3 witness for b avoiding A and C. Empty when no witness is found.
std::optional<StrPair> join_at_point(const PosetFragment& fragment, const StrPair& first,
                                     const StrPair& second, std::size_t b,
                                     std::size_t size_cap = 4);

}  // namespace strposet
