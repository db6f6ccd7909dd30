#pragma once

// Fragment generators: seeded random fragments with planted J3 witnesses,
// rational-point models of the affine plane over a small prime field, and
// two fixed hand-built fragments.

#include <cstdint>
#include <string>
#include <vector>

#include "strposet/fragment.hpp"

namespace strposet {

struct GeneratorParams {
  std::size_t n1 = 12;
  std::size_t n2 = 3;
  /// Every curve ends with at least this many points above it.
  std::size_t min_updeg = 2;
  /// Disjoint curve pairs per point whose only common point is that point.
  std::size_t planted_pairs_per_point = 2;
  /// Curves placed below every point. They take part in no plant.
  std::size_t generic_curves = 1;
  /// Largest number of common points any two curves may have. With a generic
  /// curve present this also bounds every other curve's up-degree.
  std::size_t pairwise_cap = 3;
  /// Random extra incidences tried after planting, each kept only if every
  /// constraint still holds.
  std::size_t sprinkle_attempts = 12;
  std::uint64_t seed = 0;
};

/// Throws ValidationError naming the first bad field.
void check_params(const GeneratorParams& params, std::size_t max_tier = kMaxTierCapacity);

/// Deterministic in params.seed. Throws Error when the constraints cannot be
/// met after a bounded number of restarts.
PosetFragment random_fragment(const GeneratorParams& params);

/// Points of F_p^2 over the irreducible polynomials of total degree <= d with
/// a rational zero, normalized to a monic leading term. p in {2, 3, 5},
/// 1 <= d <= 3. Throws CapacityError if the curve count exceeds max_tier.
PosetFragment affine_plane_fragment(int p, int d, std::size_t max_tier = kMaxTierCapacity);

/// A polynomial over F_p in x and y, coefficients indexed by monomial_index.
struct Poly {
  int p = 2;
  int d = 1;
  std::vector<int> coef;

  int degree() const;  // -1 for the zero polynomial
  int eval(int x, int y) const;
  std::string text() const;
};

std::size_t monomial_count(int d);
/// Position of x^i y^j, i + j <= d.
std::size_t monomial_index(int i, int j);

/// Exhaustive trial factorization: f is irreducible iff no product g*h of
/// nonconstant polynomials with deg g + deg h = deg f equals f up to a unit.
bool is_irreducible(const Poly& f);

/// The curves of affine_plane_fragment(p, d) in index order.
std::vector<Poly> affine_curves(int p, int d);

/// Curves P, y1, y2 and points m, n1, n2 with mub{y1, y2} = {m} but no
/// partner y with mub{P, y} = {m}.
PosetFragment cusp_fragment();

/// Curves a, b, c and points d, e; a and b lie below both points, c only
/// below d.
PosetFragment small_example_fragment();

}  // namespace strposet
