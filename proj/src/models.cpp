#include "strposet/models.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

#include "strposet/error.hpp"
#include "strposet/iso_map.hpp"

namespace strposet {

// ---------------------------------------------------------------------------
// Random fragments

void check_params(const GeneratorParams& params, std::size_t max_tier) {
  auto fail = [](const std::string& field, const std::string& why) {
    throw ValidationError("generator parameter " + field + ": " + why);
  };
  if (params.n1 < 1) fail("n1", "must be at least 1");
  if (params.n2 < 1) fail("n2", "must be at least 1");
  if (params.n1 > max_tier) fail("n1", "exceeds the tier cap " + std::to_string(max_tier));
  if (params.n2 > max_tier) fail("n2", "exceeds the tier cap " + std::to_string(max_tier));
  if (params.planted_pairs_per_point < 1) fail("planted_pairs_per_point", "must be at least 1");
  if (params.pairwise_cap < 2) fail("pairwise_cap", "must be at least 2");
  if (params.generic_curves > params.n1) fail("generic_curves", "exceeds n1");
  if (params.n1 - params.generic_curves < 2 * params.planted_pairs_per_point)
    fail("n1", "too small to plant disjoint pairs");
  if (params.min_updeg > params.n2) fail("min_updeg", "exceeds n2");
  if (params.generic_curves >= 1 && params.min_updeg > params.pairwise_cap)
    fail("min_updeg", "exceeds pairwise_cap, which bounds up-degrees next to a generic curve");
  if (params.generic_curves >= 2 && params.n2 > params.pairwise_cap)
    fail("generic_curves", "two generic curves share all n2 points, more than pairwise_cap");
}

namespace {

struct Plant {
  std::size_t u, v, m;
};

class Builder {
 public:
  Builder(const GeneratorParams& p) : params_(p), up_(p.n1), generic_(p.n1, false) {}

  void make_generic(std::size_t x) {
    generic_[x] = true;
    up_[x] = TierSet::prefix(params_.n2);
  }
  bool is_generic(std::size_t x) const { return generic_[x]; }
  const TierSet& up(std::size_t x) const { return up_[x]; }

  bool can_add(std::size_t x, std::size_t m) const {
    if (generic_[x] || up_[x].contains(m)) return false;
    TierSet grown = up_[x];
    grown.insert(m);
    for (std::size_t z = 0; z < up_.size(); ++z)
      if (z != x && (grown & up_[z]).size() > params_.pairwise_cap) return false;
    for (const auto& pl : plants_) {
      if (pl.u == x && up_[pl.v].contains(m)) return false;
      if (pl.v == x && up_[pl.u].contains(m)) return false;
    }
    return true;
  }

  void add(std::size_t x, std::size_t m) { up_[x].insert(m); }
  void plant(std::size_t u, std::size_t v, std::size_t m) {
    add(u, m);
    add(v, m);
    plants_.push_back({u, v, m});
  }

  PosetFragment build() const {
    Incidence inc;
    for (std::size_t x = 0; x < up_.size(); ++x)
      for (auto m : up_[x]) inc.emplace_back(x, m);
    return PosetFragment::from_pairs(params_.n1, params_.n2, inc);
  }

 private:
  const GeneratorParams& params_;
  std::vector<TierSet> up_;
  std::vector<bool> generic_;
  std::vector<Plant> plants_;
};

bool try_generate(const GeneratorParams& params, std::mt19937_64& rng, PosetFragment& out) {
  Builder b(params);
  const auto order = random_permutation(params.n1, rng);
  for (std::size_t i = 0; i < params.generic_curves; ++i) b.make_generic(order[i]);

  for (std::size_t m = 0; m < params.n2; ++m) {
    std::vector<std::size_t> pool;
    for (auto x : random_permutation(params.n1, rng))
      if (!b.is_generic(x)) pool.push_back(x);
    TierSet used;
    for (std::size_t k = 0; k < params.planted_pairs_per_point; ++k) {
      bool placed = false;
      for (std::size_t i = 0; i < pool.size() && !placed; ++i) {
        const auto u = pool[i];
        if (used.contains(u) || !b.can_add(u, m)) continue;
        for (std::size_t j = i + 1; j < pool.size(); ++j) {
          const auto v = pool[j];
          if (used.contains(v) || b.up(u).intersects(b.up(v)) || !b.can_add(v, m)) continue;
          b.plant(u, v, m);
          used.insert(u);
          used.insert(v);
          placed = true;
          break;
        }
      }
      if (!placed) return false;
    }
  }

  for (auto x : random_permutation(params.n1, rng)) {
    if (b.is_generic(x)) continue;
    while (b.up(x).size() < params.min_updeg) {
      bool grew = false;
      for (auto m : random_permutation(params.n2, rng)) {
        if (b.can_add(x, m)) {
          b.add(x, m);
          grew = true;
          break;
        }
      }
      if (!grew) return false;
    }
  }

  for (std::size_t t = 0; t < params.sprinkle_attempts; ++t) {
    const auto x = static_cast<std::size_t>(uniform_below(rng, params.n1));
    const auto m = static_cast<std::size_t>(uniform_below(rng, params.n2));
    if (b.can_add(x, m)) b.add(x, m);
  }
  out = b.build();
  return true;
}

}  // namespace

PosetFragment random_fragment(const GeneratorParams& params) {
  check_params(params);
  constexpr int kRestarts = 64;
  std::mt19937_64 rng(params.seed);
  PosetFragment out;
  for (int attempt = 0; attempt < kRestarts; ++attempt)
    if (try_generate(params, rng, out)) return out;
  throw Error("random_fragment: constraints not satisfiable after " + std::to_string(kRestarts) +
              " restarts; relax pairwise_cap or min_updeg, or add curves");
}

// ---------------------------------------------------------------------------
// Polynomials over F_p

std::size_t monomial_count(int d) { return static_cast<std::size_t>((d + 1) * (d + 2) / 2); }

// Graded by total degree, then by the power of y. This is a monomial order,
// so leading terms multiply.
std::size_t monomial_index(int i, int j) {
  const int t = i + j;
  return static_cast<std::size_t>(t * (t + 1) / 2 + j);
}

namespace {

struct Monomial {
  int i, j;
};

std::vector<Monomial> monomials(int d) {
  std::vector<Monomial> out(monomial_count(d));
  for (int t = 0; t <= d; ++t)
    for (int j = 0; j <= t; ++j) out[monomial_index(t - j, j)] = {t - j, j};
  return out;
}

int mod_pow(int base, int e, int p) {
  int r = 1 % p;
  for (int k = 0; k < e; ++k) r = r * base % p;
  return r;
}

int inverse_mod(int a, int p) { return mod_pow(a, p - 2, p); }

int lead_index(const Poly& f) {
  for (int k = static_cast<int>(f.coef.size()) - 1; k >= 0; --k)
    if (f.coef[k] != 0) return k;
  return -1;
}

void normalize(Poly& f) {
  const int lead = lead_index(f);
  if (lead < 0) return;
  const int s = inverse_mod(f.coef[lead], f.p);
  for (auto& c : f.coef) c = c * s % f.p;
}

Poly multiply(const Poly& g, const Poly& h, int d) {
  const auto mg = monomials(g.d);
  const auto mh = monomials(h.d);
  Poly out{g.p, d, std::vector<int>(monomial_count(d), 0)};
  for (std::size_t a = 0; a < g.coef.size(); ++a) {
    if (g.coef[a] == 0) continue;
    for (std::size_t b = 0; b < h.coef.size(); ++b) {
      if (h.coef[b] == 0) continue;
      const int i = mg[a].i + mh[b].i, j = mg[a].j + mh[b].j;
      if (i + j > d) throw Error("polynomial product exceeds the degree bound");
      auto& c = out.coef[monomial_index(i, j)];
      c = (c + g.coef[a] * h.coef[b]) % g.p;
    }
  }
  return out;
}

std::uint64_t key_of(const Poly& f) {
  std::uint64_t k = 0;
  for (auto it = f.coef.rbegin(); it != f.coef.rend(); ++it)
    k = k * static_cast<std::uint64_t>(f.p) + static_cast<std::uint64_t>(*it);
  return k;
}

std::uint64_t poly_space(int p, int d) {
  std::uint64_t n = 1;
  for (std::size_t k = 0; k < monomial_count(d); ++k) n *= static_cast<std::uint64_t>(p);
  return n;
}

Poly from_key(std::uint64_t key, int p, int d) {
  Poly f{p, d, std::vector<int>(monomial_count(d), 0)};
  for (auto& c : f.coef) {
    c = static_cast<int>(key % static_cast<std::uint64_t>(p));
    key /= static_cast<std::uint64_t>(p);
  }
  return f;
}

bool is_monic(const Poly& f) {
  const int lead = lead_index(f);
  return lead >= 0 && f.coef[lead] == 1;
}

/// Monic polynomials of exact degree t, as polynomials in the degree-t space.
std::vector<Poly> monic_of_degree(int p, int t) {
  std::vector<Poly> out;
  const std::uint64_t n = poly_space(p, t);
  for (std::uint64_t k = 0; k < n; ++k) {
    Poly f = from_key(k, p, t);
    if (f.degree() == t && is_monic(f)) out.push_back(std::move(f));
  }
  return out;
}

void check_field(int p, int d) {
  if (p != 2 && p != 3 && p != 5) throw Error("affine plane model supports p in {2, 3, 5}");
  if (d < 1 || d > 3) throw Error("affine plane model supports 1 <= d <= 3");
}

bool has_rational_zero(const Poly& f) {
  for (int a = 0; a < f.p; ++a)
    for (int b = 0; b < f.p; ++b)
      if (f.eval(a, b) == 0) return true;
  return false;
}

}  // namespace

int Poly::degree() const {
  const int lead = lead_index(*this);
  if (lead < 0) return -1;
  return monomials(d)[static_cast<std::size_t>(lead)].i + monomials(d)[static_cast<std::size_t>(lead)].j;
}

int Poly::eval(int x, int y) const {
  const auto ms = monomials(d);
  int v = 0;
  for (std::size_t k = 0; k < coef.size(); ++k) {
    if (coef[k] == 0) continue;
    v = (v + coef[k] * mod_pow(x, ms[k].i, p) % p * mod_pow(y, ms[k].j, p)) % p;
  }
  return v;
}

std::string Poly::text() const {
  const auto ms = monomials(d);
  std::string out;
  for (int k = static_cast<int>(coef.size()) - 1; k >= 0; --k) {
    const int c = coef[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const auto [i, j] = ms[static_cast<std::size_t>(k)];
    std::string term;
    if (c != 1 || i + j == 0) term += std::to_string(c);
    if (i > 0) term += i == 1 ? "x" : "x^" + std::to_string(i);
    if (j > 0) term += j == 1 ? "y" : "y^" + std::to_string(j);
    if (!out.empty()) out += '+';
    out += term;
  }
  return out.empty() ? "0" : out;
}

bool is_irreducible(const Poly& f) {
  const int deg = f.degree();
  if (deg < 1) throw Error("irreducibility is defined for nonconstant polynomials");
  Poly target = f;
  normalize(target);
  for (int dg = 1; dg + dg <= deg; ++dg) {
    const auto gs = monic_of_degree(f.p, dg);
    const auto hs = monic_of_degree(f.p, deg - dg);
    for (const auto& g : gs) {
      for (const auto& h : hs) {
        Poly prod = multiply(g, h, f.d);
        if (prod.coef == target.coef) return false;
      }
    }
  }
  return true;
}

static std::vector<Poly> collect_curves(int p, int d, std::size_t limit) {
  check_field(p, d);
  std::unordered_set<std::uint64_t> reducible;
  std::vector<std::vector<Poly>> monic(static_cast<std::size_t>(d));
  for (int t = 1; t < d; ++t) monic[static_cast<std::size_t>(t)] = monic_of_degree(p, t);
  for (int dg = 1; dg + dg <= d; ++dg) {
    for (int dh = dg; dg + dh <= d; ++dh) {
      for (const auto& g : monic[static_cast<std::size_t>(dg)])
        for (const auto& h : monic[static_cast<std::size_t>(dh)])
          reducible.insert(key_of(multiply(g, h, d)));
    }
  }
  std::vector<std::pair<int, std::uint64_t>> found;
  const std::uint64_t n = poly_space(p, d);
  for (std::uint64_t k = 0; k < n; ++k) {
    Poly f = from_key(k, p, d);
    if (!is_monic(f) || f.degree() < 1 || reducible.count(k) != 0 || !has_rational_zero(f))
      continue;
    found.emplace_back(f.degree(), k);
    if (found.size() > limit)
      throw CapacityError("affine plane model over F_" + std::to_string(p) + " with degree <= " +
                          std::to_string(d) + " has more than " + std::to_string(limit) +
                          " curves");
  }
  std::sort(found.begin(), found.end());
  std::vector<Poly> out;
  for (const auto& [deg, k] : found) out.push_back(from_key(k, p, d));
  return out;
}

std::vector<Poly> affine_curves(int p, int d) { return collect_curves(p, d, kMaxTierCapacity); }

PosetFragment affine_plane_fragment(int p, int d, std::size_t max_tier) {
  check_field(p, d);
  if (static_cast<std::size_t>(p * p) > max_tier)
    throw CapacityError("affine plane model has more points than the tier cap");
  const auto curves = collect_curves(p, d, std::min(max_tier, kMaxTierCapacity));
  Labels labels;
  for (const auto& f : curves) labels.h1.push_back(f.text());
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      labels.h2.push_back("(" + std::to_string(a) + ";" + std::to_string(b) + ")");
  Incidence inc;
  for (std::size_t x = 0; x < curves.size(); ++x)
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b)
        if (curves[x].eval(a, b) == 0) inc.emplace_back(x, static_cast<std::size_t>(a * p + b));
  return PosetFragment::from_pairs(curves.size(), static_cast<std::size_t>(p * p), inc,
                                   std::move(labels));
}

// ---------------------------------------------------------------------------
// Fixed fragments

PosetFragment cusp_fragment() {
  // Curves P=0, y1=1, y2=2; points m=0, n1=1, n2=2.
  Incidence inc = {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}, {2, 2}};
  return PosetFragment::from_pairs(3, 3, inc, Labels{{"P", "y1", "y2"}, {"m", "n1", "n2"}});
}

PosetFragment small_example_fragment() {
  Incidence inc = {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}};
  return PosetFragment::from_pairs(3, 2, inc, Labels{{"a", "b", "c"}, {"d", "e"}});
}

}  // namespace strposet
