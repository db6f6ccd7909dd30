// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "strposet/conditions.hpp"
#include "strposet/io.hpp"
#include "strposet/iso_map.hpp"
#include "strposet/models.hpp"
#include "strposet/reconstruction.hpp"
#include "strposet/roundtrip.hpp"
#include "strposet/structure.hpp"

using namespace strposet;

namespace {

// Every tolerance below is exact: a single exception fails the criterion.
constexpr std::size_t kMinFragments = 20;
constexpr std::size_t kMinTriples = 10000;
constexpr std::size_t kRelabelingsPerFragment = 10;
constexpr std::size_t kMinRoundTrips = 50;
constexpr std::size_t kI2MaxFirst = 4;
constexpr double kCountingBudgetSeconds = 30.0;

int failures = 0;

void report(int id, bool pass, const std::string& what) {
  std::cout << (pass ? "PASS" : "FAIL") << " [" << id << "] " << what << '\n';
  if (!pass) ++failures;
}

struct FiberData {
  const corpus::Entry* entry;
  FiberView view;
};

std::vector<FiberData> enumerate_corpus() {
  std::vector<FiberData> out;
  for (const auto& entry : corpus::all())
    for (const auto& spec : entry.fibers)
      out.push_back({&entry, enumerate_fiber(entry.fragment, spec.second, spec.support, spec.amax)});
  return out;
}

bool in_mu_spectrum(std::uint64_t v) {
  if (v == 0) return false;
  while (v % 2 == 0) v /= 2;
  // v must be 2^l - 1 with l >= 2.
  return v >= 3 && ((v + 1) & v) == 0;
}

}  // namespace

int main() {
  const auto& entries = corpus::all();
  const auto t0 = std::chrono::steady_clock::now();
  const auto fibers = enumerate_corpus();

  // 1 and 2: counting formula and parity on positive-height nodes.
  std::size_t positive = 0, count_bad = 0, parity_bad = 0;
  for (const auto& fd : fibers) {
    const auto& f = fd.entry->fragment;
    for (const auto& a : fd.view.firsts) {
      if (!fiber_height_positive(f, a, fd.view.second)) continue;
      ++positive;
      const auto cc = counting_formula(f, a, fd.view.second);
      if (cc.predicted != cc.actual) ++count_bad;
      if (parity_mub_check(f, a, fd.view.second) != (cc.actual % 2 == 1)) ++parity_bad;
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  {
    std::ostringstream s;
    s << "counting formula: " << entries.size() << " fragments, " << fibers.size() << " fibers, "
      << positive << " positive-height nodes, " << count_bad << " mismatches, " << seconds << " s";
    report(1, entries.size() >= kMinFragments && positive > 0 && count_bad == 0 &&
                  seconds < kCountingBudgetSeconds,
           s.str());
  }
  report(2, positive > 0 && parity_bad == 0,
         "parity: " + std::to_string(positive) + " nodes, " + std::to_string(parity_bad) +
             " exceptions");

  // 3: w_max single witness versus every W.
  {
    std::size_t pairs = 0, bad = 0;
    for (const auto& fd : fibers) {
      const auto& f = fd.entry->fragment;
      for (std::size_t i = 0; i < fd.view.size(); ++i) {
        for (std::size_t j = 0; j < fd.view.size(); ++j) {
          const auto lo = fd.view.node(i), hi = fd.view.node(j);
          if (hi.first.size() > 8) continue;
          ++pairs;
          if (str_leq(f, lo, hi) != str_leq_bruteforce(f, lo, hi)) ++bad;
        }
      }
    }
    report(3, pairs > 0 && bad == 0,
           "w_max completeness: " + std::to_string(pairs) + " pairs, " + std::to_string(bad) +
               " disagreements");
  }

  // 4: partial-order laws.
  {
    std::size_t nodes = 0, refl_bad = 0, anti_bad = 0;
    for (const auto& fd : fibers) {
      const auto& f = fd.entry->fragment;
      for (std::size_t i = 0; i < fd.view.size(); ++i) {
        ++nodes;
        if (!str_leq(f, fd.view.node(i), fd.view.node(i))) ++refl_bad;
        for (std::size_t j = i + 1; j < fd.view.size(); ++j)
          if (str_leq(f, fd.view.node(i), fd.view.node(j)) &&
              str_leq(f, fd.view.node(j), fd.view.node(i)))
            ++anti_bad;
      }
    }
    // Uniform triples rarely chain, so a second batch walks up the
    // precomputed order and then re-checks every step with str_leq.
    std::mt19937_64 rng(20261016);
    std::size_t triples = 0, premises = 0, trans_bad = 0;
    std::vector<const FiberData*> usable;
    for (const auto& fd : fibers)
      if (fd.view.size() >= 2) usable.push_back(&fd);
    auto check = [&](const FiberData& fd, std::size_t i, std::size_t j, std::size_t k) {
      const auto& f = fd.entry->fragment;
      const auto x = fd.view.node(i), y = fd.view.node(j), z = fd.view.node(k);
      ++triples;
      if (str_leq(f, x, y) && str_leq(f, y, z)) {
        ++premises;
        if (!str_leq(f, x, z)) ++trans_bad;
      }
    };
    auto above = [&](const FiberData& fd, std::size_t i) {
      std::vector<std::size_t> out;
      for (std::size_t j = 0; j < fd.view.size(); ++j)
        if (fd.view.order[i][j]) out.push_back(j);
      return out;
    };
    for (std::size_t t = 0; t < kMinTriples && !usable.empty(); ++t) {
      const auto& fd = *usable[uniform_below(rng, usable.size())];
      const auto n = fd.view.size();
      check(fd, uniform_below(rng, n), uniform_below(rng, n), uniform_below(rng, n));
    }
    for (std::size_t t = 0; t < kMinTriples && !usable.empty(); ++t) {
      const auto& fd = *usable[uniform_below(rng, usable.size())];
      const auto i = static_cast<std::size_t>(uniform_below(rng, fd.view.size()));
      const auto up_i = above(fd, i);
      const auto j = up_i[uniform_below(rng, up_i.size())];
      const auto up_j = above(fd, j);
      check(fd, i, j, up_j[uniform_below(rng, up_j.size())]);
    }
    std::ostringstream s;
    s << "partial order: " << nodes << " nodes, reflexivity " << refl_bad << " / antisymmetry "
      << anti_bad << " exceptions; " << triples << " random triples (" << premises
      << " chained), " << trans_bad << " transitivity exceptions";
    report(4, nodes > 0 && triples >= 2 * kMinTriples && premises >= kMinTriples && refl_bad == 0 && anti_bad == 0 &&
                  trans_bad == 0,
           s.str());
  }

  // 5: positive height iff a strictly smaller member below in the fiber.
  {
    std::size_t checked = 0, bad = 0;
    for (const auto& fd : fibers) {
      const auto& f = fd.entry->fragment;
      for (const auto& a : fd.view.firsts) {
        ++checked;
        const bool smaller = down_set_in_fiber(f, a, fd.view.second).size() > 1;
        if (fiber_height_positive(f, a, fd.view.second) != smaller) ++bad;
      }
    }
    report(5, checked > 0 && bad == 0,
           "height characterization: " + std::to_string(checked) +
               " nodes (ray ordinates excluded), " + std::to_string(bad) + " disagreements");
  }

  // 6: I2 detection versus shape isomorphism.
  {
    std::size_t checked = 0, bad = 0, hits = 0;
    const auto i2 = make_I(2);
    for (const auto& fd : fibers) {
      const auto& f = fd.entry->fragment;
      for (const auto& a : fd.view.firsts) {
        if (a.size() > kI2MaxFirst || !fiber_height_positive(f, a, fd.view.second)) continue;
        ++checked;
        const auto down = down_set_in_fiber(f, a, fd.view.second);
        const bool shape = down.size() == i2.size() && small_poset_isomorphic(down.as_poset(), i2);
        const bool detected = detect_I2(f, a, fd.view.second);
        if (detected) ++hits;
        if (detected != shape) ++bad;
      }
    }
    report(6, checked > 0 && hits > 0 && bad == 0,
           "I2 characterization: " + std::to_string(checked) + " pairs, " + std::to_string(hits) +
               " of shape I2, " + std::to_string(bad) + " disagreements");
  }

  // 7: the cusp.
  {
    const auto f3 = cusp_fragment();
    const auto mu = mu_statistic(f3, 0, 0);
    const auto p5 = find_p5_witness(f3, {0}, {0});
    const bool pass = mu.mu == std::optional<std::uint64_t>(7) && mu.ge4 && !p5.has_value();
    report(7, pass,
           "cusp: mu(P,m) = " + (mu.mu ? std::to_string(*mu.mu) : std::string("inf")) +
               ", ge4 = " + (mu.ge4 ? "true" : "false") +
               ", P5 witness for S={P}, T={m}: " + (p5 ? f3.h1_label(*p5) : std::string("none")));
  }

  // 8: mu spectrum.
  {
    std::size_t finite = 0, bad = 0, four_or_five = 0;
    for (const auto& entry : entries) {
      const auto& f = entry.fragment;
      for (std::size_t m = 0; m < f.n2(); ++m) {
        for (auto x : f.down(m)) {
          const auto r = mu_statistic(f, x, m);
          if (!r.mu) continue;
          ++finite;
          if (!in_mu_spectrum(*r.mu)) ++bad;
          if (*r.mu == 4 || *r.mu == 5) ++four_or_five;
        }
      }
    }
    report(8, finite > 0 && bad == 0 && four_or_five == 0,
           "mu spectrum: " + std::to_string(finite) + " finite values, " + std::to_string(bad) +
               " outside {(2^l-1)2^e : l >= 2}, " + std::to_string(four_or_five) +
               " equal to 4 or 5");
  }

  // 9: induced maps under random relabelings.
  {
    std::size_t maps = 0, bad = 0;
    for (const auto& entry : entries) {
      DomainSpec spec;
      for (const auto& fs : entry.fibers) {
        spec.fibers.push_back(fs.second);
        spec.support |= fs.support;
      }
      spec.amax = 2;
      spec.include_rays = true;
      for (std::uint64_t seed = 0; seed < kRelabelingsPerFragment; ++seed) {
        const auto [y, rho] = relabel(entry.fragment, seed);
        const auto phi = induce_str_iso(rho, entry.fragment, y, spec);
        ++maps;
        if (!str_iso_violations(phi).empty() || !verify_factorization(phi, rho).clean()) ++bad;
      }
    }
    report(9, maps == entries.size() * kRelabelingsPerFragment && bad == 0,
           "invariance: " + std::to_string(maps) + " induced maps, " + std::to_string(bad) +
               " with violations");
  }

  // 10: hidden-relabeling round trips.
  {
    std::vector<const corpus::Entry*> passing, failing;
    for (const auto& entry : entries)
      (run_battery(entry.fragment).passed ? passing : failing).push_back(&entry);
    const std::size_t per_fragment =
        passing.empty() ? 0 : std::max<std::size_t>(3, (kMinRoundTrips + passing.size() - 1) /
                                                           passing.size());
    std::size_t trials = 0, recovered = 0, mismatches = 0;
    for (const auto* entry : passing) {
      for (std::uint64_t seed = 0; seed < per_fragment; ++seed) {
        RoundTripOptions opt;
        opt.seed = seed;
        const auto r = run_roundtrip(entry->fragment, opt);
        ++trials;
        if (r.recovered) ++recovered;
        if (r.mismatch) ++mismatches;
      }
    }
    std::size_t other = 0, other_recovered = 0, reported = 0, silent = 0;
    for (const auto* entry : failing) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        RoundTripOptions opt;
        opt.seed = seed;
        const auto r = run_roundtrip(entry->fragment, opt);
        ++other;
        if (r.recovered) {
          ++other_recovered;
        } else if (!r.mismatch && !r.reconstruction.trace.conflicts.empty()) {
          ++reported;
        } else {
          ++silent;
        }
        if (r.mismatch) ++mismatches;
      }
    }
    std::ostringstream s;
    s << "round trip: " << passing.size() << " battery-passing fragments, " << recovered << "/"
      << trials << " recovered; " << failing.size() << " battery-failing fragments, "
      << other_recovered << "/" << other << " recovered, " << reported
      << " reported conflicts, " << silent << " silent; " << mismatches << " wrong maps";
    report(10, trials >= kMinRoundTrips && recovered == trials && mismatches == 0 && silent == 0,
           s.str());
  }

  // 11: fragment files.
  {
    std::size_t bad = 0;
    const auto dir = std::filesystem::temp_directory_path();
    for (const auto& entry : entries) {
      const auto path = (dir / ("strposet_acceptance_" + entry.name + ".json")).string();
      save_fragment(entry.fragment, path);
      std::ifstream in(path, std::ios::binary);
      std::stringstream bytes;
      bytes << in.rdbuf();
      const auto back = load_fragment(path, entry.max_tier);
      if (!(back == entry.fragment) || fragment_to_text(back) != bytes.str()) ++bad;
      std::remove(path.c_str());
    }
    report(11, bad == 0,
           "file round trip: " + std::to_string(entries.size()) + " fragments, " +
               std::to_string(bad) + " not byte-identical");
  }

  return failures == 0 ? 0 : 1;
}
