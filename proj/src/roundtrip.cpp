#include "strposet/roundtrip.hpp"

#include <algorithm>

namespace strposet {

std::size_t default_kset_cap(const PosetFragment& fragment, const BatteryResult& battery) {
  const std::size_t bound =
      battery.max_j3_witness_size > 0 ? battery.max_j3_witness_size + 1 : 3;
  return choose_kset_cap(fragment, std::max<std::size_t>(bound, 2));
}

RoundTripResult run_roundtrip(const PosetFragment& fragment, const RoundTripOptions& options) {
  RoundTripResult out;
  out.battery = run_battery(fragment, options.battery);
  out.kset_cap = options.kset_cap ? *options.kset_cap : default_kset_cap(fragment, out.battery);

  auto [target, hidden] = relabel(fragment, options.seed);
  out.hidden = hidden;
  const bool rays = options.method == CurveMethod::Rays;
  const auto spec = default_domain(fragment, rays ? 0 : out.kset_cap, rays);
  StrIso phi = induce_str_iso(hidden, fragment, target, spec);
  if (options.corrupt) {
    auto [bad, node] = corrupt_str_iso(phi, options.seed);
    phi = std::move(bad);
    out.corrupted = node;
  }
  phi.reset_probes();

  ReconstructOptions ro;
  ro.method = options.method;
  ro.kset_cap = out.kset_cap;
  ro.threads = options.threads;
  out.reconstruction = reconstruct(phi, ro);
  out.phi = std::move(phi);
  if (out.reconstruction.rho) {
    out.recovered = *out.reconstruction.rho == hidden;
    out.mismatch = !out.recovered;
  }
  return out;
}

}  // namespace strposet
