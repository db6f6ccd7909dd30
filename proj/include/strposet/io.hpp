#pragma once

// The JSON dialect shared by fragment files, reports, and traces, plus DOT
// export for Hasse diagrams.
//
// Fragment files:
//   {"version": 1, "n1": 3, "n2": 2, "incidence": [[0,0],[0,1]],
//    "labels": {"h1": ["a","b","c"], "h2": ["d","e"]}}
// Indices are 0-based; "labels" is optional.

#include "json.hpp"

#include <string>

#include "strposet/conditions.hpp"
#include "strposet/fragment.hpp"
#include "strposet/models.hpp"
#include "strposet/reconstruction.hpp"
#include "strposet/structure.hpp"

namespace strposet {

using Json = nlohmann::ordered_json;

/// Canonical text: sorted incidence, fixed layout, trailing newline. Equal
/// fragments give equal bytes.
std::string fragment_to_text(const PosetFragment& fragment);

/// Throws ParseError (with a byte offset or JSON path) on malformed input,
/// duplicate pairs and out-of-range indices, and ValidationError when the
/// result violates the fragment invariants or the tier cap.
PosetFragment fragment_from_text(const std::string& text,
                                 std::size_t max_tier = kDefaultTierCap);

PosetFragment load_fragment(const std::string& path, std::size_t max_tier = kDefaultTierCap);
void save_fragment(const PosetFragment& fragment, const std::string& path);

/// Fields as in GeneratorParams; missing keys keep their defaults, unknown
/// keys are rejected.
GeneratorParams params_from_json(const Json& j);
Json params_to_json(const GeneratorParams& params);

Json element_set_json(const PosetFragment& fragment, const ElementSet& set);
Json report_json(const PosetFragment& fragment, const ConditionReport& report);
Json battery_json(const PosetFragment& fragment, const BatteryResult& battery);

/// Nodes as "A|B" strings, plus the cover list and, per cover, w_max of the
/// upper node.
Json fiber_json(const PosetFragment& fragment, const FiberView& view);
Json mu_json(const PosetFragment& fragment, std::size_t x, std::size_t m, const MuResult& mu);

Json node_json(const PosetFragment& fragment, const StrNode& node);
Json str_iso_json(const StrIso& phi);
Json conflict_json(const StrIso& phi, const Conflict& conflict);
Json trace_json(const StrIso& phi, const ReconstructionTrace& trace);
Json iso_map_json(const PosetFragment& source, const PosetFragment& target, const IsoMap& rho);

/// Hasse diagram of a fiber: nodes "(A|B)", edges along covers. With
/// via_labels each edge carries w_max of its upper end.
std::string fiber_dot(const PosetFragment& fragment, const FiberView& view, bool via_labels);
/// Hasse diagram of the fragment itself.
std::string fragment_dot(const PosetFragment& fragment);

}  // namespace strposet
