#include "strposet/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "strposet/error.hpp"

namespace strposet {

namespace {

std::size_t read_index(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where, "expected a nonnegative integer");
  const auto n = v.get<std::int64_t>();
  if (n < 0) throw ParseError(where, "expected a nonnegative integer");
  return static_cast<std::size_t>(n);
}

std::vector<std::string> read_labels(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string())
      throw ParseError(where + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

std::string quoted(const std::string& s) { return Json(s).dump(); }

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Fragment files

std::string fragment_to_text(const PosetFragment& fragment) {
  std::ostringstream out;
  out << "{\n  \"version\": 1,\n  \"n1\": " << fragment.n1() << ",\n  \"n2\": " << fragment.n2()
      << ",\n  \"incidence\": [";
  const auto inc = fragment.incidence();
  for (std::size_t k = 0; k < inc.size(); ++k) {
    if (k > 0) out << ',';
    if (k % 10 == 0) out << "\n    ";
    out << '[' << inc[k].first << ',' << inc[k].second << ']';
  }
  out << (inc.empty() ? "]" : "\n  ]");
  if (fragment.has_labels()) {
    auto list = [&](const std::vector<std::string>& labels) {
      std::string s = "[";
      for (std::size_t i = 0; i < labels.size(); ++i) s += (i ? ", " : "") + quoted(labels[i]);
      return s + "]";
    };
    out << ",\n  \"labels\": {\n    \"h1\": " << list(fragment.labels().h1)
        << ",\n    \"h2\": " << list(fragment.labels().h2) << "\n  }";
  }
  out << "\n}\n";
  return out.str();
}

PosetFragment fragment_from_text(const std::string& text, std::size_t max_tier) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
  if (!j.is_object()) throw ParseError("$", "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "version" && key != "n1" && key != "n2" && key != "incidence" && key != "labels")
      throw ParseError("$." + key, "unexpected key");
  }
  for (const char* key : {"version", "n1", "n2", "incidence"})
    if (!j.contains(key)) throw ParseError(std::string("$.") + key, "missing");
  if (read_index(j["version"], "$.version") != 1)
    throw ParseError("$.version", "unsupported version (expected 1)");
  const std::size_t n1 = read_index(j["n1"], "$.n1");
  const std::size_t n2 = read_index(j["n2"], "$.n2");
  if (n1 > kMaxTierCapacity || n2 > kMaxTierCapacity)
    throw ValidationError("tier size exceeds the hard limit " + std::to_string(kMaxTierCapacity));

  const auto& inc_json = j["incidence"];
  if (!inc_json.is_array()) throw ParseError("$.incidence", "expected an array of [i, j] pairs");
  Incidence inc;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 0; k < inc_json.size(); ++k) {
    const std::string where = "$.incidence[" + std::to_string(k) + "]";
    const auto& pair = inc_json[k];
    if (!pair.is_array() || pair.size() != 2) throw ParseError(where, "expected a pair [i, j]");
    const auto i = read_index(pair[0], where + "[0]");
    const auto m = read_index(pair[1], where + "[1]");
    const std::string shown = "[" + std::to_string(i) + "," + std::to_string(m) + "]";
    if (i >= n1) throw ParseError(where + "[0]", "pair " + shown + ": index out of range (n1 = " + std::to_string(n1) + ")");
    if (m >= n2) throw ParseError(where + "[1]", "pair " + shown + ": index out of range (n2 = " + std::to_string(n2) + ")");
    if (!seen.emplace(i, m).second) throw ParseError(where, "duplicate pair " + shown);
    inc.emplace_back(i, m);
  }

  Labels labels;
  if (j.contains("labels")) {
    const auto& l = j["labels"];
    if (!l.is_object()) throw ParseError("$.labels", "expected an object");
    for (const auto& [key, value] : l.items())
      if (key != "h1" && key != "h2") throw ParseError("$.labels." + key, "unexpected key");
    if (l.contains("h1")) labels.h1 = read_labels(l["h1"], "$.labels.h1");
    if (l.contains("h2")) labels.h2 = read_labels(l["h2"], "$.labels.h2");
  }

  auto fragment = PosetFragment::from_pairs(n1, n2, inc, std::move(labels));
  require_valid(fragment, max_tier);
  return fragment;
}

PosetFragment load_fragment(const std::string& path, std::size_t max_tier) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return fragment_from_text(buf.str(), max_tier);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.where(), e.what());
  }
}

void save_fragment(const PosetFragment& fragment, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << fragment_to_text(fragment);
  if (!out) throw Error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Generator parameters

GeneratorParams params_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("$", "expected an object");
  GeneratorParams p;
  for (const auto& [key, value] : j.items()) {
    const std::string where = "$." + key;
    if (key == "n1") p.n1 = read_index(value, where);
    else if (key == "n2") p.n2 = read_index(value, where);
    else if (key == "min_updeg") p.min_updeg = read_index(value, where);
    else if (key == "planted_pairs_per_point") p.planted_pairs_per_point = read_index(value, where);
    else if (key == "generic_curves") p.generic_curves = read_index(value, where);
    else if (key == "pairwise_cap") p.pairwise_cap = read_index(value, where);
    else if (key == "sprinkle_attempts") p.sprinkle_attempts = read_index(value, where);
    else if (key == "seed") p.seed = read_index(value, where);
    else throw ParseError(where, "unexpected key");
  }
  return p;
}

Json params_to_json(const GeneratorParams& p) {
  Json j;
  j["n1"] = p.n1;
  j["n2"] = p.n2;
  j["min_updeg"] = p.min_updeg;
  j["planted_pairs_per_point"] = p.planted_pairs_per_point;
  j["generic_curves"] = p.generic_curves;
  j["pairwise_cap"] = p.pairwise_cap;
  j["sprinkle_attempts"] = p.sprinkle_attempts;
  j["seed"] = p.seed;
  return j;
}

// ---------------------------------------------------------------------------
// Reports

Json element_set_json(const PosetFragment& fragment, const ElementSet& set) {
  Json out = Json::array();
  for (const auto& e : set.elements()) out.push_back(fragment.label(e));
  return out;
}

Json report_json(const PosetFragment& fragment, const ConditionReport& report) {
  Json j;
  j["condition"] = to_string(report.condition);
  j["holds"] = report.holds;
  Json params = Json::object();
  for (const auto& [k, v] : report.params) params[k] = v;
  j["params"] = params;
  Json witnesses = Json::array();
  for (const auto& w : report.witnesses) {
    Json entry;
    Json instance = Json::object();
    for (const auto& [name, set] : w.instance) instance[name] = element_set_json(fragment, set);
    entry["instance"] = instance;
    entry["witness"] = w.witness ? element_set_json(fragment, *w.witness) : Json(nullptr);
    entry["note"] = w.note;
    witnesses.push_back(entry);
  }
  j["witnesses"] = witnesses;
  j["semantics"] = report.semantics;
  return j;
}

Json battery_json(const PosetFragment& fragment, const BatteryResult& battery) {
  Json j;
  j["passed"] = battery.passed;
  j["reasons"] = battery.reasons;
  j["max_j3_witness_size"] = battery.max_j3_witness_size;
  Json reports = Json::array();
  for (const auto& r : battery.reports) reports.push_back(report_json(fragment, r));
  j["reports"] = reports;
  return j;
}

Json fiber_json(const PosetFragment& fragment, const FiberView& view) {
  Json j;
  j["second"] = point_list(fragment, view.second);
  j["support"] = curve_list(fragment, view.support);
  j["amax"] = view.amax;
  Json nodes = Json::array();
  for (std::size_t i = 0; i < view.size(); ++i) {
    const auto a = view.firsts[i];
    Json n;
    n["node"] = node_text(fragment, view.node(i));
    n["ell"] = ell(fragment, a, view.second);
    n["eta"] = eta(fragment, a, view.second);
    nodes.push_back(n);
  }
  j["nodes"] = nodes;
  Json covers = Json::array();
  for (const auto& [lo, hi] : view.covers()) {
    Json c;
    c["lower"] = node_text(fragment, view.node(lo));
    c["upper"] = node_text(fragment, view.node(hi));
    c["via"] = curve_list(fragment, w_max(fragment, view.firsts[hi], view.second));
    covers.push_back(c);
  }
  j["covers"] = covers;
  return j;
}

Json mu_json(const PosetFragment& fragment, std::size_t x, std::size_t m, const MuResult& mu) {
  Json j;
  j["x"] = fragment.h1_label(x);
  j["m"] = fragment.h2_label(m);
  j["mu"] = mu.mu ? Json(*mu.mu) : Json("infinity");
  j["ge4"] = mu.ge4;
  j["argmin"] = mu.mu ? Json(curve_list(fragment, mu.argmin)) : Json(nullptr);
  return j;
}

Json node_json(const PosetFragment& fragment, const StrNode& node) {
  return node_text(fragment, node);
}

Json str_iso_json(const StrIso& phi) {
  Json j;
  Json table = Json::array();
  for (const auto& [from, to] : phi.table())
    table.push_back(Json::array({node_json(phi.source(), from), node_json(phi.target(), to)}));
  j["table"] = table;
  j["source_domain_size"] = phi.source_domain().size();
  j["target_domain_size"] = phi.target_domain().size();
  return j;
}

Json conflict_json(const StrIso& phi, const Conflict& c) {
  const auto& x = phi.source();
  const auto& y = phi.target();
  Json j;
  j["kind"] = to_string(c.kind);
  auto names = [](const auto& labeler, const std::vector<std::size_t>& items) {
    Json a = Json::array();
    for (auto i : items) a.push_back(labeler(i));
    return a;
  };
  j["curves"] = names([&](std::size_t i) { return x.h1_label(i); }, c.curves);
  j["points"] = names([&](std::size_t i) { return x.h2_label(i); }, c.points);
  j["image_curves"] = names([&](std::size_t i) { return y.h1_label(i); }, c.image_curves);
  j["image_points"] = names([&](std::size_t i) { return y.h2_label(i); }, c.image_points);
  Json nodes = Json::array();
  for (const auto& n : c.nodes) nodes.push_back(node_json(x, n));
  j["nodes"] = nodes;
  Json images = Json::array();
  for (const auto& n : c.images) images.push_back(node_json(y, n));
  j["images"] = images;
  if (c.kind == ConflictKind::Ambiguity) j["candidates"] = curve_list(y, c.candidates);
  if (c.kset_cap > 0) j["kset_cap"] = c.kset_cap;
  j["detail"] = c.detail;
  return j;
}

Json trace_json(const StrIso& phi, const ReconstructionTrace& trace) {
  const auto& x = phi.source();
  const auto& y = phi.target();
  Json j;
  Json rho2 = Json::array();
  for (const auto& e : trace.rho2) {
    Json r;
    r["point"] = x.h2_label(e.point);
    r["image"] = y.h2_label(e.image);
    r["witness"] = node_json(x, e.witness);
    rho2.push_back(r);
  }
  j["rho2"] = rho2;
  Json rho1 = Json::array();
  for (const auto& e : trace.rho1) {
    Json r;
    r["curve"] = x.h1_label(e.curve);
    r["image"] = y.h1_label(e.image);
    r["method"] = e.via_ray ? "ray" : "k-sets";
    Json ev = Json::array();
    for (const auto& n : e.evidence) ev.push_back(node_json(x, n));
    r["evidence"] = ev;
    rho1.push_back(r);
  }
  j["rho1"] = rho1;
  Json conflicts = Json::array();
  for (const auto& c : trace.conflicts) conflicts.push_back(conflict_json(phi, c));
  j["conflicts"] = conflicts;
  j["probes"] = trace.probes;
  return j;
}

Json iso_map_json(const PosetFragment& source, const PosetFragment& target, const IsoMap& rho) {
  Json j;
  Json h1 = Json::object();
  for (std::size_t x = 0; x < rho.n1(); ++x) h1[source.h1_label(x)] = target.h1_label(rho.h1(x));
  Json h2 = Json::object();
  for (std::size_t m = 0; m < rho.n2(); ++m) h2[source.h2_label(m)] = target.h2_label(rho.h2(m));
  j["h1"] = h1;
  j["h2"] = h2;
  return j;
}

// ---------------------------------------------------------------------------
// DOT

std::string fiber_dot(const PosetFragment& fragment, const FiberView& view, bool via_labels) {
  std::ostringstream out;
  out << "digraph fiber {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < view.size(); ++i)
    out << "  n" << i << " [label=\"(" << dot_escape(node_text(fragment, view.node(i)))
        << ")\"];\n";
  for (const auto& [lo, hi] : view.covers()) {
    out << "  n" << lo << " -> n" << hi;
    if (via_labels) {
      const auto via = curve_list(fragment, w_max(fragment, view.firsts[hi], view.second));
      out << " [label=\"via " << dot_escape(via) << "\"]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string fragment_dot(const PosetFragment& fragment) {
  std::ostringstream out;
  out << "digraph fragment {\n  rankdir=BT;\n  min [label=\"0\"];\n";
  for (std::size_t x = 0; x < fragment.n1(); ++x)
    out << "  c" << x << " [label=\"" << dot_escape(fragment.h1_label(x)) << "\"];\n";
  for (std::size_t m = 0; m < fragment.n2(); ++m)
    out << "  p" << m << " [label=\"" << dot_escape(fragment.h2_label(m)) << "\"];\n";
  for (std::size_t x = 0; x < fragment.n1(); ++x) out << "  min -> c" << x << ";\n";
  for (const auto& [x, m] : fragment.incidence()) out << "  c" << x << " -> p" << m << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace strposet
