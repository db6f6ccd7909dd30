#include "strposet/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "strposet/conditions.hpp"
#include "strposet/error.hpp"
#include "strposet/io.hpp"
#include "strposet/models.hpp"
#include "strposet/reconstruction.hpp"
#include "strposet/roundtrip.hpp"
#include "strposet/structure.hpp"

namespace strposet {

namespace {

/// Bad arguments that CLI11 cannot see, such as unknown labels.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

class LabelIndex {
 public:
  explicit LabelIndex(const PosetFragment& f) {
    for (std::size_t x = 0; x < f.n1(); ++x) h1_[f.h1_label(x)].push_back(x);
    for (std::size_t m = 0; m < f.n2(); ++m) h2_[f.h2_label(m)].push_back(m);
  }

  std::size_t curve(const std::string& label) const { return find(h1_, label, "curve"); }
  std::size_t point(const std::string& label) const { return find(h2_, label, "point"); }

  TierSet curves(const std::string& list) const {
    TierSet out;
    for (const auto& l : split(list, ',')) out.insert(curve(l));
    return out;
  }
  TierSet points(const std::string& list) const {
    TierSet out;
    for (const auto& l : split(list, ',')) out.insert(point(l));
    return out;
  }

  /// "a,b|d,e" or "ray(a)".
  StrNode node(const std::string& text) const {
    if (text.rfind("ray(", 0) == 0 && text.size() > 5 && text.back() == ')')
      return RayNode{curve(text.substr(4, text.size() - 5))};
    const auto parts = split(text, '|');
    if (parts.size() != 2) throw UsageError("node '" + text + "' must look like a,b|d,e");
    return StrPair{curves(parts[0]), points(parts[1])};
  }

 private:
  static std::size_t find(const std::map<std::string, std::vector<std::size_t>>& index,
                          const std::string& label, const char* tier) {
    auto it = index.find(label);
    if (it == index.end()) throw UsageError(std::string("unknown ") + tier + " label '" + label + "'");
    if (it->second.size() > 1)
      throw UsageError(std::string("ambiguous ") + tier + " label '" + label + "' names " +
                       std::to_string(it->second.size()) + " elements");
    return it->second.front();
  }

  std::map<std::string, std::vector<std::size_t>> h1_;
  std::map<std::string, std::vector<std::size_t>> h2_;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": byte " + std::to_string(e.byte), e.what());
  }
}

StrIso read_table(const std::string& path, const PosetFragment& x, const PosetFragment& y) {
  const Json j = read_json_file(path);
  if (!j.is_object() || !j.contains("table") || !j["table"].is_array())
    throw ParseError(path + ": $.table", "expected an array of [node, node] pairs");
  const LabelIndex lx(x), ly(y);
  std::vector<std::pair<StrNode, StrNode>> table;
  const auto& t = j["table"];
  for (std::size_t k = 0; k < t.size(); ++k) {
    const std::string where = path + ": $.table[" + std::to_string(k) + "]";
    if (!t[k].is_array() || t[k].size() != 2 || !t[k][0].is_string() || !t[k][1].is_string())
      throw ParseError(where, "expected [\"A|B\", \"A'|B'\"]");
    try {
      table.emplace_back(lx.node(t[k][0].get<std::string>()), ly.node(t[k][1].get<std::string>()));
    } catch (const UsageError& e) {
      throw ParseError(where, e.what());
    }
  }
  return StrIso::from_table(x, y, table);
}

CurveMethod parse_method(const std::string& s) {
  if (s == "ksets") return CurveMethod::KSets;
  if (s == "rays") return CurveMethod::Rays;
  throw UsageError("method must be ksets or rays");
}

struct Emitter {
  std::ostream& out;
  std::string path;

  void operator()(const std::string& text) const {
    if (path.empty()) {
      out << text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot write " + path);
    file << text;
  }
  void json(const Json& j) const { (*this)(j.dump(2) + "\n"); }
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structure posets of finite two-dimensional poset fragments", "strposet"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output;
  std::size_t max_tier = kDefaultTierCap;
  app.add_option("-o,--output", output, "Write primary output to this file");
  app.add_option("--max-tier", max_tier, "Largest tier size accepted (<= 512)")
      ->check(CLI::Range(std::size_t{1}, kMaxTierCapacity));

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a fragment file");
  std::string model = "random", config;
  GeneratorParams gp;
  int prime = 2, degree = 1;
  gen->add_option("--model", model, "random, affine, cusp or example")
      ->check(CLI::IsMember({"random", "affine", "cusp", "example"}));
  gen->add_option("--config", config, "JSON file with generator parameters");
  auto* o_n1 = gen->add_option("--n1", gp.n1, "Curves");
  auto* o_n2 = gen->add_option("--n2", gp.n2, "Points");
  auto* o_deg = gen->add_option("--min-updeg", gp.min_updeg, "Minimum points above each curve");
  auto* o_pl = gen->add_option("--planted", gp.planted_pairs_per_point, "Planted pairs per point");
  auto* o_gen = gen->add_option("--generic", gp.generic_curves, "Curves below every point");
  auto* o_cap = gen->add_option("--pairwise-cap", gp.pairwise_cap, "Max common points of two curves");
  auto* o_spr = gen->add_option("--sprinkle", gp.sprinkle_attempts, "Extra incidences tried");
  auto* o_seed = gen->add_option("--seed", gp.seed, "Random seed");
  gen->add_option("-p", prime, "Prime for the affine model")->check(CLI::IsMember({2, 3, 5}));
  gen->add_option("-d", degree, "Max total degree for the affine model")->check(CLI::Range(1, 3));

  // check
  auto* check = app.add_subcommand("check", "Check P1-P5 and J1-J4 on a fragment");
  std::string check_file;
  std::size_t ck_k = 2, ck_fmax = 2, ck_j3cap = 4, ck_tmax = 2, ck_smax = 1, ck_p5t = 1;
  check->add_option("fragment", check_file, "Fragment file")->required();
  check->add_option("--k", ck_k, "Up-degree threshold for P3 and J2");
  check->add_option("--f-max", ck_fmax, "Largest forbidden set for J3");
  check->add_option("--j3-cap", ck_j3cap, "Largest J3 witness searched");
  check->add_option("--t-max", ck_tmax, "Largest point set for J4");
  check->add_option("--p5-s-max", ck_smax, "Largest S for P5");
  check->add_option("--p5-t-max", ck_p5t, "Largest T for P5");

  // fiber
  auto* fiber = app.add_subcommand("fiber", "Enumerate a fiber of Str X");
  std::string fiber_file, fiber_b, fiber_support;
  std::size_t fiber_amax = 4;
  bool fiber_dot_flag = false, fiber_no_via = false;
  fiber->add_option("fragment", fiber_file, "Fragment file")->required();
  fiber->add_option("--B", fiber_b, "Second ordinate, e.g. d,e")->required();
  fiber->add_option("--support", fiber_support, "Curves allowed in first ordinates (default all)");
  fiber->add_option("--amax", fiber_amax, "Largest first ordinate")->check(CLI::Range(1, 16));
  fiber->add_flag("--dot", fiber_dot_flag, "Emit a DOT Hasse diagram");
  fiber->add_flag("--no-via", fiber_no_via, "Omit w_max edge labels in DOT output");

  // mu
  auto* mu = app.add_subcommand("mu", "Compute the mu statistic");
  std::string mu_file, mu_x, mu_m;
  std::size_t mu_amax = 4;
  mu->add_option("fragment", mu_file, "Fragment file")->required();
  mu->add_option("--x", mu_x, "Curve (default: every curve)");
  mu->add_option("--m", mu_m, "Point (default: every point above x)");
  mu->add_option("--amax", mu_amax, "Largest first ordinate searched")->check(CLI::Range(2, 16));

  // str-leq
  auto* leq = app.add_subcommand("str-leq", "Compare two nodes of Str X");
  std::string leq_file, leq_lhs, leq_rhs;
  leq->add_option("fragment", leq_file, "Fragment file")->required();
  leq->add_option("--lhs", leq_lhs, "Lower node, e.g. a|d,e")->required();
  leq->add_option("--rhs", leq_rhs, "Upper node, e.g. a,b|d,e")->required();

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "Recover rho from a table for phi");
  std::string rec_source, rec_target, rec_table, rec_method = "ksets";
  std::size_t rec_cap = 0;
  unsigned rec_threads = 1;
  rec->add_option("--source", rec_source, "Fragment X")->required();
  rec->add_option("--target", rec_target, "Fragment Y")->required();
  rec->add_option("--table", rec_table, "JSON {\"table\": [[node, node], ...]}")->required();
  rec->add_option("--method", rec_method, "ksets or rays");
  rec->add_option("--kset-cap", rec_cap, "K-set size cap (default: chosen from X)");
  rec->add_option("--threads", rec_threads, "Workers for the curve step");

  // roundtrip
  auto* rt = app.add_subcommand("roundtrip", "Relabel, induce phi, reconstruct, compare");
  std::string rt_file, rt_method = "ksets";
  std::uint64_t rt_seed = 0;
  std::size_t rt_trials = 1, rt_cap = 0;
  unsigned rt_threads = 1;
  bool rt_corrupt = false, rt_strict = false;
  rt->add_option("fragment", rt_file, "Fragment file")->required();
  rt->add_option("--seed", rt_seed, "Seed of the hidden relabeling");
  rt->add_option("--trials", rt_trials, "Trials with seeds seed, seed+1, ...")->check(CLI::PositiveNumber);
  rt->add_option("--kset-cap", rt_cap, "K-set size cap (default: chosen from X)");
  rt->add_option("--method", rt_method, "ksets or rays");
  rt->add_option("--threads", rt_threads, "Workers for the curve step");
  rt->add_flag("--corrupt", rt_corrupt, "Redirect one node of phi before reconstructing");
  rt->add_flag("--strict", rt_strict, "Refuse fragments failing the witness battery");

  // dot
  auto* dot = app.add_subcommand("dot", "Hasse diagram of a fragment");
  std::string dot_file;
  dot->add_option("fragment", dot_file, "Fragment file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Emitter emit{out, output};
  try {
    if (*gen) {
      PosetFragment f;
      if (model == "random") {
        GeneratorParams p;
        if (!config.empty()) p = params_from_json(read_json_file(config));
        auto take = [](CLI::Option* o, std::size_t& dst, std::size_t v) {
          if (o->count() > 0) dst = v;
        };
        take(o_n1, p.n1, gp.n1);
        take(o_n2, p.n2, gp.n2);
        take(o_deg, p.min_updeg, gp.min_updeg);
        take(o_pl, p.planted_pairs_per_point, gp.planted_pairs_per_point);
        take(o_gen, p.generic_curves, gp.generic_curves);
        take(o_cap, p.pairwise_cap, gp.pairwise_cap);
        take(o_spr, p.sprinkle_attempts, gp.sprinkle_attempts);
        if (o_seed->count() > 0) p.seed = gp.seed;
        check_params(p, max_tier);
        f = random_fragment(p);
      } else if (model == "affine") {
        f = affine_plane_fragment(prime, degree, max_tier);
      } else if (model == "cusp") {
        f = cusp_fragment();
      } else {
        f = small_example_fragment();
      }
      emit(fragment_to_text(f));
      return kExitOk;
    }

    if (*check) {
      const auto f = load_fragment(check_file, max_tier);
      std::vector<ConditionReport> reports = check_p1_to_p4(f, ck_k);
      reports.push_back(check_p5(f, ck_smax, ck_p5t));
      reports.push_back(check_j1(f));
      reports.push_back(check_j2(f, ck_k));
      reports.push_back(check_j3(f, ck_fmax, ck_j3cap));
      reports.push_back(check_j4(f, ck_tmax));
      Json j;
      j["valid"] = true;
      Json arr = Json::array();
      bool all = true;
      for (const auto& r : reports) {
        arr.push_back(report_json(f, r));
        all = all && r.holds;
      }
      j["all_hold"] = all;
      j["reports"] = arr;
      emit.json(j);
      return all ? kExitOk : kExitViolation;
    }

    if (*fiber) {
      const auto f = load_fragment(fiber_file, max_tier);
      const LabelIndex li(f);
      const TierSet b = li.points(fiber_b);
      if (b.empty()) throw UsageError("--B must name at least one point");
      const TierSet support = fiber_support.empty() ? f.all_h1() : li.curves(fiber_support);
      const auto view = enumerate_fiber(f, b, support, fiber_amax);
      if (fiber_dot_flag)
        emit(fiber_dot(f, view, !fiber_no_via));
      else
        emit.json(fiber_json(f, view));
      return kExitOk;
    }

    if (*mu) {
      const auto f = load_fragment(mu_file, max_tier);
      const LabelIndex li(f);
      std::vector<std::size_t> xs, ms_given;
      if (!mu_x.empty()) {
        xs.push_back(li.curve(mu_x));
      } else {
        for (std::size_t x = 0; x < f.n1(); ++x) xs.push_back(x);
      }
      if (!mu_m.empty()) ms_given.push_back(li.point(mu_m));
      Json results = Json::array();
      for (auto x : xs) {
        std::vector<std::size_t> ms = ms_given;
        if (ms.empty()) ms = f.up(x).to_vector();
        for (auto m : ms) {
          if (!f.below(x, m)) {
            if (!mu_x.empty() && !mu_m.empty())
              throw UsageError(f.h1_label(x) + " is not below " + f.h2_label(m));
            continue;
          }
          results.push_back(mu_json(f, x, m, mu_statistic(f, x, m, mu_amax)));
        }
      }
      if (!mu_x.empty() && !mu_m.empty() && results.size() == 1)
        emit.json(results.front());
      else
        emit.json(results);
      return kExitOk;
    }

    if (*leq) {
      const auto f = load_fragment(leq_file, max_tier);
      const LabelIndex li(f);
      const StrNode lhs = li.node(leq_lhs), rhs = li.node(leq_rhs);
      const StrPair lo = materialize(f, lhs), up = materialize(f, rhs);
      for (const auto* p : {&lo, &up}) {
        if (!str_member(f, p->first, p->second))
          throw UsageError("(" + node_text(f, *p) + ") is not a member of Str X");
      }
      const bool result = str_leq(f, lo, up);
      Json j;
      j["lhs"] = node_text(f, lhs);
      j["rhs"] = node_text(f, rhs);
      j["leq"] = result;
      j["equal"] = lo == up;
      j["witness"] = result && !(lo == up) ? Json(curve_list(f, w_max(f, up.first, up.second)))
                                           : Json(nullptr);
      emit.json(j);
      return kExitOk;
    }

    if (*rec) {
      const auto x = load_fragment(rec_source, max_tier);
      const auto y = load_fragment(rec_target, max_tier);
      const StrIso phi = read_table(rec_table, x, y);
      ReconstructOptions ro;
      ro.method = parse_method(rec_method);
      ro.kset_cap = rec_cap > 0 ? rec_cap : default_kset_cap(x, run_battery(x));
      ro.threads = rec_threads;
      const auto r = reconstruct(phi, ro);
      Json j;
      j["recovered"] = r.rho.has_value();
      j["rho"] = r.rho ? iso_map_json(x, y, *r.rho) : Json(nullptr);
      j["kset_cap"] = ro.kset_cap;
      j["trace"] = trace_json(phi, r.trace);
      emit.json(j);
      return r.rho ? kExitOk : kExitViolation;
    }

    if (*rt) {
      const auto f = load_fragment(rt_file, max_tier);
      RoundTripOptions opt;
      opt.corrupt = rt_corrupt;
      opt.method = parse_method(rt_method);
      opt.threads = rt_threads;
      if (rt_cap > 0) opt.kset_cap = rt_cap;
      const auto battery = run_battery(f, opt.battery);
      if (rt_strict && !battery.passed) {
        Json j;
        j["refused"] = true;
        j["battery"] = battery_json(f, battery);
        emit.json(j);
        for (const auto& r : battery.reasons) err << "battery: " << r << "\n";
        return kExitViolation;
      }
      bool all = true;
      std::size_t mismatches = 0;
      std::uint64_t probes = 0;
      std::size_t cap = 0;
      Json conflicts = Json::array();
      Json trials = Json::array();
      for (std::size_t t = 0; t < rt_trials; ++t) {
        opt.seed = rt_seed + t;
        const auto r = run_roundtrip(f, opt);
        cap = r.kset_cap;
        all = all && r.recovered;
        mismatches += r.mismatch ? 1 : 0;
        probes += r.reconstruction.trace.probes;
        for (const auto& c : r.reconstruction.trace.conflicts) {
          Json cj = conflict_json(*r.phi, c);
          cj["seed"] = opt.seed;
          conflicts.push_back(cj);
        }
        Json tj;
        tj["seed"] = opt.seed;
        tj["recovered"] = r.recovered;
        if (r.corrupted) tj["corrupted"] = node_text(f, *r.corrupted);
        trials.push_back(tj);
      }
      Json j;
      j["recovered"] = all;
      j["conflicts"] = conflicts;
      j["probes"] = probes;
      j["battery"] = battery_json(f, battery);
      j["battery"].erase("reports");
      j["kset_cap"] = cap;
      j["mismatches"] = mismatches;
      j["trials"] = trials;
      emit.json(j);
      return all ? kExitOk : kExitViolation;
    }

    if (*dot) {
      emit(fragment_dot(load_fragment(dot_file, max_tier)));
      return kExitOk;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    err << "invalid: " << e.what() << "\n";
    return kExitInput;
  } catch (const CapacityError& e) {
    err << "too large: " << e.what() << "\n";
    return kExitInput;
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace strposet
