#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <numbers>
#include <regex>

#include "gerbes/holonomy.hpp"
#include "gerbes/jandl.hpp"
#include "gerbes/laws.hpp"
#include "gerbes/scenario.hpp"

namespace gerbes::cli {

using json = nlohmann::json;

namespace {

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json report_json(const Report& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"law", x.law}, {"where", x.where}, {"deviation", x.deviation}});
  return {{"valid", r.ok()}, {"checks", r.checks}, {"max_deviation", r.max_deviation}, {"violations", v},
          {"dropped", r.dropped}};
}

// Failure to open or to parse JSON is an I/O error; everything past that is
// a validation failure.
struct Loaded {
  int code = kPass;
  std::string error;
  std::optional<Scenario> scenario;
};

Loaded load(const std::string& path) {
  Loaded l;
  std::ifstream in(path);
  if (!in) {
    l.code = kIoError;
    l.error = "cannot open " + path;
    return l;
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    l.code = kIoError;
    l.error = path + ": " + e.what();
    return l;
  }
  try {
    l.scenario = parse_scenario(j);
  } catch (const std::exception& e) {
    l.code = kInvalid;
    l.error = e.what();
  }
  return l;
}

json error_json(const std::string& file, const Loaded& l) {
  return {{"file", file}, {"valid", false}, {"error", l.error}, {"io_error", l.code == kIoError}};
}

struct Value {
  cplx h;
  json trivialization;
  std::optional<double> rho_sum;
};

Value evaluate(const Scenario& sc, const std::string& mode, unsigned seed, unsigned domain_seed) {
  Value v;
  auto triv = trivialize(sc.gerbe, seed);
  v.trivialization = {{"seed", seed}, {"anchors", seed == 0 ? "least-index" : "seeded"}, {"gerbe_indices", sc.gerbe->size()}};
  if (mode == "closed") {
    if (sc.map) {
      auto pulled = pullback_gerbe(sc.gerbe, *sc.map);
      auto t = trivialize(pulled, seed);
      v.rho_sum = oriented_sum(*sc.map->source(), t.rho);
      v.h = holonomy_closed(pulled, seed);
    } else {
      v.rho_sum = oriented_sum(*sc.gerbe_base(), triv.rho);
      v.h = holonomy_closed(sc.gerbe, seed);
    }
  } else if (mode == "dbrane") {
    auto b = sc.brane();
    if (!b) throw ParseError("dbrane mode needs a brane section");
    if (sc.map) {
      v.h = holonomy_dbrane(sc.gerbe, *b, *sc.map, seed);
    } else {
      v.rho_sum = oriented_sum(*sc.gerbe_base(), triv.rho);
      v.h = holonomy_dbrane(sc.gerbe, *b, seed);
    }
  } else if (mode == "unoriented") {
    if (!sc.double_cover || !sc.jandl) throw ParseError("unoriented mode needs a double cover gerbe and a jandl section");
    auto F = fundamental_domain(sc.oc, domain_seed);
    double sum = 0.0;
    for (int t : F.triangles()) sum += triv.rho[t];
    v.rho_sum = sum;
    v.trivialization["fundamental_domain_seed"] = domain_seed;
    v.h = holonomy_unoriented(sc.gerbe, *sc.jandl, F, seed);
  } else {
    throw ParseError("unknown mode '" + mode + "'");
  }
  return v;
}

}  // namespace

Outcome cmd_validate(const std::vector<std::string>& files, double eps) {
  std::vector<std::future<std::pair<int, json>>> jobs;
  for (const auto& f : files)
    jobs.push_back(std::async(std::launch::async, [f, eps]() -> std::pair<int, json> {
      auto l = load(f);
      if (!l.scenario) return {l.code, error_json(f, l)};
      try {
        Report r = validate_scenario(*l.scenario, eps);
        json j = report_json(r);
        j["file"] = f;
        return {r.ok() ? kPass : kInvalid, j};
      } catch (const std::exception& e) {
        return {kInvalid, {{"file", f}, {"valid", false}, {"error", e.what()}}};
      }
    }));
  Outcome o;
  o.report = {{"eps", eps}, {"files", json::array()}};
  for (auto& j : jobs) {
    auto [code, rep] = j.get();
    o.code = std::max(o.code, code);
    o.report["files"].push_back(rep);
  }
  o.report["pass"] = o.code == kPass;
  return o;
}

Outcome cmd_holonomy(const std::string& file, const HolonomyOptions& opt, double eps) {
  Outcome o;
  auto l = load(file);
  if (!l.scenario) {
    o.code = l.code;
    o.report = error_json(file, l);
    return o;
  }
  const Scenario& sc = *l.scenario;
  std::string mode = opt.mode;
  if (mode.empty()) mode = sc.meta.value("mode", std::string("closed"));
  try {
    Value v = evaluate(sc, mode, opt.seed, opt.seed);
    o.report = {{"file", file},
                {"mode", mode},
                {"value", complex_json(v.h)},
                {"abs", std::abs(v.h)},
                {"arg", std::arg(v.h)},
                {"rho_sum", v.rho_sum ? json(*v.rho_sum) : json(nullptr)},
                {"trivialization", v.trivialization}};
    if (opt.check_independence) {
      const unsigned seed2 = opt.seed + 1;
      Value w = evaluate(sc, mode, seed2, seed2);
      double dev = std::abs(w.h - v.h);
      bool ok = dev <= eps;
      o.report["independence"] = {{"seed", seed2}, {"value", complex_json(w.h)}, {"deviation", dev}, {"eps", eps}, {"pass", ok}};
      if (!ok) o.code = kInvalid;
    }
  } catch (const std::exception& e) {
    o.code = kInvalid;
    o.report = {{"file", file}, {"mode", mode}, {"error", e.what()}};
  }
  return o;
}

Outcome cmd_axioms(int cases, unsigned seed, const std::vector<std::string>& suites, double eps) {
  LawConfig cfg;
  cfg.cases = cases;
  cfg.seed = seed;
  cfg.eps = eps;
  Outcome o;
  o.report = {{"cases", cases}, {"seed", seed}, {"eps", eps}, {"suites", json::array()}};
  bool all = true;
  for (const auto& s : all_suites()) {
    if (!suites.empty() && std::find(suites.begin(), suites.end(), s.name) == suites.end()) continue;
    json laws = json::array();
    for (const auto& r : s.run(cfg)) {
      all = all && r.pass;
      laws.push_back({{"name", r.name},
                      {"pass", r.pass},
                      {"max_deviation", std::isfinite(r.max_deviation) ? json(r.max_deviation) : json("inf")},
                      {"cases", r.cases},
                      {"seconds", r.seconds},
                      {"failures", r.failures}});
    }
    o.report["suites"].push_back({{"name", s.name}, {"laws", laws}});
  }
  o.report["pass"] = all;
  o.code = all ? kPass : kInvalid;
  return o;
}

Outcome cmd_example(const std::string& name, const ExampleParams& p, const std::string& out) {
  Outcome o;
  Scenario sc;
  try {
    sc = make_example(name, p);
  } catch (const std::exception& e) {
    o.code = kInvalid;
    o.report = {{"example", name}, {"error", e.what()}};
    return o;
  }
  if (out.empty()) {
    o.report = serialize(sc);
    return o;
  }
  try {
    write_scenario(sc, out);
  } catch (const std::exception& e) {
    o.code = kIoError;
    o.report = {{"example", name}, {"error", e.what()}};
    return o;
  }
  o.report = {{"example", name}, {"file", out}, {"mode", sc.meta["mode"]}};
  return o;
}

double parse_angle(const std::string& text) {
  static const std::regex re(R"(^\s*([+-]?)\s*(\d*\.?\d*(?:[eE][+-]?\d+)?)\s*\*?\s*(pi)?\s*(?:/\s*(\d*\.?\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re) || (m[2].length() == 0 && !m[3].matched))
    throw ParseError("cannot read angle '" + text + "'");
  double x = m[2].length() ? std::stod(m[2].str()) : 1.0;
  if (m[3].matched) x *= std::numbers::pi;
  if (m[4].matched) x /= std::stod(m[4].str());
  return m[1].str() == "-" ? -x : x;
}

}  // namespace gerbes::cli
