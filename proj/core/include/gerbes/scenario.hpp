#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "gerbes/holonomy.hpp"
#include "gerbes/jandl.hpp"

namespace gerbes {

// A scenario file: a surface M, a gerbe (on M or on the orientation cover of M),
// named 1-morphisms, an optional Jandl structure, brane and simplicial map.
//
// JSON layout, all ids strings, complex numbers [re, im], matrices as rows:
//   surface   {vertices, triangles, oriented}
//   cover     {indices: [{id, label, support}]}  supports list maximal simplices
//   gerbe     {double_cover, C, L: {transport, curvature}, mu}
//   morphisms {name: {source, target, rank, refinement, transport, curvature, alpha}}
//   jandl     {involution, A, phi: {W, beta}}
//   brane     {support, module}
//   map       {source: surface, vertices}
// Gerbe endpoints are "G", "G*", "k*G" or {"trivial": rho}.
struct Scenario {
  SurfacePtr surface;
  bool double_cover = false;
  std::shared_ptr<const OrientationCover> oc;
  GerbePtr gerbe;
  std::map<std::string, MorphPtr> morphisms;
  std::optional<JandlStructure> jandl;
  std::optional<Bits> brane_support;
  std::string brane_module;
  std::optional<SimplicialMap> map;
  nlohmann::json meta = nlohmann::json::object();

  // Surface carrying the gerbe.
  SurfacePtr gerbe_base() const { return double_cover ? oc->cover : surface; }
  std::optional<DBrane> brane() const;
};

nlohmann::json serialize(const Scenario& s);
Scenario parse_scenario(const nlohmann::json& j);  // throws ParseError

Scenario read_scenario(const std::string& path);  // throws ParseError
void write_scenario(const Scenario& s, const std::string& path);

// Gerbe, every morphism, the Jandl structure and the brane, with prefixed law names.
Report validate_scenario(const Scenario& s, double eps);

// Exact data equality of every section.
bool scenarios_equal(const Scenario& a, const Scenario& b);

}  // namespace gerbes
