#include <gtest/gtest.h>

#include <filesystem>
#include <numbers>

#include "gerbes/examples.hpp"
#include "gerbes/scenario.hpp"
#include "testing.hpp"

namespace gerbes {
namespace {

using testing::kEps;

struct Case {
  std::string name;
  ExampleParams p;
};

std::vector<Case> cases() {
  std::vector<Case> out;
  for (const auto& n : example_names()) out.push_back({n, {}});
  ExampleParams torus;
  torus.theta = std::numbers::pi / 2;
  torus.indices = 3;
  out.push_back({"torus", torus});
  ExampleParams rp2;
  rp2.jandl = "twisted";
  rp2.indices = 2;
  out.push_back({"rp2", rp2});
  ExampleParams klein;
  klein.jandl = "twisted";
  out.push_back({"klein", klein});
  ExampleParams brane;
  brane.rank = 2;
  brane.theta = 0.4;
  brane.indices = 2;
  out.push_back({"disc-brane", brane});
  return out;
}

class ScenarioRoundTrip : public ::testing::TestWithParam<std::size_t> {};

TEST_P(ScenarioRoundTrip, SerializeParseIsIdentity) {
  const auto c = cases()[GetParam()];
  Scenario sc = make_example(c.name, c.p);
  auto j = serialize(sc);
  Scenario back = parse_scenario(j);
  EXPECT_TRUE(scenarios_equal(sc, back)) << c.name;
  // Text form is stable too.
  EXPECT_EQ(serialize(back).dump(), j.dump());
  auto r = validate_scenario(back, kEps);
  EXPECT_TRUE(r.ok()) << c.name << ": " << (r.ok() ? "" : r.violations[0].law + " " + r.violations[0].where);
}

TEST_P(ScenarioRoundTrip, FileRoundTrip) {
  const auto c = cases()[GetParam()];
  Scenario sc = make_example(c.name, c.p);
  auto path = std::filesystem::temp_directory_path() / ("gerbes_rt_" + std::to_string(GetParam()) + ".json");
  write_scenario(sc, path.string());
  EXPECT_TRUE(scenarios_equal(sc, read_scenario(path.string())));
  std::filesystem::remove(path);
}

INSTANTIATE_TEST_SUITE_P(Examples, ScenarioRoundTrip, ::testing::Range<std::size_t>(0, cases().size()));

TEST(Scenario, DeterministicUnderSeed) {
  ExampleParams p;
  p.indices = 3;
  p.seed = 11;
  EXPECT_EQ(serialize(make_example("random-gauge", p)).dump(), serialize(make_example("random-gauge", p)).dump());
  p.seed = 12;
  auto other = serialize(make_example("random-gauge", p)).dump();
  p.seed = 11;
  EXPECT_NE(serialize(make_example("random-gauge", p)).dump(), other);
}

TEST(Scenario, UnknownExample) { EXPECT_THROW(make_example("mobius", {}), ParseError); }

TEST(Scenario, BadJandlParameter) {
  ExampleParams p;
  p.jandl = "sideways";
  EXPECT_THROW(make_example("rp2", p), ParseError);
}

TEST(ScenarioParse, RejectsMalformedDocuments) {
  auto good = serialize(make_example("sphere", {}));
  EXPECT_THROW(parse_scenario(nlohmann::json::object()), ParseError);
  EXPECT_THROW(parse_scenario(nlohmann::json::array()), ParseError);
  auto no_gerbe = good;
  no_gerbe.erase("gerbe");
  EXPECT_THROW(parse_scenario(no_gerbe), ParseError);
  auto bad_tri = good;
  bad_tri["surface"]["triangles"][0] = {"nowhere", "v1", "v2"};
  EXPECT_THROW(parse_scenario(bad_tri), ParseError);
  auto bad_type = good;
  bad_type["surface"]["triangles"] = 5;
  EXPECT_THROW(parse_scenario(bad_type), ParseError);
}

TEST(ScenarioParse, MissingFile) { EXPECT_THROW(read_scenario("/nonexistent/gerbes.json"), ParseError); }

// A tampered gerbe parses but fails validation.
TEST(ScenarioParse, TamperedDataFailsValidation) {
  ExampleParams p;
  p.indices = 3;
  p.seed = 4;
  auto j = serialize(make_example("random-gauge", p));
  auto& mu = j["gerbe"]["mu"];
  ASSERT_FALSE(mu.empty());
  std::string dump = j.dump();
  // Scale the first mu value found.
  std::function<bool(nlohmann::json&)> scale = [&](nlohmann::json& x) {
    if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number()) {
      x[0] = x[0].get<double>() * 1.5;
      x[1] = x[1].get<double>() * 1.5;
      return true;
    }
    if (x.is_structured())
      for (auto& y : x)
        if (scale(y)) return true;
    return false;
  };
  ASSERT_TRUE(scale(mu));
  auto sc = parse_scenario(j);
  EXPECT_FALSE(validate_scenario(sc, kEps).ok());
}

}  // namespace
}  // namespace gerbes
