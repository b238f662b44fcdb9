#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "gerbes/config.hpp"

using namespace gerbes;

int main(int argc, char** argv) {
  CLI::App app{"Discrete bundle gerbes on triangulated surfaces"};
  app.require_subcommand(1);
  app.fallthrough();
  int indent = 2;
  app.add_option("--indent", indent, "JSON indentation (-1 for one line)");

  std::vector<std::string> files;
  auto* validate = app.add_subcommand("validate", "Check every axiom of one or more scenario files");
  validate->add_option("files", files, "Scenario files")->required();

  std::string file;
  cli::HolonomyOptions hopt;
  auto* holonomy = app.add_subcommand("holonomy", "Surface holonomy of a scenario");
  holonomy->add_option("file", file, "Scenario file")->required();
  holonomy->add_option("--mode", hopt.mode, "closed | dbrane | unoriented (default: the scenario's meta.mode)")
      ->check(CLI::IsMember({"closed", "dbrane", "unoriented"}));
  holonomy->add_option("--seed", hopt.seed, "Trivialization and fundamental domain seed");
  holonomy->add_flag("--check-independence", hopt.check_independence, "Recompute under a second seed");

  int cases = 100;
  unsigned seed = 1;
  std::vector<std::string> suites;
  bool text = false;
  auto* axioms = app.add_subcommand("axioms", "Randomized property suites");
  axioms->add_option("--cases", cases, "Cases per suite")->check(CLI::PositiveNumber);
  axioms->add_option("--seed", seed, "Generator seed");
  axioms->add_option("--suite", suites, "Restrict to these suites");
  axioms->add_flag("--text", text, "One line per law instead of JSON");

  std::string name, out, theta = "0";
  ExampleParams ep;
  auto* example = app.add_subcommand("example", "Write a canonical example scenario");
  example->add_option("name", name, "sphere | torus | klein | rp2 | disc-brane | random-gauge")
      ->required()
      ->check(CLI::IsMember(example_names()));
  example->add_option("--theta", theta, "Angle, e.g. 1.5, pi/2, 3pi/4");
  example->add_option("--jandl", ep.jandl, "trivial | twisted")->check(CLI::IsMember({"trivial", "twisted"}));
  example->add_option("--rank", ep.rank, "Brane module rank")->check(CLI::PositiveNumber);
  example->add_option("--indices", ep.indices, "Cover size of a random gauge (0: trivial gerbe)")
      ->check(CLI::NonNegativeNumber);
  example->add_option("--seed", ep.seed, "Generator seed");
  example->add_option("-o,--output", out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors share the I/O exit code; --help exits 0.
    return app.exit(e) == 0 ? cli::kPass : cli::kIoError;
  }

  const double eps = tolerance();
  cli::Outcome o;
  try {
    if (*validate) {
      o = cli::cmd_validate(files, eps);
    } else if (*holonomy) {
      o = cli::cmd_holonomy(file, hopt, eps);
    } else if (*axioms) {
      o = cli::cmd_axioms(cases, seed, suites, eps);
      if (text) {
        for (const auto& s : o.report["suites"])
          for (const auto& l : s["laws"])
            std::cout << (l["pass"].get<bool>() ? "PASS " : "FAIL ") << s["name"].get<std::string>() << "/"
                      << l["name"].get<std::string>() << " max_dev=" << l["max_deviation"].dump()
                      << " cases=" << l["cases"] << "\n";
        return o.code;
      }
    } else if (*example) {
      ep.theta = cli::parse_angle(theta);
      o = cli::cmd_example(name, ep, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kInvalid;
  }
  std::cout << o.report.dump(indent) << "\n";
  return o.code;
}
