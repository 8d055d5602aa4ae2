#include "omni2/commands.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

struct CmdSpec {
  const char* name;
  const char* help;
  int files;
};

constexpr CmdSpec kCommands[] = {
    {"check-lie2", "verify the homotopy Lie identities of a structure file", 1},
    {"check-dgla", "verify the graded Lie identities of the endomorphism algebra", 1},
    {"check-omni", "verify pairing/bracket functoriality, Leibniz and the anomaly formula", 1},
    {"anomaly", "compare the cyclic bracket nesting against the quarter formula", 1},
    {"check-dirac", "decide whether a sub-2-space is a Dirac structure", 1},
    {"graph-dirac", "decide whether the graph of a bracket functor is Dirac", 1},
    {"char-pair", "characteristic pair and induced structure of a Dirac structure", 1},
    {"from-lie2", "build the Dirac structure of a strict structure on a subspace", 2},
    {"normalizer", "normalizer of a sub-2-space inside the endomorphism algebra", 1},
    {"derivations", "derivation algebra of a strict structure", 1},
    {"twist-check", "verify that a (mu0, mu1, chi) triple is a coherent twist", 1},
    {"string-type", "string-type structure, alpha and twist of a quadratic Lie algebra", 1},
    {"so3-example", "run the built-in so(3) end-to-end example", 0},
};

int fail_input(const std::string& msg) {
  std::cerr << "omni2: " << msg << "\n";
  return 2;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic toolkit for omni-Lie 2-algebras and Dirac structures"};
  app.require_subcommand(1);
  app.fallthrough();

  bool pretty = false;
  std::uint64_t seed = 0;
  int samples = 100;
  app.add_flag("--pretty", pretty, "human-readable report instead of JSON");
  app.add_option("--seed", seed, "seed for randomized identity checks")->capture_default_str();
  app.add_option("--samples", samples, "sample count for randomized identity checks")
      ->capture_default_str();

  std::map<std::string, std::vector<std::string>> files;
  for (const auto& spec : kCommands) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    if (spec.files > 0)
      sub->add_option("files", files[spec.name], "input structure files")
          ->expected(spec.files)
          ->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();

  try {
    std::vector<omni2::StructureFile> inputs;
    for (const std::string& path : files[command]) {
      std::ifstream in(path);
      if (!in) return fail_input("cannot open '" + path + "'");
      omni2::Json doc;
      try {
        doc = omni2::Json::parse(in);
      } catch (const omni2::Json::parse_error& e) {
        return fail_input(path + ": " + e.what());
      }
      try {
        inputs.push_back(omni2::parse_structure_file(doc));
      } catch (const omni2::ParseError& e) {
        return fail_input(path + ": " + e.what());
      }
    }

    omni2::RunOptions opt;
    opt.seed = seed;
    opt.samples = samples;
    omni2::RunReport report;
    try {
      report = omni2::run_command(command, inputs, opt);
    } catch (const omni2::ParseError& e) {
      return fail_input(e.what());
    }

    if (pretty)
      std::cout << omni2::report_pretty(report);
    else
      std::cout << omni2::report_json(report).dump(2) << "\n";
    return report.exit_code();
  } catch (const std::exception& e) {
    return fail_input(e.what());
  }
}
