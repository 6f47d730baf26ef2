// Command-line front end: classify, plusdim, corpus, norm.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lacuna/jobs.hpp"

namespace {

void add_common(CLI::App& cmd, lacuna::JobSpec& spec, std::string& mode, std::string& format, std::string& out) {
  cmd.add_option("--mode", mode, "auto | exact | float")->check(CLI::IsMember({"auto", "exact", "float"}));
  cmd.add_flag("--audit", spec.audit, "run full criteria alongside every shortcut");
  cmd.add_option("--eps-circle", spec.eps_circle, "band |1 - |z|| treated as the unit circle");
  cmd.add_option("--tol", spec.tol_plus, "nonnegativity tolerance for plus-vectors");
  cmd.add_option("--rank-gap", spec.rank_gap, "minimum singular-value gap ratio (float mode)");
  cmd.add_option("--out", out, "write the report to this path (corpus: a directory)");
  cmd.add_option("--format", format, "json | text")->check(CLI::IsMember({"json", "text"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extreme and exposed points of the unit ball of lacunary polynomial spaces in L1"};
  app.set_config("--config", "", "key = value file with option defaults");
  app.require_subcommand(1);
  app.fallthrough();

  lacuna::JobSpec spec;
  std::string mode, format, out, input, expression, forbidden;
  int N = -1;
  add_common(app, spec, mode, format, out);

  auto* classify = app.add_subcommand("classify", "classify a polynomial from a job file or --poly");
  classify->add_option("input", input, "job file (JSON)");
  classify->add_option("--poly", expression, "polynomial expression, e.g. \"(z-1/2)*(8-z^3)\"");
  classify->add_option("--N", N, "top degree N of Lambda");
  classify->add_option("--forbidden", forbidden, "comma-separated forbidden indices");
  classify->add_flag("--infer-lambda", spec.infer_lambda, "take Lambda from the support of p when not given");

  auto* plusdim = app.add_subcommand("plusdim", "plus-dimension of a subspace basis file");
  plusdim->add_option("input", input, "basis file {\"d\": d, \"basis\": [[...], ...]}")->required();

  auto* corpus = app.add_subcommand("corpus", "run every job file in a directory against its expectations");
  corpus->add_option("directory", input, "corpus directory")->required();

  auto* norm = app.add_subcommand("norm", "L1 norm on the unit circle");
  norm->add_option("input", input, "polynomial file");
  norm->add_option("--poly", expression, "polynomial expression");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lacuna::kExitError;
  }

  spec.input = input;
  if (!expression.empty()) spec.expression = expression;
  if (N >= 0) spec.N = N;
  if (!forbidden.empty()) {
    std::vector<int> ks;
    std::stringstream ss(forbidden);
    for (std::string item; std::getline(ss, item, ',');) {
      try {
        ks.push_back(std::stoi(item));
      } catch (const std::exception&) {
        std::cerr << "invalid_argument: bad forbidden index '" << item << "'\n";
        return lacuna::kExitError;
      }
    }
    spec.forbidden = ks;
  }
  if (!mode.empty()) {
    spec.mode = *lacuna::parse_mode_choice(mode);
    spec.mode_forced = true;
  }
  if (format == "text") spec.format = lacuna::OutputFormat::text;
  if (!out.empty()) spec.out = out;
  if (corpus->parsed() && format.empty()) spec.format = lacuna::OutputFormat::text;

  if (classify->parsed()) return lacuna::cmd_classify(spec, std::cout, std::cerr);
  if (plusdim->parsed()) return lacuna::cmd_plusdim(spec, std::cout, std::cerr);
  if (corpus->parsed()) return lacuna::cmd_corpus(spec, std::cout, std::cerr);
  return lacuna::cmd_norm(spec, std::cout, std::cerr);
}
