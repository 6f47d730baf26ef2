#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lacuna/classifier.hpp"

namespace lacuna {

enum class OutputFormat { json, text };

/// Options shared by every subcommand.
struct JobSpec {
  std::filesystem::path input;
  /// Inline polynomial for `classify` / `norm` when no file is given.
  std::optional<std::string> expression;
  std::optional<int> N;
  std::optional<std::vector<int>> forbidden;
  ModeChoice mode = ModeChoice::automatic;
  /// Set when --mode was given explicitly; it then overrides a job file's mode.
  bool mode_forced = false;
  double eps_circle = kDefaultEpsCircle;
  double rank_gap = kDefaultRankGap;
  double tol_plus = kDefaultPlusTol;
  bool audit = false;
  /// Take Lambda from the support of p when the job does not state it.
  bool infer_lambda = false;
  std::optional<std::filesystem::path> out;
  OutputFormat format = OutputFormat::json;

  /// Throws Errc::invalid_argument for non-positive tolerances.
  void validate() const;
  ClassifyOptions classify_options() const;
};

enum class JobKind { classify, plusdim };

/// One job file:
///   {"kind": "classify", "name": ..., "poly": <expression | coefficient JSON>,
///    "N": int, "forbidden": [...] | "lambda": [...], "mode": "auto|exact|float",
///    "expect": {...}}
///   {"kind": "plusdim", "d": int, "basis": [[2d+1 reals], ...], "expect": {"dim_plus": int}}
struct Job {
  std::string name;
  JobKind kind = JobKind::classify;
  ComplexPoly p;
  std::optional<LacunaryPattern> lambda;
  std::optional<ModeChoice> mode;
  int d = 0;
  std::vector<std::vector<double>> basis;
  nlohmann::json expect;
};

Job parse_job(const nlohmann::json& doc, const std::string& name, bool infer_lambda);
Job load_job(const std::filesystem::path& path, bool infer_lambda);

/// Lambda = {0, N} together with the support of p.
LacunaryPattern infer_lambda_from(const ComplexPoly& p);

/// Mismatches between a report and an "expect" block; matrices are compared
/// up to a nonzero scalar with relative tolerance kExpectMatrixTol.
inline constexpr double kExpectMatrixTol = 1e-9;
std::vector<std::string> check_expectations(const ClassificationReport& r, const nlohmann::json& expect);
std::vector<std::string> check_expectations(const PlusDimension& pd, const nlohmann::json& expect);

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitDecided = 0, kExitError = 1, kExitUndecided = 2 };

struct JobOutcome {
  std::string name;
  JobKind kind = JobKind::classify;
  int exit_code = kExitError;
  std::string status;  // pass, mismatch, undecided, error, ok
  std::vector<std::string> messages;
  nlohmann::ordered_json report;
  std::string text;
};

/// Runs a job; every library error is caught and mapped to a diagnostic.
JobOutcome run_job(const Job& job, const JobSpec& spec);

int cmd_classify(const JobSpec& spec, std::ostream& out, std::ostream& err);
int cmd_plusdim(const JobSpec& spec, std::ostream& out, std::ostream& err);
int cmd_corpus(const JobSpec& spec, std::ostream& out, std::ostream& err);
int cmd_norm(const JobSpec& spec, std::ostream& out, std::ostream& err);

/// Worker count for the corpus runner: LACUNA_THREADS, else the hardware.
unsigned corpus_threads();

std::optional<ModeChoice> parse_mode_choice(std::string_view s);

}  // namespace lacuna
