#include "lacuna/jobs.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "lacuna/parse.hpp"
#include "lacuna/report.hpp"

namespace lacuna {
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot write " + path.string());
  out << text;
}

ComplexPoly poly_from(const json& v) {
  return v.is_string() ? parse_poly(v.get<std::string>()) : parse_poly(v.dump());
}

ordered_json error_json(const std::string& code, const std::string& message) {
  return {{"schema", kReportSchema}, {"error", {{"code", code}, {"message", message}}}};
}

/// Least-squares scalar c with got ~ c * want, then the worst entry error.
std::optional<std::string> compare_up_to_scalar(const Eigen::MatrixXd& got, const json& want, const char* what) {
  if (!want.is_array()) return std::string(what) + ": expected matrix must be an array of rows";
  const auto rows = static_cast<Eigen::Index>(want.size());
  if (rows != got.rows()) return std::string(what) + ": expected " + std::to_string(rows) + " rows, got " + std::to_string(got.rows());
  Eigen::MatrixXd B(got.rows(), got.cols());
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(want[i].size()) != got.cols())
      return std::string(what) + ": column count differs in row " + std::to_string(i);
    for (Eigen::Index j = 0; j < got.cols(); ++j) B(i, j) = want[i][j].get<double>();
  }
  const double bb = B.squaredNorm();
  const double gmax = got.size() ? got.cwiseAbs().maxCoeff() : 0.0;
  if (bb == 0.0) {
    if (gmax <= kExpectMatrixTol) return std::nullopt;
    return std::string(what) + ": expected the zero matrix";
  }
  const double c = (got.array() * B.array()).sum() / bb;
  const double err = (got - c * B).cwiseAbs().maxCoeff();
  if (c == 0.0 || err > kExpectMatrixTol * std::max(1.0, std::abs(c)) * B.cwiseAbs().maxCoeff())
    return std::string(what) + ": not a scalar multiple of the expected matrix (error " + std::to_string(err) + ")";
  return std::nullopt;
}

template <class T>
void expect_eq(std::vector<std::string>& out, const json& expect, const char* key, const std::optional<T>& got) {
  if (!expect.contains(key)) return;
  const json& want = expect.at(key);
  if (!got) {
    if (!want.is_null()) out.push_back(std::string(key) + ": expected " + want.dump() + ", got undecided");
    return;
  }
  if (want.is_null() || want.get<T>() != *got)
    out.push_back(std::string(key) + ": expected " + want.dump() + ", got " + json(*got).dump());
}

std::string kind_name(JobKind k) { return k == JobKind::classify ? "classify" : "plusdim"; }

JobOutcome run_classify(const Job& job, const JobSpec& spec) {
  JobOutcome o;
  o.name = job.name;
  o.kind = job.kind;
  ClassifyOptions opt = spec.classify_options();
  if (job.mode && !spec.mode_forced) opt.mode = *job.mode;
  const ClassificationReport r = classify(job.p, *job.lambda, opt);
  o.report = report_json(r);
  o.text = report_text(r);
  o.messages = check_expectations(r, job.expect);
  if (!o.messages.empty()) {
    o.exit_code = kExitError;
    o.status = "mismatch";
  } else if (!r.decided()) {
    o.exit_code = kExitUndecided;
    o.status = "undecided";
    o.messages = r.diagnostics;
  } else {
    o.exit_code = kExitDecided;
    o.status = job.expect.empty() ? "ok" : "pass";
  }
  return o;
}

JobOutcome run_plusdim(const Job& job, const JobSpec& spec) {
  JobOutcome o;
  o.name = job.name;
  o.kind = job.kind;
  SliceOptions so;
  so.tol = spec.tol_plus;
  const PlusDimension pd = plus_dimension(job.basis, std::nullopt, so);
  o.report = plus_dimension_json(pd);
  o.text = plus_dimension_text(pd);
  o.messages = check_expectations(pd, job.expect);
  o.exit_code = o.messages.empty() ? kExitDecided : kExitError;
  o.status = !o.messages.empty() ? "mismatch" : (job.expect.empty() ? "ok" : "pass");
  return o;
}

int emit(const JobOutcome& o, const JobSpec& spec, std::ostream& out, std::ostream& err) {
  const std::string body = spec.format == OutputFormat::json ? o.report.dump(2) + "\n" : o.text;
  if (spec.out)
    write_file(*spec.out, body);
  else
    out << body;
  for (const auto& m : o.messages) err << o.status << ": " << m << "\n";
  return o.exit_code;
}

Job job_from_spec(const JobSpec& spec, JobKind kind) {
  if (spec.expression) {
    Job job;
    job.name = "inline";
    job.kind = kind;
    job.p = parse_poly(*spec.expression);
    if (spec.N)
      job.lambda = LacunaryPattern(*spec.N, spec.forbidden.value_or(std::vector<int>{}));
    else if (spec.infer_lambda)
      job.lambda = infer_lambda_from(job.p);
    else
      job.lambda = LacunaryPattern(std::max(job.p.degree(), 1), spec.forbidden.value_or(std::vector<int>{}));
    return job;
  }
  if (spec.input.empty()) throw Error(Errc::invalid_argument, "no input file or expression given");
  Job job = load_job(spec.input, spec.infer_lambda);
  if (spec.N) job.lambda = LacunaryPattern(*spec.N, spec.forbidden.value_or(std::vector<int>{}));
  return job;
}

}  // namespace

std::optional<ModeChoice> parse_mode_choice(std::string_view s) {
  if (s == "auto") return ModeChoice::automatic;
  if (s == "exact") return ModeChoice::exact;
  if (s == "float") return ModeChoice::floating;
  return std::nullopt;
}

void JobSpec::validate() const {
  if (!(eps_circle > 0.0) || !(rank_gap > 0.0) || !(tol_plus > 0.0))
    throw Error(Errc::invalid_argument, "tolerances must be positive");
}

ClassifyOptions JobSpec::classify_options() const {
  ClassifyOptions o;
  o.mode = mode;
  o.eps_circle = eps_circle;
  o.rank_gap = rank_gap;
  o.tol_plus = tol_plus;
  o.audit = audit;
  o.slice.tol = tol_plus;
  return o;
}

LacunaryPattern infer_lambda_from(const ComplexPoly& p) {
  if (p.is_zero()) throw Error(Errc::invalid_argument, "cannot infer Lambda for the zero polynomial");
  const int N = std::max(p.degree(), 1);
  const auto c = p.coeffs_complex();
  double big = 0.0;
  for (const auto& x : c) big = std::max(big, std::abs(x));
  std::set<int> lambda{0, N};
  for (int k = 0; k <= p.degree(); ++k) {
    const bool zero = p.is_exact() ? p.exact().coeff(k).is_zero() : std::abs(c[k]) <= 1e-10 * big;
    if (!zero) lambda.insert(k);
  }
  return LacunaryPattern::from_lambda(lambda);
}

namespace {

Job parse_job_fields(const json& doc, const std::string& name, bool infer_lambda) {
  if (!doc.is_object()) throw Error(Errc::parse, name + ": job file must be a JSON object");
  Job job;
  job.name = doc.value("name", name);
  const std::string kind = doc.value("kind", std::string("classify"));
  if (kind == "plusdim") {
    job.kind = JobKind::plusdim;
    job.d = doc.at("d").get<int>();
    if (job.d < 0) throw Error(Errc::invalid_argument, name + ": d must be nonnegative");
    for (const auto& v : doc.at("basis")) {
      auto row = v.get<std::vector<double>>();
      if (static_cast<int>(row.size()) != 2 * job.d + 1)
        throw Error(Errc::invalid_argument, name + ": basis vectors need 2d+1 entries");
      job.basis.push_back(std::move(row));
    }
  } else if (kind == "classify") {
    job.kind = JobKind::classify;
    job.p = poly_from(doc.at("poly"));
    if (doc.contains("lambda")) {
      const auto v = doc.at("lambda").get<std::vector<int>>();
      job.lambda = LacunaryPattern::from_lambda(std::set<int>(v.begin(), v.end()));
      if (doc.contains("N") && doc.at("N").get<int>() != job.lambda->N())
        throw Error(Errc::invalid_argument, name + ": N disagrees with max(lambda)");
    } else if (doc.contains("N")) {
      job.lambda = LacunaryPattern(doc.at("N").get<int>(), doc.value("forbidden", std::vector<int>{}));
    } else if (infer_lambda) {
      job.lambda = infer_lambda_from(job.p);
    } else {
      throw Error(Errc::invalid_argument, name + ": job needs \"N\" (with optional \"forbidden\") or \"lambda\"");
    }
    if (doc.contains("mode")) {
      job.mode = parse_mode_choice(doc.at("mode").get<std::string>());
      if (!job.mode) throw Error(Errc::invalid_argument, name + ": unknown mode " + doc.at("mode").dump());
    }
  } else {
    throw Error(Errc::invalid_argument, name + ": unknown job kind '" + kind + "'");
  }
  job.expect = doc.value("expect", json::object());
  return job;
}

}  // namespace

Job parse_job(const json& doc, const std::string& name, bool infer_lambda) {
  try {
    return parse_job_fields(doc, name, infer_lambda);
  } catch (const json::exception& e) {
    throw Error(Errc::parse, name + ": " + e.what());
  }
}

Job load_job(const fs::path& path, bool infer_lambda) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse, path.string() + ": " + e.what());
  }
  try {
    return parse_job(doc, path.stem().string(), infer_lambda);
  } catch (const json::exception& e) {
    throw Error(Errc::parse, path.string() + ": " + e.what());
  }
}

static void reject_unknown_keys(std::vector<std::string>& out, const json& expect, std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : expect.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) out.push_back("unknown expectation key '" + key + "'");
}

std::vector<std::string> check_expectations(const ClassificationReport& r, const json& expect) {
  std::vector<std::string> out;
  if (expect.empty()) return out;
  reject_unknown_keys(out, expect,
                      {"is_extreme", "is_exposed", "dim_plus", "m", "m_tilde", "rank", "rank_tilde", "decided",
                       "extreme_path", "exposed_path", "matrix", "matrix_tilde", "witnesses"});
  expect_eq(out, expect, "is_extreme", r.is_extreme);
  expect_eq(out, expect, "is_exposed", r.is_exposed);
  expect_eq(out, expect, "dim_plus", r.dim_plus);
  expect_eq(out, expect, "m", std::optional<int>(r.canonical.m));
  expect_eq(out, expect, "m_tilde", std::optional<int>(r.tilde.m_tilde));
  expect_eq(out, expect, "rank", r.kernel ? std::optional<int>(r.kernel->rank) : std::nullopt);
  expect_eq(out, expect, "rank_tilde", r.kernel_tilde ? std::optional<int>(r.kernel_tilde->rank) : std::nullopt);
  expect_eq(out, expect, "decided", std::optional<bool>(r.decided()));
  if (expect.contains("extreme_path"))
    expect_eq(out, expect, "extreme_path", std::optional<std::string>(std::string(fast_path_name(r.extreme_path))));
  if (expect.contains("exposed_path"))
    expect_eq(out, expect, "exposed_path", std::optional<std::string>(std::string(fast_path_name(r.exposed_path))));
  for (const auto& [key, mtx] : {std::pair{"matrix", &r.matrix}, std::pair{"matrix_tilde", &r.matrix_tilde}}) {
    if (!expect.contains(key)) continue;
    if (!*mtx)
      out.push_back(std::string(key) + ": expected but not computed");
    else if (auto m = compare_up_to_scalar((*mtx)->entries, expect.at(key), key))
      out.push_back(*m);
  }
  if (expect.contains("witnesses")) {
    const auto n = expect.at("witnesses").get<std::size_t>();
    if (n != r.witnesses.size())
      out.push_back("witnesses: expected " + std::to_string(n) + ", got " + std::to_string(r.witnesses.size()));
  }
  for (const auto& w : r.witnesses)
    if (!w.checks.all()) out.push_back("witness " + std::string(witness_kind_name(w.kind)) + " failed its checks");
  return out;
}

std::vector<std::string> check_expectations(const PlusDimension& pd, const json& expect) {
  std::vector<std::string> out;
  if (expect.empty()) return out;
  reject_unknown_keys(out, expect, {"dim_plus"});
  expect_eq(out, expect, "dim_plus", std::optional<int>(pd.dim_plus));
  return out;
}

JobOutcome run_job(const Job& job, const JobSpec& spec) {
  try {
    return job.kind == JobKind::classify ? run_classify(job, spec) : run_plusdim(job, spec);
  } catch (const Error& e) {
    JobOutcome o;
    o.name = job.name;
    o.kind = job.kind;
    const bool stalled = e.code() == Errc::solver_stalled || e.code() == Errc::facial_mismatch ||
                         e.code() == Errc::rank_indeterminate;
    o.exit_code = stalled ? kExitUndecided : kExitError;
    o.status = stalled ? "undecided" : "error";
    o.messages.push_back(std::string(errc_name(e.code())) + ": " + e.what());
    o.report = error_json(std::string(errc_name(e.code())), e.what());
    o.text = std::string(errc_name(e.code())) + ": " + e.what() + "\n";
    return o;
  }
}

int cmd_classify(const JobSpec& spec, std::ostream& out, std::ostream& err) {
  Job job;
  try {
    spec.validate();
    job = job_from_spec(spec, JobKind::classify);
    if (job.kind != JobKind::classify) throw Error(Errc::invalid_argument, "job is not a classify job");
  } catch (const Error& e) {
    err << errc_name(e.code()) << ": " << e.what() << "\n";
    return kExitError;
  }
  try {
    return emit(run_job(job, spec), spec, out, err);
  } catch (const Error& e) {
    err << errc_name(e.code()) << ": " << e.what() << "\n";
    return kExitError;
  }
}

int cmd_plusdim(const JobSpec& spec, std::ostream& out, std::ostream& err) {
  Job job;
  try {
    spec.validate();
    if (spec.input.empty()) throw Error(Errc::invalid_argument, "plusdim needs a basis file");
    const json doc = json::parse(read_file(spec.input));
    json full = doc;
    if (!full.contains("kind")) full["kind"] = "plusdim";
    job = parse_job(full, spec.input.stem().string(), false);
    if (job.kind != JobKind::plusdim) throw Error(Errc::invalid_argument, "file is not a plusdim job");
  } catch (const json::exception& e) {
    err << "parse: " << e.what() << "\n";
    return kExitError;
  } catch (const Error& e) {
    err << errc_name(e.code()) << ": " << e.what() << "\n";
    return kExitError;
  }
  try {
    return emit(run_job(job, spec), spec, out, err);
  } catch (const Error& e) {
    err << errc_name(e.code()) << ": " << e.what() << "\n";
    return kExitError;
  }
}

unsigned corpus_threads() {
  if (const char* env = std::getenv("LACUNA_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(std::min(n, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_corpus(const JobSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    spec.validate();
  } catch (const Error& e) {
    err << errc_name(e.code()) << ": " << e.what() << "\n";
    return kExitError;
  }
  std::error_code ec;
  if (!fs::is_directory(spec.input, ec)) {
    err << "io: " << spec.input.string() << " is not a directory\n";
    return kExitError;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(spec.input))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    err << "warning: no job files in " << spec.input.string() << "\n";
    return kExitDecided;
  }
  if (spec.out) fs::create_directories(*spec.out);

  std::vector<JobOutcome> results(files.size());
  std::atomic<std::size_t> next{0};
  std::mutex write_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      JobOutcome o;
      try {
        o = run_job(load_job(files[i], spec.infer_lambda), spec);
      } catch (const Error& e) {
        o.name = files[i].stem().string();
        o.status = "error";
        o.exit_code = kExitError;
        o.messages.push_back(std::string(errc_name(e.code())) + ": " + e.what());
        o.report = error_json(std::string(errc_name(e.code())), e.what());
      }
      if (spec.out) {
        const std::lock_guard lock(write_mutex);
        write_file(*spec.out / (files[i].stem().string() + ".json"), o.report.dump(2) + "\n");
      }
      results[i] = std::move(o);
    }
  };
  const unsigned n_threads = std::min<unsigned>(corpus_threads(), static_cast<unsigned>(files.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }

  int exit_code = kExitDecided;
  std::size_t failures = 0;
  std::size_t width = 4;
  for (const auto& r : results) width = std::max(width, r.name.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    out << r.name << std::string(width + 2 - r.name.size(), ' ') << kind_name(r.kind)
        << std::string(10 - kind_name(r.kind).size(), ' ') << r.status << "\n";
    for (const auto& m : r.messages) out << "    " << m << "\n";
    if (r.status == "mismatch" || r.status == "error") {
      exit_code = kExitError;
      ++failures;
    } else if (r.status == "undecided" && exit_code == kExitDecided) {
      exit_code = kExitUndecided;
    }
  }
  out << results.size() << " job(s), " << failures << " failure(s)\n";
  return exit_code;
}

int cmd_norm(const JobSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    ComplexPoly p;
    if (spec.expression) {
      p = parse_poly(*spec.expression);
    } else {
      if (spec.input.empty()) throw Error(Errc::invalid_argument, "no input file or expression given");
      const std::string text = read_file(spec.input);
      const json doc = json::parse(text, nullptr, false);
      p = (!doc.is_discarded() && doc.is_object() && doc.contains("poly")) ? poly_from(doc.at("poly")) : parse_poly(text);
    }
    const NormResult n = l1_norm(p);
    if (spec.format == OutputFormat::json) {
      const ordered_json j = {{"schema", kReportSchema},
                              {"p", poly_json(p)},
                              {"norm", {{"value", n.value}, {"abs_error_bound", n.abs_error_bound}, {"panels", n.panels}}}};
      out << j.dump(2) << "\n";
    } else {
      char buf[96];
      std::snprintf(buf, sizeof buf, "%.15g  (+/- %.3g, %d panels)\n", n.value, n.abs_error_bound, n.panels);
      out << "||p||_1 = " << buf;
    }
    return kExitDecided;
  } catch (const Error& e) {
    err << errc_name(e.code()) << ": " << e.what() << "\n";
    return kExitError;
  } catch (const json::exception& e) {
    err << "parse: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace lacuna
