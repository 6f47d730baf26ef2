#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lacuna/jobs.hpp"
#include "lacuna/parse.hpp"
#include "lacuna/report.hpp"

using namespace lacuna;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

/// Fresh scratch directory under the system temp path.
fs::path scratch(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("lacuna_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

}  // namespace

TEST_CASE("parse_job: classify with forbidden list and with lambda") {
  const Job a = parse_job(json::parse(R"J({"kind":"classify","poly":"(z-1/2)*(8-z^3)","N":4,"forbidden":[2]})J"), "a",
                          false);
  CHECK(a.kind == JobKind::classify);
  REQUIRE(a.lambda);
  CHECK(a.lambda->forbidden() == std::vector<int>{2});
  CHECK(a.p.exact() == parse_poly("(z-1/2)*(8-z^3)").exact());

  const Job b = parse_job(json::parse(R"J({"poly":"1+z^3","lambda":[0,3],"mode":"float"})J"), "b", false);
  REQUIRE(b.lambda);
  CHECK(b.lambda->N() == 3);
  CHECK(b.lambda->forbidden() == std::vector<int>{1, 2});
  CHECK(b.mode == ModeChoice::floating);

  const Job c = parse_job(json::parse(R"J({"poly":"1+z^3"})J"), "c", true);
  REQUIRE(c.lambda);
  CHECK(c.lambda->forbidden() == std::vector<int>{1, 2});

  const Job d = parse_job(json::parse(R"J({"kind":"plusdim","d":1,"basis":[[0,1,0]],"expect":{"dim_plus":0}})J"), "d",
                          false);
  CHECK(d.kind == JobKind::plusdim);
  CHECK(d.basis.size() == 1);
  CHECK(d.expect["dim_plus"] == 0);
}

TEST_CASE("parse_job: rejects malformed jobs") {
  CHECK_THROWS_AS(parse_job(json::parse(R"J({"kind":"nope","poly":"z"})J"), "x", false), Error);
  CHECK_THROWS_AS(parse_job(json::parse(R"J({"kind":"classify"})J"), "x", false), Error);
  CHECK_THROWS_AS(parse_job(json::parse(R"J({"kind":"plusdim","d":1,"basis":[[1,0]]})J"), "x", false), Error);
  CHECK_THROWS_AS(parse_job(json::parse(R"J({"poly":"z","N":2,"forbidden":[5]})J"), "x", false), Error);
}

TEST_CASE("infer_lambda_from") {
  const auto lam = infer_lambda_from(parse_poly("2 - 3z + z^4"));
  CHECK(lam.N() == 4);
  CHECK(lam.forbidden() == std::vector<int>{2, 3});
}

TEST_CASE("check_expectations catches mismatches") {
  const auto r = classify(parse_poly("(z-1/2)*(8-z^3)"), LacunaryPattern(4, {2}));
  CHECK(check_expectations(r, json::parse(R"J({"m":1,"rank":2,"is_extreme":true,"matrix":[[4,5,0],[0,0,3]]})J")).empty());
  CHECK(check_expectations(r, json::parse(R"J({"matrix":[[-8,-10,0],[0,0,-6]]})J")).empty());
  CHECK(check_expectations(r, json::parse(R"J({"is_exposed":false})J")).size() == 1);
  CHECK(check_expectations(r, json::parse(R"J({"matrix":[[4,5,0],[0,0,4]]})J")).size() == 1);
  CHECK(check_expectations(r, json::parse(R"J({"rank":1,"m":2})J")).size() == 2);
  CHECK_FALSE(check_expectations(r, json::parse(R"J({"unknown_key":1})J")).empty());

  const auto pd = plus_dimension({{1, 0, -1, 0, 0}, {0, 1, 0, 0, 0}});
  CHECK(check_expectations(pd, json::parse(R"J({"dim_plus":1})J")).empty());
  CHECK(check_expectations(pd, json::parse(R"J({"dim_plus":2})J")).size() == 1);
}

TEST_CASE("report JSON is stable and complete") {
  const auto r = classify(parse_poly("(1-z)^2*(2+z)"), LacunaryPattern(3, {2}));
  const auto a = report_json(r).dump(2);
  const auto b = report_json(classify(parse_poly("(1-z)^2*(2+z)"), LacunaryPattern(3, {2}))).dump(2);
  CHECK(a == b);
  const auto j = json::parse(a);
  CHECK(j["schema"] == kReportSchema);
  CHECK(j["is_extreme"] == true);
  CHECK(j["is_exposed"] == true);
  CHECK(j["exposed_path"] == "tilde_full_rank");
  CHECK(j["matrix_tilde"]["rank"] == 2);
  CHECK(j["tilde"]["m_tilde"] == 1);
  CHECK(j["decided"] == true);
  CHECK_FALSE(report_text(r).empty());
}

TEST_CASE("cmd_corpus over the bundled corpus") {
  JobSpec spec;
  spec.input = LACUNA_CORPUS_DIR;
  spec.format = OutputFormat::text;
  std::ostringstream out, err;
  CHECK(cmd_corpus(spec, out, err) == kExitDecided);
  CHECK(out.str().find("mismatch") == std::string::npos);

  spec.audit = true;
  std::ostringstream out2, err2;
  CHECK(cmd_corpus(spec, out2, err2) == kExitDecided);
}

TEST_CASE("cmd_corpus: empty directory, malformed file, mismatch, out directory") {
  const fs::path dir = scratch("corpus");
  JobSpec spec;
  spec.input = dir;
  {
    std::ostringstream out, err;
    CHECK(cmd_corpus(spec, out, err) == kExitDecided);
    CHECK_FALSE(err.str().empty());
  }
  write(dir / "good.json", R"J({"poly":"(z-1/2)*(8-z^3)","N":4,"forbidden":[2],"expect":{"is_extreme":true}})J");
  {
    std::ostringstream out, err;
    CHECK(cmd_corpus(spec, out, err) == kExitDecided);
  }
  write(dir / "wrong.json", R"J({"poly":"(z-1/2)*(8-z^3)","N":4,"forbidden":[2],"expect":{"is_extreme":false}})J");
  {
    std::ostringstream out, err;
    CHECK(cmd_corpus(spec, out, err) == kExitError);
  }
  fs::remove(dir / "wrong.json");
  write(dir / "broken.json", R"J({"poly": "(z-1/2")J");
  {
    std::ostringstream out, err;
    CHECK(cmd_corpus(spec, out, err) == kExitError);
  }
  fs::remove(dir / "broken.json");
  const fs::path reports = dir / "reports";
  spec.out = reports;
  {
    std::ostringstream out, err;
    CHECK(cmd_corpus(spec, out, err) == kExitDecided);
  }
  CHECK(fs::exists(reports / "good.json"));
  fs::remove_all(dir);
}

TEST_CASE("cmd_classify and cmd_plusdim exit codes") {
  const fs::path dir = scratch("single");
  write(dir / "v1.json", R"J({"kind":"plusdim","d":1,"basis":[[0,1,0]],"expect":{"dim_plus":0}})J");
  JobSpec spec;
  spec.input = dir / "v1.json";
  std::ostringstream out, err;
  CHECK(cmd_plusdim(spec, out, err) == kExitDecided);
  CHECK(json::parse(out.str())["dim_plus"] == 0);

  JobSpec inline_spec;
  inline_spec.expression = "(z-1/2)*(8-z^3)";
  inline_spec.N = 4;
  inline_spec.forbidden = std::vector<int>{2};
  std::ostringstream o2, e2;
  CHECK(cmd_classify(inline_spec, o2, e2) == kExitDecided);
  CHECK(json::parse(o2.str())["is_exposed"] == true);

  JobSpec bad = inline_spec;
  bad.forbidden = std::vector<int>{1};
  std::ostringstream o3, e3;
  CHECK(cmd_classify(bad, o3, e3) == kExitError);

  JobSpec missing;
  missing.input = dir / "absent.json";
  std::ostringstream o4, e4;
  CHECK(cmd_classify(missing, o4, e4) == kExitError);

  JobSpec norm;
  norm.expression = "1+z";
  std::ostringstream o5, e5;
  CHECK(cmd_norm(norm, o5, e5) == kExitDecided);
  fs::remove_all(dir);
}

TEST_CASE("JobSpec validation and mode names") {
  JobSpec s;
  s.tol_plus = 0.0;
  CHECK_THROWS_AS(s.validate(), Error);
  CHECK(parse_mode_choice("exact") == ModeChoice::exact);
  CHECK(parse_mode_choice("float") == ModeChoice::floating);
  CHECK(parse_mode_choice("auto") == ModeChoice::automatic);
  CHECK_FALSE(parse_mode_choice("fast"));
}
