#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "goldens.hpp"
#include "hypopq/cli.hpp"
#include "support.hpp"

using hypopq::BigReal;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "hypopq");
  std::ostringstream out;
  std::ostringstream err;
  const int code = hypopq::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::vector<std::string> kBase = {"--alpha", "3/2", "--beta", "3", "--gamma", "1/3", "--c", "1/2"};

std::vector<std::string> with(std::string cmd, std::vector<std::string> extra) {
  std::vector<std::string> a{std::move(cmd)};
  a.insert(a.end(), kBase.begin(), kBase.end());
  a.insert(a.end(), extra.begin(), extra.end());
  return a;
}

}  // namespace

TEST_CASE("coeffs records match the goldens") {
  const Result r = run(with("coeffs", {"--nmax", "30", "--bits", "512", "--format", "json"}));
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  REQUIRE(doc["records"].size() == 31);
  CHECK(doc["meta"]["inexact_input"] == false);
  for (const auto& g : hypopq::golden::kBase) {
    const json& rec = doc["records"][g.n];
    CHECK(rec["n"] == g.n);
    CHECK(hypopq::test::rel(BigReal::parse(rec["a2"].get<std::string>(), 512), g.a2) < 1e-45);
    CHECK(hypopq::test::rel(BigReal::parse(rec["b"].get<std::string>(), 512), g.b) < 1e-45);
  }
}

TEST_CASE("json strings round trip exactly") {
  const Result r = run(with("xy", {"--nmax", "3", "--bits", "200"}));
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  for (const json& rec : doc["records"]) {
    const std::string s = rec["x"].get<std::string>();
    CHECK(BigReal::parse(s, 200).to_string() == s);
  }
}

TEST_CASE("output is deterministic") {
  const auto args = with("iterate", {"--nmax", "15", "--bits", "128"});
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("validation failures exit with 2") {
  const Result r = run({"coeffs", "--alpha", "1", "--beta", "1", "--gamma", "0", "--c", "1/2"});
  CHECK(r.code == 2);
  const json e = json::parse(r.err);
  CHECK(e["message"] == "gamma must be positive");
  CHECK(run({"coeffs", "--alpha", "1"}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
}

TEST_CASE("verify passes on oracle sequences") {
  const Result r = run(with("verify", {"--nmax", "20", "--bits", "512"}));
  CHECK(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["meta"]["passes"] == true);
  CHECK(BigReal::parse(doc["meta"]["max_residual"].get<std::string>(), 64).to_double() < 1e-20);
}

TEST_CASE("csv output has a header and truncated values") {
  const Result r = run(with("coeffs", {"--nmax", "2", "--format", "csv"}));
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::string row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header == "n,a2,b");
  CHECK(row.rfind("0,0,", 0) == 0);
}

TEST_CASE("decimal input is flagged") {
  const Result r = run({"moments", "--alpha", "1.5", "--beta", "3", "--gamma", "1/3", "--c", "0.5", "--nmax", "1"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["meta"]["inexact_input"] == true);
}

TEST_CASE("exhausted precision exits with 3") {
  const Result r = run(with("coeffs", {"--nmax", "40", "--bits", "64"}));
  CHECK(r.code == 3);
  CHECK(json::parse(r.err)["error"] == "PrecisionExhausted");
}

TEST_CASE("singular iteration exits with 4") {
  const Result r = run({"iterate", "--alpha", "2", "--beta", "5", "--gamma", "2", "--c", "1/2", "--seed-x0", "2",
                        "--nmax", "5"});
  CHECK(r.code == 4);
  CHECK(json::parse(r.err)["error"] == "SingularStep");
}

TEST_CASE("default precision comes from the environment") {
  setenv("HYPOPQ_DEFAULT_BITS", "96", 1);
  const Result r = run(with("moments", {"--nmax", "1"}));
  unsetenv("HYPOPQ_DEFAULT_BITS");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["meta"]["bits"] == 96);
}

TEST_CASE("study subcommands") {
  const Result p = run(with("perturb", {"--nmax", "100", "--deltas", "0,1e-6"}));
  REQUIRE(p.code == 0);
  const json doc = json::parse(p.out);
  CHECK(doc["records"][0]["divergence_index"].is_null());
  CHECK(doc["records"][1]["divergence_index"].get<int>() < 100);

  const Result k = run(with("riccati", {"--bits", "256", "--h", "2^-30"}));
  REQUIRE(k.code == 0);
  CHECK(BigReal::parse(json::parse(k.out)["records"][0]["gap"].get<std::string>(), 64).to_double() < 1e-15);

  const Result s = run(with("sigma", {"--bits", "256", "--n", "2", "--h", "2^-30"}));
  REQUIRE(s.code == 0);
  CHECK(BigReal::parse(json::parse(s.out)["records"][0]["residual"].get<std::string>(), 64).to_double() < 1e-15);

  const Result a = run(with("asymptotics", {"--nmax", "40"}));
  REQUIRE(a.code == 0);
  CHECK(json::parse(a.out)["records"][0]["x_limit_gap"].is_string());

  const Result ps = run(with("precision-study", {"--nmax", "50", "--levels", "10,20"}));
  REQUIRE(ps.code == 0);
  CHECK(json::parse(ps.out)["records"].size() == 2);
}
