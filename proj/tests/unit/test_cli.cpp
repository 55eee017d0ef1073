#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "alc/cli/cli.hpp"
#include "alc/errors.hpp"
#include "doctest.h"
#include "json.hpp"

using alc::algebra::Rational;
using alc::cli::parse_range;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = alc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

}  // namespace

TEST_CASE("range parsing is exact") {
  const auto v = parse_range("1/100:6/25:1/100");
  REQUIRE(v.size() == 24);
  CHECK(v.front() == Rational(1, 100));
  CHECK(v.back() == Rational(6, 25));
  CHECK(parse_range("0.05:0.45:0.05").size() == 9);
  CHECK(parse_range("1:1:1").size() == 1);
  CHECK_THROWS_AS(parse_range("0.3:0.1:0.1"), alc::DomainError);
  CHECK_THROWS_AS(parse_range("0:1:0"), alc::DomainError);
  CHECK_THROWS_AS(parse_range("0:1"), alc::DomainError);
  CHECK_THROWS_AS(parse_range("a:b:c"), alc::DomainError);
}

TEST_CASE("verify") {
  Run r = run({"verify", "--system", "chlls", "--a", "1/8"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS cofactor_residual_exact") != std::string::npos);

  r = run({"verify", "--system", "chlls", "--a", "0.5"});
  CHECK(r.code == 2);
  CHECK(r.err.find("0 < a < 1/4") != std::string::npos);

  r = run({"verify", "--system", "nalc"});
  CHECK(r.code == 0);
  CHECK(r.out.find("cofactor_residual_pointwise") != std::string::npos);

  for (const char* id : {"fil", "ch1", "filipstov", "chavarriga", "chin2", "yablonskii"}) {
    CAPTURE(id);
    r = run({"verify", "--system", id});
    CHECK(r.code == 0);
  }
  r = run({"verify", "--system", "fil", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["pass"] == true);
  std::vector<std::string> names;
  for (const auto& c : j["checks"]) names.push_back(c["name"]);
  CHECK(names == std::vector<std::string>{"cofactor_residual_exact", "gradient_nonvanishing", "transform_divergence",
                                          "round_trip"});
}

TEST_CASE("usage and domain errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "--system", "nope"}).code == 2);
  CHECK(run({"verify"}).code == 2);
  CHECK(run({"verify", "--system", "chlls", "--a", "x/y"}).code == 2);
  CHECK(run({"verify", "--system", "chlls", "--b", "1"}).code == 2);
  CHECK(run({"hyperbolicity", "--system", "nalc", "--methods", "closed"}).code == 2);
  CHECK(run({"hyperbolicity", "--system", "chlls", "--methods", "magic"}).code == 2);
  CHECK(run({"hyperbolicity", "--system", "chlls", "--rel-tol", "-1"}).code == 2);
  CHECK(run({"checks", "nothing"}).code == 2);
  CHECK(run({"verify", "--system", "chlls", "--format", "xml"}).code == 2);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("sweep") != std::string::npos);
}

TEST_CASE("hyperbolicity verdicts") {
  Run r = run({"hyperbolicity", "--system", "chlls", "--a", "0.125", "--methods", "ode,reduced,closed", "--format",
               "json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "unstable");
  CHECK(j["D_closed_form"].get<double>() == doctest::Approx(j["D_ode"].get<double>()).epsilon(1e-8));
  CHECK(j["D_closed_form"].get<double>() == doctest::Approx(j["D_reduced_quadrature"].get<double>()).epsilon(1e-12));

  r = run({"hyperbolicity", "--system", "ch1", "--a", "-0.02", "--format", "json"});
  CHECK(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["original_verdict"] == "stable");
  CHECK(j["verdict"] == "unstable");

  r = run({"hyperbolicity", "--system", "nalc", "--format", "json"});
  CHECK(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["D_ode"].get<double>() == doctest::Approx(-12.566370614359172).epsilon(1e-8));
  CHECK(j["verdict"] == "stable");

  // an impossible tolerance turns agreement into a numerical failure
  r = run({"hyperbolicity", "--system", "chlls", "--rel-tol", "1e-300"});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL agreement") != std::string::npos);
}

TEST_CASE("sweep") {
  Run r = run({"sweep", "--system", "chlls", "--a", "0.01:0.24:0.01"});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 25);
  CHECK(r.out.rfind("param,param_value,D_closed_form", 0) == 0);
  // byte-identical on repetition
  CHECK(run({"sweep", "--system", "chlls", "--a", "0.01:0.24:0.01"}).out == r.out);

  r = run({"sweep", "--system", "fil", "--range", "0.05:0.45:0.05", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["rows"].size() == 9);
  for (const auto& row : j["rows"]) CHECK(row["D_ode"].get<double>() > 0.0);
  CHECK(j["rows"][0]["param"] == "1/20");

  CHECK(run({"sweep", "--system", "chlls", "--range", "0.2:0.1:0.01"}).code == 2);
  CHECK(run({"sweep", "--system", "chlls"}).code == 2);
  CHECK(run({"sweep", "--system", "chlls", "--range", "0.2:0.3:0.01"}).code == 2);

  const std::string path = "test_cli_sweep.csv";
  r = run({"sweep", "--system", "chin2", "--param", "c", "--range", "-2:-1:1/2", "-o", path});
  CHECK(r.code == 0);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(count_lines(buf.str()) == 4);
  std::remove(path.c_str());
}

TEST_CASE("checks") {
  Run r = run({"checks", "theorem", "--system", "nalc", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["int_div"].get<double>() == doctest::Approx(-12.566370614359172).epsilon(1e-8));
  CHECK(j["int_k"].get<double>() == doctest::Approx(-12.566370614359172).epsilon(1e-8));
  CHECK(run({"checks", "fuchs", "--grid", "0.01:0.24:0.01"}).code == 0);
  CHECK(run({"checks", "elliptic"}).code == 0);
  for (const char* id : {"chlls", "fil", "ch1", "nalc"}) {
    CAPTURE(id);
    CHECK(run({"checks", "monodromy", "--system", id}).code == 0);
  }
}

TEST_CASE("elliptic-check, catalog and orbit outputs") {
  Run r = run({"elliptic-check", "--points", "10"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("identity,param,residual,tolerance,pass\n", 0) == 0);
  CHECK(count_lines(r.out) == 41);

  r = run({"catalog"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["systems"].size() == 8);

  r = run({"orbit", "--system", "chlls"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("t,x,y,f,int_div,int_k\n", 0) == 0);
  CHECK(count_lines(r.out) > 10);
}
