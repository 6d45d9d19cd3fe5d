#include "cli.hpp"
#include "doctest.h"

using namespace acsv::cli;

namespace {

RunConfig config(const std::string& den) {
  RunConfig c;
  c.denom = den;
  return c;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("solve in combinatorial mode") {
  RunConfig c = config("1-x-y");
  c.mode = Mode::comb;
  const CommandResult r = cmd_solve(c);
  CHECK(r.exit_code == 0);
  const auto& d = r.document;
  CHECK(d["status"] == "ok");
  CHECK(d["input"]["variables"] == nlohmann::ordered_json::array({"x", "y"}));
  CHECK(d["input"]["mode"] == "comb");
  REQUIRE(d["minimal_points"].size() == 1);
  for (const auto& coord : d["minimal_points"][0]) CHECK(coord["value"][0].get<double>() == doctest::Approx(0.5));
  CHECK(d["asymptotics"]["formatted"] == "(0.25)^(-n)n^(-1/2)(0.56)");
  CHECK(d["asymptotics"]["terms"][0]["power"] == "-1/2");
  CHECK(d["completeness"]["critical_system"]["complete"] == true);
  CHECK(r.text.find("asymptotics: (0.25)^(-n)n^(-1/2)(0.56)") != std::string::npos);
  CHECK(r.text.find("0i") == std::string::npos);
}

TEST_CASE("digits and direction") {
  RunConfig c = config("1-x-y");
  c.mode = Mode::comb;
  c.digits = 5;
  c.direction = "1,2";
  const CommandResult r = cmd_solve(c);
  CHECK(r.exit_code == 0);
  // 1/(1-x-y) along (1,2): binom(3n, n) ~ (27/4)^n sqrt(3/(4 pi n)).
  CHECK(r.document["asymptotics"]["formatted"] == "(0.14815)^(-n)n^(-1/2)(0.4886)");
}

TEST_CASE("numerator is used") {
  RunConfig c = config("1-x-y");
  c.mode = Mode::comb;
  c.numer = "2";
  const CommandResult r = cmd_solve(c);
  CHECK(r.document["asymptotics"]["terms"][0]["constant"][0].get<double>() == doctest::Approx(1.1283791670955126));
}

TEST_CASE("failure status exits with 2") {
  RunConfig c = config("1+x+y");
  c.mode = Mode::comb;
  const CommandResult r = cmd_solve(c);
  CHECK(r.exit_code == 2);
  CHECK(r.document["status"] == "fail_no_candidate");
  CHECK(r.document["asymptotics"].is_null());
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(cmd_solve(config("1-x-(y")), ConfigError);
  CHECK_THROWS_AS(cmd_solve(config("x+y")), ConfigError);
  RunConfig bad_dir = config("1-x-y");
  bad_dir.direction = "1,2,3";
  CHECK_THROWS_AS(cmd_solve(bad_dir), ConfigError);
  RunConfig bad_num = config("1-x-y");
  bad_num.numer = "q";
  CHECK_THROWS_AS(cmd_solve(bad_num), ConfigError);
  RunConfig poly = config("1-x-y");
  poly.start_system = "polyhedral";
  CHECK_THROWS_AS(cmd_solve(poly), ConfigError);
  RunConfig tol = config("1-x-y");
  tol.tol = -1;
  CHECK_THROWS_AS(cmd_solve(tol), ConfigError);
  CHECK_THROWS(parse_mode("fast"));
}

TEST_CASE("modes round trip") {
  for (Mode m : {Mode::comb, Mode::general, Mode::approx_crit}) CHECK(parse_mode(to_string(m)) == m);
  CHECK(to_string(Mode::approx_crit) == "approx-crit");
}

TEST_CASE("oracle command") {
  RunConfig c = config("1-x-y");
  c.terms = 6;
  const CommandResult r = cmd_oracle(c);
  CHECK(r.exit_code == 0);
  CHECK(r.text.rfind("1 2 6 20 70 252\n", 0) == 0);
  RunConfig walk = config("1-z*(x^2*y+y+x*y^2+x)");
  walk.terms = 4;
  CHECK(cmd_oracle(walk).text.rfind("1 0 4 0\n", 0) == 0);
}

TEST_CASE("critical command") {
  const CommandResult r = cmd_critical(config("1-x*y-x*y^2-2*x^2*y"));
  CHECK(r.exit_code == 0);
  CHECK(r.text.find("extended\t9\t9\tmixed_volume\tyes") != std::string::npos);
}

TEST_CASE("shortest doubles") {
  CHECK(shortest_double(0.25) == "0.25");
  CHECK(shortest_double(0.1) == "0.1");
  CHECK(shortest_double(1e-39) == "1e-39");
}

}  // TEST_SUITE
