#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "posys/errors.hpp"
#include "posys/oracle.hpp"
#include "posys/problem_io.hpp"
#include "posys/trinomials.hpp"

using namespace posys;

TEST_CASE("five solutions of the bundled two-trinomial system") {
  auto p = io::parse_problem(io::fixture("haas_like"));
  auto sols = oracle::multistart_solve(p);
  REQUIRE(sols.size() == 5);
  for (const auto& s : sols) {
    CHECK(s.residual <= 1e-10);
    CHECK(s.x[0] > 0);
    CHECK(s.x[1] > 0);
  }
}

TEST_CASE("no positive solutions of x + 1/x = 1") {
  RatMatrix a = RatMatrix::from_rows({{1, 1, -1}});
  RatMatrix b = RatMatrix::from_rows({{1, -1, 0}});
  auto p = framework::make_instance(a, b, RatVec{1, 1, 1});
  CHECK(oracle::multistart_solve(p, {-6, 6, 512, 3}).empty());
}

TEST_CASE("two solutions of the line-circle pair") {
  RatMatrix a = RatMatrix::from_rows({{1, 1, -1, 0, 0, 0}, {0, 0, 0, 1, 1, -1}});
  RatMatrix b(2, 6);
  b(0, 0) = 1;
  b(1, 1) = 1;
  b(0, 3) = 2;
  b(1, 4) = 2;
  auto p = framework::make_instance(a, b, RatVec{1, 1, 1, 8, 8, 5});
  auto sols = oracle::multistart_solve(p, {-6, 6, 1024, 5});
  REQUIRE(sols.size() == 2);
  CHECK(sols[0].x[0] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(sols[0].x[1] == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(sols[1].x[0] == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(sols[1].x[1] == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("fixed seed gives identical runs; non-square systems are rejected") {
  auto p = io::parse_problem(io::fixture("haas_like"));
  oracle::OracleConfig cfg;
  cfg.seed = 42;
  cfg.starts = 1500;
  auto a = oracle::multistart_solve(p, cfg);
  auto b = oracle::multistart_solve(p, cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);  // bitwise reproducible
  }
  cfg.seed = 43;
  CHECK(oracle::multistart_solve(p, cfg).size() == a.size());

  auto under = io::parse_problem(io::fixture("two_component"));
  under.coeff = RatMatrix::from_rows({{-1, 1, -1, 0}});
  CHECK_THROWS_AS(oracle::multistart_solve(under), NonSquare);
}

TEST_CASE("grid scan: crossings, tangencies, and the resolution gate") {
  auto tangent = [](double l) { return l * (1 - l) - 0.25; };
  auto gc = oracle::grid_count(tangent, 0, 1, 1e-4);
  CHECK(gc.sign_changes == 0);
  REQUIRE(gc.tangential.size() == 1);
  CHECK(gc.tangential[0] == doctest::Approx(0.5).epsilon(1e-5));

  auto linear = [](double l) { return l - 0.5; };
  auto gl = oracle::grid_count(linear, 0, 1, 1e-4);
  CHECK(gl.sign_changes == 1);
  REQUIRE(gl.roots.size() == 1);
  CHECK(gl.roots[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gl.tangential.empty());

  CHECK_THROWS_AS(oracle::grid_count(linear, 0, 1, 1e-2), std::invalid_argument);
}

TEST_CASE("grid scan counts the five crossings of the reduced equation") {
  auto p = io::parse_problem(io::fixture("haas_like"));
  auto tp = trinomials::two_trinomial_standardize(p);
  auto f = [&](double l) {
    return tp.gamma1 * signchar::sc_eval(tp.first, l) +
           tp.gamma2 * signchar::sc_eval(tp.second, l) - 1;
  };
  auto gc = oracle::grid_count(f, 0, 1, 1e-4);
  CHECK(gc.sign_changes == 5);
  CHECK(gc.roots.size() == 5);
  for (double r : gc.roots) CHECK(std::abs(f(r)) <= 1e-9);
}
