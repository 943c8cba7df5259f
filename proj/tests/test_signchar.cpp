#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "posys/errors.hpp"
#include "posys/signchar.hpp"

using namespace posys;
using signchar::RootBranch;
using signchar::SignCharParams;

TEST_CASE("evaluation and derivative") {
  CHECK(signchar::sc_eval({1, 2}, 1.0 / 3) == doctest::Approx(4.0 / 27).epsilon(1e-14));
  CHECK(signchar::sc_eval({0, 0}, 0.1) == 1.0);
  CHECK(signchar::sc_eval({0, 0}, 0.9) == 1.0);
  CHECK(signchar::sc_deriv({1, 1}, 0.5) == doctest::Approx(0.0));
  CHECK_THROWS_AS(signchar::sc_eval({1, 1}, 1.5), DomainError);
  CHECK_THROWS_AS(signchar::sc_deriv({1, 1}, 0.0), DomainError);
}

TEST_CASE("endpoint behavior characterizes the parameter signs") {
  const double lo = 1e-8, hi = 1 - 1e-8;
  CHECK(signchar::sc_eval({2, 3}, lo) < 1e-14);
  CHECK(signchar::sc_eval({2, 3}, hi) < 1e-14);
  CHECK(signchar::sc_eval({-2, -3}, lo) > 1e14);
  CHECK(signchar::sc_eval({-2, -3}, hi) > 1e14);
  CHECK(signchar::sc_eval({2, -3}, lo) < 1e-14);   // increasing: 0 to inf
  CHECK(signchar::sc_eval({2, -3}, hi) > 1e14);
  CHECK(signchar::sc_eval({-2, 3}, lo) > 1e14);    // decreasing: inf to 0
  CHECK(signchar::sc_eval({-2, 3}, hi) < 1e-14);
}

TEST_CASE("extrema with exact values for integer parameters") {
  auto mx = signchar::sc_extremum({1, 2});
  CHECK(mx.kind == signchar::ExtremumKind::Max);
  CHECK(mx.location == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(mx.value == doctest::Approx(4.0 / 27).epsilon(1e-14));
  REQUIRE(mx.exact_value.has_value());
  CHECK(*mx.exact_value == Rat(4, 27));

  auto mn = signchar::sc_extremum({-1, -2});
  CHECK(mn.kind == signchar::ExtremumKind::Min);
  REQUIRE(mn.exact_value.has_value());
  CHECK(*mn.exact_value == Rat(27, 4));

  CHECK(signchar::sc_extremum({1, -1}).kind == signchar::ExtremumKind::None);
  CHECK(signchar::sc_extremum({0, 0}).kind == signchar::ExtremumKind::None);
}

TEST_CASE("roots of monotone and peaked functions") {
  CHECK(signchar::sc_root({1, -1}, 1.0, RootBranch::Whole) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(signchar::sc_root({1, 1}, 0.25, RootBranch::Minus) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(signchar::sc_root({1, 1}, 0.25, RootBranch::Plus) == doctest::Approx(0.5).epsilon(1e-12));

  // s_{1,2}(l) = 1/8 on the rising branch: 8l^3 - 16l^2 + 8l - 1 factors as
  // (2l - 1)(4l^2 - 6l + 1), so the branch root is (3 - sqrt(5))/4.
  double r = signchar::sc_root({1, 2}, 0.125, RootBranch::Minus);
  CHECK(r == doctest::Approx((3 - std::sqrt(5.0)) / 4).epsilon(1e-12));
  CHECK(signchar::sc_eval({1, 2}, r) == doctest::Approx(0.125).epsilon(1e-12));

  CHECK_THROWS_AS(signchar::sc_root({1, 2}, 0.2, RootBranch::Minus), OutOfRange);
  CHECK_THROWS_AS(signchar::sc_root({-1, -2}, 1.0, RootBranch::Plus), OutOfRange);
  CHECK_THROWS_AS(signchar::sc_root({1, 1}, 1.0, RootBranch::Whole), DomainError);
}

TEST_CASE("root then eval is the identity on random draws") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> expo(0.2, 8.0), pos(0.05, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    // Whole branch.
    SignCharParams w{expo(rng), -expo(rng)};
    double lam = pos(rng);
    double y = signchar::sc_eval(w, lam);
    CHECK(signchar::sc_root(w, y, RootBranch::Whole) == doctest::Approx(lam).epsilon(1e-10));

    // Minus / plus branches of a peaked function.
    SignCharParams p{expo(rng), expo(rng)};
    double lstar = p.alpha / (p.alpha + p.beta);
    double lminus = lstar * pos(rng);
    double yv = signchar::sc_eval(p, lminus);
    CHECK(signchar::sc_root(p, yv, RootBranch::Minus) == doctest::Approx(lminus).epsilon(1e-10));
    double lplus = lstar + (1 - lstar) * pos(rng);
    yv = signchar::sc_eval(p, lplus);
    CHECK(signchar::sc_root(p, yv, RootBranch::Plus) == doctest::Approx(lplus).epsilon(1e-10));
  }
}

TEST_CASE("trinomial solution formula") {
  auto golden = signchar::trinomial_solve(2, 1, 1, 1);
  REQUIRE(golden.size() == 1);
  CHECK(golden[0].x == doctest::Approx((std::sqrt(5.0) - 1) / 2).epsilon(1e-12));
  CHECK(golden[0].multiplicity == 1);

  // 0.5 x + 0.5 / x = 1 is (x - 1)^2 = 0: a double root.
  auto dbl = signchar::trinomial_solve(1, -1, 0.5, 0.5);
  REQUIRE(dbl.size() == 1);
  CHECK(dbl[0].x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dbl[0].multiplicity == 2);

  // x + 1/x = 1 has no positive solutions.
  CHECK(signchar::trinomial_solve(1, -1, 1, 1).empty());
  CHECK(signchar::trinomial_discriminant(1, -1, 1, 1) == doctest::Approx(0.25 - 1.0));

  CHECK_THROWS_AS(signchar::trinomial_solve(2, 2, 1, 1), DegenerateExponents);
  CHECK_THROWS_AS(signchar::trinomial_solve(0, 1, 1, 1), DegenerateExponents);
}

TEST_CASE("trinomial root count against a grid oracle") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> expo(-10, 10), logc(-2, 2);
  int done = 0;
  while (done < 100) {
    double b1 = expo(rng), b2 = expo(rng);
    if (std::abs(b1) < 0.05 || std::abs(b2) < 0.05 || std::abs(b1 - b2) < 0.05) continue;
    double c1 = std::exp(logc(rng)), c2 = std::exp(logc(rng));
    ++done;
    auto roots = signchar::trinomial_solve(b1, b2, c1, c2);
    // Oracle: scan the polytope condition in logit coordinates, which
    // resolves roots arbitrarily close to the interval ends. The span covers
    // |ln target| up to (2 + 2 |b1/b2|).
    double b = b1 / b2;
    double target = std::log(c1) - b * std::log(c2);
    int crossings = 0, last = 0;
    const int grid = 100000;
    const double span = 500;
    for (int i = 1; i < grid; ++i) {
      double u = -span + 2 * span * static_cast<double>(i) / grid;
      double log_lam = u <= 0 ? u - std::log1p(std::exp(u)) : -std::log1p(std::exp(-u));
      double log_one_minus = u <= 0 ? -std::log1p(std::exp(u)) : -u - std::log1p(std::exp(-u));
      double v = log_lam - b * log_one_minus - target;
      int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
      if (s != 0 && last != 0 && s != last) ++crossings;
      if (s != 0) last = s;
    }
    std::size_t expected = static_cast<std::size_t>(crossings);
    // Count distinct roots (a double root shows up as zero crossings).
    std::size_t distinct = 0;
    for (const auto& r : roots) distinct += r.multiplicity == 2 ? 0 : 1;
    CHECK(distinct == expected);
    // Laguerre consistency: at most one sign change for b > 0, two for b < 0.
    std::size_t with_mult = 0;
    for (const auto& r : roots) with_mult += r.multiplicity;
    CHECK(with_mult <= (b > 0 ? 1u : 2u));
  }
}

TEST_CASE("wronskian forms: the displayed linear factor") {
  auto w1 = signchar::wronskian_signchar({{1, 2}});
  CHECK(w1.order == 0);
  CHECK(w1.poly == polyroots::RatPoly{1});

  auto w2 = signchar::wronskian_signchar({{1, 2}, {3, 5}});
  CHECK(w2.order == 1);
  // p1 = (a2 - a1)(1 - l) - (b2 - b1) l = 2 - 5 l
  CHECK(w2.poly == polyroots::RatPoly{2, -5});
  CHECK(w2.alpha_shift == doctest::Approx(3.0));
  CHECK(w2.beta_shift == doctest::Approx(6.0));
}

TEST_CASE("wronskian of three functions against a finite-difference oracle") {
  std::vector<SignCharParams> params = {{0, 0}, {1, 2}, {3, 1}};
  auto w = signchar::wronskian_signchar(params);
  CHECK(w.order == 3);
  for (double lam : {0.2, 0.5, 0.8}) {
    // Numeric 3x3 Wronskian determinant with finite-difference derivatives.
    const double h = 1e-5;
    auto row = [&](const SignCharParams& p) {
      double f0 = signchar::sc_eval(p, lam);
      double fp = (signchar::sc_eval(p, lam + h) - signchar::sc_eval(p, lam - h)) / (2 * h);
      double fpp = (signchar::sc_eval(p, lam + h) - 2 * f0 + signchar::sc_eval(p, lam - h)) / (h * h);
      return std::array<double, 3>{f0, fp, fpp};
    };
    auto r1 = row(params[0]), r2 = row(params[1]), r3 = row(params[2]);
    double det = r1[0] * (r2[1] * r3[2] - r2[2] * r3[1]) -
                 r2[0] * (r1[1] * r3[2] - r1[2] * r3[1]) +
                 r3[0] * (r1[1] * r2[2] - r1[2] * r2[1]);
    double symbolic = signchar::sc_eval({w.alpha_shift, w.beta_shift}, lam) *
                      polyroots::eval(w.poly, lam);
    CHECK(det == doctest::Approx(symbolic).epsilon(1e-6));
  }
}

TEST_CASE("wronskian cubic edge coefficients match the stated leading terms") {
  // For W(1, s1, s2) the cubic has value -a1 a2 (a1 - a2) at 0 and
  // b1 b2 (b1 - b2) at 1.
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> e(-4, 4);
  for (int trial = 0; trial < 25; ++trial) {
    Rat a1 = e(rng), b1 = e(rng), a2 = e(rng), b2 = e(rng);
    if ((a1 == a2 && b1 == b2) || (a1 == 0 && b1 == 0) || (a2 == 0 && b2 == 0)) continue;
    auto w = signchar::wronskian_signchar_exact({{0, 0}, {a1, b1}, {a2, b2}});
    CHECK(polyroots::eval(w.poly, Rat(0)) == -a1 * a2 * (a1 - a2));
    CHECK(polyroots::eval(w.poly, Rat(1)) == b1 * b2 * (b1 - b2));
  }
  CHECK_THROWS_AS(signchar::wronskian_signchar({{1, 1}, {2, 2}, {3, 3}, {4, 4}}), Unsupported);
}

TEST_CASE("refined Rolle bounds") {
  signchar::EndpointData both_pos{1, 1, std::nullopt};
  CHECK(signchar::rolle_refined_bound(2, both_pos) == 2);

  signchar::EndpointData full{1, 1, 1};
  CHECK(signchar::rolle_refined_bound(3, full) == 2);

  CHECK(signchar::rolle_refined_bound(3, {}) == 4);
  CHECK(signchar::rolle_refined_bound(2, {1, -1, 1}) == 1);
  CHECK(signchar::rolle_refined_bound(0, {}) == 1);
}

TEST_CASE("zero-count combination bound") {
  CHECK(signchar::koiran_bound({0, 1, 3}) == 6);
  CHECK(signchar::koiran_bound({0, 0}) == 1);
  CHECK(signchar::koiran_bound({0, 1, 3, 6, 10}) == 28);
  CHECK(signchar::koiran_bound({2}) == 2);
}
