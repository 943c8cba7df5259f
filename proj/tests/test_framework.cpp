#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "posys/errors.hpp"
#include "posys/framework.hpp"
#include "posys/linalg.hpp"
#include "posys/oracle.hpp"

using namespace posys;
using framework::ProblemInstance;

namespace {

// Two overlapping trinomials in four variables (two-component system).
ProblemInstance two_component(RatVec k = {1, 1, 1, 1}) {
  RatMatrix a = RatMatrix::from_rows({{-1, 1, -1, 0}, {0, -1, 1, 1}});
  RatMatrix b = RatMatrix::from_rows({{1, 0, 1, 0}, {0, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}});
  return framework::make_instance(a, b, std::move(k));
}

// Univariate trinomial c1 x^{b1} + c2 x^{b2} - 1 = 0.
ProblemInstance trinomial(long b1, long b2, RatVec c = {1, 1, 1}) {
  RatMatrix a = RatMatrix::from_rows({{1, 1, -1}});
  RatMatrix b(1, 3);
  b(0, 0) = b1;
  b(0, 1) = b2;
  return framework::make_instance(a, b, std::move(c));
}

ProblemInstance two_trinomials_3d() {
  RatMatrix a = RatMatrix::from_rows({{1, 1, -1, 0, 0, 0}, {0, 0, 0, 1, 1, -1}});
  RatMatrix b = RatMatrix::from_rows(
      {{1, 0, 0, 0, 1, 0}, {0, 1, 0, 0, 2, 0}, {0, 0, 0, 1, -2, 0}});
  return framework::make_instance(a, b, RatVec{2, 1, 1, 1, 1, 1});
}

}  // namespace

TEST_CASE("auxiliary matrices of the two-component system match the displayed ones") {
  auto p = two_component();
  auto aux = framework::build_aux(p);
  RatMatrix diff_expected =
      RatMatrix::from_rows({{1, 0, 1}, {0, 1, 0}, {0, 1, 0}, {-1, -1, 0}});
  CHECK(aux.diff_rat.same_entries(diff_expected));
  CHECK(aux.dependency == 0);
  REQUIRE(aux.free_directions_rat.size() == 1);
  CHECK(aux.free_directions_rat[0] == RatVec{0, 1, -1, 0});
  RatMatrix geninv_expected = RatMatrix::from_rows({{0, -1, 0, -1}, {0, 1, 0, 0}, {1, 1, 0, 1}});
  CHECK(aux.geninv_rat.same_entries(geninv_expected));
}

TEST_CASE("stacked exponent matrix of the univariate trinomial") {
  auto p = trinomial(2, 1);
  auto aux = framework::build_aux(p);
  CHECK(aux.expo_prime_rat.same_entries(RatMatrix::from_rows({{2, 1, 0}, {1, 1, 1}})));
  CHECK(aux.dependency == 1);
  CHECK(aux.gale_lifted_rat.col(0) == RatVec{1, -2, 1});
}

TEST_CASE("one monomial per class: the difference matrix has no columns") {
  RatMatrix a(0, 2);
  RatMatrix b = RatMatrix::from_rows({{1, -1}});
  geometry::ClassPartition part;
  part.classes = {{0}, {1}};
  auto p = framework::make_instance(a, b, RatVec{1, 1}, part);
  auto aux = framework::build_aux(p);
  CHECK(aux.diff_rat.cols() == 0);
  CHECK(aux.dependency == 0);
}

TEST_CASE("classification of the running examples") {
  auto cl1 = framework::classify(two_component());
  CHECK(cl1.dependency == 0);
  CHECK(cl1.dim_difference == 3);
  CHECK(cl1.kind == framework::SystemCase::DependencyZeroSubspace);

  auto cl2 = framework::classify(trinomial(2, 1));
  CHECK(cl2.dependency == 1);
  CHECK(cl2.num_classes == 1);
  CHECK(cl2.num_monomials == 3);
  CHECK(cl2.num_variables == 1);
  CHECK(cl2.kind == framework::SystemCase::DependencyPositive);

  // One trinomial and one 4-nomial in two variables: d = t - 1 = 3.
  RatMatrix a = RatMatrix::from_rows({{1, 1, -1, 0, 0, 0, 0}, {0, 0, 0, 1, 1, 1, -1}});
  RatMatrix b = RatMatrix::from_rows({{1, 0, 0, 1, 3, 2, 0}, {0, 1, 0, 2, 1, -1, 0}});
  auto cl3 = framework::classify(framework::make_instance(a, b, RatVec(7, Rat(1))));
  CHECK(cl3.dependency == 3);
  CHECK(cl3.generic);

  // Identity d = m - l - dim L, with the rank computed independently.
  auto aux3 = framework::build_aux(framework::make_instance(a, b, RatVec(7, Rat(1))));
  CHECK(linalg::rank(aux3.diff_rat) == cl3.dim_difference);
}

TEST_CASE("dependency conditions evaluate the displayed monomial equation") {
  auto p = trinomial(2, 1);
  auto aux = framework::build_aux(p);
  auto conds = framework::dependency_conditions(aux, p.params);
  REQUIRE(conds.size() == 1);
  // Condition: lambda (1-lambda)^{-2} = c1 c2^{-2} in the form z.(ln y - ln c).
  double lambda = 0.3;
  RealVec y = {lambda, 1 - lambda, 1};
  double res = framework::condition_residual(conds, y);
  double direct = std::log(lambda) - 2 * std::log(1 - lambda);  // target ln(1) = 0
  CHECK(res == doctest::Approx(std::abs(direct)).epsilon(1e-12));

  auto p0 = two_component();
  auto aux0 = framework::build_aux(p0);
  CHECK(framework::dependency_conditions(aux0, p0.params).empty());

  // Three-variable pair of trinomials: the single condition is
  // l1^{b1} (1-l1)^{b2} l2^{b3} (1-l2)^{-1} = c*.
  auto p3 = two_trinomials_3d();
  auto aux3 = framework::build_aux(p3);
  auto conds3 = framework::dependency_conditions(aux3, p3.params);
  REQUIRE(conds3.size() == 1);
  double l1 = 0.4, l2 = 0.7;
  RealVec y3 = {l1, 1 - l1, 1, l2, 1 - l2, 1};
  double cstar = 2;  // c = (2,1,1,1,1,1) with b = (1,2,-2)
  double direct3 = std::log(l1) + 2 * std::log(1 - l1) - 2 * std::log(l2) -
                   std::log(1 - l2) - std::log(cstar);
  CHECK(framework::condition_residual(conds3, y3) ==
        doctest::Approx(std::abs(direct3)).epsilon(1e-12));
}

TEST_CASE("lift: displayed closed form at lambda = 1/2") {
  auto p = two_component();
  auto aux = framework::build_aux(p);
  RealVec y = {0.5, 1, 0.5, 0.5};
  RealVec x = framework::lift_solution(y, aux, p.params);
  REQUIRE(x.size() == 4);
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(x[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(x[3] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(framework::residual(p, x) <= 1e-12);
}

TEST_CASE("lift: y = c gives the all-ones solution") {
  auto p = two_component(RatVec{Rat(1, 2), 1, Rat(1, 2), Rat(1, 2)});
  auto aux = framework::build_aux(p);
  RealVec y = {0.5, 1, 0.5, 0.5};
  RealVec x = framework::lift_solution(y, aux, p.params);
  for (double v : x) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lift: trinomial condition root lifts to the golden ratio conjugate") {
  auto p = trinomial(2, 1);
  auto aux = framework::build_aux(p);
  double lambda = (3 - std::sqrt(5.0)) / 2;  // root of l = (1-l)^2
  RealVec x = framework::lift_solution({lambda, 1 - lambda, 1}, aux, p.params);
  CHECK(x[0] == doctest::Approx((std::sqrt(5.0) - 1) / 2).epsilon(1e-10));

  CHECK_THROWS_AS(framework::lift_solution({0.9, 0.1, 1}, aux, p.params), ConditionViolated);
}

TEST_CASE("explicit parametrization reproduces the closed-form family") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> uni(0.05, 0.95), pos(0.2, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    RatVec k;
    for (int i = 0; i < 4; ++i) k.push_back(rat_from_double(pos(rng)));
    auto p = two_component(k);
    auto sp = framework::solution_set_d0(p);
    double lambda = uni(rng), tau = pos(rng);
    RealVec x = sp.evaluate({{lambda, 1 - lambda}}, {std::log(tau)});

    double k1 = to_double(k[0]), k2 = to_double(k[1]), k3 = to_double(k[2]), k4 = to_double(k[3]);
    double r = lambda / (1 - lambda);
    RealVec expected = {k4 / k3 * r, k1 * k4 / (k2 * k3) * r / (1 - lambda) * tau, 1 / tau,
                        k1 / k3 * r};
    for (int i = 0; i < 4; ++i) CHECK(x[i] == doctest::Approx(expected[i]).epsilon(1e-9));
    CHECK(framework::residual(p, x) <= 1e-8);
  }
}

TEST_CASE("square dependency-zero systems have a unique solution") {
  // Binomial c1 x^2 - c2 = 0.
  RatMatrix a = RatMatrix::from_rows({{1, -1}});
  RatMatrix b = RatMatrix::from_rows({{2, 0}});
  auto p = framework::make_instance(a, b, RatVec{1, 5});
  auto sp = framework::solution_set_d0(p);
  CHECK(sp.unique);
  RealVec x = sp.evaluate({{1.0}}, {});
  CHECK(x[0] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));

  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> pos(0.2, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    RatVec c = {rat_from_double(pos(rng)), rat_from_double(pos(rng))};
    auto pi = framework::make_instance(a, b, c);
    auto sols = oracle::multistart_solve(pi, {-6, 6, 256, 7});
    CHECK(sols.size() == 1);
    CHECK(sols[0].x[0] ==
          doctest::Approx(std::sqrt(to_double(c[1]) / to_double(c[0]))).epsilon(1e-8));
  }
}

TEST_CASE("binomial normal form") {
  auto part1 = geometry::ClassPartition::single(2);
  RatMatrix f1 = framework::binomial_form(RatVec{1, 1}, part1);
  CHECK(f1.same_entries(RatMatrix::from_rows({{1, -1}})));

  auto part2 = geometry::ClassPartition::single(3);
  RatMatrix f2 = framework::binomial_form(RatVec{2, 1, 1}, part2);
  CHECK(f2.same_entries(RatMatrix::from_rows({{Rat(1, 2), 0, -1}, {0, 1, -1}})));

  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> num(1, 9);
  for (int trial = 0; trial < 20; ++trial) {
    RatVec ybar;
    for (int i = 0; i < 5; ++i) ybar.push_back(Rat(num(rng), num(rng)));
    geometry::ClassPartition part;
    part.classes = {{0, 1}, {2, 3, 4}};
    RatMatrix form = framework::binomial_form(ybar, part);
    RatVec prod = form * ybar;
    for (const Rat& x : prod) CHECK(x == 0);
    for (std::size_t i = 0; i < form.rows(); ++i) {
      int nonzeros = 0;
      for (std::size_t j = 0; j < form.cols(); ++j) nonzeros += form(i, j) != 0;
      CHECK(nonzeros == 2);
    }
  }
}

TEST_CASE("decompose splits disjoint trinomials and multiplies counts") {
  RatMatrix a = RatMatrix::from_rows({{1, 1, -1, 0, 0, 0}, {0, 0, 0, 1, 1, -1}});
  RatMatrix b = RatMatrix::from_rows({{2, 1, 0, 0, 0, 0}, {0, 0, 0, 3, 1, 0}});
  auto p = framework::make_instance(a, b, RatVec(6, Rat(1)));
  auto parts = framework::decompose(p);
  REQUIRE(parts.size() == 2);
  for (const auto& sub : parts) {
    CHECK(sub.num_classes() == 1);
    CHECK(sub.num_monomials() == 3);
  }
  // Each factor is a one-solution trinomial (positive exponents), so the
  // full system has exactly one solution.
  auto sols = oracle::multistart_solve(p, {-6, 6, 512, 11});
  CHECK(sols.size() == 1);

  auto single = framework::decompose(trinomial(2, 1));
  CHECK(single.size() == 1);

  CHECK_THROWS_AS(framework::decompose(two_trinomials_3d()), NotDecomposable);
}

TEST_CASE("uniqueness certificates") {
  auto good = framework::certify_uniqueness(trinomial(2, 1));
  CHECK(good.certified);
  CHECK_FALSE(good.witness.has_value());

  auto bad = framework::certify_uniqueness(two_component());
  CHECK_FALSE(bad.certified);
  REQUIRE(bad.witness.has_value());
  CHECK_FALSE(bad.witness->is_zero());

  // Trivially certified: zero-dimensional ker A'.
  RatMatrix a = RatMatrix::from_rows({{1, -1}});
  RatMatrix b = RatMatrix::from_rows({{2, 0}});
  auto p = framework::make_instance(a, b, RatVec{1, 5});
  CHECK(framework::certify_uniqueness(p).certified);
}

TEST_CASE("unique existence certificates") {
  CHECK(framework::certify_unique_existence(trinomial(2, 1)));
  CHECK(framework::certify_unique_existence(trinomial(1, 3)));
  CHECK_FALSE(framework::certify_unique_existence(trinomial(2, -1)));
  CHECK_FALSE(framework::certify_unique_existence(trinomial(-3, 1)));
  // Dimension mismatch: d = 0 but ker A' is one-dimensional.
  CHECK_FALSE(framework::certify_unique_existence(two_component()));
}

TEST_CASE("scaled residual") {
  auto p = trinomial(2, 1);
  CHECK(framework::residual(p, {1.0}) == doctest::Approx(1.0));  // |1 + 1 - 1| / 1
  double root = (std::sqrt(5.0) - 1) / 2;
  CHECK(framework::residual(p, {root}) <= 1e-12);
}

TEST_CASE("round trip: lifted points plus free directions solve the system") {
  auto p = two_component(RatVec{2, 3, Rat(1, 2), 1});
  auto sp = framework::solution_set_d0(p);
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> uni(0.02, 0.98), mu(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    double lambda = uni(rng);
    RealVec x = sp.evaluate({{lambda, 1 - lambda}}, {mu(rng)});
    CHECK(framework::residual(p, x) <= 1e-8);
  }
}

TEST_CASE("completeness: oracle solutions map back onto the polytope") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> expo(1, 6);
  std::uniform_real_distribution<double> pos(0.3, 3.0);
  for (int trial = 0; trial < 25; ++trial) {
    long b1 = expo(rng), b2 = expo(rng);
    if (b1 == b2) continue;
    RatVec c = {rat_from_double(pos(rng)), rat_from_double(pos(rng)), 1};
    auto p = trinomial(b1, b2, c);
    auto aux = framework::build_aux(p);
    auto conds = framework::dependency_conditions(aux, p.params);
    auto geo = geometry::coefficient_geometry(p.coeff, p.partition);
    auto sols = oracle::multistart_solve(p, {-6, 6, 512, 43});
    REQUIRE(!sols.empty());
    for (const auto& sol : sols) {
      // y = (c o x^B) normalized per class by u.
      RealVec w(3);
      for (int j = 0; j < 3; ++j)
        w[j] = to_double(p.params[j]) * std::pow(sol.x[0], to_double(p.expo_rat(0, j)));
      double scale = 0;
      for (int j = 0; j < 3; ++j) scale += to_double(geo.classes[0].u[j]) * w[j];
      RealVec y(3);
      for (int j = 0; j < 3; ++j) y[j] = w[j] / scale;
      for (double v : y) CHECK(v > 0);
      CHECK(framework::condition_residual(conds, y) <= 1e-6);
      // ... and lifting y returns the solution.
      RealVec x2 = framework::lift_solution(y, aux, p.params, 1e-6);
      CHECK(x2[0] == doctest::Approx(sol.x[0]).epsilon(1e-7));
    }
  }
}

TEST_CASE("completeness across two classes: oracle solutions map back") {
  // Two coupled trinomial classes in two variables; full-rank difference
  // subspace, so the lift reproduces each solution exactly.
  RatMatrix a = RatMatrix::from_rows({{1, 1, -1, 0, 0, 0}, {0, 0, 0, 1, 1, -1}});
  RatMatrix b = RatMatrix::from_rows({{5, 0, 0, -1, 1, 0}, {-1, 1, 0, 5, 0, 0}});
  Rat av(174, 125);
  auto p = framework::make_instance(a, b, RatVec{1, av, 1, 1, av, 1});
  auto aux = framework::build_aux(p);
  auto conds = framework::dependency_conditions(aux, p.params);
  auto geo = geometry::coefficient_geometry(p.coeff, p.partition);
  auto sols = oracle::multistart_solve(p, {-6, 6, 2048, 17});
  REQUIRE(sols.size() == 5);
  for (const auto& sol : sols) {
    RealVec y(6);
    for (std::size_t ci = 0; ci < 2; ++ci) {
      const auto& cls = p.partition.classes[ci];
      RealVec w(cls.size());
      for (std::size_t j = 0; j < cls.size(); ++j) {
        double s = std::log(to_double(p.params[cls[j]]));
        for (std::size_t k = 0; k < 2; ++k) s += p.expo(k, cls[j]) * std::log(sol.x[k]);
        w[j] = std::exp(s);
      }
      double scale = 0;
      for (std::size_t j = 0; j < cls.size(); ++j) scale += to_double(geo.classes[ci].u[j]) * w[j];
      for (std::size_t j = 0; j < cls.size(); ++j) {
        y[cls[j]] = w[j] / scale;
        CHECK(y[cls[j]] > 0);
      }
    }
    CHECK(framework::condition_residual(conds, y) <= 1e-6);
    RealVec back = framework::lift_solution(y, aux, p.params, 1e-6);
    CHECK(back[0] == doctest::Approx(sol.x[0]).epsilon(1e-7));
    CHECK(back[1] == doctest::Approx(sol.x[1]).epsilon(1e-7));
  }
}

TEST_CASE("lift is invariant under the choice of generalized inverse") {
  auto p = two_component(RatVec{1, 2, 3, 4});
  auto aux = framework::build_aux(p);

  // A second generalized inverse from a row-permuted elimination.
  std::vector<std::size_t> perm = {3, 2, 1, 0};
  RatMatrix permuted = aux.diff_rat.select_rows(perm);
  RatMatrix star2_p = linalg::generalized_inverse(permuted);
  RatMatrix star2(3, 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 4; ++j) star2(i, perm[j]) = star2_p(i, j);
  RatMatrix mmm = aux.diff_rat * star2 * aux.diff_rat;
  REQUIRE(mmm.same_entries(aux.diff_rat));
  CHECK_FALSE(star2.same_entries(aux.geninv_rat));

  framework::AuxMatrices aux2 = aux;
  aux2.geninv_rat = star2;
  aux2.lift_rat = aux.incidence * star2;
  aux2.lift = to_real(aux2.lift_rat);

  RealVec y = {0.25, 1, 0.75, 0.25};
  RealVec x1 = framework::lift_solution(y, aux, p.params);
  RealVec x2 = framework::lift_solution(y, aux2, p.params);
  CHECK(framework::residual(p, x1) <= 1e-8);
  CHECK(framework::residual(p, x2) <= 1e-8);
  // The two lifts differ by an element of e^{L-perp}: M^T (ln x1 - ln x2) = 0.
  RealVec diff_log(4);
  for (int i = 0; i < 4; ++i) diff_log[i] = std::log(x1[i]) - std::log(x2[i]);
  RealMatrix mt = to_real(aux.diff_rat).transposed();
  RealVec proj = mt * diff_log;
  for (double v : proj) CHECK(std::abs(v) <= 1e-9);
}

TEST_CASE("polytope membership along ker A' is cut out by nonnegativity") {
  auto p = two_component();
  RatMatrix aprime = RatMatrix::vstack(
      p.coeff, RatMatrix::from_rows({{1, 1, 1, 1}}));
  auto kernel = linalg::kernel_basis(aprime);
  REQUIRE(kernel.size() == 1);
  // ybar in P with the standard simplex normalization J y = 1.
  RatVec ybar = {Rat(1, 5), Rat(2, 5), Rat(1, 5), Rat(1, 5)};
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<int> num(-20, 20);
  for (int trial = 0; trial < 100; ++trial) {
    Rat t(num(rng), 10);
    RatVec y(4);
    bool nonneg = true;
    for (int j = 0; j < 4; ++j) {
      y[j] = ybar[j] + t * kernel[0][j];
      nonneg = nonneg && y[j] >= 0;
    }
    // Membership in P: A y = 0 and J y = 1 hold automatically; the orthant
    // decides.
    RatVec ay = p.coeff * y;
    Rat sum = 0;
    for (const Rat& v : y) sum += v;
    bool in_p = nonneg;
    for (const Rat& v : ay) in_p = in_p && v == 0;
    in_p = in_p && sum == 1;
    CHECK(in_p == nonneg);
    if (nonneg) {
      for (const Rat& v : ay) CHECK(v == 0);
      CHECK(sum == 1);
    }
  }
}

TEST_CASE("certificates require exact exponents and bounded dimension") {
  RealMatrix b = RealMatrix::from_rows({{1.5, 0.25, 0}});
  auto p = framework::make_instance(RatMatrix::from_rows({{1, 1, -1}}), b, RatVec{1, 1, 1});
  CHECK_THROWS_AS(framework::certify_uniqueness(p), std::invalid_argument);
}
