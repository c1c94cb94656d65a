#include "catch_amalgamated.hpp"

#include "mrnu/spectrum.hpp"

#include <cmath>
#include <random>

using namespace mrnu;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
PotentialSpec atomic_spec(double A, double alpha, double b, double mu = 1.0) {
  return PotentialSpec{A, alpha, b, mu, UnitSystem::atomic()};
}
} // namespace

TEST_CASE("a and Lambda", "[spectrum]") {
  CHECK_THAT(compute_a(0.75, 1), WithinRel(2.872281323269014330, 1e-15));
  CHECK_THAT(compute_lambda(0.75, 1), WithinRel(0.936140661634507165, 1e-15));
  CHECK_THAT(compute_lambda(1.5, 1), WithinRel(1.232050807568877294, 1e-15));
  for (int l = 0; l < 6; ++l) {
    CHECK(compute_lambda(0.0, l) == l);
    CHECK(compute_lambda(1.0, l) == l);
  }
  CHECK_THROWS_AS(compute_a(0.5, -1), SpecError);
}

TEST_CASE("closed-form levels of the atomic table", "[spectrum]") {
  const auto s = atomic_spec(80.0, 0.75, 40.0);
  const auto e = energy(s, {0, 1});
  REQUIRE(e.is_bound());
  CHECK_THAT(e.bound->epsilon, WithinRel(19.643164581376981756, 1e-14));
  CHECK_THAT(e.bound->energy, WithinAbs(-0.1205793, 5e-8));
  CHECK_THAT(e.bound->energy,
             WithinRel(-19.643164581376981756 * 19.643164581376981756 / 3200.0,
                       1e-14));
  CHECK_THAT(e.bound->lambda_cap, WithinRel(0.936140661634507165, 1e-15));

  // this entry is printed truncated rather than rounded (0.09002288...)
  const auto e2 = energy(atomic_spec(80.0, 1.5, 40.0), {0, 1});
  REQUIRE(e2.is_bound());
  CHECK(std::trunc(-e2.bound->energy * 1e7) == 900228.0);

  // 6g at 1/b = 0.025 confirms the label mapping (n=1, l=4)
  const auto e3 = energy(s, {1, 4});
  REQUIRE(e3.is_bound());
  CHECK_THAT(e3.bound->energy, WithinAbs(-0.0042428, 5e-8));

  const auto frozen = energy(s, {3, 1});
  REQUIRE(frozen.is_bound());
  CHECK_THAT(frozen.bound->epsilon, WithinRel(5.616433887258619, 1e-13));
}

TEST_CASE("below the critical coupling a level is not bound", "[spectrum]") {
  const auto r = energy(atomic_spec(3.9, 0.0, 1.0), {0, 1});
  CHECK_FALSE(r.is_bound());
  CHECK(critical_coupling(0.0, {0, 1}) == 4.0);
  // zero binding energy is not a bound state
  CHECK_FALSE(energy(atomic_spec(4.0, 0.0, 1.0), {0, 1}).is_bound());
}

TEST_CASE("quantization identity holds at the computed epsilon",
          "[spectrum][property]") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uA(1.0, 300.0), ua(-2.0, 3.0);
  std::uniform_int_distribution<int> un(0, 6), ul(0, 5);
  int bound_seen = 0;
  for (int i = 0; i < 500; ++i) {
    const auto s = atomic_spec(uA(rng), ua(rng), 10.0);
    const QuantumNumbers q{un(rng), ul(rng)};
    const auto eps = compute_epsilon(s, q);
    if (!eps)
      continue;
    ++bound_seen;
    const double a = compute_a(s.alpha, q.l);
    const double lhs = s.A - q.l * (q.l + 1.0) - (1.0 + a) * (0.5 + *eps);
    const double rhs = q.n * (1.0 + q.n + a + 2.0 * *eps);
    CHECK_THAT(lhs, WithinAbs(rhs, 1e-10));
  }
  CHECK(bound_seen > 200);
}

TEST_CASE("alpha in {0,1} reproduces the Hulthen levels", "[spectrum][property]") {
  for (double alpha : {0.0, 1.0})
    for (double A : {30.0, 80.0, 200.0})
      for (int n = 0; n <= 6; ++n)
        for (int l = 0; l <= 4; ++l) {
          const auto s = atomic_spec(A, alpha, 40.0);
          const auto e = energy(s, {n, l});
          const int N = n + l + 1;
          REQUIRE(e.is_bound() == (A > N * N));
          if (!e.is_bound())
            continue;
          CHECK_THAT(e.bound->energy, WithinRel(hulthen_energy(s, {n, l}), 1e-12));
          CHECK_THAT(e.bound->epsilon, WithinRel(hulthen_epsilon(A, {n, l}), 1e-12));
        }
  const auto s = atomic_spec(80.0, 0.0, 40.0);
  CHECK_THAT(hulthen_energy(s, {0, 1}), WithinRel(-0.1128125, 1e-14));
  CHECK_THAT(hulthen_energy(s, {0, 0}), WithinRel(-6241.0 / 12800.0, 1e-14));
}

TEST_CASE("Coulomb limit of a wide Hulthen well", "[spectrum]") {
  const double b = 1e6;
  const auto s = atomic_spec(2.0 * b, 0.0, b);
  for (int n = 0; n <= 3; ++n)
    for (int l = 0; l <= 3; ++l) {
      const QuantumNumbers q{n, l};
      const auto e = energy(s, q);
      REQUIRE(e.is_bound());
      const double coulomb = coulomb_limit_energy(1.0, q, 1.0);
      CHECK_THAT(coulomb, WithinRel(-0.5 / (q.principal() * q.principal()), 1e-15));
      CHECK_THAT(e.bound->energy, WithinAbs(coulomb, 1e-5));
    }
}

TEST_CASE("levels deepen with A and rise with n", "[spectrum][property]") {
  for (double alpha : {-0.5, 0.0, 0.75, 1.5})
    for (int l = 0; l <= 3; ++l) {
      double prev = 0.0;
      for (double A = 40.0; A <= 200.0; A += 10.0) {
        const auto e = energy(atomic_spec(A, alpha, 40.0), {0, l});
        REQUIRE(e.is_bound());
        CHECK(e.bound->energy < prev);
        prev = e.bound->energy;
      }
      prev = -INFINITY;
      for (int n = 0; n <= 5; ++n) {
        const auto e = energy(atomic_spec(150.0, alpha, 40.0), {n, l});
        REQUIRE(e.is_bound());
        CHECK(e.bound->energy > prev);
        prev = e.bound->energy;
      }
    }
}

TEST_CASE("critical coupling is the binding threshold", "[spectrum][property]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ua(-2.0, 3.0);
  std::uniform_int_distribution<int> un(0, 8), ul(0, 6);
  for (int i = 0; i < 100; ++i) {
    const double alpha = ua(rng);
    const QuantumNumbers q{un(rng), ul(rng)};
    const double ac = critical_coupling(alpha, q);
    const auto above = compute_epsilon(atomic_spec(ac + 1e-9, alpha, 5.0), q);
    const auto below = compute_epsilon(atomic_spec(ac - 1e-9, alpha, 5.0), q);
    CHECK(above.has_value());
    CHECK_FALSE(below.has_value());
  }
}

TEST_CASE("potential shape and its minimum", "[spectrum]") {
  const auto s = atomic_spec(80.0, 1.5, 40.0);
  CHECK_THROWS_AS(potential_value(s, 0.0), std::domain_error);
  CHECK(std::abs(potential_value(s, 4000.0)) < 1e-12 * spectroscopic_energy_scale(s));

  const auto m = potential_minimum(s);
  REQUIRE(m);
  CHECK_THAT(m->r0, WithinRel(0.743055422917416495, 1e-14));
  CHECK_THAT(m->r0, WithinRel(40.0 * std::log(1.01875), 1e-14));
  CHECK_THAT(m->v_min, WithinRel(-2.0 / 3.0, 1e-12));
  CHECK_THAT(printed_minimum_value(s), WithinRel(-4.0 / 3.0, 1e-14));

  // the minimum beats a fine scan of the neighbourhood
  double best = INFINITY, best_r = 0.0;
  for (int i = 1; i <= 20000; ++i) {
    const double r = 2.0 * m->r0 * i / 20000.0;
    const double v = potential_value(s, r);
    if (v < best) {
      best = v;
      best_r = r;
    }
  }
  CHECK(m->v_min <= best);
  CHECK_THAT(best_r, WithinAbs(m->r0, 2.0 * m->r0 / 20000.0));

  // no interior minimum unless alpha(alpha-1) > 0 and A > 0
  CHECK_FALSE(potential_minimum(atomic_spec(80.0, 0.5, 40.0)));
  CHECK_FALSE(potential_minimum(atomic_spec(80.0, 0.0, 40.0)));
  CHECK_FALSE(potential_minimum(atomic_spec(-5.0, 1.5, 40.0)));
}

TEST_CASE("finite-difference derivative of V vanishes at r0", "[spectrum]") {
  const auto s = atomic_spec(80.0, 1.5, 40.0);
  const auto m = potential_minimum(s);
  REQUIRE(m);
  const double h = 1e-5;
  const double d1 =
      (potential_value(s, m->r0 + h) - potential_value(s, m->r0 - h)) / (2 * h);
  CHECK(std::abs(d1) < 1e-6);
}

TEST_CASE("curvature at the minimum", "[spectrum]") {
  const auto s = atomic_spec(80.0, 1.5, 40.0);
  const auto c = potential_curvature(s);
  CHECK_THAT(c.finite_difference, WithinRel(2.4600925925925926, 1e-7));
  CHECK_THAT(c.printed_closed_form, WithinRel(4.9201851851851852, 1e-14));
  CHECK_THAT(c.ratio, WithinRel(0.5, 1e-7));

  // analytic: scale * 2c * y0^2 (1 + y0)^2 / b^2 at y0 = A / (2c)
  const double cc = 0.75, y0 = 80.0 / (2 * cc);
  const double analytic = 2.0 * cc * y0 * y0 * (1 + y0) * (1 + y0) / 1600.0 / 3200.0;
  CHECK_THAT(c.finite_difference, WithinRel(analytic, 1e-7));

  // stable under step halving
  for (double step : {4e-4, 2e-4, 5e-5}) {
    const auto other = potential_curvature(s, step);
    CHECK_THAT(other.finite_difference, WithinRel(c.finite_difference, 1e-6));
  }
  CHECK(c.finite_difference > 0.0);

  // the mirrored problem has the same curvature
  CHECK_THAT(potential_curvature(s.mirrored()).finite_difference,
             WithinRel(c.finite_difference, 1e-10));
  CHECK_THROWS_AS(potential_curvature(atomic_spec(80.0, 0.5, 40.0)), SpecError);
}
