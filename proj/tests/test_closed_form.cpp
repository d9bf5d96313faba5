#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mgl/closed_form.hpp"
#include "mgl/measure.hpp"
#include "mgl/operator_calculus.hpp"

using namespace mgl;
using std::numbers::pi;

namespace {

double angular_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 2.0 * pi);
  return std::min(d, 2.0 * pi - d);
}

double line_rhs(const TanLineProblem& p, double c) {
  return -2.0 * c * p.beta + p.sign * p.beta * pi / 2.0 + 2.0 * pi * p.beta * static_cast<double>(p.k) + p.sign;
}

// Sign changes of cos(c) (tan c - rhs(c)) on a uniform grid of (-pi/2, pi/2).
std::vector<double> scan_roots(const TanLineProblem& p, int cells) {
  auto h = [&](double c) { return std::sin(c) - line_rhs(p, c) * std::cos(c); };
  std::vector<double> roots;
  const double lo = -pi / 2.0, step = pi / cells;
  double prev = h(lo + 1e-12);
  for (int i = 1; i <= cells; ++i) {
    const double c = (i == cells) ? pi / 2.0 - 1e-12 : lo + i * step;
    const double cur = h(c);
    if (cur == 0.0 || (prev < 0.0) != (cur < 0.0)) {
      double a = c - step, b = c;
      const bool left_negative = prev < 0.0;
      for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        const double m = 0.5 * (a + b);
        const double hm = h(m);
        if (hm == 0.0) a = b = m;
        else if ((hm < 0.0) == left_negative) a = m;
        else b = m;
      }
      roots.push_back(cur == 0.0 ? c : 0.5 * (a + b));
    }
    prev = cur;
  }
  return roots;
}

MeasureSpec one_atom(double alpha) { return MeasureSpec(ContinuousPart::lebesgue(), {{1.0, alpha}}); }
MeasureSpec two_atoms(double alpha) {
  return MeasureSpec(ContinuousPart::lebesgue(), {{0.5, alpha}, {1.0, alpha}});
}

}  // namespace

TEST_CASE("tangent line with k = 0 has the root pi/4") {
  for (double beta : {0.01, 0.3, 1.0 / pi, 5.0}) {
    const auto sols = solve_tan_line({beta, 0, 1});
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].c == doctest::Approx(pi / 4.0).epsilon(1e-14));
    CHECK(std::abs(sols[0].xi) < 1e-12);
  }
}

TEST_CASE("tangent line for the one-atom example") {
  const auto sols = solve_tan_line({1.0 / pi, 1, 1});
  REQUIRE(sols.size() == 1);
  CHECK(sols[0].c == doctest::Approx(1.219).epsilon(5e-4 / 1.219));
  CHECK(sols[0].c == doctest::Approx(one_atom_gamma(1.0 / pi, 1)).epsilon(1e-15));
}

TEST_CASE("beta = 0 is rejected") { CHECK_THROWS_AS(solve_tan_line({0.0, 1, 1}), std::invalid_argument); }

TEST_CASE("negative beta against a dense scan") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> beta_d(-2.0, -1e-3);
  std::uniform_int_distribution<int> k_d(-6, 6);
  std::size_t multi = 0;
  std::vector<TanLineProblem> problems{{-0.05, 0, 1}, {-0.05, 0, -1}, {-0.3, 1, 1}, {-1.0, -2, -1}};
  for (int i = 0; i < 400; ++i) problems.push_back({beta_d(rng), k_d(rng), (i % 2) ? 1 : -1});
  for (const auto& p : problems) {
    const auto sols = solve_tan_line(p);
    REQUIRE(sols.size() >= 1);
    REQUIRE(sols.size() <= 3);
    if (sols.size() > 1) ++multi;
    const double A = p.sign * p.beta * pi / 2.0 + 2.0 * pi * p.beta * static_cast<double>(p.k) + p.sign;
    for (const auto& s : sols) {
      CHECK(tan_line_residual(s.c, A, 2.0 * p.beta) < 1e-12);
      CHECK(s.xi == doctest::Approx((std::tan(s.c) - p.sign) / p.beta).epsilon(1e-9));
    }
    const auto scanned = scan_roots(p, 10000);
    for (double r : scanned) {
      const bool found = std::any_of(sols.begin(), sols.end(), [&](const auto& s) { return std::abs(s.c - r) < 1e-9; });
      if (!found) MESSAGE("beta=", p.beta, " k=", p.k, " sign=", p.sign, " scan root ", r, " solver count ", sols.size(), " first ", sols[0].c);
      CHECK(found);
    }
    std::size_t transversal = 0;
    for (const auto& s : sols) transversal += s.near_tangent ? 0 : 1;
    CHECK(transversal <= scanned.size());
  }
  CHECK(multi > 0);
}

TEST_CASE("positive beta gives exactly one sign change") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> alpha_d(0.005, 20.0);
  std::uniform_int_distribution<int> k_d(-50, 50);
  for (int i = 0; i < 1000; ++i) {
    const double alpha = alpha_d(rng);
    const long k = k_d(rng);
    const double A1 = alpha * pi / 2.0 + 2.0 * pi * alpha * k + 1.0;
    const double A2 = 1.0 + alpha * pi + 2.0 * pi * alpha * k;
    for (auto [A, B] : {std::pair{A1, 2.0 * alpha}, std::pair{A2, 4.0 * alpha}}) {
      int changes = 0;
      const double eps = 1e-9;
      double prev = std::sin(-pi / 2 + eps) - (A - B * (-pi / 2 + eps)) * std::cos(-pi / 2 + eps);
      for (int j = 1; j <= 2000; ++j) {
        const double c = -pi / 2 + eps + (pi - 2 * eps) * j / 2000.0;
        const double cur = std::sin(c) - (A - B * c) * std::cos(c);
        if ((prev < 0.0) != (cur < 0.0)) ++changes;
        prev = cur;
      }
      CHECK(changes == 1);
      const auto sols = solve_tan_affine(A, B);
      REQUIRE(sols.size() == 1);
      CHECK(tan_line_residual(sols[0].c, A, B) < 1e-12);
    }
  }
}

TEST_CASE("defining equation residual for moderate k") {
  for (double alpha : {0.05, 1.0 / pi, 2.5}) {
    for (long k = -5; k <= 5; ++k) {
      const double g = one_atom_gamma(alpha, k);
      CHECK(std::abs(std::tan(g) - one_atom_rhs(alpha, k, g)) <= 1e-12 * std::max(1.0, std::abs(std::tan(g))));
      const double g1 = two_atom_gamma1(alpha, k);
      CHECK(std::abs(std::tan(g1) - two_atom_rhs(alpha, k, g1)) <= 1e-12 * std::max(1.0, std::abs(std::tan(g1))));
    }
  }
}

TEST_CASE("symmetry between the two sign branches") {
  for (double beta : {0.07, 1.0 / pi, 3.0, -0.05, -0.6}) {
    for (long k = -8; k <= 8; ++k) {
      const auto plus = solve_tan_line({beta, k, 1});
      const auto minus = solve_tan_line({beta, -k, -1});
      REQUIRE(plus.size() == minus.size());
      for (std::size_t i = 0; i < plus.size(); ++i) {
        const auto& m = minus[minus.size() - 1 - i];
        CHECK(std::abs(-m.c - plus[i].c) <= 1e-12);
        CHECK(std::abs(-m.xi - plus[i].xi) <= 1e-12 * std::max(1.0, std::abs(plus[i].xi)));
      }
    }
  }
}

TEST_CASE("one-atom eigenpairs") {
  const EigenPair e0 = eigenpair_one_atom(0.7, 0);
  CHECK(e0.b == 0.0);
  CHECK(e0.fn().segments[0].phase == doctest::Approx(pi / 4.0));
  CHECK(e0.lambda == 0.0);

  const EigenPair e1 = eigenpair_one_atom(1.0 / pi, 1);
  CHECK(e1.b == doctest::Approx(5.416).epsilon(5e-4 / 5.416));
  CHECK(e1.lambda == doctest::Approx(-29.3).epsilon(0.05 / 29.3));
  CHECK(e1.fn().segments[0].phase == doctest::Approx(1.219).epsilon(5e-4 / 1.219));
  CHECK(eigenpair_one_atom(1.0 / pi, 2).lambda == doctest::Approx(-130.4).epsilon(0.05 / 130.4));
  // 30-digit reference values
  CHECK(std::abs(e1.lambda + 29.3336913987041326919) < 1e-9);
  CHECK(std::abs(eigenpair_one_atom(1.0 / pi, 2).lambda + 130.428634168381398682) < 1e-9);
  CHECK(std::abs(eigenpair_one_atom(1.0 / pi, 3).lambda + 309.045554806089221313) < 1e-9);
  CHECK(std::abs(eigenpair_one_atom(1.0 / pi, 3).b - 17.5796915446798787486) < 1e-11);
  CHECK(e1.multiplicity == 1);
  CHECK(e1.lambda == -e1.b * e1.b);
}

TEST_CASE("two-atom eigenpairs") {
  const double a = 1.0 / pi;
  const EigenPair m1 = eigenpair_two_atoms(a, -1);
  CHECK(std::abs(two_atom_gamma1(a, -1)) < 1e-14);
  CHECK(m1.b == doctest::Approx(-pi).epsilon(1e-15));
  CHECK(m1.lambda == doctest::Approx(-pi * pi).epsilon(1e-15));
  CHECK(angular_distance(m1.fn().segments[1].phase, 1.5 * pi) < 1e-12);

  const EigenPair m2 = eigenpair_two_atoms(a, -2);
  CHECK(two_atom_gamma1(a, -2) == doctest::Approx(-pi / 4.0).epsilon(1e-14));
  CHECK(m2.b == doctest::Approx(-2.0 * pi).epsilon(1e-14));
  CHECK(m2.lambda == doctest::Approx(-4.0 * pi * pi).epsilon(1e-14));

  const double want[] = {21.8, 106.9, 267.2, 505.3};
  for (long k = 1; k <= 4; ++k)
    CHECK(-eigenpair_two_atoms(a, k).lambda == doctest::Approx(want[k - 1]).epsilon(0.05 / want[k - 1]));

  const EigenPair z = eigenpair_two_atoms(0.4, 0);
  CHECK(z.lambda == 0.0);
  CHECK(z.fn().segments[0].amplitude * std::sin(z.fn().segments[0].phase) ==
        doctest::Approx(z.fn().segments[1].amplitude * std::sin(z.fn().segments[1].phase)));
}

TEST_CASE("closed forms satisfy the eigenfunction system") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> alpha_d(0.01, 10.0);
  for (int i = 0; i < 40; ++i) {
    const double alpha = alpha_d(rng);
    for (long k = -10; k <= 10; ++k) {
      const EigenPair e1 = eigenpair_one_atom(alpha, k);
      CHECK(system_residual(e1.fn(), one_atom(alpha)) <= 1e-10);
      const EigenPair e2 = eigenpair_two_atoms(alpha, k);
      CHECK(system_residual(e2.fn(), two_atoms(alpha)) <= 1e-10);
    }
  }
}

TEST_CASE("non-constant one-atom eigenfunctions jump at the atom") {
  const MeasureSpec s = one_atom(1.0 / pi);
  for (long k : {-3L, -1L, 1L, 2L, 5L}) {
    const PiecewiseSine f = eigenpair_one_atom(1.0 / pi, k).fn();
    CHECK(std::abs(f.evaluate(1.0, s) - f.right_limit(1.0, s)) > 1e-3);
  }
}

TEST_CASE("one-atom limits at k = 10^4") {
  const double a = 1.0 / pi;
  const long K = 10000;
  std::vector<double> mags;
  for (long k = -K - 10; k <= K + 10; ++k) mags.push_back(std::abs(eigenpair_one_atom(a, k).b));
  std::sort(mags.begin(), mags.end());
  // mags[0] = 0 is the largest eigenvalue; lambda_k is mags[k]
  const double lk = -mags[K] * mags[K];
  CHECK(std::abs(lk / std::pow(K * pi + pi / 2.0, 2) + 1.0) <= 1e-2);
  CHECK(std::abs(eigenpair_one_atom(a, K).b / (2.0 * pi * K) - 1.0) <= 1e-3);
  CHECK(std::abs(eigenpair_one_atom(a, -K).b / (-2.0 * pi * K) - 1.0) <= 1e-3);
  CHECK(std::abs(one_atom_gamma(a, K) - pi / 2.0) <= 1e-2);
  CHECK(std::abs(one_atom_gamma(a, -K) + pi / 2.0) <= 1e-2);
}

TEST_CASE("two-atom limits at k = 10^4") {
  const double a = 1.0 / pi;
  const long K = 10000;
  CHECK(std::abs(two_atom_gamma1(a, K) - pi / 2.0) <= 1e-2);
  CHECK(std::abs(two_atom_gamma1(a, -K) + pi / 2.0) <= 1e-2);
  CHECK(angular_distance(eigenpair_two_atoms(a, K).fn().segments[1].phase, pi) <= 1e-2);
  CHECK(angular_distance(eigenpair_two_atoms(a, -K).fn().segments[1].phase, 0.0) <= 1e-2);
  CHECK(std::abs(eigenpair_two_atoms(a, K).b / (2.0 * pi * K) - 1.0) <= 1e-3);
  CHECK(std::abs(eigenpair_two_atoms(a, -K).b / (-2.0 * pi * K) - 1.0) <= 1e-3);
  CHECK(std::abs(-eigenpair_two_atoms(a, K).b / eigenpair_two_atoms(a, -K - 1).b - 1.0) <= 1e-2);
}

TEST_CASE("special alpha classification") {
  const SpecialAlphaClass p = special_alpha_class(1.0 / pi);
  CHECK(p.kind == SpecialAlpha::prime);
  CHECK(p.m == 0);
  CHECK(p.lambda == doctest::Approx(-pi * pi).epsilon(1e-14));
  CHECK(p.eigenfunction.frequency == doctest::Approx(-pi).epsilon(1e-14));
  CHECK(angular_distance(p.eigenfunction.segments[0].phase, 0.0) < 1e-12);
  CHECK(angular_distance(p.eigenfunction.segments[1].phase, 1.5 * pi) < 1e-12);

  CHECK(special_alpha_class(0.123).kind == SpecialAlpha::none);

  const double a2 = 1.0 / (2.0 * std::atan(0.5) - 2.0 * std::atan(2.0) + 2.0 * pi);
  const SpecialAlphaClass d = special_alpha_class(a2);
  CHECK(d.kind == SpecialAlpha::double_prime);
  CHECK(d.m == 1);
  CHECK(d.eigenfunction.segments[0].phase == doctest::Approx(std::atan(2.0)).epsilon(1e-14));

  for (long m = 0; m <= 3; ++m) {
    const double ap = alpha_prime(m);
    const SpecialAlphaClass c = special_alpha_class(ap);
    REQUIRE(c.kind == SpecialAlpha::prime);
    CHECK(c.m == m);
    CHECK(c.family_index == -m - 1);
    const EigenPair f = eigenpair_two_atoms(ap, c.family_index);
    CHECK(f.lambda == doctest::Approx(-1.0 / (ap * ap)).epsilon(1e-12));
    CHECK(c.eigenfunction.frequency == doctest::Approx(f.b).epsilon(1e-12));
    for (int j = 0; j < 2; ++j)
      CHECK(angular_distance(c.eigenfunction.segments[j].phase, f.fn().segments[j].phase) < 1e-9);
    CHECK(system_residual(c.eigenfunction, two_atoms(ap)) < 1e-10);
  }
  for (long m = 1; m <= 3; ++m) {
    const double ad = alpha_double_prime(m);
    const SpecialAlphaClass c = special_alpha_class(ad);
    REQUIRE(c.kind == SpecialAlpha::double_prime);
    CHECK(c.m == m);
    CHECK(c.family_index == m);
    const EigenPair f = eigenpair_two_atoms(ad, m);
    CHECK(f.lambda == doctest::Approx(-1.0 / (ad * ad)).epsilon(1e-12));
    CHECK(c.eigenfunction.frequency == doctest::Approx(f.b).epsilon(1e-12));
    for (int j = 0; j < 2; ++j)
      CHECK(angular_distance(c.eigenfunction.segments[j].phase, f.fn().segments[j].phase) < 1e-9);
    CHECK(system_residual(c.eigenfunction, two_atoms(ad)) < 1e-10);
  }
  CHECK(alpha_double_prime(0) < 0.0);
}
