#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "mgl/closed_form.hpp"
#include "mgl/monodromy.hpp"
#include "mgl/oracle.hpp"

using namespace mgl;
using std::numbers::pi;

namespace {

double eigen_residual_2norm(const DenseMatrix& a, double lambda, const std::vector<double>& v) {
  const std::vector<double> av = a.multiply(v);
  double r = 0.0, n = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    r += (av[i] - lambda * v[i]) * (av[i] - lambda * v[i]);
    n += v[i] * v[i];
  }
  return std::sqrt(r / n);
}

}  // namespace

TEST_CASE("midpoint discretisation") {
  const MeasureSpec s(ContinuousPart::lebesgue(), {{1.0, 0.3}});
  const AtomicApprox a = discretize(s, 10);
  REQUIRE(a.positions.size() == 11);
  CHECK(a.positions[0] == doctest::Approx(0.05));
  CHECK(a.weights[0] == doctest::Approx(0.1));
  CHECK(a.positions.back() == 1.0);
  CHECK(a.weights.back() == 0.3);
  CHECK(a.original.back() == 1);
  CHECK(a.original.front() == 0);
  double total = 0.0;
  for (double w : a.weights) total += w;
  CHECK(total == doctest::Approx(1.3).epsilon(1e-14));
  CHECK_THROWS_AS(discretize(s, 4), std::invalid_argument);
}

TEST_CASE("cell masses follow a piecewise-linear distribution function") {
  const MeasureSpec s(ContinuousPart::piecewise_linear({{0, 0}, {0.5, 0.8}, {1, 1}}), {{0.3, 0.1}, {1.0, 0.2}});
  const AtomicApprox a = discretize(s, 50);
  double cont = 0.0;
  for (std::size_t i = 0; i < a.positions.size(); ++i) {
    if (a.original[i]) continue;
    cont += a.weights[i];
  }
  CHECK(cont == doctest::Approx(1.0).epsilon(1e-12));
  // cell weights are increments of F between the cell edges
  std::vector<double> edges{0.0};
  for (std::size_t i = 0; i < a.positions.size(); ++i) {
    if (a.original[i]) {
      edges.push_back(a.positions[i]);
      continue;
    }
    const double hw = a.positions[i] - edges.back();
    const double hi = std::min(1.0, a.positions[i] + hw);
    CHECK(a.weights[i] == doctest::Approx(distribution_value(s, hi) - distribution_value(s, edges.back())).epsilon(1e-12));
    edges.push_back(hi);
  }
  for (std::size_t i = 1; i < a.positions.size(); ++i) CHECK(a.positions[i] > a.positions[i - 1]);
}

TEST_CASE("non-canonical measures keep the tail cells") {
  const MeasureSpec s(ContinuousPart::lebesgue(), {{0.4, 0.2}});
  const AtomicApprox a = discretize(s, 20);
  CHECK(a.positions.back() < 1.0);
  double total = 0.0;
  for (double w : a.weights) total += w;
  CHECK(total == doctest::Approx(1.2));
}

TEST_CASE("uniform cycle") {
  for (std::size_t M : {3u, 8u, 25u}) {
    AtomicApprox a;
    for (std::size_t i = 0; i < M; ++i) {
      a.positions.push_back((i + 1.0) / M);
      a.weights.push_back(1.0 / M);
      a.original.push_back(0);
    }
    const SymmetricProfile p = laplacian_profile(a);
    CHECK(p.matrix.max_asymmetry() == 0.0);
    const Eigensystem es = jacobi_eigensystem(p.matrix);
    std::vector<double> want;
    for (std::size_t j = 0; j < M; ++j) want.push_back(-4.0 * M * M * std::pow(std::sin(pi * j / M), 2));
    std::sort(want.begin(), want.end());
    for (std::size_t j = 0; j < M; ++j)
      CHECK(es.values[j] == doctest::Approx(want[j]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("profile kernel and self-adjointness") {
  const MeasureSpec s(ContinuousPart::lebesgue(), {{0.3, 0.2}, {0.7, 0.05}, {1.0, 0.6}});
  const AtomicApprox a = discretize(s, 60);
  const SymmetricProfile p = laplacian_profile(a);
  CHECK(p.matrix.max_asymmetry() <= 1e-12);
  std::vector<double> k(a.weights.size());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = std::sqrt(a.weights[i]);
  const std::vector<double> pk = p.matrix.multiply(k);
  for (double v : pk) CHECK(std::abs(v) <= 1e-9);

  std::mt19937 rng(12);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> f(k.size()), g(k.size());
    for (double& x : f) x = d(rng);
    for (double& x : g) x = d(rng);
    const auto lf = apply_discrete_laplacian(a.weights, f);
    const auto lg = apply_discrete_laplacian(a.weights, g);
    double l = 0.0, r = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      l += a.weights[i] * lf[i] * g[i];
      r += a.weights[i] * f[i] * lg[i];
      scale += a.weights[i] * std::abs(lf[i] * g[i]);
    }
    CHECK(std::abs(l - r) <= 1e-10 * std::max(1.0, scale));
  }
  CHECK_THROWS_AS(laplacian_profile(AtomicApprox{{0.5, 1.0}, {0.5, 0.5}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("lowest eigenpairs") {
  const MeasureSpec s(ContinuousPart::lebesgue(), {{1.0, 1.0 / pi}});
  const SymmetricProfile p = laplacian_profile(discretize(s, 300));
  const Eigensystem es = lowest_eigenpairs(p, 8);
  REQUIRE(es.values.size() == 8);
  CHECK(std::abs(es.values[0]) <= 1e-10);
  CHECK(es.values[1] < -1e-6);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(es.values[i] <= 1e-10);
    if (i > 0) CHECK(es.values[i] <= es.values[i - 1]);
    CHECK(eigen_residual_2norm(p.matrix, es.values[i], es.vectors[i]) <= 1e-8 * std::max(1.0, std::abs(es.values[i])));
  }
  const Eigensystem full = jacobi_eigensystem(p.matrix);
  CHECK(std::abs(full.values.back()) <= 1e-14 * p.matrix.frobenius_norm());
  for (std::size_t i = 0; i < 8; ++i)
    CHECK(es.values[i] == doctest::Approx(full.values[full.values.size() - 1 - i]).epsilon(1e-9).scale(1.0));
}

TEST_CASE("oracle errors shrink with the grid") {
  const MeasureSpec s(ContinuousPart::lebesgue(), {{0.5, 1.0 / pi}, {1.0, 1.0 / pi}});
  const SpectrumResult r = find_spectrum(s, 30.0);
  double prev = 1.0;
  for (std::size_t n : {50u, 100u, 200u, 400u}) {
    const Eigensystem es = lowest_eigenpairs(laplacian_profile(discretize(s, n)), 7);
    const ErrorReport rep = compare_spectra(r, es.values, 7);
    CHECK_FALSE(rep.length_mismatch);
    CHECK(rep.max_error < prev);
    prev = rep.max_error;
  }
  CHECK(prev < 0.05);
}

TEST_CASE("comparison bookkeeping") {
  const std::vector<double> a{0.0, -9.0, -16.0};
  const ErrorReport same = compare_spectra(a, a, 3);
  CHECK(same.max_error == 0.0);
  for (double e : same.relative_errors) CHECK(e == 0.0);
  CHECK(compare_spectra(a, a, 0).relative_errors.empty());
  const ErrorReport shortr = compare_spectra(a, {0.0, -9.5}, 3);
  CHECK(shortr.length_mismatch);
  CHECK(shortr.relative_errors.size() == 2);
  CHECK(shortr.relative_errors[1] == doctest::Approx(0.5 / 9.0));
  CHECK_FALSE(shortr.message.empty());
}
