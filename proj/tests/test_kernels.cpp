#include <cmath>
#include <cstdlib>
#include <string>
#include <random>
#include <vector>

#include "doctest.h"
#include "mgl/simd/kernels.hpp"

using namespace mgl::simd;

namespace {

std::vector<double> random_vector(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

const std::size_t sizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 100, 1001};

}  // namespace

TEST_CASE("dispatch") {
  const KernelTable& k = kernels();
  if (std::getenv("MGL_FORCE_SCALAR")) CHECK(k.isa == Isa::scalar);
  else if (avx2_supported()) CHECK(k.isa == Isa::avx2);
  CHECK(std::string(isa_name(Isa::scalar)) == "scalar");
  CHECK(scalar_table().isa == Isa::scalar);
}

TEST_CASE("scalar kernels against plain loops") {
  std::mt19937 rng(1);
  for (std::size_t n : sizes) {
    const auto x = random_vector(rng, n), y = random_vector(rng, n);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) d += x[i] * y[i];
    CHECK(scalar::dot(x.data(), y.data(), n) == doctest::Approx(d).epsilon(1e-14));
    auto z = y;
    scalar::axpy(0.3, x.data(), z.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(z[i] == doctest::Approx(y[i] + 0.3 * x[i]));
  }
}

TEST_CASE("AVX2 kernels match the scalar reference") {
  if (!avx2_supported()) {
    MESSAGE("AVX2 not available; skipped");
    return;
  }
  std::mt19937 rng(2);
  for (std::size_t n : sizes) {
    const auto x = random_vector(rng, n), y = random_vector(rng, n), w = random_vector(rng, n);
    const double tol = 1e-15 * static_cast<double>(n + 1);

    CHECK(std::abs(scalar::dot(x.data(), y.data(), n) - avx2::dot(x.data(), y.data(), n)) <= tol);

    auto a = y, b = y;
    scalar::axpy(-1.7, x.data(), a.data(), n);
    avx2::axpy(-1.7, x.data(), b.data(), n);
    CHECK(max_diff(a, b) <= 1e-15);

    auto r1 = w, r2 = w;
    scalar::rank2(r1.data(), 0.4, x.data(), -0.9, y.data(), n);
    avx2::rank2(r2.data(), 0.4, x.data(), -0.9, y.data(), n);
    CHECK(max_diff(r1, r2) <= 1e-15);

    auto p1 = x, q1 = y, p2 = x, q2 = y;
    const double c = std::cos(0.3), s = std::sin(0.3);
    scalar::rotate(p1.data(), q1.data(), c, s, n);
    avx2::rotate(p2.data(), q2.data(), c, s, n);
    CHECK(max_diff(p1, p2) <= 1e-15);
    CHECK(max_diff(q1, q2) <= 1e-15);
  }
}

TEST_CASE("kernels work on unaligned pointers") {
  if (!avx2_supported()) return;
  std::mt19937 rng(3);
  const auto x = random_vector(rng, 40), y = random_vector(rng, 40);
  for (std::size_t off = 1; off < 4; ++off) {
    const std::size_t n = 40 - off;
    CHECK(avx2::dot(x.data() + off, y.data() + off, n) ==
          doctest::Approx(scalar::dot(x.data() + off, y.data() + off, n)).epsilon(1e-14));
  }
}
