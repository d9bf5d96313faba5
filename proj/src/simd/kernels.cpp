#include "mgl/simd/kernels.hpp"

#include <cstdlib>

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define MGL_X86 1
#endif

namespace mgl::simd {

namespace scalar {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void rank2(double* row, double ui, const double* w, double wi, const double* u, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) row[i] -= ui * w[i] + wi * u[i];
}

void rotate(double* x, double* y, double c, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

}  // namespace scalar

#ifdef MGL_X86

namespace avx2 {

__attribute__((target("avx2,fma"))) double dot(const double* x, const double* y, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), s1);
  }
  if (i + 4 <= n) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), s0);
    i += 4;
  }
  s0 = _mm256_add_pd(s0, s1);
  __m128d lo = _mm256_castpd256_pd128(s0);
  __m128d hi = _mm256_extractf128_pd(s0, 1);
  lo = _mm_add_pd(lo, hi);
  double sum = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
  for (; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

__attribute__((target("avx2,fma"))) void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

__attribute__((target("avx2,fma"))) void rank2(double* row, double ui, const double* w, double wi, const double* u,
                                                std::size_t n) {
  const __m256d vu = _mm256_set1_pd(ui);
  const __m256d vw = _mm256_set1_pd(wi);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_loadu_pd(row + i);
    r = _mm256_fnmadd_pd(vu, _mm256_loadu_pd(w + i), r);
    r = _mm256_fnmadd_pd(vw, _mm256_loadu_pd(u + i), r);
    _mm256_storeu_pd(row + i, r);
  }
  for (; i < n; ++i) row[i] -= ui * w[i] + wi * u[i];
}

__attribute__((target("avx2,fma"))) void rotate(double* x, double* y, double c, double s, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xi = _mm256_loadu_pd(x + i);
    const __m256d yi = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(x + i, _mm256_fmsub_pd(vc, xi, _mm256_mul_pd(vs, yi)));
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vs, xi, _mm256_mul_pd(vc, yi)));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

}  // namespace avx2

bool avx2_supported() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

#else

namespace avx2 {
double dot(const double* x, const double* y, std::size_t n) { return scalar::dot(x, y, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { scalar::axpy(a, x, y, n); }
void rank2(double* row, double ui, const double* w, double wi, const double* u, std::size_t n) {
  scalar::rank2(row, ui, w, wi, u, n);
}
void rotate(double* x, double* y, double c, double s, std::size_t n) { scalar::rotate(x, y, c, s, n); }
}  // namespace avx2

bool avx2_supported() { return false; }

#endif

const KernelTable& scalar_table() {
  static const KernelTable t{Isa::scalar, scalar::dot, scalar::axpy, scalar::rank2, scalar::rotate};
  return t;
}

const KernelTable& avx2_table() {
  static const KernelTable t{Isa::avx2, avx2::dot, avx2::axpy, avx2::rank2, avx2::rotate};
  return t;
}

const KernelTable& kernels() {
  static const KernelTable& t = (std::getenv("MGL_FORCE_SCALAR") == nullptr && avx2_supported()) ? avx2_table()
                                                                                                 : scalar_table();
  return t;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

}  // namespace mgl::simd
