#pragma once

// Dense double-precision kernels used by the eigensolvers. Each kernel has a
// scalar reference version and an AVX2+FMA version; kernels() picks one at
// startup from CPUID. Setting MGL_FORCE_SCALAR in the environment forces the
// scalar table.

#include <cstddef>

namespace mgl::simd {

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // row -= ui * w + wi * u
  void (*rank2)(double* row, double ui, const double* w, double wi, const double* u, std::size_t n);
  // (x, y) <- (c x - s y, s x + c y)
  void (*rotate)(double* x, double* y, double c, double s, std::size_t n);
};

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void rank2(double* row, double ui, const double* w, double wi, const double* u, std::size_t n);
void rotate(double* x, double* y, double c, double s, std::size_t n);
}  // namespace scalar

namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void rank2(double* row, double ui, const double* w, double wi, const double* u, std::size_t n);
void rotate(double* x, double* y, double c, double s, std::size_t n);
}  // namespace avx2

bool avx2_supported();

const KernelTable& scalar_table();
/// Only valid when avx2_supported().
const KernelTable& avx2_table();
/// The dispatched table.
const KernelTable& kernels();

const char* isa_name(Isa isa);

}  // namespace mgl::simd
