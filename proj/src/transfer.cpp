#include "mgl/transfer.hpp"

#include <algorithm>
#include <cmath>

namespace mgl {

double Transfer2x2::norm_inf() const {
  return std::max(std::abs(m11) + std::abs(m12), std::abs(m21) + std::abs(m22));
}

Transfer2x2 operator*(const Transfer2x2& a, const Transfer2x2& b) {
  return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
          a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

Transfer2x2 operator+(const Transfer2x2& a, const Transfer2x2& b) {
  return {a.m11 + b.m11, a.m12 + b.m12, a.m21 + b.m21, a.m22 + b.m22};
}

TransferJet operator*(const TransferJet& a, const TransferJet& b) {
  return {a.value * b.value, a.db * b.value + a.value * b.db};
}

namespace {

// sin(x)/x and its derivative divided by x, with series near 0
double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

}  // namespace

Transfer2x2 segment_propagator(double b, double dF) {
  const double t = b * dF;
  const double c = std::cos(t);
  const double s = std::sin(t);
  return {c, dF * sinc(t), -b * s, c};
}

Transfer2x2 atom_jump(double b, double alpha) {
  const double ab = alpha * b;
  return {1.0 - ab * ab, alpha, -alpha * b * b, 1.0};
}

TransferJet segment_propagator_jet(double b, double dF) {
  const double t = b * dF;
  const double c = std::cos(t);
  const double s = std::sin(t);
  TransferJet j;
  j.value = {c, dF * sinc(t), -b * s, c};
  // d/db [sin(b d)/b] = d^2 (t cos t - sin t)/t^2
  double d12;
  if (std::abs(t) < 1e-3) {
    const double t2 = t * t;
    d12 = dF * dF * (-t / 3.0 + t * t2 / 30.0 - t * t2 * t2 / 840.0);
  } else {
    d12 = dF * dF * (t * c - s) / (t * t);
  }
  j.db = {-dF * s, d12, -s - t * c, -dF * s};
  return j;
}

TransferJet atom_jump_jet(double b, double alpha) {
  TransferJet j;
  j.value = atom_jump(b, alpha);
  j.db = {-2.0 * alpha * alpha * b, 0.0, -2.0 * alpha * b, 0.0};
  return j;
}

}  // namespace mgl
