#pragma once

// 2x2 transfer matrices on the state (u, v) = (f, df/dF).
//
// Between atoms an eigenfunction solves u'' = -b^2 u in the F-coordinate, so a
// segment of nu-mass dF acts by the rotation-like flow below. Crossing an atom
// of weight alpha, the eigenfunction system reads
//   v+ = v- - alpha b^2 u-      and      u+ = u- + alpha v+,
// which gives the jump matrix [[1 - alpha^2 b^2, alpha], [-alpha b^2, 1]].
// Both families have determinant 1.

#include <array>

namespace mgl {

struct Transfer2x2 {
  double m11 = 1.0;
  double m12 = 0.0;
  double m21 = 0.0;
  double m22 = 1.0;

  static Transfer2x2 identity() { return {}; }

  double det() const { return m11 * m22 - m12 * m21; }
  double trace() const { return m11 + m22; }
  double norm_inf() const;

  std::array<double, 2> apply(const std::array<double, 2>& s) const {
    return {m11 * s[0] + m12 * s[1], m21 * s[0] + m22 * s[1]};
  }
};

Transfer2x2 operator*(const Transfer2x2& a, const Transfer2x2& b);
Transfer2x2 operator+(const Transfer2x2& a, const Transfer2x2& b);

/// Value and derivative with respect to b.
struct TransferJet {
  Transfer2x2 value;
  Transfer2x2 db{0.0, 0.0, 0.0, 0.0};
};

/// Product rule: (A, A') * (B, B') = (AB, A'B + AB').
TransferJet operator*(const TransferJet& a, const TransferJet& b);

Transfer2x2 segment_propagator(double b, double dF);
Transfer2x2 atom_jump(double b, double alpha);

TransferJet segment_propagator_jet(double b, double dF);
TransferJet atom_jump_jet(double b, double alpha);

}  // namespace mgl
