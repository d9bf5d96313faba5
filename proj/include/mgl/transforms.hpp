#pragma once

// Maps between eigenfunctions of related measures: pullback from the
// F-coordinate to x, rotation of equally spaced atoms, concatenation of a
// periodic pattern, and undoing the canonical rotation.

#include <cstddef>
#include <vector>

#include "mgl/measure.hpp"
#include "mgl/piecewise.hpp"

namespace mgl {

/// f(x) = amplitude * sin(frequency * x + phase) on (x0, x1].
struct XPiece {
  double x0 = 0.0;
  double x1 = 0.0;
  double amplitude = 0.0;
  double frequency = 0.0;
  double phase = 0.0;
};

struct XPiecewiseSine {
  std::vector<XPiece> pieces;

  /// Left-continuous evaluation on (0,1].
  double evaluate(double x) const;
};

/// Rewrites a_j sin(b F(x) + gamma_j) in terms of x. Every knot interval of a
/// piecewise-linear F becomes its own piece with frequency b * slope.
XPiecewiseSine pullback_to_x(const PiecewiseSine& f, const MeasureSpec& spec);

struct RotatedEigenfunction {
  PiecewiseSine f;
  MeasureSpec spec;
};

/// f_r(x) = f(x - (r-1)/N mod 1) together with eta_r, whose atom at i/N carries
/// the weight of the atom at (i - r + 1)/N. Needs atoms at i/N, Lebesgue
/// continuous part and 2 <= r <= N.
RotatedEigenfunction rotate_eigenfunction(const PiecewiseSine& f, const MeasureSpec& spec, long r);

/// Lebesgue plus atoms alpha_{(i-1) mod p + 1}/k at i/N for N = p k. The base
/// measure must be Lebesgue with atoms at i/p.
MeasureSpec concatenate_measure(const MeasureSpec& base, long k);

/// x -> f(k x mod 1) as a piecewise sine for the concatenated measure.
PiecewiseSine concatenate_eigenfunction(const PiecewiseSine& f, long k);

/// Eigenfunction of the canonical form of `original`, rewritten on the
/// original intervals (N + 1 segments when the last atom is not at 1).
PiecewiseSine to_original_coordinates(const PiecewiseSine& canonical_f, const MeasureSpec& original);

/// True when z_i = i/N within 1e-12.
bool equally_spaced(const MeasureSpec& spec);

}  // namespace mgl
