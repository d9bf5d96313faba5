#pragma once

// Piecewise sines in the measure coordinate F = F_nu(x).
//
// A PiecewiseSine is  f(x) = a_j sin(b F_nu(x) + gamma_j)  on the j-th interval
// (z_{j-1}, z_j], left-continuous at every atom. A PiecewiseEval is what the
// operators produce: a sine of the same kind on every open interval plus an
// explicit value at each atom (atoms carry positive mass, so those values
// matter in L^2_eta).

#include <cstddef>
#include <vector>

#include "mgl/measure.hpp"

namespace mgl {

struct SineSegment {
  double amplitude = 0.0;
  double phase = 0.0;
};

struct PiecewiseSine {
  double frequency = 0.0;  // b
  std::vector<SineSegment> segments;

  static PiecewiseSine constant(double value, std::size_t segment_count);

  /// a_j sin(b F + gamma_j) on segment j.
  double segment_value(std::size_t j, double F) const;
  /// f(x) for x in (0,1], left-continuous at atoms. Works for canonical and
  /// non-canonical measures as long as segments.size() == spec.interval_count().
  double evaluate(double x, const MeasureSpec& spec) const;
  /// lim_{e -> 0+} f(x + e) of the periodic extension.
  double right_limit(double x, const MeasureSpec& spec) const;
};

enum class Continuity { left, right };

struct PiecewiseEval {
  double frequency = 0.0;
  std::vector<SineSegment> interior;  // c_j sin(b F + phi_j) off the atoms
  std::vector<double> atom_values;
  Continuity continuity = Continuity::left;

  double interior_value(std::size_t j, double F) const;
  /// Atom value when x is an atom position, interior formula otherwise.
  double evaluate(double x, const MeasureSpec& spec) const;
};

/// View of f as an element of L^2_eta: interior sines plus left-continuous
/// atom values.
PiecewiseEval to_eval(const PiecewiseSine& f, const MeasureSpec& spec);

/// Brings a phase into [0, 2 pi).
double wrap_phase(double phase);

}  // namespace mgl
