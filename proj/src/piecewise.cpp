#include "mgl/piecewise.hpp"

#include <cmath>
#include <numbers>

namespace mgl {

double wrap_phase(double phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phase, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

PiecewiseSine PiecewiseSine::constant(double value, std::size_t segment_count) {
  PiecewiseSine f;
  f.frequency = 0.0;
  f.segments.assign(segment_count, SineSegment{value, std::numbers::pi / 2.0});
  return f;
}

double PiecewiseSine::segment_value(std::size_t j, double F) const {
  const SineSegment& s = segments[j];
  return s.amplitude * std::sin(frequency * F + s.phase);
}

double PiecewiseSine::evaluate(double x, const MeasureSpec& spec) const {
  const std::size_t j = spec.segment_of(x);
  return segment_value(j, spec.continuous().value(x));
}

double PiecewiseSine::right_limit(double x, const MeasureSpec& spec) const {
  const double F = spec.continuous().value(x);
  if (x >= 1.0) return segment_value(0, 0.0);
  const std::size_t j = spec.segment_of(x);
  if (j < spec.atom_count() && spec.atom_position(j) == x) return segment_value(j + 1, F);
  return segment_value(j, F);
}

double PiecewiseEval::interior_value(std::size_t j, double F) const {
  const SineSegment& s = interior[j];
  return s.amplitude * std::sin(frequency * F + s.phase);
}

double PiecewiseEval::evaluate(double x, const MeasureSpec& spec) const {
  const std::size_t j = spec.segment_of(x);
  if (j < spec.atom_count() && spec.atom_position(j) == x) return atom_values[j];
  return interior_value(j, spec.continuous().value(x));
}

PiecewiseEval to_eval(const PiecewiseSine& f, const MeasureSpec& spec) {
  PiecewiseEval out;
  out.frequency = f.frequency;
  out.interior = f.segments;
  out.continuity = Continuity::left;
  const std::vector<double> F = spec.atom_coordinates();
  out.atom_values.resize(spec.atom_count());
  for (std::size_t j = 0; j < spec.atom_count(); ++j) out.atom_values[j] = f.segment_value(j, F[j]);
  return out;
}

}  // namespace mgl
