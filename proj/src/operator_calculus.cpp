#include "mgl/operator_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mgl {

namespace {

constexpr double half_pi = std::numbers::pi / 2.0;

void require_canonical(const MeasureSpec& spec, std::size_t segments) {
  if (!spec.is_canonical()) throw std::invalid_argument("operator calculus needs a canonical measure (z_N = 1)");
  if (segments != spec.atom_count())
    throw std::invalid_argument("piecewise function has the wrong number of segments for this measure");
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// int_{t0}^{t1} cos(w t + p) dt
double integrate_cos(double t0, double t1, double w, double p) {
  const double h = t1 - t0;
  const double m = 0.5 * (t0 + t1);
  return h * std::cos(w * m + p) * sinc(0.5 * w * h);
}

}  // namespace

PiecewiseEval apply_nabla(const PiecewiseSine& f, const MeasureSpec& spec) {
  require_canonical(spec, f.segments.size());
  const std::size_t n = spec.atom_count();
  const std::vector<double> F = spec.atom_coordinates();
  const double b = f.frequency;

  PiecewiseEval out;
  out.frequency = b;
  out.continuity = Continuity::right;
  out.interior.resize(n);
  out.atom_values.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const SineSegment& s = f.segments[j];
    out.interior[j] = {s.amplitude * b, s.phase + half_pi};
    const double left = f.segment_value(j, F[j]);
    const double right = j + 1 < n ? f.segment_value(j + 1, F[j]) : f.segment_value(0, 0.0);
    out.atom_values[j] = (right - left) / spec.atom_weight(j);
  }
  return out;
}

PiecewiseEval apply_nabla_star(const PiecewiseEval& g, const MeasureSpec& spec) {
  require_canonical(spec, g.interior.size());
  const std::size_t n = spec.atom_count();
  const std::vector<double> F = spec.atom_coordinates();
  const double b = g.frequency;

  PiecewiseEval out;
  out.frequency = b;
  out.continuity = Continuity::left;
  out.interior.resize(n);
  out.atom_values.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const SineSegment& s = g.interior[j];
    out.interior[j] = {s.amplitude * b, s.phase - half_pi};
    const double left = g.interior_value(j, F[j]);
    out.atom_values[j] = (left - g.atom_values[j]) / spec.atom_weight(j);
  }
  return out;
}

PiecewiseEval apply_laplacian(const PiecewiseSine& f, const MeasureSpec& spec) {
  PiecewiseEval out = apply_nabla_star(apply_nabla(f, spec), spec);
  for (auto& s : out.interior) s.amplitude = -s.amplitude;
  for (auto& v : out.atom_values) v = -v;
  return out;
}

double integrate_sine_product(double t0, double t1, const SineSegment& s1, double w1, const SineSegment& s2,
                              double w2) {
  // sin A sin B = (cos(A - B) - cos(A + B)) / 2
  const double diff = integrate_cos(t0, t1, w1 - w2, s1.phase - s2.phase);
  const double sum = integrate_cos(t0, t1, w1 + w2, s1.phase + s2.phase);
  return 0.5 * s1.amplitude * s2.amplitude * (diff - sum);
}

InnerProductParts inner_product_parts(const PiecewiseEval& f, const PiecewiseEval& g, const MeasureSpec& spec) {
  require_canonical(spec, f.interior.size());
  require_canonical(spec, g.interior.size());
  const std::vector<double> F = spec.atom_coordinates();
  InnerProductParts parts;
  double prev = 0.0;
  for (std::size_t j = 0; j < spec.atom_count(); ++j) {
    parts.continuous += integrate_sine_product(prev, F[j], f.interior[j], f.frequency, g.interior[j], g.frequency);
    parts.atomic += spec.atom_weight(j) * f.atom_values[j] * g.atom_values[j];
    prev = F[j];
  }
  return parts;
}

double inner_product(const PiecewiseEval& f, const PiecewiseEval& g, const MeasureSpec& spec) {
  return inner_product_parts(f, g, spec).total();
}

double inner_product(const PiecewiseSine& f, const PiecewiseSine& g, const MeasureSpec& spec) {
  return inner_product(to_eval(f, spec), to_eval(g, spec), spec);
}

double inner_product(const PiecewiseSine& f, const PiecewiseEval& g, const MeasureSpec& spec) {
  return inner_product(to_eval(f, spec), g, spec);
}

double inner_product(const PiecewiseEval& f, const PiecewiseSine& g, const MeasureSpec& spec) {
  return inner_product(f, to_eval(g, spec), spec);
}

double norm(const PiecewiseSine& f, const MeasureSpec& spec) {
  return std::sqrt(std::max(0.0, inner_product(f, f, spec)));
}

double energy(const PiecewiseSine& f, const PiecewiseSine& g, const MeasureSpec& spec) {
  return inner_product(apply_nabla(f, spec), apply_nabla(g, spec), spec);
}

double eigen_residual(const PiecewiseSine& f, double lambda, const MeasureSpec& spec,
                      std::size_t samples_per_segment) {
  const PiecewiseEval lap = apply_laplacian(f, spec);
  const double scale = std::max(1.0, std::abs(lambda));
  const ContinuousPart& cont = spec.continuous();
  double worst = 0.0;
  double z_prev = 0.0;
  for (std::size_t j = 0; j < spec.atom_count(); ++j) {
    const double z = spec.atom_position(j);
    const double at_atom = lap.evaluate(z, spec) - lambda * f.evaluate(z, spec);
    worst = std::max(worst, std::abs(at_atom));
    for (std::size_t i = 0; i < samples_per_segment; ++i) {
      const double x = z_prev + (static_cast<double>(i) + 0.5) / static_cast<double>(samples_per_segment) * (z - z_prev);
      const double Fx = cont.value(x);
      const double r = lap.interior_value(j, Fx) - lambda * f.segment_value(j, Fx);
      worst = std::max(worst, std::abs(r));
    }
    z_prev = z;
  }
  return worst / scale;
}

double system_residual(const PiecewiseSine& f, const MeasureSpec& spec) {
  require_canonical(spec, f.segments.size());
  const std::size_t n = spec.atom_count();
  const std::vector<double> F = spec.atom_coordinates();
  const double b = f.frequency;
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double alpha = spec.atom_weight(j);
    const SineSegment& here = f.segments[j];
    const SineSegment& next = f.segments[(j + 1) % n];
    const double theta = b * F[j] + here.phase;
    const double theta_next = (j + 1 < n ? b * F[j] : 0.0) + next.phase;

    // f(z+) - f(z) = alpha * f'(z+)
    const double t1 = alpha * b * next.amplitude * std::cos(theta_next);
    const double t2 = next.amplitude * std::sin(theta_next);
    const double t3 = here.amplitude * std::sin(theta);
    worst = std::max(worst, std::abs(t1 - (t2 - t3)) / std::max({1.0, std::abs(t1) + std::abs(t2) + std::abs(t3)}));

    // f'(z-) - f'(z+) = alpha * b^2 f(z)
    const double s1 = alpha * b * b * here.amplitude * std::sin(theta);
    const double s2 = here.amplitude * b * std::cos(theta);
    const double s3 = next.amplitude * b * std::cos(theta_next);
    worst = std::max(worst, std::abs(s1 - (s2 - s3)) / std::max({1.0, std::abs(s1) + std::abs(s2) + std::abs(s3)}));
  }
  return worst;
}

double nabla_mean(const PiecewiseSine& f, const MeasureSpec& spec) {
  return inner_product(apply_nabla(f, spec), PiecewiseSine::constant(1.0, spec.atom_count()), spec);
}

}  // namespace mgl
