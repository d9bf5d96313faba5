#pragma once

// Closed-form action of nabla_eta, nabla_eta^* and Delta_eta = -nabla^* nabla on
// piecewise sines, together with the L^2_eta inner product and energy form.
//
// All operators expect a canonical measure (last atom at 1). Point values:
//   nabla f(z_i)    = (f(z_i+) - f(z_i)) / alpha_i     (periodic wrap at z_N)
//   nabla^* g(z_i)  = (g(z_i-) - g(z_i)) / alpha_i
// and on open intervals nabla is d/dF while nabla^* is -d/dF.

#include <cstddef>

#include "mgl/measure.hpp"
#include "mgl/piecewise.hpp"

namespace mgl {

PiecewiseEval apply_nabla(const PiecewiseSine& f, const MeasureSpec& spec);
PiecewiseEval apply_nabla_star(const PiecewiseEval& g, const MeasureSpec& spec);
PiecewiseEval apply_laplacian(const PiecewiseSine& f, const MeasureSpec& spec);

struct InnerProductParts {
  double continuous = 0.0;  // integral against nu
  double atomic = 0.0;      // sum_i alpha_i f(z_i) g(z_i)
  double total() const { return continuous + atomic; }
};

InnerProductParts inner_product_parts(const PiecewiseEval& f, const PiecewiseEval& g, const MeasureSpec& spec);

double inner_product(const PiecewiseEval& f, const PiecewiseEval& g, const MeasureSpec& spec);
double inner_product(const PiecewiseSine& f, const PiecewiseSine& g, const MeasureSpec& spec);
double inner_product(const PiecewiseSine& f, const PiecewiseEval& g, const MeasureSpec& spec);
double inner_product(const PiecewiseEval& f, const PiecewiseSine& g, const MeasureSpec& spec);

double norm(const PiecewiseSine& f, const MeasureSpec& spec);

/// E(f, g) = <nabla f, nabla g>_eta.
double energy(const PiecewiseSine& f, const PiecewiseSine& g, const MeasureSpec& spec);

/// int_{t0}^{t1} c1 sin(w1 t + p1) * c2 sin(w2 t + p2) dt, exactly.
double integrate_sine_product(double t0, double t1, const SineSegment& s1, double w1,
                              const SineSegment& s2, double w2);

/// sup |Delta f - lambda f| / max(1, |lambda|) over the atoms and
/// `samples_per_segment` interior points of every interval.
double eigen_residual(const PiecewiseSine& f, double lambda, const MeasureSpec& spec,
                      std::size_t samples_per_segment = 1000);

/// Largest residual of the eigenfunction system (jump and derivative-jump
/// equation at every atom, including the wrap-around pair at z_N = 1). Each
/// equation's residual is divided by max(1, sum of |terms|).
double system_residual(const PiecewiseSine& f, const MeasureSpec& spec);

/// <nabla f, 1>_eta, which vanishes for every f in the domain of nabla.
double nabla_mean(const PiecewiseSine& f, const MeasureSpec& spec);

}  // namespace mgl
