#pragma once

#include <vector>

#include "mgl/piecewise.hpp"

namespace mgl {

/// An eigenvalue lambda = -b^2 of Delta_eta with an eta-orthonormal basis of
/// its eigenspace (one function unless multiplicity is 2).
struct EigenPair {
  long k = 0;  // closed-form index, or rank when no closed-form family applies
  double b = 0.0;
  double lambda = 0.0;
  std::vector<PiecewiseSine> basis;
  int multiplicity = 1;

  const PiecewiseSine& fn() const { return basis.front(); }
};

}  // namespace mgl
