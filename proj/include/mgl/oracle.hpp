#pragma once

// Discrete cross-check: replace the continuous part by point masses and solve
// the resulting weighted cycle-graph Laplacian. For a purely atomic measure
// with weights w_i on a cycle,
//   (Delta f)_i = [ (f_{i+1} - f_i)/w_i - (f_i - f_{i-1})/w_{i-1} ] / w_i,
// which is self-adjoint in sum_i w_i f_i g_i. The profile is the symmetric
// matrix D^{1/2} Delta D^{-1/2}, D = diag(w).

#include <cstddef>
#include <string>
#include <vector>

#include "mgl/linalg.hpp"
#include "mgl/measure.hpp"
#include "mgl/monodromy.hpp"

namespace mgl {

struct AtomicApprox {
  std::vector<double> positions;  // ascending in (0,1]
  std::vector<double> weights;
  std::vector<char> original;     // 1 for an atom of the input measure
};

/// Midpoint discretisation: every interval between atoms (and the tail when
/// z_N < 1) is cut into max(1, round(n * nu-mass)) equal cells in x, each
/// replaced by an atom at its midpoint carrying the cell's nu-mass.
AtomicApprox discretize(const MeasureSpec& spec, std::size_t n);

struct SymmetricProfile {
  DenseMatrix matrix;
  std::vector<double> weights;
};

SymmetricProfile laplacian_profile(const AtomicApprox& a);

/// Delta f on the cycle, without symmetrisation.
std::vector<double> apply_discrete_laplacian(const std::vector<double>& weights, const std::vector<double>& f);

/// The m eigenpairs of largest value (closest to 0), descending. The kernel
/// vector D^{1/2} 1 is split off exactly; the remaining eigenvalues are
/// Rayleigh quotients -sum w (grad f)^2 / sum w f^2 of the computed vectors.
Eigensystem lowest_eigenpairs(const SymmetricProfile& p, std::size_t m);

struct ErrorReport {
  std::vector<double> analytic;
  std::vector<double> oracle;
  std::vector<double> relative_errors;  // |oracle - analytic| / max(1, |analytic|)
  double max_error = 0.0;
  bool length_mismatch = false;
  std::string message;
};

/// Compares the first m eigenvalues, each analytic root repeated by its
/// multiplicity. Both lists are ordered by |lambda|.
ErrorReport compare_spectra(const SpectrumResult& analytic, const std::vector<double>& oracle, std::size_t m);
ErrorReport compare_spectra(const std::vector<double>& analytic, const std::vector<double>& oracle, std::size_t m);

}  // namespace mgl
