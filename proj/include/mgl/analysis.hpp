#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mgl/measure.hpp"
#include "mgl/monodromy.hpp"

namespace mgl {

/// N(x) = number of eigenvalues of -Delta_eta not exceeding x, with
/// multiplicity; ratio = pi N(x) / sqrt(x).
struct CountingSample {
  double x = 0.0;
  std::size_t count = 0;
  double ratio = 0.0;
};

/// Works on any valid measure (the canonical form is used internally).
CountingSample counting_function(const MeasureSpec& spec, double x);
std::vector<CountingSample> counting_sweep(const MeasureSpec& spec, const std::vector<double>& xs);

struct GramReport {
  std::size_t size = 0;
  double max_off_diagonal = 0.0;
  double max_diagonal_defect = 0.0;  // max |<f_i, f_i> - 1|
};

/// Gram matrix in <.,.>_eta of the first m eigenfunctions (multiplicity
/// counted) of the canonical form.
GramReport orthogonality_suite(const MeasureSpec& spec, std::size_t m);
GramReport gram_report(const std::vector<PiecewiseSine>& fns, const MeasureSpec& canonical, std::size_t m);

struct InvariantResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct RunReport {
  MeasureSpec measure;
  SpectrumResult spectrum;
  std::vector<InvariantResult> invariants;
  std::vector<std::pair<std::string, double>> timings;  // seconds

  bool all_passed() const;
};

struct SuiteOptions {
  double b_max = 40.0;
  std::size_t gram_size = 8;
  std::size_t oracle_grid = 200;
};

/// Runs every structural check on the canonical form of `spec`.
RunReport run_invariant_suite(const MeasureSpec& spec, const SuiteOptions& opts = {});

/// Every basis function of a spectrum in |lambda| order.
std::vector<PiecewiseSine> flatten_basis(const SpectrumResult& s);

}  // namespace mgl
