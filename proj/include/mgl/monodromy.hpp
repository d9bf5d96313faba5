#pragma once

// Spectrum of Delta_eta for any canonical measure through the monodromy
// M(b) = J_N S_N ... J_1 S_1. An eigenvalue -b^2 exists iff M(b) has a fixed
// vector, i.e. iff tr M(b) = 2 (det M = 1). M is even in b, so roots are
// searched on b >= 0.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mgl/eigenpair.hpp"
#include "mgl/measure.hpp"
#include "mgl/transfer.hpp"

namespace mgl {

class InconsistentRootError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

Transfer2x2 monodromy(const MeasureSpec& spec, double b);
TransferJet monodromy_jet(const MeasureSpec& spec, double b);

/// tr M(b) - 2.
double discriminant(const MeasureSpec& spec, double b);
double discriminant_derivative(const MeasureSpec& spec, double b);

/// First-order rounding amplification of the product: the sum over factors
/// A_k of ||A_n ... A_{k+1}|| ||A_k|| ||A_{k-1} ... A_1||. The rounding
/// error of M(b) is about eps * growth.
double monodromy_growth(const MeasureSpec& spec, double b);

struct SpectrumOptions {
  double tol = 1e-12;              // root width
  double step = 0.0;               // scan step, 0 = automatic
  double double_root_tol = 1e-8;   // second singular value bound for a 2-dim eigenspace
  bool closed_form_labels = true;        // label by closed-form index when possible
};

struct SpectrumResult {
  std::vector<EigenPair> pairs;  // ascending |lambda|
  double b_max = 0.0;
  double step = 0.0;
  std::size_t evaluations = 0;
  std::size_t refinements = 0;
  bool closed_form_labels = false;
  std::size_t count = 0;  // roots counted with multiplicity, b = 0 included
  double weyl_expected = 0.0;
  double weyl_slack = 0.0;
  bool weyl_ok = true;
  std::string weyl_message;
};

/// Every root of the discriminant in [0, b_max] with eigenfunctions attached.
/// Requires a canonical measure.
SpectrumResult find_spectrum(const MeasureSpec& spec, double b_max, const SpectrumOptions& opts = {});

/// Default scan step for a measure.
double default_scan_step(const MeasureSpec& spec);

/// Eta-orthonormal eigenfunctions for a root b, read off the null space of the
/// eigenfunction system written atom by atom (row-equilibrated, entries of
/// size 1 and alpha b). Two functions when the second smallest singular
/// value is below double_root_tol; throws InconsistentRootError when even the
/// smallest exceeds 1e-7. The system is solved in long double and, for a
/// simple root, b is first moved to the nearby sign change of its
/// determinant, so the returned frequency can differ from b in the last bits.
std::vector<PiecewiseSine> assemble_eigenfunction(const MeasureSpec& spec, double b,
                                                  double double_root_tol = 1e-8);

enum class RootKind { none, simple, double_root };

/// Same test as assemble_eigenfunction without building the functions.
RootKind classify_root(const MeasureSpec& spec, double b, double double_root_tol = 1e-8);

/// Measures that have a closed-form family.
enum class ClosedFormFamily { none, one_atom, two_atoms };

struct FamilyMatch {
  ClosedFormFamily family = ClosedFormFamily::none;
  double alpha = 0.0;
};

/// One atom at 1 with F_nu(1) = 1, or two equal atoms with F_nu(z_1) = 1/2 and
/// F_nu(1) = 1.
FamilyMatch detect_closed_form_family(const MeasureSpec& spec);

}  // namespace mgl
