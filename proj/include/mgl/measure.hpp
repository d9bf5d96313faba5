#pragma once

// Measures of the form eta = nu + sum_i alpha_i delta_{z_i} on (0,1].
//
// The continuous part nu is either Lebesgue measure or a measure with a
// strictly increasing piecewise-linear distribution function. Atoms are kept
// sorted by position. Everything here is an immutable value type once
// validated.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mgl {

class MeasureError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct Atom {
  double position = 0.0;
  double weight = 0.0;
};

struct CdfKnot {
  double x = 0.0;
  double F = 0.0;
};

/// Distribution function of the continuous part.
class ContinuousPart {
public:
  static ContinuousPart lebesgue();
  /// Knots must start at (0,0), end at x = 1 and increase strictly in both
  /// coordinates. Throws MeasureError otherwise.
  static ContinuousPart piecewise_linear(std::vector<CdfKnot> knots);

  bool is_lebesgue() const { return knots_.empty(); }
  const std::vector<CdfKnot>& knots() const { return knots_; }

  /// F(x) for x in [0,1].
  double value(double x) const;
  double total_mass() const;
  /// dF/dx on the knot interval containing x (right derivative at knots).
  double density(double x) const;
  /// Generalised inverse; F is strictly increasing so this is exact.
  double inverse(double F) const;

private:
  ContinuousPart() = default;
  std::vector<CdfKnot> knots_;
};

/// Unvalidated description as read from user input.
struct RawMeasure {
  std::optional<std::vector<CdfKnot>> cdf_knots;  // nullopt: Lebesgue
  std::vector<Atom> atoms;
};

class MeasureSpec {
public:
  MeasureSpec(ContinuousPart continuous, std::vector<Atom> atoms);

  const ContinuousPart& continuous() const { return continuous_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t atom_count() const { return atoms_.size(); }

  double atom_position(std::size_t i) const { return atoms_[i].position; }
  double atom_weight(std::size_t i) const { return atoms_[i].weight; }

  /// F_nu(z_N) == 1 is not required; the last atom sitting at 1 is.
  bool is_canonical() const { return atoms_.back().position == 1.0; }

  /// nu((0,1]) + sum_i alpha_i.
  double total_mass() const;

  /// F_nu at each atom position, i.e. the F-coordinate of z_1..z_N.
  std::vector<double> atom_coordinates() const;
  /// nu((z_{j-1}, z_j]) with z_0 = 0, one entry per atom.
  std::vector<double> segment_masses() const;

  /// Index j of the interval (z_{j-1}, z_j] that contains x, or atom_count()
  /// for the tail (z_N, 1] of a non-canonical measure.
  std::size_t segment_of(double x) const;
  /// Number of intervals: N in canonical form, N + 1 otherwise.
  std::size_t interval_count() const { return is_canonical() ? atoms_.size() : atoms_.size() + 1; }

private:
  ContinuousPart continuous_;
  std::vector<Atom> atoms_;
};

/// Checks every invariant and sorts atoms ascending.
MeasureSpec validate_measure(const RawMeasure& raw);

/// F_nu(x) of the continuous part only. Throws MeasureError for x outside [0,1].
double distribution_value(const MeasureSpec& spec, double x);

struct CanonicalForm {
  MeasureSpec spec;
  double shift = 0.0;  // 1 - z_N of the input
};

/// Rotates the circle (0,1] so the last atom sits at 1. The continuous part
/// is rotated along with the atoms.
CanonicalForm to_canonical(const MeasureSpec& spec);

}  // namespace mgl
