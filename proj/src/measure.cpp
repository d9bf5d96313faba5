#include "mgl/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mgl {

ContinuousPart ContinuousPart::lebesgue() { return ContinuousPart{}; }

ContinuousPart ContinuousPart::piecewise_linear(std::vector<CdfKnot> knots) {
  if (knots.size() < 2) throw MeasureError("piecewise_linear_cdf needs at least two knots");
  for (const auto& k : knots) {
    if (!std::isfinite(k.x) || !std::isfinite(k.F))
      throw MeasureError("piecewise_linear_cdf knots must be finite");
  }
  if (knots.front().x != 0.0 || knots.front().F != 0.0)
    throw MeasureError("piecewise_linear_cdf must start at the knot (0,0)");
  if (knots.back().x != 1.0) throw MeasureError("piecewise_linear_cdf must end at x = 1");
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i].x > knots[i - 1].x) || !(knots[i].F > knots[i - 1].F)) {
      std::ostringstream msg;
      msg << "piecewise_linear_cdf knots must be strictly increasing (knot " << i << ")";
      throw MeasureError(msg.str());
    }
  }
  ContinuousPart part;
  part.knots_ = std::move(knots);
  return part;
}

namespace {

// Index m with knots[m].x <= x < knots[m+1].x, clamped to the last interval.
std::size_t knot_interval(const std::vector<CdfKnot>& knots, double x) {
  auto it = std::upper_bound(knots.begin(), knots.end(), x,
                             [](double v, const CdfKnot& k) { return v < k.x; });
  std::size_t m = it == knots.begin() ? 0 : static_cast<std::size_t>(it - knots.begin()) - 1;
  return std::min(m, knots.size() - 2);
}

}  // namespace

double ContinuousPart::value(double x) const {
  if (is_lebesgue()) return x;
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return knots_.back().F;
  const std::size_t m = knot_interval(knots_, x);
  const CdfKnot& a = knots_[m];
  const CdfKnot& b = knots_[m + 1];
  return a.F + (b.F - a.F) * (x - a.x) / (b.x - a.x);
}

double ContinuousPart::total_mass() const { return is_lebesgue() ? 1.0 : knots_.back().F; }

double ContinuousPart::density(double x) const {
  if (is_lebesgue()) return 1.0;
  const std::size_t m = knot_interval(knots_, x);
  return (knots_[m + 1].F - knots_[m].F) / (knots_[m + 1].x - knots_[m].x);
}

double ContinuousPart::inverse(double F) const {
  if (is_lebesgue()) return F;
  if (F <= 0.0) return 0.0;
  if (F >= knots_.back().F) return 1.0;
  auto it = std::upper_bound(knots_.begin(), knots_.end(), F,
                             [](double v, const CdfKnot& k) { return v < k.F; });
  const std::size_t m = std::min(static_cast<std::size_t>(it - knots_.begin()) - 1, knots_.size() - 2);
  const CdfKnot& a = knots_[m];
  const CdfKnot& b = knots_[m + 1];
  return a.x + (b.x - a.x) * (F - a.F) / (b.F - a.F);
}

MeasureSpec::MeasureSpec(ContinuousPart continuous, std::vector<Atom> atoms)
    : continuous_(std::move(continuous)), atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw MeasureError("measure needs at least one atom");
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const Atom& a = atoms_[i];
    if (!std::isfinite(a.weight) || !(a.weight > 0.0)) {
      std::ostringstream msg;
      msg << "atom weight must be positive (atom at " << a.position << " has weight " << a.weight << ")";
      throw MeasureError(msg.str());
    }
    if (!std::isfinite(a.position) || !(a.position > 0.0) || a.position > 1.0) {
      std::ostringstream msg;
      msg << "atom position " << a.position << " is outside (0,1]";
      throw MeasureError(msg.str());
    }
    if (i > 0 && !(a.position > atoms_[i - 1].position)) {
      std::ostringstream msg;
      if (a.position == atoms_[i - 1].position)
        msg << "duplicate atom position " << a.position;
      else
        msg << "atoms are not sorted at position " << a.position;
      throw MeasureError(msg.str());
    }
  }
}

double MeasureSpec::total_mass() const {
  double mass = continuous_.total_mass();
  for (const auto& a : atoms_) mass += a.weight;
  return mass;
}

std::vector<double> MeasureSpec::atom_coordinates() const {
  std::vector<double> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back(continuous_.value(a.position));
  return out;
}

std::vector<double> MeasureSpec::segment_masses() const {
  std::vector<double> out;
  out.reserve(atoms_.size());
  double prev = 0.0;
  for (const auto& a : atoms_) {
    const double F = continuous_.value(a.position);
    out.push_back(F - prev);
    prev = F;
  }
  return out;
}

std::size_t MeasureSpec::segment_of(double x) const {
  // first atom with position >= x; intervals are (z_{j-1}, z_j]
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Atom& a, double v) { return a.position < v; });
  return static_cast<std::size_t>(it - atoms_.begin());
}

MeasureSpec validate_measure(const RawMeasure& raw) {
  ContinuousPart continuous =
      raw.cdf_knots ? ContinuousPart::piecewise_linear(*raw.cdf_knots) : ContinuousPart::lebesgue();
  std::vector<Atom> atoms = raw.atoms;
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.position < b.position; });
  return MeasureSpec(std::move(continuous), std::move(atoms));
}

double distribution_value(const MeasureSpec& spec, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << "distribution_value: x = " << x << " is outside [0,1]";
    throw MeasureError(msg.str());
  }
  return spec.continuous().value(x);
}

CanonicalForm to_canonical(const MeasureSpec& spec) {
  if (spec.is_canonical()) return CanonicalForm{spec, 0.0};

  const double zN = spec.atoms().back().position;
  const double shift = 1.0 - zN;

  std::vector<Atom> atoms;
  atoms.reserve(spec.atom_count());
  for (const auto& a : spec.atoms()) atoms.push_back({a.position + shift, a.weight});
  atoms.back().position = 1.0;
  // Rounding in z_i + shift may break strict ordering only if two atoms were
  // already within an ulp; the MeasureSpec constructor reports that.

  const ContinuousPart& cont = spec.continuous();
  if (cont.is_lebesgue()) return CanonicalForm{MeasureSpec(ContinuousPart::lebesgue(), std::move(atoms)), shift};

  // (z_N, 1] moves to (0, shift], (0, z_N] moves to (shift, 1].
  const double FzN = cont.value(zN);
  const double tail = cont.total_mass() - FzN;
  std::vector<CdfKnot> knots{{0.0, 0.0}};
  for (const auto& k : cont.knots())
    if (k.x > zN && k.x < 1.0) knots.push_back({k.x - zN, k.F - FzN});
  knots.push_back({shift, tail});
  for (const auto& k : cont.knots())
    if (k.x > 0.0 && k.x < zN) knots.push_back({k.x + shift, tail + k.F});
  knots.push_back({1.0, cont.total_mass()});

  std::vector<CdfKnot> cleaned;
  for (const auto& k : knots) {
    if (!cleaned.empty() && !(k.x > cleaned.back().x)) continue;
    cleaned.push_back(k);
  }
  return CanonicalForm{MeasureSpec(ContinuousPart::piecewise_linear(std::move(cleaned)), std::move(atoms)), shift};
}

}  // namespace mgl
