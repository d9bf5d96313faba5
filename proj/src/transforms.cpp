#include "mgl/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mgl {

double XPiecewiseSine::evaluate(double x) const {
  auto it = std::lower_bound(pieces.begin(), pieces.end(), x,
                             [](const XPiece& p, double v) { return p.x1 < v; });
  if (it == pieces.end()) it = pieces.end() - 1;
  return it->amplitude * std::sin(it->frequency * x + it->phase);
}

XPiecewiseSine pullback_to_x(const PiecewiseSine& f, const MeasureSpec& spec) {
  if (f.segments.size() != spec.interval_count())
    throw std::invalid_argument("pullback_to_x: segment count does not match the measure");
  const ContinuousPart& cont = spec.continuous();
  const double b = f.frequency;

  std::vector<double> bounds{0.0};
  for (const auto& a : spec.atoms()) bounds.push_back(a.position);
  if (!spec.is_canonical()) bounds.push_back(1.0);

  XPiecewiseSine out;
  for (std::size_t j = 0; j + 1 < bounds.size(); ++j) {
    const SineSegment& s = f.segments[j];
    const double lo = bounds[j];
    const double hi = bounds[j + 1];
    if (cont.is_lebesgue()) {
      out.pieces.push_back({lo, hi, s.amplitude, b, s.phase});
      continue;
    }
    std::vector<double> cuts{lo};
    for (const auto& k : cont.knots())
      if (k.x > lo && k.x < hi) cuts.push_back(k.x);
    cuts.push_back(hi);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double x0 = cuts[c];
      const double x1 = cuts[c + 1];
      const double slope = cont.density(0.5 * (x0 + x1));
      const double F0 = cont.value(x0);
      out.pieces.push_back({x0, x1, s.amplitude, b * slope, b * (F0 - slope * x0) + s.phase});
    }
  }
  return out;
}

bool equally_spaced(const MeasureSpec& spec) {
  const double n = static_cast<double>(spec.atom_count());
  for (std::size_t i = 0; i < spec.atom_count(); ++i)
    if (std::abs(spec.atom_position(i) - static_cast<double>(i + 1) / n) > 1e-12) return false;
  return true;
}

namespace {

void require_periodic_lattice(const MeasureSpec& spec, const char* who) {
  if (!spec.continuous().is_lebesgue()) throw std::invalid_argument(std::string(who) + ": needs a Lebesgue continuous part");
  if (!equally_spaced(spec)) throw std::invalid_argument(std::string(who) + ": atoms must sit at i/N");
}

std::size_t wrap_index(long i, long n) { return static_cast<std::size_t>(((i % n) + n) % n); }

}  // namespace

RotatedEigenfunction rotate_eigenfunction(const PiecewiseSine& f, const MeasureSpec& spec, long r) {
  require_periodic_lattice(spec, "rotate_eigenfunction");
  const long n = static_cast<long>(spec.atom_count());
  if (r < 2 || r > n) {
    std::ostringstream msg;
    msg << "rotate_eigenfunction: r = " << r << " is outside 2.." << n;
    throw std::invalid_argument(msg.str());
  }
  if (f.segments.size() != spec.atom_count())
    throw std::invalid_argument("rotate_eigenfunction: segment count does not match the measure");
  const long s = r - 1;
  const double b = f.frequency;
  const double lag = static_cast<double>(s) / static_cast<double>(n);

  PiecewiseSine fr;
  fr.frequency = b;
  std::vector<Atom> atoms;
  for (long i = 0; i < n; ++i) {
    const std::size_t j = wrap_index(i - s, n);
    const double wrap = i < s ? b : 0.0;
    fr.segments.push_back({f.segments[j].amplitude, wrap_phase(f.segments[j].phase - b * lag + wrap)});
    atoms.push_back({spec.atom_position(static_cast<std::size_t>(i)), spec.atom_weight(j)});
  }
  return {fr, MeasureSpec(ContinuousPart::lebesgue(), std::move(atoms))};
}

MeasureSpec concatenate_measure(const MeasureSpec& base, long k) {
  require_periodic_lattice(base, "concatenate_measure");
  if (k < 1) throw std::invalid_argument("concatenate_measure: k must be at least 1");
  const long p = static_cast<long>(base.atom_count());
  const long n = p * k;
  std::vector<Atom> atoms;
  for (long i = 1; i <= n; ++i) {
    const double z = i == n ? 1.0 : static_cast<double>(i) / static_cast<double>(n);
    atoms.push_back({z, base.atom_weight(wrap_index(i - 1, p)) / static_cast<double>(k)});
  }
  return MeasureSpec(ContinuousPart::lebesgue(), std::move(atoms));
}

PiecewiseSine concatenate_eigenfunction(const PiecewiseSine& f, long k) {
  if (k < 1) throw std::invalid_argument("concatenate_eigenfunction: k must be at least 1");
  const long p = static_cast<long>(f.segments.size());
  PiecewiseSine out;
  out.frequency = static_cast<double>(k) * f.frequency;
  for (long i = 0; i < p * k; ++i) {
    const SineSegment& s = f.segments[static_cast<std::size_t>(i % p)];
    const double q = static_cast<double>(i / p);
    out.segments.push_back({s.amplitude, wrap_phase(s.phase - f.frequency * q)});
  }
  return out;
}

PiecewiseSine to_original_coordinates(const PiecewiseSine& canonical_f, const MeasureSpec& original) {
  if (original.is_canonical()) return canonical_f;
  if (canonical_f.segments.size() != original.atom_count())
    throw std::invalid_argument("to_original_coordinates: segment count does not match the measure");
  const ContinuousPart& cont = original.continuous();
  const double FzN = cont.value(original.atoms().back().position);
  const double tail = cont.total_mass() - FzN;
  const double b = canonical_f.frequency;

  PiecewiseSine out;
  out.frequency = b;
  for (const auto& s : canonical_f.segments) out.segments.push_back({s.amplitude, wrap_phase(s.phase + b * tail)});
  const SineSegment& first = canonical_f.segments.front();
  out.segments.push_back({first.amplitude, wrap_phase(first.phase - b * FzN)});
  return out;
}

}  // namespace mgl
