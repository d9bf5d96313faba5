#include "mgl/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "mgl/closed_form.hpp"
#include "mgl/linalg.hpp"
#include "mgl/operator_calculus.hpp"
#include "mgl/roots.hpp"

namespace mgl {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();

void require_canonical(const MeasureSpec& spec) {
  if (!spec.is_canonical()) throw std::invalid_argument("monodromy needs a canonical measure (z_N = 1)");
}

struct Root {
  double b = 0.0;
  int multiplicity = 1;
};

using wide = long double;

// The fixed-point problem written locally: unknowns (u-, w-, u+, w+) at every
// atom with w = v / b, rows
//   u-_j - c u+_{j-1} - s w+_{j-1} = 0,  w-_j + s u+_{j-1} - c w+_{j-1} = 0,
//   w+_j - w-_j + t u-_j = 0,            u+_j - u-_j - t w+_j = 0,
// with c, s from b dF_j, t = alpha_j b and j-1 taken cyclically. Entries are
// O(1) and O(alpha b), unlike the products inside M(b); each row is divided
// by its largest entry. Built and solved in long double: for heavy atoms the
// eigenfunction moves by far more than the root uncertainty of one ulp in b.
std::vector<wide> cyclic_system(const MeasureSpec& spec, wide b) {
  const std::size_t N = spec.atom_count();
  const std::size_t n = 4 * N;
  const std::vector<double> F = spec.atom_coordinates();
  std::vector<wide> K(n * n, 0.0L);
  auto at = [&](std::size_t r, std::size_t c) -> wide& { return K[r * n + c]; };
  for (std::size_t j = 0; j < N; ++j) {
    const std::size_t prev = (j + N - 1) % N;
    const std::size_t um = 4 * j, wm = 4 * j + 1, up = 4 * j + 2, wp = 4 * j + 3;
    const std::size_t pu = 4 * prev + 2, pw = 4 * prev + 3;
    const wide dF = static_cast<wide>(F[j]) - (j == 0 ? 0.0L : static_cast<wide>(F[j - 1]));
    const wide c = std::cos(b * dF), s = std::sin(b * dF);
    const wide t = static_cast<wide>(spec.atom_weight(j)) * b;
    const wide rt = 1.0L / std::max(1.0L, std::abs(t));
    at(um, um) = 1.0L;
    at(um, pu) -= c;
    at(um, pw) -= s;
    at(wm, wm) = 1.0L;
    at(wm, pu) += s;
    at(wm, pw) -= c;
    at(up, wp) = rt;
    at(up, wm) = -rt;
    at(up, um) = t * rt;
    at(wp, up) = rt;
    at(wp, um) = -rt;
    at(wp, wp) = -t * rt;
  }
  return K;
}

std::vector<wide> multiply(const std::vector<wide>& K, const std::vector<wide>& x) {
  const std::size_t n = x.size();
  std::vector<wide> y(n, 0.0L);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) y[r] += K[r * n + c] * x[c];
  return y;
}

struct NullSpace {
  std::vector<std::vector<wide>> vectors;  // best first
  double sigma1 = 0.0;                     // ||K x|| of the best vector
  double sigma2 = 0.0;                     // same for the second
};

// Gram-Schmidt; a vector that collapses onto the earlier ones (exact roots
// make both iterates parallel) is replaced by the coordinate vector least
// represented in the first.
void orthonormalise(std::vector<std::vector<wide>>& q) {
  auto project_out = [&](std::size_t i) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < i; ++j) {
        wide d = 0.0L;
        for (std::size_t r = 0; r < q[i].size(); ++r) d += q[i][r] * q[j][r];
        for (std::size_t r = 0; r < q[i].size(); ++r) q[i][r] -= d * q[j][r];
      }
  };
  auto length = [](const std::vector<wide>& v) {
    wide n = 0.0L;
    for (wide x : v) n += x * x;
    return std::sqrt(n);
  };
  for (std::size_t i = 0; i < q.size(); ++i) {
    const wide before = length(q[i]);
    project_out(i);
    wide n = length(q[i]);
    if (i > 0 && !(n > 1e-12L * before)) {
      std::size_t r = 0;
      for (std::size_t k = 1; k < q[0].size(); ++k)
        if (std::abs(q[0][k]) < std::abs(q[0][r])) r = k;
      std::fill(q[i].begin(), q[i].end(), 0.0L);
      q[i][r] = 1.0L;
      project_out(i);
      n = length(q[i]);
    }
    for (wide& x : q[i]) x /= n;
  }
}

// Two-dimensional subspace inverse iteration on K, then the best pair inside
// the subspace from the 2x2 Gram matrix of K Q.
NullSpace near_null_space(const std::vector<wide>& K, std::size_t n) {
  const WideLu lu(n, K);
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<std::vector<wide>> q(2, std::vector<wide>(n));
  for (auto& v : q)
    for (wide& x : v) x = dist(rng);
  orthonormalise(q);
  for (int it = 0; it < 4; ++it) {
    for (auto& v : q) lu.solve(v);
    orthonormalise(q);
  }
  const std::vector<wide> k0 = multiply(K, q[0]), k1 = multiply(K, q[1]);
  wide g00 = 0.0L, g01 = 0.0L, g11 = 0.0L;
  for (std::size_t r = 0; r < n; ++r) {
    g00 += k0[r] * k0[r];
    g01 += k0[r] * k1[r];
    g11 += k1[r] * k1[r];
  }
  // eigenvectors of [[g00, g01], [g01, g11]]
  const wide theta = 0.5L * std::atan2(2.0L * g01, g00 - g11);
  const wide c = std::cos(theta), s = std::sin(theta);
  const wide big = c * c * g00 + 2.0L * c * s * g01 + s * s * g11;
  const wide small = s * s * g00 - 2.0L * c * s * g01 + c * c * g11;
  std::vector<wide> vb(n), vs(n);
  for (std::size_t r = 0; r < n; ++r) {
    vb[r] = c * q[0][r] + s * q[1][r];
    vs[r] = -s * q[0][r] + c * q[1][r];
  }
  NullSpace out;
  out.vectors = {vs, vb};
  out.sigma1 = static_cast<double>(std::sqrt(std::max(small, 0.0L)));
  out.sigma2 = static_cast<double>(std::sqrt(std::max(big, 0.0L)));
  return out;
}

NullSpace null_space_at(const MeasureSpec& spec, wide b) {
  return near_null_space(cyclic_system(spec, b), 4 * spec.atom_count());
}

// Simple root of det K near b in long double, found by regula falsi with the
// Illinois modification once a sign change is bracketed. Returns b when no
// sign change lies within 1e-9 relative.
wide polish_root(const MeasureSpec& spec, double b) {
  const std::size_t n = 4 * spec.atom_count();
  auto det = [&](wide x) { return WideLu(n, cyclic_system(spec, x)).determinant(); };
  const wide b0 = b;
  const wide d0 = det(b0);
  if (d0 == 0.0L) return b0;
  const wide scale = std::max(1.0L, std::abs(b0));
  wide lo = b0, flo = d0, hi = b0, fhi = d0;
  bool bracketed = false;
  for (wide h = 4.0L * eps * scale; h <= 1e-9L * scale && !bracketed; h *= 4.0L) {
    for (wide x : {b0 - h, b0 + h}) {
      const wide fx = det(x);
      if ((fx < 0.0L) != (d0 < 0.0L)) {
        hi = x;
        fhi = fx;
        bracketed = true;
        break;
      }
    }
  }
  if (!bracketed) return b0;
  int side = 0;
  for (int it = 0; it < 60; ++it) {
    const wide x = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(std::min(lo, hi) < x && x < std::max(lo, hi))) break;
    const wide fx = det(x);
    if (fx == 0.0L) return x;
    if ((fx < 0.0L) == (flo < 0.0L)) {
      lo = x;
      flo = fx;
      if (side == -1) fhi *= 0.5L;
      side = -1;
    } else {
      hi = x;
      fhi = fx;
      if (side == 1) flo *= 0.5L;
      side = 1;
    }
    if (std::abs(hi - lo) <= 4.0L * std::numeric_limits<wide>::epsilon() * scale) break;
  }
  return std::abs(flo) < std::abs(fhi) ? lo : hi;
}

PiecewiseSine from_null_vector(const MeasureSpec& spec, wide b, const std::vector<wide>& x) {
  constexpr wide two_pi = 2.0L * std::numbers::pi_v<wide>;
  const std::size_t N = spec.atom_count();
  const std::vector<double> F = spec.atom_coordinates();
  PiecewiseSine f;
  f.frequency = static_cast<double>(b);
  for (std::size_t j = 0; j < N; ++j) {
    const std::size_t prev = (j + N - 1) % N;
    const wide u = x[4 * prev + 2], w = x[4 * prev + 3];
    const wide F0 = j == 0 ? 0.0L : static_cast<wide>(F[j - 1]);
    wide phase = std::fmod(std::atan2(u, w) - b * F0, two_pi);
    if (phase < 0.0L) phase += two_pi;
    f.segments.push_back({static_cast<double>(std::hypot(u, w)), wrap_phase(static_cast<double>(phase))});
  }
  return f;
}

void scale(PiecewiseSine& f, double s) {
  for (auto& seg : f.segments) seg.amplitude *= s;
}

// b for a closed-form index in the detected family
double family_b(const FamilyMatch& fam, long k) {
  return fam.family == ClosedFormFamily::one_atom ? eigenpair_one_atom(fam.alpha, k).b
                                             : eigenpair_two_atoms(fam.alpha, k).b;
}

// Closed-form index k and signed frequency matching a root b > 0.
std::optional<std::pair<long, double>> label_root(const FamilyMatch& fam, double b) {
  // one atom: b^(k) in (2 pi k - pi/2, 2 pi k + 3 pi/2); two atoms: (2 pi k - pi, 2 pi k + 3 pi)
  const double lo_off = fam.family == ClosedFormFamily::one_atom ? -pi / 2.0 : -pi;
  const double hi_off = fam.family == ClosedFormFamily::one_atom ? 1.5 * pi : 3.0 * pi;
  std::optional<std::pair<long, double>> best;
  double best_err = std::numeric_limits<double>::infinity();
  for (double target : {b, -b}) {
    const long k_lo = static_cast<long>(std::floor((target - hi_off) / (2.0 * pi)));
    const long k_hi = static_cast<long>(std::ceil((target - lo_off) / (2.0 * pi)));
    for (long k = k_lo; k <= k_hi; ++k) {
      if (k == 0) continue;
      const double bk = family_b(fam, k);
      const double err = std::abs(bk - target);
      if (err < best_err) {
        best_err = err;
        best = std::make_pair(k, bk > 0.0 ? b : -b);
      }
    }
  }
  if (!best || best_err > 1e-6 * std::max(1.0, b)) return std::nullopt;
  return best;
}

}  // namespace

Transfer2x2 monodromy(const MeasureSpec& spec, double b) {
  require_canonical(spec);
  const std::vector<double> dF = spec.segment_masses();
  Transfer2x2 M;
  for (std::size_t j = 0; j < spec.atom_count(); ++j)
    M = atom_jump(b, spec.atom_weight(j)) * segment_propagator(b, dF[j]) * M;
  return M;
}

TransferJet monodromy_jet(const MeasureSpec& spec, double b) {
  require_canonical(spec);
  const std::vector<double> dF = spec.segment_masses();
  TransferJet M;
  for (std::size_t j = 0; j < spec.atom_count(); ++j)
    M = atom_jump_jet(b, spec.atom_weight(j)) * segment_propagator_jet(b, dF[j]) * M;
  return M;
}

double discriminant(const MeasureSpec& spec, double b) { return monodromy(spec, b).trace() - 2.0; }

double discriminant_derivative(const MeasureSpec& spec, double b) { return monodromy_jet(spec, b).db.trace(); }

double monodromy_growth(const MeasureSpec& spec, double b) {
  const std::vector<double> dF = spec.segment_masses();
  std::vector<Transfer2x2> factors;
  for (std::size_t j = 0; j < spec.atom_count(); ++j) {
    factors.push_back(segment_propagator(b, dF[j]));
    factors.push_back(atom_jump(b, spec.atom_weight(j)));
  }
  const std::size_t n = factors.size();
  // suffix[k] = A_n ... A_{k+1}
  std::vector<double> suffix(n + 1, 1.0);
  Transfer2x2 left = Transfer2x2::identity();
  for (std::size_t k = n; k-- > 0;) {
    suffix[k] = left.norm_inf();
    left = left * factors[k];
  }
  double g = 0.0;
  Transfer2x2 right = Transfer2x2::identity();
  for (std::size_t k = 0; k < n; ++k) {
    g += suffix[k] * factors[k].norm_inf() * right.norm_inf();
    right = factors[k] * right;
  }
  return std::max(g, 1.0);
}

double default_scan_step(const MeasureSpec& spec) {
  double smallest = std::numeric_limits<double>::infinity();
  for (double m : spec.segment_masses()) smallest = std::min(smallest, m);
  for (const auto& a : spec.atoms()) smallest = std::min(smallest, a.weight);
  const double L = std::max(spec.continuous().total_mass(), 1e-300);
  return std::min({pi * smallest / 8.0, 0.05, pi / (8.0 * L)});
}

FamilyMatch detect_closed_form_family(const MeasureSpec& spec) {
  FamilyMatch m;
  if (!spec.is_canonical()) return m;
  const std::vector<double> F = spec.atom_coordinates();
  const double tol = 1e-14;
  if (spec.atom_count() == 1 && std::abs(F[0] - 1.0) <= tol) {
    m.family = ClosedFormFamily::one_atom;
    m.alpha = spec.atom_weight(0);
  } else if (spec.atom_count() == 2 && spec.atom_weight(0) == spec.atom_weight(1) &&
             std::abs(F[0] - 0.5) <= tol && std::abs(F[1] - 1.0) <= tol) {
    m.family = ClosedFormFamily::two_atoms;
    m.alpha = spec.atom_weight(0);
  }
  return m;
}

std::vector<PiecewiseSine> assemble_eigenfunction(const MeasureSpec& spec, double b, double double_root_tol) {
  require_canonical(spec);
  if (b == 0.0) {
    PiecewiseSine c = PiecewiseSine::constant(1.0 / std::sqrt(spec.total_mass()), spec.atom_count());
    return {c};
  }
  NullSpace ns = null_space_at(spec, b);
  if (ns.sigma1 > 1e-7) {
    std::ostringstream msg;
    msg << "b = " << b << " is not a root: the eigenfunction system has no solution (residual " << ns.sigma1 << ")";
    throw InconsistentRootError(msg.str());
  }
  if (ns.sigma2 > double_root_tol) {
    const wide root = polish_root(spec, b);
    if (root != static_cast<wide>(b)) ns = null_space_at(spec, root);
    PiecewiseSine f1 = from_null_vector(spec, root, ns.vectors[0]);
    scale(f1, 1.0 / norm(f1, spec));
    return {f1};
  }
  PiecewiseSine f1 = from_null_vector(spec, b, ns.vectors[0]);
  scale(f1, 1.0 / norm(f1, spec));

  // subtract the projection segment by segment: same frequency, so the
  // difference of two sines on a segment is again one sine
  const PiecewiseSine f2 = from_null_vector(spec, b, ns.vectors[1]);
  const double p = inner_product(f1, f2, spec);
  PiecewiseSine g = f2;
  for (std::size_t j = 0; j < g.segments.size(); ++j) {
    const SineSegment& s1 = f1.segments[j];
    const SineSegment& s2 = f2.segments[j];
    const double cs = s2.amplitude * std::cos(s2.phase) - p * s1.amplitude * std::cos(s1.phase);
    const double sn = s2.amplitude * std::sin(s2.phase) - p * s1.amplitude * std::sin(s1.phase);
    g.segments[j] = {std::hypot(cs, sn), wrap_phase(std::atan2(sn, cs))};
  }
  scale(g, 1.0 / norm(g, spec));
  return {f1, g};
}

RootKind classify_root(const MeasureSpec& spec, double b, double double_root_tol) {
  require_canonical(spec);
  if (b == 0.0) return RootKind::simple;
  const NullSpace ns = null_space_at(spec, b);
  if (ns.sigma1 > 1e-7) return RootKind::none;
  return ns.sigma2 <= double_root_tol ? RootKind::double_root : RootKind::simple;
}

SpectrumResult find_spectrum(const MeasureSpec& spec, double b_max, const SpectrumOptions& opts) {
  require_canonical(spec);
  if (!(b_max > 0.0)) throw std::invalid_argument("find_spectrum: b_max must be positive");

  SpectrumResult out;
  out.b_max = b_max;
  out.step = opts.step > 0.0 ? opts.step : default_scan_step(spec);
  const std::size_t cells = static_cast<std::size_t>(std::ceil(b_max / out.step));
  const double h = b_max / static_cast<double>(cells);
  out.step = h;

  std::vector<double> grid(cells + 1), D(cells + 1), dD(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) {
    grid[i] = i == cells ? b_max : h * static_cast<double>(i);
    const TransferJet jet = monodromy_jet(spec, grid[i]);
    D[i] = jet.value.trace() - 2.0;
    dD[i] = jet.db.trace();
  }
  out.evaluations = cells + 1;

  auto Df = [&](double b) { ++out.evaluations; return discriminant(spec, b); };
  auto dDf = [&](double b) { ++out.evaluations; return discriminant_derivative(spec, b); };
  auto sgn = [](double x) { return (x > 0.0) - (x < 0.0); };
  const double width = opts.tol;

  std::vector<Root> roots{{0.0, 1}};
  auto touch_root = [&](double c) {
    const RootKind kind = classify_root(spec, c, opts.double_root_tol);
    if (kind != RootKind::none) roots.push_back({c, kind == RootKind::double_root ? 2 : 1});
  };

  for (std::size_t i = 1; i <= cells; ++i) {
    if (D[i] == 0.0) {
      touch_root(grid[i]);
      continue;
    }
    if (i == cells) break;
    const double a = grid[i];
    const double b = grid[i + 1];
    if (D[i + 1] == 0.0) continue;
    if (sgn(D[i]) != sgn(D[i + 1])) {
      roots.push_back({bisect_newton(Df, dDf, a, b, width), 1});
      ++out.refinements;
      continue;
    }
    if (sgn(dD[i]) * sgn(dD[i + 1]) >= 0) continue;
    // one extremum inside: the discriminant may touch or cross zero twice
    const double c = bisect_newton(dDf, [&](double) { return 0.0; }, a, b, width, 0);
    const double Dc = Df(c);
    const double touch_eps = 64.0 * eps * monodromy_growth(spec, c);
    ++out.refinements;
    if (std::abs(Dc) <= touch_eps) {
      touch_root(c);
    } else if (sgn(Dc) != sgn(D[i])) {
      roots.push_back({bisect_newton(Df, dDf, a, c, width), 1});
      roots.push_back({bisect_newton(Df, dDf, c, b, width), 1});
      out.refinements += 2;
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) { return x.b < y.b; });

  const FamilyMatch fam = opts.closed_form_labels ? detect_closed_form_family(spec) : FamilyMatch{};
  std::vector<std::optional<std::pair<long, double>>> labels(roots.size());
  bool labelled = fam.family != ClosedFormFamily::none;
  for (std::size_t r = 1; r < roots.size() && labelled; ++r) {
    labels[r] = label_root(fam, roots[r].b);
    if (!labels[r] || roots[r].multiplicity != 1) labelled = false;
  }
  out.closed_form_labels = labelled;

  for (std::size_t r = 0; r < roots.size(); ++r) {
    EigenPair e;
    e.b = roots[r].b;
    e.k = static_cast<long>(r);
    if (labelled && r > 0) {
      e.k = labels[r]->first;
      e.b = labels[r]->second;
    }
    if (r == 0) e.k = 0;
    e.lambda = -e.b * e.b;
    e.basis = assemble_eigenfunction(spec, e.b, opts.double_root_tol);
    e.multiplicity = static_cast<int>(e.basis.size());
    out.count += static_cast<std::size_t>(e.multiplicity);
    out.pairs.push_back(std::move(e));
  }

  out.weyl_expected = spec.continuous().total_mass() * b_max / pi;
  out.weyl_slack = 2.0 * static_cast<double>(spec.atom_count()) + 2.0;
  out.weyl_ok = std::abs(static_cast<double>(out.count) - out.weyl_expected) <= out.weyl_slack;
  if (!out.weyl_ok) {
    std::ostringstream msg;
    msg << "found " << out.count << " eigenvalues up to b = " << b_max << " but the Weyl estimate is "
        << out.weyl_expected << " +- " << out.weyl_slack << "; the scan step " << h << " may be too coarse";
    out.weyl_message = msg.str();
  }
  return out;
}

}  // namespace mgl
