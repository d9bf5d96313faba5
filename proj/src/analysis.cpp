#include "mgl/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mgl/operator_calculus.hpp"
#include "mgl/oracle.hpp"

namespace mgl {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

InvariantResult upper_bound(std::string name, double value, double bound) {
  InvariantResult r;
  r.name = std::move(name);
  r.value = value;
  r.bound = bound;
  r.passed = value <= bound;
  std::ostringstream msg;
  msg.precision(6);
  msg << (r.passed ? "max " : "violated: ") << value << (r.passed ? " <= " : " > ") << bound;
  r.detail = msg.str();
  return r;
}

InvariantResult flag(std::string name, bool ok, std::string detail) {
  InvariantResult r;
  r.name = std::move(name);
  r.passed = ok;
  r.value = ok ? 1.0 : 0.0;
  r.bound = 1.0;
  r.detail = std::move(detail);
  return r;
}

}  // namespace

CountingSample counting_function(const MeasureSpec& spec, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("counting_function: x must be positive");
  const MeasureSpec canonical = to_canonical(spec).spec;
  const double root = std::sqrt(x);
  const SpectrumResult s = find_spectrum(canonical, root);
  CountingSample out;
  out.x = x;
  for (const auto& e : s.pairs)
    if (e.b * e.b <= x) out.count += static_cast<std::size_t>(e.multiplicity);
  out.ratio = std::numbers::pi * static_cast<double>(out.count) / root;
  return out;
}

std::vector<CountingSample> counting_sweep(const MeasureSpec& spec, const std::vector<double>& xs) {
  std::vector<CountingSample> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(counting_function(spec, x));
  return out;
}

std::vector<PiecewiseSine> flatten_basis(const SpectrumResult& s) {
  std::vector<PiecewiseSine> out;
  for (const auto& e : s.pairs)
    for (const auto& f : e.basis) out.push_back(f);
  return out;
}

GramReport gram_report(const std::vector<PiecewiseSine>& fns, const MeasureSpec& canonical, std::size_t m) {
  GramReport r;
  r.size = std::min(m, fns.size());
  for (std::size_t i = 0; i < r.size; ++i) {
    for (std::size_t j = i; j < r.size; ++j) {
      const double g = inner_product(fns[i], fns[j], canonical);
      if (i == j)
        r.max_diagonal_defect = std::max(r.max_diagonal_defect, std::abs(g - 1.0));
      else
        r.max_off_diagonal = std::max(r.max_off_diagonal, std::abs(g));
    }
  }
  return r;
}

GramReport orthogonality_suite(const MeasureSpec& spec, std::size_t m) {
  const MeasureSpec canonical = to_canonical(spec).spec;
  const double L = canonical.continuous().total_mass();
  double b_max = std::numbers::pi * (static_cast<double>(m) + 2.0) / L;
  SpectrumResult s = find_spectrum(canonical, b_max);
  while (s.count < m) {
    b_max *= 2.0;
    s = find_spectrum(canonical, b_max);
  }
  return gram_report(flatten_basis(s), canonical, m);
}

bool RunReport::all_passed() const {
  return std::all_of(invariants.begin(), invariants.end(), [](const InvariantResult& r) { return r.passed; });
}

RunReport run_invariant_suite(const MeasureSpec& spec, const SuiteOptions& opts) {
  const MeasureSpec canonical = to_canonical(spec).spec;
  auto t0 = std::chrono::steady_clock::now();
  RunReport report{canonical, find_spectrum(canonical, opts.b_max), {}, {}};
  report.timings.emplace_back("spectrum", seconds_since(t0));
  const SpectrumResult& s = report.spectrum;
  auto& inv = report.invariants;

  t0 = std::chrono::steady_clock::now();
  double det_defect = 0.0;
  const std::vector<double> dF = canonical.segment_masses();
  for (std::size_t i = 0; i <= 200; ++i) {
    const double b = opts.b_max * static_cast<double>(i) / 200.0;
    for (std::size_t j = 0; j < canonical.atom_count(); ++j) {
      det_defect = std::max(det_defect, std::abs(segment_propagator(b, dF[j]).det() - 1.0));
      det_defect = std::max(det_defect, std::abs(atom_jump(b, canonical.atom_weight(j)).det() - 1.0));
    }
    const Transfer2x2 M = monodromy(canonical, b);
    det_defect = std::max(det_defect, std::abs(M.det() - 1.0) / std::max(1.0, M.norm_inf() * M.norm_inf()));
  }
  inv.push_back(upper_bound("transfer determinant |det - 1|", det_defect, 1e-10));

  const bool zero_root = !s.pairs.empty() && s.pairs.front().b == 0.0 && s.pairs.front().multiplicity == 1;
  bool constant = zero_root;
  if (zero_root) {
    const PiecewiseSine& f = s.pairs.front().fn();
    for (const auto& seg : f.segments)
      constant = constant && std::abs(seg.amplitude * std::sin(seg.phase) - f.segments[0].amplitude *
                                                                                 std::sin(f.segments[0].phase)) < 1e-14;
  }
  inv.push_back(flag("b = 0 is a simple root with constant eigenfunction", constant,
                     constant ? "ok" : "violated: first root is not a simple b = 0 with a constant function"));

  double eig_res = 0.0, sys_res = 0.0, mean = 0.0, adjoint = 0.0, min_energy = 0.0, max_lambda = -1.0;
  for (const auto& e : s.pairs) {
    max_lambda = std::max(max_lambda, e.lambda);
    for (const auto& f : e.basis) {
      eig_res = std::max(eig_res, eigen_residual(f, e.lambda, canonical));
      sys_res = std::max(sys_res, system_residual(f, canonical));
      mean = std::max(mean, std::abs(nabla_mean(f, canonical)));
      const double E = energy(f, f, canonical);
      min_energy = std::min(min_energy, E);
      const double lap = inner_product(apply_laplacian(f, canonical), f, canonical);
      adjoint = std::max(adjoint, std::abs(E + lap) / std::max(1.0, std::abs(E)));
    }
  }
  inv.push_back(upper_bound("pointwise eigen-residual", eig_res, 1e-8));
  inv.push_back(upper_bound("eigenfunction system residual", sys_res, 1e-10));
  inv.push_back(upper_bound("mean of nabla f", mean, 1e-10));
  inv.push_back(upper_bound("energy vs -<Delta f, f> (relative)", adjoint, 1e-9));
  inv.push_back(upper_bound("negative energy", -min_energy, 1e-12));
  inv.push_back(upper_bound("largest eigenvalue", max_lambda, 1e-10));

  const GramReport gram = gram_report(flatten_basis(s), canonical, opts.gram_size);
  inv.push_back(upper_bound("Gram off-diagonal", gram.max_off_diagonal, 1e-8));
  inv.push_back(upper_bound("Gram diagonal |<f,f> - 1|", gram.max_diagonal_defect, 1e-10));

  const FamilyMatch fam = detect_closed_form_family(canonical);
  if (fam.family != ClosedFormFamily::none) {
    bool simple = true;
    for (const auto& e : s.pairs) simple = simple && e.multiplicity == 1;
    inv.push_back(flag("all eigenvalues simple (one or two equal atoms)", simple,
                       simple ? "ok" : "violated: a multiplicity-2 root was found"));
  }

  inv.push_back(flag("Weyl count of the scan", s.weyl_ok, s.weyl_ok ? "ok" : s.weyl_message));
  report.timings.emplace_back("analytic checks", seconds_since(t0));

  t0 = std::chrono::steady_clock::now();
  const SymmetricProfile prof = laplacian_profile(discretize(canonical, opts.oracle_grid));
  const Eigensystem es = lowest_eigenpairs(prof, std::min<std::size_t>(3, prof.matrix.size()));
  inv.push_back(upper_bound("oracle profile asymmetry", prof.matrix.max_asymmetry(), 1e-12));
  inv.push_back(upper_bound("oracle largest eigenvalue", *std::max_element(es.values.begin(), es.values.end()), 1e-10));
  const double gap = es.values.size() > 1 ? es.values[1] : -1.0;
  inv.push_back(upper_bound("oracle second eigenvalue (kernel is one-dimensional)", gap, -1e-6));
  report.timings.emplace_back("oracle", seconds_since(t0));
  return report;
}

}  // namespace mgl
