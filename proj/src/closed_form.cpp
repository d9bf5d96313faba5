#include "mgl/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mgl/roots.hpp"

namespace mgl {

namespace {

constexpr double pi = std::numbers::pi;

// sin(c) - (A - B c) cos(c): same sign as tan(c) - (A - B c) on (-pi/2, pi/2)
// and free of poles.
double h_value(double c, double A, double B) { return std::sin(c) - (A - B * c) * std::cos(c); }

double h_derivative(double c, double A, double B) {
  return (1.0 + B) * std::cos(c) + (A - B * c) * std::sin(c);
}

TanLineSolution make_solution(double c, double B) {
  TanLineSolution s;
  s.c = c;
  const double sec2 = 1.0 / (std::cos(c) * std::cos(c));
  s.near_tangent = std::abs(sec2 + B) < 1e-8;
  return s;
}

double solve_on(double lo, double hi, double A, double B) {
  return bisect_newton([&](double c) { return h_value(c, A, B); },
                       [&](double c) { return h_derivative(c, A, B); }, lo, hi, 1e-15);
}

}  // namespace

double tan_line_residual(double c, double A, double B) {
  const double cs = std::cos(c);
  return std::abs(std::sin(c) * cs - (A - B * c) * cs * cs);
}

std::vector<TanLineSolution> solve_tan_affine(double A, double B) {
  const double lo = -pi / 2.0;
  const double hi = pi / 2.0;
  std::vector<TanLineSolution> out;
  if (B >= -1.0) {
    // tan(c) + B c is non-decreasing: exactly one root
    out.push_back(make_solution(solve_on(lo, hi, A, B), B));
    return out;
  }
  // tan(c) + B c increases, decreases, increases with turning points at
  // cos^2(c) = -1/B.
  const double cstar = std::acos(1.0 / std::sqrt(-B));
  const double edges[4] = {lo, -cstar, cstar, hi};
  double values[4];
  for (int i = 0; i < 4; ++i) values[i] = h_value(edges[i], A, B);
  // a turning point that lies on the root within rounding is a double root
  auto touching = [&](int i) {
    const double scale = 1.0 + std::abs(A) + std::abs(B * edges[i]);
    return std::abs(values[i]) <= 1e-14 * scale;
  };
  for (int piece = 0; piece < 3; ++piece) {
    const int a = piece;
    const int b = piece + 1;
    if (a > 0 && touching(a)) {
      if (out.empty() || std::abs(out.back().c - edges[a]) > 1e-12) {
        TanLineSolution s = make_solution(edges[a], B);
        s.near_tangent = true;
        out.push_back(s);
      }
      continue;
    }
    if (b < 3 && touching(b)) continue;
    if ((values[a] < 0.0) != (values[b] < 0.0)) out.push_back(make_solution(solve_on(edges[a], edges[b], A, B), B));
  }
  return out;
}

std::vector<TanLineSolution> solve_tan_line(const TanLineProblem& p) {
  if (p.beta == 0.0) throw std::invalid_argument("solve_tan_line: beta must be nonzero");
  const double s = p.sign >= 0 ? 1.0 : -1.0;
  const double A = s * p.beta * pi / 2.0 + 2.0 * pi * p.beta * static_cast<double>(p.k) + s;
  const double B = 2.0 * p.beta;
  std::vector<TanLineSolution> out = solve_tan_affine(A, B);
  for (auto& sol : out) sol.xi = (std::tan(sol.c) - s) / p.beta;
  return out;
}

double one_atom_rhs(double alpha, long k, double gamma) {
  return -2.0 * gamma * alpha + alpha * pi / 2.0 + 2.0 * pi * alpha * static_cast<double>(k) + 1.0;
}

double two_atom_rhs(double alpha, long k, double gamma1) {
  return 1.0 - 4.0 * alpha * gamma1 + alpha * pi + 2.0 * pi * alpha * static_cast<double>(k);
}

double one_atom_gamma(double alpha, long k) {
  if (k == 0) return pi / 4.0;
  const double A = alpha * pi / 2.0 + 2.0 * pi * alpha * static_cast<double>(k) + 1.0;
  return solve_tan_affine(A, 2.0 * alpha).front().c;
}

double two_atom_gamma1(double alpha, long k) {
  if (k == 0) return pi / 4.0;
  const double A = 1.0 + alpha * pi + 2.0 * pi * alpha * static_cast<double>(k);
  return solve_tan_affine(A, 4.0 * alpha).front().c;
}

EigenPair eigenpair_one_atom(double alpha, long k) {
  if (!(alpha > 0.0)) throw std::invalid_argument("eigenpair_one_atom: alpha must be positive");
  const double gamma = one_atom_gamma(alpha, k);
  const double b = k == 0 ? 0.0 : -2.0 * gamma + pi / 2.0 + 2.0 * pi * static_cast<double>(k);
  EigenPair e;
  e.k = k;
  e.b = b;
  e.lambda = -b * b;
  e.basis.push_back(PiecewiseSine{b, {SineSegment{1.0, wrap_phase(gamma)}}});
  return e;
}

EigenPair eigenpair_two_atoms(double alpha, long k) {
  if (!(alpha > 0.0)) throw std::invalid_argument("eigenpair_two_atoms: alpha must be positive");
  const double g1 = two_atom_gamma1(alpha, k);
  const double b = k == 0 ? 0.0 : -4.0 * g1 + pi + 2.0 * pi * static_cast<double>(k);
  const double g2 = k == 0 ? g1 : -b - g1 + pi / 2.0;
  EigenPair e;
  e.k = k;
  e.b = b;
  e.lambda = -b * b;
  e.basis.push_back(PiecewiseSine{b, {SineSegment{1.0, wrap_phase(g1)}, SineSegment{1.0, wrap_phase(g2)}}});
  return e;
}

double alpha_prime(long m) { return 1.0 / (pi + 2.0 * pi * static_cast<double>(m)); }

double alpha_double_prime(long m) {
  return 1.0 / (2.0 * std::atan(0.5) - 2.0 * std::atan(2.0) + 2.0 * pi * static_cast<double>(m));
}

SpecialAlphaClass special_alpha_class(double alpha, double tol) {
  SpecialAlphaClass out;
  if (!(alpha > 0.0)) return out;
  const double inv = 1.0 / alpha;
  out.lambda = -inv * inv;

  const long mp = std::lround((inv - pi) / (2.0 * pi));
  if (mp >= 0 && std::abs(alpha - alpha_prime(mp)) <= tol * alpha) {
    out.kind = SpecialAlpha::prime;
    out.m = mp;
    out.family_index = -mp - 1;
    out.eigenfunction =
        PiecewiseSine{-inv, {SineSegment{1.0, 0.0}, SineSegment{1.0, 3.0 * pi / 2.0}}};
    return out;
  }
  const double offset = 2.0 * std::atan(0.5) - 2.0 * std::atan(2.0);
  const long mpp = std::lround((inv - offset) / (2.0 * pi));
  if (mpp >= 1 && std::abs(alpha - alpha_double_prime(mpp)) <= tol * alpha) {
    out.kind = SpecialAlpha::double_prime;
    out.m = mpp;
    out.family_index = mpp;
    const double g1 = std::atan(2.0);
    out.eigenfunction = PiecewiseSine{
        inv, {SineSegment{1.0, g1}, SineSegment{1.0, wrap_phase(g1 - 2.0 * std::atan(0.5) + pi / 2.0)}}};
    return out;
  }
  return out;
}

}  // namespace mgl
