#pragma once

// Exact spectra for one atom and for two equal atoms at 1/2 and 1 with
// Lebesgue continuous part. Everything reduces to roots of tan(c) = A - B c on
// (-pi/2, pi/2).

#include <optional>
#include <stdexcept>
#include <vector>

#include "mgl/eigenpair.hpp"

namespace mgl {

/// tan(c) = -2 c beta + sign*beta*pi/2 + 2 pi beta k + sign
struct TanLineProblem {
  double beta = 0.0;
  long k = 0;
  int sign = 1;
};

struct TanLineSolution {
  double c = 0.0;
  double xi = 0.0;            // (tan(c) - sign) / beta
  bool near_tangent = false;  // |d/dc (tan c - rhs)| < 1e-8 at the root
};

/// All roots in (-pi/2, pi/2), ascending. One root for beta > 0 and between one
/// and three for beta < 0. Throws std::invalid_argument for beta == 0.
std::vector<TanLineSolution> solve_tan_line(const TanLineProblem& p);

/// All roots of tan(c) = A - B c in (-pi/2, pi/2), ascending.
std::vector<TanLineSolution> solve_tan_affine(double A, double B);

/// |tan(c) - rhs| * cos^2(c): the angular distance of c from a root, which
/// stays well conditioned when c approaches +-pi/2.
double tan_line_residual(double c, double A, double B);

/// Right-hand sides of the one-atom and two-atom phase equations.
double one_atom_rhs(double alpha, long k, double gamma);
double two_atom_rhs(double alpha, long k, double gamma1);

/// sin(b x + gamma) with tan(gamma) = -2 gamma alpha + alpha pi/2 + 2 pi alpha k + 1
/// and b = -2 gamma + pi/2 + 2 pi k. Amplitude 1 (not normalised).
EigenPair eigenpair_one_atom(double alpha, long k);

/// Two equal atoms at 1/2 and 1: tan(g1) = 1 - 4 alpha g1 + alpha pi + 2 pi alpha k,
/// b = -4 g1 + pi + 2 pi k, g2 = -b - g1 + pi/2 (phases reduced mod 2 pi).
EigenPair eigenpair_two_atoms(double alpha, long k);

/// Phase gamma (for N = 1) or gamma_1 (for N = 2) in (-pi/2, pi/2), before
/// reduction mod 2 pi.
double one_atom_gamma(double alpha, long k);
double two_atom_gamma1(double alpha, long k);

enum class SpecialAlpha { none, prime, double_prime };

struct SpecialAlphaClass {
  SpecialAlpha kind = SpecialAlpha::none;
  long m = 0;
  double lambda = 0.0;         // -1/alpha^2
  PiecewiseSine eigenfunction;  // the closed form attached to the class
  long family_index = 0;        // k with eigenfunction == f^{(k,2)}
};

/// alpha' = 1/(pi + 2 pi m), m >= 0, or alpha'' = 1/(2 atan(1/2) - 2 atan 2 + 2 pi m),
/// m >= 1 (m = 0 gives a negative value). Relative tolerance `tol`.
SpecialAlphaClass special_alpha_class(double alpha, double tol = 1e-12);

double alpha_prime(long m);
double alpha_double_prime(long m);

}  // namespace mgl
