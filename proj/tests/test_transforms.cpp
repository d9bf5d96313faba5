#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mgl/closed_form.hpp"
#include "mgl/monodromy.hpp"
#include "mgl/operator_calculus.hpp"
#include "mgl/transforms.hpp"

using namespace mgl;
using std::numbers::pi;

namespace {

MeasureSpec equal_atoms(std::size_t n, double alpha) {
  std::vector<Atom> atoms;
  for (std::size_t i = 1; i <= n; ++i) atoms.push_back({static_cast<double>(i) / n, alpha});
  atoms.back().position = 1.0;
  return MeasureSpec(ContinuousPart::lebesgue(), atoms);
}

bool near_atom(double x, const MeasureSpec& s) {
  for (const auto& a : s.atoms())
    if (std::abs(x - a.position) < 1e-9) return true;
  return false;
}

}  // namespace

TEST_CASE("pullback is the identity for Lebesgue measure") {
  const MeasureSpec s(ContinuousPart::lebesgue(), {{0.4, 0.2}, {1.0, 0.3}});
  PiecewiseSine f{3.1, {{1.2, 0.4}, {0.7, 2.0}}};
  const XPiecewiseSine g = pullback_to_x(f, s);
  REQUIRE(g.pieces.size() == 2);
  CHECK(g.pieces[0].frequency == 3.1);
  CHECK(g.pieces[0].phase == doctest::Approx(0.4));
  CHECK(g.pieces[1].phase == doctest::Approx(2.0));
  for (int i = 1; i <= 100; ++i) CHECK(g.evaluate(i / 100.0) == doctest::Approx(f.evaluate(i / 100.0, s)).epsilon(1e-13));
}

TEST_CASE("pullback through a piecewise-linear distribution function") {
  const MeasureSpec s(ContinuousPart::piecewise_linear({{0, 0}, {0.5, 0.8}, {1, 1}}), {{1.0, 0.3}});
  const double b = 2.5, g = 0.6;
  PiecewiseSine f{b, {{1.0, g}}};
  const XPiecewiseSine h = pullback_to_x(f, s);
  REQUIRE(h.pieces.size() == 2);
  CHECK(h.pieces[0].frequency == doctest::Approx(1.6 * b));
  CHECK(h.pieces[1].frequency == doctest::Approx(0.4 * b));
  for (int i = 1; i <= 1000; ++i) {
    const double x = i / 1000.0;
    CHECK(h.evaluate(x) == doctest::Approx(std::sin(b * distribution_value(s, x) + g)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("the spectrum depends on nu only through F at the atoms") {
  const MeasureSpec curved(ContinuousPart::piecewise_linear({{0, 0}, {0.5, 0.8}, {1, 1}}), {{0.5, 0.3}, {1.0, 0.2}});
  const MeasureSpec flat(ContinuousPart::lebesgue(), {{0.8, 0.3}, {1.0, 0.2}});
  const SpectrumResult a = find_spectrum(curved, 40.0);
  const SpectrumResult c = find_spectrum(flat, 40.0);
  REQUIRE(a.pairs.size() == c.pairs.size());
  for (std::size_t i = 0; i < a.pairs.size(); ++i) CHECK(std::abs(a.pairs[i].b - c.pairs[i].b) <= 1e-10);
  for (const auto& e : a.pairs) CHECK(eigen_residual(e.fn(), e.lambda, curved, 200) <= 1e-8);
}

TEST_CASE("rotating the two-atom eigenfunctions") {
  const double alpha = 1.0 / pi;
  const MeasureSpec s = equal_atoms(2, alpha);
  for (long k : {-2L, -1L, 1L, 2L, 3L}) {
    const EigenPair e = eigenpair_two_atoms(alpha, k);
    const RotatedEigenfunction r = rotate_eigenfunction(e.fn(), s, 2);
    CHECK(r.spec.atom_weight(0) == alpha);
    CHECK(eigen_residual(r.f, e.lambda, s) <= 1e-9);
    // f_2(x) = a_2 sin(b(x + 1/2) + g_2) on (0, 1/2] and a_1 sin(b(x - 1/2) + g_1) on (1/2, 1]
    const auto& seg = e.fn().segments;
    for (double x : {0.1, 0.3, 0.5}) {
      const double want = seg[1].amplitude * std::sin(e.b * (x + 0.5) + seg[1].phase);
      CHECK(r.f.evaluate(x, s) == doctest::Approx(want).epsilon(1e-12).scale(1.0));
    }
    for (double x : {0.6, 0.9, 1.0}) {
      const double want = seg[0].amplitude * std::sin(e.b * (x - 0.5) + seg[0].phase);
      CHECK(r.f.evaluate(x, s) == doctest::Approx(want).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("rotation with three atoms") {
  const MeasureSpec equal = equal_atoms(3, 0.2);
  const SpectrumResult r = find_spectrum(equal, 30.0);
  for (const auto& e : r.pairs)
    for (const auto& f : e.basis)
      for (long rr : {2L, 3L}) {
        const RotatedEigenfunction rot = rotate_eigenfunction(f, equal, rr);
        CHECK(eigen_residual(rot.f, e.lambda, rot.spec, 200) <= 1e-9);
      }

  const MeasureSpec mixed(ContinuousPart::lebesgue(), {{1.0 / 3.0, 0.1}, {2.0 / 3.0, 0.5}, {1.0, 0.25}});
  const SpectrumResult m = find_spectrum(mixed, 30.0);
  for (long rr : {2L, 3L}) {
    const RotatedEigenfunction probe = rotate_eigenfunction(m.pairs[1].fn(), mixed, rr);
    // the atom at i/N of eta_r carries the weight of the atom at (i - r + 1)/N
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(probe.spec.atom_weight(i) == mixed.atom_weight((i + 3 - static_cast<std::size_t>(rr - 1)) % 3));
    for (const auto& e : m.pairs) {
      const RotatedEigenfunction rot = rotate_eigenfunction(e.fn(), mixed, rr);
      CHECK(eigen_residual(rot.f, e.lambda, rot.spec, 200) <= 1e-9);
      for (int i = 1; i < 300; ++i) {
        const double x = i / 300.0 + 1e-4;
        double y = x - static_cast<double>(rr - 1) / 3.0;
        if (y <= 0.0) y += 1.0;
        if (near_atom(x, mixed) || near_atom(y, mixed)) continue;
        CHECK(rot.f.evaluate(x, rot.spec) == doctest::Approx(e.fn().evaluate(y, mixed)).epsilon(1e-11).scale(1.0));
      }
    }
  }
}

TEST_CASE("rotation preconditions") {
  const MeasureSpec s = equal_atoms(3, 0.2);
  PiecewiseSine f{1.0, {{1, 0}, {1, 0}, {1, 0}}};
  CHECK_THROWS_AS(rotate_eigenfunction(f, s, 1), std::invalid_argument);
  CHECK_THROWS_AS(rotate_eigenfunction(f, s, 4), std::invalid_argument);
  const MeasureSpec uneven(ContinuousPart::lebesgue(), {{0.2, 0.1}, {0.5, 0.1}, {1.0, 0.1}});
  CHECK_THROWS_AS(rotate_eigenfunction(f, uneven, 2), std::invalid_argument);
  CHECK(equally_spaced(s));
  CHECK_FALSE(equally_spaced(uneven));
}

TEST_CASE("concatenation scales the spectrum by k squared") {
  const MeasureSpec p1(ContinuousPart::lebesgue(), {{1.0, 0.3}});
  const MeasureSpec p2(ContinuousPart::lebesgue(), {{0.5, 0.15}, {1.0, 0.4}});
  for (const MeasureSpec* base : {&p1, &p2}) {
    for (long k : {2L, 3L}) {
      const MeasureSpec big = concatenate_measure(*base, k);
      REQUIRE(big.atom_count() == base->atom_count() * static_cast<std::size_t>(k));
      const SpectrumResult rb = find_spectrum(*base, 25.0);
      const SpectrumResult rk = find_spectrum(big, 25.0 * k + 1.0);
      for (const auto& e : rb.pairs) {
        bool found = false;
        for (const auto& g : rk.pairs)
          if (std::abs(g.lambda - k * k * e.lambda) <= 1e-8 * std::max(1.0, std::abs(g.lambda))) found = true;
        CHECK(found);
        for (const auto& f : e.basis) {
          const PiecewiseSine fk = concatenate_eigenfunction(f, k);
          CHECK(eigen_residual(fk, k * k * e.lambda, big, 200) <= 1e-8);
          for (int i = 1; i <= 1000; ++i) {
            const double x = i / 1000.0 - 3e-4;
            double y = std::fmod(k * x, 1.0);
            if (y == 0.0) y = 1.0;
            if (near_atom(x, big) || near_atom(y, *base)) continue;
            CHECK(fk.evaluate(x, big) == doctest::Approx(f.evaluate(y, *base)).epsilon(1e-10).scale(1.0));
          }
        }
      }
    }
  }
}

TEST_CASE("canonical eigenfunctions mapped back to the original measure") {
  const MeasureSpec orig(ContinuousPart::lebesgue(), {{0.25, 0.2}, {0.5, 0.05}, {0.75, 0.4}});
  const CanonicalForm cf = to_canonical(orig);
  const SpectrumResult r = find_spectrum(cf.spec, 20.0);
  for (const auto& e : r.pairs) {
    const PiecewiseSine g = to_original_coordinates(e.fn(), orig);
    REQUIRE(g.segments.size() == 4);
    for (int i = 1; i < 400; ++i) {
      const double x = i / 400.0 + 1e-4;
      double y = x + cf.shift;
      if (y > 1.0) y -= 1.0;
      if (near_atom(x, orig) || near_atom(y, cf.spec)) continue;
      CHECK(g.evaluate(x, orig) == doctest::Approx(e.fn().evaluate(y, cf.spec)).epsilon(1e-11).scale(1.0));
    }
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(g.evaluate(orig.atom_position(j), orig) ==
            doctest::Approx(e.fn().evaluate(cf.spec.atom_position(j), cf.spec)).epsilon(1e-11).scale(1.0));
  }
}
