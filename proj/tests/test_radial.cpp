#include <cmath>
#include <numbers>

#include "doctest.h"
#include "divspec/radial.hpp"

using namespace divspec;

namespace {

// First zero of J_nu by Newton's method on std::cyl_bessel_j, started from a
// McMahon-type guess.
double bessel_zero(double nu, int m) {
  double x = (m + nu / 2.0 - 0.25) * std::numbers::pi;
  for (int it = 0; it < 100; ++it) {
    const double f = std::cyl_bessel_j(nu, x);
    const double df = nu / x * f - std::cyl_bessel_j(nu + 1.0, x);
    const double step = f / df;
    x -= step;
    if (std::abs(step) < 1e-15 * x) break;
  }
  return x;
}

RadialProblem unit_disk() {
  RadialProblem p;
  p.inner = 0.0;
  p.outer = 1.0;
  p.n = 2;
  p.l_max = 6;
  p.grid_size = 2000;
  return p;
}

}  // namespace

TEST_CASE("harmonic multiplicities") {
  CHECK(harmonic_multiplicity(0, 2) == 1);
  for (int l = 1; l < 10; ++l) CHECK(harmonic_multiplicity(l, 2) == 2);
  CHECK(harmonic_multiplicity(0, 3) == 1);
  CHECK(harmonic_multiplicity(1, 3) == 3);
  CHECK(harmonic_multiplicity(2, 3) == 5);
  CHECK(harmonic_multiplicity(2, 4) == 9);
  CHECK(harmonic_multiplicity(1, 5) == 5);
  CHECK_THROWS(harmonic_multiplicity(-1, 2));
}

TEST_CASE("unit disk against Bessel zeros") {
  const double j01 = bessel_zero(0.0, 1);
  CHECK(j01 == doctest::Approx(2.404825557695773).epsilon(1e-14));
  const auto spec = radial_spectrum(unit_disk(), 6);
  CHECK(std::abs(spec.modes[0].sigma - j01 * j01) <= 1e-6);
  CHECK(spec.modes[0].l == 0);
  // Next: j_{1,1}^2 twice, j_{2,1}^2 twice, j_{0,2}^2 once.
  const double j11 = bessel_zero(1.0, 1);
  const double j21 = bessel_zero(2.0, 1);
  const double j02 = bessel_zero(0.0, 2);
  CHECK(spec.modes[1].sigma == doctest::Approx(j11 * j11).epsilon(1e-6));
  CHECK(spec.modes[2].sigma == spec.modes[1].sigma);
  CHECK(spec.modes[3].sigma == doctest::Approx(j21 * j21).epsilon(1e-6));
  CHECK(spec.modes[5].sigma == doctest::Approx(j02 * j02).epsilon(1e-6));
  CHECK(spec.modes[1].l == 1);
  CHECK(spec.modes[3].l == 2);
}

TEST_CASE("annulus against Bessel cross products") {
  // l = 0 on 1 < r < 2: J0(k) Y0(2k) - J0(2k) Y0(k) = 0
  auto f = [](double k) {
    return std::cyl_bessel_j(0.0, k) * std::cyl_neumann(0.0, 2.0 * k) -
           std::cyl_bessel_j(0.0, 2.0 * k) * std::cyl_neumann(0.0, k);
  };
  double lo = 2.5;
  double hi = 3.5;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
  }
  const double k = 0.5 * (lo + hi);
  RadialProblem p;
  p.inner = 1.0;
  p.outer = 2.0;
  p.n = 2;
  const auto b = radial_branch(p, 0, 1);
  CHECK(std::abs(b[0] - k * k) <= 1e-6 * k * k);
}

TEST_CASE("drift shift leaves the spectrum unchanged") {
  RadialProblem p;
  p.inner = 2.0;
  p.outer = 2.25;
  p.drift.lambda = 1.0;
  p.l_max = 10;
  p.grid_size = 400;
  RadialProblem q = p;
  q.drift.offset = 5.0;
  const auto a = radial_spectrum(p, 10);
  const auto b = radial_spectrum(q, 10);
  for (int i = 0; i < 10; ++i) CHECK(std::abs(a.modes[i].sigma - b.modes[i].sigma) <= 1e-12 * a.modes[i].sigma);
}

TEST_CASE("grid convergence rates") {
  for (double inner : {0.0, 0.5}) {
    RadialProblem p;
    p.inner = inner;
    p.outer = 1.0;
    p.drift.lambda = 0.7;
    const int l = 1;
    // Raw second order: differences drop about 4x per halving.
    const double s1 = radial_branch_raw(p, l, 25, 1)[0];
    const double s2 = radial_branch_raw(p, l, 51, 1)[0];
    const double s3 = radial_branch_raw(p, l, 103, 1)[0];
    const double ratio = (s1 - s2) / (s2 - s3);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));

    // Extrapolated values converge at fourth order. Coarse grids keep the
    // differences well above the rounding floor of the tridiagonal solve.
    p.grid_size = 25;
    const double e1 = radial_branch(p, l, 1)[0];
    p.grid_size = 51;
    const double e2 = radial_branch(p, l, 1)[0];
    p.grid_size = 103;
    const double e3 = radial_branch(p, l, 1)[0];
    CHECK(std::abs(e1 - e2) / std::abs(e2 - e3) == doctest::Approx(16.0).epsilon(0.15));
    CHECK(std::abs(e2 - e3) < std::abs(s2 - s3) / 50.0);
  }
}

TEST_CASE("annulus branches interlace in l") {
  RadialProblem p;
  p.inner = 0.5;
  p.outer = 1.5;
  p.grid_size = 500;
  std::vector<std::vector<double>> br;
  for (int l = 0; l <= 6; ++l) br.push_back(radial_branch(p, l, 4));
  for (int l = 1; l <= 6; ++l)
    for (int j = 0; j < 4; ++j) CHECK(br[l][j] > br[l - 1][j]);
}

TEST_CASE("merged spectrum ordering and certification") {
  RadialProblem p;
  p.inner = 2.0;
  p.outer = 2.25;
  p.drift.lambda = 1.0;
  p.l_max = 12;
  p.grid_size = 500;
  const auto s = radial_spectrum(p, 12);
  REQUIRE(s.modes.size() == 12);
  for (std::size_t i = 1; i < s.modes.size(); ++i) {
    CHECK(s.modes[i].sigma >= s.modes[i - 1].sigma);
    if (s.modes[i].sigma == s.modes[i - 1].sigma) CHECK(s.modes[i].l >= s.modes[i - 1].l);
  }

  RadialProblem small = p;
  small.l_max = 2;
  CHECK_THROWS_AS(radial_spectrum(small, 12), LMaxTooSmallError);

  RadialProblem bad = p;
  bad.n = 1;
  CHECK_THROWS_AS(radial_spectrum(bad, 3), std::invalid_argument);
  bad = p;
  bad.outer = 1.0;
  CHECK_THROWS_AS(radial_spectrum(bad, 3), std::invalid_argument);
}

TEST_CASE("higher dimension multiplicities") {
  // Unit ball in R^3, eta = 0: lowest eigenvalues pi^2 (l = 0) then j_{3/2,1}^2 with multiplicity 3.
  RadialProblem p;
  p.outer = 1.0;
  p.n = 3;
  p.l_max = 4;
  p.grid_size = 1500;
  const auto s = radial_spectrum(p, 4);
  CHECK(s.modes[0].sigma == doctest::Approx(std::numbers::pi * std::numbers::pi).epsilon(1e-6));
  const double j = bessel_zero(1.5, 1);
  for (int i = 1; i < 4; ++i) {
    CHECK(s.modes[i].l == 1);
    CHECK(s.modes[i].sigma == doctest::Approx(j * j).epsilon(1e-6));
  }
}
