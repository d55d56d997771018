#pragma once

#include <stdexcept>
#include <vector>

namespace divspec {

// Radial drift eta(rho) = (lambda/2) rho^2 + offset. lambda = 0 is the
// constant drift.
struct RadialDrift {
  double lambda = 0.0;
  double offset = 0.0;

  double value(double rho) const { return 0.5 * lambda * rho * rho + offset; }
};

// Ball of radius `outer` when inner == 0, annulus inner < |x| < outer otherwise.
struct RadialProblem {
  double inner = 0.0;
  double outer = 1.0;
  int n = 2;
  RadialDrift drift;
  int l_max = 8;
  int grid_size = 2000;

  bool is_ball() const { return inner == 0.0; }
  void validate() const;
};

struct RadialMode {
  double sigma = 0.0;
  int l = 0;
};

struct RadialSpectrum {
  std::vector<RadialMode> modes;  // ascending, repeated per multiplicity

  std::vector<double> sigmas() const;
};

class LMaxTooSmallError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dimension of degree-l spherical harmonics on S^{n-1}.
long long harmonic_multiplicity(int l, int n);

// Smallest `count` eigenvalues of branch l on `grid_size` interior points,
// without extrapolation.
std::vector<double> radial_branch_raw(const RadialProblem& p, int l, int grid_size, int count);

// Same after one Richardson step against the refined grid.
std::vector<double> radial_branch(const RadialProblem& p, int l, int count);

// First k eigenvalues of the drifted Laplacian, merged over l = 0..l_max.
RadialSpectrum radial_spectrum(const RadialProblem& p, int k);

}  // namespace divspec
