#include "divspec/radial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace divspec {

namespace {

long long binomial(long long m, long long r) {
  if (r < 0 || m < r) return 0;
  r = std::min(r, m - r);
  long long out = 1;
  for (long long i = 1; i <= r; ++i) out = out * (m - r + i) / i;
  return out;
}

// Grid spacing and node positions for the given number of unknowns.
struct Grid {
  double h = 0.0;
  double first = 0.0;  // position of unknown 1
};

Grid make_grid(const RadialProblem& p, int size) {
  Grid g;
  if (p.is_ball()) {
    // Staggered: rho_i = (i - 1/2) h, zero flux at 0, Dirichlet at (N + 1/2) h = outer.
    g.h = p.outer / (size + 0.5);
    g.first = 0.5 * g.h;
  } else {
    g.h = (p.outer - p.inner) / (size + 1);
    g.first = p.inner + g.h;
  }
  return g;
}

}  // namespace

void RadialProblem::validate() const {
  if (n < 2) throw std::invalid_argument("radial problem needs n >= 2");
  if (!(inner >= 0.0) || !(outer > inner)) throw std::invalid_argument("radial domain needs 0 <= inner < outer");
  if (l_max < 0) throw std::invalid_argument("l_max must be non-negative");
  if (grid_size < 4) throw std::invalid_argument("grid_size must be at least 4");
}

std::vector<double> RadialSpectrum::sigmas() const {
  std::vector<double> out;
  out.reserve(modes.size());
  for (const auto& m : modes) out.push_back(m.sigma);
  return out;
}

long long harmonic_multiplicity(int l, int n) {
  if (l < 0 || n < 2) throw std::invalid_argument("harmonic_multiplicity needs l >= 0 and n >= 2");
  return binomial(l + n - 1, n - 1) - binomial(l + n - 3, n - 1);
}

std::vector<double> radial_branch_raw(const RadialProblem& p, int l, int grid_size, int count) {
  p.validate();
  const int N = grid_size;
  const Grid g = make_grid(p, N);
  const double h2 = g.h * g.h;
  const double pot = static_cast<double>(l) * (l + p.n - 2);
  // The additive offset of eta multiplies both sides by the same constant and
  // is dropped before discretising.
  auto weight = [&](double rho) { return std::exp(-0.5 * p.drift.lambda * rho * rho) * std::pow(rho, p.n - 1); };

  Eigen::VectorXd diag(N);
  Eigen::VectorXd sub(N - 1);
  Eigen::VectorXd q(N);
  for (int i = 0; i < N; ++i) q(i) = weight(g.first + i * g.h);
  for (int i = 0; i < N; ++i) {
    const double rho = g.first + i * g.h;
    const double left = rho - 0.5 * g.h;
    const double p_left = (p.is_ball() && i == 0) ? 0.0 : weight(left);
    const double p_right = weight(rho + 0.5 * g.h);
    diag(i) = ((p_left + p_right) / h2 + q(i) * pot / (rho * rho)) / q(i);
    if (i + 1 < N) sub(i) = -p_right / (h2 * std::sqrt(q(i) * q(i + 1)));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("tridiagonal eigensolve failed");
  const int m = std::min(count, N);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + m);
  return out;
}

std::vector<double> radial_branch(const RadialProblem& p, int l, int count) {
  const int n1 = p.grid_size;
  const int n2 = 2 * p.grid_size + 1;
  const double h1 = make_grid(p, n1).h;
  const double h2 = make_grid(p, n2).h;
  const auto coarse = radial_branch_raw(p, l, n1, count);
  const auto fine = radial_branch_raw(p, l, n2, count);
  std::vector<double> out(coarse.size());
  const double a = h1 * h1;
  const double b = h2 * h2;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (a * fine[i] - b * coarse[i]) / (a - b);
  return out;
}

RadialSpectrum radial_spectrum(const RadialProblem& p, int k) {
  p.validate();
  if (k < 1) throw std::invalid_argument("k must be positive");
  std::vector<RadialMode> all;
  double lmax_min = 0.0;
  for (int l = 0; l <= p.l_max; ++l) {
    const auto branch = radial_branch(p, l, k);
    const long long mult = harmonic_multiplicity(l, p.n);
    for (double s : branch) {
      for (long long c = 0; c < mult && c < k; ++c) all.push_back({s, l});
    }
    if (l == p.l_max) lmax_min = branch.front();
  }
  std::stable_sort(all.begin(), all.end(), [](const RadialMode& x, const RadialMode& y) {
    if (x.sigma != y.sigma) return x.sigma < y.sigma;
    return x.l < y.l;
  });
  if (static_cast<int>(all.size()) < k) throw LMaxTooSmallError("not enough radial modes; raise l_max or grid_size");
  all.resize(static_cast<std::size_t>(k));
  if (all.back().sigma > lmax_min) {
    std::ostringstream os;
    os << "l_max = " << p.l_max << " cannot certify the first " << k << " eigenvalues (sigma_" << k << " = "
       << all.back().sigma << " exceeds the lowest l_max eigenvalue " << lmax_min << "); increase l_max";
    throw LMaxTooSmallError(os.str());
  }
  return RadialSpectrum{std::move(all)};
}

}  // namespace divspec
