#include "divspec/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "divspec/assembly.hpp"
#include "divspec/quadrature.hpp"

namespace divspec {

using Eigen::MatrixXd;
using Eigen::VectorXd;

std::string to_string(SolverMethod m) {
  switch (m) {
    case SolverMethod::automatic:
      return "automatic";
    case SolverMethod::dense:
      return "dense";
    case SolverMethod::iterative:
      return "iterative";
  }
  return "unknown";
}

namespace {

std::string convergence_message(int iterations, const std::vector<double>& best) {
  std::ostringstream os;
  os << "eigensolver did not converge after " << iterations << " iterations; residuals:";
  for (double r : best) os << ' ' << r;
  return os.str();
}

void check_inputs(const SparseSymOperator& A, const SparseSymOperator& M, int k) {
  if (A.dimension() != M.dimension()) throw std::invalid_argument("A and M dimensions differ");
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (k >= A.dimension()) throw std::invalid_argument("k must be smaller than the operator dimension");
}

// Uniform [-1, 1) from the top 53 bits, identical on every platform.
MatrixXd random_block(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  MatrixXd x(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) x(i, j) = 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0;
  return x;
}

MatrixXd symmetrize(const MatrixXd& a) { return 0.5 * (a + a.transpose()); }

// M-orthonormalise the columns of q (with mq = M q) by SVQB, dropping
// directions whose Gram eigenvalue falls below drop_tol relative to the largest.
int svqb(MatrixXd& q, MatrixXd& mq, double drop_tol) {
  if (q.cols() == 0) return 0;
  const MatrixXd g = symmetrize(q.transpose() * mq);
  VectorXd d = g.diagonal();
  for (Eigen::Index i = 0; i < d.size(); ++i) d[i] = d[i] > 0.0 ? 1.0 / std::sqrt(d[i]) : 0.0;
  const MatrixXd gs = d.asDiagonal() * g * d.asDiagonal();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(gs);
  const VectorXd& lam = es.eigenvalues();
  const double top = lam.maxCoeff();
  int first = 0;
  while (first < lam.size() && !(lam[first] > drop_tol * top)) ++first;
  const int keep = static_cast<int>(lam.size()) - first;
  if (keep <= 0 || !(top > 0.0)) {
    q.resize(q.rows(), 0);
    mq.resize(mq.rows(), 0);
    return 0;
  }
  MatrixXd transform = d.asDiagonal() * es.eigenvectors().rightCols(keep);
  for (int j = 0; j < keep; ++j) transform.col(j) /= std::sqrt(lam[first + j]);
  q = q * transform;
  mq = mq * transform;
  return keep;
}

// Rayleigh-Ritz on the M-orthonormal columns of x; returns ascending values
// and rotates x, ax, mx in place.
VectorXd rayleigh_ritz(MatrixXd& x, MatrixXd& ax, MatrixXd& mx) {
  const MatrixXd h = symmetrize(x.transpose() * ax);
  const MatrixXd g = symmetrize(x.transpose() * mx);
  Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(h, g);
  const MatrixXd& c = es.eigenvectors();
  x = x * c;
  ax = ax * c;
  mx = mx * c;
  return es.eigenvalues();
}

}  // namespace

ConvergenceError::ConvergenceError(int its, std::vector<double> best)
    : std::runtime_error(convergence_message(its, best)), iterations(its), best_residuals(std::move(best)) {}

double relative_residual(const SparseSymOperator& A, const SparseSymOperator& M, double sigma,
                         const VectorXd& u) {
  const VectorXd r = A.apply(u) - sigma * M.apply(u);
  const double scale = (A.norm_inf() + std::abs(sigma) * M.norm_inf()) * u.norm();
  return scale > 0.0 ? r.norm() / scale : r.norm();
}

Spectrum solve_dense(const SparseSymOperator& A, const SparseSymOperator& M, int k,
                     const SolverOptions& options) {
  check_inputs(A, M, k);
  Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(A.to_dense(), M.to_dense(),
                                                        Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("dense generalized eigensolver failed (M not positive definite?)");

  Spectrum s;
  s.method = SolverMethod::dense;
  s.tolerance = options.tol;
  s.vectors = es.eigenvectors().leftCols(k);
  // The dense eigenvalues carry an absolute error of order eps ||M^-1 A||; the
  // Rayleigh quotient on the sparse operators is accurate relative to sigma.
  for (int i = 0; i < k; ++i) {
    const VectorXd u = s.vectors.col(i);
    s.sigmas.push_back(A.quadratic(u) / M.quadratic(u));
    s.residuals.push_back(relative_residual(A, M, s.sigmas[i], s.vectors.col(i)));
  }
  return s;
}

Spectrum solve_iterative(const SparseSymOperator& A, const SparseSymOperator& M, int k,
                         const SolverOptions& options) {
  check_inputs(A, M, k);
  const int n = A.dimension();
  const int m = std::min(k + std::max(4, k), n / 3);
  if (m < k) return solve_dense(A, M, k, options);

  const double norm_a = A.norm_inf();
  const double norm_m = M.norm_inf();
  VectorXd precond = A.diagonal();
  for (int i = 0; i < n; ++i) precond[i] = precond[i] > 0.0 ? 1.0 / precond[i] : 1.0;

  MatrixXd x = random_block(n, m, options.seed);
  MatrixXd mx = M.apply(x);
  svqb(x, mx, 1e-14);
  if (x.cols() < k) throw std::runtime_error("degenerate starting block");
  MatrixXd ax = A.apply(x);
  VectorXd theta = rayleigh_ritz(x, ax, mx);

  MatrixXd p(n, 0);
  std::vector<double> res(k, std::numeric_limits<double>::infinity());
  std::vector<double> best = res;

  int it = 0;
  for (; it < options.max_iterations; ++it) {
    const int cols = static_cast<int>(x.cols());
    MatrixXd r = ax - mx * theta.head(cols).asDiagonal();
    bool done = true;
    for (int i = 0; i < k; ++i) {
      const double scale = (norm_a + std::abs(theta[i]) * norm_m) * x.col(i).norm();
      res[i] = r.col(i).norm() / scale;
      best[i] = std::min(best[i], res[i]);
      done = done && res[i] <= options.tol;
    }
    if (done) break;

    MatrixXd w = precond.asDiagonal() * r;
    MatrixXd q(n, w.cols() + p.cols());
    q << w, p;
    // Project out the current block twice, then orthonormalise what is left.
    MatrixXd mq = M.apply(q);
    for (int pass = 0; pass < 2; ++pass) {
      const MatrixXd coeff = x.transpose() * mq;
      q -= x * coeff;
      mq -= mx * coeff;
    }
    svqb(q, mq, 1e-12);
    if (q.cols() > 0) svqb(q, mq, 1e-12);
    const MatrixXd aq = A.apply(q);

    MatrixXd s(n, cols + q.cols());
    MatrixXd as(n, cols + q.cols());
    MatrixXd ms(n, cols + q.cols());
    s << x, q;
    as << ax, aq;
    ms << mx, mq;

    const MatrixXd h = symmetrize(s.transpose() * as);
    const MatrixXd g = symmetrize(s.transpose() * ms);
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> es(h, g);
    if (es.info() != Eigen::Success) throw std::runtime_error("Rayleigh-Ritz step failed");
    const MatrixXd c = es.eigenvectors().leftCols(m);
    theta = es.eigenvalues().head(m);

    // New search direction: the part of the update outside span(x).
    const MatrixXd cq = c.bottomRows(q.cols());
    p = q * cq;

    x = s * c;
    // Recompute the products to keep rounding from accumulating.
    ax = A.apply(x);
    mx = M.apply(x);
  }
  if (it >= options.max_iterations) throw ConvergenceError(it, best);

  Spectrum sp;
  sp.method = SolverMethod::iterative;
  sp.tolerance = options.tol;
  sp.iterations = it;
  // Ritz vectors are already M-orthonormal; report exactly the converged pairs.
  sp.vectors = x.leftCols(k);
  for (int i = 0; i < k; ++i) {
    sp.sigmas.push_back(theta[i]);
    sp.residuals.push_back(relative_residual(A, M, theta[i], sp.vectors.col(i)));
  }
  return sp;
}

Spectrum solve_smallest(const SparseSymOperator& A, const SparseSymOperator& M, int k,
                        const SolverOptions& options) {
  check_inputs(A, M, k);
  SolverMethod method = options.method;
  if (method == SolverMethod::automatic)
    method = A.dimension() <= options.dense_threshold ? SolverMethod::dense : SolverMethod::iterative;
  return method == SolverMethod::dense ? solve_dense(A, M, k, options) : solve_iterative(A, M, k, options);
}

OperatorPair fd_laplacian_1d(int N) {
  if (N < 2) throw std::invalid_argument("fd_laplacian_1d: N must be >= 2");
  const double h = 1.0 / (N + 1);
  const double s = 1.0 / (h * h);
  std::vector<Triplet> a;
  std::vector<Triplet> mm;
  for (int i = 0; i < N; ++i) {
    a.push_back({i, i, 2.0 * s});
    if (i > 0) a.push_back({i, i - 1, -s});
    mm.push_back({i, i, 1.0});
  }
  return {SparseSymOperator::from_triplets(N, std::move(a)), SparseSymOperator::from_triplets(N, std::move(mm))};
}

ModeQuantities mode_quantities(const Spectrum& spectrum, const SparseSymOperator& K,
                               const SparseSymOperator* coupling, const Mesh& mesh,
                               const TensorField& T, const DriftField& eta, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be non-negative");
  const int nk = K.dimension();
  const Eigen::Index rows = spectrum.vectors.rows();
  int comps = 0;
  if (rows == nk)
    comps = 1;
  else if (rows == 2 * nk)
    comps = 2;
  else
    throw std::invalid_argument("mode_quantities: eigenvector length does not match the stiffness operator");
  if (comps == 2 && coupling == nullptr)
    throw std::invalid_argument("mode_quantities: vector spectrum requires the coupling operator");
  if (coupling != nullptr && coupling->dimension() != rows)
    throw std::invalid_argument("mode_quantities: coupling dimension mismatch");
  if (K.dof_map().size() != static_cast<std::size_t>(nk))
    throw std::invalid_argument("mode_quantities: stiffness operator carries no DOF map");

  const auto& dofs = K.dof_map();
  ModeQuantities q;
  for (Eigen::Index i = 0; i < spectrum.vectors.cols(); ++i) {
    const VectorXd u = spectrum.vectors.col(i);
    double energy = 0.0;
    double grad_sq = 0.0;
    for (int c = 0; c < comps; ++c) {
      VectorXd uc(nk);
      for (int j = 0; j < nk; ++j) uc[j] = u[comps * j + c];
      energy += K.quadratic(uc);
      const VectorXd nodal = nodal_values(mesh, dofs, uc, 0);
      for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        const auto g = barycentric_gradients(mesh, t);
        const Vec2 grad = nodal[tri[0]] * g[0] + nodal[tri[1]] * g[1] + nodal[tri[2]] * g[2];
        for (int qi = 0; qi < kQuadPointsPerTriangle; ++qi) {
          const auto& qp = mesh.quad_points[t * kQuadPointsPerTriangle + qi];
          grad_sq += qp.weight * std::exp(-eta.value(qp.x)) * (T.value(qp.x) * grad).squaredNorm();
        }
      }
    }
    q.t_energy.push_back(energy);
    q.t_gradnorm_sq.push_back(grad_sq);
    q.divnorm.push_back(coupling != nullptr ? coupling->quadratic(u) : 0.0);
  }
  return q;
}

}  // namespace divspec
