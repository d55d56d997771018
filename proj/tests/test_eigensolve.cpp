#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/LU>

#include "doctest.h"
#include "divspec/assembly.hpp"
#include "divspec/eigensolve.hpp"

using namespace divspec;

namespace {

SparseSymOperator identity_op(int n) {
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return SparseSymOperator::from_triplets(n, t);
}

double fd_eigenvalue(int j, int N) {
  const double h = 1.0 / (N + 1);
  return 2.0 / (h * h) * (1.0 - std::cos(j * std::numbers::pi * h));
}

// Independent divnorm oracle for the stacked mode (u, 0): int (d1 u)^2 dm with
// the P1 gradient per triangle and the exact triangle area (eta = 0).
double dx_energy(const Mesh& mesh, const Eigen::VectorXd& nodal) {
  double sum = 0.0;
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Vec2 p0 = mesh.nodes[tri[0]];
    const Vec2 p1 = mesh.nodes[tri[1]];
    const Vec2 p2 = mesh.nodes[tri[2]];
    Mat2 J;
    J.col(0) = p1 - p0;
    J.col(1) = p2 - p0;
    const Vec2 du(nodal[tri[1]] - nodal[tri[0]], nodal[tri[2]] - nodal[tri[0]]);
    const Vec2 grad = J.transpose().inverse() * du;
    sum += 0.5 * std::abs(J.determinant()) * grad.x() * grad.x();
  }
  return sum;
}

}  // namespace

TEST_CASE("identity pencil") {
  const auto I = identity_op(20);
  const auto s = solve_dense(I, I, 5);
  for (double v : s.sigmas) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("1-D finite-difference Laplacian") {
  const auto p3 = fd_laplacian_1d(3);
  const auto s3 = solve_smallest(p3.A, p3.M, 1);
  CHECK(std::abs(s3.sigmas[0] - 32.0 * (1.0 - std::cos(std::numbers::pi / 4.0))) <= 1e-10);

  const auto p = fd_laplacian_1d(100);
  const auto s = solve_dense(p.A, p.M, 10);
  for (int j = 1; j <= 10; ++j) CHECK(std::abs(s.sigmas[j - 1] - fd_eigenvalue(j, 100)) <= 1e-10 * fd_eigenvalue(j, 100));

  const auto it = solve_iterative(p.A, p.M, 6);
  for (int j = 1; j <= 6; ++j) CHECK(std::abs(it.sigmas[j - 1] - fd_eigenvalue(j, 100)) <= 1e-8 * fd_eigenvalue(j, 100));
}

TEST_CASE("argument checks") {
  const auto p = fd_laplacian_1d(5);
  CHECK_THROWS_AS(solve_smallest(p.A, p.M, 5), std::invalid_argument);
  CHECK_THROWS_AS(solve_smallest(p.A, p.M, 0), std::invalid_argument);
  const auto q = fd_laplacian_1d(6);
  CHECK_THROWS_AS(solve_smallest(p.A, q.M, 2), std::invalid_argument);
}

TEST_CASE("non-convergence reports best residuals") {
  const auto p = fd_laplacian_1d(400);
  SolverOptions o;
  o.max_iterations = 2;
  o.method = SolverMethod::iterative;
  try {
    solve_smallest(p.A, p.M, 4, o);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.iterations == 2);
    CHECK(e.best_residuals.size() == 4);
    CHECK(e.best_residuals[0] > o.tol);
  }
}

TEST_CASE("dense and iterative paths agree") {
  const Mesh m = build_mesh(DomainSpec::ball(1.0), 8);
  const auto eta = DriftField::gaussian_soliton(-1.0);
  const auto K = assemble_stiffness(m, TensorField::identity(), eta);
  const auto M = assemble_mass(m, eta);
  SolverOptions dense;
  dense.method = SolverMethod::dense;
  SolverOptions iter;
  iter.method = SolverMethod::iterative;
  const auto a = solve_smallest(K, M, 8, dense);
  const auto b = solve_smallest(K, M, 8, iter);
  CHECK(a.method == SolverMethod::dense);
  CHECK(b.method == SolverMethod::iterative);
  for (int i = 0; i < 8; ++i) {
    CHECK(std::abs(a.sigmas[i] - b.sigmas[i]) <= 1e-8 * a.sigmas[i]);
    CHECK(b.residuals[i] <= iter.tol);
    CHECK(a.residuals[i] <= dense.tol);
  }

  // M-orthonormality of both bases.
  for (const auto* s : {&a, &b}) {
    const Eigen::MatrixXd g = s->vectors.transpose() * M.apply(s->vectors);
    CHECK((g - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() <= 1e-10);
  }

  // Same seed, same bits.
  const auto c = solve_smallest(K, M, 8, iter);
  for (int i = 0; i < 8; ++i) CHECK(c.sigmas[i] == b.sigmas[i]);
}

TEST_CASE("unit square Laplacian at h = 1/64") {
  const Mesh m = build_mesh(DomainSpec::rectangle(1.0, 1.0), 64);
  const auto eta = DriftField::constant(0.0);
  const auto K = assemble_stiffness(m, TensorField::identity(), eta);
  const auto M = assemble_mass(m, eta);
  const auto s = solve_smallest(K, M, 5);
  CHECK(s.method == SolverMethod::iterative);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double exact[] = {2, 5, 5, 8, 10};
  for (int i = 0; i < 5; ++i) {
    CHECK(std::abs(s.sigmas[i] - exact[i] * pi2) / (exact[i] * pi2) < 0.005);
    CHECK(s.residuals[i] <= 1e-9);
  }

  // Rayleigh-quotient minimality.
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXd x(K.dimension());
    for (int i = 0; i < x.size(); ++i) x[i] = g(rng);
    CHECK(s.sigmas[0] <= K.quadratic(x) / M.quadratic(x));
  }
}

TEST_CASE("second-order mesh convergence") {
  const double exact = 2.0 * std::numbers::pi * std::numbers::pi;
  std::vector<double> err;
  for (int res : {8, 16, 32}) {
    const Mesh m = build_mesh(DomainSpec::rectangle(1.0, 1.0), res);
    const auto K = assemble_stiffness(m, TensorField::identity(), DriftField::constant(0.0));
    const auto M = assemble_mass(m, DriftField::constant(0.0));
    err.push_back(solve_smallest(K, M, 1).sigmas[0] - exact);
  }
  CHECK(err[0] > err[1]);
  CHECK(err[1] > err[2]);
  CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.1));
  CHECK(err[1] / err[2] == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("mode quantities") {
  const Mesh m = build_mesh(DomainSpec::rectangle(1.0, 1.0), 16);
  Mat2 s;
  s << 2.0, 0.5, 0.5, 1.5;
  const auto T = TensorField::constant_symmetric(s);
  const auto eta = DriftField::gaussian_soliton(1.0);
  const double delta = compute_eps_delta(T, m).second.value;

  SUBCASE("scalar, alpha = 0") {
    const auto K = assemble_stiffness(m, T, eta);
    const auto M = assemble_mass(m, eta);
    const auto sp = solve_smallest(K, M, 6);
    const auto q = mode_quantities(sp, K, nullptr, m, T, eta, 0.0);
    for (int i = 0; i < 6; ++i) {
      CHECK(std::abs(sp.sigmas[i] - q.t_energy[i]) <= 1e-10 * sp.sigmas[i]);
      CHECK(q.divnorm[i] == 0.0);
      CHECK(q.t_gradnorm_sq[i] <= delta * sp.sigmas[i] + 1e-10 * sp.sigmas[i]);
    }
  }
  SUBCASE("vector, alpha > 0") {
    const double alpha = 0.7;
    const auto sys = assemble_vector_system(m, T, eta, alpha);
    const auto sp = solve_smallest(sys.A, sys.M, 6);
    const auto q = mode_quantities(sp, sys.K, &sys.C, m, T, eta, alpha);
    for (int i = 0; i < 6; ++i) {
      CHECK(std::abs(sp.sigmas[i] - (q.t_energy[i] + alpha * q.divnorm[i])) <= 1e-10 * sp.sigmas[i]);
      CHECK(q.divnorm[i] >= 0.0);
      CHECK(q.t_gradnorm_sq[i] <= delta * (sp.sigmas[i] - alpha * q.divnorm[i]) + 1e-10 * sp.sigmas[i]);
    }
  }
  SUBCASE("identity tensor: gradient norm equals energy") {
    const auto K = assemble_stiffness(m, TensorField::identity(), eta);
    const auto M = assemble_mass(m, eta);
    const auto sp = solve_smallest(K, M, 4);
    const auto q = mode_quantities(sp, K, nullptr, m, TensorField::identity(), eta, 0.0);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(q.t_gradnorm_sq[i] - q.t_energy[i]) <= 1e-10 * q.t_energy[i]);
  }
}

TEST_CASE("stacked scalar mode divnorm matches a direct quadrature") {
  const Mesh m = build_mesh(DomainSpec::rectangle(1.0, 1.0), 24);
  const auto eta = DriftField::constant(0.0);
  const auto K = assemble_stiffness(m, TensorField::identity(), eta);
  const auto M = assemble_mass(m, eta);
  const auto sp = solve_smallest(K, M, 3);
  const auto sdofs = scalar_dofs(m);
  const auto vdofs = vector_dofs(m);
  const auto C = assemble_coupling(m, eta);

  Spectrum stacked = sp;
  stacked.vectors = Eigen::MatrixXd::Zero(2 * sp.vectors.rows(), sp.vectors.cols());
  for (int i = 0; i < sp.vectors.rows(); ++i) stacked.vectors.row(2 * i) = sp.vectors.row(i);
  const auto q = mode_quantities(stacked, K, &C, m, TensorField::identity(), eta, 1.0);
  for (int i = 0; i < 3; ++i) {
    const double oracle = dx_energy(m, nodal_values(m, sdofs, sp.vectors.col(i), 0));
    CHECK(std::abs(q.divnorm[i] - oracle) <= 0.01 * oracle);
  }
}
