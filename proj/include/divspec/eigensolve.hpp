#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "divspec/fields.hpp"
#include "divspec/geometry.hpp"
#include "divspec/sparse.hpp"

namespace divspec {

enum class SolverMethod { automatic, dense, iterative };

std::string to_string(SolverMethod m);

struct SolverOptions {
  double tol = 1e-9;
  int max_iterations = 5000;
  std::uint64_t seed = 42;
  SolverMethod method = SolverMethod::automatic;
  // automatic picks the dense reduction at or below this dimension
  int dense_threshold = 3000;
};

// k smallest eigenpairs of A u = sigma M u. Vectors are M-orthonormal columns.
struct Spectrum {
  std::vector<double> sigmas;
  Eigen::MatrixXd vectors;
  std::vector<double> residuals;
  int iterations = 0;
  double tolerance = 0.0;
  SolverMethod method = SolverMethod::dense;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(int iterations, std::vector<double> best);
  int iterations;
  std::vector<double> best_residuals;
};

// ||A u - sigma M u|| / ((||A|| + |sigma| ||M||) ||u||), infinity norms for
// the operators and the Euclidean norm for vectors.
double relative_residual(const SparseSymOperator& A, const SparseSymOperator& M, double sigma,
                         const Eigen::VectorXd& u);

Spectrum solve_smallest(const SparseSymOperator& A, const SparseSymOperator& M, int k,
                        const SolverOptions& options = {});
// Cholesky reduction of M to a standard symmetric problem, full solve.
Spectrum solve_dense(const SparseSymOperator& A, const SparseSymOperator& M, int k,
                     const SolverOptions& options = {});
// Block Rayleigh-quotient minimisation (LOBPCG) with Jacobi preconditioning.
Spectrum solve_iterative(const SparseSymOperator& A, const SparseSymOperator& M, int k,
                         const SolverOptions& options = {});

struct OperatorPair {
  SparseSymOperator A;
  SparseSymOperator M;
};

// Dirichlet finite-difference Laplacian on (0,1) with N interior points and
// identity mass; eigenvalues (2/h^2)(1 - cos(j pi h)), h = 1/(N+1).
OperatorPair fd_laplacian_1d(int N);

struct ModeQuantities {
  std::vector<double> divnorm;        // u^T C u
  std::vector<double> t_energy;       // u^T blockdiag(K, K) u
  std::vector<double> t_gradnorm_sq;  // int |T grad u|^2 dm by quadrature
};

// Scalar spectra are recognised by vectors.rows() == K.dimension(); pass
// coupling == nullptr for them (divnorm is then zero).
ModeQuantities mode_quantities(const Spectrum& spectrum, const SparseSymOperator& K,
                               const SparseSymOperator* coupling, const Mesh& mesh,
                               const TensorField& T, const DriftField& eta, double alpha);

}  // namespace divspec
