#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Core>

namespace divspec {

// Free degree of freedom: a mesh node and a vector component (0 for scalars).
struct Dof {
  int node = 0;
  int component = 0;
  bool operator==(const Dof&) const = default;
};

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

// Symmetric sparse quadratic form. Only the lower triangle (row >= col) is
// stored, in CSR order; the operator is defined as its symmetrization, so
// symmetry holds by construction.
class SparseSymOperator {
 public:
  SparseSymOperator() = default;

  // Entries with row < col are mirrored into the lower triangle. Duplicates
  // are summed in insertion order, which keeps assembly deterministic.
  static SparseSymOperator from_triplets(int dimension, std::vector<Triplet> entries,
                                         std::vector<Dof> dofs = {});

  int dimension() const { return dim_; }
  const std::vector<Dof>& dof_map() const { return dofs_; }
  std::size_t nonzeros_lower() const { return values_.size(); }

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
  double bilinear(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  double quadratic(const Eigen::VectorXd& x) const { return bilinear(x, x); }

  Eigen::VectorXd diagonal() const;
  Eigen::MatrixXd to_dense() const;
  // Max absolute row sum of the symmetrized matrix.
  double norm_inf() const;

  // Lower-triangle entries in storage order.
  std::vector<Triplet> lower_triplets() const;

  SparseSymOperator scaled(double s) const;
  // this + s * other on an identical DOF layout.
  SparseSymOperator plus(double s, const SparseSymOperator& other) const;

 private:
  int dim_ = 0;
  std::vector<Dof> dofs_;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

// Coordinate text dump of the full symmetric matrix, "row col value" per line,
// zero-based, 17 significant digits.
void write_coordinate(std::ostream& out, const SparseSymOperator& op);

}  // namespace divspec
