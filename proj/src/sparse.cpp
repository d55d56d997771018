#include "divspec/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace divspec {

SparseSymOperator SparseSymOperator::from_triplets(int dimension, std::vector<Triplet> entries,
                                                   std::vector<Dof> dofs) {
  if (dimension < 0) throw std::invalid_argument("negative operator dimension");
  if (!dofs.empty() && static_cast<int>(dofs.size()) != dimension)
    throw std::invalid_argument("dof map size does not match operator dimension");

  for (auto& t : entries) {
    if (t.row < 0 || t.col < 0 || t.row >= dimension || t.col >= dimension)
      throw std::out_of_range("triplet index outside operator dimension");
    if (t.row < t.col) std::swap(t.row, t.col);
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseSymOperator op;
  op.dim_ = dimension;
  op.dofs_ = std::move(dofs);
  op.row_ptr_.assign(dimension + 1, 0);
  for (std::size_t i = 0; i < entries.size();) {
    const int r = entries[i].row;
    const int c = entries[i].col;
    double v = 0.0;
    for (; i < entries.size() && entries[i].row == r && entries[i].col == c; ++i) v += entries[i].value;
    op.col_idx_.push_back(c);
    op.values_.push_back(v);
    ++op.row_ptr_[r + 1];
  }
  for (int r = 0; r < dimension; ++r) op.row_ptr_[r + 1] += op.row_ptr_[r];
  return op;
}

Eigen::VectorXd SparseSymOperator::apply(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw std::invalid_argument("apply: dimension mismatch");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(dim_);
  for (int r = 0; r < dim_; ++r) {
    for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      const int c = col_idx_[p];
      const double v = values_[p];
      y[r] += v * x[c];
      if (c != r) y[c] += v * x[r];
    }
  }
  return y;
}

Eigen::MatrixXd SparseSymOperator::apply(const Eigen::MatrixXd& x) const {
  if (x.rows() != dim_) throw std::invalid_argument("apply: dimension mismatch");
  // Work on transposes so each DOF's block row is a contiguous column.
  const Eigen::MatrixXd xt = x.transpose();
  Eigen::MatrixXd yt = Eigen::MatrixXd::Zero(x.cols(), dim_);
  for (int r = 0; r < dim_; ++r) {
    for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      const int c = col_idx_[p];
      const double v = values_[p];
      yt.col(r).noalias() += v * xt.col(c);
      if (c != r) yt.col(c).noalias() += v * xt.col(r);
    }
  }
  return yt.transpose();
}

double SparseSymOperator::bilinear(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw std::invalid_argument("bilinear: dimension mismatch");
  double s = 0.0;
  for (int r = 0; r < dim_; ++r) {
    for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      const int c = col_idx_[p];
      const double v = values_[p];
      s += c == r ? v * (x[r] * y[r]) : v * (x[r] * y[c] + x[c] * y[r]);
    }
  }
  return s;
}

Eigen::VectorXd SparseSymOperator::diagonal() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
      if (col_idx_[p] == r) d[r] = values_[p];
  return d;
}

Eigen::MatrixXd SparseSymOperator::to_dense() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim_, dim_);
  for (int r = 0; r < dim_; ++r) {
    for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      a(r, col_idx_[p]) = values_[p];
      a(col_idx_[p], r) = values_[p];
    }
  }
  return a;
}

double SparseSymOperator::norm_inf() const {
  Eigen::VectorXd rows = Eigen::VectorXd::Zero(dim_);
  for (int r = 0; r < dim_; ++r) {
    for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      const int c = col_idx_[p];
      rows[r] += std::abs(values_[p]);
      if (c != r) rows[c] += std::abs(values_[p]);
    }
  }
  return dim_ == 0 ? 0.0 : rows.maxCoeff();
}

std::vector<Triplet> SparseSymOperator::lower_triplets() const {
  std::vector<Triplet> t;
  t.reserve(values_.size());
  for (int r = 0; r < dim_; ++r)
    for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) t.push_back({r, col_idx_[p], values_[p]});
  return t;
}

SparseSymOperator SparseSymOperator::scaled(double s) const {
  SparseSymOperator op = *this;
  for (double& v : op.values_) v *= s;
  return op;
}

SparseSymOperator SparseSymOperator::plus(double s, const SparseSymOperator& other) const {
  if (other.dim_ != dim_ || other.dofs_ != dofs_)
    throw std::invalid_argument("plus: operators live on different DOF layouts");
  auto entries = lower_triplets();
  for (auto t : other.lower_triplets()) {
    t.value *= s;
    entries.push_back(t);
  }
  return from_triplets(dim_, std::move(entries), dofs_);
}

void write_coordinate(std::ostream& out, const SparseSymOperator& op) {
  char buf[96];
  const auto& rp = op.row_ptr();
  const auto& ci = op.col_idx();
  const auto& v = op.values();
  for (int r = 0; r < op.dimension(); ++r) {
    for (int p = rp[r]; p < rp[r + 1]; ++p) {
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", r, ci[p], v[p]);
      out << buf;
      if (ci[p] != r) {
        std::snprintf(buf, sizeof buf, "%d %d %.17g\n", ci[p], r, v[p]);
        out << buf;
      }
    }
  }
}

}  // namespace divspec
