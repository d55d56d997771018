#include "divspec/assembly.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "divspec/quadrature.hpp"

namespace divspec {

namespace {

// node -> scalar free index, -1 for eliminated nodes
std::vector<int> free_index(const Mesh& mesh, Dirichlet bc) {
  std::vector<int> idx(mesh.num_nodes(), -1);
  const auto mask = mesh.boundary_mask();
  int next = 0;
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (bc == Dirichlet::keep || !mask[i]) idx[i] = next++;
  return idx;
}

int count_free(const std::vector<int>& idx) {
  int n = 0;
  for (int i : idx) n += i >= 0;
  return n;
}

void check_spd(const Mat2& t, const Vec2& x) {
  const double tr = t.trace();
  const double det = t.determinant();
  if (!(det > 0.0) || !(tr > 0.0)) {
    const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
    throw NonSpdError(x, 0.5 * tr - disc);
  }
}

}  // namespace

std::array<Vec2, 3> barycentric_gradients(const Mesh& mesh, std::size_t t) {
  const auto& tri = mesh.triangles[t];
  const double two_area = 2.0 * mesh.triangle_area(t);
  std::array<Vec2, 3> g;
  for (int i = 0; i < 3; ++i) {
    const Vec2& pj = mesh.nodes[tri[(i + 1) % 3]];
    const Vec2& pk = mesh.nodes[tri[(i + 2) % 3]];
    g[i] = Vec2(pj.y() - pk.y(), pk.x() - pj.x()) / two_area;
  }
  return g;
}

std::vector<Dof> scalar_dofs(const Mesh& mesh, Dirichlet bc) {
  const auto idx = free_index(mesh, bc);
  std::vector<Dof> dofs;
  for (std::size_t i = 0; i < idx.size(); ++i)
    if (idx[i] >= 0) dofs.push_back({static_cast<int>(i), 0});
  return dofs;
}

std::vector<Dof> vector_dofs(const Mesh& mesh, Dirichlet bc) {
  std::vector<Dof> dofs;
  for (const Dof& d : scalar_dofs(mesh, bc)) {
    dofs.push_back({d.node, 0});
    dofs.push_back({d.node, 1});
  }
  return dofs;
}

SparseSymOperator assemble_mass(const Mesh& mesh, const DriftField& eta, Dirichlet bc) {
  const auto idx = free_index(mesh, bc);
  std::vector<Triplet> entries;
  entries.reserve(mesh.num_triangles() * 6);
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    double local[3][3] = {};
    for (int q = 0; q < kQuadPointsPerTriangle; ++q) {
      const auto& qp = mesh.quad_points[t * kQuadPointsPerTriangle + q];
      const double w = qp.weight * std::exp(-eta.value(qp.x));
      for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) local[a][b] += w * qp.bary[a] * qp.bary[b];
    }
    for (int a = 0; a < 3; ++a) {
      for (int b = a; b < 3; ++b) {
        const int ga = idx[tri[a]];
        const int gb = idx[tri[b]];
        if (ga >= 0 && gb >= 0) entries.push_back({ga, gb, local[a][b]});
      }
    }
  }
  return SparseSymOperator::from_triplets(count_free(idx), std::move(entries), scalar_dofs(mesh, bc));
}

SparseSymOperator assemble_stiffness(const Mesh& mesh, const TensorField& T, const DriftField& eta,
                                     Dirichlet bc) {
  const auto idx = free_index(mesh, bc);
  std::vector<Triplet> entries;
  entries.reserve(mesh.num_triangles() * 6);
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const auto grad = barycentric_gradients(mesh, t);
    double local[3][3] = {};
    for (int q = 0; q < kQuadPointsPerTriangle; ++q) {
      const auto& qp = mesh.quad_points[t * kQuadPointsPerTriangle + q];
      const Mat2 tq = T.value(qp.x);
      check_spd(tq, qp.x);
      const double w = qp.weight * std::exp(-eta.value(qp.x));
      for (int a = 0; a < 3; ++a) {
        const Vec2 tg = tq * grad[a];
        for (int b = a; b < 3; ++b) local[a][b] += w * tg.dot(grad[b]);
      }
    }
    for (int a = 0; a < 3; ++a) {
      for (int b = a; b < 3; ++b) {
        const int ga = idx[tri[a]];
        const int gb = idx[tri[b]];
        if (ga >= 0 && gb >= 0) entries.push_back({ga, gb, local[a][b]});
      }
    }
  }
  return SparseSymOperator::from_triplets(count_free(idx), std::move(entries), scalar_dofs(mesh, bc));
}

SparseSymOperator assemble_coupling(const Mesh& mesh, const DriftField& eta, Dirichlet bc) {
  const auto idx = free_index(mesh, bc);
  std::vector<Triplet> entries;
  entries.reserve(mesh.num_triangles() * 21);
  for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangles[t];
    const auto grad = barycentric_gradients(mesh, t);
    // Local DOF 2a + c is (vertex a, component c).
    double local[6][6] = {};
    for (int q = 0; q < kQuadPointsPerTriangle; ++q) {
      const auto& qp = mesh.quad_points[t * kQuadPointsPerTriangle + q];
      const double w = qp.weight * std::exp(-eta.value(qp.x));
      const Vec2 ge = eta.gradient(qp.x);
      double div[6];
      for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 2; ++c) div[2 * a + c] = grad[a][c] - ge[c] * qp.bary[a];
      for (int p = 0; p < 6; ++p)
        for (int r = p; r < 6; ++r) local[p][r] += w * div[p] * div[r];
    }
    for (int p = 0; p < 6; ++p) {
      const int gp = idx[tri[p / 2]];
      if (gp < 0) continue;
      for (int r = p; r < 6; ++r) {
        const int gr = idx[tri[r / 2]];
        if (gr < 0) continue;
        entries.push_back({2 * gp + p % 2, 2 * gr + r % 2, local[p][r]});
      }
    }
  }
  return SparseSymOperator::from_triplets(2 * count_free(idx), std::move(entries), vector_dofs(mesh, bc));
}

SparseSymOperator block_diagonal(const SparseSymOperator& scalar, const std::vector<Dof>& vdofs) {
  if (static_cast<int>(vdofs.size()) != 2 * scalar.dimension())
    throw std::invalid_argument("block_diagonal: vector DOF layout does not match");
  std::vector<Triplet> entries;
  entries.reserve(2 * scalar.nonzeros_lower());
  for (const auto& t : scalar.lower_triplets())
    for (int c = 0; c < 2; ++c) entries.push_back({2 * t.row + c, 2 * t.col + c, t.value});
  return SparseSymOperator::from_triplets(2 * scalar.dimension(), std::move(entries), vdofs);
}

VectorSystem assemble_vector_system(const Mesh& mesh, const TensorField& T, const DriftField& eta,
                                    double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
  VectorSystem sys;
  sys.alpha = alpha;
  sys.K = assemble_stiffness(mesh, T, eta);
  sys.M_scalar = assemble_mass(mesh, eta);
  sys.C = assemble_coupling(mesh, eta);
  const auto& vd = sys.C.dof_map();
  sys.K_block = block_diagonal(sys.K, vd);
  sys.M = block_diagonal(sys.M_scalar, vd);
  sys.A = sys.K_block.plus(alpha, sys.C);
  return sys;
}

Eigen::VectorXd interpolate(const Mesh& mesh, const std::vector<Dof>& dofs,
                            const std::function<double(const Vec2&)>& f) {
  Eigen::VectorXd v(dofs.size());
  for (std::size_t i = 0; i < dofs.size(); ++i) v[i] = f(mesh.nodes[dofs[i].node]);
  return v;
}

Eigen::VectorXd interpolate(const Mesh& mesh, const std::vector<Dof>& dofs,
                            const std::function<Vec2(const Vec2&)>& f) {
  Eigen::VectorXd v(dofs.size());
  for (std::size_t i = 0; i < dofs.size(); ++i) v[i] = f(mesh.nodes[dofs[i].node])[dofs[i].component];
  return v;
}

Eigen::VectorXd nodal_values(const Mesh& mesh, const std::vector<Dof>& dofs,
                             const Eigen::VectorXd& coeffs, int component) {
  if (coeffs.size() != static_cast<Eigen::Index>(dofs.size()))
    throw std::invalid_argument("nodal_values: coefficient/DOF size mismatch");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(mesh.num_nodes());
  for (std::size_t i = 0; i < dofs.size(); ++i)
    if (dofs[i].component == component) v[dofs[i].node] = coeffs[i];
  return v;
}

}  // namespace divspec
