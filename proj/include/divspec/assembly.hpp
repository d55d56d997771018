#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "divspec/fields.hpp"
#include "divspec/geometry.hpp"
#include "divspec/sparse.hpp"

namespace divspec {

// Whether boundary-node rows/columns are removed (homogeneous Dirichlet) or
// kept (full node set, used by consistency checks).
enum class Dirichlet { eliminate, keep };

// Scalar DOFs are free nodes in increasing order. Vector DOFs are node-major,
// component-minor: (node 0, c0), (node 0, c1), (node 1, c0), ...
std::vector<Dof> scalar_dofs(const Mesh& mesh, Dirichlet bc = Dirichlet::eliminate);
std::vector<Dof> vector_dofs(const Mesh& mesh, Dirichlet bc = Dirichlet::eliminate);

// M_ij = int phi_i phi_j e^{-eta}
SparseSymOperator assemble_mass(const Mesh& mesh, const DriftField& eta,
                                Dirichlet bc = Dirichlet::eliminate);
// K_ij = int <T grad phi_i, grad phi_j> e^{-eta}. Throws NonSpdError if T is
// not SPD at a quadrature point.
SparseSymOperator assemble_stiffness(const Mesh& mesh, const TensorField& T, const DriftField& eta,
                                     Dirichlet bc = Dirichlet::eliminate);
// Two-component form int div_eta(u) div_eta(v) e^{-eta}, div_eta w = div w - <grad eta, w>.
SparseSymOperator assemble_coupling(const Mesh& mesh, const DriftField& eta,
                                    Dirichlet bc = Dirichlet::eliminate);

// Lifts a scalar operator to blockdiag(S, S) on the vector DOF layout.
SparseSymOperator block_diagonal(const SparseSymOperator& scalar, const std::vector<Dof>& vdofs);

struct VectorSystem {
  SparseSymOperator A;        // blockdiag(K, K) + alpha C
  SparseSymOperator M;        // blockdiag(M_s, M_s)
  SparseSymOperator K;        // scalar stiffness
  SparseSymOperator K_block;  // blockdiag(K, K)
  SparseSymOperator C;        // coupling
  SparseSymOperator M_scalar;
  double alpha = 0.0;
};

// Throws std::invalid_argument for alpha < 0.
VectorSystem assemble_vector_system(const Mesh& mesh, const TensorField& T, const DriftField& eta,
                                    double alpha);

// Nodal interpolants restricted to a DOF list.
Eigen::VectorXd interpolate(const Mesh& mesh, const std::vector<Dof>& dofs,
                            const std::function<double(const Vec2&)>& f);
Eigen::VectorXd interpolate(const Mesh& mesh, const std::vector<Dof>& dofs,
                            const std::function<Vec2(const Vec2&)>& f);

// Expands a coefficient vector over `dofs` to per-node values of one component.
Eigen::VectorXd nodal_values(const Mesh& mesh, const std::vector<Dof>& dofs,
                             const Eigen::VectorXd& coeffs, int component);

// Gradients of the barycentric coordinates of triangle t.
std::array<Vec2, 3> barycentric_gradients(const Mesh& mesh, std::size_t t);

}  // namespace divspec
