#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "divspec/geometry.hpp"

namespace divspec {

enum class DriftKind { constant, gaussian_soliton, partial_isoparametric };

// Profile functions of an isoparametric drift: |grad eta|^2 = b(eta), lap eta = a(eta).
struct IsoparametricProfile {
  std::function<double(double)> a;
  std::function<double(double)> b;
};

// Drift potential eta on the plane with analytic derivatives. Every kind
// carries an additive offset so eta + c is representable without changing kind.
class DriftField {
 public:
  static DriftField constant(double c);
  // eta = (lambda/2)|x|^2
  static DriftField gaussian_soliton(double lambda);
  // eta = (lambda/2)(x_1^2 + ... + x_axes^2), axes in {1, 2}
  static DriftField partial_isoparametric(double lambda, int axes);

  DriftField shifted(double c) const;

  DriftKind kind() const { return kind_; }
  double lambda() const { return lambda_; }
  int axes() const { return axes_; }
  double offset() const { return offset_; }

  double value(const Vec2& x) const;
  Vec2 gradient(const Vec2& x) const;
  Mat2 hessian(const Vec2& x) const;
  double laplacian(const Vec2& x) const { return hessian(x).trace(); }

  // eta is quadratic in every catalog kind, so the Hessian is constant.
  Mat2 projector() const;

  std::optional<IsoparametricProfile> profile() const;

  std::string describe() const;

 private:
  DriftKind kind_ = DriftKind::constant;
  double lambda_ = 0.0;
  int axes_ = 0;
  double offset_ = 0.0;
};

enum class TensorKind { identity, scaled, diagonal, affine_conformal, constant_symmetric };

// Symmetric positive definite (1,1)-tensor field on the plane.
class TensorField {
 public:
  static TensorField identity();
  static TensorField scaled(double c);
  static TensorField diagonal(double d1, double d2);
  // (1 + beta x_1) I
  static TensorField affine_conformal(double beta);
  static TensorField constant_symmetric(const Mat2& m);

  TensorKind kind() const { return kind_; }
  bool is_constant() const { return kind_ != TensorKind::affine_conformal; }
  bool divergence_free() const { return is_constant(); }
  double beta() const { return beta_; }

  Mat2 value(const Vec2& x) const;
  Mat2 squared(const Vec2& x) const;
  // (tr grad T)_j = sum_i d_i T_ij
  Vec2 divergence(const Vec2& x) const;
  // (div T^2)_j = sum_i d_i (T^2)_ij
  Vec2 squared_divergence(const Vec2& x) const;

  std::string describe() const;

 private:
  TensorKind kind_ = TensorKind::identity;
  Mat2 base_ = Mat2::Identity();
  double beta_ = 0.0;
};

enum class Provenance { analytic, numeric };

std::string to_string(Provenance p);

struct Constant {
  double value = 0.0;
  Provenance source = Provenance::analytic;
};

// The scalar C0 is sup_term + coupling_term; both parts are kept for reports.
struct C0Result {
  double sup_term = 0.0;
  double coupling_term = 0.0;
  double value = 0.0;
  Provenance source = Provenance::analytic;
};

struct FieldConstants {
  Constant eps;
  Constant delta;
  Constant T0;
  Constant eta0;
  C0Result C0;
};

// Thrown when T fails to be SPD at a sample point.
class NonSpdError : public std::runtime_error {
 public:
  NonSpdError(const Vec2& where, double min_eig);
  Vec2 point;
  double min_eigenvalue;
};

// Quadrature points followed by every mesh node (the closed domain).
std::vector<Vec2> sample_points(const Mesh& mesh);

// Pointwise integrand of the C0 supremum, 1/2 div(T^2 grad eta) - 1/4 |T grad eta|^2.
double c0_integrand(const TensorField& T, const DriftField& eta, const Vec2& x);
// Same expression with the divergence taken by central differences.
double c0_integrand_fd(const TensorField& T, const DriftField& eta, const Vec2& x, double step);

std::pair<Constant, Constant> compute_eps_delta(const TensorField& T, const Mesh& mesh);
Constant compute_T0(const TensorField& T, const Mesh& mesh);
Constant compute_eta0(const DriftField& eta, const Mesh& mesh);
C0Result compute_C0(const TensorField& T, const DriftField& eta, const Mesh& mesh, double delta,
                    double T0, double eta0);
FieldConstants compute_field_constants(const TensorField& T, const DriftField& eta, const Mesh& mesh);

// Numeric-sup variants over sample_points(mesh); used to cross-check the
// analytic path and as the fallback for non-catalog combinations.
std::pair<double, double> sampled_eps_delta(const TensorField& T, const Mesh& mesh);
double sampled_T0(const TensorField& T, const Mesh& mesh);
double sampled_eta0(const DriftField& eta, const Mesh& mesh);
double sampled_c0_sup(const TensorField& T, const DriftField& eta, const Mesh& mesh);

// max over sample points of ||grad eta|^2 - b(eta)| and |lap eta - a(eta)|.
double verify_isoparametric(const DriftField& eta, const Mesh& mesh);

// Formula-level C0 for T = I and eta = (lambda/2)|x|^2 on a radial domain of
// R^n: sup{lambda n/2 - lambda^2 |x|^2 / 4}, attained at the smallest |x| of
// the closed domain.
double gaussian_c0(double lambda, int n, const DomainSpec& domain);

}  // namespace divspec
