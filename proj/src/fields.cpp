#include "divspec/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>

#include <Eigen/Eigenvalues>

namespace divspec {

DriftField DriftField::constant(double c) {
  DriftField f;
  f.kind_ = DriftKind::constant;
  f.offset_ = c;
  return f;
}

DriftField DriftField::gaussian_soliton(double lambda) {
  DriftField f;
  f.kind_ = DriftKind::gaussian_soliton;
  f.lambda_ = lambda;
  f.axes_ = 2;
  return f;
}

DriftField DriftField::partial_isoparametric(double lambda, int axes) {
  if (axes < 1 || axes > 2)
    throw std::invalid_argument("partial_isoparametric: axes must be 1 or 2 in the plane");
  DriftField f;
  f.kind_ = DriftKind::partial_isoparametric;
  f.lambda_ = lambda;
  f.axes_ = axes;
  return f;
}

DriftField DriftField::shifted(double c) const {
  DriftField f = *this;
  f.offset_ += c;
  return f;
}

Mat2 DriftField::projector() const {
  Mat2 p = Mat2::Zero();
  for (int i = 0; i < axes_; ++i) p(i, i) = 1.0;
  return p;
}

double DriftField::value(const Vec2& x) const {
  if (kind_ == DriftKind::constant) return offset_;
  double s = 0.0;
  for (int i = 0; i < axes_; ++i) s += x[i] * x[i];
  return 0.5 * lambda_ * s + offset_;
}

Vec2 DriftField::gradient(const Vec2& x) const {
  if (kind_ == DriftKind::constant) return Vec2::Zero();
  return lambda_ * (projector() * x);
}

Mat2 DriftField::hessian(const Vec2&) const {
  if (kind_ == DriftKind::constant) return Mat2::Zero();
  return lambda_ * projector();
}

std::optional<IsoparametricProfile> DriftField::profile() const {
  if (kind_ == DriftKind::constant)
    return IsoparametricProfile{[](double) { return 0.0; }, [](double) { return 0.0; }};
  const double lam = lambda_;
  const double c = offset_;
  const double lap = lam * axes_;
  return IsoparametricProfile{[lap](double) { return lap; },
                              [lam, c](double f) { return 2.0 * lam * (f - c); }};
}

std::string DriftField::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case DriftKind::constant:
      os << "constant(" << offset_ << ")";
      break;
    case DriftKind::gaussian_soliton:
      os << "gaussian_soliton(lambda=" << lambda_ << ")";
      break;
    case DriftKind::partial_isoparametric:
      os << "partial_isoparametric(lambda=" << lambda_ << ", axes=" << axes_ << ")";
      break;
  }
  if (kind_ != DriftKind::constant && offset_ != 0.0) os << " + " << offset_;
  return os.str();
}

TensorField TensorField::identity() { return TensorField{}; }

TensorField TensorField::scaled(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("scaled tensor requires c > 0");
  TensorField t;
  t.kind_ = TensorKind::scaled;
  t.base_ = c * Mat2::Identity();
  return t;
}

TensorField TensorField::diagonal(double d1, double d2) {
  if (!(d1 > 0.0) || !(d2 > 0.0)) throw std::invalid_argument("diagonal tensor requires positive entries");
  TensorField t;
  t.kind_ = TensorKind::diagonal;
  t.base_ << d1, 0.0, 0.0, d2;
  return t;
}

TensorField TensorField::affine_conformal(double beta) {
  TensorField t;
  t.kind_ = TensorKind::affine_conformal;
  t.beta_ = beta;
  return t;
}

TensorField TensorField::constant_symmetric(const Mat2& m) {
  if (m(0, 1) != m(1, 0)) throw std::invalid_argument("constant_symmetric tensor must be symmetric");
  Eigen::SelfAdjointEigenSolver<Mat2> es(m, Eigen::EigenvaluesOnly);
  if (!(es.eigenvalues()[0] > 0.0))
    throw std::invalid_argument("constant_symmetric tensor must be positive definite");
  TensorField t;
  t.kind_ = TensorKind::constant_symmetric;
  t.base_ = m;
  return t;
}

Mat2 TensorField::value(const Vec2& x) const {
  if (kind_ == TensorKind::affine_conformal) return (1.0 + beta_ * x[0]) * Mat2::Identity();
  return base_;
}

Mat2 TensorField::squared(const Vec2& x) const {
  const Mat2 t = value(x);
  return t * t;
}

Vec2 TensorField::divergence(const Vec2&) const {
  if (kind_ == TensorKind::affine_conformal) return {beta_, 0.0};
  return Vec2::Zero();
}

Vec2 TensorField::squared_divergence(const Vec2& x) const {
  // T^2 = f^2 I with f = 1 + beta x_1, so div T^2 = 2 f grad f.
  if (kind_ == TensorKind::affine_conformal) return {2.0 * (1.0 + beta_ * x[0]) * beta_, 0.0};
  return Vec2::Zero();
}

std::string TensorField::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case TensorKind::identity:
      os << "identity";
      break;
    case TensorKind::scaled:
      os << "scaled(" << base_(0, 0) << ")";
      break;
    case TensorKind::diagonal:
      os << "diagonal(" << base_(0, 0) << ", " << base_(1, 1) << ")";
      break;
    case TensorKind::affine_conformal:
      os << "affine_conformal(beta=" << beta_ << ")";
      break;
    case TensorKind::constant_symmetric:
      os << "constant_symmetric([[" << base_(0, 0) << ", " << base_(0, 1) << "], [" << base_(1, 0)
         << ", " << base_(1, 1) << "]])";
      break;
  }
  return os.str();
}

std::string to_string(Provenance p) { return p == Provenance::analytic ? "analytic" : "numeric"; }

namespace {

std::string describe_point(const Vec2& p, double e) {
  std::ostringstream os;
  os << "tensor field is not positive definite at (" << p.x() << ", " << p.y()
     << "), smallest eigenvalue " << e;
  return os.str();
}

std::pair<double, double> eig_bounds(const Mat2& m) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(m, Eigen::EigenvaluesOnly);
  return {es.eigenvalues()[0], es.eigenvalues()[1]};
}

}  // namespace

NonSpdError::NonSpdError(const Vec2& where, double min_eig)
    : std::runtime_error(describe_point(where, min_eig)), point(where), min_eigenvalue(min_eig) {}

std::vector<Vec2> sample_points(const Mesh& mesh) {
  std::vector<Vec2> pts;
  pts.reserve(mesh.quad_points.size() + mesh.nodes.size());
  for (const auto& q : mesh.quad_points) pts.push_back(q.x);
  pts.insert(pts.end(), mesh.nodes.begin(), mesh.nodes.end());
  return pts;
}

double c0_integrand(const TensorField& T, const DriftField& eta, const Vec2& x) {
  const Vec2 g = eta.gradient(x);
  const Mat2 s = T.squared(x);
  // div(S g) = <div S, g> + tr(S Hess eta)
  const double div = T.squared_divergence(x).dot(g) + (s * eta.hessian(x)).trace();
  return 0.5 * div - 0.25 * (T.value(x) * g).squaredNorm();
}

double c0_integrand_fd(const TensorField& T, const DriftField& eta, const Vec2& x, double step) {
  auto flux = [&](const Vec2& p) -> Vec2 { return T.squared(p) * eta.gradient(p); };
  const Vec2 ex(step, 0.0);
  const Vec2 ey(0.0, step);
  const double div = (flux(x + ex)[0] - flux(x - ex)[0] + flux(x + ey)[1] - flux(x - ey)[1]) / (2.0 * step);
  return 0.5 * div - 0.25 * (T.value(x) * eta.gradient(x)).squaredNorm();
}

std::pair<double, double> sampled_eps_delta(const TensorField& T, const Mesh& mesh) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Vec2& p : sample_points(mesh)) {
    const auto [e0, e1] = eig_bounds(T.value(p));
    if (!(e0 > 0.0)) throw NonSpdError(p, e0);
    lo = std::min(lo, e0);
    hi = std::max(hi, e1);
  }
  return {lo, hi};
}

double sampled_T0(const TensorField& T, const Mesh& mesh) {
  double m = 0.0;
  for (const Vec2& p : sample_points(mesh)) m = std::max(m, T.divergence(p).norm());
  return m;
}

double sampled_eta0(const DriftField& eta, const Mesh& mesh) {
  double m = 0.0;
  for (const Vec2& p : sample_points(mesh)) m = std::max(m, eta.gradient(p).norm());
  return m;
}

double sampled_c0_sup(const TensorField& T, const DriftField& eta, const Mesh& mesh) {
  double m = -std::numeric_limits<double>::infinity();
  for (const Vec2& p : sample_points(mesh)) m = std::max(m, c0_integrand(T, eta, p));
  return m;
}

std::pair<Constant, Constant> compute_eps_delta(const TensorField& T, const Mesh& mesh) {
  const Vec2 origin = Vec2::Zero();
  if (T.is_constant()) {
    const auto [e0, e1] = eig_bounds(T.value(origin));
    return {{e0, Provenance::analytic}, {e1, Provenance::analytic}};
  }
  // (1 + beta x_1) is extremal at the ends of the x_1 range.
  const auto r = mesh.domain.x1_range();
  const double f0 = 1.0 + T.beta() * r[0];
  const double f1 = 1.0 + T.beta() * r[1];
  const double lo = std::min(f0, f1);
  if (!(lo > 0.0)) throw NonSpdError(Vec2(f0 < f1 ? r[0] : r[1], 0.0), lo);
  return {{lo, Provenance::analytic}, {std::max(f0, f1), Provenance::analytic}};
}

Constant compute_T0(const TensorField& T, const Mesh&) {
  if (T.divergence_free()) return {0.0, Provenance::analytic};
  return {std::abs(T.beta()), Provenance::analytic};
}

Constant compute_eta0(const DriftField& eta, const Mesh& mesh) {
  const DomainSpec& d = mesh.domain;
  switch (eta.kind()) {
    case DriftKind::constant:
      return {0.0, Provenance::analytic};
    case DriftKind::gaussian_soliton:
      return {std::abs(eta.lambda()) * std::sqrt(d.max_radius_sq()), Provenance::analytic};
    case DriftKind::partial_isoparametric: {
      if (eta.axes() == 2)
        return {std::abs(eta.lambda()) * std::sqrt(d.max_radius_sq()), Provenance::analytic};
      const auto r = d.x1_range();
      return {std::abs(eta.lambda()) * std::max(std::abs(r[0]), std::abs(r[1])), Provenance::analytic};
    }
  }
  return {sampled_eta0(eta, mesh), Provenance::numeric};
}

C0Result compute_C0(const TensorField& T, const DriftField& eta, const Mesh& mesh, double delta,
                    double T0, double eta0) {
  C0Result r;
  r.coupling_term = 0.5 * delta * T0 * eta0;
  if (eta.kind() == DriftKind::constant) {
    r.sup_term = 0.0;
    r.source = Provenance::analytic;
  } else if (T.is_constant()) {
    // Quadratic eta with constant T: 1/2 lambda tr(S P) - 1/4 lambda^2 x^T P S P x,
    // maximal where the PSD form x^T Q x is smallest over the closed domain.
    const double lam = eta.lambda();
    const Mat2 p = eta.projector();
    const Mat2 s = T.squared(Vec2::Zero());
    const Mat2 q = p * s * p;
    double min_form = 0.0;
    const double min_r2 = mesh.domain.min_radius_sq();
    if (min_r2 > 0.0) {
      const double qmin = eig_bounds(q).first;
      min_form = q.isIdentity(0.0) ? min_r2 : min_r2 * qmin;
    }
    // lam^2 * min_r2 / 4 is evaluated as |lam| n / 2 on soliton annuli so that
    // the shrinking case cancels to an exact zero.
    double quad = 0.25 * lam * lam * min_form;
    if (mesh.domain.kind == DomainKind::soliton_annulus && q.isIdentity(0.0))
      quad = 0.5 * std::abs(lam) * mesh.domain.dimension;
    r.sup_term = 0.5 * lam * (s * p).trace() - quad;
    r.source = Provenance::analytic;
  } else {
    r.sup_term = sampled_c0_sup(T, eta, mesh);
    r.source = Provenance::numeric;
  }
  r.value = r.sup_term + r.coupling_term;
  return r;
}

FieldConstants compute_field_constants(const TensorField& T, const DriftField& eta, const Mesh& mesh) {
  FieldConstants c;
  std::tie(c.eps, c.delta) = compute_eps_delta(T, mesh);
  c.T0 = compute_T0(T, mesh);
  c.eta0 = compute_eta0(eta, mesh);
  c.C0 = compute_C0(T, eta, mesh, c.delta.value, c.T0.value, c.eta0.value);
  return c;
}

double verify_isoparametric(const DriftField& eta, const Mesh& mesh) {
  const auto prof = eta.profile();
  if (!prof) throw std::invalid_argument("drift carries no isoparametric profile");
  double worst = 0.0;
  for (const Vec2& p : sample_points(mesh)) {
    const double f = eta.value(p);
    worst = std::max(worst, std::abs(eta.gradient(p).squaredNorm() - prof->b(f)));
    worst = std::max(worst, std::abs(eta.laplacian(p) - prof->a(f)));
  }
  return worst;
}

double gaussian_c0(double lambda, int n, const DomainSpec& domain) {
  const double quad = domain.kind == DomainKind::soliton_annulus
                          ? 0.5 * std::abs(lambda) * n
                          : 0.25 * lambda * lambda * domain.min_radius_sq();
  return 0.5 * lambda * n - quad;
}

}  // namespace divspec
