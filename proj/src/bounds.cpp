#include "divspec/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace divspec {

namespace {

constexpr double kRadicandTol = 1e-10;
constexpr double kSharpgapClamp = 1e-12;
constexpr double kPremiseTol = 1e-12;

void require_modes(const BoundInput& in, int count, const char* what) {
  if (static_cast<int>(in.sigmas.size()) < count) {
    std::ostringstream os;
    os << what << ": needs " << count << " eigenvalues, have " << in.sigmas.size();
    throw std::invalid_argument(os.str());
  }
}

// sigma_i - alpha |div u_i|^2, clamped at zero within the rounding band.
double reduced_energy(const BoundInput& in, int i) {
  const double s = in.sigma(i);
  const double v = s - in.alpha * in.divnorm(i);
  if (v < -kRadicandTol * std::abs(s)) {
    std::ostringstream os;
    os << "sigma_" << i << " - alpha |div u_" << i << "|^2 = " << v << " is negative";
    throw BoundInputError(os.str());
  }
  return std::max(v, 0.0);
}

double bracket(const BoundInput& in, int i) {
  const auto& c = in.constants;
  const double root = std::sqrt(reduced_energy(in, i)) + c.T0 / (2.0 * std::sqrt(c.delta));
  return root * root + c.C0 / c.delta;
}

double lower_order_lhs(const BoundInput& in) {
  double lhs = 0.0;
  for (int i = 1; i <= in.n; ++i) lhs += in.sigma(i + 1) - in.sigma(1);
  return lhs;
}

// sum_{i<=k}(s_{k+1}-s_i)^2 and factor * sum (s_{k+1}-s_i)(s_i + shift)
std::pair<double, double> yang_sides(const BoundInput& in, int k, double factor, double shift) {
  double lhs = 0.0;
  double rhs = 0.0;
  const double top = in.sigma(k + 1);
  for (int i = 1; i <= k; ++i) {
    const double gap = top - in.sigma(i);
    lhs += gap * gap;
    rhs += gap * (in.sigma(i) + shift);
  }
  return {lhs, factor * rhs};
}

// Shared sharp-gap evaluation with a = half the Yang factor.
std::pair<BoundReport, BoundReport> sharpgap_with(const BoundInput& in, int k, double a, double shift,
                                                  const std::string& prefix) {
  require_modes(in, k + 1, "sharp-gap bound");
  double mean_v = 0.0;
  double mean_s = 0.0;
  for (int i = 1; i <= k; ++i) {
    mean_v += in.sigma(i) + shift;
    mean_s += in.sigma(i);
  }
  mean_v /= k;
  mean_s /= k;
  double var = 0.0;
  for (int j = 1; j <= k; ++j) var += (in.sigma(j) - mean_s) * (in.sigma(j) - mean_s);
  var /= k;

  double rad = (a * mean_v) * (a * mean_v) - (1.0 + 2.0 * a) * var;
  if (rad < 0.0) {
    if (rad < -kSharpgapClamp * mean_v * mean_v) {
      std::ostringstream os;
      os << "sharp-gap radicand " << rad << " is negative at k = " << k;
      throw BoundInputError(os.str());
    }
    rad = 0.0;
  }
  const double root = std::sqrt(rad);
  BoundReport level = make_report(prefix + "sharpgap_level",
                                  "s_{k+1}+D0 <= (1+a) mean(s_i+D0) + sqrt((a mean(s_i+D0))^2 - (1+2a) var(s_i))",
                                  k, in.sigma(k + 1) + shift, (1.0 + a) * mean_v + root, in.slack);
  BoundReport gap = make_report(prefix + "sharpgap_gap",
                                "s_{k+1}-s_k <= 2 sqrt((a mean(s_i+D0))^2 - (1+2a) var(s_i))", k,
                                in.sigma(k + 1) - in.sigma(k), 2.0 * root, in.slack);
  return {level, gap};
}

BoundReport recursion_with(const BoundInput& in, int k, double a, double shift, const std::string& id) {
  require_modes(in, k + 1, "recursion bound");
  const double base = in.sigma(1) + shift;
  if (!(base > 0.0)) {
    std::ostringstream os;
    os << "recursion bound requires s_1 + D0 > 0, got " << base;
    throw BoundInputError(os.str());
  }
  const double rhs = (1.0 + 2.0 * a) * std::pow(static_cast<double>(k), a) * base;
  return make_report(id, "s_{k+1}+D0 <= (1+2a) k^a (s_1+D0)", k, in.sigma(k + 1) + shift, rhs, in.slack);
}

double min_divnorm(const BoundInput& in, int k) {
  double m = in.divnorm(1);
  for (int j = 2; j <= k; ++j) m = std::min(m, in.divnorm(j));
  return m;
}

void check_shift(const BoundInput& in, int k, double shift) {
  for (int i = 1; i <= k; ++i) {
    if (!(in.sigma(i) + shift > 0.0)) {
      std::ostringstream os;
      os << "s_" << i << " + D0 = " << in.sigma(i) + shift << " is not positive";
      throw BoundInputError(os.str());
    }
  }
}

}  // namespace

double BoundInput::divnorm(int i) const {
  if (divnorms.empty()) return 0.0;
  return divnorms.at(static_cast<std::size_t>(i - 1));
}

void BoundInput::validate() const {
  if (n < 1) throw std::invalid_argument("dimension n must be positive");
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
  if (sigmas.empty()) throw std::invalid_argument("no eigenvalues supplied");
  if (!divnorms.empty() && divnorms.size() < sigmas.size())
    throw std::invalid_argument("divnorms must cover every eigenvalue");
  if (!(sigmas.front() > 0.0)) throw std::invalid_argument("first eigenvalue must be positive");
  for (std::size_t i = 1; i < sigmas.size(); ++i)
    if (sigmas[i] < sigmas[i - 1]) throw std::invalid_argument("eigenvalues must be ascending");
  for (double d : divnorms)
    if (d < 0.0) throw std::invalid_argument("divnorms must be non-negative");
  if (!(constants.eps > 0.0) || constants.delta < constants.eps)
    throw std::invalid_argument("tensor bounds need 0 < eps <= delta");
  if (constants.T0 < 0.0 || constants.eta0 < 0.0) throw std::invalid_argument("T0 and eta0 must be non-negative");
}

BoundReport make_report(std::string id, std::string formula, int k, double lhs, double rhs, double slack) {
  BoundReport r;
  r.id = std::move(id);
  r.paper_eq = std::move(formula);
  r.k = k;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.satisfied = lhs <= rhs + slack * std::abs(rhs);
  return r;
}

BoundReport eval_thm_quadratic(const BoundInput& in, int k) {
  in.validate();
  require_modes(in, k + 1, "quadratic bound");
  const auto& c = in.constants;
  const double n = in.n;
  const double factor = 4.0 * c.delta * (n * c.delta + in.alpha) / (n * n * c.eps * c.eps);
  const double top = in.sigma(k + 1);
  double lhs = 0.0;
  double sum = 0.0;
  for (int i = 1; i <= k; ++i) {
    const double gap = top - in.sigma(i);
    lhs += gap * gap;
    sum += gap * bracket(in, i);
  }
  return make_report("quadratic",
                     "sum (s_{k+1}-s_i)^2 <= 4d(nd+a)/(n^2 e^2) sum (s_{k+1}-s_i)"
                     "{[(s_i-a|div u_i|^2)^(1/2)+T0/(2 sqrt d)]^2+C0/d}",
                     k, lhs, factor * sum, in.slack);
}

BoundReport eval_lower_order_sum(const BoundInput& in) {
  in.validate();
  require_modes(in, in.n + 1, "lower-order sum");
  const auto& c = in.constants;
  const double factor = 4.0 * c.delta * (c.delta + in.alpha) / (c.eps * c.eps);
  return make_report("lower_order_sum",
                     "sum_{i<=n} (s_{i+1}-s_1) <= 4d(d+a)/e^2 {[(s_1-a|div u_1|^2)^(1/2)+T0/(2 sqrt d)]^2+C0/d}",
                     in.n, lower_order_lhs(in), factor * bracket(in, 1), in.slack);
}

BoundReport eval_lower_order_sum_identity(const BoundInput& in) {
  in.validate();
  require_modes(in, in.n + 1, "lower-order sum");
  const double rhs = 4.0 * (1.0 + in.alpha) * (in.sigma(1) + compute_D1(in));
  return make_report("lower_order_sum_identity", "sum_{i<=n} (s_{i+1}-s_1) <= 4(1+a)(s_1+D1)", in.n,
                     lower_order_lhs(in), rhs, in.slack);
}

std::vector<BoundReport> lower_order_sum_reports(const BoundInput& in) {
  std::vector<BoundReport> out{eval_lower_order_sum(in)};
  const auto& c = in.constants;
  if (c.eps == 1.0 && c.delta == 1.0 && c.T0 == 0.0) out.push_back(eval_lower_order_sum_identity(in));
  return out;
}

double compute_D0(const BoundInput& in, int k) {
  in.validate();
  require_modes(in, k, "D0");
  const double d0 = -in.alpha * min_divnorm(in, k) + in.constants.C0;
  check_shift(in, k, d0);
  return d0;
}

double compute_D1(const BoundInput& in) {
  in.validate();
  return -in.alpha * in.divnorm(1) + in.constants.C0;
}

BoundReport eval_yang_D0(const BoundInput& in, int k) {
  require_modes(in, k + 1, "Yang-type bound");
  const double d0 = compute_D0(in, k);
  const double n = in.n;
  const auto [lhs, rhs] = yang_sides(in, k, 4.0 * (n + in.alpha) / (n * n), d0);
  return make_report("yang_shifted", "sum (s_{k+1}-s_i)^2 <= 4(n+a)/n^2 sum (s_{k+1}-s_i)(s_i+D0)", k, lhs, rhs,
                     in.slack);
}

BoundReport eval_yang_classical(const BoundInput& in, int k) {
  in.validate();
  require_modes(in, k + 1, "Yang-type bound");
  const double n = in.n;
  const auto [lhs, rhs] = yang_sides(in, k, 4.0 * (n + in.alpha) / (n * n), 0.0);
  return make_report("yang_classical", "sum (s_{k+1}-s_i)^2 <= 4(n+a)/n^2 sum (s_{k+1}-s_i) s_i", k, lhs, rhs,
                     in.slack);
}

std::vector<BoundReport> yang_reports(const BoundInput& in, int k) {
  std::vector<BoundReport> out{eval_yang_D0(in, k)};
  if (compute_D0(in, k) <= 0.0) out.push_back(eval_yang_classical(in, k));
  return out;
}

std::pair<BoundReport, BoundReport> eval_sharpgap(const BoundInput& in, int k) {
  const double d0 = compute_D0(in, k);
  const double n = in.n;
  return sharpgap_with(in, k, 2.0 * (n + in.alpha) / (n * n), d0, "");
}

BoundReport eval_recursion(const BoundInput& in, int k) {
  const double d0 = compute_D0(in, 1 > k ? 1 : k);
  const double n = in.n;
  return recursion_with(in, k, 2.0 * (n + in.alpha) / (n * n), d0, "recursion");
}

std::vector<BoundReport> eval_rigidity_suite(const BoundInput& in, int k) {
  in.validate();
  if (std::abs(in.constants.C0) > kPremiseTol) {
    std::ostringstream os;
    os << "rigidity suite requires C0 = 0, got " << in.constants.C0;
    throw BoundInputError(os.str());
  }
  require_modes(in, std::max(k, in.n) + 1, "rigidity suite");
  // Classical Laplacian forms: alpha = 0 and every shift exactly zero.
  BoundInput base = in;
  base.alpha = 0.0;
  base.divnorms.clear();
  base.constants = BoundConstants{};
  const double n = in.n;
  const double a = 2.0 / n;

  std::vector<BoundReport> out;
  auto [ylhs, yrhs] = yang_sides(base, k, 4.0 / n, 0.0);
  out.push_back(make_report("rigidity_yang", "sum (s_{k+1}-s_i)^2 <= (4/n) sum (s_{k+1}-s_i) s_i", k, ylhs, yrhs,
                            in.slack));
  auto [level, gap] = sharpgap_with(base, k, a, 0.0, "rigidity_");
  out.push_back(level);
  out.push_back(gap);
  out.push_back(recursion_with(base, k, a, 0.0, "rigidity_recursion"));
  out.push_back(make_report("rigidity_lower_order_sum", "sum_{i<=n} (s_{i+1}-s_1) <= 4 s_1", in.n,
                            lower_order_lhs(base), 4.0 * base.sigma(1), in.slack));
  return out;
}

std::pair<BoundReport, BoundReport> eval_expanding_ball(const BoundInput& in, double r, double lambda) {
  in.validate();
  if (!(lambda < 0.0)) throw std::invalid_argument("expanding ball requires lambda < 0");
  if (!(r > 0.0)) throw std::invalid_argument("ball radius must be positive");
  require_modes(in, in.n + 1, "expanding ball");
  const double n = in.n;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double bound = pi2 * n / (64.0 * r * r) - lambda * n / 2.0;
  BoundReport first = make_report("expanding_ball_first", "pi^2 n/(64 r^2) - lambda n/2 <= s_1", 1, bound,
                                  in.sigma(1), in.slack);
  BoundReport sum = make_report("expanding_ball_lower_order_sum",
                                "sum_{i<=n} (s_{i+1}-s_1) <= 4(s_1 + lambda n/2)", in.n, lower_order_lhs(in),
                                4.0 * (in.sigma(1) + lambda * n / 2.0), in.slack);
  return {first, sum};
}

BoundReport eval_expanding_annulus(const BoundInput& in, double lambda) {
  in.validate();
  if (!(lambda < 0.0)) throw std::invalid_argument("expanding annulus requires lambda < 0");
  require_modes(in, in.n + 1, "expanding annulus");
  return make_report("expanding_annulus_lower_order_sum", "sum_{i<=n} (s_{i+1}-s_1) <= 4(s_1 + lambda n)", in.n,
                     lower_order_lhs(in), 4.0 * (in.sigma(1) + lambda * in.n), in.slack);
}

std::vector<BoundReport> eval_divfree_suite(const BoundInput& in, int k) {
  in.validate();
  const auto& c = in.constants;
  if (c.T0 > kPremiseTol) {
    std::ostringstream os;
    os << "divergence-free suite requires T0 = 0, got " << c.T0;
    throw BoundInputError(os.str());
  }
  require_modes(in, std::max(k, in.n) + 1, "divergence-free suite");
  const double n = in.n;
  const double b = 2.0 * c.delta * (n * c.delta + in.alpha) / (c.eps * c.eps * n * n);
  const double c0d = c.C0 / c.delta;

  std::vector<BoundReport> out;
  {
    double lhs = 0.0;
    double sum = 0.0;
    const double top = in.sigma(k + 1);
    for (int i = 1; i <= k; ++i) {
      const double gap = top - in.sigma(i);
      lhs += gap * gap;
      sum += gap * (reduced_energy(in, i) + c0d);
    }
    out.push_back(make_report("divfree_quadratic",
                              "sum (s_{k+1}-s_i)^2 <= 4d(nd+a)/(n^2 e^2) sum (s_{k+1}-s_i)(s_i-a|div u_i|^2+C0/d)",
                              k, lhs, 2.0 * b * sum, in.slack));
  }
  {
    const double d1 = -in.alpha * in.divnorm(1) + c0d;
    const double rhs = 4.0 * c.delta * (c.delta + in.alpha) / (c.eps * c.eps) * (in.sigma(1) + d1);
    out.push_back(make_report("divfree_lower_order_sum", "sum_{i<=n} (s_{i+1}-s_1) <= 4d(d+a)/e^2 (s_1+D1)", in.n,
                              lower_order_lhs(in), rhs, in.slack));
  }
  const double d0 = -in.alpha * min_divnorm(in, k) + c0d;
  check_shift(in, k, d0);
  auto [level, gap] = sharpgap_with(in, k, b, d0, "divfree_");
  out.push_back(level);
  out.push_back(gap);
  out.push_back(recursion_with(in, k, b, d0, "divfree_recursion"));
  return out;
}

}  // namespace divspec
