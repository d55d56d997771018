#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace divspec {

// Constants entering the inequalities. C0 is the full constant including the
// (delta/2) T0 eta0 term.
struct BoundConstants {
  double eps = 1.0;
  double delta = 1.0;
  double T0 = 0.0;
  double eta0 = 0.0;
  double C0 = 0.0;
};

// Everything the evaluators read: dimension n, coupling alpha, ascending
// eigenvalues and per-mode ||div_eta u_i||^2 (index 0 is mode 1).
struct BoundInput {
  int n = 2;
  double alpha = 0.0;
  std::vector<double> sigmas;
  std::vector<double> divnorms;  // empty means all zero
  BoundConstants constants;
  double slack = 1e-9;

  double sigma(int i) const { return sigmas.at(static_cast<std::size_t>(i - 1)); }
  double divnorm(int i) const;
  // Throws std::invalid_argument when the input violates its invariants.
  void validate() const;
};

struct BoundReport {
  std::string id;
  std::string paper_eq;  // the inequality in compact text form
  int k = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool satisfied = false;
};

// Thrown when an input contradicts the hypotheses of an inequality (negative
// radicands, non-positive shifted eigenvalues, failed rigidity premises).
class BoundInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// lhs <= rhs + slack |rhs|
BoundReport make_report(std::string id, std::string formula, int k, double lhs, double rhs, double slack);

// Quadratic estimate for L + alpha grad div_eta:
// sum_{i<=k} (s_{k+1}-s_i)^2 <= 4 d (n d + a)/(n^2 e^2) sum (s_{k+1}-s_i)
//                               {[(s_i - a|div u_i|^2)^{1/2} + T0/(2 sqrt d)]^2 + C0/d}
BoundReport eval_thm_quadratic(const BoundInput& in, int k);

// sum_{i=1}^n (s_{i+1}-s_1) <= 4 d (d + a)/e^2 {[(s_1 - a|div u_1|^2)^{1/2} + T0/(2 sqrt d)]^2 + C0/d}
BoundReport eval_lower_order_sum(const BoundInput& in);
// Identity-tensor form: sum_{i=1}^n (s_{i+1}-s_1) <= 4(1+a)(s_1 + D1)
BoundReport eval_lower_order_sum_identity(const BoundInput& in);
// Both reports when T = I (eps = delta = 1, T0 = 0), else only the general one.
std::vector<BoundReport> lower_order_sum_reports(const BoundInput& in);

// D0 = -a min_{j<=k} |div u_j|^2 + C0; requires s_i + D0 > 0 for i <= k.
double compute_D0(const BoundInput& in, int k);
// D1 = -a |div u_1|^2 + C0
double compute_D1(const BoundInput& in);

// sum (s_{k+1}-s_i)^2 <= 4(n+a)/n^2 sum (s_{k+1}-s_i)(s_i + D0)
BoundReport eval_yang_D0(const BoundInput& in, int k);
// Same with D0 = 0; implied by eval_yang_D0 whenever D0 <= 0.
BoundReport eval_yang_classical(const BoundInput& in, int k);
// eval_yang_D0 plus the classical form when D0 <= 0.
std::vector<BoundReport> yang_reports(const BoundInput& in, int k);

// Level bound on s_{k+1} and gap bound on s_{k+1} - s_k.
std::pair<BoundReport, BoundReport> eval_sharpgap(const BoundInput& in, int k);

// s_{k+1} + D0 <= (1 + 4(n+a)/n^2) k^{2(n+a)/n^2} (s_1 + D0)
BoundReport eval_recursion(const BoundInput& in, int k);

// Classical-Laplacian forms (alpha = 0, all shifts zero) for drifted spectra
// on shrinking soliton annuli. Throws BoundInputError when |C0| > 1e-12.
std::vector<BoundReport> eval_rigidity_suite(const BoundInput& in, int k);

// First eigenvalue lower bound pi^2 n/(64 r^2) - lambda n/2 and the
// lower-order sum bound 4(s_1 + lambda n/2) on an expanding-soliton ball.
std::pair<BoundReport, BoundReport> eval_expanding_ball(const BoundInput& in, double r, double lambda);

// sum_{i=1}^n (s_{i+1}-s_1) <= 4(s_1 + lambda n) on an expanding soliton annulus.
BoundReport eval_expanding_annulus(const BoundInput& in, double lambda);

// Divergence-free tensor suite: quadratic, lower-order sum, sharp-gap pair
// and recursion with the shifted constants C0/delta. Throws BoundInputError
// when T0 > 1e-12.
std::vector<BoundReport> eval_divfree_suite(const BoundInput& in, int k);

}  // namespace divspec
