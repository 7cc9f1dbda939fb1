#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace vtergm {

/// Linear tilting n^{beta V_T} with beta = 1/3 + theta / log n.
struct LinearTilt {
  double theta = 0.0;
  double lambda = 1.0;

  /// Requires n >= 2 so that log n > 0.
  double beta(std::size_t n) const;
  void validate() const;
};

/// Functional tilting exp(n log n g(V_T/n)) with g(x) = beta x^alpha.
struct PowerLawTilt {
  double alpha = 0.5;
  double beta = 0.0;
  double lambda = 1.0;

  double g(double x) const;
  /// Checks alpha in (0,1), beta >= 0, 3 alpha beta < 1, lambda > 0.
  void validate() const;
};

struct RateResult {
  double a_star = 0.0;
  double value = 0.0;
  double stationarity_residual = 0.0;
};

/// x log x with the convention 0 log 0 = 0.
double xlogx(double x);

/// Lambda(a, theta, lambda), the exponential rate of the critical tilted
/// partition function restricted to V_T = a n.
double lambda_rate(double a, double theta, double lambda);

/// d/da Lambda(a, theta, lambda); strictly decreasing on (0, 1).
double lambda_rate_derivative(double a, double theta, double lambda);

/// Leading plus second-order expansion of log P(V_T >= a n) in G(n, lambda/n);
/// the o(n^{19/20}) correction is dropped.
double log_prob_vt_tail(std::int64_t n, double lambda, double a);

struct ConfigCount {
  std::optional<unsigned __int128> exact;  // present for n <= 20
  double log_value = 0.0;
};

/// n(n-1)...(n-q+1) / ((3!)^{q/3} (q/3)!): ways to place q/3 disjoint
/// labeled triangles on q of n vertices.
ConfigCount count_pure_triangle_configs(std::int64_t n, std::int64_t q);

/// Log of the upper bound on the number of q-basic subgraphs of K_n with an
/// (l1, l2, l31, l32) configuration. Returns -infinity when a factor of the
/// bound vanishes (for example l2 > 0 with l1 = 0).
double qbasic_config_bound(std::int64_t n, std::int64_t q, std::int64_t l1, std::int64_t l2,
                           std::int64_t l31, std::int64_t l32);

struct VariationalResult {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;
  double min_value = 0.0;
  double multiplier = 0.0;
  double residual = 0.0;  // |x1 + x2 + x3 - q|
};

/// Objective (x1/3) log x1 + (x2/2) log x2 + x3 log x3 + c . x.
double variational_objective(double x1, double x2, double x3, double c1, double c2, double c3);

/// Minimises the objective on the simplex x1 + x2 + x3 = q, x >= 0, by
/// bisection on the Lagrange multiplier mu. The stationary point is
/// x1 = e^{3mu-3c1-1}, x2 = e^{2mu-2c2-1}, x3 = e^{mu-c3-1}; mu is bracketed
/// by mu_L (x1 = q - q^{9/10}) and mu_U (x1 = q). Throws DomainError when q is
/// too small for that bracket to contain the root.
VariationalResult variational_min(double q, double c1, double c2, double c3);

/// Unique maximiser of Lambda(., theta, lambda) on (0, 1).
///
/// Solves theta + log(1-a) - (1/3) log(a/3) - (1/3) log 6 + log lambda = 0 by
/// bisection in the logit s = log(a/(1-a)); the residual is 1-Lipschitz in s,
/// so the bisection width bounds the residual.
RateResult maximizer_a_star(double theta, double lambda);

/// max_a Lambda(a, theta, lambda).
double lambda_max(double theta, double lambda);

/// Limiting conditional edge cumulant generating function (lambda/2)(e^t - 1) + a t.
double edge_mgf_limit(double t, double a, double lambda);

enum class EdgeRateOffset {
  kLegendre,  // + lambda/2: the transform of edge_mgf_limit, zero at x = a + lambda/2
  kUnit,      // + 1: zero at the typical value only when lambda = 2
};

struct EdgeRate {
  bool finite = true;  // false when x <= a (rate is +infinity)
  double numeric = 0.0;
  double closed_form = 0.0;
  double maximizing_t = 0.0;
};

double edge_rate_closed_form(double x, double a, double lambda,
                             EdgeRateOffset offset = EdgeRateOffset::kLegendre);

/// sup_t { t x - edge_mgf_limit(t) } by golden-section search, reported
/// next to the closed form.
EdgeRate edge_rate_function(double x, double a, double lambda);

/// a* = (3 alpha beta)^{1/(1-alpha)} and value g(a*) - a*/3. Throws DomainError
/// unless beta > 0 and 3 alpha beta < 1.
RateResult functional_optimum(const PowerLawTilt& tilt);

/// Closed form beta (3 alpha beta)^{alpha/(1-alpha)} - (1/3)(3 alpha beta)^{1/(1-alpha)}.
double functional_optimum_value(double alpha, double beta);

/// Maximises g(a) - a/3 over [0, 1] for an arbitrary g: grid scan followed by
/// golden-section refinement around the best grid cell. The residual is the
/// final bracket width.
RateResult functional_optimum(const std::function<double(double)>& g,
                              std::size_t grid_points = 10'001);

/// Piecewise-linear g through (a_i, g_i) with strictly increasing a_i in [0, 1].
class TabulatedFunction {
 public:
  TabulatedFunction(std::vector<double> a, std::vector<double> g);
  double operator()(double x) const;

 private:
  std::vector<double> a_;
  std::vector<double> g_;
};

struct LinearEstimate {
  double lambda_hat = 0.0;
  double theta_hat = 0.0;
};

/// lambda_hat = 2e/n - 2 v_t/n; theta_hat makes v_t/n the maximiser of
/// Lambda(., theta_hat, lambda_hat). Throws DomainError when lambda_hat <= 0
/// or v_t/n is 0 or 1.
LinearEstimate estimate_linear(std::int64_t n, std::int64_t e, std::int64_t v_t);

/// theta that makes `a` the maximiser of Lambda(., theta, lambda).
double theta_for_maximizer(double a, double lambda);

struct PowerLawEstimate {
  double beta_hat = 0.0;
  double lambda_hat = 0.0;
  bool in_regime = true;  // 3 alpha beta_hat < 1 and lambda_hat > 0
};

/// Inverts a* = (3 alpha beta)^{1/(1-alpha)} at a_hat = v_t/n and uses
/// E/n -> a* + lambda/2 for lambda_hat. Throws DomainError unless a_hat in (0,1).
PowerLawEstimate estimate_power_law(std::int64_t n, std::int64_t e, std::int64_t v_t,
                                    double alpha);

}  // namespace vtergm
