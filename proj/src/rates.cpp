#include "vtergm/rates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vtergm/error.hpp"

namespace vtergm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLog2 = std::numbers::ln2;
const double kLog3 = std::log(3.0);
const double kLog6 = std::log(6.0);

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

void require_positive_lambda(double lambda) {
  require(std::isfinite(lambda) && lambda > 0.0, "lambda must be positive and finite");
}

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

/// log of the logistic function 1 / (1 + e^{-s}).
double log_sigmoid(double s) { return -softplus(-s); }

double log_binomial(double top, std::int64_t k) {
  if (k == 0) return 0.0;
  if (top < static_cast<double>(k)) return -kInf;
  const double kd = static_cast<double>(k);
  return std::lgamma(top + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(top - kd + 1.0);
}

double log_falling(std::int64_t n, std::int64_t q) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(n - q) + 1.0);
}

/// Golden-section maximisation of a unimodal f on [lo, hi].
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 500 && hi - lo > tol; ++iter) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return fc >= fd ? std::pair{c, hi - lo} : std::pair{d, hi - lo};
}

}  // namespace

double LinearTilt::beta(std::size_t n) const {
  require(n >= 2, "linear tilt needs n >= 2 so that log n > 0");
  return 1.0 / 3.0 + theta / std::log(static_cast<double>(n));
}

void LinearTilt::validate() const {
  require(std::isfinite(theta), "theta must be finite");
  require_positive_lambda(lambda);
}

double PowerLawTilt::g(double x) const { return beta * std::pow(x, alpha); }

void PowerLawTilt::validate() const {
  require(alpha > 0.0 && alpha < 1.0, "power-law tilt needs alpha in (0,1)");
  require(std::isfinite(beta) && beta >= 0.0, "power-law tilt needs beta >= 0");
  require(3.0 * alpha * beta < 1.0, "power-law tilt needs 3 alpha beta < 1");
  require_positive_lambda(lambda);
}

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

double lambda_rate(double a, double theta, double lambda) {
  require(a >= 0.0 && a <= 1.0, "lambda_rate needs a in [0,1]");
  require_positive_lambda(lambda);
  return theta * a - xlogx(1.0 - a) - xlogx(a / 3.0) - 2.0 * a / 3.0 - a * kLog6 / 3.0 +
         a * std::log(lambda);
}

double lambda_rate_derivative(double a, double theta, double lambda) {
  require(a > 0.0 && a < 1.0, "lambda_rate_derivative needs a in (0,1)");
  require_positive_lambda(lambda);
  return theta + std::log1p(-a) - std::log(a / 3.0) / 3.0 - kLog6 / 3.0 + std::log(lambda);
}

double log_prob_vt_tail(std::int64_t n, double lambda, double a) {
  require(n >= 3, "log_prob_vt_tail needs n >= 3");
  require(a > 0.0 && a < 1.0, "log_prob_vt_tail needs a in (0,1)");
  require_positive_lambda(lambda);
  const double nd = static_cast<double>(n);
  const double an = a * nd;
  return -nd * xlogx(1.0 - a) - (an / 3.0) * std::log(an / 3.0) -
         an * (2.0 / 3.0 + kLog6 / 3.0) + an * std::log(lambda);
}

ConfigCount count_pure_triangle_configs(std::int64_t n, std::int64_t q) {
  require(q >= 0 && q <= n, "count_pure_triangle_configs needs 0 <= q <= n");
  require(q % 3 == 0, "count_pure_triangle_configs needs q divisible by 3");
  const std::int64_t k = q / 3;
  ConfigCount out;
  out.log_value = log_falling(n, q) - static_cast<double>(k) * kLog6 -
                  std::lgamma(static_cast<double>(k) + 1.0);
  if (n <= 20) {
    unsigned __int128 value = 1;
    for (std::int64_t i = 0; i < q; ++i) value *= static_cast<unsigned __int128>(n - i);
    for (std::int64_t i = 1; i <= k; ++i) value /= static_cast<unsigned __int128>(6 * i);
    out.exact = value;
  }
  return out;
}

double qbasic_config_bound(std::int64_t n, std::int64_t q, std::int64_t l1, std::int64_t l2,
                           std::int64_t l31, std::int64_t l32) {
  require(l1 >= 0 && l2 >= 0 && l31 >= 0 && l32 >= 0, "configuration sizes must be >= 0");
  require(l1 + l2 + l31 + l32 == q, "configuration sizes must sum to q");
  require(q <= n, "configuration needs q <= n");
  require(l1 % 3 == 0, "configuration needs l1 divisible by 3");
  require(l2 % 2 == 0, "configuration needs l2 even");

  const double d1 = static_cast<double>(l1);
  const double d2 = static_cast<double>(l2);
  const std::int64_t l3 = l31 + l32;
  double log_bound = log_falling(n, q) - (d1 / 3.0) * kLog6 - std::lgamma(d1 / 3.0 + 1.0) -
                     (d2 / 2.0) * kLog2 - std::lgamma(d2 / 2.0 + 1.0) -
                     std::lgamma(static_cast<double>(l3) + 1.0);
  if (l2 > 0) {
    if (l1 == 0) return -kInf;
    log_bound += (d2 / 2.0) * std::log(d1);
  }
  log_bound += log_binomial(d1 * d1 / 2.0 + d1 * d2, l31);
  log_bound += log_binomial(static_cast<double>(l1 + l2 + l31), l32);
  return log_bound;
}

double variational_objective(double x1, double x2, double x3, double c1, double c2, double c3) {
  return xlogx(x1) / 3.0 + xlogx(x2) / 2.0 + xlogx(x3) + c1 * x1 + c2 * x2 + c3 * x3;
}

VariationalResult variational_min(double q, double c1, double c2, double c3) {
  require(std::isfinite(q) && q > 1.0, "variational_min needs q > 1");
  require(std::isfinite(c1) && std::isfinite(c2) && std::isfinite(c3),
          "variational_min needs finite coefficients");
  auto parts = [&](double mu) {
    return std::array<double, 3>{std::exp(3.0 * mu - 3.0 * c1 - 1.0),
                                 std::exp(2.0 * mu - 2.0 * c2 - 1.0),
                                 std::exp(mu - c3 - 1.0)};
  };
  auto total = [&](double mu) {
    const auto x = parts(mu);
    return x[0] + x[1] + x[2];
  };
  double hi = (std::log(q) + 3.0 * c1 + 1.0) / 3.0;
  double lo = (std::log(q - std::pow(q, 0.9)) + 3.0 * c1 + 1.0) / 3.0;
  if (total(lo) > q) {
    throw DomainError("variational_min: q=" + std::to_string(q) +
                      " is too small for the multiplier bracket [mu_L, mu_U]");
  }
  for (int iter = 0; iter < 300 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++iter) {
    const double mid = 0.5 * (lo + hi);
    (total(mid) > q ? hi : lo) = mid;
  }
  const double mu = 0.5 * (lo + hi);
  const auto x = parts(mu);
  VariationalResult r;
  r.x1 = x[0];
  r.x2 = x[1];
  r.x3 = x[2];
  r.multiplier = mu;
  r.residual = std::abs(x[0] + x[1] + x[2] - q);
  r.min_value = variational_objective(r.x1, r.x2, r.x3, c1, c2, c3);
  return r;
}

RateResult maximizer_a_star(double theta, double lambda) {
  require(std::isfinite(theta), "theta must be finite");
  require_positive_lambda(lambda);
  const double shift = theta - (kLog6 - kLog3) / 3.0 + std::log(lambda);
  // Stationarity residual in the logit s; strictly decreasing with slope in [-1, -1/3].
  auto residual = [&](double s) { return shift + log_sigmoid(-s) - log_sigmoid(s) / 3.0; };

  double lo = -1.0;
  double hi = 1.0;
  while (residual(lo) <= 0.0) lo *= 2.0;
  while (residual(hi) >= 0.0) hi *= 2.0;
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (residual(mid) > 0.0 ? lo : hi) = mid;
  }
  const double s = std::abs(residual(lo)) <= std::abs(residual(hi)) ? lo : hi;
  RateResult r;
  r.a_star = std::exp(log_sigmoid(s));
  r.value = lambda_rate(r.a_star, theta, lambda);
  r.stationarity_residual = std::abs(residual(s));
  return r;
}

double lambda_max(double theta, double lambda) { return maximizer_a_star(theta, lambda).value; }

double edge_mgf_limit(double t, double a, double lambda) {
  return 0.5 * lambda * std::expm1(t) + a * t;
}

double edge_rate_closed_form(double x, double a, double lambda, EdgeRateOffset offset) {
  require_positive_lambda(lambda);
  if (!(x > a)) return kInf;
  const double y = x - a;
  const double constant = offset == EdgeRateOffset::kLegendre ? 0.5 * lambda : 1.0;
  return y * std::log(y / (0.5 * lambda)) - y + constant;
}

EdgeRate edge_rate_function(double x, double a, double lambda) {
  require_positive_lambda(lambda);
  require(a >= 0.0 && a <= 1.0, "edge_rate_function needs a in [0,1]");
  EdgeRate r;
  if (!(x > a)) {
    r.finite = false;
    r.numeric = r.closed_form = kInf;
    return r;
  }
  auto objective = [&](double t) { return t * x - edge_mgf_limit(t, a, lambda); };
  // Expand a bracket around the maximiser of the concave objective.
  double step = 1.0;
  double lo = -step;
  double hi = step;
  while (objective(hi) > objective(hi - step) && hi < 700.0) {
    step *= 2.0;
    hi += step;
  }
  step = 1.0;
  while (objective(lo) > objective(lo + step) && lo > -1e6) {
    step *= 2.0;
    lo -= step;
  }
  const auto [t_star, width] = golden_max(objective, lo, hi, 1e-13 * std::max(1.0, hi - lo));
  (void)width;
  r.maximizing_t = t_star;
  r.numeric = objective(t_star);
  r.closed_form = edge_rate_closed_form(x, a, lambda);
  return r;
}

double functional_optimum_value(double alpha, double beta) {
  const double k = 3.0 * alpha * beta;
  return beta * std::pow(k, -alpha / (alpha - 1.0)) - std::pow(k, -1.0 / (alpha - 1.0)) / 3.0;
}

RateResult functional_optimum(const PowerLawTilt& tilt) {
  tilt.validate();
  require(tilt.beta > 0.0, "functional_optimum needs beta > 0 (maximiser must lie in (0,1))");
  RateResult r;
  r.a_star = std::pow(3.0 * tilt.alpha * tilt.beta, 1.0 / (1.0 - tilt.alpha));
  r.value = tilt.g(r.a_star) - r.a_star / 3.0;
  r.stationarity_residual =
      std::abs(tilt.alpha * tilt.beta * std::pow(r.a_star, tilt.alpha - 1.0) - 1.0 / 3.0);
  return r;
}

RateResult functional_optimum(const std::function<double(double)>& g, std::size_t grid_points) {
  require(grid_points >= 3, "functional_optimum needs at least 3 grid points");
  auto objective = [&](double a) { return g(a) - a / 3.0; };
  const double h = 1.0 / static_cast<double>(grid_points - 1);
  std::size_t best = 0;
  double best_value = -kInf;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double v = objective(static_cast<double>(i) * h);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const std::size_t last = grid_points - 1;
  const double lo = best == 0 ? 0.0 : static_cast<double>(best - 1) * h;
  const double hi = best == last ? 1.0 : static_cast<double>(best + 1) * h;
  const auto [a_star, width] = golden_max(objective, lo, hi, 1e-13);
  if (best == 0 || best == last) {
    // The peak can sit inside the first or last cell; refuse only a true endpoint.
    const double endpoint = best == 0 ? 0.0 : 1.0;
    require(std::abs(a_star - endpoint) > 1e-12 && objective(a_star) > objective(endpoint),
            "functional_optimum: maximiser of g(a) - a/3 lies on the boundary of [0,1]");
  }
  RateResult r;
  r.a_star = a_star;
  r.value = objective(a_star);
  r.stationarity_residual = width;
  return r;
}

TabulatedFunction::TabulatedFunction(std::vector<double> a, std::vector<double> g)
    : a_(std::move(a)), g_(std::move(g)) {
  require(a_.size() == g_.size() && a_.size() >= 2, "tabulated g needs matching sizes >= 2");
  for (std::size_t i = 1; i < a_.size(); ++i) {
    require(a_[i] > a_[i - 1], "tabulated g needs strictly increasing abscissae");
  }
}

double TabulatedFunction::operator()(double x) const {
  if (x <= a_.front()) return g_.front();
  if (x >= a_.back()) return g_.back();
  const auto it = std::upper_bound(a_.begin(), a_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - a_.begin());
  const double t = (x - a_[i - 1]) / (a_[i] - a_[i - 1]);
  return g_[i - 1] + t * (g_[i] - g_[i - 1]);
}

double theta_for_maximizer(double a, double lambda) {
  require(a > 0.0 && a < 1.0, "theta is undefined unless a in (0,1)");
  require_positive_lambda(lambda);
  return -std::log1p(-a) + std::log(2.0 * a) / 3.0 - std::log(lambda);
}

LinearEstimate estimate_linear(std::int64_t n, std::int64_t e, std::int64_t v_t) {
  require(n >= 3, "estimate_linear needs n >= 3");
  require(e >= 0 && v_t >= 0 && v_t <= n, "estimate_linear needs e >= 0 and 0 <= v_t <= n");
  const double nd = static_cast<double>(n);
  LinearEstimate est;
  est.lambda_hat = 2.0 * static_cast<double>(e) / nd - 2.0 * static_cast<double>(v_t) / nd;
  if (!(est.lambda_hat > 0.0)) {
    throw DomainError("estimation failure: lambda_hat = " + std::to_string(est.lambda_hat) +
                      " <= 0, graph inconsistent with the model regime");
  }
  if (v_t == 0 || v_t == n) {
    throw DomainError("estimation failure: theta_hat undefined for V_T/n in {0, 1}");
  }
  est.theta_hat = theta_for_maximizer(static_cast<double>(v_t) / nd, est.lambda_hat);
  return est;
}

PowerLawEstimate estimate_power_law(std::int64_t n, std::int64_t e, std::int64_t v_t,
                                    double alpha) {
  require(n >= 3, "estimate_power_law needs n >= 3");
  require(alpha > 0.0 && alpha < 1.0, "estimate_power_law needs alpha in (0,1)");
  require(e >= 0 && v_t >= 0 && v_t <= n, "estimate_power_law needs e >= 0 and 0 <= v_t <= n");
  const double nd = static_cast<double>(n);
  const double a_hat = static_cast<double>(v_t) / nd;
  require(a_hat > 0.0 && a_hat < 1.0, "estimation failure: V_T/n must lie in (0,1)");
  PowerLawEstimate est;
  est.beta_hat = std::pow(a_hat, 1.0 - alpha) / (3.0 * alpha);
  est.lambda_hat = 2.0 * static_cast<double>(e) / nd - 2.0 * a_hat;
  est.in_regime = 3.0 * alpha * est.beta_hat < 1.0 && est.lambda_hat > 0.0;
  return est;
}

}  // namespace vtergm
