#include "cdlab/rates.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cdlab/numeric.hpp"

namespace cdlab {

namespace {

constexpr double kTwoPiSquared = 19.739208802178716;  // 2*pi^2

void check_domain(int n, double t) {
  if (n < 2) {
    std::ostringstream msg;
    msg << "rates: n must be >= 2, got " << n;
    throw std::domain_error(msg.str());
  }
  if (!(t > 0.0) || !(t < 1.0)) {
    std::ostringstream msg;
    msg << "rates: t must lie in (0, 1), got " << t;
    throw std::domain_error(msg.str());
  }
}

void check_n(int n) {
  if (n < 2) throw std::domain_error("rates: n must be >= 2");
}

// mu * h(t,n) / n: the full contraction gap of the permuted epoch radius.
double rpcd_gap(int n, double t) {
  const double alpha = t / (n - 1);
  const double h = pow1p_m1(alpha, n) / alpha;
  return (1.0 - t) * h / n;
}

double neg_log1m(double gap) { return -std::log1p(-gap); }

}  // namespace

double rho_rpcd(int n, double t) {
  check_domain(n, t);
  return 1.0 - rpcd_gap(n, t);
}

double rho_rcd_epoch(int n, double t) {
  check_domain(n, t);
  return std::exp(static_cast<double>(n) * std::log1p(-(1.0 - t) / n));
}

double neg_log_rho_rpcd(int n, double t) {
  check_domain(n, t);
  return neg_log1m(rpcd_gap(n, t));
}

double neg_log_rho_rcd_epoch(int n, double t) {
  check_domain(n, t);
  return -static_cast<double>(n) * std::log1p(-(1.0 - t) / n);
}

double speedup_s(int n, double t) {
  check_domain(n, t);
  const double gap = rpcd_gap(n, t);
  if (gap >= 1.0) return std::numeric_limits<double>::infinity();
  return neg_log1m(gap) / neg_log_rho_rcd_epoch(n, t);
}

double g_limit(int n) {
  check_n(n);
  // std::pow keeps g(2) = 1.5 exact; accuracy at large n is ~ n*eps.
  return std::pow(1.0 + 1.0 / (n - 1), n - 1) + 1.0 / n - 1.0;
}

double rcd_i2_rate(int n, double t) {
  check_domain(n, t);
  const double mu = 1.0 - t;
  return 1.0 - 2.0 * mu / n + mu * mu / n;
}

double rcd_i3_rate(int n, double t) {
  check_domain(n, t);
  return 1.0 - (1.0 - t) / n;
}

namespace {

// ((1+a)^n - 1)/a and ((1+a)^{2n} - 1)/(a(a+2)): the 1- and 2-norm sums of
// the geometric column (1, 1+a, ..., (1+a)^{n-1}).
double col_sum_1(double alpha, int n) { return pow1p_m1(alpha, n) / alpha; }
double col_sum_2(double alpha, int n) {
  return pow1p_m1(alpha, 2.0 * n) / (alpha * (alpha + 2.0));
}

double rpcd_i2_gap(int n, double t) {
  const double alpha = t / (n - 1);
  const double mu = 1.0 - t;
  return (2.0 * mu / n) * col_sum_1(alpha, n) - (mu * mu / n) * col_sum_2(alpha, n);
}

double rpcd_i3_gap(int n, double t) {
  const double alpha = t / (n - 1);
  return ((1.0 - t) / n) * col_sum_2(alpha, n);
}

}  // namespace

double rpcd_i2_rate(int n, double t) {
  check_domain(n, t);
  return 1.0 - rpcd_i2_gap(n, t);
}

double rpcd_i3_rate(int n, double t) {
  check_domain(n, t);
  return 1.0 - rpcd_i3_gap(n, t);
}

double speedup_s_tilde(int n, double t) {
  check_domain(n, t);
  const double gap = rpcd_i2_gap(n, t);
  if (gap >= 1.0) return std::numeric_limits<double>::infinity();
  const double mu = 1.0 - t;
  const double denom = -static_cast<double>(n) * std::log1p(-2.0 * mu / n + mu * mu / n);
  return neg_log1m(gap) / denom;
}

ReferenceBounds reference_bounds(int n, double t) {
  check_domain(n, t);
  const double mu = 1.0 - t;
  const double lmax = 1.0 + t / (n - 1);
  return ReferenceBounds{
      1.0 - mu / ((1.0 + lmax) * (1.0 + lmax)),
      1.0 - 2.0 * mu / (n * (1.0 + mu)),
      (1.0 - mu) / (1.0 + mu),
  };
}

EpochRatioConstants epoch_ratio_constants(int n) {
  check_n(n);
  const double dn = n;
  return EpochRatioConstants{dn * dn / kTwoPiSquared, dn * (dn + 1.0) / kTwoPiSquared};
}

RateReport rate_report(int n, double t) {
  check_domain(n, t);
  const ReferenceBounds ref = reference_bounds(n, t);
  RateReport r;
  r.n = n;
  r.t = t;
  r.alpha = t / (n - 1);
  r.mu = 1.0 - t;
  r.lmax = 1.0 + r.alpha;
  r.rho_rpcd = rho_rpcd(n, t);
  r.rho_rcd_epoch = rho_rcd_epoch(n, t);
  r.rho_ccd_upper = ref.ccd_upper;
  r.q_norm = rcd_i2_rate(n, t);
  r.s_norm = rpcd_i2_rate(n, t);
  r.g_norm = rpcd_i3_rate(n, t);
  r.rcd_f_rate = rcd_i3_rate(n, t);
  r.s_factor = speedup_s(n, t);
  r.s_tilde_factor = speedup_s_tilde(n, t);
  r.oswald_rpcd_rate = ref.oswald_rpcd_rate;
  r.nesterov_rcd_iter_rate = ref.nesterov_rcd_iter_rate;
  return r;
}

}  // namespace cdlab
