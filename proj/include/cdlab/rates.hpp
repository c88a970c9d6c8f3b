#pragma once

namespace cdlab {

// Closed-form per-epoch and per-iteration contraction factors for the
// structured problem class, all parameterized by (n, t) with t = alpha*(n-1)
// in the open interval (0,1). Every function validates its domain.

// 1 - ((1-t)/n) * h(t,n), h(t,n) = ((1 + t/(n-1))^n - 1) / (t/(n-1)).
double rho_rpcd(int n, double t);

// (1 - (1-t)/n)^n.
double rho_rcd_epoch(int n, double t);

// -log of the two rates above, evaluated through log1p so no precision is
// lost as the rates approach 1 (t -> 1).
double neg_log_rho_rpcd(int n, double t);
double neg_log_rho_rcd_epoch(int n, double t);

// Epoch-count ratio -log rho_rpcd / -log rho_rcd_epoch; > 1 everywhere on
// the domain. Returns +infinity when rho_rpcd underflows to zero.
double speedup_s(int n, double t);

// t -> 1 limit of speedup_s: (1 + 1/(n-1))^(n-1) + 1/n - 1, strictly
// increasing from 3/2 toward e-1.
double g_limit(int n);

// Per-iteration contraction factors of with-replacement sampling:
// squared distance 1 - 2mu/n + mu^2/n, suboptimality 1 - mu/n.
double rcd_i2_rate(int n, double t);
double rcd_i3_rate(int n, double t);

// Per-epoch contraction factors of per-epoch random permutations:
// squared distance 1 - (2mu/n)((1+a)^n-1)/a + (mu^2/n)((1+a)^{2n}-1)/(a(a+2)),
// suboptimality  1 - (mu/n)((1+a)^{2n}-1)/(a(a+2)).
double rpcd_i2_rate(int n, double t);
double rpcd_i3_rate(int n, double t);

// Squared-distance analogue of speedup_s:
// -log rpcd_i2_rate / (-n log rcd_i2_rate); +infinity on underflow.
double speedup_s_tilde(int n, double t);

struct ReferenceBounds {
  double oswald_rpcd_rate;      // per-epoch, 1 - mu/(1+L)^2
  double nesterov_rcd_iter_rate;  // per-iteration, 1 - 2mu/(n(1+mu))
  double ccd_upper;             // bound on the cyclic epoch radius, (1-mu)/(1+mu)
};
ReferenceBounds reference_bounds(int n, double t);

struct EpochRatioConstants {
  double ccd_over_rcd;   // n^2 / (2 pi^2)
  double ccd_over_rpcd;  // n(n+1) / (2 pi^2)
};
EpochRatioConstants epoch_ratio_constants(int n);

// Every closed-form quantity at one (n, t) point. rho_ccd_upper is an
// analytic bound; the measured spectral radius of the cyclic epoch matrix is
// a separate quantity (matrix module) and is never substituted for it.
struct RateReport {
  int n;
  double t;
  double alpha;
  double mu;
  double lmax;
  double rho_rpcd;
  double rho_rcd_epoch;
  double rho_ccd_upper;
  double q_norm;   // rcd_i2_rate
  double s_norm;   // rpcd_i2_rate
  double g_norm;   // rpcd_i3_rate
  double rcd_f_rate;  // rcd_i3_rate
  double s_factor;
  double s_tilde_factor;
  double oswald_rpcd_rate;
  double nesterov_rcd_iter_rate;
};
RateReport rate_report(int n, double t);

}  // namespace cdlab
