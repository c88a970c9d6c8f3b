#pragma once

#include <utility>
#include <vector>

#include "cdlab/model.hpp"

namespace cdlab {

// Small dense square matrix, row-major.
class Mat {
 public:
  Mat() = default;
  explicit Mat(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, 0.0) {}

  static Mat identity(int n);
  static Mat ones(int n);

  int size() const { return n_; }
  double& operator()(int i, int j) { return d_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<double>& data() const { return d_; }

 private:
  int n_ = 0;
  std::vector<double> d_;
};

Mat operator*(const Mat& a, const Mat& b);
Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat scale(const Mat& a, double s);
Mat transpose(const Mat& a);
std::vector<double> matvec(const Mat& a, const std::vector<double>& x);
double max_abs_diff(const Mat& a, const Mat& b);
double inf_norm(const Mat& a);
bool is_symmetric(const Mat& a, double tol = kSymmetryTol);

Mat densify_mat(const Problem& q);

enum class RadiusMethod { PerronRowSum, PowerIteration, GelfandSquaring };

struct SpectralSummary {
  double rho = 0.0;
  RadiusMethod method = RadiusMethod::PowerIteration;
  double residual = 0.0;
  int iterations = 0;
  bool converged = true;
};

const char* radius_method_name(RadiusMethod m);

// Spectral radius with automatic method selection: symmetric -> power
// iteration (residual <= 1e-10); entrywise nonnegative with equal row sums ->
// exact Perron row sum; anything else -> Gelfand squaring |M^{2^k}|^{1/2^k}
// until successive estimates differ by < 1e-8. Non-convergence is reported in
// the summary, never thrown.
SpectralSummary spectral_radius(const Mat& m);

// (min, max) eigenvalue estimates of a symmetric matrix by power iteration on
// the matrix and on its Gershgorin shift.
std::pair<double, double> extreme_eigenvalues_symmetric(const Mat& m);

// Epoch matrix of cyclic descent in coordinate order `perm`:
// split P'AP = D - N - N' and return (D - N)^{-1} N' by forward substitution.
// The first column is always zero.
Mat b_ccd(const Problem& q, const std::vector<int>& perm);
Mat b_ccd(const Problem& q);  // natural order

// Inverse of Gamma = I - N for the structured class: the unit lower
// triangular Toeplitz matrix with first column
// (1, alpha, alpha(1+alpha), ..., alpha(1+alpha)^{n-2}).
Mat gamma_inverse(const StructuredQuadratic& q);

struct Conjugation {
  double tau1 = 0.0;
  double tau2 = 0.0;
  Mat expected;
};

// Expectation of PQP' over uniformly random permutation matrices P:
// tau2 = (1'Q1 - tr Q)/(n(n-1)), tau1 = tr(Q)/n - tau2, result tau1*I + tau2*11'.
// n = 1 degenerates to (trace, 0, Q).
Conjugation expected_conjugation(const Mat& q);

// Closed form of E[P B_ccd P']: diagonal (n-1)*gamma*alpha, off-diagonal
// beta = alpha - gamma + alpha*gamma*(n-2), with
// gamma = ((1+alpha)^n - alpha n - 1)/(alpha n (n-1)).
// Every entry is strictly positive on the valid alpha range.
Mat b_rpcd_closed(const StructuredQuadratic& q);

// Average off-diagonal entry of gamma_inverse, in closed form.
double gamma_coefficient(const StructuredQuadratic& q);

// Expected single-step matrix I - A/n; equals the average over coordinates i
// of I - e_i e_i' A for unit-diagonal A.
Mat b_rcd(const Problem& q);

// One-step second-moment operator of with-replacement sampling:
// Q = I - 2A/n + A^2/n.
Mat q_matrix(const Problem& q);

// E[P B'B P'] via expected_conjugation; its spectral radius equals
// |B1|^2 / n by the Perron row-sum argument.
Mat s_matrix(const StructuredQuadratic& q);

// E[P A^{-1/2} B' A B A^{-1/2} P'] via expected_conjugation, with
// A^{1/2} = sqrt(1+alpha) I - sigma 11', sigma = (sqrt(1+alpha) - sqrt(mu))/n.
Mat g_matrix(const StructuredQuadratic& q);

Mat sqrt_structured(const StructuredQuadratic& q);      // A^{1/2}
Mat inv_sqrt_structured(const StructuredQuadratic& q);  // A^{-1/2}

// Brute-force expectations over all n! permutations (n <= 8, else throws).
// These deliberately re-derive the per-permutation splitting so they share no
// code path with the closed forms they validate.
Mat permutation_average(const Mat& m);
Mat b_rpcd_enumerated(const Problem& q);
Mat s_matrix_enumerated(const Problem& q);
Mat g_matrix_enumerated(const StructuredQuadratic& q);

// Permutation helpers; the matrix convention is P(i, j) = 1 iff i = perm[j],
// so conjugation P' M P reads entries at (perm[j], perm[k]).
std::vector<double> apply_perm(const std::vector<int>& perm, const std::vector<double>& x);
std::vector<double> apply_perm_transpose(const std::vector<int>& perm, const std::vector<double>& x);
Mat conjugate_by_perm(const std::vector<int>& perm, const Mat& m);  // P M P'

}  // namespace cdlab
