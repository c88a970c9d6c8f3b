#include "cdlab/matrix_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cdlab {

Mat Mat::identity(int n) {
  Mat m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Mat Mat::ones(int n) {
  Mat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = 1.0;
  return m;
}

Mat operator*(const Mat& a, const Mat& b) {
  const int n = a.size();
  if (n != b.size()) throw std::invalid_argument("Mat multiply: size mismatch");
  Mat c(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Mat operator+(const Mat& a, const Mat& b) {
  const int n = a.size();
  if (n != b.size()) throw std::invalid_argument("Mat add: size mismatch");
  Mat c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

Mat operator-(const Mat& a, const Mat& b) {
  const int n = a.size();
  if (n != b.size()) throw std::invalid_argument("Mat subtract: size mismatch");
  Mat c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

Mat scale(const Mat& a, double s) {
  Mat c = a;
  const int n = a.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) *= s;
  return c;
}

Mat transpose(const Mat& a) {
  const int n = a.size();
  Mat c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = a(j, i);
  return c;
}

std::vector<double> matvec(const Mat& a, const std::vector<double>& x) {
  const int n = a.size();
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("matvec: size mismatch");
  std::vector<double> y(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  const int n = a.size();
  if (n != b.size()) throw std::invalid_argument("max_abs_diff: size mismatch");
  double d = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

double inf_norm(const Mat& a) {
  double best = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    double row = 0.0;
    for (int j = 0; j < a.size(); ++j) row += std::abs(a(i, j));
    best = std::max(best, row);
  }
  return best;
}

bool is_symmetric(const Mat& a, double tol) {
  for (int i = 0; i < a.size(); ++i)
    for (int j = i + 1; j < a.size(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > tol) return false;
  return true;
}

Mat densify_mat(const Problem& q) {
  const int n = dimension(q);
  Mat m(n);
  if (std::holds_alternative<StructuredQuadratic>(q)) {
    const auto& s = std::get<StructuredQuadratic>(q);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = (i == j) ? 1.0 : -s.alpha;
  } else {
    const auto& d = std::get<DenseQuadratic>(q);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = d.at(i, j);
  }
  return m;
}

const char* radius_method_name(RadiusMethod m) {
  switch (m) {
    case RadiusMethod::PerronRowSum: return "perron-row-sum";
    case RadiusMethod::PowerIteration: return "power-iteration";
    case RadiusMethod::GelfandSquaring: return "gelfand-squaring";
  }
  return "unknown";
}

namespace {

// Power iteration from the normalized all-ones vector with a fixed 1e-3
// perturbation on coordinate 0, so the start never sits in an invariant
// subspace orthogonal to the dominant eigenvector of our matrix family.
SpectralSummary power_iteration(const Mat& m) {
  const int n = m.size();
  std::vector<double> v(n, 1.0);
  v[0] += 1e-3;
  double nv = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  for (double& c : v) c /= nv;

  SpectralSummary out;
  out.method = RadiusMethod::PowerIteration;
  double lambda = 0.0;
  for (int it = 1; it <= kPowerIterCap; ++it) {
    std::vector<double> w = matvec(m, v);
    lambda = std::inner_product(v.begin(), v.end(), w.begin(), 0.0);
    double resid_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = w[i] - lambda * v[i];
      resid_sq += r * r;
    }
    out.rho = std::abs(lambda);
    out.residual = std::sqrt(resid_sq);
    out.iterations = it;
    if (out.residual <= kPowerIterTol) return out;
    const double nw = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
    if (nw == 0.0) {  // v is annihilated; for symmetric m this pins rho = 0
      out.rho = 0.0;
      out.residual = 0.0;
      return out;
    }
    for (int i = 0; i < n; ++i) v[i] = w[i] / nw;
  }
  out.converged = false;
  return out;
}

SpectralSummary gelfand_squaring(const Mat& m) {
  SpectralSummary out;
  out.method = RadiusMethod::GelfandSquaring;

  Mat cur = m;
  double a0 = inf_norm(cur);
  if (a0 == 0.0) return out;  // zero matrix
  double log_estimate = std::log(a0);
  double previous = a0;
  cur = scale(cur, 1.0 / a0);

  double weight = 0.5;  // 1 / 2^k
  for (int k = 1; k <= kGelfandCap; ++k, weight *= 0.5) {
    cur = cur * cur;
    const double a = inf_norm(cur);
    out.iterations = k;
    if (a == 0.0) {  // nilpotent
      out.rho = 0.0;
      out.residual = 0.0;
      return out;
    }
    log_estimate += weight * std::log(a);
    const double estimate = std::exp(log_estimate);
    out.rho = estimate;
    out.residual = std::abs(estimate - previous);
    if (out.residual < kGelfandTol) return out;
    previous = estimate;
    cur = scale(cur, 1.0 / a);
  }
  out.converged = false;
  return out;
}

bool nonnegative_equal_row_sums(const Mat& m, double* row_sum, double* spread) {
  const int n = m.size();
  double lo = 0.0, hi = 0.0;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      if (m(i, j) < 0.0) return false;
      s += m(i, j);
    }
    if (i == 0) lo = hi = s;
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  *row_sum = hi;
  *spread = hi - lo;
  return *spread <= kSymmetryTol * std::max(1.0, std::abs(hi));
}

void check_finite(const Mat& m) {
  for (double v : m.data())
    if (!std::isfinite(v)) throw std::invalid_argument("spectral_radius: nonfinite entry");
}

}  // namespace

SpectralSummary spectral_radius(const Mat& m) {
  check_finite(m);
  if (is_symmetric(m)) return power_iteration(m);
  double row_sum = 0.0, spread = 0.0;
  if (nonnegative_equal_row_sums(m, &row_sum, &spread)) {
    SpectralSummary out;
    out.method = RadiusMethod::PerronRowSum;
    out.rho = row_sum;
    out.residual = spread;
    return out;
  }
  return gelfand_squaring(m);
}

std::pair<double, double> extreme_eigenvalues_symmetric(const Mat& m) {
  const int n = m.size();
  const double shift = inf_norm(m) + 1.0;
  Mat plus(n), minus(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      plus(i, j) = m(i, j) + (i == j ? shift : 0.0);
      minus(i, j) = -m(i, j) + (i == j ? shift : 0.0);
    }
  }
  const double hi = power_iteration(plus).rho - shift;
  const double lo = shift - power_iteration(minus).rho;
  return {lo, hi};
}

namespace {

void validate_permutation(const std::vector<int>& perm, int n) {
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("permutation length does not match problem dimension");
  std::vector<char> seen(n, 0);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("not a permutation of 0..n-1");
    seen[v] = 1;
  }
}

}  // namespace

Mat b_ccd(const Problem& q, const std::vector<int>& perm) {
  const int n = dimension(q);
  validate_permutation(perm, n);
  const Mat a = densify_mat(q);
  Mat ap(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ap(i, j) = a(perm[i], perm[j]);

  // Solve tril(A_pi) X = -striu(A_pi) column by column; the triangular factor
  // has unit diagonal, so the substitution is division-free.
  Mat b(n);
  std::vector<double> col(n);
  for (int c = 0; c < n; ++c) {
    for (int i = 0; i < n; ++i) col[i] = (i < c) ? -ap(i, c) : 0.0;
    for (int i = 0; i < n; ++i) {
      double s = col[i];
      for (int j = 0; j < i; ++j) s -= ap(i, j) * b(j, c);
      b(i, c) = s;
    }
  }
  return b;
}

Mat b_ccd(const Problem& q) {
  std::vector<int> id(dimension(q));
  std::iota(id.begin(), id.end(), 0);
  return b_ccd(q, id);
}

Mat gamma_inverse(const StructuredQuadratic& q) {
  const int n = q.n;
  std::vector<double> col(n);
  col[0] = 1.0;
  if (n > 1) col[1] = q.alpha;
  for (int k = 2; k < n; ++k) col[k] = col[k - 1] * (1.0 + q.alpha);
  Mat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) m(i, j) = col[i - j];
  return m;
}

Conjugation expected_conjugation(const Mat& q) {
  const int n = q.size();
  double trace = 0.0, total = 0.0;
  for (int i = 0; i < n; ++i) {
    trace += q(i, i);
    for (int j = 0; j < n; ++j) total += q(i, j);
  }
  Conjugation out;
  if (n == 1) {
    out.tau1 = trace;
    out.tau2 = 0.0;
    out.expected = q;
    return out;
  }
  out.tau2 = (total - trace) / (static_cast<double>(n) * (n - 1));
  out.tau1 = trace / n - out.tau2;
  out.expected = Mat(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.expected(i, j) = out.tau2 + (i == j ? out.tau1 : 0.0);
  return out;
}

double gamma_coefficient(const StructuredQuadratic& q) {
  const double a = q.alpha;
  const double n = q.n;
  return (pow1p_m1(a, n) - a * n) / (a * n * (n - 1));
}

Mat b_rpcd_closed(const StructuredQuadratic& q) {
  const int n = q.n;
  const double gamma = gamma_coefficient(q);
  const double beta = q.alpha - gamma + q.alpha * gamma * (n - 2);
  const double diag = (n - 1) * gamma * q.alpha;
  Mat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = (i == j) ? diag : beta;
  return m;
}

Mat b_rcd(const Problem& q) {
  const int n = dimension(q);
  const Mat a = densify_mat(q);
  Mat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = (i == j ? 1.0 : 0.0) - a(i, j) / n;
  return m;
}

Mat q_matrix(const Problem& q) {
  const int n = dimension(q);
  const Mat a = densify_mat(q);
  const Mat a2 = a * a;
  Mat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = (i == j ? 1.0 : 0.0) - 2.0 * a(i, j) / n + a2(i, j) / n;
  return m;
}

Mat s_matrix(const StructuredQuadratic& q) {
  const Mat b = b_ccd(Problem{q});
  return expected_conjugation(transpose(b) * b).expected;
}

Mat sqrt_structured(const StructuredQuadratic& q) {
  const int n = q.n;
  const double g = std::sqrt(1.0 + q.alpha);
  const double sigma = (g - std::sqrt(q.mu())) / n;
  Mat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = (i == j ? g : 0.0) - sigma;
  return m;
}

Mat inv_sqrt_structured(const StructuredQuadratic& q) {
  const int n = q.n;
  const double g = std::sqrt(1.0 + q.alpha);
  const double sigma = (1.0 / std::sqrt(q.mu()) - 1.0 / g) / n;
  Mat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = (i == j ? 1.0 / g : 0.0) + sigma;
  return m;
}

Mat g_matrix(const StructuredQuadratic& q) {
  const Mat b = b_ccd(Problem{q});
  const Mat a = densify_mat(Problem{q});
  const Mat isq = inv_sqrt_structured(q);
  const Mat inner = isq * transpose(b) * a * b * isq;
  return expected_conjugation(inner).expected;
}

std::vector<double> apply_perm(const std::vector<int>& perm, const std::vector<double>& x) {
  std::vector<double> y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) y[perm[j]] = x[j];
  return y;
}

std::vector<double> apply_perm_transpose(const std::vector<int>& perm, const std::vector<double>& x) {
  std::vector<double> y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) y[j] = x[perm[j]];
  return y;
}

Mat conjugate_by_perm(const std::vector<int>& perm, const Mat& m) {
  const int n = m.size();
  Mat out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(perm[i], perm[j]) = m(i, j);
  return out;
}

namespace {

template <typename PerPermutation>
Mat average_over_permutations(int n, PerPermutation&& body) {
  if (n > kEnumerationCap)
    throw std::invalid_argument("permutation enumeration is capped at n = 8 (n! blow-up)");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Mat acc(n);
  std::size_t count = 0;
  do {
    acc = acc + body(perm);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return scale(acc, 1.0 / static_cast<double>(count));
}

}  // namespace

Mat permutation_average(const Mat& m) {
  return average_over_permutations(m.size(), [&](const std::vector<int>& p) {
    return conjugate_by_perm(p, m);
  });
}

Mat b_rpcd_enumerated(const Problem& q) {
  return average_over_permutations(dimension(q), [&](const std::vector<int>& p) {
    return conjugate_by_perm(p, b_ccd(q, p));
  });
}

Mat s_matrix_enumerated(const Problem& q) {
  return average_over_permutations(dimension(q), [&](const std::vector<int>& p) {
    const Mat b = b_ccd(q, p);
    return conjugate_by_perm(p, transpose(b) * b);
  });
}

Mat g_matrix_enumerated(const StructuredQuadratic& q) {
  const Mat a = densify_mat(Problem{q});
  const Mat isq = inv_sqrt_structured(q);
  return average_over_permutations(q.n, [&](const std::vector<int>& p) {
    const Mat epoch = conjugate_by_perm(p, b_ccd(Problem{q}, p));
    return isq * transpose(epoch) * a * epoch * isq;
  });
}

}  // namespace cdlab
