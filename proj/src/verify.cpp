#include "cdlab/verify.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cdlab/matrix_ops.hpp"
#include "cdlab/rates.hpp"
#include "cdlab/rng.hpp"

namespace cdlab {

namespace {

constexpr double kEulerMinusOne = 1.718281828459045;

struct Grid {
  int max_n;
  const std::vector<double>& fracs;

  template <typename F>
  void for_each(F&& body) const {
    for (int n = 2; n <= max_n; ++n)
      for (double frac : fracs) body(make_structured(n, frac));
  }
};

CheckResult equality_check(std::string name, double discrepancy, double tol,
                           const std::optional<double>& override_tol) {
  const double use = override_tol.value_or(tol);
  return CheckResult{std::move(name), discrepancy, use, discrepancy <= use};
}

// Ordering checks report the worst signed violation lhs - rhs; anything
// negative means the strict inequality held everywhere.
CheckResult ordering_check(std::string name, double worst_violation,
                           const std::optional<double>& override_tol) {
  const double use = override_tol.value_or(0.0);
  return CheckResult{std::move(name), worst_violation, use, worst_violation < use};
}

double avg_off_diagonal(const Mat& m) {
  const int n = m.size();
  double total = 0.0, trace = 0.0;
  for (int i = 0; i < n; ++i) {
    trace += m(i, i);
    for (int j = 0; j < n; ++j) total += m(i, j);
  }
  return (total - trace) / (static_cast<double>(n) * (n - 1));
}

double bccd_entry_formula(const StructuredQuadratic& q, int i, int j) {
  // 1-based indices in the closed form; callers pass 0-based.
  const double a = q.alpha;
  const double p = std::pow(1.0 + a, i);  // (1+alpha)^{i-1} for 1-based i
  if (i >= j) return a * (p - std::pow(1.0 + a, i - j));
  return a * p;
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& options) {
  if (options.max_n < 2 || options.max_n > kEnumerationCap) {
    std::ostringstream msg;
    msg << "verify: max_n must be in [2, " << kEnumerationCap << "], got " << options.max_n;
    throw std::invalid_argument(msg.str());
  }
  const auto& tol = options.tol_override;
  std::vector<CheckResult> results;
  const Grid enum_grid{options.max_n, options.alpha_fracs};
  const Grid eigen_grid{16, options.alpha_fracs};
  const Grid wide_grid{64, options.alpha_fracs};

  {
    double worst = 0.0;
    enum_grid.for_each([&](const StructuredQuadratic& q) {
      worst = std::max(worst, max_abs_diff(b_rpcd_closed(q), b_rpcd_enumerated(Problem{q})));
    });
    results.push_back(equality_check("brpcd-closed-vs-enumeration", worst, 1e-11, tol));
  }
  {
    double worst = 0.0;
    enum_grid.for_each([&](const StructuredQuadratic& q) {
      worst = std::max(worst, max_abs_diff(s_matrix(q), s_matrix_enumerated(Problem{q})));
    });
    results.push_back(equality_check("s-closed-vs-enumeration", worst, 1e-11, tol));
  }
  {
    double worst = 0.0;
    enum_grid.for_each([&](const StructuredQuadratic& q) {
      worst = std::max(worst, max_abs_diff(g_matrix(q), g_matrix_enumerated(q)));
    });
    results.push_back(equality_check("g-closed-vs-enumeration", worst, 1e-11, tol));
  }
  {
    rng::Stream g(20240517);
    Mat random(5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) random(i, j) = 2.0 * g.next_unit() - 1.0;
    const double diff = max_abs_diff(expected_conjugation(random).expected,
                                     permutation_average(random));
    results.push_back(equality_check("conjugation-average-vs-enumeration", diff, 1e-12, tol));
  }
  {
    double worst = 0.0;
    wide_grid.for_each([&](const StructuredQuadratic& q) {
      worst = std::max(worst,
                       std::abs(avg_off_diagonal(gamma_inverse(q)) - gamma_coefficient(q)));
    });
    results.push_back(equality_check("gamma-closed-form", worst, 1e-12, tol));
  }
  {
    double worst = 0.0;
    wide_grid.for_each([&](const StructuredQuadratic& q) {
      const int n = q.n;
      Mat gamma(n);  // Gamma = I - N, with N the negated strict lower part of A
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gamma(i, j) = (i == j) ? 1.0 : (i > j ? -q.alpha : 0.0);
      worst = std::max(worst, max_abs_diff(gamma * gamma_inverse(q), Mat::identity(n)));
    });
    results.push_back(equality_check("gamma-inverse-identity", worst, 1e-10, tol));
  }
  {
    double worst = 0.0;
    for (double eta : {0.5, 1.5, 2.0}) {
      for (int k = 0; k <= 20; ++k) {
        double direct = 0.0, power = 1.0;
        for (int j = 0; j <= k; ++j, power *= eta) direct += j * power;
        const double ep = std::pow(eta, k + 1);
        const double formula = (k + 1) * ep / (eta - 1.0) - (ep - 1.0) * eta / ((eta - 1.0) * (eta - 1.0));
        worst = std::max(worst, std::abs(direct - formula) / std::max(1.0, std::abs(direct)));
      }
    }
    results.push_back(equality_check("geometric-sum-identity", worst, 1e-9, tol));
  }
  {
    double worst = 0.0;
    Grid small{std::min(options.max_n, 8), options.alpha_fracs};
    small.for_each([&](const StructuredQuadratic& q) {
      const Mat b = b_ccd(Problem{q});
      for (int i = 0; i < q.n; ++i)
        for (int j = 0; j < q.n; ++j)
          worst = std::max(worst, std::abs(b(i, j) - bccd_entry_formula(q, i, j)));
    });
    results.push_back(equality_check("bccd-entry-formula", worst, 1e-12, tol));
  }
  {
    double worst = 0.0;
    eigen_grid.for_each([&](const StructuredQuadratic& q) {
      worst = std::max(worst, std::abs(rho_rpcd(q.n, q.t()) -
                                       spectral_radius(b_rpcd_closed(q)).rho));
    });
    results.push_back(equality_check("rho-rpcd-vs-eigen", worst, 1e-10, tol));
  }
  {
    double worst = 0.0;
    eigen_grid.for_each([&](const StructuredQuadratic& q) {
      worst = std::max(worst, std::abs(rcd_i2_rate(q.n, q.t()) -
                                       spectral_radius(q_matrix(Problem{q})).rho));
    });
    results.push_back(equality_check("q-norm-vs-eigen", worst, 1e-10, tol));
  }
  {
    double worst = 0.0;
    eigen_grid.for_each([&](const StructuredQuadratic& q) {
      worst = std::max(worst, std::abs(rpcd_i2_rate(q.n, q.t()) -
                                       spectral_radius(s_matrix(q)).rho));
    });
    results.push_back(equality_check("s-norm-vs-eigen", worst, 1e-10, tol));
  }
  {
    double worst = 0.0;
    eigen_grid.for_each([&](const StructuredQuadratic& q) {
      worst = std::max(worst, std::abs(rpcd_i3_rate(q.n, q.t()) -
                                       spectral_radius(g_matrix(q)).rho));
    });
    results.push_back(equality_check("g-norm-vs-eigen", worst, 1e-10, tol));
  }
  {
    double worst = 0.0;
    eigen_grid.for_each([&](const StructuredQuadratic& q) {
      const double eig = spectral_radius(b_rcd(Problem{q})).rho;
      worst = std::max(worst,
                       std::abs(rho_rcd_epoch(q.n, q.t()) - std::pow(eig, q.n)));
    });
    results.push_back(equality_check("rcd-epoch-vs-eigen", worst, 1e-10, tol));
  }
  {
    double worst = 0.0;
    eigen_grid.for_each([&](const StructuredQuadratic& q) {
      const double mu = q.mu();
      double rowsum_rho = 0.0;
      for (int i = 0; i < q.n; ++i) {
        const double r = 1.0 - mu * std::pow(1.0 + q.alpha, i);
        rowsum_rho += r * r;
      }
      rowsum_rho /= q.n;
      worst = std::max(worst, std::abs(rowsum_rho - spectral_radius(s_matrix(q)).rho));
    });
    results.push_back(equality_check("s-rowsum-identity", worst, 1e-12, tol));
  }
  {
    double worst = -1.0;  // -(minimum entry): negative iff all entries positive
    eigen_grid.for_each([&](const StructuredQuadratic& q) {
      const Mat m = b_rpcd_closed(q);
      for (double v : m.data()) worst = std::max(worst, -v);
    });
    results.push_back(ordering_check("brpcd-positivity", worst, tol));
  }
  {
    double worst = -1.0;
    for (int n = 2; n <= 16; ++n) {
      for (int k = 1; k <= 99; ++k) {
        const double t = k / 100.0;
        const StructuredQuadratic q = make_structured(n, t);
        const double ccd = spectral_radius(b_ccd(Problem{q})).rho;
        const double rpcd = rho_rpcd(n, t);
        const double rcd = rho_rcd_epoch(n, t);
        worst = std::max(worst, std::max(ccd - rpcd, rpcd - rcd));
      }
    }
    results.push_back(ordering_check("ordering-measured-ccd-rpcd-rcd", worst, tol));
  }
  {
    double worst = -1.0;
    for (int n = 2; n <= 1000; ++n) {
      for (int k = 1; k <= 99; ++k) {
        const double t = k / 100.0;
        const double bound = reference_bounds(n, t).ccd_upper;
        worst = std::max(worst, std::max(bound - rho_rpcd(n, t),
                                         rho_rpcd(n, t) - rho_rcd_epoch(n, t)));
      }
    }
    results.push_back(ordering_check("ordering-analytic-grid", worst, tol));
  }
  {
    double worst = -1.0;
    for (int n : {2, 4, 8, 16, 32, 64}) {
      for (int k = 1; k <= 99; ++k) {
        const double t = k / 100.0;
        const double r = rho_rpcd(n, t);
        worst = std::max(worst, r * r - rpcd_i2_rate(n, t));
      }
    }
    results.push_back(ordering_check("jensen-rho-squared-vs-i2", worst, tol));
  }
  {
    double worst = -1.0;  // max forward difference; strict decrease keeps it negative
    for (int n : {2, 10, 100, 1000}) {
      double prev = 0.0;
      for (int k = 1; k <= 1000; ++k) {
        const double t = k / 1001.0;
        const double s = speedup_s(n, t);
        if (k > 1) worst = std::max(worst, s - prev + 1e-12);
        prev = s;
      }
    }
    results.push_back(ordering_check("s-strictly-decreasing", worst, tol));
  }
  {
    results.push_back(equality_check("g-limit-exact-n2", std::abs(g_limit(2) - 1.5), 0.0, tol));
  }
  {
    double worst = -1.0;
    double prev = g_limit(2);
    for (int n = 3; n <= 1000; ++n) {
      const double g = g_limit(n);
      worst = std::max(worst, std::max(prev - g, g - kEulerMinusOne));
      prev = g;
    }
    results.push_back(ordering_check("g-increasing-below-e-minus-1", worst, tol));
  }
  {
    double worst = 0.0;
    for (int n : {2, 5, 10, 100})
      worst = std::max(worst, std::abs(speedup_s(n, 1.0 - 1e-8) - g_limit(n)));
    results.push_back(equality_check("s-limit-matches-g", worst, 1e-4, tol));
  }
  {
    results.push_back(equality_check("g-large-n-limit",
                                     std::abs(g_limit(1000000) - kEulerMinusOne), 1e-5, tol));
  }
  return results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

std::string format_report(const std::vector<CheckResult>& results) {
  std::ostringstream out;
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  for (const auto& r : results) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
    for (std::size_t i = r.name.size(); i < width + 2; ++i) out << ' ';
    char buf[96];
    std::snprintf(buf, sizeof buf, "max discrepancy % .3e  (tolerance % .3e)\n",
                  r.discrepancy, r.tolerance);
    out << buf;
  }
  return out.str();
}

}  // namespace cdlab
