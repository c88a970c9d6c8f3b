#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cdlab/matrix_ops.hpp"
#include "cdlab/rng.hpp"

using namespace cdlab;

namespace {

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

}  // namespace

TEST_CASE("b_ccd on the identity Hessian is the zero matrix") {
  const Problem q{DenseQuadratic::identity(5)};
  const Mat b = b_ccd(q, identity_perm(5));
  for (double v : b.data()) CHECK(v == 0.0);
}

TEST_CASE("b_ccd explicit 2x2 and zero first column") {
  const Problem q{make_structured(2, 0.5)};
  const Mat b = b_ccd(q);
  CHECK(b(0, 0) == 0.0);
  CHECK(b(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(b(1, 0) == 0.0);
  CHECK(b(1, 1) == doctest::Approx(0.25).epsilon(1e-15));

  rng::Stream g(1);
  for (int n : {3, 6}) {
    const Problem qs{make_structured(n, 0.8)};
    const auto perm = rng::sample_permutation(g, n);
    const Mat bp = b_ccd(qs, perm);
    for (int i = 0; i < n; ++i) CHECK(bp(i, 0) == 0.0);
  }
}

TEST_CASE("b_ccd matches the closed-form entries for the structured class") {
  for (int n = 2; n <= 8; ++n) {
    for (double frac : {0.1, 0.5, 0.9}) {
      const auto q = make_structured(n, frac);
      const double a = q.alpha;
      const Mat b = b_ccd(Problem{q});
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double expected = (i >= j)
                                      ? a * (std::pow(1 + a, i) - std::pow(1 + a, i - j))
                                      : a * std::pow(1 + a, i);
          CHECK(std::abs(b(i, j) - expected) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("gamma_inverse examples and inverse identity") {
  const Mat g2 = gamma_inverse(make_structured(2, 0.5));
  CHECK(g2(0, 0) == 1.0);
  CHECK(g2(0, 1) == 0.0);
  CHECK(g2(1, 0) == 0.5);
  CHECK(g2(1, 1) == 1.0);

  const auto q4 = StructuredQuadratic{4, 0.2};
  const Mat g4 = gamma_inverse(q4);
  CHECK(g4(0, 0) == doctest::Approx(1.0));
  CHECK(g4(1, 0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(g4(2, 0) == doctest::Approx(0.24).epsilon(1e-14));
  CHECK(g4(3, 0) == doctest::Approx(0.288).epsilon(1e-14));

  for (int n : {2, 5, 17, 64}) {
    const auto q = make_structured(n, 0.7);
    Mat gamma(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gamma(i, j) = (i == j) ? 1.0 : (i > j ? -q.alpha : 0.0);
    CHECK(max_abs_diff(gamma * gamma_inverse(q), Mat::identity(n)) < 1e-10);
  }
}

TEST_CASE("expected_conjugation fixed points and enumeration oracle") {
  const auto ci = expected_conjugation(Mat::identity(4));
  CHECK(ci.tau1 == doctest::Approx(1.0));
  CHECK(ci.tau2 == doctest::Approx(0.0));
  CHECK(max_abs_diff(ci.expected, Mat::identity(4)) == 0.0);

  const auto co = expected_conjugation(Mat::ones(4));
  CHECK(co.tau1 == doctest::Approx(0.0));
  CHECK(co.tau2 == doctest::Approx(1.0));
  CHECK(max_abs_diff(co.expected, Mat::ones(4)) < 1e-15);

  rng::Stream g(9);
  Mat random(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) random(i, j) = 2.0 * g.next_unit() - 1.0;
  CHECK(max_abs_diff(expected_conjugation(random).expected, permutation_average(random)) < 1e-12);

  Mat one(1);
  one(0, 0) = 3.5;
  const auto c1 = expected_conjugation(one);
  CHECK(c1.tau1 == 3.5);
  CHECK(c1.tau2 == 0.0);
}

TEST_CASE("b_rpcd_closed matches the two-permutation average at n=2") {
  const Mat m = b_rpcd_closed(make_structured(2, 0.5));
  CHECK(m(0, 0) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(m(0, 1) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(m(1, 0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(m(1, 1) == doctest::Approx(0.125).epsilon(1e-14));
  // gamma coefficient at n=2, alpha=0.5
  CHECK(gamma_coefficient(make_structured(2, 0.5)) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("b_rpcd_closed is exactly symmetric and strictly positive") {
  for (int n = 2; n <= 6; ++n) {
    for (double frac : {0.1, 0.5, 0.9}) {
      const auto q = make_structured(n, frac);
      const Mat m = b_rpcd_closed(q);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          CHECK(m(i, j) == m(j, i));
          CHECK(m(i, j) > 0.0);
        }
      CHECK(max_abs_diff(m, b_rpcd_enumerated(Problem{q})) < 1e-11);
    }
  }
}

TEST_CASE("b_rcd forms") {
  const Mat mi = b_rcd(Problem{DenseQuadratic::identity(3)});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(mi(i, j) == doctest::Approx(i == j ? 2.0 / 3.0 : 0.0).epsilon(1e-15));

  const Mat ms = b_rcd(Problem{make_structured(2, 0.5)});
  CHECK(ms(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(ms(0, 1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(ms(1, 0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(ms(1, 1) == doctest::Approx(0.5).epsilon(1e-15));

  // average of the single-coordinate operators I - e_i e_i' A
  const auto q = make_structured(5, 0.6);
  const Mat a = densify_mat(Problem{q});
  Mat avg(5);
  for (int i = 0; i < 5; ++i) {
    Mat op = Mat::identity(5);
    for (int j = 0; j < 5; ++j) op(i, j) -= a(i, j);
    avg = avg + op;
  }
  avg = scale(avg, 0.2);
  CHECK(max_abs_diff(avg, b_rcd(Problem{q})) < 1e-14);
}

TEST_CASE("q_matrix forms and coordinate enumeration") {
  const Problem qi{DenseQuadratic::identity(4)};
  const Mat mq = q_matrix(qi);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(mq(i, j) == doctest::Approx(i == j ? 0.75 : 0.0).epsilon(1e-15));

  const auto q = make_structured(6, 0.75);
  const Mat a = densify_mat(Problem{q});
  Mat avg(6);
  for (int i = 0; i < 6; ++i) {
    Mat left = Mat::identity(6);   // I - A e_i e_i'
    Mat right = Mat::identity(6);  // I - e_i e_i' A
    for (int r = 0; r < 6; ++r) left(r, i) -= a(r, i);
    for (int c = 0; c < 6; ++c) right(i, c) -= a(i, c);
    avg = avg + left * right;
  }
  avg = scale(avg, 1.0 / 6.0);
  CHECK(max_abs_diff(avg, q_matrix(Problem{q})) < 1e-12);
  CHECK(is_symmetric(q_matrix(Problem{q})));
}

TEST_CASE("s_matrix 2x2 value, enumeration, and vanishing limit") {
  const Mat s = s_matrix(make_structured(2, 0.5));
  CHECK(s(0, 0) == doctest::Approx(0.15625).epsilon(1e-14));
  CHECK(s(0, 1) == doctest::Approx(0.0).scale(1).epsilon(1e-14));
  CHECK(s(1, 0) == doctest::Approx(0.0).scale(1).epsilon(1e-14));
  CHECK(s(1, 1) == doctest::Approx(0.15625).epsilon(1e-14));
  CHECK(spectral_radius(s).rho == doctest::Approx(0.15625).epsilon(1e-12));

  for (int n = 2; n <= 6; ++n)
    for (double frac : {0.1, 0.5, 0.9}) {
      const auto q = make_structured(n, frac);
      CHECK(max_abs_diff(s_matrix(q), s_matrix_enumerated(Problem{q})) < 1e-11);
    }

  const Mat tiny = s_matrix(StructuredQuadratic{4, 1e-9});
  for (double v : tiny.data()) CHECK(std::abs(v) < 1e-15);
}

TEST_CASE("g_matrix value, square root consistency, vanishing limit") {
  const auto q = make_structured(2, 0.5);
  CHECK(spectral_radius(g_matrix(q)).rho == doctest::Approx(0.1875).epsilon(1e-12));

  for (int n : {2, 5, 12}) {
    for (double frac : {0.1, 0.5, 0.9}) {
      const auto qq = make_structured(n, frac);
      const Mat half = sqrt_structured(qq);
      CHECK(max_abs_diff(half * half, densify_mat(Problem{qq})) < 1e-10);
      CHECK(max_abs_diff(sqrt_structured(qq) * inv_sqrt_structured(qq), Mat::identity(n)) < 1e-10);
      if (n <= 8) CHECK(max_abs_diff(g_matrix(qq), g_matrix_enumerated(qq)) < 1e-11);
    }
  }

  const Mat tiny = g_matrix(StructuredQuadratic{4, 1e-9});
  for (double v : tiny.data()) CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("spectral_radius method selection and values") {
  Mat diag(2);
  diag(0, 0) = 3.0;
  diag(1, 1) = -5.0;
  const auto sd = spectral_radius(diag);
  CHECK(sd.rho == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(sd.method == RadiusMethod::PowerIteration);
  CHECK(sd.converged);

  const auto sr = spectral_radius(b_rpcd_closed(make_structured(2, 0.5)));
  CHECK(sr.rho == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(sr.method == RadiusMethod::PowerIteration);

  const auto sc = spectral_radius(b_ccd(Problem{make_structured(2, 0.5)}));
  CHECK(sc.rho == doctest::Approx(0.25).epsilon(1e-7));
  CHECK(sc.method == RadiusMethod::GelfandSquaring);

  // asymmetric, nonnegative, equal row sums -> exact Perron path
  Mat stochastic(2);
  stochastic(0, 0) = 0.2;
  stochastic(0, 1) = 0.8;
  stochastic(1, 0) = 0.6;
  stochastic(1, 1) = 0.4;
  const auto sp = spectral_radius(stochastic);
  CHECK(sp.method == RadiusMethod::PerronRowSum);
  CHECK(sp.rho == doctest::Approx(1.0).epsilon(1e-15));

  Mat bad(2);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS(spectral_radius(bad), std::invalid_argument);
}

TEST_CASE("gelfand handles nilpotent matrices") {
  Mat nil(3);
  nil(0, 1) = 2.0;
  nil(1, 2) = -3.0;  // negative entry forces the Gelfand path
  const auto s = spectral_radius(nil);
  CHECK(s.method == RadiusMethod::GelfandSquaring);
  CHECK(s.rho == 0.0);
  CHECK(s.converged);
}

TEST_CASE("permutation enumeration is capped at n = 8") {
  const Problem q{make_structured(9, 0.5)};
  CHECK_THROWS_AS(b_rpcd_enumerated(q), std::invalid_argument);
  CHECK_THROWS_AS(permutation_average(Mat::identity(9)), std::invalid_argument);
}

TEST_CASE("conjugation and permutation vector helpers are consistent") {
  rng::Stream g(44);
  const auto perm = rng::sample_permutation(g, 5);
  std::vector<double> x(5);
  for (double& v : x) v = g.next_unit();
  const auto px = apply_perm(perm, x);
  CHECK(apply_perm_transpose(perm, px) == x);

  Mat m(5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) m(i, j) = g.next_unit();
  // (P M P') (P x) == P (M x)
  const auto lhs = matvec(conjugate_by_perm(perm, m), px);
  const auto rhs = apply_perm(perm, matvec(m, x));
  for (int i = 0; i < 5; ++i) CHECK(lhs[i] == doctest::Approx(rhs[i]).epsilon(1e-14));
}
