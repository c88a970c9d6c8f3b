#include "cdlab/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cdlab/matrix_ops.hpp"

namespace cdlab {

StructuredQuadratic make_structured(int n, double t) {
  if (n < 2) {
    std::ostringstream msg;
    msg << "make_structured: n must be >= 2, got " << n;
    throw std::invalid_argument(msg.str());
  }
  if (!(t > 0.0) || !(t < 1.0)) {
    std::ostringstream msg;
    msg << "make_structured: t must lie in the open interval (0, 1), got " << t;
    throw std::invalid_argument(msg.str());
  }
  return StructuredQuadratic{n, t / (n - 1)};
}

DenseQuadratic::DenseQuadratic(int n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
  if (n < 1) throw std::invalid_argument("DenseQuadratic: n must be >= 1");
  if (a_.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("DenseQuadratic: entry count does not match n*n");
  for (int i = 0; i < n_; ++i) {
    if (std::abs(at(i, i) - 1.0) > kSymmetryTol)
      throw std::invalid_argument("DenseQuadratic: diagonal must be identically 1");
    for (int j = i + 1; j < n_; ++j) {
      if (std::abs(at(i, j) - at(j, i)) > kSymmetryTol)
        throw std::invalid_argument("DenseQuadratic: matrix is not symmetric within 1e-12");
    }
  }
  Mat m(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = at(i, j);
  const auto [lo, hi] = extreme_eigenvalues_symmetric(m);
  (void)hi;
  if (!(lo > 0.0))
    throw std::invalid_argument("DenseQuadratic: matrix is not positive definite");
}

DenseQuadratic DenseQuadratic::identity(int n) {
  std::vector<double> e(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = 1.0;
  return DenseQuadratic(n, std::move(e));
}

Point Point::of(std::vector<double> values) {
  Point p;
  p.x = std::move(values);
  p.refresh_sum();
  return p;
}

void Point::refresh_sum() {
  double s = 0.0;
  for (double v : x) s += v;
  coord_sum = s;
}

int dimension(const Problem& q) {
  return std::visit([](const auto& inst) {
    if constexpr (std::is_same_v<std::decay_t<decltype(inst)>, StructuredQuadratic>)
      return inst.n;
    else
      return inst.n();
  }, q);
}

namespace {
void check_index(int i, int n) {
  if (i < 0 || i >= n) throw std::out_of_range("coordinate index out of range");
}
void check_dim(int have, int want) {
  if (have != want) throw std::invalid_argument("dimension mismatch between problem and point");
}
}  // namespace

double gradient_coord(const StructuredQuadratic& q, const Point& p, int i) {
  check_dim(p.n(), q.n);
  check_index(i, q.n);
  return (1.0 + q.alpha) * p.x[i] - q.alpha * p.coord_sum;
}

double gradient_coord(const DenseQuadratic& q, const Point& p, int i) {
  check_dim(p.n(), q.n());
  check_index(i, q.n());
  double g = 0.0;
  for (int j = 0; j < q.n(); ++j) g += q.at(i, j) * p.x[j];
  return g;
}

double gradient_coord(const Problem& q, const Point& p, int i) {
  return std::visit([&](const auto& inst) { return gradient_coord(inst, p, i); }, q);
}

std::vector<double> full_gradient(const StructuredQuadratic& q, const Point& p) {
  check_dim(p.n(), q.n);
  std::vector<double> g(q.n);
  const double shift = q.alpha * p.coord_sum;
  for (int i = 0; i < q.n; ++i) g[i] = (1.0 + q.alpha) * p.x[i] - shift;
  return g;
}

std::vector<double> full_gradient(const DenseQuadratic& q, const Point& p) {
  check_dim(p.n(), q.n());
  std::vector<double> g(q.n());
  for (int i = 0; i < q.n(); ++i) {
    double s = 0.0;
    for (int j = 0; j < q.n(); ++j) s += q.at(i, j) * p.x[j];
    g[i] = s;
  }
  return g;
}

std::vector<double> full_gradient(const Problem& q, const Point& p) {
  return std::visit([&](const auto& inst) { return full_gradient(inst, p); }, q);
}

double objective(const StructuredQuadratic& q, const Point& p) {
  check_dim(p.n(), q.n);
  double sq = 0.0;
  for (double v : p.x) sq += v * v;
  return 0.5 * ((1.0 + q.alpha) * sq - q.alpha * p.coord_sum * p.coord_sum);
}

double objective(const DenseQuadratic& q, const Point& p) {
  check_dim(p.n(), q.n());
  double f = 0.0;
  for (int i = 0; i < q.n(); ++i) {
    double row = 0.0;
    for (int j = 0; j < q.n(); ++j) row += q.at(i, j) * p.x[j];
    f += p.x[i] * row;
  }
  return 0.5 * f;
}

double objective(const Problem& q, const Point& p) {
  return std::visit([&](const auto& inst) { return objective(inst, p); }, q);
}

DenseQuadratic densify(const StructuredQuadratic& q) {
  std::vector<double> e(static_cast<std::size_t>(q.n) * q.n, -q.alpha);
  for (int i = 0; i < q.n; ++i) e[static_cast<std::size_t>(i) * q.n + i] = 1.0;
  return DenseQuadratic(q.n, std::move(e));
}

}  // namespace cdlab
