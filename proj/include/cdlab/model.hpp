#pragma once

#include <vector>
#include <variant>

#include "cdlab/numeric.hpp"

namespace cdlab {

// Quadratic f(x) = x'Ax/2 with A = (1+alpha)I - alpha*11', unit diagonal.
// Eigenvalues: mu = 1 - alpha(n-1) with multiplicity 1 (eigenvector 1),
// L = 1 + alpha with multiplicity n-1. There is no linear term: the whole
// problem family is minimized at the origin.
struct StructuredQuadratic {
  int n = 0;
  double alpha = 0.0;

  double t() const { return alpha * (n - 1); }  // diagonal dominance measure
  double mu() const { return 1.0 - alpha * (n - 1); }
  double lmax() const { return 1.0 + alpha; }
};

// Builds the structured instance from the dominance measure t = alpha*(n-1).
// Rejects n < 2 and t outside the open interval (0,1).
StructuredQuadratic make_structured(int n, double t);

// Arbitrary SPD Hessian with unit diagonal, stored dense row-major.
// Construction validates symmetry (1e-12 elementwise), the unit diagonal,
// and positive definiteness (smallest eigenvalue estimate > 0).
class DenseQuadratic {
 public:
  DenseQuadratic(int n, std::vector<double> entries);

  static DenseQuadratic identity(int n);

  int n() const { return n_; }
  double at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<double>& data() const { return a_; }

 private:
  int n_;
  std::vector<double> a_;
};

// Iterate plus a cached coordinate sum. The cache makes structured gradient
// queries O(1); callers that mutate x by hand must refresh_sum().
struct Point {
  std::vector<double> x;
  double coord_sum = 0.0;

  static Point of(std::vector<double> values);
  void refresh_sum();
  int n() const { return static_cast<int>(x.size()); }
};

using Problem = std::variant<StructuredQuadratic, DenseQuadratic>;

int dimension(const Problem& q);

// (Ax)_i in O(1) via the cached sum: (1+alpha)x_i - alpha*sigma.
double gradient_coord(const StructuredQuadratic& q, const Point& p, int i);
double gradient_coord(const DenseQuadratic& q, const Point& p, int i);
double gradient_coord(const Problem& q, const Point& p, int i);

std::vector<double> full_gradient(const StructuredQuadratic& q, const Point& p);
std::vector<double> full_gradient(const DenseQuadratic& q, const Point& p);
std::vector<double> full_gradient(const Problem& q, const Point& p);

// f(x) = x'Ax/2 >= 0; the structured path uses ((1+alpha)|x|^2 - alpha*sigma^2)/2.
double objective(const StructuredQuadratic& q, const Point& p);
double objective(const DenseQuadratic& q, const Point& p);
double objective(const Problem& q, const Point& p);

DenseQuadratic densify(const StructuredQuadratic& q);

}  // namespace cdlab
