#include "cdlab/solver.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cdlab {

namespace rng {

std::vector<double> sample_unit_sphere(Stream& g, int n) {
  std::vector<double> x(n);
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      x[i] = next_gaussian(g);
      norm_sq += x[i] * x[i];
    }
  } while (norm_sq == 0.0);
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& v : x) v *= inv;
  return x;
}

std::vector<int> sample_permutation(Stream& g, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(g.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(p[i], p[j]);
  }
  return p;
}

}  // namespace rng

namespace {

void validate_scheme(const OrderingScheme& scheme, int n) {
  if (const auto* fp = std::get_if<FixedPermutation>(&scheme)) {
    if (static_cast<int>(fp->order.size()) != n)
      throw std::invalid_argument("FixedPermutation length does not match problem dimension");
    std::vector<char> seen(n, 0);
    for (int v : fp->order) {
      if (v < 0 || v >= n || seen[v])
        throw std::invalid_argument("FixedPermutation is not a bijection on 0..n-1");
      seen[v] = 1;
    }
  }
}

std::vector<double> initial_point(const Initialization& init, int n) {
  if (std::holds_alternative<AllOnes>(init)) return std::vector<double>(n, 1.0);
  rng::Stream g(std::get<RandomInit>(init).seed);
  return rng::sample_unit_sphere(g, n);
}

// Epoch-boundary state check; divergence is impossible for valid instances,
// so a nonfinite iterate signals an internal error.
void check_finite(const std::vector<double>& x) {
  for (double v : x)
    if (!std::isfinite(v)) throw std::runtime_error("solver: nonfinite iterate encountered");
}

struct StructuredState {
  const StructuredQuadratic q;
  Point p;

  void update(int i) {
    const double g = (1.0 + q.alpha) * p.x[i] - q.alpha * p.coord_sum;
    p.x[i] -= g;
    p.coord_sum -= g;
  }
  // The running sum drifts by O(eps) per update; a per-epoch rebuild keeps
  // the cache invariant while the amortized cost stays O(1).
  void end_epoch() { p.refresh_sum(); }
};

struct DenseState {
  const DenseQuadratic& q;
  Point p;

  void update(int i) {
    double g = 0.0;
    for (int j = 0; j < q.n(); ++j) g += q.at(i, j) * p.x[j];
    p.x[i] -= g;
  }
  void end_epoch() {}
};

template <typename State, typename Observer>
void drive(State& st, const OrderingScheme& scheme, int epochs, Observer&& on_epoch) {
  const int n = st.p.n();
  on_epoch(0, st.p.x);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (const auto* fp = std::get_if<FixedPermutation>(&scheme)) order = fp->order;

  for (int epoch = 0; epoch < epochs; ++epoch) {
    if (const auto* wr = std::get_if<WithReplacement>(&scheme)) {
      rng::Stream g(rng::derive_stream(wr->seed, static_cast<std::uint64_t>(epoch)));
      for (int j = 0; j < n; ++j)
        st.update(static_cast<int>(g.next_below(static_cast<std::uint64_t>(n))));
    } else {
      if (const auto* pe = std::get_if<PerEpochPermutation>(&scheme)) {
        rng::Stream g(rng::derive_stream(pe->seed, static_cast<std::uint64_t>(epoch)));
        order = rng::sample_permutation(g, n);
      }
      for (int j = 0; j < n; ++j) st.update(order[j]);
    }
    st.end_epoch();
    check_finite(st.p.x);
    on_epoch(epoch + 1, st.p.x);
  }
}

template <typename Observer>
void run_impl(const Problem& q, const OrderingScheme& scheme, const RunConfig& cfg,
              Observer&& on_epoch) {
  const int n = dimension(q);
  validate_scheme(scheme, n);
  if (cfg.epochs < 1) throw std::invalid_argument("RunConfig: epochs must be >= 1");
  Point p = Point::of(initial_point(cfg.init, n));
  if (std::holds_alternative<StructuredQuadratic>(q)) {
    StructuredState st{std::get<StructuredQuadratic>(q), std::move(p)};
    drive(st, scheme, cfg.epochs, on_epoch);
  } else {
    DenseState st{std::get<DenseQuadratic>(q), std::move(p)};
    drive(st, scheme, cfg.epochs, on_epoch);
  }
}

}  // namespace

void run_with_observer(const Problem& q, const OrderingScheme& scheme, const RunConfig& cfg,
                       const std::function<void(int, const std::vector<double>&)>& on_epoch) {
  run_impl(q, scheme, cfg, on_epoch);
}

EpochSeries run(const Problem& q, const OrderingScheme& scheme, const RunConfig& cfg) {
  EpochSeries series;
  series.n = dimension(q);
  series.sq_distance.reserve(cfg.epochs + 1);
  series.objective.reserve(cfg.epochs + 1);
  run_impl(q, scheme, cfg, [&](int, const std::vector<double>& x) {
    double sq = 0.0;
    for (double v : x) sq += v * v;
    series.sq_distance.push_back(sq);
    series.objective.push_back(objective(q, Point::of(x)));
    if (cfg.keep_snapshots) series.snapshots.push_back(x);
    series.final_x = x;
  });
  return series;
}

std::vector<double> epoch_operator_apply(const Problem& q, const std::vector<int>& perm,
                                         const std::vector<double>& x) {
  const int n = dimension(q);
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("epoch_operator_apply: dimension mismatch");
  std::vector<double> result;
  validate_scheme(OrderingScheme{FixedPermutation{perm}}, n);
  Point p = Point::of(x);
  if (std::holds_alternative<StructuredQuadratic>(q)) {
    StructuredState st{std::get<StructuredQuadratic>(q), std::move(p)};
    for (int j = 0; j < n; ++j) st.update(perm[j]);
    result = std::move(st.p.x);
  } else {
    DenseState st{std::get<DenseQuadratic>(q), std::move(p)};
    for (int j = 0; j < n; ++j) st.update(perm[j]);
    result = std::move(st.p.x);
  }
  return result;
}

}  // namespace cdlab
