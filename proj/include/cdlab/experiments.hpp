#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdlab/csv.hpp"
#include "cdlab/solver.hpp"

namespace cdlab {

enum class Scheme { CCD, RCD, RPCD };
enum class Criterion { I1, I2, I3 };

const char* scheme_name(Scheme s);
const char* criterion_name(Criterion c);
std::optional<Scheme> parse_scheme(const std::string& name);

struct MonteCarloSpec {
  int n = 100;
  double t = 0.5;
  std::vector<Scheme> schemes{Scheme::CCD, Scheme::RCD, Scheme::RPCD};
  int trials = 1000;
  int epochs = 100;
  std::uint64_t master_seed = 42;
  Initialization init = AllOnes{};
  unsigned record = kRecordAll;
  int threads = 0;  // 0 -> hardware concurrency; never affects results
};

// One improvement sequence over epochs 0..E. Values below 1e-300 are clamped
// to zero and flagged; rate estimation skips clamped epochs.
struct CriterionSeries {
  Criterion criterion = Criterion::I2;
  std::vector<double> value;
  std::vector<double> std_error;
  std::vector<std::uint8_t> clamped;
  int trials = 0;
  int epochs() const { return static_cast<int>(value.size()) - 1; }
};

struct SchemeResult {
  Scheme scheme = Scheme::CCD;
  std::vector<CriterionSeries> criteria;  // in I1, I2, I3 order, recorded ones only
  const CriterionSeries* find(Criterion c) const;
};

using MonteCarloResult = std::vector<SchemeResult>;

// Seeded Monte Carlo over trials: I1 = |mean_r x_r|, I2 = mean_r |x_r|^2,
// I3 = mean_r f(x_r) at every epoch boundary. Trial r draws its streams from
// derive(master_seed, r); trials run in fixed-size blocks folded in block
// order with compensated summation, so the result is bit-identical at every
// thread count. CCD runs a single trial.
MonteCarloResult run_monte_carlo(const MonteCarloSpec& spec);

// Same harness on an explicit problem instance (the spec's (n, t) fields are
// ignored in favor of the instance).
MonteCarloResult run_monte_carlo_on(const Problem& q, const MonteCarloSpec& spec);

// Least-squares slope of log(value) versus epoch over [first, last],
// exponentiated. Nonpositive/clamped epochs are excluded; if fewer than two
// usable points remain the series has hit the floor and nullopt ("converged")
// is returned.
std::optional<double> estimate_empirical_rate(const CriterionSeries& series, int first, int last);
std::optional<double> estimate_empirical_rate(const CriterionSeries& series);  // last half

// First epoch l with value[l] <= rel_threshold * value[0].
std::optional<int> epochs_to_threshold(const CriterionSeries& series, double rel_threshold);

// Successive-epoch ratios value[l]/value[l-1] with delta-method standard
// errors (covariance between epochs ignored, which overstates the error).
struct RatioSeries {
  std::vector<double> ratio;
  std::vector<double> std_error;
};
RatioSeries per_epoch_ratios(const CriterionSeries& series);

struct FigureOverrides {
  std::optional<std::vector<int>> n_list;
  std::optional<std::vector<double>> t_list;
  std::optional<int> trials;
  std::optional<int> epoch_cap;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  double budget = 1e10;  // max n*epochs*trials per run
};

struct FigureDataset {
  std::string id;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// Known ids: speedup-panels, rcd-tightness, rpcd-tightness, worst-init-grid,
// random-init-grid.
FigureDataset reproduce_figure(const std::string& id, const FigureOverrides& overrides);
const std::vector<std::string>& figure_ids();

int default_trials(int n);

csv::Table monte_carlo_table(const MonteCarloSpec& spec, const MonteCarloResult& result);
csv::Table figure_table(const FigureDataset& dataset);

// Plain-text gnuplot script plotting the given CSV (referenced by relative
// path) on a log-scale value axis.
std::string plot_script_for(const csv::Table& table, const std::string& csv_relative_path);

}  // namespace cdlab
