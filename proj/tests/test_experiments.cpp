#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "cdlab/experiments.hpp"
#include "cdlab/matrix_ops.hpp"
#include "cdlab/rates.hpp"

using namespace cdlab;

namespace {

MonteCarloSpec base_spec(int n, double t, int trials, int epochs, std::uint64_t seed = 42) {
  MonteCarloSpec spec;
  spec.n = n;
  spec.t = t;
  spec.trials = trials;
  spec.epochs = epochs;
  spec.master_seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("identity Hessian: every criterion is zero after the first epoch") {
  MonteCarloSpec spec = base_spec(8, 0.5, 16, 3);
  spec.schemes = {Scheme::CCD, Scheme::RPCD};
  const auto result = run_monte_carlo_on(Problem{DenseQuadratic::identity(8)}, spec);
  for (const auto& sr : result) {
    for (const auto& series : sr.criteria) {
      for (int l = 1; l <= series.epochs(); ++l) CHECK(series.value[l] == 0.0);
      CHECK(series.value[0] > 0.0);
    }
  }
}

TEST_CASE("monte carlo results are identical across thread counts and repeats") {
  MonteCarloSpec spec = base_spec(40, 0.7, 70, 12, 99);
  spec.threads = 1;
  const auto a = run_monte_carlo(spec);
  spec.threads = 4;
  const auto b = run_monte_carlo(spec);
  const auto c = run_monte_carlo(spec);
  REQUIRE(a.size() == b.size());
  for (std::size_t s = 0; s < a.size(); ++s) {
    for (std::size_t k = 0; k < a[s].criteria.size(); ++k) {
      for (int l = 0; l <= a[s].criteria[k].epochs(); ++l) {
        CHECK(a[s].criteria[k].value[l] == b[s].criteria[k].value[l]);
        CHECK(b[s].criteria[k].value[l] == c[s].criteria[k].value[l]);
        CHECK(a[s].criteria[k].std_error[l] == b[s].criteria[k].std_error[l]);
      }
    }
  }
}

TEST_CASE("jensen holds along the whole series: I1^2 <= I2 + 3 SE") {
  MonteCarloSpec spec = base_spec(30, 0.8, 400, 25);
  spec.schemes = {Scheme::RCD, Scheme::RPCD};
  const auto result = run_monte_carlo(spec);
  for (const auto& sr : result) {
    const auto* i1 = sr.find(Criterion::I1);
    const auto* i2 = sr.find(Criterion::I2);
    REQUIRE(i1 != nullptr);
    REQUIRE(i2 != nullptr);
    for (int l = 0; l <= i1->epochs(); ++l)
      CHECK(i1->value[l] * i1->value[l] <= i2->value[l] + 3.0 * i2->std_error[l] + 1e-12);
  }
}

TEST_CASE("per-epoch contraction respects the closed-form bounds (small run)") {
  const int n = 30;
  const double t = 0.5;
  MonteCarloSpec spec = base_spec(n, t, 500, 40);
  spec.schemes = {Scheme::RCD, Scheme::RPCD};
  const auto result = run_monte_carlo(spec);
  const double bounds[2][2] = {
      {std::pow(rcd_i2_rate(n, t), n), std::pow(rcd_i3_rate(n, t), n)},
      {rpcd_i2_rate(n, t), rpcd_i3_rate(n, t)},
  };
  for (int s = 0; s < 2; ++s) {
    const Criterion crits[2] = {Criterion::I2, Criterion::I3};
    for (int c = 0; c < 2; ++c) {
      const auto* series = result[s].find(crits[c]);
      REQUIRE(series != nullptr);
      const RatioSeries ratios = per_epoch_ratios(*series);
      int violations = 0, usable = 0;
      for (std::size_t l = 0; l < ratios.ratio.size(); ++l) {
        if (!std::isfinite(ratios.ratio[l])) continue;
        ++usable;
        if (ratios.ratio[l] > bounds[s][c] + 3.0 * ratios.std_error[l]) ++violations;
      }
      CHECK(usable > 30);
      CHECK(violations <= std::max(1, usable / 100));
    }
  }
}

TEST_CASE("estimate_empirical_rate on synthetic data") {
  CriterionSeries geo;
  geo.criterion = Criterion::I3;
  for (int l = 0; l <= 40; ++l) geo.value.push_back(std::pow(0.9, l));
  geo.std_error.assign(41, 0.0);
  geo.clamped.assign(41, 0);
  geo.trials = 1;
  const auto rate = estimate_empirical_rate(geo, 0, 40);
  REQUIRE(rate.has_value());
  CHECK(*rate == doctest::Approx(0.9).epsilon(1e-12));

  // default window: last half
  const auto tail = estimate_empirical_rate(geo);
  REQUIRE(tail.has_value());
  CHECK(*tail == doctest::Approx(0.9).epsilon(1e-12));

  CriterionSeries dead = geo;
  for (auto& v : dead.value) v = 0.0;
  CHECK(!estimate_empirical_rate(dead, 0, 40).has_value());

  CriterionSeries mixed = geo;
  for (int l = 20; l <= 40; ++l) mixed.value[l] = 0.0;  // floor reached mid-window
  const auto partial = estimate_empirical_rate(mixed, 10, 40);
  REQUIRE(partial.has_value());
  CHECK(*partial == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("epochs_to_threshold finds the first crossing") {
  CriterionSeries geo;
  for (int l = 0; l <= 30; ++l) geo.value.push_back(100.0 * std::pow(0.5, l));
  geo.std_error.assign(31, 0.0);
  geo.clamped.assign(31, 0);
  const auto hit = epochs_to_threshold(geo, 1e-3);
  REQUIRE(hit.has_value());
  CHECK(*hit == 10);  // 0.5^10 < 1e-3
  CHECK(!epochs_to_threshold(geo, 1e-12).has_value());
}

TEST_CASE("ccd empirical objective rate matches the measured cyclic radius squared") {
  const int n = 50;
  const double t = 0.9;
  MonteCarloSpec spec = base_spec(n, t, 1, 60);
  spec.schemes = {Scheme::CCD};
  const auto result = run_monte_carlo(spec);
  const auto* i3 = result.front().find(Criterion::I3);
  const auto rate = estimate_empirical_rate(*i3);
  REQUIRE(rate.has_value());
  const double rho_ccd = spectral_radius(b_ccd(Problem{make_structured(n, t)})).rho;
  CHECK(*rate == doctest::Approx(rho_ccd * rho_ccd).epsilon(0.05));
  const double rho_p = rho_rpcd(n, t);
  CHECK(*rate <= rho_p * rho_p + 0.01);
}

TEST_CASE("rpcd empirical I1 rate approaches the closed-form radius") {
  const int n = 20;
  const double t = 0.5;
  MonteCarloSpec spec = base_spec(n, t, 2000, 14, 7);
  spec.schemes = {Scheme::RPCD};
  const auto result = run_monte_carlo(spec);
  const auto* i1 = result.front().find(Criterion::I1);
  const auto rate = estimate_empirical_rate(*i1, 2, 14);
  REQUIRE(rate.has_value());
  CHECK(*rate == doctest::Approx(rho_rpcd(n, t)).epsilon(0.05));
}

TEST_CASE("random and worst-case initializations share asymptotic rates") {
  const int n = 100;
  const double t = 0.9;
  MonteCarloSpec spec = base_spec(n, t, 300, 60, 11);
  spec.schemes = {Scheme::RPCD};
  const auto worst = run_monte_carlo(spec);
  spec.init = RandomInit{5};
  const auto random = run_monte_carlo(spec);
  const auto rw = estimate_empirical_rate(*worst.front().find(Criterion::I3), 30, 60);
  const auto rr = estimate_empirical_rate(*random.front().find(Criterion::I3), 30, 60);
  REQUIRE(rw.has_value());
  REQUIRE(rr.has_value());
  CHECK(*rr == doctest::Approx(*rw).epsilon(0.05));
}

TEST_CASE("speedup-panels dataset shape and monotonicity") {
  FigureOverrides ov;
  ov.n_list = std::vector<int>{2, 10};
  const FigureDataset fig = reproduce_figure("speedup-panels", ov);
  CHECK(fig.columns == std::vector<std::string>{"n", "t", "s", "s_tilde"});
  CHECK(fig.rows.size() == 2 * 999);
  // the n=2 block ends near t=1 where s approaches 3/2
  CHECK(csv::parse_double(fig.rows[998][2]) == doctest::Approx(1.5).epsilon(1e-2));
  // s column decreases within each n block
  double prev = std::numeric_limits<double>::infinity();
  std::string prev_n = fig.rows.front()[0];
  for (const auto& row : fig.rows) {
    const double s = csv::parse_double(row[2]);
    if (row[0] == prev_n) CHECK(s < prev);
    prev = s;
    prev_n = row[0];
    CHECK(csv::parse_double(row[3]) > 1.0);
  }
}

TEST_CASE("tightness dataset keeps the empirical curve under its bound") {
  FigureOverrides ov;
  ov.n_list = std::vector<int>{60};
  ov.t_list = std::vector<double>{0.5};
  ov.trials = 400;
  ov.seed = 3;
  for (const std::string id : {"rcd-tightness", "rpcd-tightness"}) {
    const FigureDataset fig = reproduce_figure(id, ov);
    REQUIRE(fig.columns.size() == 7);
    int head_rows = 0;
    for (const auto& row : fig.rows) {
      if (++head_rows > 25) break;  // early epochs, before the MC floor
      const double i2 = csv::parse_double(row[1]);
      const double i2_se = csv::parse_double(row[2]);
      const double i2_bound = csv::parse_double(row[3]);
      const double i3 = csv::parse_double(row[4]);
      const double i3_se = csv::parse_double(row[5]);
      const double i3_bound = csv::parse_double(row[6]);
      CHECK(i2 <= i2_bound + 3.0 * i2_se + 1e-12);
      CHECK(i3 <= i3_bound + 3.0 * i3_se + 1e-12);
    }
  }
}

TEST_CASE("init-grid dataset orders the schemes at high t") {
  FigureOverrides ov;
  ov.n_list = std::vector<int>{120};
  ov.t_list = std::vector<double>{0.9};
  ov.trials = 200;
  ov.epoch_cap = 80;
  const FigureDataset fig = reproduce_figure("worst-init-grid", ov);
  // reconstruct the three series and compare empirical rates
  std::map<std::string, CriterionSeries> by_scheme;
  for (const auto& row : fig.rows) {
    auto& s = by_scheme[row[0]];
    s.criterion = Criterion::I3;
    s.value.push_back(csv::parse_double(row[4]));
    s.std_error.push_back(csv::parse_double(row[5]));
    s.clamped.push_back(0);
  }
  REQUIRE(by_scheme.size() == 3);
  std::map<std::string, double> rate;
  for (auto& [name, series] : by_scheme) {
    const auto r = estimate_empirical_rate(series);
    REQUIRE(r.has_value());
    rate[name] = *r;
  }
  CHECK(rate["ccd"] < rate["rpcd"]);
  CHECK(rate["rpcd"] < rate["rcd"]);
}

TEST_CASE("figure guards: unknown id and budget") {
  FigureOverrides ov;
  CHECK_THROWS_AS(reproduce_figure("no-such-figure", ov), std::invalid_argument);
  ov.budget = 10.0;
  CHECK_THROWS_AS(reproduce_figure("rcd-tightness", ov), std::invalid_argument);
}

TEST_CASE("csv round trip is lossless and stable") {
  MonteCarloSpec spec = base_spec(12, 0.4, 40, 6, 21);
  spec.schemes = {Scheme::RPCD};
  const auto result = run_monte_carlo(spec);
  const csv::Table table = monte_carlo_table(spec, result);

  std::ostringstream first;
  csv::write(first, table);
  std::istringstream back(first.str());
  const csv::Table reread = csv::read(back);
  std::ostringstream second;
  csv::write(second, reread);
  CHECK(first.str() == second.str());
  CHECK(reread.columns == table.columns);
  REQUIRE(reread.rows.size() == table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i)
    CHECK(csv::parse_double(reread.rows[i][3]) == csv::parse_double(table.rows[i][3]));
}

TEST_CASE("values past the floor are clamped to zero, flagged, and skipped") {
  MonteCarloSpec spec = base_spec(10, 0.1, 4, 220, 13);
  spec.schemes = {Scheme::RPCD};
  const auto result = run_monte_carlo(spec);
  const auto* i3 = result.front().find(Criterion::I3);
  bool saw_clamp = false;
  for (int l = 0; l <= i3->epochs(); ++l) {
    if (i3->clamped[l]) {
      saw_clamp = true;
      CHECK(i3->value[l] == 0.0);
    }
  }
  CHECK(saw_clamp);
  // the rate window that includes the clamped tail still fits the live head
  const auto rate = estimate_empirical_rate(*i3, 10, 220);
  REQUIRE(rate.has_value());
  CHECK(*rate < 1.0);
}

TEST_CASE("monte carlo spec validation") {
  MonteCarloSpec spec = base_spec(10, 0.5, 0, 5);
  CHECK_THROWS_AS(run_monte_carlo(spec), std::invalid_argument);
  spec.trials = 5;
  spec.epochs = 0;
  CHECK_THROWS_AS(run_monte_carlo(spec), std::invalid_argument);
  spec.epochs = 5;
  spec.schemes.clear();
  CHECK_THROWS_AS(run_monte_carlo(spec), std::invalid_argument);
  spec.schemes = {Scheme::RCD};
  spec.record = 0;
  CHECK_THROWS_AS(run_monte_carlo(spec), std::invalid_argument);
}

TEST_CASE("ccd runs exactly one trial") {
  MonteCarloSpec spec = base_spec(10, 0.5, 500, 5);
  spec.schemes = {Scheme::CCD};
  const auto result = run_monte_carlo(spec);
  CHECK(result.front().criteria.front().trials == 1);
  for (const auto& series : result.front().criteria)
    for (double se : series.std_error) CHECK(se == 0.0);
}
