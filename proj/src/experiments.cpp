#include "cdlab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "cdlab/rates.hpp"

namespace cdlab {

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::CCD: return "ccd";
    case Scheme::RCD: return "rcd";
    case Scheme::RPCD: return "rpcd";
  }
  return "unknown";
}

const char* criterion_name(Criterion c) {
  switch (c) {
    case Criterion::I1: return "I1";
    case Criterion::I2: return "I2";
    case Criterion::I3: return "I3";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(const std::string& name) {
  if (name == "ccd") return Scheme::CCD;
  if (name == "rcd") return Scheme::RCD;
  if (name == "rpcd") return Scheme::RPCD;
  return std::nullopt;
}

const CriterionSeries* SchemeResult::find(Criterion c) const {
  for (const auto& s : criteria)
    if (s.criterion == c) return &s;
  return nullptr;
}

namespace {

constexpr int kTrialBlock = 32;
constexpr std::uint64_t kSchemeTag = 1;
constexpr std::uint64_t kInitTag = 2;

OrderingScheme scheme_for(Scheme s, std::uint64_t trial_seed) {
  switch (s) {
    case Scheme::CCD: return Cyclic{};
    case Scheme::RCD: return WithReplacement{rng::derive_stream(trial_seed, kSchemeTag)};
    case Scheme::RPCD: return PerEpochPermutation{rng::derive_stream(trial_seed, kSchemeTag)};
  }
  return Cyclic{};
}

Initialization init_for(const Initialization& base, std::uint64_t trial_seed) {
  if (std::holds_alternative<AllOnes>(base)) return AllOnes{};
  return RandomInit{rng::derive_stream(trial_seed, kInitTag)};
}

// Per-block running sums over trials.
struct Accum {
  std::vector<double> sum_sq, sum_sq2, sum_f, sum_f2;
  std::vector<double> sum_x;  // flattened (epochs+1) x n, only when I1 is on

  void init(int epochs1, int n, bool want_i1) {
    sum_sq.assign(epochs1, 0.0);
    sum_sq2.assign(epochs1, 0.0);
    sum_f.assign(epochs1, 0.0);
    sum_f2.assign(epochs1, 0.0);
    if (want_i1) sum_x.assign(static_cast<std::size_t>(epochs1) * n, 0.0);
  }
};

// Compensated elementwise accumulation; folds happen in fixed block order so
// the result is independent of how blocks were scheduled onto threads.
struct KahanArray {
  std::vector<double> sum, comp;

  void init(std::size_t size) {
    sum.assign(size, 0.0);
    comp.assign(size, 0.0);
  }
  void add(const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double y = v[i] - comp[i];
      const double t = sum[i] + y;
      comp[i] = (t - sum[i]) - y;
      sum[i] = t;
    }
  }
};

class OrderedFolder {
 public:
  template <typename F>
  void submit(std::size_t index, F&& fold) {
    std::unique_lock<std::mutex> lock(m_);
    cv_.wait(lock, [&] { return next_ == index; });
    fold();
    ++next_;
    cv_.notify_all();
  }

 private:
  std::mutex m_;
  std::condition_variable cv_;
  std::size_t next_ = 0;
};

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

double clamp_small(double v, std::uint8_t* flag) {
  if (v != 0.0 && std::abs(v) < kClampFloor) {
    *flag = 1;
    return 0.0;
  }
  return v;
}

CriterionSeries make_series(Criterion c, int epochs1, int trials) {
  CriterionSeries s;
  s.criterion = c;
  s.value.assign(epochs1, 0.0);
  s.std_error.assign(epochs1, 0.0);
  s.clamped.assign(epochs1, 0);
  s.trials = trials;
  return s;
}

SchemeResult run_scheme(const Problem& q, Scheme scheme, const MonteCarloSpec& spec) {
  const int n = dimension(q);
  const int trials = scheme == Scheme::CCD ? 1 : spec.trials;
  const int epochs1 = spec.epochs + 1;
  const bool want_i1 = (spec.record & kRecordI1) != 0;
  const std::size_t blocks =
      static_cast<std::size_t>((trials + kTrialBlock - 1) / kTrialBlock);

  const bool structured = std::holds_alternative<StructuredQuadratic>(q);
  const double alpha = structured ? std::get<StructuredQuadratic>(q).alpha : 0.0;

  KahanArray g_sq, g_sq2, g_f, g_f2, g_x;
  g_sq.init(epochs1);
  g_sq2.init(epochs1);
  g_f.init(epochs1);
  g_f2.init(epochs1);
  if (want_i1) g_x.init(static_cast<std::size_t>(epochs1) * n);

  std::atomic<std::size_t> next_block{0};
  std::atomic<bool> abort{false};
  OrderedFolder folder;
  std::mutex error_mutex;
  std::exception_ptr error;

  auto compute_block = [&](std::size_t b, Accum& acc) {
    acc.init(epochs1, n, want_i1);
    const int r0 = static_cast<int>(b) * kTrialBlock;
    const int r1 = std::min(trials, r0 + kTrialBlock);
    RunConfig cfg;
    cfg.epochs = spec.epochs;
    Point scratch;  // reused for dense objective evaluation
    for (int r = r0; r < r1; ++r) {
      const std::uint64_t trial_seed = rng::derive_stream(spec.master_seed, r);
      cfg.init = init_for(spec.init, trial_seed);
      const OrderingScheme os = scheme_for(scheme, trial_seed);
      run_with_observer(q, os, cfg, [&](int epoch, const std::vector<double>& x) {
        double sq = 0.0, sum = 0.0;
        for (double v : x) {
          sq += v * v;
          sum += v;
        }
        double f;
        if (structured) {
          f = 0.5 * ((1.0 + alpha) * sq - alpha * sum * sum);
        } else {
          scratch.x = x;
          scratch.coord_sum = sum;
          f = objective(q, scratch);
        }
        acc.sum_sq[epoch] += sq;
        acc.sum_sq2[epoch] += sq * sq;
        acc.sum_f[epoch] += f;
        acc.sum_f2[epoch] += f * f;
        if (want_i1) {
          double* dst = acc.sum_x.data() + static_cast<std::size_t>(epoch) * n;
          for (int i = 0; i < n; ++i) dst[i] += x[i];
        }
      });
    }
  };

  auto worker = [&] {
    Accum acc;
    while (!abort.load(std::memory_order_relaxed)) {
      const std::size_t b = next_block.fetch_add(1);
      if (b >= blocks) return;
      bool ok = true;
      try {
        compute_block(b, acc);
      } catch (...) {
        ok = false;
        abort.store(true, std::memory_order_relaxed);
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
      folder.submit(b, [&] {
        if (!ok) return;
        g_sq.add(acc.sum_sq);
        g_sq2.add(acc.sum_sq2);
        g_f.add(acc.sum_f);
        g_f2.add(acc.sum_f2);
        if (want_i1) g_x.add(acc.sum_x);
      });
    }
    // Drain remaining block indices so the folder sequence completes.
    while (true) {
      const std::size_t b = next_block.fetch_add(1);
      if (b >= blocks) return;
      folder.submit(b, [] {});
    }
  };

  const int nthreads = std::min<int>(resolve_threads(spec.threads), static_cast<int>(blocks));
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  const double r = trials;
  auto sample_se = [&](double mean, double mean_of_sq) {
    if (trials < 2) return 0.0;
    const double var = std::max(0.0, (mean_of_sq - mean * mean) * r / (r - 1.0));
    return std::sqrt(var / r);
  };

  CriterionSeries s1 = make_series(Criterion::I1, epochs1, trials);
  CriterionSeries s2 = make_series(Criterion::I2, epochs1, trials);
  CriterionSeries s3 = make_series(Criterion::I3, epochs1, trials);
  for (int e = 0; e < epochs1; ++e) {
    const double i2 = g_sq.sum[e] / r;
    const double i3 = g_f.sum[e] / r;
    s2.value[e] = clamp_small(i2, &s2.clamped[e]);
    s2.std_error[e] = sample_se(i2, g_sq2.sum[e] / r);
    s3.value[e] = clamp_small(i3, &s3.clamped[e]);
    s3.std_error[e] = sample_se(i3, g_f2.sum[e] / r);
    if (want_i1) {
      double norm_sq = 0.0;
      const double* row = g_x.sum.data() + static_cast<std::size_t>(e) * n;
      for (int i = 0; i < n; ++i) norm_sq += (row[i] / r) * (row[i] / r);
      const double i1 = std::sqrt(norm_sq);
      s1.value[e] = clamp_small(i1, &s1.clamped[e]);
      // Monte Carlo error of the mean-iterate norm: sqrt(tr(Cov)/R), with
      // tr(Cov) estimated by I2 - I1^2.
      s1.std_error[e] = trials < 2 ? 0.0 : std::sqrt(std::max(0.0, i2 - i1 * i1) / r);
    }
  }

  SchemeResult out;
  out.scheme = scheme;
  if (want_i1) out.criteria.push_back(std::move(s1));
  if (spec.record & kRecordI2) out.criteria.push_back(std::move(s2));
  if (spec.record & kRecordI3) out.criteria.push_back(std::move(s3));
  return out;
}

}  // namespace

MonteCarloResult run_monte_carlo_on(const Problem& q, const MonteCarloSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("monte carlo: trials must be >= 1");
  if (spec.epochs < 1) throw std::invalid_argument("monte carlo: epochs must be >= 1");
  if (spec.schemes.empty()) throw std::invalid_argument("monte carlo: no schemes requested");
  if (spec.record == 0) throw std::invalid_argument("monte carlo: no criteria requested");
  MonteCarloResult out;
  for (Scheme s : spec.schemes) out.push_back(run_scheme(q, s, spec));
  return out;
}

MonteCarloResult run_monte_carlo(const MonteCarloSpec& spec) {
  return run_monte_carlo_on(Problem{make_structured(spec.n, spec.t)}, spec);
}

std::optional<double> estimate_empirical_rate(const CriterionSeries& series, int first, int last) {
  const int e = series.epochs();
  first = std::max(0, first);
  last = std::min(last, e);
  if (last < first) throw std::invalid_argument("estimate_empirical_rate: empty window");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int l = first; l <= last; ++l) {
    if (!(series.value[l] > 0.0) || series.clamped[l]) continue;
    const double x = l;
    const double y = std::log(series.value[l]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) return std::nullopt;  // series already at the floor
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return std::exp((count * sxy - sx * sy) / denom);
}

std::optional<double> estimate_empirical_rate(const CriterionSeries& series) {
  return estimate_empirical_rate(series, series.epochs() / 2, series.epochs());
}

std::optional<int> epochs_to_threshold(const CriterionSeries& series, double rel_threshold) {
  if (series.value.empty()) return std::nullopt;
  const double target = rel_threshold * series.value[0];
  for (int l = 0; l <= series.epochs(); ++l)
    if (series.value[l] <= target) return l;
  return std::nullopt;
}

RatioSeries per_epoch_ratios(const CriterionSeries& series) {
  RatioSeries out;
  const int e = series.epochs();
  out.ratio.assign(std::max(0, e), 0.0);
  out.std_error.assign(std::max(0, e), 0.0);
  for (int l = 1; l <= e; ++l) {
    const double num = series.value[l];
    const double den = series.value[l - 1];
    if (!(den > 0.0) || series.clamped[l] || series.clamped[l - 1]) {
      out.ratio[l - 1] = std::numeric_limits<double>::quiet_NaN();
      out.std_error[l - 1] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const double r = num / den;
    out.ratio[l - 1] = r;
    const double rel_num = num > 0.0 ? series.std_error[l] / num : 0.0;
    const double rel_den = series.std_error[l - 1] / den;
    out.std_error[l - 1] = std::abs(r) * std::sqrt(rel_num * rel_num + rel_den * rel_den);
  }
  return out;
}

int default_trials(int n) { return n <= 1000 ? 1000 : 100; }

namespace {

const std::vector<std::string> kFigureIds = {
    "speedup-panels", "rcd-tightness", "rpcd-tightness", "worst-init-grid", "random-init-grid"};

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  return out.str();
}

std::string join_doubles(const std::vector<double>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << csv::format_double(v[i]);
  return out.str();
}

void check_budget(const FigureOverrides& ov, int n, int epochs, int trials) {
  const double cost = static_cast<double>(n) * epochs * trials;
  if (cost > ov.budget) {
    std::ostringstream msg;
    msg << "figure: run cost n*epochs*trials = " << cost << " exceeds budget " << ov.budget
        << " (raise --budget to allow)";
    throw std::invalid_argument(msg.str());
  }
}

// Epoch budget: enough epochs to push I3 to 1e-12 at the predicted rate,
// with headroom, capped.
int predict_epochs_i3(Scheme s, int n, double t, double f0, int cap) {
  double rate = 1.0;
  switch (s) {
    case Scheme::CCD: {
      const double b = reference_bounds(n, t).ccd_upper;
      rate = b * b;
      break;
    }
    case Scheme::RCD:
      rate = std::exp(2.0 * n * std::log1p(-(1.0 - t) / n));
      break;
    case Scheme::RPCD: {
      const double r = rho_rpcd(n, t);
      rate = r * r;
      break;
    }
  }
  if (!(rate > 0.0) || rate >= 1.0 || !(f0 > 0.0)) return cap;
  const double need = std::log(1e-12 / f0) / std::log(rate);
  const int epochs = static_cast<int>(std::ceil(need * 1.3)) + 5;
  return std::clamp(epochs, 10, cap);
}

FigureDataset speedup_panels(const FigureOverrides& ov) {
  const std::vector<int> ns = ov.n_list.value_or(std::vector<int>{2, 10, 100, 1000});
  FigureDataset fig;
  fig.id = "speedup-panels";
  fig.meta = {{"figure", fig.id}, {"n_list", join_ints(ns)}, {"t_grid", "0.001:0.999:0.001"}};
  fig.columns = {"n", "t", "s", "s_tilde"};
  for (int n : ns) {
    for (int k = 1; k <= 999; ++k) {
      const double t = k / 1000.0;
      fig.rows.push_back({std::to_string(n), csv::format_double(t),
                          csv::format_double(speedup_s(n, t)),
                          csv::format_double(speedup_s_tilde(n, t))});
    }
  }
  return fig;
}

FigureDataset tightness_figure(const std::string& id, const FigureOverrides& ov) {
  const Scheme scheme = id == "rcd-tightness" ? Scheme::RCD : Scheme::RPCD;
  const int n = ov.n_list ? ov.n_list->front() : 1000;
  const double t = ov.t_list ? ov.t_list->front() : 0.9;
  const int trials = ov.trials.value_or(default_trials(n));
  const int cap = ov.epoch_cap.value_or(500);
  const std::uint64_t seed = ov.seed.value_or(42);

  const double f0 = 0.5 * (1.0 - t) * n;  // f at the all-ones start
  const int epochs = predict_epochs_i3(scheme, n, t, f0, cap);
  check_budget(ov, n, epochs, trials);

  MonteCarloSpec spec;
  spec.n = n;
  spec.t = t;
  spec.schemes = {scheme};
  spec.trials = trials;
  spec.epochs = epochs;
  spec.master_seed = seed;
  spec.init = AllOnes{};
  spec.record = kRecordI2 | kRecordI3;
  spec.threads = ov.threads;
  const MonteCarloResult result = run_monte_carlo(spec);
  const CriterionSeries* i2 = result.front().find(Criterion::I2);
  const CriterionSeries* i3 = result.front().find(Criterion::I3);

  // Per-iteration bounds are raised to the n-th power for the epoch axis;
  // permutation bounds are already per-epoch.
  double log_bound2, log_bound3;
  if (scheme == Scheme::RCD) {
    log_bound2 = n * std::log(rcd_i2_rate(n, t));
    log_bound3 = n * std::log(rcd_i3_rate(n, t));
  } else {
    log_bound2 = std::log(rpcd_i2_rate(n, t));
    log_bound3 = std::log(rpcd_i3_rate(n, t));
  }

  FigureDataset fig;
  fig.id = id;
  fig.meta = {{"figure", id},
              {"scheme", scheme_name(scheme)},
              {"n", std::to_string(n)},
              {"t", csv::format_double(t)},
              {"alpha", csv::format_double(t / (n - 1))},
              {"trials", std::to_string(trials)},
              {"epochs", std::to_string(epochs)},
              {"seed", std::to_string(seed)},
              {"init", "ones"}};
  fig.columns = {"epoch", "i2", "i2_stderr", "i2_bound", "i3", "i3_stderr", "i3_bound"};
  for (int l = 0; l <= epochs; ++l) {
    fig.rows.push_back({std::to_string(l),
                        csv::format_double(i2->value[l]),
                        csv::format_double(i2->std_error[l]),
                        csv::format_double(i2->value[0] * std::exp(l * log_bound2)),
                        csv::format_double(i3->value[l]),
                        csv::format_double(i3->std_error[l]),
                        csv::format_double(i3->value[0] * std::exp(l * log_bound3))});
  }
  return fig;
}

FigureDataset init_grid_figure(const std::string& id, const FigureOverrides& ov) {
  const bool worst = id == "worst-init-grid";
  const std::vector<int> ns =
      ov.n_list.value_or(worst ? std::vector<int>{1000, 10000} : std::vector<int>{1000});
  const std::vector<double> ts = ov.t_list.value_or(std::vector<double>{0.01, 0.50, 0.99});
  const int cap = ov.epoch_cap.value_or(500);
  const std::uint64_t seed = ov.seed.value_or(42);

  FigureDataset fig;
  fig.id = id;
  fig.meta = {{"figure", id},
              {"n_list", join_ints(ns)},
              {"t_list", join_doubles(ts)},
              {"seed", std::to_string(seed)},
              {"init", worst ? "ones" : "random"}};
  fig.columns = {"scheme", "n", "t", "epoch", "i3", "stderr"};

  for (int n : ns) {
    for (double t : ts) {
      for (Scheme s : {Scheme::CCD, Scheme::RPCD, Scheme::RCD}) {
        const int trials = s == Scheme::CCD ? 1 : ov.trials.value_or(default_trials(n));
        const double f0 = worst ? 0.5 * (1.0 - t) * n : 0.5;
        const int epochs = predict_epochs_i3(s, n, t, f0, cap);
        check_budget(ov, n, epochs, trials);
        MonteCarloSpec spec;
        spec.n = n;
        spec.t = t;
        spec.schemes = {s};
        spec.trials = trials;
        spec.epochs = epochs;
        spec.master_seed = seed;
        spec.init = worst ? Initialization{AllOnes{}} : Initialization{RandomInit{seed}};
        spec.record = kRecordI3;
        spec.threads = ov.threads;
        const MonteCarloResult result = run_monte_carlo(spec);
        const CriterionSeries* i3 = result.front().find(Criterion::I3);
        for (int l = 0; l <= epochs; ++l) {
          fig.rows.push_back({scheme_name(s), std::to_string(n), csv::format_double(t),
                              std::to_string(l), csv::format_double(i3->value[l]),
                              csv::format_double(i3->std_error[l])});
        }
      }
    }
  }
  return fig;
}

}  // namespace

const std::vector<std::string>& figure_ids() { return kFigureIds; }

FigureDataset reproduce_figure(const std::string& id, const FigureOverrides& overrides) {
  if (id == "speedup-panels") return speedup_panels(overrides);
  if (id == "rcd-tightness" || id == "rpcd-tightness") return tightness_figure(id, overrides);
  if (id == "worst-init-grid" || id == "random-init-grid") return init_grid_figure(id, overrides);
  throw std::invalid_argument("unknown figure id: " + id);
}

csv::Table monte_carlo_table(const MonteCarloSpec& spec, const MonteCarloResult& result) {
  csv::Table table;
  std::string schemes;
  for (std::size_t i = 0; i < spec.schemes.size(); ++i)
    schemes += std::string(i ? "," : "") + scheme_name(spec.schemes[i]);
  table.meta = {{"command", "monte-carlo"},
                {"n", std::to_string(spec.n)},
                {"t", csv::format_double(spec.t)},
                {"alpha", csv::format_double(spec.t / (spec.n - 1))},
                {"schemes", schemes},
                {"trials", std::to_string(spec.trials)},
                {"epochs", std::to_string(spec.epochs)},
                {"seed", std::to_string(spec.master_seed)},
                {"init", std::holds_alternative<AllOnes>(spec.init) ? "ones" : "random"}};
  table.columns = {"scheme", "criterion", "epoch", "value", "stderr"};
  for (const auto& sr : result) {
    for (const auto& series : sr.criteria) {
      for (int l = 0; l <= series.epochs(); ++l) {
        table.rows.push_back({scheme_name(sr.scheme), criterion_name(series.criterion),
                              std::to_string(l), csv::format_double(series.value[l]),
                              csv::format_double(series.std_error[l])});
      }
    }
  }
  return table;
}

csv::Table figure_table(const FigureDataset& dataset) {
  csv::Table table;
  table.meta = dataset.meta;
  table.columns = dataset.columns;
  table.rows = dataset.rows;
  return table;
}

std::string plot_script_for(const csv::Table& table, const std::string& csv_relative_path) {
  std::ostringstream out;
  out << "set datafile separator \",\"\n";
  out << "set key outside\n";
  if (table.columns.empty()) return out.str();

  if (table.columns.front() == "scheme") {
    // Long format: one curve per distinct label combination.
    const bool has_criterion = table.columns.size() > 1 && table.columns[1] == "criterion";
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& row : table.rows)
      pairs.insert({row[0], has_criterion ? row[1] : std::string()});
    const int xcol = has_criterion ? 3 : 2;
    const int ycol = xcol + 1;
    out << "set logscale y\nset xlabel \"epoch\"\n";
    out << "plot ";
    bool first = true;
    for (const auto& [scheme, crit] : pairs) {
      if (!first) out << ", \\\n     ";
      first = false;
      out << "\"" << csv_relative_path << "\" using " << xcol << ":(stringcolumn(1) eq \""
          << scheme << "\"";
      if (has_criterion) out << " && stringcolumn(2) eq \"" << crit << "\"";
      out << " ? $" << ycol << " : 1/0) with lines title \"" << scheme;
      if (has_criterion) out << " " << crit;
      out << "\"";
    }
    out << "\n";
    return out.str();
  }

  if (table.columns.front() == "n" && table.columns.size() > 1 && table.columns[1] == "t") {
    std::set<std::string> ns;
    for (const auto& row : table.rows) ns.insert(row[0]);
    out << "set xlabel \"t\"\n";
    out << "plot ";
    bool first = true;
    for (const auto& n : ns) {
      for (std::size_t c = 2; c < table.columns.size(); ++c) {
        if (!first) out << ", \\\n     ";
        first = false;
        out << "\"" << csv_relative_path << "\" using 2:(stringcolumn(1) eq \"" << n << "\" ? $"
            << c + 1 << " : 1/0) with lines title \"" << table.columns[c] << " n=" << n << "\"";
      }
    }
    out << "\n";
    return out.str();
  }

  // Wide format keyed by the first column.
  out << "set logscale y\nset xlabel \"" << table.columns.front() << "\"\n";
  out << "plot ";
  bool first = true;
  for (std::size_t c = 1; c < table.columns.size(); ++c) {
    if (table.columns[c].find("stderr") != std::string::npos) continue;
    if (!first) out << ", \\\n     ";
    first = false;
    out << "\"" << csv_relative_path << "\" using 1:" << c + 1 << " with lines title \""
        << table.columns[c] << "\"";
  }
  out << "\n";
  return out.str();
}

}  // namespace cdlab
