#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cdlab/csv.hpp"
#include "cdlab/experiments.hpp"
#include "cdlab/matrix_ops.hpp"
#include "cdlab/rates.hpp"
#include "cdlab/solver.hpp"
#include "cdlab/verify.hpp"

namespace {

constexpr std::uint64_t kDefaultSeed = 42;  // fixed so bare invocations reproduce
constexpr int kMeasuredCcdMaxN = 64;

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

// "a:b:step" inclusive grid, evaluated by index so the spacing never drifts.
std::vector<double> parse_grid(const std::string& s) {
  double a = 0, b = 0, step = 0;
  char c1 = 0, c2 = 0;
  std::stringstream ss(s);
  if (!(ss >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0 || b < a)
    throw std::invalid_argument("grid must be start:stop:step with step > 0");
  std::vector<double> out;
  const int count = static_cast<int>(std::floor((b - a) / step + 0.5));
  for (int k = 0; k <= count; ++k) out.push_back(a + k * step);
  return out;
}

void write_plot_script(const std::string& csv_path, const cdlab::csv::Table& table) {
  const std::string script_path = csv_path + ".gnuplot";
  std::ofstream out(script_path, std::ios::binary);
  out << cdlab::plot_script_for(table, std::filesystem::path(csv_path).filename().string());
}

cdlab::Initialization make_init(const std::string& name, std::uint64_t seed) {
  if (name == "ones") return cdlab::AllOnes{};
  if (name == "random") return cdlab::RandomInit{seed};
  throw std::invalid_argument("init must be 'ones' or 'random'");
}

unsigned parse_criteria(const std::string& list) {
  unsigned mask = 0;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "i1" || item == "I1") mask |= cdlab::kRecordI1;
    else if (item == "i2" || item == "I2") mask |= cdlab::kRecordI2;
    else if (item == "i3" || item == "I3") mask |= cdlab::kRecordI3;
    else throw std::invalid_argument("criteria must be a comma list of i1,i2,i3");
  }
  if (mask == 0) throw std::invalid_argument("no criteria selected");
  return mask;
}

int run_solve(int n, double t, const std::string& scheme_name, const std::string& perm_csv,
              int epochs, const std::string& init_name, std::uint64_t seed, unsigned criteria,
              const std::string& output, bool plot) {
  const cdlab::Problem q{cdlab::make_structured(n, t)};
  cdlab::OrderingScheme scheme;
  if (scheme_name == "ccd") {
    scheme = cdlab::Cyclic{};
  } else if (scheme_name == "ccd-pi") {
    if (perm_csv.empty())
      throw std::invalid_argument("solve: --perm is required for scheme ccd-pi");
    const auto ints = parse_int_list(perm_csv);
    scheme = cdlab::FixedPermutation{ints};
  } else if (scheme_name == "rcd") {
    scheme = cdlab::WithReplacement{seed};
  } else if (scheme_name == "rpcd") {
    scheme = cdlab::PerEpochPermutation{seed};
  } else {
    throw std::invalid_argument("solve: unknown scheme " + scheme_name);
  }

  cdlab::RunConfig cfg;
  cfg.epochs = epochs;
  cfg.init = make_init(init_name, seed);
  cfg.record = criteria;
  const cdlab::EpochSeries series = cdlab::run(q, scheme, cfg);

  cdlab::csv::Table table;
  table.meta = {{"command", "solve"},
                {"n", std::to_string(n)},
                {"t", cdlab::csv::format_double(t)},
                {"alpha", cdlab::csv::format_double(t / (n - 1))},
                {"scheme", scheme_name},
                {"epochs", std::to_string(epochs)},
                {"seed", std::to_string(seed)},
                {"init", init_name}};
  if (!perm_csv.empty()) table.meta.emplace_back("perm", perm_csv);
  table.columns = {"scheme", "criterion", "epoch", "value", "stderr"};
  for (int l = 0; l <= series.epochs(); ++l) {
    if (criteria & cdlab::kRecordI1)
      table.rows.push_back({scheme_name, "I1", std::to_string(l),
                            cdlab::csv::format_double(std::sqrt(series.sq_distance[l])), "0"});
  }
  for (int l = 0; l <= series.epochs(); ++l) {
    if (criteria & cdlab::kRecordI2)
      table.rows.push_back({scheme_name, "I2", std::to_string(l),
                            cdlab::csv::format_double(series.sq_distance[l]), "0"});
  }
  for (int l = 0; l <= series.epochs(); ++l) {
    if (criteria & cdlab::kRecordI3)
      table.rows.push_back({scheme_name, "I3", std::to_string(l),
                            cdlab::csv::format_double(series.objective[l]), "0"});
  }
  cdlab::csv::write_file(output, table);
  if (plot) write_plot_script(output, table);
  return 0;
}

int run_rates(const std::vector<int>& ns, const std::vector<double>& ts,
              const std::string& output) {
  cdlab::csv::Table table;
  std::string nlist;
  for (std::size_t i = 0; i < ns.size(); ++i) nlist += std::string(i ? "," : "") + std::to_string(ns[i]);
  table.meta = {{"command", "rates"}, {"n_list", nlist},
                {"rho_ccd_measured", "gelfand estimate of the built cyclic epoch matrix, n <= " +
                                         std::to_string(kMeasuredCcdMaxN) + " only"}};
  table.columns = {"n", "t", "alpha", "mu", "L",
                   "rho_rpcd", "rho_rcd_epoch", "rho_ccd_upper_bound", "rho_ccd_measured",
                   "q_norm", "s_norm", "g_norm", "rcd_f_rate",
                   "s", "s_tilde", "oswald_rpcd_rate", "nesterov_rcd_iter_rate"};
  using cdlab::csv::format_double;
  for (int n : ns) {
    for (double t : ts) {
      const cdlab::RateReport r = cdlab::rate_report(n, t);
      std::string measured = "nan";
      if (n <= kMeasuredCcdMaxN) {
        const cdlab::Problem q{cdlab::make_structured(n, t)};
        measured = format_double(cdlab::spectral_radius(cdlab::b_ccd(q)).rho);
      }
      table.rows.push_back({std::to_string(n), format_double(t), format_double(r.alpha),
                            format_double(r.mu), format_double(r.lmax),
                            format_double(r.rho_rpcd), format_double(r.rho_rcd_epoch),
                            format_double(r.rho_ccd_upper), measured,
                            format_double(r.q_norm), format_double(r.s_norm),
                            format_double(r.g_norm), format_double(r.rcd_f_rate),
                            format_double(r.s_factor), format_double(r.s_tilde_factor),
                            format_double(r.oswald_rpcd_rate),
                            format_double(r.nesterov_rcd_iter_rate)});
    }
  }
  cdlab::csv::write_file(output, table);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cdlab: coordinate descent ordering laboratory.\n"
      "Validation constants are fixed: 1e-12 elementwise symmetry, t strictly\n"
      "inside (0,1), permutation enumeration capped at n = 8. Default seed is\n"
      "42; all randomness flows from explicit seeds, never the clock."};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Run one coordinate descent trajectory to CSV");
  int s_n = 100;
  double s_t = 0.5;
  std::string s_scheme = "ccd", s_perm, s_init = "ones", s_out, s_criteria = "i1,i2,i3";
  int s_epochs = 100;
  std::uint64_t s_seed = kDefaultSeed;
  bool s_plot = false;
  int s_threads = 0;
  solve->add_option("--n", s_n, "dimension (>= 2)")->required();
  solve->add_option("--t", s_t, "diagonal dominance t in (0,1)")->required();
  solve->add_option("--scheme", s_scheme, "ccd | ccd-pi | rcd | rpcd")->required();
  solve->add_option("--perm", s_perm, "comma permutation of 0..n-1 (ccd-pi only)");
  solve->add_option("--epochs", s_epochs, "epochs to run");
  solve->add_option("--init", s_init, "ones | random");
  solve->add_option("--seed", s_seed, "seed for scheme and random init");
  solve->add_option("--criteria", s_criteria, "comma list of i1,i2,i3");
  solve->add_option("--threads", s_threads, "worker cap (output is identical for all values)");
  solve->add_option("-o,--output", s_out, "output CSV path")->required();
  solve->add_flag("--plot-script", s_plot, "also write <output>.gnuplot");

  // rates
  auto* rates = app.add_subcommand("rates", "Evaluate every closed-form rate on an (n, t) grid");
  std::string r_ns = "2,10,100,1000", r_grid = "0.01:0.99:0.01", r_out;
  rates->add_option("--n", r_ns, "comma list of dimensions");
  rates->add_option("--t-grid", r_grid, "t grid start:stop:step");
  rates->add_option("-o,--output", r_out, "output CSV path")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "Cross-validate closed forms against oracles");
  int v_max_n = 6;
  std::string v_fracs = "0.1,0.5,0.9";
  double v_tol = -1.0;
  verify->add_option("--max-n", v_max_n, "enumeration size cap (<= 8)");
  verify->add_option("--alpha-fracs", v_fracs, "comma list of alpha*(n-1) values");
  verify->add_option("--tol", v_tol, "override every tolerance (honest failures included)");

  // monte-carlo
  auto* mc = app.add_subcommand("monte-carlo", "Seeded Monte Carlo criterion estimates to CSV");
  int m_n = 100, m_trials = -1, m_epochs = 100, m_threads = 0;
  double m_t = 0.5;
  std::string m_schemes = "ccd,rcd,rpcd", m_init = "ones", m_out, m_criteria = "i1,i2,i3";
  std::uint64_t m_seed = kDefaultSeed;
  bool m_plot = false;
  mc->add_option("--n", m_n, "dimension")->required();
  mc->add_option("--t", m_t, "diagonal dominance t in (0,1)")->required();
  mc->add_option("--schemes", m_schemes, "comma subset of ccd,rcd,rpcd");
  mc->add_option("--trials", m_trials, "trials per stochastic scheme (default by n)");
  mc->add_option("--epochs", m_epochs, "epochs per trial");
  mc->add_option("--seed", m_seed, "master seed");
  mc->add_option("--init", m_init, "ones | random");
  mc->add_option("--criteria", m_criteria, "comma list of i1,i2,i3");
  mc->add_option("--threads", m_threads, "worker cap (output is identical for all values)");
  mc->add_option("-o,--output", m_out, "output CSV path")->required();
  mc->add_flag("--plot-script", m_plot, "also write <output>.gnuplot");

  // figure
  auto* figure = app.add_subcommand("figure", "Reproduce a figure dataset into a directory");
  std::string f_id, f_outdir = ".", f_ns, f_ts;
  int f_trials = -1, f_cap = -1, f_threads = 0;
  std::uint64_t f_seed = kDefaultSeed;
  double f_budget = 1e10;
  figure->add_option("id", f_id,
                     "speedup-panels | rcd-tightness | rpcd-tightness | worst-init-grid | "
                     "random-init-grid")
      ->required();
  figure->add_option("-o,--output", f_outdir, "output directory");
  figure->add_option("--n-list", f_ns, "override the figure's n values");
  figure->add_option("--t-list", f_ts, "override the figure's t values");
  figure->add_option("--trials", f_trials, "override trials per run");
  figure->add_option("--epoch-cap", f_cap, "override the 500-epoch cap");
  figure->add_option("--seed", f_seed, "master seed");
  figure->add_option("--threads", f_threads, "worker cap (output is identical for all values)");
  figure->add_option("--budget", f_budget, "max n*epochs*trials per run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) {
      return run_solve(s_n, s_t, s_scheme, s_perm, s_epochs, s_init, s_seed,
                       parse_criteria(s_criteria), s_out, s_plot);
    }
    if (rates->parsed()) {
      return run_rates(parse_int_list(r_ns), parse_grid(r_grid), r_out);
    }
    if (verify->parsed()) {
      cdlab::VerifyOptions opt;
      opt.max_n = v_max_n;
      opt.alpha_fracs = parse_double_list(v_fracs);
      if (v_tol > 0.0) opt.tol_override = v_tol;
      const auto results = cdlab::run_verify(opt);
      std::cout << cdlab::format_report(results);
      if (cdlab::all_passed(results)) {
        std::cout << "all checks passed\n";
        return 0;
      }
      for (const auto& r : results) {
        if (!r.pass) {
          std::cout << "first failing check: " << r.name << " (discrepancy "
                    << cdlab::csv::format_double(r.discrepancy) << ")\n";
          break;
        }
      }
      return 1;
    }
    if (mc->parsed()) {
      cdlab::MonteCarloSpec spec;
      spec.n = m_n;
      spec.t = m_t;
      spec.schemes.clear();
      std::stringstream ss(m_schemes);
      std::string item;
      while (std::getline(ss, item, ',')) {
        const auto s = cdlab::parse_scheme(item);
        if (!s) throw std::invalid_argument("monte-carlo: unknown scheme " + item);
        spec.schemes.push_back(*s);
      }
      spec.trials = m_trials > 0 ? m_trials : cdlab::default_trials(m_n);
      spec.epochs = m_epochs;
      spec.master_seed = m_seed;
      spec.init = make_init(m_init, m_seed);
      spec.record = parse_criteria(m_criteria);
      spec.threads = m_threads;
      const auto result = cdlab::run_monte_carlo(spec);
      const auto table = cdlab::monte_carlo_table(spec, result);
      cdlab::csv::write_file(m_out, table);
      if (m_plot) write_plot_script(m_out, table);
      return 0;
    }
    if (figure->parsed()) {
      cdlab::FigureOverrides ov;
      if (!f_ns.empty()) ov.n_list = parse_int_list(f_ns);
      if (!f_ts.empty()) ov.t_list = parse_double_list(f_ts);
      if (f_trials > 0) ov.trials = f_trials;
      if (f_cap > 0) ov.epoch_cap = f_cap;
      ov.seed = f_seed;
      ov.threads = f_threads;
      ov.budget = f_budget;
      const auto dataset = cdlab::reproduce_figure(f_id, ov);
      std::filesystem::create_directories(f_outdir);
      const std::string path = (std::filesystem::path(f_outdir) / (f_id + ".csv")).string();
      const auto table = cdlab::figure_table(dataset);
      cdlab::csv::write_file(path, table);
      write_plot_script(path, table);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
