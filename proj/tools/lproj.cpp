// Command-line front end: Monte Carlo experiments from config files, impulse
// response estimation on CSV data, indifference-curve export, DGP simulation.
//
// Exit codes: 0 success, 2 input/config error, 3 excess failed repetitions,
// 4 estimation error.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "lproj/asymptotics.hpp"
#include "lproj/bootstrap.hpp"
#include "lproj/io.hpp"
#include "lproj/montecarlo.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitFailedReps = 3;
constexpr int kExitEstimation = 4;

int default_threads() {
  if (const char* env = std::getenv("LPROJ_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

std::vector<int> parse_horizons(const std::string& text) {
  std::vector<int> horizons;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    const std::size_t dash = tok.find('-', 1);
    if (dash != std::string::npos) {
      const int lo = std::stoi(tok.substr(0, dash));
      const int hi = std::stoi(tok.substr(dash + 1));
      for (int h = lo; h <= hi; ++h) horizons.push_back(h);
    } else if (!tok.empty()) {
      horizons.push_back(std::stoi(tok));
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (horizons.empty()) throw lproj::ConfigError("no horizons parsed from '" + text + "'");
  return horizons;
}

int cmd_mc(const std::string& config_path, int reps, int draws, long long seed, int threads,
           const std::string& out_base) {
  auto configs = lproj::load_experiment_file(config_path);
  lproj::McResultTable table;
  for (auto& config : configs) {
    if (reps > 0) config.reps = reps;
    if (draws > 0) config.bootstrap_draws = draws;
    if (seed >= 0) config.root_seed = static_cast<std::uint64_t>(seed);
    config.validate();
    if (config.reps >= 5000) {
      std::cerr << "warning: " << config.dgp.label << " runs " << config.reps
                << " repetitions x " << config.bootstrap_draws
                << " bootstrap draws; expect a long wall time\n";
    }
    auto result = lproj::run_experiment(config, threads);
    for (auto& row : result.rows) table.rows.push_back(std::move(row));
  }
  lproj::write_mc_csv(table, out_base + ".csv");
  lproj::write_mc_json(table, out_base + ".json");
  std::cout << "wrote " << table.rows.size() << " rows to " << out_base << ".csv\n";
  return kExitOk;
}

int cmd_estimate(const std::string& data_path, const std::string& response,
                 std::vector<double> shock_weights, int lags, const std::string& horizons_text,
                 const std::string& method_name, double level, int draws, long long seed,
                 const std::string& out_path) {
  const auto series = lproj::read_series_csv(data_path);
  const int n = static_cast<int>(series.data.cols());

  int response_idx = -1;
  for (int c = 0; c < n; ++c) {
    if (series.column_names[static_cast<std::size_t>(c)] == response) response_idx = c;
  }
  if (response_idx < 0) {
    try {
      response_idx = std::stoi(response) - 1;
    } catch (...) {
      throw lproj::ConfigError("response column '" + response + "' not found");
    }
  }
  if (response_idx < 0 || response_idx >= n) {
    throw lproj::ConfigError("response column '" + response + "' out of range");
  }
  if (lags < 1) throw lproj::ConfigError("--lags must be >= 1 (lag augmentation needs p >= 1)");

  lproj::Vector nu = lproj::Vector::Zero(n);
  if (shock_weights.empty()) {
    nu(0) = 1.0;
  } else if (shock_weights.size() == static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) nu(i) = shock_weights[static_cast<std::size_t>(i)];
  } else {
    throw lproj::ConfigError("--shock-weight needs " + std::to_string(n) + " entries");
  }

  const auto horizons = parse_horizons(horizons_text);
  const lproj::MethodKind kind = lproj::method_kind_from_name(method_name);

  std::vector<lproj::EstimateReport> reports;
  for (std::size_t k = 0; k < horizons.size(); ++k) {
    lproj::LpSpec lp;
    lp.horizon = horizons[k];
    lp.response_variable = response_idx;
    lp.response_weights = nu;
    lp.control_lags = lags;

    lproj::ArSpec ar;
    ar.horizon = horizons[k];
    ar.response_variable = response_idx;
    ar.response_weights = nu;

    lproj::BootstrapSpec boot;
    boot.draws = draws;

    lproj::RngStream rng =
        lproj::derive_stream(static_cast<std::uint64_t>(seed), k, /*purpose=*/100);
    switch (kind) {
      case lproj::MethodKind::LpLaBoot:
        lp.lag_augmented = true;
        reports.push_back(lproj::lp_percentile_t(series.data, lp, boot, level, rng));
        break;
      case lproj::MethodKind::LpLaDelta:
        lp.lag_augmented = true;
        reports.push_back(lproj::lp_estimate(series.data, lp, level).first);
        break;
      case lproj::MethodKind::LpNaBoot:
        lp.lag_augmented = false;
        reports.push_back(lproj::lp_percentile_t(series.data, lp, boot, level, rng));
        break;
      case lproj::MethodKind::LpNaDelta:
        lp.lag_augmented = false;
        reports.push_back(lproj::lp_estimate(series.data, lp, level).first);
        break;
      case lproj::MethodKind::ArDelta:
        ar.lags_estimated = lags;
        ar.bias_correct = true;
        reports.push_back(lproj::ar_estimate(series.data, ar, level));
        break;
      case lproj::MethodKind::ArLaEfron:
        ar.lags_estimated = lags + 1;
        ar.lag_augmented = true;
        boot.interval = lproj::BootstrapSpec::Interval::Efron;
        reports.push_back(lproj::arla_efron(series.data, ar, boot, level, rng));
        break;
      case lproj::MethodKind::LpLaPairs:
        lp.lag_augmented = true;
        boot.kind = lproj::BootstrapSpec::Kind::Pairs;
        reports.push_back(lproj::lp_pairs_bootstrap(series.data, lp, boot, level, rng));
        break;
      default:
        throw lproj::ConfigError("method '" + method_name + "' is not an estimation method");
    }
  }
  lproj::write_estimates_csv(reports, horizons, out_path);
  std::cout << "wrote " << reports.size() << " estimates to " << out_path << "\n";
  return kExitOk;
}

int cmd_indifference(int h_max, const std::string& out_path) {
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw lproj::ConfigError("cannot write file: " + out_path);
  out << "h,rho_lower,rho_upper\n";
  for (int h = 2; h <= h_max; ++h) {
    out << h << "," << lproj::format_double(lproj::indifference_lp_vs_arla(h)) << ","
        << lproj::format_double(lproj::indifference_lp_vs_lpna(h)) << "\n";
  }
  std::cout << "wrote " << (h_max - 1) << " rows to " << out_path << "\n";
  return kExitOk;
}

int cmd_simulate(const std::string& dgp_path, int T, long long seed, const std::string& out_path) {
  const auto dgp = lproj::load_dgp_json(dgp_path);
  const double radius = lproj::spectral_radius(lproj::companion(dgp.coefficients).entries);
  if (radius > 1.0) {
    std::cerr << "warning: DGP companion spectral radius " << radius
              << " > 1; the simulated path is explosive\n";
  }
  lproj::RngStream rng = lproj::derive_stream(static_cast<std::uint64_t>(seed), 0, 0);
  const auto sample = lproj::simulate(dgp.coefficients, dgp.innovations, T, rng);
  std::vector<std::string> names;
  for (int c = 1; c <= dgp.coefficients.n; ++c) names.push_back("y" + std::to_string(c));
  lproj::write_series_csv(sample.data, names, out_path);
  std::cout << "wrote " << T << " periods to " << out_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lag-augmented local projection inference toolkit"};
  app.require_subcommand(1);

  auto* mc = app.add_subcommand("mc", "run Monte Carlo experiments from a config file");
  std::string mc_config;
  int mc_reps = 0, mc_draws = 0, mc_threads = default_threads();
  long long mc_seed = -1;
  std::string mc_out = "mc_results";
  mc->add_option("config", mc_config, "experiment JSON file")->required();
  mc->add_option("--reps", mc_reps, "override repetition count");
  mc->add_option("--draws", mc_draws, "override bootstrap draw count");
  mc->add_option("--seed", mc_seed, "override root seed");
  mc->add_option("--threads", mc_threads, "worker threads (default LPROJ_THREADS or hardware)");
  mc->add_option("--out", mc_out, "output base path (.csv and .json appended)");

  auto* est = app.add_subcommand("estimate", "estimate impulse responses from a CSV file");
  std::string est_data, est_response = "1", est_horizons = "1-12", est_method = "lp-la-boot";
  std::string est_out = "estimates.csv";
  std::vector<double> est_weights;
  int est_lags = 1, est_draws = 2000;
  long long est_seed = 0;
  double est_level = 0.90;
  est->add_option("data", est_data, "CSV data file (header row, one column per variable)")
      ->required();
  est->add_option("--response", est_response, "response column name or 1-based index");
  est->add_option("--shock-weight", est_weights, "innovation weight vector nu (default e1)");
  est->add_option("--lags", est_lags, "model lag order p");
  est->add_option("--horizons", est_horizons, "horizons, e.g. 1-12 or 1,6,12");
  est->add_option("--method", est_method,
                  "lp-la-boot|lp-la-delta|lp-na-boot|lp-na-delta|ar-delta|ar-la-efron|lp-la-pairs");
  est->add_option("--level", est_level, "confidence level");
  est->add_option("--boot-draws", est_draws, "bootstrap draws");
  est->add_option("--seed", est_seed, "random seed");
  est->add_option("--out", est_out, "output CSV path");

  auto* ind = app.add_subcommand("indifference", "emit efficiency indifference curves as CSV");
  int ind_hmax = 60;
  std::string ind_out = "indifference.csv";
  ind->add_option("--h-max", ind_hmax, "largest horizon (>= 2)")->check(CLI::Range(2, 100000));
  ind->add_option("--out", ind_out, "output CSV path");

  auto* sim = app.add_subcommand("simulate", "simulate a DGP to CSV");
  std::string sim_dgp, sim_out = "sample.csv";
  int sim_T = 240;
  long long sim_seed = 0;
  sim->add_option("dgp-config", sim_dgp, "DGP JSON file")->required();
  sim->add_option("--T", sim_T, "sample length");
  sim->add_option("--seed", sim_seed, "random seed");
  sim->add_option("--out", sim_out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (mc->parsed()) return cmd_mc(mc_config, mc_reps, mc_draws, mc_seed, mc_threads, mc_out);
    if (est->parsed()) {
      return cmd_estimate(est_data, est_response, est_weights, est_lags, est_horizons, est_method,
                          est_level, est_draws, est_seed, est_out);
    }
    if (ind->parsed()) return cmd_indifference(ind_hmax, ind_out);
    if (sim->parsed()) return cmd_simulate(sim_dgp, sim_T, sim_seed, sim_out);
  } catch (const lproj::TooManyFailedReps& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailedReps;
  } catch (const lproj::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const lproj::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEstimation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEstimation;
  }
  return kExitConfig;
}
