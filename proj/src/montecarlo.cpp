#include "lproj/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <map>
#include <thread>

namespace lproj {

MethodKind method_kind_from_name(const std::string& name) {
  if (name == "lp-la-boot") return MethodKind::LpLaBoot;
  if (name == "lp-la-delta") return MethodKind::LpLaDelta;
  if (name == "lp-na-boot") return MethodKind::LpNaBoot;
  if (name == "lp-na-delta") return MethodKind::LpNaDelta;
  if (name == "ar-delta") return MethodKind::ArDelta;
  if (name == "ar-la-efron") return MethodKind::ArLaEfron;
  if (name == "lp-la-pairs") return MethodKind::LpLaPairs;
  if (name == "oracle-wide") return MethodKind::OracleWide;
  if (name == "oracle-empty") return MethodKind::OracleEmpty;
  throw ConfigError("unknown method name: " + name);
}

std::string method_kind_name(MethodKind kind) {
  switch (kind) {
    case MethodKind::LpLaBoot: return "lp-la-boot";
    case MethodKind::LpLaDelta: return "lp-la-delta";
    case MethodKind::LpNaBoot: return "lp-na-boot";
    case MethodKind::LpNaDelta: return "lp-na-delta";
    case MethodKind::ArDelta: return "ar-delta";
    case MethodKind::ArLaEfron: return "ar-la-efron";
    case MethodKind::LpLaPairs: return "lp-la-pairs";
    case MethodKind::OracleWide: return "oracle-wide";
    case MethodKind::OracleEmpty: return "oracle-empty";
  }
  return "?";
}

void McExperimentConfig::validate() const {
  dgp.coefficients.validate();
  dgp.innovations.validate();
  if (dgp.innovations.dimension() != dgp.coefficients.n) {
    throw ConfigError("experiment: innovation dimension != n");
  }
  if (reps < 1) throw ConfigError("experiment: reps must be >= 1");
  if (bootstrap_draws < 50) throw ConfigError("experiment: bootstrap_draws must be >= 50");
  if (!(level > 0.0 && level < 1.0)) throw ConfigError("experiment: level must be in (0,1)");
  if (horizons.empty()) throw ConfigError("experiment: no horizons");
  if (methods.empty()) throw ConfigError("experiment: no methods");
  if (lags < 1) throw ConfigError("experiment: lags must be >= 1");
  if (response_variable < 0 || response_variable >= dgp.coefficients.n) {
    throw ConfigError("experiment: response variable out of range");
  }
  if (response_weights.size() != dgp.coefficients.n) {
    throw ConfigError("experiment: response weights must have length n");
  }
  const int max_h = *std::max_element(horizons.begin(), horizons.end());
  const int min_h = *std::min_element(horizons.begin(), horizons.end());
  if (min_h < 1) throw ConfigError("experiment: horizons must be >= 1");
  int max_lags = lags;
  for (const auto& m : methods) max_lags = std::max(max_lags, m.lags);
  if (max_h >= sample_length - max_lags - 5) {
    throw ConfigError("experiment: horizon too long for the sample length");
  }
}

namespace {

struct CellOutcome {
  bool failed = true;
  bool covered = false;
  double length = 0.0;
  double seconds = 0.0;
};

constexpr std::uint64_t kPurposeSimulate = 0;

EstimateReport evaluate_method(const Matrix& sample, const McExperimentConfig& config,
                               const MethodSpec& method, int horizon, RngStream& rng) {
  const int p = method.lags > 0 ? method.lags : config.lags;
  LpSpec lp;
  lp.horizon = horizon;
  lp.response_variable = config.response_variable;
  lp.response_weights = config.response_weights;
  lp.control_lags = p;

  ArSpec ar;
  ar.horizon = horizon;
  ar.response_variable = config.response_variable;
  ar.response_weights = config.response_weights;

  BootstrapSpec boot;
  boot.draws = config.bootstrap_draws;
  boot.bias_correct = method.bias_correct;

  switch (method.kind) {
    case MethodKind::LpLaBoot:
      lp.lag_augmented = true;
      return lp_percentile_t(sample, lp, boot, config.level, rng);
    case MethodKind::LpLaDelta:
      lp.lag_augmented = true;
      return lp_estimate(sample, lp, config.level).first;
    case MethodKind::LpNaBoot:
      lp.lag_augmented = false;
      return lp_percentile_t(sample, lp, boot, config.level, rng);
    case MethodKind::LpNaDelta:
      lp.lag_augmented = false;
      return lp_estimate(sample, lp, config.level).first;
    case MethodKind::ArDelta:
      ar.lags_estimated = p;
      ar.lag_augmented = false;
      ar.bias_correct = method.bias_correct;
      return ar_estimate(sample, ar, config.level);
    case MethodKind::ArLaEfron:
      ar.lags_estimated = p + 1;
      ar.lag_augmented = true;
      boot.interval = BootstrapSpec::Interval::Efron;
      return arla_efron(sample, ar, boot, config.level, rng);
    case MethodKind::LpLaPairs:
      lp.lag_augmented = true;
      boot.kind = BootstrapSpec::Kind::Pairs;
      return lp_pairs_bootstrap(sample, lp, boot, config.level, rng);
    case MethodKind::OracleWide: {
      EstimateReport r;
      r.lo = -std::numeric_limits<double>::infinity();
      r.hi = std::numeric_limits<double>::infinity();
      return r;
    }
    case MethodKind::OracleEmpty: {
      // reversed endpoints: contains nothing, zero reported length
      EstimateReport r;
      r.lo = std::numeric_limits<double>::max();
      r.hi = -std::numeric_limits<double>::max();
      return r;
    }
  }
  throw ConfigError("evaluate_method: unhandled method kind");
}

}  // namespace

McResultTable run_experiment(const McExperimentConfig& config, int parallelism) {
  config.validate();
  const std::size_t n_methods = config.methods.size();
  const std::size_t n_horizons = config.horizons.size();
  const std::size_t cells = n_methods * n_horizons;

  const int max_h = *std::max_element(config.horizons.begin(), config.horizons.end());
  const auto true_irfs = impulse_responses(config.dgp.coefficients, max_h);
  std::vector<double> truth(n_horizons);
  for (std::size_t k = 0; k < n_horizons; ++k) {
    truth[k] = true_irfs.value(config.horizons[k], config.response_variable,
                               config.response_weights);
  }

  std::vector<CellOutcome> outcomes(static_cast<std::size_t>(config.reps) * cells);

  auto run_rep = [&](int rep) {
    RngStream sim_rng = derive_stream(config.root_seed, static_cast<std::uint64_t>(rep),
                                      kPurposeSimulate);
    Matrix sample;
    try {
      sample = simulate(config.dgp.coefficients, config.dgp.innovations, config.sample_length,
                        sim_rng)
                   .data;
    } catch (const Error&) {
      return;  // whole repetition marked failed
    }
    for (std::size_t m = 0; m < n_methods; ++m) {
      for (std::size_t k = 0; k < n_horizons; ++k) {
        CellOutcome& cell = outcomes[static_cast<std::size_t>(rep) * cells + m * n_horizons + k];
        RngStream rng = derive_stream(config.root_seed, static_cast<std::uint64_t>(rep),
                                      1 + m * n_horizons + k);
        const auto start = std::chrono::steady_clock::now();
        try {
          const EstimateReport report =
              evaluate_method(sample, config, config.methods[m], config.horizons[k], rng);
          cell.failed = std::isnan(report.lo) || std::isnan(report.hi);
          cell.covered = !cell.failed && report.lo <= truth[k] && truth[k] <= report.hi;
          cell.length = std::max(report.hi - report.lo, 0.0);
        } catch (const Error&) {
          cell.failed = true;
        }
        cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                           .count();
      }
    }
  };

  const int workers = std::max(1, std::min(parallelism, config.reps));
  if (workers == 1) {
    for (int rep = 0; rep < config.reps; ++rep) run_rep(rep);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int rep = next.fetch_add(1); rep < config.reps; rep = next.fetch_add(1)) {
          run_rep(rep);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  McResultTable table;
  table.rows.reserve(cells);
  int worst_failed = 0;
  for (std::size_t m = 0; m < n_methods; ++m) {
    for (std::size_t k = 0; k < n_horizons; ++k) {
      McRow row;
      row.dgp = config.dgp.label;
      row.method = config.methods[m].label.empty() ? method_kind_name(config.methods[m].kind)
                                                   : config.methods[m].label;
      row.horizon = config.horizons[k];
      row.reps = config.reps;
      std::vector<double> lengths;
      lengths.reserve(static_cast<std::size_t>(config.reps));
      int covered = 0;
      for (int rep = 0; rep < config.reps; ++rep) {
        const CellOutcome& cell =
            outcomes[static_cast<std::size_t>(rep) * cells + m * n_horizons + k];
        row.wall_seconds += cell.seconds;
        if (cell.failed) {
          ++row.failed;
          continue;
        }
        covered += cell.covered ? 1 : 0;
        lengths.push_back(cell.length);
      }
      const int survived = config.reps - row.failed;
      row.coverage = survived > 0 ? static_cast<double>(covered) / survived : 0.0;
      row.median_length = lengths.empty() ? 0.0 : quantile(std::move(lengths), 0.5);
      worst_failed = std::max(worst_failed, row.failed);
      table.rows.push_back(std::move(row));
    }
  }
  if (worst_failed * 10 > config.reps) {
    throw TooManyFailedReps("run_experiment: " + std::to_string(worst_failed) + " of " +
                            std::to_string(config.reps) + " repetitions failed");
  }
  return table;
}

CompareReport compare_tables(const McResultTable& observed, const McResultTable& reference,
                             double coverage_tol, double length_rel_tol) {
  using Key = std::tuple<std::string, std::string, int>;
  std::map<Key, const McRow*> obs;
  for (const auto& row : observed.rows) obs[{row.dgp, row.method, row.horizon}] = &row;
  if (obs.size() != observed.rows.size()) throw KeyMismatch("compare_tables: duplicate keys");

  CompareReport report;
  std::size_t matched = 0;
  for (const auto& ref : reference.rows) {
    const auto it = obs.find({ref.dgp, ref.method, ref.horizon});
    if (it == obs.end()) {
      throw KeyMismatch("compare_tables: missing row " + ref.dgp + "/" + ref.method + "/h=" +
                        std::to_string(ref.horizon));
    }
    ++matched;
    const McRow& o = *it->second;
    CompareRow row;
    row.dgp = ref.dgp;
    row.method = ref.method;
    row.horizon = ref.horizon;
    row.coverage_observed = o.coverage;
    row.coverage_reference = ref.coverage;
    row.length_observed = o.median_length;
    row.length_reference = ref.median_length;
    // closed tolerances, with a float-representation guard on the boundary
    const bool cov_ok = std::abs(o.coverage - ref.coverage) <= coverage_tol + 1e-12;
    const bool len_ok = ref.median_length == 0.0
                            ? o.median_length == 0.0
                            : std::abs(o.median_length - ref.median_length) <=
                                  length_rel_tol * std::abs(ref.median_length) + 1e-12;
    row.pass = cov_ok && len_ok;
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(std::move(row));
  }
  if (matched != observed.rows.size()) {
    throw KeyMismatch("compare_tables: observed table has extra rows");
  }
  return report;
}

}  // namespace lproj
