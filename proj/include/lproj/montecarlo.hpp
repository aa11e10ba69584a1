#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lproj/bootstrap.hpp"
#include "lproj/var_model.hpp"

namespace lproj {

enum class MethodKind {
  LpLaBoot,    // lag-augmented LP, wild recursive percentile-t
  LpLaDelta,   // lag-augmented LP, EHW delta interval
  LpNaBoot,    // non-augmented LP, wild recursive percentile-t, EWC se
  LpNaDelta,   // non-augmented LP, EWC HAR delta interval
  ArDelta,     // plug-in VAR delta interval (bias-corrected by default)
  ArLaEfron,   // Inoue-Kilian lag-augmented AR Efron interval
  LpLaPairs,   // lag-augmented LP, pairs percentile-t
  OracleWide,  // harness self-test: always covers
  OracleEmpty, // harness self-test: never covers
};

MethodKind method_kind_from_name(const std::string& name);
std::string method_kind_name(MethodKind kind);

struct MethodSpec {
  std::string label;
  MethodKind kind = MethodKind::LpLaDelta;
  int lags = 0;             // model order override; 0 means the config default
  bool bias_correct = true; // bootstrap DGP / ar-delta point correction
};

struct DgpSpec {
  std::string label;
  VarCoefficients coefficients;
  InnovationSpec innovations;
};

struct McExperimentConfig {
  DgpSpec dgp;
  std::vector<MethodSpec> methods;
  std::vector<int> horizons;
  int sample_length = 240;
  int reps = 1000;
  int bootstrap_draws = 500;
  double level = 0.90;
  std::uint64_t root_seed = 0;
  int lags = 1;              // default model order used by methods
  int response_variable = 0; // 0-based
  Vector response_weights;

  void validate() const;
};

struct McRow {
  std::string dgp;
  std::string method;
  int horizon = 0;
  double coverage = 0.0;
  double median_length = 0.0;
  int failed = 0;
  int reps = 0;
  double wall_seconds = 0.0;
};

struct McResultTable {
  std::vector<McRow> rows;
};

// Shared-sample design: each repetition simulates once and every
// (method, horizon) is evaluated on that sample. Deterministic by
// repetition-derived streams and index-ordered merge, so the result is
// independent of `parallelism`.
McResultTable run_experiment(const McExperimentConfig& config, int parallelism);

struct CompareRow {
  std::string dgp;
  std::string method;
  int horizon = 0;
  double coverage_observed = 0.0;
  double coverage_reference = 0.0;
  double length_observed = 0.0;
  double length_reference = 0.0;
  bool pass = false;
};

struct CompareReport {
  std::vector<CompareRow> rows;
  bool all_pass = true;
};

CompareReport compare_tables(const McResultTable& observed, const McResultTable& reference,
                             double coverage_tol, double length_rel_tol);

}  // namespace lproj
