#pragma once

#include <string>
#include <vector>

#include "lproj/montecarlo.hpp"

namespace lproj {

// Numbers are serialized with 17 significant digits so CSV outputs
// round-trip bit-faithfully through the ingestion path.
std::string format_double(double v);

struct IngestedSeries {
  std::vector<std::string> column_names;
  Matrix data;  // T x n
  std::string source_path;
};

IngestedSeries read_series_csv(const std::string& path, int min_rows = 30);
void write_series_csv(const Matrix& data, const std::vector<std::string>& column_names,
                      const std::string& path);

// DGP file: either the coefficient schema
//   {n, p, lag_blocks (row-major), intercept?, innovation {kind, ...}}
// or a builtin {"kind": "ar1"|"var4_bivariate"|"factorized", ...}.
DgpSpec load_dgp_json(const std::string& path);
DgpSpec parse_dgp(const std::string& json_text, const std::string& origin);

// Experiment file: {"schema_version": 1, "experiments": [...]} where each
// entry carries a DGP block plus methods/horizons/reps/... fields.
std::vector<McExperimentConfig> load_experiment_file(const std::string& path);

void write_mc_csv(const McResultTable& table, const std::string& path);
McResultTable read_mc_csv(const std::string& path);
void write_mc_json(const McResultTable& table, const std::string& path);

void write_estimates_csv(const std::vector<EstimateReport>& reports,
                         const std::vector<int>& horizons, const std::string& path);

}  // namespace lproj
