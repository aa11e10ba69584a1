#include "lproj/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lproj {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col,
                  const std::string& path) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  while (first != last && (*first == ' ' || *first == '\t')) ++first;
  while (last != first && (*(last - 1) == ' ' || *(last - 1) == '\t')) --last;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ConfigError(path + ": non-numeric cell '" + cell + "' at row " + std::to_string(row) +
                      ", column " + std::to_string(col));
  }
  return value;
}

Matrix parse_row_major(const json& j, int rows, int cols, const std::string& what) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(rows) * cols) {
    throw ConfigError(what + ": expected " + std::to_string(rows * cols) +
                      " row-major entries");
  }
  Matrix m(rows, cols);
  std::size_t idx = 0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (!j[idx].is_number()) throw ConfigError(what + ": non-numeric entry");
      m(r, c) = j[idx++].get<double>();
    }
  }
  return m;
}

InnovationSpec parse_innovations(const json& j, int n, const std::string& origin) {
  if (!j.is_object() || !j.contains("kind")) {
    throw ConfigError(origin + ": innovation block needs a 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "iid-gaussian") {
    Matrix cov = j.contains("covariance")
                     ? parse_row_major(j.at("covariance"), n, n, origin + ": covariance")
                     : Matrix::Identity(n, n);
    return InnovationSpec::iid_gaussian(std::move(cov));
  }
  if (kind == "arch1") {
    if (!j.contains("alpha0") || !j.contains("alpha1")) {
      throw ConfigError(origin + ": arch1 innovations need alpha0 and alpha1");
    }
    Matrix loading = j.contains("loading")
                         ? parse_row_major(j.at("loading"), n, n, origin + ": loading")
                         : Matrix::Identity(n, n);
    return InnovationSpec::arch1(j.at("alpha0").get<double>(), j.at("alpha1").get<double>(),
                                 std::move(loading));
  }
  throw ConfigError(origin + ": unknown innovation kind '" + kind + "'");
}

DgpSpec parse_dgp_json(const json& j, const std::string& origin) {
  DgpSpec dgp;
  if (j.contains("label")) dgp.label = j.at("label").get<std::string>();

  const std::string kind = j.contains("kind") ? j.at("kind").get<std::string>() : "coefficients";
  if (kind == "ar1") {
    if (!j.contains("rho")) throw ConfigError(origin + ": ar1 dgp needs 'rho'");
    const double rho = j.at("rho").get<double>();
    VarCoefficients c;
    c.n = 1;
    c.p = 1;
    c.lag_blocks = {Matrix::Constant(1, 1, rho)};
    dgp.coefficients = std::move(c);
    dgp.innovations = j.contains("innovation")
                          ? parse_innovations(j.at("innovation"), 1, origin)
                          : InnovationSpec::iid_gaussian(Matrix::Identity(1, 1));
    if (dgp.label.empty()) dgp.label = "ar1_rho" + format_double(rho);
    return dgp;
  }
  if (kind == "var4_bivariate") {
    if (!j.contains("rho")) throw ConfigError(origin + ": var4_bivariate dgp needs 'rho'");
    const double rho = j.at("rho").get<double>();
    dgp.coefficients = bivariate_var4_dgp(rho);
    dgp.innovations = j.contains("innovation")
                          ? parse_innovations(j.at("innovation"), 2, origin)
                          : InnovationSpec::iid_gaussian(bivariate_var4_covariance());
    if (dgp.label.empty()) dgp.label = "var4_rho" + format_double(rho);
    return dgp;
  }
  if (kind == "factorized") {
    for (const char* field : {"roots", "n", "stationary_order"}) {
      if (!j.contains(field)) throw ConfigError(origin + ": factorized dgp needs '" + field + "'");
    }
    const int n = j.at("n").get<int>();
    const int q = j.at("stationary_order").get<int>();
    FactorizedDgp f;
    f.roots.resize(n);
    const auto& roots = j.at("roots");
    if (!roots.is_array() || roots.size() != static_cast<std::size_t>(n)) {
      throw ConfigError(origin + ": roots must have length n");
    }
    for (int i = 0; i < n; ++i) f.roots(i) = roots[static_cast<std::size_t>(i)].get<double>();
    f.stationary_poly.n = n;
    f.stationary_poly.p = q;
    if (q > 0) {
      f.stationary_poly.lag_blocks.reserve(static_cast<std::size_t>(q));
      const Matrix stacked =
          parse_row_major(j.at("stationary_blocks"), n, n * q, origin + ": stationary_blocks");
      for (int l = 0; l < q; ++l) {
        f.stationary_poly.lag_blocks.push_back(stacked.middleCols(l * n, n));
      }
    }
    dgp.coefficients = compose_factorized(f);
    dgp.innovations = j.contains("innovation")
                          ? parse_innovations(j.at("innovation"), n, origin)
                          : InnovationSpec::iid_gaussian(Matrix::Identity(n, n));
    if (dgp.label.empty()) dgp.label = "factorized";
    return dgp;
  }
  if (kind == "coefficients") {
    for (const char* field : {"n", "p", "lag_blocks"}) {
      if (!j.contains(field)) throw ConfigError(origin + ": coefficient dgp needs '" + field + "'");
    }
    const int n = j.at("n").get<int>();
    const int p = j.at("p").get<int>();
    VarCoefficients c;
    c.n = n;
    c.p = p;
    const auto& blocks = j.at("lag_blocks");
    if (!blocks.is_array() || blocks.size() != static_cast<std::size_t>(p)) {
      throw ConfigError(origin + ": lag_blocks must hold p matrices");
    }
    for (int l = 0; l < p; ++l) {
      c.lag_blocks.push_back(parse_row_major(blocks[static_cast<std::size_t>(l)], n, n,
                                             origin + ": lag_blocks[" + std::to_string(l) + "]"));
    }
    if (j.contains("intercept") && !j.at("intercept").is_null()) {
      const auto& ic = j.at("intercept");
      if (!ic.is_array() || ic.size() != static_cast<std::size_t>(n)) {
        throw ConfigError(origin + ": intercept must have length n");
      }
      Vector v(n);
      for (int i = 0; i < n; ++i) v(i) = ic[static_cast<std::size_t>(i)].get<double>();
      c.intercept = std::move(v);
    }
    c.validate();
    dgp.coefficients = std::move(c);
    dgp.innovations = j.contains("innovation")
                          ? parse_innovations(j.at("innovation"), n, origin)
                          : InnovationSpec::iid_gaussian(Matrix::Identity(n, n));
    if (dgp.label.empty()) dgp.label = "var" + std::to_string(p);
    return dgp;
  }
  throw ConfigError(origin + ": unknown dgp kind '" + kind + "'");
}

McExperimentConfig parse_experiment(const json& j, const std::string& origin) {
  McExperimentConfig cfg;
  if (!j.contains("dgp")) throw ConfigError(origin + ": experiment needs a 'dgp' block");
  cfg.dgp = parse_dgp_json(j.at("dgp"), origin + ": dgp");
  if (j.contains("label")) cfg.dgp.label = j.at("label").get<std::string>();

  const int n = cfg.dgp.coefficients.n;
  cfg.lags = j.value("lags", cfg.dgp.coefficients.p);
  cfg.sample_length = j.value("sample_length", 240);
  cfg.reps = j.value("reps", 1000);
  cfg.bootstrap_draws = j.value("bootstrap_draws", 500);
  cfg.level = j.value("level", 0.90);
  cfg.root_seed = j.value("seed", std::uint64_t{0});

  const int response_1based = j.value("response_variable", 1);
  if (response_1based < 1 || response_1based > n) {
    throw ConfigError(origin + ": response_variable must be in 1.." + std::to_string(n));
  }
  cfg.response_variable = response_1based - 1;

  cfg.response_weights = Vector::Zero(n);
  if (j.contains("response_weights")) {
    const auto& w = j.at("response_weights");
    if (!w.is_array() || w.size() != static_cast<std::size_t>(n)) {
      throw ConfigError(origin + ": response_weights must have length n");
    }
    for (int i = 0; i < n; ++i) {
      cfg.response_weights(i) = w[static_cast<std::size_t>(i)].get<double>();
    }
  } else {
    cfg.response_weights(0) = 1.0;
  }

  if (!j.contains("horizons")) throw ConfigError(origin + ": experiment needs 'horizons'");
  for (const auto& h : j.at("horizons")) cfg.horizons.push_back(h.get<int>());

  if (!j.contains("methods")) throw ConfigError(origin + ": experiment needs 'methods'");
  for (const auto& m : j.at("methods")) {
    MethodSpec spec;
    if (m.is_string()) {
      spec.kind = method_kind_from_name(m.get<std::string>());
      spec.label = m.get<std::string>();
    } else {
      if (!m.contains("name")) throw ConfigError(origin + ": method entry needs 'name'");
      spec.kind = method_kind_from_name(m.at("name").get<std::string>());
      spec.label = m.value("label", m.at("name").get<std::string>());
      spec.lags = m.value("lags", 0);
      spec.bias_correct = m.value("bias_correct", true);
    }
    cfg.methods.push_back(std::move(spec));
  }
  return cfg;
}

json parse_json_text(const std::string& text, const std::string& origin) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError(origin + ": malformed JSON");
  return j;
}

}  // namespace

IngestedSeries read_series_csv(const std::string& path, int min_rows) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  IngestedSeries series;
  series.source_path = path;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path + ": empty file");
  series.column_names = split_csv_line(line);
  const std::size_t n = series.column_names.size();
  if (n == 0) throw ConfigError(path + ": no columns");

  std::vector<double> values;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    const auto cells = split_csv_line(line);
    if (cells.size() != n) {
      throw ConfigError(path + ": row " + std::to_string(rows) + " has " +
                        std::to_string(cells.size()) + " cells, expected " + std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (cells[c].empty()) {
        throw ConfigError(path + ": missing value at row " + std::to_string(rows) + ", column " +
                          std::to_string(c + 1));
      }
      values.push_back(parse_cell(cells[c], rows, c + 1, path));
    }
  }
  if (rows < static_cast<std::size_t>(min_rows)) {
    throw ConfigError(path + ": need at least " + std::to_string(min_rows) + " rows, got " +
                      std::to_string(rows));
  }
  series.data.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(n));
  std::size_t idx = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      series.data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[idx++];
    }
  }
  return series;
}

void write_series_csv(const Matrix& data, const std::vector<std::string>& column_names,
                      const std::string& path) {
  if (column_names.size() != static_cast<std::size_t>(data.cols())) {
    throw DimensionMismatch("write_series_csv: column name count");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  for (std::size_t c = 0; c < column_names.size(); ++c) {
    out << (c ? "," : "") << column_names[c];
  }
  out << "\n";
  for (Eigen::Index r = 0; r < data.rows(); ++r) {
    for (Eigen::Index c = 0; c < data.cols(); ++c) {
      out << (c ? "," : "") << format_double(data(r, c));
    }
    out << "\n";
  }
}

DgpSpec parse_dgp(const std::string& json_text, const std::string& origin) {
  return parse_dgp_json(parse_json_text(json_text, origin), origin);
}

DgpSpec load_dgp_json(const std::string& path) {
  return parse_dgp(read_file(path), path);
}

std::vector<McExperimentConfig> load_experiment_file(const std::string& path) {
  const json j = parse_json_text(read_file(path), path);
  if (!j.is_object()) throw ConfigError(path + ": expected a JSON object");
  const int version = j.value("schema_version", 0);
  if (version != 1) {
    throw ConfigError(path + ": unrecognized schema_version " + std::to_string(version));
  }
  std::vector<McExperimentConfig> configs;
  if (j.contains("experiments")) {
    for (std::size_t i = 0; i < j.at("experiments").size(); ++i) {
      configs.push_back(parse_experiment(j.at("experiments")[i],
                                         path + ": experiments[" + std::to_string(i) + "]"));
    }
  } else if (j.contains("experiment")) {
    configs.push_back(parse_experiment(j.at("experiment"), path + ": experiment"));
  } else {
    throw ConfigError(path + ": need 'experiment' or 'experiments'");
  }
  for (auto& c : configs) c.validate();
  return configs;
}

void write_mc_csv(const McResultTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << "dgp,method,horizon,coverage,median_length,failed,reps\n";
  for (const auto& row : table.rows) {
    out << row.dgp << "," << row.method << "," << row.horizon << ","
        << format_double(row.coverage) << "," << format_double(row.median_length) << ","
        << row.failed << "," << row.reps << "\n";
  }
}

McResultTable read_mc_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path + ": empty file");
  const auto header = split_csv_line(line);
  const std::vector<std::string> expected = {"dgp",           "method", "horizon", "coverage",
                                             "median_length", "failed", "reps"};
  if (header != expected) throw ConfigError(path + ": unexpected result-table header");
  McResultTable table;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    const auto cells = split_csv_line(line);
    if (cells.size() != expected.size()) {
      throw ConfigError(path + ": row " + std::to_string(rows) + " has wrong cell count");
    }
    McRow row;
    row.dgp = cells[0];
    row.method = cells[1];
    row.horizon = static_cast<int>(parse_cell(cells[2], rows, 3, path));
    row.coverage = parse_cell(cells[3], rows, 4, path);
    row.median_length = parse_cell(cells[4], rows, 5, path);
    row.failed = static_cast<int>(parse_cell(cells[5], rows, 6, path));
    row.reps = static_cast<int>(parse_cell(cells[6], rows, 7, path));
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_mc_json(const McResultTable& table, const std::string& path) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    rows.push_back({{"dgp", row.dgp},
                    {"method", row.method},
                    {"horizon", row.horizon},
                    {"coverage", row.coverage},
                    {"median_length", row.median_length},
                    {"failed", row.failed},
                    {"reps", row.reps},
                    {"wall_seconds", row.wall_seconds}});
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << json{{"rows", rows}}.dump(2) << "\n";
}

void write_estimates_csv(const std::vector<EstimateReport>& reports,
                         const std::vector<int>& horizons, const std::string& path) {
  if (reports.size() != horizons.size()) {
    throw DimensionMismatch("write_estimates_csv: report/horizon count");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << "horizon,point,se,lo,hi,method\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    out << horizons[i] << "," << format_double(r.point) << "," << format_double(r.se) << ","
        << format_double(r.lo) << "," << format_double(r.hi) << "," << r.method << "\n";
  }
}

}  // namespace lproj
