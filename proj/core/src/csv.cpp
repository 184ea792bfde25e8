#include <cstdio>
#include <ostream>

#include "liedg/harness.hpp"

namespace liedg {

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  os << "# liedg v1\n";
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw InvalidSpec("CSV row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_real(row[i]);
    os << '\n';
  }
}

void write_trajectory_csv(std::ostream& os, const Simulation& sim, const std::vector<StepRecord>& records) {
  std::vector<std::string> header{"t"};
  for (auto& name : sim.state_names()) header.push_back(name);
  header.insert(header.end(), {"H", "H_err", sim.aux_name()});
  std::vector<std::vector<double>> rows;
  rows.reserve(records.size());
  for (const auto& r : records) {
    std::vector<double> row{r.t};
    row.insert(row.end(), r.state.data(), r.state.data() + r.state.size());
    row.insert(row.end(), {r.H, r.H_err, r.aux});
    rows.push_back(std::move(row));
  }
  write_csv(os, header, rows);
}

void write_convergence_csv(std::ostream& os, const ConvergenceResult& result) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < result.h.size(); ++i)
    rows.push_back({result.h[i], result.error[i], result.slope, result.reference_h});
  write_csv(os, {"h", "error", "slope", "h_ref"}, rows);
}

void write_comparison_csv(std::ostream& os, const ComparisonResult& result) {
  write_csv(os, result.columns, result.rows);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw InvalidSpec("cannot open output file '" + path + "'");
  return os;
}

}  // namespace liedg
