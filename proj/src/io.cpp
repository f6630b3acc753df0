#include "regcal/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "regcal/parity.hpp"

namespace regcal {

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_short(double value) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("CsvTable: row has " + std::to_string(row.size()) +
                                " cells, header has " + std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::string cell(double value) { return format_double(value); }
std::string cell(int value) { return std::to_string(value); }
std::string cell(std::string value) { return value; }

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw NumericalError("cannot write " + path.string());
  return out;
}

void join(std::ofstream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  auto out = open_output(path);
  for (const auto& line : table.metadata) out << "# " << line << '\n';
  join(out, table.columns);
  for (const auto& row : table.rows) join(out, row);
  if (!out) throw NumericalError("write failed: " + path.string());
}

void write_json(const std::filesystem::path& path, const nlohmann::json& value) {
  auto out = open_output(path);
  out << value.dump(2) << '\n';
  if (!out) throw NumericalError("write failed: " + path.string());
}

nlohmann::json to_json(const StateLabel& label) {
  return {{"N", label.N},        {"parity", to_string(label.parity)},
          {"p", label.p},        {"n", label.n},
          {"g", label.g},        {"d2", label.d * label.d},
          {"E_total", label.energy_total}};
}

nlohmann::json to_json(const RelativeState& state) {
  const auto q = state.even_poly();
  return {{"meta", to_json(state.label())},
          {"even_poly", std::vector<double>(q.begin(), q.end())},
          {"norm_constant", state.norm_constant()},
          {"E_x", state.relative_energy()}};
}

nlohmann::json to_json(const EntanglementSpectrum& spectrum) {
  auto groups = nlohmann::json::array();
  for (const auto& [value, mult] : spectrum.groups)
    groups.push_back({{"value", value}, {"multiplicity", mult}});
  return {{"eigenvalues", spectrum.eigenvalues}, {"groups", groups}};
}

nlohmann::json to_json(const Eigen::MatrixXd& matrix) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    std::vector<double> row(matrix.cols());
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) row[j] = matrix(i, j);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace regcal
