#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "regcal/rdm.hpp"
#include "regcal/wavefunction.hpp"

namespace regcal {

/// 17 significant digits (the CSV cell format).
std::string format_double(double value);
/// Shortest text that round-trips, for labels and console output.
std::string format_short(double value);

/// Comma-separated table with `#`-prefixed metadata lines before the header.
struct CsvTable {
  std::vector<std::string> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

std::string cell(double value);
std::string cell(int value);
std::string cell(std::string value);

/// Throws NumericalError if the file cannot be written.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
void write_json(const std::filesystem::path& path, const nlohmann::json& value);

nlohmann::json to_json(const StateLabel& label);
nlohmann::json to_json(const RelativeState& state);
nlohmann::json to_json(const EntanglementSpectrum& spectrum);
nlohmann::json to_json(const Eigen::MatrixXd& matrix);

}  // namespace regcal
