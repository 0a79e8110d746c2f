#include "bellest/io.hpp"

#include <fstream>

#include <json.hpp>

namespace bellest {

DensityMatrix load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParamOutOfRangeError("cannot open state file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParamOutOfRangeError(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!j.contains("matrix") || !j["matrix"].is_array() || j["matrix"].size() != 4)
    throw ParamOutOfRangeError("state file must hold a 4x4 \"matrix\" array");
  Mat4 m;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& row = j["matrix"][i];
    if (!row.is_array() || row.size() != 4)
      throw ParamOutOfRangeError("state file rows must have 4 entries");
    for (std::size_t k = 0; k < 4; ++k) {
      const auto& entry = row[k];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
        throw ParamOutOfRangeError("state file entries must be [re, im] pairs");
      m(i, k) = cplx(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return DensityMatrix(m);
}

void save_state_file(const std::string& path, const DensityMatrix& rho) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < 4; ++k)
      row.push_back({rho(i, k).real(), rho(i, k).imag()});
    rows.push_back(row);
  }
  std::ofstream out(path);
  if (!out) throw ParamOutOfRangeError("cannot write state file: " + path);
  out << nlohmann::json{{"matrix", rows}}.dump(2) << "\n";
}

}  // namespace bellest
