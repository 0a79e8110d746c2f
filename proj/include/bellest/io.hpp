#pragma once

#include <string>

#include "bellest/linalg.hpp"

namespace bellest {

/// Load a two-qubit state from the JSON file format
/// {"matrix": [[[re,im], ...x4], ...x4]}; validated on load.
DensityMatrix load_state_file(const std::string& path);

/// Inverse of load_state_file.
void save_state_file(const std::string& path, const DensityMatrix& rho);

}  // namespace bellest
