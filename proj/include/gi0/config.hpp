#pragma once

#include <string>
#include <vector>

#include "gi0/harness.hpp"
#include "gi0/raster.hpp"

namespace gi0 {

// Validating loaders for the JSON config formats consumed by the CLI.
// Schema (sweep): {alphas, gammas, sizes, replicates, master_seed,
// methods[], contamination?, threshold_rule?}.
ExperimentGrid grid_from_json_text(const std::string& text);

// [{"name": ..., "x0": ..., "y0": ..., "w": ..., "h": ...}, ...]
std::vector<RoiSpec> rois_from_json_text(const std::string& text);

}  // namespace gi0
