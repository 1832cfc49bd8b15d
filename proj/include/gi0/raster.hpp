#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gi0/estimators.hpp"
#include "gi0/model.hpp"

namespace gi0 {

enum class RasterFormat { CsvMatrix, RawF32 };

// Row-major nonnegative intensity image.
struct Raster {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<double> pixels;

    double at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
    bool valid() const;
};

struct RoiSpec {
    std::string name;
    std::size_t x0 = 0;
    std::size_t y0 = 0;
    std::size_t w = 0;
    std::size_t h = 0;

    bool fits(const Raster& r) const;
};

// raw-f32: little-endian IEEE floats plus a JSON sidecar
// {"width": W, "height": H} at <path>.json.
Raster load_raster(const std::string& path, RasterFormat format);
void save_raster(const Raster& r, const std::string& path, RasterFormat format);

// Row-major flattening of the ROI rectangle.
Sample roi_sample(const Raster& raster, const RoiSpec& roi);

struct RoiFitRow {
    std::string roi;
    std::size_t n = 0;
    std::vector<double> alpha;        // one entry per method
    std::vector<std::string> status;  // matching statuses
};

struct RoiFitTable {
    std::vector<std::string> methods;
    std::vector<RoiFitRow> rows;
};

RoiFitTable roi_fit(const Raster& raster, const std::vector<RoiSpec>& rois,
                    const std::vector<EstimatorConfig>& methods);

// Synthetic stand-in for a single-look scene with a corner reflector:
// G0 background plus a square block of constant high intensity.
Raster synthetic_scene(std::size_t width, std::size_t height, const TextureParams& background,
                       double reflector_value, std::size_t reflector_x, std::size_t reflector_y,
                       std::size_t reflector_size, std::uint64_t seed);

}  // namespace gi0
