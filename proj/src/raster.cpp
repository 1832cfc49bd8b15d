#include "gi0/raster.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gi0/rng.hpp"

namespace gi0 {

namespace {

[[noreturn]] void io_error(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

std::string sidecar_path(const std::string& path) { return path + ".json"; }

static_assert(std::endian::native == std::endian::little,
              "raw-f32 raster IO assumes a little-endian host");

}  // namespace

bool Raster::valid() const {
    if (width == 0 || height == 0 || pixels.size() != width * height) return false;
    for (double p : pixels) {
        if (!(p >= 0.0) || !std::isfinite(p)) return false;
    }
    return true;
}

bool RoiSpec::fits(const Raster& r) const {
    return w * h >= 2 && x0 + w <= r.width && y0 + h <= r.height;
}

Raster load_raster(const std::string& path, RasterFormat format) {
    Raster r;
    if (format == RasterFormat::CsvMatrix) {
        std::ifstream in(path);
        if (!in) io_error(path, "cannot open");
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::stringstream ss(line);
            std::string tok;
            std::size_t cols = 0;
            while (std::getline(ss, tok, ',')) {
                r.pixels.push_back(std::stod(tok));
                ++cols;
            }
            if (r.width == 0) {
                r.width = cols;
            } else if (cols != r.width) {
                io_error(path, "ragged CSV matrix");
            }
            ++r.height;
        }
    } else {
        std::ifstream side(sidecar_path(path));
        if (!side) io_error(sidecar_path(path), "cannot open sidecar");
        nlohmann::json j;
        try {
            side >> j;
            r.width = j.at("width").get<std::size_t>();
            r.height = j.at("height").get<std::size_t>();
        } catch (const nlohmann::json::exception& e) {
            io_error(sidecar_path(path), std::string("malformed sidecar: ") + e.what());
        }
        std::ifstream in(path, std::ios::binary);
        if (!in) io_error(path, "cannot open");
        in.seekg(0, std::ios::end);
        const std::streamoff bytes = in.tellg();
        in.seekg(0);
        if (static_cast<std::size_t>(bytes) != r.width * r.height * 4) {
            io_error(path, "size mismatch between sidecar and payload");
        }
        std::vector<float> buf(r.width * r.height);
        in.read(reinterpret_cast<char*>(buf.data()), bytes);
        if (!in) io_error(path, "short read");
        r.pixels.assign(buf.begin(), buf.end());
    }
    for (double p : r.pixels) {
        if (!(p >= 0.0) || !std::isfinite(p)) io_error(path, "negative or non-finite pixel");
    }
    if (!r.valid()) io_error(path, "invalid raster");
    return r;
}

void save_raster(const Raster& r, const std::string& path, RasterFormat format) {
    if (!r.valid()) throw std::invalid_argument("save_raster: invalid raster");
    if (format == RasterFormat::CsvMatrix) {
        std::ofstream out(path);
        if (!out) io_error(path, "cannot open for writing");
        char buf[64];
        for (std::size_t y = 0; y < r.height; ++y) {
            for (std::size_t x = 0; x < r.width; ++x) {
                std::snprintf(buf, sizeof buf, "%.17g", r.at(x, y));
                out << buf << (x + 1 == r.width ? "\n" : ",");
            }
        }
    } else {
        std::vector<float> buf(r.pixels.begin(), r.pixels.end());
        std::ofstream out(path, std::ios::binary);
        if (!out) io_error(path, "cannot open for writing");
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size() * 4));
        nlohmann::json j{{"width", r.width}, {"height", r.height}};
        std::ofstream side(sidecar_path(path));
        if (!side) io_error(sidecar_path(path), "cannot open for writing");
        side << j.dump() << "\n";
    }
}

Sample roi_sample(const Raster& raster, const RoiSpec& roi) {
    if (!roi.fits(raster)) throw std::invalid_argument("roi_sample: ROI outside raster bounds");
    std::vector<double> v;
    v.reserve(roi.w * roi.h);
    for (std::size_t y = roi.y0; y < roi.y0 + roi.h; ++y) {
        for (std::size_t x = roi.x0; x < roi.x0 + roi.w; ++x) {
            v.push_back(raster.at(x, y));
        }
    }
    return Sample(std::move(v));
}

RoiFitTable roi_fit(const Raster& raster, const std::vector<RoiSpec>& rois,
                    const std::vector<EstimatorConfig>& methods) {
    for (const RoiSpec& roi : rois) {
        if (!roi.fits(raster)) throw std::invalid_argument("roi_fit: ROI outside raster bounds");
    }
    RoiFitTable table;
    for (const EstimatorConfig& m : methods) table.methods.push_back(m.label());
    for (const RoiSpec& roi : rois) {
        RoiFitRow row;
        row.roi = roi.name;
        Sample s = roi_sample(raster, roi);
        row.n = s.size();
        for (const EstimatorConfig& m : methods) {
            FitResult r = fit(s, m);
            row.alpha.push_back(r.params.alpha);
            row.status.push_back(status_name(r.status));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

Raster synthetic_scene(std::size_t width, std::size_t height, const TextureParams& background,
                       double reflector_value, std::size_t reflector_x, std::size_t reflector_y,
                       std::size_t reflector_size, std::uint64_t seed) {
    if (reflector_x + reflector_size > width || reflector_y + reflector_size > height) {
        throw std::invalid_argument("synthetic_scene: reflector outside raster");
    }
    Raster r;
    r.width = width;
    r.height = height;
    Sample bg = sample(width * height, background, seed);
    r.pixels = bg.values();
    for (std::size_t y = reflector_y; y < reflector_y + reflector_size; ++y) {
        for (std::size_t x = reflector_x; x < reflector_x + reflector_size; ++x) {
            r.pixels[y * width + x] = reflector_value;
        }
    }
    return r;
}

}  // namespace gi0
