#pragma once

#include <cctype>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "proxpat/errors.hpp"
#include "proxpat/space.hpp"

namespace proxpat {

/// Grayscale raster, row-major, intensities normalized to [0,1].
struct RasterImage {
    int width = 0;
    int height = 0;
    std::vector<double> intensities;

    double at(int row, int col) const {
        return intensities[static_cast<std::size_t>(row) * width + col];
    }
};

namespace detail {

inline void check_raster(const RasterImage& image) {
    if (image.width <= 0 || image.height <= 0) {
        throw InvalidValue("raster dimensions must be positive");
    }
    if (image.intensities.size() !=
        static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height)) {
        throw InvalidValue("raster grid length must equal width*height");
    }
    for (double v : image.intensities) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw InvalidValue("raster intensities must lie in [0,1]");
        }
    }
}

/// Tokenizer over a PNM header/body; '#' starts a comment through
/// end-of-line, whitespace separates tokens.
class PnmCursor {
public:
    PnmCursor(const std::string& data, const std::string& path) : data_(data), path_(path) {}

    std::size_t pos() const { return pos_; }

    void skip_separators() {
        while (pos_ < data_.size()) {
            const unsigned char ch = static_cast<unsigned char>(data_[pos_]);
            if (std::isspace(ch)) {
                ++pos_;
            } else if (ch == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::string next_token() {
        skip_separators();
        if (pos_ >= data_.size()) {
            throw FormatError(path_ + ": truncated header");
        }
        const std::size_t start = pos_;
        while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_])) &&
               data_[pos_] != '#') {
            ++pos_;
        }
        return data_.substr(start, pos_ - start);
    }

    long next_int(const char* what) {
        const std::string token = next_token();
        long value = 0;
        std::size_t idx = 0;
        try {
            value = std::stol(token, &idx);
        } catch (const std::exception&) {
            throw FormatError(path_ + ": bad " + what + " '" + token + "'");
        }
        if (idx != token.size()) {
            throw FormatError(path_ + ": bad " + what + " '" + token + "'");
        }
        return value;
    }

    /// P5/P6 rasters begin after exactly one whitespace byte past maxval.
    void expect_raster_separator() {
        if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
            throw FormatError(path_ + ": missing raster separator");
        }
        ++pos_;
    }

private:
    const std::string& data_;
    const std::string& path_;
    std::size_t pos_ = 0;
};

inline double luma601(double r, double g, double b) {
    return 0.299 * r + 0.587 * g + 0.114 * b;
}

} // namespace detail

/// Loads a portable graymap/pixmap (P2/P5 gray, P3/P6 color via BT.601
/// luma). Samples normalize by maxval, so 8-bit divides by 255 and 16-bit by
/// 65535. Binary multi-byte samples are big-endian.
inline RasterImage load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path + ": cannot open");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError(path + ": read failed");
    }
    const std::string data = buffer.str();

    detail::PnmCursor cursor(data, path);
    const std::string magic = cursor.next_token();
    const bool ascii = magic == "P2" || magic == "P3";
    const bool binary = magic == "P5" || magic == "P6";
    if (!ascii && !binary) {
        throw FormatError(path + ": unsupported format '" + magic + "'");
    }
    const bool color = magic == "P3" || magic == "P6";

    const long width = cursor.next_int("width");
    const long height = cursor.next_int("height");
    const long maxval = cursor.next_int("maxval");
    if (width <= 0 || height <= 0) {
        throw FormatError(path + ": dimensions must be positive");
    }
    if (maxval < 1 || maxval > 65535) {
        throw FormatError(path + ": maxval out of range 1..65535");
    }

    const std::size_t pixels = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    const std::size_t samples = pixels * (color ? 3 : 1);
    std::vector<long> raw;
    raw.reserve(samples);

    if (ascii) {
        for (std::size_t i = 0; i < samples; ++i) {
            raw.push_back(cursor.next_int("sample"));
        }
    } else {
        cursor.expect_raster_separator();
        const std::size_t bytes_per_sample = maxval > 255 ? 2 : 1;
        std::size_t pos = cursor.pos();
        if (data.size() - pos < samples * bytes_per_sample) {
            throw FormatError(path + ": truncated raster");
        }
        for (std::size_t i = 0; i < samples; ++i) {
            if (bytes_per_sample == 1) {
                raw.push_back(static_cast<unsigned char>(data[pos++]));
            } else {
                const long hi = static_cast<unsigned char>(data[pos++]);
                const long lo = static_cast<unsigned char>(data[pos++]);
                raw.push_back((hi << 8) | lo);
            }
        }
    }

    RasterImage image;
    image.width = static_cast<int>(width);
    image.height = static_cast<int>(height);
    image.intensities.reserve(pixels);
    const double scale = static_cast<double>(maxval);
    for (std::size_t i = 0; i < samples; i += color ? 3 : 1) {
        for (std::size_t k = 0; k < (color ? 3u : 1u); ++k) {
            if (raw[i + k] < 0 || raw[i + k] > maxval) {
                throw FormatError(path + ": sample out of range");
            }
        }
        if (color) {
            image.intensities.push_back(detail::luma601(raw[i] / scale, raw[i + 1] / scale,
                                                        raw[i + 2] / scale));
        } else {
            image.intensities.push_back(raw[i] / scale);
        }
    }
    return image;
}

/// Sliding-window tiling parameters, in pixels.
struct TileSpec {
    int tile_width = 0;
    int tile_height = 0;
    int stride_x = 0;
    int stride_y = 0;
};

/// Space over an image: one point per pixel, row-major ids, location
/// (row, col), a single raw intensity channel.
inline DescriptiveSpace make_space(const RasterImage& image, ProbeSet probes,
                                   Metric metric = Metric::discrete()) {
    detail::check_raster(image);
    std::vector<Point> points;
    points.reserve(image.intensities.size());
    for (int r = 0; r < image.height; ++r) {
        for (int c = 0; c < image.width; ++c) {
            points.push_back(Point{static_cast<PointId>(points.size()), Location{r, c},
                                   {image.at(r, c)}});
        }
    }
    return DescriptiveSpace(std::move(points), std::move(probes), std::move(metric));
}

/// Deterministic row-major window enumeration at stride offsets; partial
/// edge windows are dropped rather than padded. Regions are named
/// tile_r{row}_c{col} by their origin and carry their window.
inline std::vector<Region> tile(const DescriptiveSpace& space, const RasterImage& image,
                                const TileSpec& spec) {
    detail::check_raster(image);
    if (space.size() != image.intensities.size()) {
        throw SpaceMismatch("tile: space does not cover this image");
    }
    if (spec.tile_width <= 0 || spec.tile_height <= 0) {
        throw SpecError("tile dimensions must be positive");
    }
    if (spec.stride_x <= 0 || spec.stride_y <= 0) {
        throw SpecError("strides must be positive");
    }
    if (spec.tile_width > image.width || spec.tile_height > image.height) {
        throw SpecError("tile larger than image");
    }

    std::vector<Region> regions;
    for (int y0 = 0; y0 + spec.tile_height <= image.height; y0 += spec.stride_y) {
        for (int x0 = 0; x0 + spec.tile_width <= image.width; x0 += spec.stride_x) {
            std::vector<PointId> ids;
            ids.reserve(static_cast<std::size_t>(spec.tile_width) * spec.tile_height);
            for (int r = y0; r < y0 + spec.tile_height; ++r) {
                for (int c = x0; c < x0 + spec.tile_width; ++c) {
                    ids.push_back(static_cast<PointId>(r * image.width + c));
                }
            }
            const std::string id = "tile_r" + std::to_string(y0) + "_c" + std::to_string(x0);
            regions.push_back(space.region(std::move(ids), id,
                                           TileRect{x0, y0, spec.tile_width, spec.tile_height}));
        }
    }
    return regions;
}

} // namespace proxpat
