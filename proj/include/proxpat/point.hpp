#pragma once

#include <cstdint>
#include <vector>

namespace proxpat {

using PointId = std::uint32_t;

/// Grid position of a point. Abstract spaces use (index, 0).
struct Location {
    int row = 0;
    int col = 0;

    friend bool operator==(const Location&, const Location&) = default;
};

/// A located point with raw feature inputs. For image pixels, raw[0] is the
/// normalized intensity; extra channels may carry whatever a registered probe
/// wants to read.
struct Point {
    PointId id = 0;
    Location location{};
    std::vector<double> raw;
};

} // namespace proxpat
