#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "proxpat/errors.hpp"
#include "proxpat/feature.hpp"
#include "proxpat/point.hpp"

namespace proxpat {

enum class MetricKind { discrete, euclidean, custom };

/// Pseudometric over points. The discrete metric (0 iff same point, else 1)
/// is the default for digital images and makes every finite set closed.
class Metric {
public:
    static Metric discrete() { return Metric(MetricKind::discrete, "discrete", nullptr); }

    static Metric euclidean() { return Metric(MetricKind::euclidean, "euclidean", nullptr); }

    static Metric custom(std::string name,
                         std::function<double(const Point&, const Point&)> fn) {
        if (!fn) {
            throw InvalidValue("custom metric must be callable");
        }
        return Metric(MetricKind::custom, std::move(name), std::move(fn));
    }

    MetricKind kind() const { return kind_; }
    const std::string& name() const { return name_; }

    double operator()(const Point& a, const Point& b) const {
        switch (kind_) {
        case MetricKind::discrete:
            return a.id == b.id ? 0.0 : 1.0;
        case MetricKind::euclidean: {
            const double dr = static_cast<double>(a.location.row - b.location.row);
            const double dc = static_cast<double>(a.location.col - b.location.col);
            return std::hypot(dr, dc);
        }
        case MetricKind::custom:
            return fn_(a, b);
        }
        return 0.0; // unreachable
    }

private:
    Metric(MetricKind kind, std::string name, std::function<double(const Point&, const Point&)> fn)
        : kind_(kind), name_(std::move(name)), fn_(std::move(fn)) {}

    MetricKind kind_;
    std::string name_;
    std::function<double(const Point&, const Point&)> fn_;
};

/// Origin and size of a rectangular tile window, in pixel coordinates
/// (x = column, y = row).
struct TileRect {
    int x = 0;
    int y = 0;
    int width = 0;
    int height = 0;

    friend bool operator==(const TileRect&, const TileRect&) = default;
};

class DescriptiveSpace;

/// A finite subset of a space's points. Regions borrow the space they were
/// created from; keep the space alive and in place while regions exist.
class Region {
public:
    Region() = default;

    const DescriptiveSpace& space() const { return *space_; }
    const DescriptiveSpace* space_ptr() const { return space_; }
    const std::vector<PointId>& point_ids() const { return ids_; }
    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    const std::string& id() const { return id_; }
    const std::optional<TileRect>& tile() const { return tile_; }

    bool contains(PointId id) const {
        return std::binary_search(ids_.begin(), ids_.end(), id);
    }

    friend bool operator==(const Region& a, const Region& b) {
        return a.space_ == b.space_ && a.ids_ == b.ids_;
    }

private:
    friend class DescriptiveSpace;

    Region(const DescriptiveSpace* space, std::vector<PointId> ids, std::string id,
           std::optional<TileRect> tile)
        : space_(space), ids_(std::move(ids)), id_(std::move(id)), tile_(tile) {}

    const DescriptiveSpace* space_ = nullptr;
    std::vector<PointId> ids_;
    std::string id_;
    std::optional<TileRect> tile_;
};

/// A finite point set with a probe set and a pseudometric. Hosts the spatial
/// and descriptive proximity relations.
class DescriptiveSpace {
public:
    DescriptiveSpace(std::vector<Point> points, ProbeSet probes,
                     Metric metric = Metric::discrete())
        : points_(std::move(points)), probes_(std::move(probes)), metric_(std::move(metric)) {
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (points_[i].id != static_cast<PointId>(i)) {
                throw InvalidValue("space points must carry ids 0..n-1 in order");
            }
        }
    }

    /// Builds an abstract space: point i gets location (i, 0) and the given
    /// raw channels.
    static DescriptiveSpace from_raw(const std::vector<std::vector<double>>& raws,
                                     ProbeSet probes, Metric metric = Metric::discrete()) {
        std::vector<Point> points;
        points.reserve(raws.size());
        for (std::size_t i = 0; i < raws.size(); ++i) {
            points.push_back(Point{static_cast<PointId>(i),
                                   Location{static_cast<int>(i), 0}, raws[i]});
        }
        return DescriptiveSpace(std::move(points), std::move(probes), std::move(metric));
    }

    std::size_t size() const { return points_.size(); }
    const Point& point(PointId id) const { return points_[id]; }
    std::span<const Point> points() const { return points_; }
    const ProbeSet& probes() const { return probes_; }
    const Metric& metric() const { return metric_; }

    double distance(PointId a, PointId b) const { return metric_(points_[a], points_[b]); }

    FeatureVector description(PointId id) const { return describe(points_[id], probes_); }

    Region region(std::vector<PointId> ids, std::string id = {},
                  std::optional<TileRect> tile = {}) const {
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        if (!ids.empty() && ids.back() >= points_.size()) {
            throw InvalidValue("region point id out of range");
        }
        return Region(this, std::move(ids), std::move(id), tile);
    }

    Region whole(std::string id = "X") const {
        std::vector<PointId> ids(points_.size());
        for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<PointId>(i);
        return Region(this, std::move(ids), std::move(id), std::nullopt);
    }

private:
    std::vector<Point> points_;
    ProbeSet probes_;
    Metric metric_;
};

namespace detail {

inline void require_nonempty(const Region& region, const char* op) {
    if (region.empty()) {
        throw EmptyRegion(std::string(op) + ": region must be non-empty");
    }
}

inline void require_same_space(const Region& a, const Region& b, const char* op) {
    if (a.space_ptr() != b.space_ptr()) {
        throw SpaceMismatch(std::string(op) + ": regions belong to different spaces");
    }
}

} // namespace detail

/// Hausdorff point-to-set distance: the least metric distance from x to a
/// member of the region.
inline double point_set_distance(const Point& x, const Region& region) {
    detail::require_nonempty(region, "point_set_distance");
    const auto& space = region.space();
    double best = std::numeric_limits<double>::infinity();
    for (PointId id : region.point_ids()) {
        best = std::min(best, space.metric()(x, space.point(id)));
    }
    return best;
}

/// Metric closure: every point of the space at distance zero from the region.
/// Under the discrete metric this is the region itself.
inline Region spatial_closure(const Region& region) {
    detail::require_nonempty(region, "spatial_closure");
    const auto& space = region.space();
    if (space.metric().kind() == MetricKind::discrete) {
        return region;
    }
    std::vector<PointId> ids;
    for (PointId x = 0; x < space.size(); ++x) {
        for (PointId member : region.point_ids()) {
            if (space.distance(x, member) == 0.0) {
                ids.push_back(x);
                break;
            }
        }
    }
    if (ids == region.point_ids()) {
        return region;
    }
    return space.region(std::move(ids));
}

/// Spatial nearness: the closures share at least one point.
inline bool near(const Region& a, const Region& b) {
    detail::require_same_space(a, b, "near");
    detail::require_nonempty(a, "near");
    detail::require_nonempty(b, "near");
    const Region ca = spatial_closure(a);
    const Region cb = spatial_closure(b);
    const auto& xs = ca.point_ids();
    const auto& ys = cb.point_ids();
    std::size_t i = 0, j = 0;
    while (i < xs.size() && j < ys.size()) {
        if (xs[i] == ys[j]) return true;
        if (xs[i] < ys[j]) ++i; else ++j;
    }
    return false;
}

/// Descriptions of every point of the region, deduplicated.
inline DescriptionSet descriptions_of(const Region& region, const ProbeSet& probes) {
    detail::require_nonempty(region, "descriptions_of");
    const auto& space = region.space();
    std::vector<FeatureVector> entries;
    entries.reserve(region.size());
    for (PointId id : region.point_ids()) {
        entries.push_back(describe(space.point(id), probes));
    }
    return DescriptionSet(std::move(entries), region.id());
}

inline DescriptionSet descriptions_of(const Region& region) {
    detail::require_nonempty(region, "descriptions_of");
    return descriptions_of(region, region.space().probes());
}

/// Points of A ∪ B whose description occurs in both description sets.
/// Operates on the regions as given; nearness applies closures first.
inline Region descriptive_intersection(const Region& a, const Region& b) {
    detail::require_same_space(a, b, "descriptive_intersection");
    detail::require_nonempty(a, "descriptive_intersection");
    detail::require_nonempty(b, "descriptive_intersection");
    const auto& space = a.space();
    const DescriptionSet da = descriptions_of(a);
    const DescriptionSet db = descriptions_of(b);

    std::vector<PointId> united;
    united.reserve(a.size() + b.size());
    std::set_union(a.point_ids().begin(), a.point_ids().end(), b.point_ids().begin(),
                   b.point_ids().end(), std::back_inserter(united));

    std::vector<PointId> ids;
    for (PointId id : united) {
        const FeatureVector d = space.description(id);
        if (da.contains(d) && db.contains(d)) {
            ids.push_back(id);
        }
    }
    return space.region(std::move(ids));
}

/// Descriptive nearness: the closures have a non-empty descriptive
/// intersection, i.e. they share at least one description.
inline bool descriptively_near(const Region& a, const Region& b) {
    detail::require_same_space(a, b, "descriptively_near");
    detail::require_nonempty(a, "descriptively_near");
    detail::require_nonempty(b, "descriptively_near");
    return !descriptive_intersection(spatial_closure(a), spatial_closure(b)).empty();
}

/// Every point of the space whose description occurs among the descriptions
/// of the region's closure. Always a superset of the region.
inline Region descriptive_closure(const Region& region) {
    detail::require_nonempty(region, "descriptive_closure");
    const auto& space = region.space();
    const DescriptionSet closed = descriptions_of(spatial_closure(region));
    std::vector<PointId> ids;
    for (PointId x = 0; x < space.size(); ++x) {
        if (closed.contains(space.description(x))) {
            ids.push_back(x);
        }
    }
    return space.region(std::move(ids));
}

} // namespace proxpat
