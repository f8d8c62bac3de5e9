#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "proxpat/errors.hpp"
#include "proxpat/point.hpp"

namespace proxpat {

namespace detail {

inline constexpr int kMaxPrecision = 12;

inline double pow10(int exponent) {
    static constexpr double table[] = {1.0,  1e1,  1e2, 1e3, 1e4,  1e5,  1e6,
                                       1e7,  1e8,  1e9, 1e10, 1e11, 1e12};
    return table[exponent];
}

} // namespace detail

/// Rounds raw * 10^precision to the nearest integer, half away from zero.
/// The scaled value is snapped to 15 significant decimal digits first, so a
/// hand-written decimal such as 0.835 lands on its intended grid cell (84 at
/// precision 2) instead of the one its binary representation falls into.
inline long long quantize_level(double raw, int precision) {
    if (!std::isfinite(raw)) {
        throw InvalidValue("quantize: raw value must be finite");
    }
    if (precision < 0 || precision > detail::kMaxPrecision) {
        throw InvalidValue("quantize: precision must be in [0, 12]");
    }
    const double scaled = raw * detail::pow10(precision);
    char buf[40];
    const auto out =
        std::to_chars(buf, buf + sizeof buf, scaled, std::chars_format::scientific, 14);
    double snapped = 0.0;
    std::from_chars(buf, out.ptr, snapped);
    if (std::abs(snapped) >= 9.0e18) {
        throw InvalidValue("quantize: scaled value exceeds the level range");
    }
    return std::llround(snapped);
}

/// One quantized probe reading: level = round(raw * 10^precision).
/// Equality and ordering compare the (level, precision) pair, so readings on
/// different grids never alias (level 63 means 0.63 at precision 2 but 0.063
/// at precision 3).
struct QuantizedValue {
    long long level = 0;
    int precision = 0;

    double real() const { return static_cast<double>(level) / detail::pow10(precision); }

    friend bool operator==(const QuantizedValue& a, const QuantizedValue& b) {
        return a.level == b.level && a.precision == b.precision;
    }
    friend std::strong_ordering operator<=>(const QuantizedValue& a, const QuantizedValue& b) {
        if (const auto by_level = a.level <=> b.level; by_level != 0) return by_level;
        return a.precision <=> b.precision;
    }
};

inline QuantizedValue quantize(double raw, int precision) {
    return QuantizedValue{quantize_level(raw, precision), precision};
}

/// The quantized description of a point: one value per probe, in probe order.
/// Equality is positionwise level equality; ordering is lexicographic.
class FeatureVector {
public:
    FeatureVector() = default;
    explicit FeatureVector(std::vector<QuantizedValue> values) : values_(std::move(values)) {}

    static FeatureVector from_levels(const std::vector<long long>& levels, int precision) {
        std::vector<QuantizedValue> values;
        values.reserve(levels.size());
        for (long long level : levels) {
            values.push_back(QuantizedValue{level, precision});
        }
        return FeatureVector(std::move(values));
    }

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    const QuantizedValue& operator[](std::size_t i) const { return values_[i]; }
    const std::vector<QuantizedValue>& values() const { return values_; }

    std::vector<long long> levels() const {
        std::vector<long long> out;
        out.reserve(values_.size());
        for (const auto& v : values_) {
            out.push_back(v.level);
        }
        return out;
    }

    friend bool operator==(const FeatureVector& a, const FeatureVector& b) {
        return a.values_ == b.values_;
    }
    friend auto operator<=>(const FeatureVector& a, const FeatureVector& b) {
        return std::lexicographical_compare_three_way(a.values_.begin(), a.values_.end(),
                                                      b.values_.begin(), b.values_.end());
    }

    friend std::ostream& operator<<(std::ostream& os, const FeatureVector& v) {
        os << '(';
        for (std::size_t i = 0; i < v.values_.size(); ++i) {
            if (i > 0) os << ',';
            os << v.values_[i].level;
        }
        return os << ')';
    }

private:
    std::vector<QuantizedValue> values_;
};

/// Same arity and the same precision at every position.
inline bool shapes_compatible(const FeatureVector& a, const FeatureVector& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].precision != b[i].precision) return false;
    }
    return true;
}

/// A scalar feature map with a fixed quantization precision. Built-in kinds
/// read a raw channel of the point; arbitrary scalar maps can be registered.
class ProbeDescriptor {
public:
    static ProbeDescriptor intensity(int precision = 2) {
        return channel("intensity", 0, precision);
    }

    static ProbeDescriptor channel(std::string id, std::size_t index, int precision) {
        ProbeDescriptor p;
        p.id_ = std::move(id);
        p.precision_ = check_precision(precision);
        p.channel_ = index;
        return p;
    }

    static ProbeDescriptor map(std::string id, std::function<double(const Point&)> fn,
                               int precision) {
        if (!fn) {
            throw std::invalid_argument("probe map must be callable");
        }
        ProbeDescriptor p;
        p.id_ = std::move(id);
        p.precision_ = check_precision(precision);
        p.fn_ = std::move(fn);
        return p;
    }

    const std::string& id() const { return id_; }
    int precision() const { return precision_; }

    double evaluate(const Point& point) const {
        double value = 0.0;
        if (fn_) {
            value = fn_(point);
        } else {
            if (channel_ >= point.raw.size()) {
                throw ProbeDomainError("probe '" + id_ + "': point has no channel " +
                                       std::to_string(channel_));
            }
            value = point.raw[channel_];
        }
        if (!std::isfinite(value)) {
            throw ProbeDomainError("probe '" + id_ + "' is undefined at point " +
                                   std::to_string(point.id));
        }
        return value;
    }

private:
    ProbeDescriptor() = default;

    static int check_precision(int precision) {
        if (precision < 0 || precision > detail::kMaxPrecision) {
            throw std::invalid_argument("probe precision must be in [0, 12]");
        }
        return precision;
    }

    std::string id_;
    int precision_ = 0;
    std::size_t channel_ = 0;
    std::function<double(const Point&)> fn_;
};

/// Ordered, non-empty collection of probes. Positions are meaningful: the
/// i-th probe fills the i-th slot of every feature vector.
class ProbeSet {
public:
    explicit ProbeSet(std::vector<ProbeDescriptor> probes) : probes_(std::move(probes)) {
        if (probes_.empty()) {
            throw std::invalid_argument("probe set must not be empty");
        }
        for (std::size_t i = 0; i < probes_.size(); ++i) {
            for (std::size_t j = i + 1; j < probes_.size(); ++j) {
                if (probes_[i].id() == probes_[j].id()) {
                    throw std::invalid_argument("duplicate probe id '" + probes_[i].id() + "'");
                }
            }
        }
    }

    std::size_t size() const { return probes_.size(); }
    const ProbeDescriptor& operator[](std::size_t i) const { return probes_[i]; }
    auto begin() const { return probes_.begin(); }
    auto end() const { return probes_.end(); }

private:
    std::vector<ProbeDescriptor> probes_;
};

/// Evaluates every probe at the point and quantizes the readings.
inline FeatureVector describe(const Point& point, const ProbeSet& probes) {
    std::vector<QuantizedValue> values;
    values.reserve(probes.size());
    for (const auto& probe : probes) {
        values.push_back(quantize(probe.evaluate(point), probe.precision()));
    }
    return FeatureVector(std::move(values));
}

/// A deduplicated, sorted set of feature vectors, remembering which region
/// it came from. All entries share one shape.
class DescriptionSet {
public:
    DescriptionSet() = default;

    DescriptionSet(std::vector<FeatureVector> entries, std::string source = {})
        : entries_(std::move(entries)), source_(std::move(source)) {
        std::sort(entries_.begin(), entries_.end());
        entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
        for (std::size_t i = 1; i < entries_.size(); ++i) {
            if (!shapes_compatible(entries_[0], entries_[i])) {
                throw ProbeSetMismatch("description set entries must share one shape");
            }
        }
    }

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<FeatureVector>& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }
    const FeatureVector& operator[](std::size_t i) const { return entries_[i]; }

    bool contains(const FeatureVector& v) const {
        return std::binary_search(entries_.begin(), entries_.end(), v);
    }

    /// Index of an entry, or npos when absent.
    std::size_t index_of(const FeatureVector& v) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), v);
        if (it == entries_.end() || !(*it == v)) return npos;
        return static_cast<std::size_t>(it - entries_.begin());
    }

    const std::string& source() const { return source_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::vector<FeatureVector> entries_;
    std::string source_;
};

} // namespace proxpat
