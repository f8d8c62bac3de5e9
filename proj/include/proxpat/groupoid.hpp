#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "proxpat/errors.hpp"
#include "proxpat/feature.hpp"
#include "proxpat/space.hpp"

namespace proxpat {

/// Binary operation on feature vectors. min/max combine positionwise on
/// quantized levels; first projects onto the left operand; custom ops may be
/// partial maps (return nullopt where undefined).
class BinaryOp {
public:
    using Fn = std::function<std::optional<FeatureVector>(const FeatureVector&,
                                                          const FeatureVector&)>;

    static BinaryOp min() {
        return BinaryOp("min", [](const FeatureVector& a, const FeatureVector& b) {
            return combine(a, b, [](long long x, long long y) { return x < y ? x : y; });
        });
    }

    static BinaryOp max() {
        return BinaryOp("max", [](const FeatureVector& a, const FeatureVector& b) {
            return combine(a, b, [](long long x, long long y) { return x < y ? y : x; });
        });
    }

    static BinaryOp first() {
        return BinaryOp("first",
                        [](const FeatureVector& a, const FeatureVector&) {
                            return std::optional<FeatureVector>(a);
                        });
    }

    static BinaryOp custom(std::string name, Fn fn) {
        if (!fn) {
            throw std::invalid_argument("custom binary op must be callable");
        }
        return BinaryOp(std::move(name), std::move(fn));
    }

    /// Parses a CLI op name; custom ops cannot be named from the outside.
    static BinaryOp named(const std::string& name) {
        if (name == "min") return min();
        if (name == "max") return max();
        if (name == "first") return first();
        throw InvalidValue("unknown binary op: " + name);
    }

    const std::string& name() const { return name_; }

    std::optional<FeatureVector> operator()(const FeatureVector& a,
                                            const FeatureVector& b) const {
        return fn_(a, b);
    }

private:
    BinaryOp(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

    template <class LevelOp>
    static std::optional<FeatureVector> combine(const FeatureVector& a, const FeatureVector& b,
                                                LevelOp level_op) {
        if (!shapes_compatible(a, b)) {
            throw ProbeSetMismatch("binary op operands have different probe shapes");
        }
        std::vector<QuantizedValue> values;
        values.reserve(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            values.push_back(QuantizedValue{level_op(a[i].level, b[i].level), a[i].precision});
        }
        return FeatureVector(std::move(values));
    }

    std::string name_;
    Fn fn_;
};

/// Distance between equal-shape feature vectors: per precision class, the
/// sum of absolute level differences scaled back by 10^-precision. Zero iff
/// the vectors are equal.
inline double pseudometric(const FeatureVector& a, const FeatureVector& b) {
    if (!shapes_compatible(a, b)) {
        throw ProbeSetMismatch("pseudometric requires matching probe shapes");
    }
    std::map<int, double> sums;  // precision -> sum of |level delta|
    for (std::size_t i = 0; i < a.size(); ++i) {
        const long long x = a[i].level;
        const long long y = b[i].level;
        const std::uint64_t diff = x > y
                                       ? static_cast<std::uint64_t>(x) - static_cast<std::uint64_t>(y)
                                       : static_cast<std::uint64_t>(y) - static_cast<std::uint64_t>(x);
        sums[a[i].precision] += static_cast<double>(diff);
    }
    double total = 0.0;
    for (const auto& [precision, sum] : sums) {
        total += sum / detail::pow10(precision);
    }
    return total;
}

/// Neighbourly elements: pseudometric within tolerance. Tolerance 0 (the
/// default semantics) is exact description equality.
inline bool elements_neighbourly(const FeatureVector& a, const FeatureVector& b,
                                 double tolerance = 0.0) {
    if (tolerance < 0.0) {
        throw InvalidValue("tolerance must be non-negative");
    }
    if (tolerance == 0.0) {
        if (!shapes_compatible(a, b)) {
            throw ProbeSetMismatch("elements_neighbourly requires matching probe shapes");
        }
        return a == b;
    }
    return pseudometric(a, b) <= tolerance;
}

/// A description set closed (fully or partially) under a binary operation.
/// Total means every carrier pair is defined; otherwise the domain is
/// exactly the pairs whose result lands back in the carrier.
class Groupoid {
public:
    Groupoid(DescriptionSet carrier, BinaryOp op, std::string region_id = {},
             std::optional<TileRect> tile = {})
        : carrier_(std::move(carrier)),
          op_(std::move(op)),
          region_id_(std::move(region_id)),
          tile_(tile) {
        if (carrier_.empty()) {
            throw EmptyRegion("groupoid carrier must be non-empty");
        }
        const std::size_t n = carrier_.size();
        result_.assign(n * n, npos);
        total_ = true;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const auto value = op_(carrier_[i], carrier_[j]);
                const std::size_t k = value ? carrier_.index_of(*value) : npos;
                result_[i * n + j] = k;
                if (k == npos) total_ = false;
            }
        }
    }

    const DescriptionSet& carrier() const { return carrier_; }
    const BinaryOp& op() const { return op_; }
    bool total() const { return total_; }
    const std::string& region_id() const { return region_id_; }
    const std::optional<TileRect>& tile() const { return tile_; }
    std::size_t size() const { return carrier_.size(); }

    bool defined(const FeatureVector& a, const FeatureVector& b) const {
        return result_[require_index(a) * carrier_.size() + require_index(b)] != npos;
    }

    FeatureVector apply(const FeatureVector& a, const FeatureVector& b) const {
        const std::size_t k = result_[require_index(a) * carrier_.size() + require_index(b)];
        if (k == npos) {
            throw UndefinedPair("operation undefined on this carrier pair");
        }
        return carrier_[k];
    }

    /// Result index of carrier[i] op carrier[j]; npos when undefined.
    std::size_t result_index(std::size_t i, std::size_t j) const {
        return result_[i * carrier_.size() + j];
    }

    static constexpr std::size_t npos = DescriptionSet::npos;

private:
    std::size_t require_index(const FeatureVector& v) const {
        const std::size_t i = carrier_.index_of(v);
        if (i == npos) {
            throw NotInCarrier("operand is not a carrier element");
        }
        return i;
    }

    DescriptionSet carrier_;
    BinaryOp op_;
    bool total_ = false;
    std::string region_id_;
    std::optional<TileRect> tile_;
    std::vector<std::size_t> result_;  // n*n table of carrier indices, npos = undefined
};

/// Groupoid over the region's description set. Total when the op is closed
/// on the carrier; partial otherwise, with the closed pairs as domain.
inline Groupoid make_groupoid(const Region& region, const ProbeSet& probes, BinaryOp op) {
    if (region.empty()) {
        throw EmptyRegion("make_groupoid: region must be non-empty");
    }
    return Groupoid(descriptions_of(region, probes), std::move(op), region.id(), region.tile());
}

inline Groupoid make_groupoid(const Region& region, BinaryOp op) {
    if (region.empty()) {
        throw EmptyRegion("make_groupoid: region must be non-empty");
    }
    return make_groupoid(region, region.space().probes(), std::move(op));
}

inline Groupoid make_groupoid(DescriptionSet carrier, BinaryOp op, std::string id = {}) {
    return Groupoid(std::move(carrier), std::move(op), std::move(id));
}

/// Regular element: some carrier y satisfies (a o y) o a = a. Association is
/// fixed left-to-right; undefined intermediate pairs are skipped.
inline bool is_regular_element(const Groupoid& g, const FeatureVector& a) {
    const std::size_t ia = g.carrier().index_of(a);
    if (ia == Groupoid::npos) {
        throw NotInCarrier("is_regular_element: not a carrier element");
    }
    const std::size_t n = g.size();
    for (std::size_t y = 0; y < n; ++y) {
        const std::size_t t = g.result_index(ia, y);
        if (t == Groupoid::npos) continue;
        if (g.result_index(t, ia) == ia) return true;
    }
    return false;
}

inline std::size_t regular_element_count(const Groupoid& g) {
    std::size_t count = 0;
    for (const FeatureVector& a : g.carrier()) {
        if (is_regular_element(g, a)) ++count;
    }
    return count;
}

/// Regular groupoid: every carrier element is regular.
inline bool is_regular_groupoid(const Groupoid& g) {
    return regular_element_count(g) == g.size();
}

/// Neighbourly groupoids: some pair of carrier elements, one from each, is
/// neighbourly at the tolerance.
inline bool groupoids_neighbourly(const Groupoid& g1, const Groupoid& g2,
                                  double tolerance = 0.0) {
    if (tolerance < 0.0) {
        throw InvalidValue("tolerance must be non-negative");
    }
    const DescriptionSet& a = g1.carrier();
    const DescriptionSet& b = g2.carrier();
    if (!shapes_compatible(a[0], b[0])) {
        throw ProbeSetMismatch("groupoids_neighbourly requires matching probe shapes");
    }
    if (tolerance == 0.0) {
        // Both carriers are sorted: march them in step.
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            const auto cmp = a[i] <=> b[j];
            if (cmp == 0) return true;
            if (cmp < 0) ++i; else ++j;
        }
        return false;
    }
    for (const FeatureVector& x : a) {
        for (const FeatureVector& y : b) {
            if (pseudometric(x, y) <= tolerance) return true;
        }
    }
    return false;
}

} // namespace proxpat
