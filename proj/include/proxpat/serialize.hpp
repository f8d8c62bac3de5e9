#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "proxpat/axioms.hpp"
#include "proxpat/groupoid.hpp"
#include "proxpat/image.hpp"
#include "proxpat/pattern.hpp"
#include "proxpat/space.hpp"

namespace proxpat {

/// Key-order-preserving JSON so documents are byte-stable run to run.
using Json = nlohmann::ordered_json;

inline Json tile_json(const std::optional<TileRect>& tile) {
    if (!tile) return nullptr;
    Json j;
    j["x"] = tile->x;
    j["y"] = tile->y;
    j["width"] = tile->width;
    j["height"] = tile->height;
    return j;
}

inline Json axiom_json(const AxiomReport& report) {
    Json j;
    j["axiom"] = report.axiom;
    j["system"] = to_string(report.system);
    j["passed"] = report.passed;
    j["checked"] = report.checked;
    if (report.witness) {
        Json w;
        w["a"] = report.witness->a;
        w["b"] = report.witness->b;
        w["c"] = report.witness->c;
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

inline Json levels_json(const FeatureVector& v) {
    return Json(v.levels());
}

inline Json groupoid_summary(const Groupoid& g) {
    Json j;
    j["id"] = g.region_id();
    j["tile"] = tile_json(g.tile());
    j["op"] = g.op().name();
    j["total"] = g.total();
    j["carrier_size"] = g.size();
    Json carrier = Json::array();
    for (const FeatureVector& v : g.carrier()) {
        carrier.push_back(levels_json(v));
    }
    j["carrier"] = carrier;
    const std::size_t regular = regular_element_count(g);
    j["regular_elements"] = regular;
    j["regular"] = regular == g.size();
    return j;
}

inline Json score_json(const SaliencyScore& s) {
    Json j;
    j["matched"] = s.matched;
    j["total"] = s.total;
    j["fraction"] = s.fraction;
    j["threshold"] = s.threshold;
    j["salient"] = s.salient;
    return j;
}

inline Json pattern_json(const Pattern& p) {
    Json j;
    j["generator"] = p.generator.region_id();
    j["tile"] = tile_json(p.generator.tile());
    j["tolerance"] = p.tolerance;
    j["member_count"] = p.members.size();
    Json members = Json::array();
    for (const PatternMember& m : p.members) {
        Json mj;
        mj["id"] = m.id;
        mj["tile"] = tile_json(m.tile);
        members.push_back(mj);
    }
    j["members"] = members;
    return j;
}

inline Json verdict_json(const ClassVerdict& v) {
    Json j;
    j["image"] = v.image_id;
    j["matched"] = v.matched();
    j["reference"] = v.matched_reference ? Json(*v.matched_reference) : Json(nullptr);
    j["best"] = score_json(v.best);
    if (v.witness) {
        Json w;
        w["candidate_pattern"] = v.witness->candidate_pattern;
        w["reference_pattern"] = v.witness->reference_pattern;
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

namespace detail {

inline std::string levels_key(const FeatureVector& v) {
    std::string key;
    const auto levels = v.levels();
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (i) key += ',';
        key += std::to_string(levels[i]);
    }
    return key;
}

} // namespace detail

/// Region summary: origin window plus a histogram of quantized descriptions
/// (keys are comma-joined levels, in ascending description order).
inline Json region_report(const Region& region) {
    Json j;
    j["id"] = region.id();
    j["tile"] = tile_json(region.tile());
    j["points"] = region.size();
    std::map<FeatureVector, std::size_t> counts;
    for (PointId id : region.point_ids()) {
        ++counts[region.space().description(id)];
    }
    Json histogram = Json::object();
    for (const auto& [vector, count] : counts) {
        histogram[detail::levels_key(vector)] = count;
    }
    j["histogram"] = histogram;
    return j;
}

} // namespace proxpat
