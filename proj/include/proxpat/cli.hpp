#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "proxpat/axioms.hpp"
#include "proxpat/errors.hpp"
#include "proxpat/groupoid.hpp"
#include "proxpat/image.hpp"
#include "proxpat/pattern.hpp"
#include "proxpat/serialize.hpp"

namespace proxpat {

inline constexpr int kSchemaVersion = 1;

/// One run's worth of parsed command-line state.
struct RunConfig {
    std::string command;              // analyze | classify | axioms
    std::vector<std::string> inputs;  // analyze: image; classify: reference, candidate

    int tile_width = 32;
    int tile_height = 32;
    int stride_x = 0;  // 0 = tile width
    int stride_y = 0;  // 0 = tile height

    int precision = 2;
    std::string op = "min";
    double tolerance = 0.0;
    double threshold = 0.75;

    std::string format = "json";  // json | csv
    std::string output = "-";     // - = stdout
    std::uint64_t seed = 0;

    // axioms command only
    int axiom_size = 5;       // points per generated space
    int axiom_spaces = 20;    // how many spaces to generate
    std::uint64_t axiom_budget = 1000;  // sampled triples per axiom on larger spaces
    bool axiom_exhaustive = false;      // force exhaustive triples up to axiom_size
    bool break_symmetry = false;        // fault injection: asymmetric relation

    TileSpec tile_spec() const {
        TileSpec spec;
        spec.tile_width = tile_width;
        spec.tile_height = tile_height;
        spec.stride_x = stride_x > 0 ? stride_x : tile_width;
        spec.stride_y = stride_y > 0 ? stride_y : tile_height;
        return spec;
    }

    void validate() const {
        if (command != "analyze" && command != "classify" && command != "axioms") {
            throw SpecError("unknown command: " + command);
        }
        if (command == "analyze" && inputs.size() != 1) {
            throw SpecError("analyze takes exactly one input image");
        }
        if (command == "classify" && inputs.size() != 2) {
            throw SpecError("classify takes exactly two input images (reference, candidate)");
        }
        if (tile_width <= 0 || tile_height <= 0) {
            throw SpecError("tile dimensions must be positive");
        }
        if (stride_x < 0 || stride_y < 0) {
            throw SpecError("strides must be non-negative (0 = tile size)");
        }
        if (precision < 0 || precision > 6) {
            throw SpecError("precision must lie in 0..6");
        }
        if (op != "min" && op != "max" && op != "first") {
            throw SpecError("op must be one of min, max, first");
        }
        if (tolerance < 0.0) {
            throw SpecError("tolerance must be non-negative");
        }
        if (threshold < 0.0 || threshold > 1.0) {
            throw SpecError("threshold must lie in [0,1]");
        }
        if (format != "json" && format != "csv") {
            throw SpecError("format must be json or csv");
        }
        if (command == "axioms") {
            if (axiom_size < 1 || axiom_size > 64) {
                throw SpecError("axiom space size must lie in 1..64");
            }
            if (axiom_exhaustive && axiom_size > 10) {
                throw SpecError("exhaustive axiom runs support at most 10 points");
            }
            if (axiom_spaces < 1) {
                throw SpecError("need at least one generated space");
            }
        }
    }
};

struct CommandResult {
    int exit_code = 0;
    Json document;
};

inline Json config_json(const RunConfig& config) {
    Json j;
    j["command"] = config.command;
    j["inputs"] = config.inputs;
    Json tile;
    tile["width"] = config.tile_width;
    tile["height"] = config.tile_height;
    j["tile"] = tile;
    const TileSpec spec = config.tile_spec();
    Json stride;
    stride["x"] = spec.stride_x;
    stride["y"] = spec.stride_y;
    j["stride"] = stride;
    j["precision"] = config.precision;
    j["op"] = config.op;
    j["tolerance"] = config.tolerance;
    j["threshold"] = config.threshold;
    j["format"] = config.format;
    j["seed"] = config.seed;
    if (config.command == "axioms") {
        Json a;
        a["size"] = config.axiom_size;
        a["spaces"] = config.axiom_spaces;
        a["budget"] = config.axiom_budget;
        a["exhaustive"] = config.axiom_exhaustive;
        a["break_symmetry"] = config.break_symmetry;
        j["axioms"] = a;
    }
    return j;
}

namespace detail {

/// Tile groupoids plus one pattern per tile (other tiles as candidates, in
/// tiling order).
struct ImageAnalysis {
    RasterImage image;
    std::vector<Groupoid> groupoids;
    ImagePatterns patterns;
};

inline ImageAnalysis analyze_image(const std::string& path, const RunConfig& config) {
    ImageAnalysis analysis;
    analysis.image = load_image(path);
    const ProbeSet probes({ProbeDescriptor::intensity(config.precision)});
    const DescriptiveSpace space = make_space(analysis.image, probes);
    const std::vector<Region> tiles = tile(space, analysis.image, config.tile_spec());
    const BinaryOp op = BinaryOp::named(config.op);

    analysis.groupoids.reserve(tiles.size());
    for (const Region& region : tiles) {
        analysis.groupoids.push_back(make_groupoid(region, op));
    }

    analysis.patterns.image_id = path;
    analysis.patterns.patterns.reserve(analysis.groupoids.size());
    for (std::size_t i = 0; i < analysis.groupoids.size(); ++i) {
        // The generator heads its own pattern, so it is excluded from the
        // candidate list rather than listed twice.
        std::vector<Groupoid> others;
        others.reserve(analysis.groupoids.size() - 1);
        for (std::size_t j = 0; j < analysis.groupoids.size(); ++j) {
            if (j != i) others.push_back(analysis.groupoids[j]);
        }
        analysis.patterns.patterns.push_back(
            generate_pattern(analysis.groupoids[i], others, config.tolerance));
    }
    return analysis;
}

inline Json image_json(const std::string& path, const ImageAnalysis& analysis) {
    Json j;
    j["path"] = path;
    j["width"] = analysis.image.width;
    j["height"] = analysis.image.height;
    j["tiles"] = analysis.groupoids.size();
    return j;
}

} // namespace detail

inline CommandResult cmd_analyze(const RunConfig& config) {
    config.validate();
    const detail::ImageAnalysis analysis = detail::analyze_image(config.inputs[0], config);

    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "analyze";
    doc["config"] = config_json(config);
    doc["image"] = detail::image_json(config.inputs[0], analysis);
    Json groupoids = Json::array();
    for (const Groupoid& g : analysis.groupoids) {
        groupoids.push_back(groupoid_summary(g));
    }
    doc["groupoids"] = groupoids;
    Json patterns = Json::array();
    for (const Pattern& p : analysis.patterns.patterns) {
        patterns.push_back(pattern_json(p));
    }
    doc["patterns"] = patterns;
    return CommandResult{0, std::move(doc)};
}

inline CommandResult cmd_classify(const RunConfig& config) {
    config.validate();
    const detail::ImageAnalysis reference = detail::analyze_image(config.inputs[0], config);
    const detail::ImageAnalysis candidate = detail::analyze_image(config.inputs[1], config);

    const ClassVerdict verdict = classify(candidate.patterns, reference.patterns,
                                          config.threshold, config.tolerance);

    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "classify";
    doc["config"] = config_json(config);
    doc["reference"] = detail::image_json(config.inputs[0], reference);
    doc["candidate"] = detail::image_json(config.inputs[1], candidate);
    doc["verdict"] = verdict_json(verdict);
    return CommandResult{verdict.matched() ? 0 : 1, std::move(doc)};
}

inline CommandResult cmd_axioms(const RunConfig& config) {
    config.validate();
    ValidationOptions options;
    options.sample_budget = config.axiom_budget;
    if (config.axiom_exhaustive) {
        options.exhaustive_max_points =
            std::max<std::size_t>(options.exhaustive_max_points,
                                  static_cast<std::size_t>(config.axiom_size));
    }

    bool all_passed = true;
    Json reports = Json::array();
    for (int i = 0; i < config.axiom_spaces; ++i) {
        const std::uint64_t space_seed = config.seed + static_cast<std::uint64_t>(i);
        const DescriptiveSpace space =
            make_random_space(space_seed, static_cast<std::size_t>(config.axiom_size));
        options.seed = space_seed;

        SubsetRelation spatial_relation;  // empty = the real relation
        if (config.break_symmetry) {
            // Deliberately asymmetric: nearness plus an ordering constraint
            // on the least member. Exists to demonstrate witness reporting.
            auto tables =
                std::make_shared<detail::MaskTables>(detail::build_mask_tables(space));
            spatial_relation = [tables](std::uint64_t a, std::uint64_t b) {
                if ((tables->closure(a) & tables->closure(b)) == 0) return false;
                return std::countr_zero(a) <= std::countr_zero(b);
            };
        }

        Json entry;
        entry["space"] = i;
        entry["seed"] = space_seed;
        entry["size"] = config.axiom_size;
        Json axioms = Json::array();
        for (const AxiomReport& r :
             validate_axioms(space, AxiomSystem::spatial, options, spatial_relation)) {
            all_passed = all_passed && r.passed;
            axioms.push_back(axiom_json(r));
        }
        for (const AxiomReport& r : validate_axioms(space, AxiomSystem::descriptive, options)) {
            all_passed = all_passed && r.passed;
            axioms.push_back(axiom_json(r));
        }
        entry["axioms"] = axioms;
        reports.push_back(entry);
    }

    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "axioms";
    doc["config"] = config_json(config);
    doc["spaces"] = config.axiom_spaces;
    doc["reports"] = reports;
    doc["all_passed"] = all_passed;
    return CommandResult{all_passed ? 0 : 1, std::move(doc)};
}

inline CommandResult run_command(const RunConfig& config) {
    if (config.command == "analyze") return cmd_analyze(config);
    if (config.command == "classify") return cmd_classify(config);
    if (config.command == "axioms") return cmd_axioms(config);
    throw SpecError("unknown command: " + config.command);
}

namespace detail {

inline std::string csv_cell(const Json& value) {
    if (value.is_null()) return "";
    if (value.is_string()) return value.get<std::string>();
    return value.dump();  // numbers/bools: canonical short form
}

inline void csv_row(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
    }
    out += '\n';
}

} // namespace detail

/// Flat single-table renderings of the per-command documents. Columns are
/// documented in the README.
inline std::string to_csv(const Json& document) {
    const std::string command = document.at("command").get<std::string>();
    std::string out;
    if (command == "analyze") {
        detail::csv_row(out, {"tile", "x", "y", "width", "height", "op", "total",
                              "carrier_size", "regular_elements", "regular", "pattern_members"});
        const Json& groupoids = document.at("groupoids");
        const Json& patterns = document.at("patterns");
        for (std::size_t i = 0; i < groupoids.size(); ++i) {
            const Json& g = groupoids[i];
            const Json& tile = g.at("tile");
            detail::csv_row(out, {detail::csv_cell(g.at("id")),
                                  detail::csv_cell(tile.is_null() ? Json() : tile.at("x")),
                                  detail::csv_cell(tile.is_null() ? Json() : tile.at("y")),
                                  detail::csv_cell(tile.is_null() ? Json() : tile.at("width")),
                                  detail::csv_cell(tile.is_null() ? Json() : tile.at("height")),
                                  detail::csv_cell(g.at("op")),
                                  detail::csv_cell(g.at("total")),
                                  detail::csv_cell(g.at("carrier_size")),
                                  detail::csv_cell(g.at("regular_elements")),
                                  detail::csv_cell(g.at("regular")),
                                  detail::csv_cell(patterns[i].at("member_count"))});
        }
    } else if (command == "classify") {
        detail::csv_row(out, {"image", "matched", "reference", "matched_elements", "total",
                              "fraction", "threshold", "salient", "candidate_pattern",
                              "reference_pattern"});
        const Json& verdict = document.at("verdict");
        const Json& best = verdict.at("best");
        const Json& witness = verdict.at("witness");
        detail::csv_row(
            out,
            {detail::csv_cell(verdict.at("image")), detail::csv_cell(verdict.at("matched")),
             detail::csv_cell(verdict.at("reference")), detail::csv_cell(best.at("matched")),
             detail::csv_cell(best.at("total")), detail::csv_cell(best.at("fraction")),
             detail::csv_cell(best.at("threshold")), detail::csv_cell(best.at("salient")),
             detail::csv_cell(witness.is_null() ? Json() : witness.at("candidate_pattern")),
             detail::csv_cell(witness.is_null() ? Json() : witness.at("reference_pattern"))});
    } else if (command == "axioms") {
        detail::csv_row(out, {"space", "seed", "size", "system", "axiom", "passed", "checked"});
        for (const Json& entry : document.at("reports")) {
            for (const Json& axiom : entry.at("axioms")) {
                detail::csv_row(out, {detail::csv_cell(entry.at("space")),
                                      detail::csv_cell(entry.at("seed")),
                                      detail::csv_cell(entry.at("size")),
                                      detail::csv_cell(axiom.at("system")),
                                      detail::csv_cell(axiom.at("axiom")),
                                      detail::csv_cell(axiom.at("passed")),
                                      detail::csv_cell(axiom.at("checked"))});
            }
        }
    } else {
        throw SpecError("no CSV rendering for command: " + command);
    }
    return out;
}

/// Serializes per the configured format and writes to the output path
/// ("-" = stdout). JSON is pretty-printed with a trailing newline.
inline void write_result(const CommandResult& result, const RunConfig& config) {
    const std::string text = config.format == "csv"
                                 ? to_csv(result.document)
                                 : result.document.dump(2) + "\n";
    if (config.output == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(config.output, std::ios::binary);
    if (!out) {
        throw IoError(config.output + ": cannot open for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError(config.output + ": write failed");
    }
}

} // namespace proxpat
