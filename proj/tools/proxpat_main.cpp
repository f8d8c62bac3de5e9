// Command-line front end: analyze an image's tile groupoids and patterns,
// classify one image against another, or validate the proximity axioms on
// generated spaces.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "proxpat/proxpat.hpp"

namespace {

// Accepts "WxH" (or a bare "N" for square), e.g. --tile 32x32.
std::pair<int, int> parse_dims(const std::string& text, const std::string& flag) {
    const auto cross = text.find_first_of("xX");
    try {
        if (cross == std::string::npos) {
            const int n = std::stoi(text);
            return {n, n};
        }
        const int w = std::stoi(text.substr(0, cross));
        const int h = std::stoi(text.substr(cross + 1));
        return {w, h};
    } catch (const std::exception&) {
        throw proxpat::SpecError(flag + ": expected WxH, got '" + text + "'");
    }
}

} // namespace

int main(int argc, char** argv) {
    proxpat::RunConfig config;
    std::string tile_text = "32x32";
    std::string stride_text;

    CLI::App app{"Groupoid pattern analysis over grayscale image tiles"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--tile", tile_text, "Tile size WxH (default 32x32)");
        cmd->add_option("--stride", stride_text, "Stride SxS (default: tile size)");
        cmd->add_option("--precision", config.precision,
                        "Quantization decimal places, 0..6 (default 2)");
        cmd->add_option("--op", config.op, "Carrier operation: min, max, first (default min)");
        cmd->add_option("--tolerance", config.tolerance,
                        "Neighbourliness tolerance (default 0 = exact match)");
        cmd->add_option("--threshold", config.threshold,
                        "Saliency fraction threshold in [0,1] (default 0.75)");
        cmd->add_option("--format", config.format, "Output format: json or csv (default json)");
        cmd->add_option("--output,-o", config.output, "Output path (default - = stdout)");
        cmd->add_option("--seed", config.seed, "Random seed for generated spaces");
    };

    CLI::App* analyze =
        app.add_subcommand("analyze", "Report tile groupoids and patterns of one image");
    analyze->add_option("image", config.inputs, "Input image (PGM/PPM)")->required();
    add_common(analyze);

    CLI::App* classify =
        app.add_subcommand("classify", "Classify a candidate image against a reference");
    classify->add_option("images", config.inputs, "Reference image, then candidate image")
        ->expected(2);
    add_common(classify);

    CLI::App* axioms =
        app.add_subcommand("axioms", "Validate the nearness axioms on generated spaces");
    add_common(axioms);
    axioms->add_option("--size", config.axiom_size, "Points per generated space (default 5)");
    axioms->add_option("--spaces", config.axiom_spaces,
                       "Number of generated spaces (default 20)");
    axioms->add_option("--budget", config.axiom_budget,
                       "Sampled triples per axiom on larger spaces (default 1000)");
    axioms->add_flag("--exhaustive", config.axiom_exhaustive,
                     "Force exhaustive triples up to --size (max 10)");
    axioms->add_flag("--break-symmetry", config.break_symmetry,
                     "Inject an asymmetric relation to demonstrate witness reporting");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (analyze->parsed()) config.command = "analyze";
        if (classify->parsed()) config.command = "classify";
        if (axioms->parsed()) config.command = "axioms";

        std::tie(config.tile_width, config.tile_height) = parse_dims(tile_text, "--tile");
        if (!stride_text.empty()) {
            std::tie(config.stride_x, config.stride_y) = parse_dims(stride_text, "--stride");
        }

        const proxpat::CommandResult result = proxpat::run_command(config);
        proxpat::write_result(result, config);
        return result.exit_code;
    } catch (const proxpat::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
