// Walkthrough of the full pipeline on a hand-built 4x4 image: quantize pixel
// intensities, tile the image, form a min-groupoid per tile, collect patterns
// of tiles with matching descriptions, and score one tile against another.

#include <iostream>

#include "proxpat/proxpat.hpp"

using namespace proxpat;

int main() {
    // Four 2x2 quadrants. The top-left quadrant shares gray 160 with the
    // top-right and gray 30 with the bottom-left; the bottom-right quadrant
    // shares nothing.
    RasterImage image;
    image.width = 4;
    image.height = 4;
    for (int gray : {160, 160, 160, 50,
                     30,  40,  55,  60,
                     30,  70,  230, 235,
                     75,  80,  240, 245}) {
        image.intensities.push_back(gray / 255.0);
    }

    const ProbeSet probes({ProbeDescriptor::intensity(2)});
    const DescriptiveSpace space = make_space(image, probes);
    const std::vector<Region> tiles = tile(space, image, TileSpec{2, 2, 2, 2});

    std::vector<Groupoid> groupoids;
    for (const Region& r : tiles) groupoids.push_back(make_groupoid(r, BinaryOp::min()));

    std::cout << "tile carriers (quantized intensity levels):\n";
    for (const Groupoid& g : groupoids) {
        std::cout << "  " << g.region_id() << ":";
        for (const FeatureVector& v : g.carrier()) std::cout << " " << v;
        std::cout << (is_regular_groupoid(g) ? "  [regular]" : "") << "\n";
    }

    std::cout << "\npatterns (tiles sharing a description with the generator):\n";
    for (std::size_t i = 0; i < groupoids.size(); ++i) {
        std::vector<Groupoid> others;
        for (std::size_t j = 0; j < groupoids.size(); ++j) {
            if (j != i) others.push_back(groupoids[j]);
        }
        const Pattern p = generate_pattern(groupoids[i], others);
        std::cout << "  " << groupoids[i].region_id() << " ->";
        for (const PatternMember& m : p.members) std::cout << " " << m.id;
        std::cout << "\n";
    }

    std::cout << "\nsaliency of tile_r0_c2 against tile_r0_c0 at threshold 0.25:\n";
    const SaliencyScore score = saliency(groupoids[0], groupoids[1], 0.25);
    std::cout << "  matched " << score.matched << " of " << score.total << " (fraction "
              << score.fraction << ") -> " << (score.salient ? "salient" : "not salient")
              << "\n";
    return 0;
}
