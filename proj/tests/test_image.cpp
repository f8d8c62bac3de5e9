#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "proxpat/proxpat.hpp"
#include "test_util.hpp"

using namespace proxpat;

TEST_CASE("ascii grayscale images normalize against their maxval") {
    const auto path = testutil::write_file("plain.pgm", testutil::pgm_ascii(2, 2, {0, 255, 128, 64}));
    const RasterImage img = load_image(path);
    REQUIRE(img.width == 2);
    REQUIRE(img.height == 2);
    CHECK(img.at(0, 0) == 0.0);
    CHECK(img.at(0, 1) == 1.0);
    CHECK(img.at(1, 0) == Catch::Approx(128.0 / 255.0));
    CHECK(img.at(1, 1) == Catch::Approx(64.0 / 255.0));

    const auto zero = testutil::write_file("zero.pgm", testutil::pgm_ascii(3, 1, {0, 0, 0}));
    for (double v : load_image(zero).intensities) CHECK(v == 0.0);
}

TEST_CASE("binary grayscale images decode byte samples") {
    const auto path = testutil::write_file("raw.pgm", testutil::pgm_binary(2, 2, {10, 20, 30, 211}));
    const RasterImage img = load_image(path);
    CHECK(img.at(0, 0) == Catch::Approx(10.0 / 255.0));
    CHECK(img.at(1, 1) == Catch::Approx(211.0 / 255.0));
    // Gray 211 lands on hundredths level 83.
    CHECK(quantize_level(img.at(1, 1), 2) == 83);
}

TEST_CASE("wide-range images use two-byte big-endian samples") {
    std::string data = "P5\n2 1\n65535\n";
    // 0x1234 = 4660 and 0xFFFF = 65535.
    data += '\x12';
    data += '\x34';
    data += '\xFF';
    data += '\xFF';
    const auto path = testutil::write_file("wide.pgm", data);
    const RasterImage img = load_image(path);
    CHECK(img.at(0, 0) == Catch::Approx(4660.0 / 65535.0));
    CHECK(img.at(0, 1) == 1.0);
}

TEST_CASE("non-byte maxval rescales ascii samples") {
    const auto path = testutil::write_file("deep.pgm", "P2\n2 1\n1000\n250 1000\n");
    const RasterImage img = load_image(path);
    CHECK(img.at(0, 0) == 0.25);
    CHECK(img.at(0, 1) == 1.0);
}

TEST_CASE("color images reduce to luma") {
    // Pure red, green, blue, white.
    const auto ascii = testutil::write_file(
        "rgb.ppm", "P3\n2 2\n255\n255 0 0  0 255 0\n0 0 255  255 255 255\n");
    const RasterImage img = load_image(ascii);
    CHECK(img.at(0, 0) == Catch::Approx(0.299));
    CHECK(img.at(0, 1) == Catch::Approx(0.587));
    CHECK(img.at(1, 0) == Catch::Approx(0.114));
    CHECK(img.at(1, 1) == Catch::Approx(1.0));

    std::string raw = "P6\n1 1\n255\n";
    raw += '\xFF';
    raw += '\x00';
    raw += '\x00';
    const auto binary = testutil::write_file("rgb_raw.ppm", raw);
    CHECK(load_image(binary).at(0, 0) == Catch::Approx(0.299));
}

TEST_CASE("header comments are skipped") {
    const auto path = testutil::write_file(
        "commented.pgm", "P2 # magic\n# full line\n2 # width\n1\n255\n7 9\n");
    const RasterImage img = load_image(path);
    CHECK(img.width == 2);
    CHECK(img.at(0, 0) == Catch::Approx(7.0 / 255.0));
    CHECK(img.at(0, 1) == Catch::Approx(9.0 / 255.0));
}

TEST_CASE("loader distinguishes unreadable files from malformed ones") {
    CHECK_THROWS_AS(load_image("/nonexistent/nowhere.pgm"), IoError);

    const auto bad_magic = testutil::write_file("bad_magic.pgm", "P7\n2 2\n255\n0 0 0 0\n");
    CHECK_THROWS_AS(load_image(bad_magic), FormatError);
    const auto garbage = testutil::write_file("garbage.pgm", "not an image at all");
    CHECK_THROWS_AS(load_image(garbage), FormatError);

    const auto truncated = testutil::write_file("short.pgm", "P2\n2 2\n255\n0 1 2\n");
    CHECK_THROWS_AS(load_image(truncated), FormatError);
    std::string raw_short = "P5\n2 2\n255\n";
    raw_short += "\x01\x02\x03";
    const auto raw_trunc = testutil::write_file("short_raw.pgm", raw_short);
    CHECK_THROWS_AS(load_image(raw_trunc), FormatError);

    const auto overflow = testutil::write_file("overflow.pgm", "P2\n1 1\n100\n101\n");
    CHECK_THROWS_AS(load_image(overflow), FormatError);
    const auto bad_dims = testutil::write_file("bad_dims.pgm", "P2\n0 2\n255\n");
    CHECK_THROWS_AS(load_image(bad_dims), FormatError);
    const auto bad_maxval = testutil::write_file("bad_maxval.pgm", "P2\n1 1\n0\n0\n");
    CHECK_THROWS_AS(load_image(bad_maxval), FormatError);
    const auto huge_maxval = testutil::write_file("huge_maxval.pgm", "P2\n1 1\n70000\n0\n");
    CHECK_THROWS_AS(load_image(huge_maxval), FormatError);
    const auto word = testutil::write_file("word.pgm", "P2\n2 two\n255\n0 0\n");
    CHECK_THROWS_AS(load_image(word), FormatError);
}

TEST_CASE("image spaces enumerate pixels row-major") {
    const RasterImage img = testutil::image_from_levels(3, 2, {10, 20, 30, 40, 50, 60});
    const ProbeSet probes({ProbeDescriptor::intensity(2)});
    const DescriptiveSpace space = make_space(img, probes);
    REQUIRE(space.size() == 6);
    CHECK(space.point(0).location.row == 0);
    CHECK(space.point(0).location.col == 0);
    CHECK(space.point(2).location.col == 2);
    CHECK(space.point(3).location.row == 1);
    CHECK(space.point(3).location.col == 0);
    CHECK(space.description(4)[0].level == quantize_level(50.0 / 255.0, 2));
}

TEST_CASE("tiling covers the full grid when strides divide the image") {
    const RasterImage img = testutil::random_image(7, 4, 4);
    const ProbeSet probes({ProbeDescriptor::intensity(2)});
    const DescriptiveSpace space = make_space(img, probes);
    const auto tiles = tile(space, img, TileSpec{2, 2, 2, 2});
    REQUIRE(tiles.size() == 4);
    CHECK(tiles[0].id() == "tile_r0_c0");
    CHECK(tiles[1].id() == "tile_r0_c2");
    CHECK(tiles[2].id() == "tile_r2_c0");
    CHECK(tiles[3].id() == "tile_r2_c2");
    REQUIRE(tiles[1].tile().has_value());
    CHECK(tiles[1].tile()->x == 2);
    CHECK(tiles[1].tile()->y == 0);
    CHECK(tiles[1].tile()->width == 2);
    // tile_r0_c2 holds pixels (0,2),(0,3),(1,2),(1,3) = ids 2,3,6,7.
    CHECK(tiles[1].point_ids() == std::vector<PointId>{2, 3, 6, 7});
}

TEST_CASE("partial tiles at the boundary are dropped") {
    const RasterImage img = testutil::random_image(8, 5, 5);
    const ProbeSet probes({ProbeDescriptor::intensity(2)});
    const DescriptiveSpace space = make_space(img, probes);
    CHECK(tile(space, img, TileSpec{2, 2, 2, 2}).size() == 4);
    CHECK(tile(space, img, TileSpec{2, 2, 1, 1}).size() == 16);
    CHECK(tile(space, img, TileSpec{5, 5, 1, 1}).size() == 1);
    CHECK(tile(space, img, TileSpec{5, 5, 1, 1})[0].point_ids().size() == 25);
}

TEST_CASE("tile counts follow the sliding-window formula") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        const long long w = 2 + static_cast<long long>(rng() % 9);
        const long long h = 2 + static_cast<long long>(rng() % 9);
        const long long tw = 1 + static_cast<long long>(rng() % w);
        const long long th = 1 + static_cast<long long>(rng() % h);
        const long long sx = 1 + static_cast<long long>(rng() % 3);
        const long long sy = 1 + static_cast<long long>(rng() % 3);
        const RasterImage img = testutil::random_image(rng(), static_cast<int>(w),
                                                       static_cast<int>(h));
        const ProbeSet probes({ProbeDescriptor::intensity(2)});
        const DescriptiveSpace space = make_space(img, probes);
        const auto tiles = tile(space, img,
                                TileSpec{static_cast<int>(tw), static_cast<int>(th),
                                         static_cast<int>(sx), static_cast<int>(sy)});
        const auto expected = static_cast<std::size_t>(((w - tw) / sx + 1) * ((h - th) / sy + 1));
        REQUIRE(tiles.size() == expected);
        for (const auto& region : tiles) {
            REQUIRE(region.tile().has_value());
            const TileRect r = *region.tile();
            CHECK(r.x + r.width <= w);
            CHECK(r.y + r.height <= h);
            CHECK(region.point_ids().size() == static_cast<std::size_t>(tw * th));
            for (PointId id : region.point_ids()) {
                const auto row = static_cast<long long>(id) / w;
                const auto col = static_cast<long long>(id) % w;
                CHECK(row >= r.y);
                CHECK(row < r.y + r.height);
                CHECK(col >= r.x);
                CHECK(col < r.x + r.width);
            }
        }
    }
}

TEST_CASE("tiling validates its inputs") {
    const RasterImage img = testutil::random_image(1, 4, 4);
    const ProbeSet probes({ProbeDescriptor::intensity(2)});
    const DescriptiveSpace space = make_space(img, probes);
    CHECK_THROWS_AS(tile(space, img, TileSpec{5, 5, 1, 1}), SpecError);
    CHECK_THROWS_AS(tile(space, img, TileSpec{0, 2, 1, 1}), SpecError);
    CHECK_THROWS_AS(tile(space, img, TileSpec{2, 2, 0, 1}), SpecError);

    const RasterImage other = testutil::random_image(2, 3, 3);
    const DescriptiveSpace other_space = make_space(other, probes);
    CHECK_THROWS_AS(tile(other_space, img, TileSpec{2, 2, 2, 2}), SpaceMismatch);

    RasterImage bad = img;
    bad.intensities.push_back(0.5);
    CHECK_THROWS_AS(make_space(bad, probes), InvalidValue);
    RasterImage out_of_range = img;
    out_of_range.intensities[0] = 1.5;
    CHECK_THROWS_AS(make_space(out_of_range, probes), InvalidValue);
}

TEST_CASE("quad fixture tiles carry the documented carriers") {
    const RasterImage img = testutil::image_from_levels(4, 4, testutil::quad_fixture_levels());
    const ProbeSet probes({ProbeDescriptor::intensity(2)});
    const DescriptiveSpace space = make_space(img, probes);
    const auto tiles = tile(space, img, TileSpec{2, 2, 2, 2});
    REQUIRE(tiles.size() == 4);
    const auto levels_of = [&](const Region& r) {
        const DescriptionSet set = descriptions_of(r);
        std::vector<long long> out;
        for (const auto& d : set.entries()) out.push_back(d.levels()[0]);
        return out;
    };
    CHECK(levels_of(tiles[0]) == std::vector<long long>{12, 16, 63});
    CHECK(levels_of(tiles[1]) == std::vector<long long>{20, 22, 24, 63});
    CHECK(levels_of(tiles[2]) == std::vector<long long>{12, 27, 29, 31});
    CHECK(levels_of(tiles[3]) == std::vector<long long>{90, 92, 94, 96});
}
