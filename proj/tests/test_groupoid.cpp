#include <cstdint>
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "proxpat/proxpat.hpp"
#include "test_util.hpp"

using namespace proxpat;

namespace {

FeatureVector fv(std::vector<long long> levels, int precision = 2) {
    return FeatureVector::from_levels(levels, precision);
}

DescriptionSet carrier(std::vector<long long> levels) {
    std::vector<FeatureVector> entries;
    for (long long v : levels) entries.push_back(fv({v}));
    return DescriptionSet(std::move(entries));
}

/// Arithmetic-mean op: total as a map, but escapes most carriers.
BinaryOp average_op() {
    return BinaryOp::custom("average", [](const FeatureVector& a, const FeatureVector& b) {
        std::vector<QuantizedValue> values;
        for (std::size_t i = 0; i < a.size(); ++i) {
            values.push_back(QuantizedValue{(a[i].level + b[i].level) / 2, a[i].precision});
        }
        return std::optional<FeatureVector>(FeatureVector(std::move(values)));
    });
}

} // namespace

TEST_CASE("op names resolve and reject unknowns") {
    CHECK(BinaryOp::named("min").name() == "min");
    CHECK(BinaryOp::named("max").name() == "max");
    CHECK(BinaryOp::named("first").name() == "first");
    CHECK_THROWS_AS(BinaryOp::named("median"), InvalidValue);
}

TEST_CASE("min, max, and first combine feature vectors as documented") {
    const auto a = fv({63, 40});
    const auto b = fv({83, 10});
    CHECK(*BinaryOp::min()(a, b) == fv({63, 10}));
    CHECK(*BinaryOp::max()(a, b) == fv({83, 40}));
    CHECK(*BinaryOp::first()(a, b) == a);
    CHECK(*BinaryOp::first()(b, a) == b);
    CHECK_THROWS_AS(BinaryOp::min()(fv({1}), fv({1, 2})), ProbeSetMismatch);
}

TEST_CASE("min over a two-level carrier is a total groupoid") {
    const Groupoid g = make_groupoid(carrier({63, 83}), BinaryOp::min());
    CHECK(g.total());
    CHECK(g.size() == 2);
    CHECK(g.apply(fv({63}), fv({83})) == fv({63}));
    CHECK(g.apply(fv({83}), fv({83})) == fv({83}));
}

TEST_CASE("singleton carriers with idempotent ops are total") {
    for (const char* name : {"min", "max", "first"}) {
        const Groupoid g = make_groupoid(carrier({42}), BinaryOp::named(name));
        CHECK(g.total());
        CHECK(g.apply(fv({42}), fv({42})) == fv({42}));
        CHECK(is_regular_groupoid(g));
    }
}

TEST_CASE("ops that escape the carrier yield partial groupoids") {
    const Groupoid g = make_groupoid(carrier({30, 50}), average_op());
    CHECK_FALSE(g.total());
    CHECK(g.defined(fv({30}), fv({30})));
    CHECK_FALSE(g.defined(fv({30}), fv({50})));  // average 40 is not a member
    CHECK(g.apply(fv({50}), fv({50})) == fv({50}));
    CHECK_THROWS_AS(g.apply(fv({30}), fv({50})), UndefinedPair);
    CHECK_THROWS_AS(g.apply(fv({40}), fv({50})), NotInCarrier);
}

TEST_CASE("total groupoids never leave their carrier") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const DescriptionSet c = testutil::random_carrier(seed, 3 + seed % 12);
        for (const char* name : {"min", "max", "first"}) {
            const Groupoid g = make_groupoid(c, BinaryOp::named(name));
            REQUIRE(g.total());
            for (const FeatureVector& a : g.carrier()) {
                for (const FeatureVector& b : g.carrier()) {
                    CHECK(g.carrier().contains(g.apply(a, b)));
                }
            }
        }
    }
}

TEST_CASE("min and max are idempotent, commutative, and associative on carriers") {
    for (std::uint64_t seed = 50; seed < 62; ++seed) {
        const DescriptionSet c = testutil::random_carrier(seed, 2 + seed % 8);
        for (const char* name : {"min", "max"}) {
            const Groupoid g = make_groupoid(c, BinaryOp::named(name));
            for (const FeatureVector& a : g.carrier()) {
                CHECK(g.apply(a, a) == a);
                for (const FeatureVector& b : g.carrier()) {
                    CHECK(g.apply(a, b) == g.apply(b, a));
                    for (const FeatureVector& x : g.carrier()) {
                        CHECK(g.apply(g.apply(a, b), x) == g.apply(a, g.apply(b, x)));
                    }
                }
            }
        }
    }
}

TEST_CASE("groupoids built from regions carry the region identity") {
    const auto image = testutil::image_from_levels(4, 4, testutil::quad_fixture_levels());
    const ProbeSet probes({ProbeDescriptor::intensity(2)});
    const DescriptiveSpace space = make_space(image, probes);
    const auto tiles = tile(space, image, TileSpec{2, 2, 2, 2});
    REQUIRE(tiles.size() == 4);
    const Groupoid g = make_groupoid(tiles[0], BinaryOp::min());
    CHECK(g.region_id() == "tile_r0_c0");
    REQUIRE(g.tile().has_value());
    CHECK(g.tile()->x == 0);
    CHECK(g.tile()->width == 2);
    CHECK(g.carrier().size() == 3);  // {12,16,63}
    CHECK(g.carrier().contains(fv({63})));
}

TEST_CASE("vector distance sums absolute level deltas per precision") {
    CHECK(pseudometric(fv({63}), fv({63})) == 0.0);
    CHECK(pseudometric(fv({63}), fv({83})) == 0.20);
    CHECK(pseudometric(fv({83}), fv({63})) == 0.20);
    CHECK(pseudometric(fv({63, 40}), fv({60, 45})) == 0.08);

    // Mixed precisions scale per position (two summed classes, so allow an ulp).
    const FeatureVector a(std::vector<QuantizedValue>{{63, 2}, {5, 1}});
    const FeatureVector b(std::vector<QuantizedValue>{{60, 2}, {7, 1}});
    CHECK(pseudometric(a, b) == Catch::Approx(0.23));

    CHECK_THROWS_AS(pseudometric(fv({63}), fv({63, 1})), ProbeSetMismatch);
}

TEST_CASE("vector distance behaves like a pseudometric on random vectors") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const auto a = fv({static_cast<long long>(rng() % 100),
                           static_cast<long long>(rng() % 100)});
        const auto b = fv({static_cast<long long>(rng() % 100),
                           static_cast<long long>(rng() % 100)});
        const auto c = fv({static_cast<long long>(rng() % 100),
                           static_cast<long long>(rng() % 100)});
        CHECK(pseudometric(a, a) == 0.0);
        CHECK(pseudometric(a, b) >= 0.0);
        CHECK(pseudometric(a, b) == pseudometric(b, a));
        CHECK(pseudometric(a, c) <= pseudometric(a, b) + pseudometric(b, c) + 1e-12);
        CHECK((pseudometric(a, b) == 0.0) == (a == b));
    }
}

TEST_CASE("neighbourly elements within tolerance") {
    CHECK(elements_neighbourly(fv({63}), fv({63})));
    CHECK_FALSE(elements_neighbourly(fv({63}), fv({83})));
    CHECK(elements_neighbourly(fv({63}), fv({64}), 0.01));
    CHECK_FALSE(elements_neighbourly(fv({63}), fv({65}), 0.01));
    CHECK_THROWS_AS(elements_neighbourly(fv({63}), fv({63, 1})), ProbeSetMismatch);
    CHECK_THROWS_AS(elements_neighbourly(fv({63}), fv({63}), -0.5), InvalidValue);
}

TEST_CASE("every element of a min groupoid is regular") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        const Groupoid g = make_groupoid(testutil::random_carrier(seed, 1 + seed % 20),
                                         BinaryOp::min());
        for (const FeatureVector& a : g.carrier()) {
            CHECK(is_regular_element(g, a));
        }
        CHECK(is_regular_groupoid(g));
        CHECK(regular_element_count(g) == g.size());
    }
}

TEST_CASE("idempotent pairs make elements regular under any op") {
    // a o a = a forces regularity with y = a.
    const Groupoid g = make_groupoid(carrier({10, 20, 30}), BinaryOp::max());
    for (const FeatureVector& a : g.carrier()) {
        CHECK(is_regular_element(g, a));
    }
}

TEST_CASE("a constructed op table can starve an element of regularity") {
    // Carrier {a=10, b=20}: a*a=b, a*b=b, b*a=b, b*b=a. Then (a*y)*a = b*a = b
    // for either y, so a is never recovered; b recovers via y=b.
    const BinaryOp table = BinaryOp::custom(
        "table", [](const FeatureVector& x, const FeatureVector& y) {
            const bool xa = x[0].level == 10;
            const bool ya = y[0].level == 10;
            long long out = 20;
            if (!xa && !ya) out = 10;
            return std::optional<FeatureVector>(FeatureVector::from_levels({out}, 2));
        });
    const Groupoid g = make_groupoid(carrier({10, 20}), table);
    CHECK(g.total());
    CHECK_FALSE(is_regular_element(g, fv({10})));
    CHECK(is_regular_element(g, fv({20})));
    CHECK_FALSE(is_regular_groupoid(g));
    CHECK(regular_element_count(g) == 1);
    CHECK_THROWS_AS(is_regular_element(g, fv({99})), NotInCarrier);
}

TEST_CASE("regularity skips undefined intermediate pairs in partial groupoids") {
    const Groupoid g = make_groupoid(carrier({30, 50}), average_op());
    // For a=30: y=30 gives (30*30)=30, then 30*30=30: regular.
    CHECK(is_regular_element(g, fv({30})));
    CHECK(is_regular_element(g, fv({50})));
}

TEST_CASE("groupoid neighbourliness matches the all-pairs oracle") {
    const Groupoid a83 = make_groupoid(carrier({63, 83}), BinaryOp::min());
    const Groupoid b83 = make_groupoid(carrier({83, 90}), BinaryOp::min());
    const Groupoid c = make_groupoid(carrier({10, 20}), BinaryOp::min());
    CHECK(groupoids_neighbourly(a83, b83));
    CHECK(groupoids_neighbourly(a83, a83));
    CHECK_FALSE(groupoids_neighbourly(a83, c));
    CHECK(groupoids_neighbourly(c, make_groupoid(carrier({21}), BinaryOp::min()), 0.01));

    for (std::uint64_t seed = 200; seed < 240; ++seed) {
        const Groupoid g1 = make_groupoid(testutil::random_carrier(seed, 1 + seed % 10, 30),
                                          BinaryOp::min());
        const Groupoid g2 = make_groupoid(testutil::random_carrier(seed + 1000, 1 + seed % 7, 30),
                                          BinaryOp::min());
        CHECK(groupoids_neighbourly(g1, g2) ==
              oracle::carriers_neighbourly(oracle::carrier_of(g1), oracle::carrier_of(g2), 0.0));
        CHECK(groupoids_neighbourly(g1, g2, 0.05) ==
              oracle::carriers_neighbourly(oracle::carrier_of(g1), oracle::carrier_of(g2), 0.05));
        CHECK(groupoids_neighbourly(g1, g2) == groupoids_neighbourly(g2, g1));
    }
}

TEST_CASE("groupoid neighbourliness rejects incompatible shapes") {
    const Groupoid single = make_groupoid(carrier({63}), BinaryOp::min());
    const Groupoid pair = make_groupoid(
        DescriptionSet({fv({63, 40})}), BinaryOp::min());
    CHECK_THROWS_AS(groupoids_neighbourly(single, pair), ProbeSetMismatch);
}
