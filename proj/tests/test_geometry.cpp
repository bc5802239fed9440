#include <cmath>

#include "doctest.h"
#include "lra/contour.hpp"
#include "lra/errors.hpp"
#include "oracle_spline.hpp"
#include "test_helpers.hpp"

using namespace lra;
using testutil::make_contour;

TEST_CASE("canonicalize centers the bounding box") {
    const Contour square = make_contour({{10, 10}, {11, 10}, {11, 11}, {10, 11}});
    const Contour out = canonicalize(square, OriginPolicy::BBoxCenter);
    REQUIRE(out.size() == 4);
    CHECK(out.vertices[0].x == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(out.vertices[0].y == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(out.vertices[2].x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(out.vertices[2].y == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("canonicalize with None policy is the identity") {
    const Contour square = make_contour({{10, 10}, {11, 10}, {11, 11}, {10, 11}});
    const Contour out = canonicalize(square, OriginPolicy::None);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(out.vertices[i].x == square.vertices[i].x);
        CHECK(out.vertices[i].y == square.vertices[i].y);
    }
}

TEST_CASE("canonicalize removes duplicate consecutive vertices") {
    const Contour dup = make_contour({{0, 0}, {0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const Contour out = canonicalize(dup, OriginPolicy::None);
    CHECK(out.size() == 4);

    const Contour closing = make_contour({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}});
    CHECK(canonicalize(closing, OriginPolicy::None).size() == 4);
}

TEST_CASE("canonicalize rejects degenerate input") {
    const Contour tiny = make_contour({{0, 0}, {0, 0}, {1, 0}, {1, 0}});
    CHECK_THROWS_AS(canonicalize(tiny, OriginPolicy::None), invalid_contour_error);
    const Contour three = make_contour({{0, 0}, {1, 0}, {0, 1}});
    CHECK_THROWS_AS(canonicalize(three, OriginPolicy::None), invalid_contour_error);
}

TEST_CASE("flatten and unflatten") {
    SUBCASE("definition") {
        const Contour tri = make_contour({{0, 0}, {1, 0}, {0, 1}, {0.5, 0.5}});
        const FlatContour f = flatten(tri);
        REQUIRE(f.coords.size() == 8);
        CHECK(f.coords[0] == 0.0);
        CHECK(f.coords[2] == 1.0);
        CHECK(f.coords[3] == 0.0);
        CHECK(f.coords[5] == 1.0);
    }
    SUBCASE("odd length is a format error") {
        FlatContour bad;
        bad.coords = {0.0, 0.0, 1.0};
        CHECK_THROWS_AS(unflatten(bad), data_error);
    }
    SUBCASE("round trip on random polygons") {
        testutil::Rng rng(11);
        for (int rep = 0; rep < 50; ++rep) {
            const Contour c = testutil::random_polygon(rng, 14);
            const Contour back = unflatten(flatten(c));
            REQUIRE(back.size() == c.size());
            for (std::size_t i = 0; i < c.size(); ++i) {
                CHECK(back.vertices[i].x == c.vertices[i].x);
                CHECK(back.vertices[i].y == c.vertices[i].y);
            }
        }
    }
}

TEST_CASE("resample keeps the knots of a regular hexagon") {
    Contour hex;
    for (int i = 0; i < 6; ++i) {
        const double a = 2.0 * M_PI * i / 6.0;
        hex.vertices.push_back({2.0 * std::cos(a), 2.0 * std::sin(a)});
    }
    const Contour out = resample(hex, 6);
    REQUIRE(out.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(std::abs(out.vertices[i].x - hex.vertices[i].x) < 1e-9);
        CHECK(std::abs(out.vertices[i].y - hex.vertices[i].y) < 1e-9);
    }
}

TEST_CASE("resample to own count with uniform knots is the identity") {
    const Contour square = make_contour({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const Contour out = resample(square, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(out.vertices[i].x - square.vertices[i].x) < 1e-9);
        CHECK(std::abs(out.vertices[i].y - square.vertices[i].y) < 1e-9);
    }
}

TEST_CASE("resampling the unit square to 8 matches the dense reference") {
    const Contour square = make_contour({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    const Contour out = resample(square, 8);
    REQUIRE(out.size() == 8);

    const auto expected = oracle::resample_reference(square, 8);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(std::abs(out.vertices[i].x - expected[i].x) < 1e-6);
        CHECK(std::abs(out.vertices[i].y - expected[i].y) < 1e-6);
    }

    // frozen from the dense reference (10^5 samples, linear interpolation):
    // stations land on the corners and on the bulged edge midpoints
    CHECK(std::abs(out.vertices[1].x - 0.5) < 1e-6);
    CHECK(std::abs(out.vertices[1].y - (-0.1875)) < 1e-6);
    CHECK(std::abs(out.vertices[2].x - 1.0) < 1e-6);
    CHECK(std::abs(out.vertices[2].y - 0.0) < 1e-6);
    CHECK(std::abs(out.vertices[3].x - 1.1875) < 1e-6);
    CHECK(std::abs(out.vertices[3].y - 0.5) < 1e-6);
}

TEST_CASE("resample matches the dense reference on random contours") {
    testutil::Rng rng(7);
    for (int rep = 0; rep < 25; ++rep) {
        const Contour c = testutil::random_polygon(rng, 4 + rng.index(10));
        const std::size_t n = 8 + rng.index(24);
        const Contour out = resample(c, n);
        const auto expected = oracle::resample_reference(c, n);
        REQUIRE(out.size() == n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(out.vertices[i].x - expected[i].x) < 1e-6);
            CHECK(std::abs(out.vertices[i].y - expected[i].y) < 1e-6);
        }
    }
}

TEST_CASE("resample is translation equivariant") {
    testutil::Rng rng(23);
    for (int rep = 0; rep < 20; ++rep) {
        const Contour c = testutil::random_polygon(rng, 10);
        const Vec2 t{rng.uniform(-40.0, 40.0), rng.uniform(-40.0, 40.0)};
        const Contour a = resample(translate(c, t), 16);
        const Contour b = translate(resample(c, 16), t);
        for (std::size_t i = 0; i < 16; ++i) {
            CHECK(std::abs(a.vertices[i].x - b.vertices[i].x) < 1e-9);
            CHECK(std::abs(a.vertices[i].y - b.vertices[i].y) < 1e-9);
        }
    }
}

TEST_CASE("resample rejects bad input") {
    const Contour square = make_contour({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK_THROWS_AS(resample(square, 3), argument_error);
    const Contour dup = make_contour({{0, 0}, {0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK_THROWS_AS(resample(dup, 8), invalid_contour_error);
}

TEST_CASE("polygon_iou analytic cases") {
    const Contour square = make_contour({{0, 0}, {1, 0}, {1, 1}, {0, 1}});

    SUBCASE("identical polygons give exactly 1") {
        CHECK(polygon_iou(square, square, 512) == 1.0);
    }
    SUBCASE("disjoint squares give exactly 0") {
        const Contour far = make_contour({{5, 5}, {6, 5}, {6, 6}, {5, 6}});
        CHECK(polygon_iou(square, far, 512) == 0.0);
    }
    SUBCASE("half-shifted square gives one third") {
        const Contour shifted = make_contour({{0.5, 0}, {1.5, 0}, {1.5, 1}, {0.5, 1}});
        CHECK(polygon_iou(square, shifted, 512) == doctest::Approx(1.0 / 3.0).epsilon(0.03));
        CHECK(std::abs(polygon_iou(square, shifted, 512) - 1.0 / 3.0) < 0.01);
    }
    SUBCASE("degenerate polygon returns 0 with flag") {
        const Contour line = make_contour({{0, 0}, {1, 0}, {2, 0}, {3, 0}});
        bool degenerate = false;
        CHECK(polygon_iou(square, line, 512, &degenerate) == 0.0);
        CHECK(degenerate);
    }
    SUBCASE("resolution below 64 is rejected") {
        CHECK_THROWS_AS(polygon_iou(square, square, 32), argument_error);
    }
}

TEST_CASE("polygon_iou is symmetric") {
    testutil::Rng rng(5);
    for (int rep = 0; rep < 30; ++rep) {
        const Contour a = testutil::random_polygon(rng, 4 + rng.index(9));
        const Contour b = testutil::random_polygon(rng, 4 + rng.index(9));
        CHECK(polygon_iou(a, b, 128) == polygon_iou(b, a, 128));
        CHECK(polygon_iou(a, a, 128) == 1.0);
    }
}

TEST_CASE("polygon area and centroid") {
    const Contour square = make_contour({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    CHECK(std::abs(std::abs(polygon_area(square)) - 4.0) < 1e-12);
    const Vec2 c = polygon_centroid(square);
    CHECK(c.x == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.y == doctest::Approx(1.0).epsilon(1e-12));
}
