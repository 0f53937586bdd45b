#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>

#include "expect.hpp"
#include "oracles.hpp"
#include "sweepchi/catalog.hpp"
#include "sweepchi/domain.hpp"
#include "sweepchi/scene_io.hpp"

using namespace sweepchi;

namespace {

bool inside(const Domain& d, double s, double t)
{
    return d.contains(ParamPoint{s, t});
}

Scene scene_with(const char* name, std::vector<BoundaryCurve> curves, ParamPoint seed)
{
    const Scene& base = catalog_scene(name);
    return {base.name, base.description, Domain(base.domain.surface_ptr(), std::move(curves), seed)};
}

std::string validation_message(const Domain& d)
{
    try {
        validate_domain(d);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ValidationError);
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("membership on the planar scenes")
{
    const Domain& disk = catalog_scene("disk").domain;
    CHECK(inside(disk, 0.0, 0.0));
    CHECK(inside(disk, 0.7, -0.7));
    CHECK_FALSE(inside(disk, 0.8, 0.8));
    CHECK_FALSE(inside(disk, 1.9, 0.0));
    CHECK_FALSE(inside(disk, 5.0, 0.0));  // outside the chart

    const Domain& annulus = catalog_scene("annulus").domain;
    CHECK_FALSE(inside(annulus, 0.0, 0.0));
    CHECK(inside(annulus, 1.5, 0.0));
    CHECK(inside(annulus, -1.0, -1.0));
    CHECK_FALSE(inside(annulus, 2.5, 0.0));

    const Domain& holes = catalog_scene("disk-2-holes").domain;
    CHECK_FALSE(inside(holes, 1.0, 0.0));
    CHECK_FALSE(inside(holes, -1.2, 0.1));
    CHECK(inside(holes, 0.0, 0.0));
    CHECK(inside(holes, 0.0, -1.9));
}

TEST_CASE("membership on periodic and spherical charts")
{
    const Domain& torus = catalog_scene("torus").domain;
    CHECK(inside(torus, 1.0, 6.0));

    const Domain& punctured = catalog_scene("torus-minus-disk").domain;
    CHECK_FALSE(inside(punctured, 1.0, 2.0));
    CHECK(inside(punctured, 1.0, 2.6));
    // periodic images of the same point agree
    CHECK(inside(punctured, 1.0 + 2 * std::numbers::pi, 2.0 - 2 * std::numbers::pi) == false);
    CHECK(inside(punctured, 0.1, 0.1) == inside(punctured, 0.1 + 2 * std::numbers::pi, 0.1));

    const Domain& band = catalog_scene("torus-band").domain;
    CHECK(inside(band, 3.0, 0.4));
    CHECK_FALSE(inside(band, 3.0, 0.6));
    CHECK_FALSE(inside(band, 3.0, 3.0));

    const Domain& cap = catalog_scene("cap").domain;
    CHECK(cap.contains(Vec3(0.0, 0.0, 1.0)));
    CHECK_FALSE(cap.contains(Vec3(1.0, 0.0, 0.0)));
    CHECK_FALSE(cap.contains(Vec3(0.0, 0.0, -1.0)));  // projection point: not in the chart

    const Domain& complement = catalog_scene("cap-complement").domain;
    CHECK(complement.contains(Vec3(0.0, 0.0, -1.0)));
    CHECK(complement.contains(Vec3(1.0, 0.0, 0.0)));
    CHECK_FALSE(complement.contains(Vec3(0.0, 0.0, 1.0)));
}

TEST_CASE("points on the boundary are reported")
{
    const Domain& disk = catalog_scene("disk").domain;
    CHECK(thrown_kind([&] { return disk.contains(ParamPoint{1.0, 0.0}); }) == ErrorKind::OnBoundary);
    CHECK(thrown_kind([&] { return disk.contains(ParamPoint{0.0, -1.0}); }) == ErrorKind::OnBoundary);
    CHECK(thrown_kind([&] { return disk.contains(ParamPoint{1.0 + 1e-6, 0.0}); }) == std::nullopt);
}

TEST_CASE("crossing parity is path independent")
{
    std::mt19937_64 rng(4);
    for (const auto& scene : catalog()) {
        CAPTURE(scene.name);
        const Domain& d = scene.domain;
        int mismatches = 0;
        for (int k = 0; k < 200; ++k) {
            const ParamPoint p = oracle::random_point(d.rect(), rng);
            const ParamPoint via = oracle::random_point(d.rect(), rng);
            if (d.distance_to_boundary(p) < 1e-6 || d.distance_to_boundary(via) < 1e-6) continue;
            // seed -> via -> p, both legs in lifted coordinates
            const std::vector<ParamPoint> path{d.seed(), via, p};
            const bool by_path = d.crossings(path) % 2 == 0;
            mismatches += by_path != d.contains(p);
        }
        CHECK(mismatches == 0);
    }
}

TEST_CASE("membership is locally constant away from the boundary")
{
    std::mt19937_64 rng(6);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (const auto& scene : catalog()) {
        CAPTURE(scene.name);
        const Domain& d = scene.domain;
        for (int k = 0; k < 200; ++k) {
            const ParamPoint p = oracle::random_point(d.rect(), rng, 0.01);
            const double dist = d.distance_to_boundary(p);
            if (dist < 1e-3) continue;
            const double step = 0.5 * std::min(dist, 0.01);
            const double a = normal(rng), b = normal(rng);
            const double len = std::hypot(a, b);
            const ParamPoint q{p.s + step * a / len, p.t + step * b / len};
            CHECK(d.contains(p) == d.contains(q));
        }
    }
}

TEST_CASE("distance to the boundary")
{
    const Domain& annulus = catalog_scene("annulus").domain;
    CHECK(annulus.distance_to_boundary({1.5, 0.0}) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(annulus.distance_to_boundary({0.3, 0.4}) == doctest::Approx(0.5).epsilon(1e-9));
    const Domain& band = catalog_scene("torus-band").domain;
    CHECK(band.distance_to_boundary({2.0, 0.2}) == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(std::isinf(catalog_scene("torus").domain.distance_to_boundary({0, 0})));
}

TEST_CASE("catalog scenes satisfy every invariant")
{
    CHECK(catalog().size() >= 8);
    for (const auto& scene : catalog()) {
        CAPTURE(scene.name);
        CHECK_NOTHROW(validate_domain(scene.domain));
        CHECK(scene.domain.reference_chi().has_value());
        CHECK(scene.domain.contains(scene.domain.seed()));
    }
    CHECK(thrown_kind([] { return catalog_scene("no-such-scene"); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("validation names the violated invariant")
{
    SUBCASE("flipped orientation")
    {
        auto curves = catalog_scene("annulus").domain.boundaries();
        curves[1].orientation = -curves[1].orientation;
        const auto s = scene_with("annulus", curves, {0.0, 1.5});
        CHECK(validation_message(s.domain).find("orientation probe failed on boundary curve 1") != std::string::npos);
    }
    SUBCASE("self-intersection")
    {
        BoundaryCurve eight;  // s = cos tau, t = 0.5 sin 2tau crosses itself at the origin
        eight.s.cos = {0.0, 1.0};
        eight.t.cos = {0.0};
        eight.t.sin = {0.0, 0.5};
        const auto s = scene_with("disk", {eight}, {0.5, 0.1});
        CHECK(validation_message(s.domain).find("self-intersection") != std::string::npos);
    }
    SUBCASE("intersecting curves")
    {
        const auto s = scene_with("disk", {BoundaryCurve::circle({0, 0}, 1.0), BoundaryCurve::circle({0.9, 0}, 0.5)},
                                  {-0.5, 0.0});
        CHECK(validation_message(s.domain).find("intersect") != std::string::npos);
    }
    SUBCASE("curve leaving the chart")
    {
        const auto s = scene_with("disk", {BoundaryCurve::circle({0, 0}, 2.5)}, {0, 0});
        CHECK_FALSE(validation_message(s.domain).empty());
    }
    SUBCASE("winding in a non-periodic direction")
    {
        const auto s = scene_with("disk", {BoundaryCurve::s_loop(0.0)}, {0, 0.5});
        CHECK(validation_message(s.domain).find("wind") != std::string::npos);
    }
    SUBCASE("seed outside the rectangle")
    {
        const auto s = scene_with("disk", {BoundaryCurve::circle({0, 0}, 1.0)}, {3.0, 0.0});
        CHECK(validation_message(s.domain).find("seed") != std::string::npos);
    }
    SUBCASE("seed on the boundary")
    {
        const auto s = scene_with("disk", {BoundaryCurve::circle({0, 0}, 1.0)}, {1.0, 0.0});
        CHECK(validation_message(s.domain).find("seed") != std::string::npos);
    }
}

TEST_CASE("orient_boundaries repairs flipped curves")
{
    auto curves = catalog_scene("disk-2-holes").domain.boundaries();
    for (auto& c : curves) c.orientation = -c.orientation;
    const auto s = scene_with("disk-2-holes", curves, {0.0, 1.2});
    CHECK_FALSE(validation_message(s.domain).empty());
    CHECK_NOTHROW(validate_domain(orient_boundaries(s.domain)));
}

TEST_CASE("scene files round-trip")
{
    for (const auto& scene : catalog()) {
        CAPTURE(scene.name);
        const std::string text = scene_to_json(scene);
        const Scene back = scene_from_json(text);
        CHECK(scene_to_json(back) == text);
        CHECK(back.domain.reference_chi() == scene.domain.reference_chi());
        std::mt19937_64 rng(9);
        for (int k = 0; k < 50; ++k) {
            const ParamPoint p = oracle::random_point(scene.domain.rect(), rng);
            if (scene.domain.distance_to_boundary(p) < 1e-6) continue;
            CHECK(back.domain.contains(p) == scene.domain.contains(p));
        }
    }

    const auto path = std::filesystem::temp_directory_path() / "sweepchi_roundtrip.json";
    save_scene(path, catalog_scene("torus-minus-disk"));
    CHECK(scene_to_json(load_scene(path)) == scene_to_json(catalog_scene("torus-minus-disk")));
    std::filesystem::remove(path);
}

TEST_CASE("scene parsing errors")
{
    CHECK(thrown_kind([] { return scene_from_json(""); }) == ErrorKind::ParseError);
    CHECK(thrown_kind([] { return scene_from_json("[1, 2]"); }) == ErrorKind::ParseError);
    CHECK(thrown_kind([] { return scene_from_json(R"({"name": "x", "seed": [0, 0]})"); }) == ErrorKind::ParseError);
    CHECK(thrown_kind([] {
              return scene_from_json(R"({"name": "x", "surface": {"type": "klein"}, "seed": [0, 0]})");
          }) == ErrorKind::ParseError);
    CHECK(thrown_kind([] {
              return scene_from_json(R"({"name": "x", "surface": {"type": "torus", "R": 1, "r": 2}, "seed": [0, 0]})");
          }) == ErrorKind::ValidationError);
    CHECK(thrown_kind([] {
              return scene_from_json(R"({"name": "x", "surface": {"type": "plane", "half_extent": 2},
                  "boundaries": [{"s": {"cos": [0, 1]}, "t": {"sin": [1]}, "orientation": -1}], "seed": [0, 0]})");
          }) == ErrorKind::ValidationError);
    CHECK(thrown_kind([] { return load_scene("/nonexistent/scene.json"); }) == ErrorKind::ParseError);
}

TEST_CASE("a scene written by hand loads")
{
    const Scene s = scene_from_json(R"({
        "name": "ring",
        "surface": {"type": "plane", "half_extent": 2},
        "boundaries": [
            {"s": {"cos": [0, 1.5]}, "t": {"sin": [1.5]}},
            {"s": {"cos": [0, 0.5]}, "t": {"sin": [0.5]}, "orientation": -1}
        ],
        "seed": [1, 0],
        "reference_chi": 0
    })");
    CHECK(s.domain.boundaries().size() == 2);
    CHECK(s.domain.contains(ParamPoint{0.0, 1.0}));
    CHECK_FALSE(s.domain.contains(ParamPoint{0.0, 0.0}));
}
