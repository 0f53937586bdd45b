#include "sweepchi/catalog.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "sweepchi/errors.hpp"

namespace sweepchi {

namespace {

using std::numbers::pi;

Scene make(std::string name, std::string description, SurfacePtr surface, std::vector<BoundaryCurve> curves,
           ParamPoint seed, int chi)
{
    Domain domain(std::move(surface), std::move(curves), seed, chi);
    return Scene{std::move(name), std::move(description), orient_boundaries(domain)};
}

std::vector<Scene> build()
{
    std::vector<Scene> scenes;

    auto plane2 = std::make_shared<Plane>(2.0);
    auto plane3 = std::make_shared<Plane>(3.0);
    scenes.push_back(make("disk", "unit disk in the plane", plane2,
                          {BoundaryCurve::circle({0.0, 0.0}, 1.0)}, {0.0, 0.0}, 1));
    scenes.push_back(make("annulus", "planar annulus between radii 1 and 2", plane3,
                          {BoundaryCurve::circle({0.0, 0.0}, 2.0), BoundaryCurve::circle({0.0, 0.0}, 1.0)},
                          {0.0, 1.5}, 0));
    scenes.push_back(make("disk-2-holes", "planar disk of radius 2 with two holes of radius 0.5", plane3,
                          {BoundaryCurve::circle({0.0, 0.0}, 2.0), BoundaryCurve::circle({-1.0, 0.0}, 0.5),
                           BoundaryCurve::circle({1.0, 0.0}, 0.5)},
                          {0.0, 1.2}, -1));

    // Stereographic charts map sphere circles to chart circles: polar angle g
    // from +z sits at radius tan(g/2) (projection from the south pole) or
    // cot(g/2) (from the north pole).
    auto sphere_s = std::make_shared<Sphere>(2.0, ProjectionPole::South);
    auto sphere_n = std::make_shared<Sphere>(2.0, ProjectionPole::North);
    scenes.push_back(make("cap", "spherical cap of half-angle pi/3 about the north pole", sphere_s,
                          {BoundaryCurve::circle({0.0, 0.0}, std::tan(pi / 6.0))}, {0.0, 0.0}, 1));
    scenes.push_back(make("band", "spherical band between polar angles pi/3 and 2pi/3", sphere_s,
                          {BoundaryCurve::circle({0.0, 0.0}, std::tan(pi / 3.0)),
                           BoundaryCurve::circle({0.0, 0.0}, std::tan(pi / 6.0))},
                          {1.0, 0.0}, 0));
    scenes.push_back(make("cap-complement", "sphere minus the cap of half-angle pi/3 about the north pole",
                          sphere_n, {BoundaryCurve::circle({0.0, 0.0}, std::sqrt(3.0))}, {0.0, 0.0}, 1));

    auto torus = std::make_shared<Torus>(2.0, 1.0);
    scenes.push_back(make("torus", "closed torus R=2, r=1", torus, {}, {0.0, 0.0}, 0));
    scenes.push_back(make("torus-minus-disk", "torus R=2, r=1 with one chart disk removed", torus,
                          {BoundaryCurve::circle({1.0, 2.0}, 0.5)}, {4.0, 0.0}, -1));
    scenes.push_back(make("torus-band", "annular strip |t| <= 0.5 around the outer equator", torus,
                          {BoundaryCurve::s_loop(-0.5), BoundaryCurve::s_loop(0.5)}, {0.0, 0.0}, 0));

    scenes.push_back(make("ellipsoid-cap", "disk on the ellipsoid with semi-axes 1.5, 1, 0.7",
                          std::make_shared<Ellipsoid>(1.5, 1.0, 0.7, 1.5),
                          {BoundaryCurve::ellipse({0.1, -0.2}, 0.8, 0.6)}, {0.1, -0.2}, 1));
    scenes.push_back(make("saddle-disk", "disk on the cubic saddle graph z = 0.4(s^2 - t^2) + 0.15 st + 0.1 s^3",
                          std::make_shared<Graph>(std::vector<Monomial>{{2, 0, 0.4}, {0, 2, -0.4}, {1, 1, 0.15},
                                                                        {3, 0, 0.1}},
                                                  2.0),
                          {BoundaryCurve::circle({0.1, 0.0}, 1.2)}, {0.1, 0.0}, 1));
    return scenes;
}

} // namespace

const std::vector<Scene>& catalog()
{
    static const std::vector<Scene> scenes = build();
    return scenes;
}

const Scene& catalog_scene(std::string_view name)
{
    for (const auto& scene : catalog()) {
        if (scene.name == name) return scene;
    }
    throw Error(ErrorKind::InvalidArgument, "no catalog scene named '" + std::string(name) + "'");
}

} // namespace sweepchi
