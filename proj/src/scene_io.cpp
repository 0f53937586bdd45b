#include "sweepchi/scene_io.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "sweepchi/errors.hpp"

namespace sweepchi {

namespace {

using json = nlohmann::json;

[[noreturn]] void parse_error(const std::string& what)
{
    throw Error(ErrorKind::ParseError, what);
}

json surface_json(const Surface& surface)
{
    if (const auto* p = dynamic_cast<const Plane*>(&surface)) {
        return {{"type", "plane"}, {"half_extent", p->half_extent()}};
    }
    if (const auto* s = dynamic_cast<const Sphere*>(&surface)) {
        return {{"type", "sphere"},
                {"half_extent", s->half_extent()},
                {"projection", s->pole() == ProjectionPole::South ? "south" : "north"}};
    }
    if (const auto* e = dynamic_cast<const Ellipsoid*>(&surface)) {
        return {{"type", "ellipsoid"},
                {"axes", {e->axes().x(), e->axes().y(), e->axes().z()}},
                {"half_extent", e->half_extent()}};
    }
    if (const auto* t = dynamic_cast<const Torus*>(&surface)) {
        return {{"type", "torus"}, {"R", t->major()}, {"r", t->minor()}};
    }
    if (const auto* g = dynamic_cast<const Graph*>(&surface)) {
        json terms = json::array();
        for (const auto& m : g->terms()) terms.push_back({m.i, m.j, m.c});
        return {{"type", "graph"}, {"half_extent", g->half_extent()}, {"terms", terms}};
    }
    throw Error(ErrorKind::InvalidArgument, "surface type has no scene encoding");
}

SurfacePtr surface_from(const json& j)
{
    const std::string type = j.at("type").get<std::string>();
    if (type == "plane") return std::make_shared<Plane>(j.at("half_extent").get<double>());
    if (type == "sphere") {
        const std::string proj = j.value("projection", std::string("south"));
        if (proj != "south" && proj != "north") parse_error("sphere projection must be 'south' or 'north'");
        return std::make_shared<Sphere>(j.at("half_extent").get<double>(),
                                        proj == "south" ? ProjectionPole::South : ProjectionPole::North);
    }
    if (type == "ellipsoid") {
        const auto axes = j.at("axes").get<std::vector<double>>();
        if (axes.size() != 3) parse_error("ellipsoid needs three semi-axes");
        return std::make_shared<Ellipsoid>(axes[0], axes[1], axes[2], j.at("half_extent").get<double>());
    }
    if (type == "torus") return std::make_shared<Torus>(j.at("R").get<double>(), j.at("r").get<double>());
    if (type == "graph") {
        std::vector<Monomial> terms;
        for (const auto& t : j.at("terms")) {
            if (!t.is_array() || t.size() != 3) parse_error("graph terms are [i, j, coefficient] triples");
            terms.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<double>()});
        }
        return std::make_shared<Graph>(std::move(terms), j.at("half_extent").get<double>());
    }
    parse_error("unknown surface type '" + type + "'");
}

json series_json(const FourierSeries& f)
{
    return {{"cos", f.cos}, {"sin", f.sin}};
}

FourierSeries series_from(const json& j)
{
    FourierSeries f;
    f.cos = j.value("cos", std::vector<double>{});
    f.sin = j.value("sin", std::vector<double>{});
    return f;
}

} // namespace

std::string scene_to_json(const Scene& scene)
{
    const Domain& d = scene.domain;
    json boundaries = json::array();
    for (const auto& c : d.boundaries()) {
        boundaries.push_back({{"s", series_json(c.s)},
                              {"t", series_json(c.t)},
                              {"winding", {c.winding_s, c.winding_t}},
                              {"orientation", c.orientation}});
    }
    json doc = {{"name", scene.name},
                {"description", scene.description},
                {"surface", surface_json(d.surface())},
                {"boundaries", boundaries},
                {"seed", {d.seed().s, d.seed().t}}};
    if (d.reference_chi()) doc["reference_chi"] = *d.reference_chi();
    return doc.dump(2) + "\n";
}

Scene scene_from_json(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        parse_error(std::string("malformed JSON: ") + e.what());
    }

    try {
        if (!doc.is_object()) parse_error("scene document must be a JSON object");
        std::vector<BoundaryCurve> curves;
        for (const auto& b : doc.value("boundaries", json::array())) {
            BoundaryCurve c;
            c.s = series_from(b.at("s"));
            c.t = series_from(b.at("t"));
            const auto winding = b.value("winding", std::vector<int>{0, 0});
            if (winding.size() != 2) parse_error("winding must be [w_s, w_t]");
            c.winding_s = winding[0];
            c.winding_t = winding[1];
            c.orientation = b.value("orientation", 1);
            curves.push_back(std::move(c));
        }
        const auto seed = doc.at("seed").get<std::vector<double>>();
        if (seed.size() != 2) parse_error("seed must be [s, t]");
        std::optional<int> chi;
        if (doc.contains("reference_chi")) chi = doc.at("reference_chi").get<int>();

        Scene scene{doc.at("name").get<std::string>(), doc.value("description", std::string{}),
                    Domain(surface_from(doc.at("surface")), std::move(curves), {seed[0], seed[1]}, chi)};
        validate_domain(scene.domain);
        return scene;
    } catch (const json::exception& e) {
        parse_error(std::string("scene schema: ") + e.what());
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::InvalidArgument) throw;
        throw Error(ErrorKind::ValidationError, e.what());
    }
}

Scene load_scene(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) parse_error("cannot open scene file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return scene_from_json(buf.str());
}

void save_scene(const std::filesystem::path& path, const Scene& scene)
{
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write scene file " + path.string());
    out << scene_to_json(scene);
}

} // namespace sweepchi
