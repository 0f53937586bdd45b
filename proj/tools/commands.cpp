#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "sweepchi/catalog.hpp"
#include "sweepchi/errors.hpp"
#include "sweepchi/oracle.hpp"
#include "sweepchi/scene_io.hpp"

namespace sweepchi::cli {

namespace {

using json = nlohmann::json;

int exit_for(const Error& e)
{
    switch (e.kind()) {
    case ErrorKind::GenericityExhausted:
        return kGenericityExhausted;
    case ErrorKind::NonIntegralResult:
        return kNonIntegral;
    default:
        return kInputError;
    }
}

template <class Body>
int guarded(std::ostream& err, Body&& body)
{
    try {
        return body();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

std::string vec_text(const Vec3& v)
{
    return fmt::format("({:.17g}, {:.17g}, {:.17g})", v.x(), v.y(), v.z());
}

json vec_json(const Vec3& v)
{
    return json::array({v.x(), v.y(), v.z()});
}

const char* kind_name(const TangencyEvent& e)
{
    return e.kind == TangencyKind::Interior ? "interior" : "boundary";
}

json event_json(const TangencyEvent& e)
{
    json j = {{"kind", kind_name(e)}, {"lambda", e.level}, {"s", e.location.s}, {"t", e.location.t}};
    if (e.kind == TangencyKind::Interior) {
        j["K"] = e.gauss;
        j["type"] = e.index > 0 ? "extreme" : "saddle";
    } else {
        j["curve"] = e.curve;
        j["tau"] = e.tau;
        j["k_g"] = e.geodesic;
        j["k_g_u"] = e.section;
        j["type"] = e.type == BoundaryType::Island ? "island" : "bridge";
    }
    j["sign"] = e.sign();
    return j;
}

std::string event_text(const TangencyEvent& e)
{
    if (e.kind == TangencyKind::Interior) {
        return fmt::format("  interior  lambda={:+.9f}  (s,t)=({:+.9f}, {:+.9f})  K={:+.6e}  {:<7}  {:+d}", e.level,
                           e.location.s, e.location.t, e.gauss, e.index > 0 ? "extreme" : "saddle", e.sign());
    }
    return fmt::format("  boundary  lambda={:+.9f}  curve={} tau={:.9f}  k_g={:+.6e} k_g^u={:+.6e}  {:<7}  {:+d}",
                       e.level, e.curve, e.tau, e.geodesic, e.section,
                       e.type == BoundaryType::Island ? "island" : "bridge", e.sign());
}

json report_json(const GenericityReport& r)
{
    return {{"requested", vec_json(r.requested.vec())},
            {"accepted", vec_json(r.accepted.vec())},
            {"retries", r.retries},
            {"rejections", r.rejections}};
}

void report_text(std::ostream& out, const GenericityReport& r)
{
    out << "direction: " << vec_text(r.accepted.vec());
    if (r.retries > 0) out << fmt::format("  (perturbed from {} after {} retries)", vec_text(r.requested.vec()), r.retries);
    out << '\n';
    for (const auto& why : r.rejections) out << "  rejected " << why << '\n';
}

std::string surface_label(const Surface& s)
{
    return std::string(surface_kind_name(s.kind()));
}

std::string chi_label(const Domain& d)
{
    return d.reference_chi() ? std::to_string(*d.reference_chi()) : std::string("?");
}

} // namespace

Scene resolve_scene(const std::string& ref)
{
    if (ref.empty()) throw Error(ErrorKind::InvalidArgument, "no scene given");
    std::error_code ec;
    if (std::filesystem::is_regular_file(ref, ec)) return load_scene(ref);
    return catalog_scene(ref);
}

Direction parse_direction(const std::string& text, Rng& rng)
{
    if (text == "random") return random_direction(rng);
    std::vector<double> xs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            xs.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::InvalidArgument, "direction component '" + item + "' is not a number");
        }
    }
    if (xs.size() == 2) xs.push_back(0.0);
    if (xs.size() != 3) throw Error(ErrorKind::InvalidArgument, "direction must be x,y,z or x,y or random");
    return Direction(xs[0], xs[1], xs[2]);
}

int cmd_chi(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Scene scene = resolve_scene(config.scene);
        Rng rng(config.seed);
        const Direction u = parse_direction(config.direction, rng);
        const SweepResult r = euler_characteristic(scene.domain, u, rng, config.sweep);

        if (config.format == Format::Json) {
            json events = json::array();
            for (const auto& e : r.events) events.push_back(event_json(e));
            const json doc = {{"scene", scene.name},
                              {"chi", r.chi},
                              {"genericity", report_json(r.report)},
                              {"events", events}};
            out << doc.dump(2) << '\n';
        } else if (config.format == Format::Csv) {
            out << "kind,lambda,s,t,curve,tau,quantity,sign\n";
            for (const auto& e : r.events) {
                const bool in = e.kind == TangencyKind::Interior;
                out << fmt::format("{},{:.17g},{:.17g},{:.17g},{},{},{:.17g},{}\n", kind_name(e), e.level,
                                   e.location.s, e.location.t, in ? "" : std::to_string(e.curve),
                                   in ? std::string() : fmt::format("{:.17g}", e.tau), e.quantity(), e.sign());
            }
        } else {
            out << "scene: " << scene.name << '\n';
            report_text(out, r.report);
            out << "events: " << r.events.size() << '\n';
            for (const auto& e : r.events) out << event_text(e) << '\n';
            out << "chi = " << r.chi << '\n';
        }
        return int{kOk};
    });
}

int cmd_census(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const Scene scene = resolve_scene(config.scene);
        Rng rng(config.seed);
        const Direction u = parse_direction(config.direction, rng);
        const SweepCensus census = sweep_census(scene.domain, u, rng, config.sweep);
        const int chi = census.chi();

        if (config.format == Format::Csv) {
            out << "lambda,kind,s,t,curve,tau,quantity,sign,running_chi_contribution\n";
            for (const auto& row : census.timeline) {
                const auto& e = row.event;
                const bool in = e.kind == TangencyKind::Interior;
                out << fmt::format("{:.17g},{},{:.17g},{:.17g},{},{},{:.17g},{},{:.17g}\n", e.level, kind_name(e),
                                   e.location.s, e.location.t, in ? "" : std::to_string(e.curve),
                                   in ? std::string() : fmt::format("{:.17g}", e.tau), e.quantity(), e.sign(),
                                   row.running);
            }
            out << fmt::format("# I2={},B2={},I1={},B1={},chi={}\n", census.I2, census.B2, census.I1, census.B1, chi);
        } else if (config.format == Format::Json) {
            json rows = json::array();
            for (const auto& row : census.timeline) {
                json j = event_json(row.event);
                j["running_chi_contribution"] = row.running;
                rows.push_back(std::move(j));
            }
            const json doc = {{"scene", scene.name},
                              {"genericity", report_json(census.report)},
                              {"timeline", rows},
                              {"I2", census.I2},
                              {"B2", census.B2},
                              {"I1", census.I1},
                              {"B1", census.B1},
                              {"chi", chi}};
            out << doc.dump(2) << '\n';
        } else {
            out << "scene: " << scene.name << '\n';
            report_text(out, census.report);
            for (const auto& row : census.timeline) {
                out << event_text(row.event) << fmt::format("  running={:+.1f}", row.running) << '\n';
            }
            out << fmt::format("I2 = {} (extremes), B2 = {} (saddles), I1 = {} (islands), B1 = {} (bridges)\n",
                               census.I2, census.B2, census.I1, census.B1);
            out << "chi = (I2 - B2) + (I1 - B1)/2 = " << chi << '\n';
        }
        return int{kOk};
    });
}

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        if (config.directions < 1) throw Error(ErrorKind::InvalidArgument, "-n must be at least 1");
        const Scene scene = resolve_scene(config.scene);
        const Domain& domain = scene.domain;
        Rng rng(config.seed);

        const CellComplexStats cells = chi_cell_complex(domain, config.cells);
        const GaussBonnetResult gb = chi_gauss_bonnet(domain, config.order);
        const long gb_chi = std::lround(gb.value);

        struct Row {
            Vec3 u;
            int retries;
            int sweep;
            int census;
            bool agree;
        };
        std::vector<Row> rows;
        int total_retries = 0, max_retries = 0;
        for (int k = 0; k < config.directions; ++k) {
            const SweepResult r = euler_characteristic(domain, random_direction(rng), rng, config.sweep);
            const int census = census_from_events(r.events).chi();
            bool agree = r.chi == census && r.chi == cells.chi() && r.chi == gb_chi && gb.residual < 1e-4;
            if (domain.reference_chi()) agree = agree && r.chi == *domain.reference_chi();
            rows.push_back({r.report.accepted.vec(), r.report.retries, r.chi, census, agree});
            total_retries += r.report.retries;
            max_retries = std::max(max_retries, r.report.retries);
        }
        const bool all = std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.agree; });

        if (config.format == Format::Json) {
            json dirs = json::array();
            for (const auto& r : rows) {
                dirs.push_back({{"direction", vec_json(r.u)},
                                {"retries", r.retries},
                                {"sweep", r.sweep},
                                {"census", r.census},
                                {"agree", r.agree}});
            }
            json doc = {{"scene", scene.name},
                        {"cell_complex", {{"resolution", cells.resolution}, {"V", cells.V}, {"E", cells.E},
                                          {"F", cells.F}, {"chi", cells.chi()}}},
                        {"gauss_bonnet", {{"order", config.order}, {"value", gb.value}, {"residual", gb.residual}}},
                        {"directions", dirs},
                        {"retries", {{"total", total_retries}, {"max", max_retries}}},
                        {"agree", all}};
            if (domain.reference_chi()) doc["reference_chi"] = *domain.reference_chi();
            out << doc.dump(2) << '\n';
        } else {
            out << "scene: " << scene.name << "  (reference chi = " << chi_label(domain) << ")\n";
            out << fmt::format("cell complex R={}: V={} E={} F={} chi={}\n", cells.resolution, cells.V, cells.E,
                               cells.F, cells.chi());
            out << fmt::format("Gauss-Bonnet order {}: {:.12f} (residual {:.3e})\n", config.order, gb.value,
                               gb.residual);
            out << fmt::format("{:>4}  {:<44}  {:>7}  {:>5}  {:>6}  {:>5}  {:>5}\n", "#", "direction", "retries",
                               "sweep", "census", "cells", "GB");
            for (std::size_t k = 0; k < rows.size(); ++k) {
                const Row& r = rows[k];
                const std::string dir = fmt::format("({:+.6f}, {:+.6f}, {:+.6f})", r.u.x(), r.u.y(), r.u.z());
                out << fmt::format("{:>4}  {:<44}  {:>7}  {:>5}  {:>6}  {:>5}  {:>5}{}\n", k, dir, r.retries, r.sweep,
                                   r.census, cells.chi(), gb_chi, r.agree ? "" : "  DISAGREE");
            }
            out << fmt::format("retries: total {}, max {}\n", total_retries, max_retries);
            out << fmt::format("worst Gauss-Bonnet residual: {:.3e}\n", gb.residual);
            if (all) out << fmt::format("all {} directions agree on chi = {}\n", rows.size(), rows.front().sweep);
        }
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (!rows[k].agree) err << "disagreement at direction " << k << ": u = " << vec_text(rows[k].u) << '\n';
        }
        return all ? int{kOk} : int{kDisagreement};
    });
}

int cmd_catalog(Format format, std::ostream& out)
{
    if (format == Format::Json) {
        json list = json::array();
        for (const auto& s : catalog()) {
            list.push_back({{"name", s.name},
                            {"surface", surface_label(s.domain.surface())},
                            {"reference_chi", s.domain.reference_chi() ? json(*s.domain.reference_chi()) : json()},
                            {"description", s.description}});
        }
        out << list.dump(2) << '\n';
        return kOk;
    }
    if (format == Format::Csv) {
        out << "name,surface,reference_chi\n";
        for (const auto& s : catalog()) {
            out << s.name << ',' << surface_label(s.domain.surface()) << ',' << chi_label(s.domain) << '\n';
        }
        return kOk;
    }
    for (const auto& s : catalog()) {
        out << fmt::format("{:<18} {:<10} chi={:<3} {}\n", s.name, surface_label(s.domain.surface()),
                           chi_label(s.domain), s.description);
    }
    return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Euler characteristic of surface domains by counting sweeping-plane tangencies"};
    app.require_subcommand(1);

    RunConfig config;
    std::string format = "human";
    const std::map<std::string, Format> formats{{"human", Format::Human}, {"json", Format::Json}, {"csv", Format::Csv}};

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));
    };
    auto add_sweep = [&](CLI::App* sub) {
        sub->add_option("--scene", config.scene, "Catalog scene name or scene file")->required();
        sub->add_option("--seed", config.seed, "Random seed for directions and perturbations");
        sub->add_option("--grid", config.sweep.grid, "Interior seeding grid G")->check(CLI::Range(kMinGrid, 1 << 14));
        sub->add_option("--samples", config.sweep.samples, "Boundary samples M per curve")
            ->check(CLI::Range(kMinSamples, 1 << 22));
        sub->add_option("--tol-k", config.sweep.tol.gauss, "Degeneracy threshold for |K|")
            ->check(CLI::PositiveNumber);
        sub->add_option("--tol-kg", config.sweep.tol.geodesic, "Degeneracy threshold for |k_g - k_g^u|")
            ->check(CLI::PositiveNumber);
        sub->add_option("--retries", config.sweep.max_retries, "Perturbation retries for non-generic directions")
            ->check(CLI::Range(0, 64));
        add_format(sub);
    };

    auto* chi = app.add_subcommand("chi", "Compute chi from the tangencies of one sweep");
    add_sweep(chi);
    chi->add_option("--direction", config.direction, "x,y,z | x,y | random");
    auto* census = app.add_subcommand("census", "Level-ordered event timeline with island/bridge tallies");
    add_sweep(census);
    census->add_option("--direction", config.direction, "x,y,z | x,y | random");
    auto* validate = app.add_subcommand("validate", "Compare sweep, census, cell complex and Gauss-Bonnet");
    add_sweep(validate);
    validate->add_option("-n", config.directions, "Number of random directions")->check(CLI::PositiveNumber);
    validate->add_option("--cells", config.cells, "Cell complex resolution")->check(CLI::Range(kMinGrid, 1 << 13));
    validate->add_option("--order", config.order, "Gauss-Bonnet quadrature order")->check(CLI::Range(1, 256));
    auto* list = app.add_subcommand("catalog", "List the built-in scenes");
    add_format(list);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }

    config.format = formats.at(format);
    if (*chi) return cmd_chi(config, out, err);
    if (*census) return cmd_census(config, out, err);
    if (*validate) return cmd_validate(config, out, err);
    return cmd_catalog(config.format, out);
}

} // namespace sweepchi::cli
