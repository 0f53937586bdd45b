// Runs the seven acceptance criteria and prints one [PASS] or [FAIL] line for
// each. Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "oracles.hpp"
#include "sweepchi/catalog.hpp"
#include "sweepchi/errors.hpp"
#include "sweepchi/oracle.hpp"
#include "sweepchi/special.hpp"
#include "sweepchi/sweep.hpp"

using namespace sweepchi;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Coherence {
    long events = 0;
    long violations = 0;

    void add(const std::vector<TangencyEvent>& events_)
    {
        events += static_cast<long>(events_.size());
        for (const auto& e : events_) violations += !e.coherent();
    }
};

Coherence coherence;

Outcome catalog_exactness()
{
    Outcome o;
    long runs = 0, wrong = 0, retried = 0;
    for (const auto& sc : catalog()) {
        Rng rng(1000 + runs);
        for (int k = 0; k < 100; ++k, ++runs) {
            try {
                const SweepResult r = euler_characteristic(sc.domain, random_direction(rng), rng);
                coherence.add(r.events);
                retried += r.report.retries > 0;
                if (r.chi != *sc.domain.reference_chi()) {
                    ++wrong;
                    o.detail += fmt::format(" {}: chi {} != {};", sc.name, r.chi, *sc.domain.reference_chi());
                }
            } catch (const Error& e) {
                ++wrong;
                o.detail += fmt::format(" {}: {};", sc.name, e.what());
            }
        }
    }
    o.pass = wrong == 0;
    o.detail = fmt::format("{} scenes x 100 directions, {} wrong, {} needed a retry.", catalog().size(), wrong,
                           retried) +
               o.detail;
    return o;
}

Outcome triple_oracle()
{
    Outcome o;
    std::string bad;
    double worst = 0.0;
    for (const auto& sc : catalog()) {
        const Domain& d = sc.domain;
        Rng rng(2000);
        try {
            for (int k = 0; k < 20; ++k) {
                const SweepResult r = euler_characteristic(d, random_direction(rng), rng);
                coherence.add(r.events);
                const int census = census_from_events(r.events).chi();
                if (r.chi != census || r.chi != *d.reference_chi())
                    bad += fmt::format(" {}: sweep {} census {};", sc.name, r.chi, census);
            }
            const long cells = chi_cell_complex(d, 512).chi();
            const GaussBonnetResult gb = chi_gauss_bonnet(d, 32);
            worst = std::max(worst, std::abs(gb.value - *d.reference_chi()));
            if (cells != *d.reference_chi()) bad += fmt::format(" {}: cell complex {};", sc.name, cells);
            if (std::abs(gb.value - *d.reference_chi()) > 1e-4)
                bad += fmt::format(" {}: Gauss-Bonnet {:.6f};", sc.name, gb.value);
        } catch (const Error& e) {
            bad += fmt::format(" {}: {};", sc.name, e.what());
        }
    }
    o.pass = bad.empty();
    o.detail = fmt::format("sweep = census = cells(R=512) on every scene, worst Gauss-Bonnet error {:.1e}.", worst) +
               bad;
    return o;
}

Outcome sign_coherence()
{
    return {coherence.violations == 0,
            fmt::format("{} violations among {} events from criteria 1, 2, 4 and 6.", coherence.violations,
                        coherence.events)};
}

Outcome special_cases()
{
    Outcome o;
    long compared = 0, disagreements = 0, redrawn = 0;
    std::string bad;
    auto note = [&](const std::string& scene, const char* formula, int got, int want) {
        ++compared;
        if (got != want) {
            ++disagreements;
            bad += fmt::format(" {} {}: {} vs sweep {};", scene, formula, got, want);
        }
    };
    for (const auto& sc : catalog()) {
        const Domain& d = sc.domain;
        const SurfaceKind kind = d.surface().kind();
        if (kind != SurfaceKind::Plane && kind != SurfaceKind::Sphere) continue;
        Rng rng(4000);
        for (int done = 0; done < 50;) {
            Direction u = random_direction(rng);
            try {
                if (kind == SurfaceKind::Plane) {
                    const Eigen::Vector2d flat(u.vec().x(), u.vec().y());
                    u = Direction(flat.x(), flat.y(), 0.0);
                    const SweepResult r = euler_characteristic(d, u, rng);
                    if (r.report.retries > 0) {  // the planar formula needs this exact u
                        ++redrawn;
                        continue;
                    }
                    coherence.add(r.events);
                    note(sc.name, "planar", chi_planar(d, flat).chi, r.chi);
                } else {
                    const SweepResult r = euler_characteristic(d, u, rng);
                    if (r.report.retries > 0) {
                        ++redrawn;
                        continue;
                    }
                    coherence.add(r.events);
                    note(sc.name, "parallels", chi_sphere_parallels(d, u).chi, r.chi);
                    note(sc.name, "meridians", chi_sphere_meridians(d, u).chi, r.chi);
                }
                ++done;
            } catch (const Error& e) {
                if (!is_genericity_failure(e.kind())) {
                    ++disagreements;
                    bad += fmt::format(" {}: {};", sc.name, e.what());
                    ++done;
                } else {
                    ++redrawn;
                }
            }
        }
    }
    o.pass = disagreements == 0;
    o.detail = fmt::format("{} comparisons on plane and sphere scenes, {} disagreements, {} directions redrawn.",
                           compared, disagreements, redrawn) +
               bad;
    return o;
}

Outcome genericity_guard()
{
    Outcome o;
    int accepted = 0, worst = 0;
    std::string bad;
    for (const char* name : {"torus", "cap"}) {
        const Domain& d = catalog_scene(name).domain;
        const Direction axis(0.0, 0.0, 1.0);
        for (int trial = 0; trial < 100; ++trial) {
            Rng rng(5000 + trial);
            try {
                const auto [u, report] = ensure_generic(d, axis, rng);
                worst = std::max(worst, report.retries);
                const SweepResult r = euler_characteristic(d, u, rng);
                if (report.retries >= 1 && report.retries <= 3 && r.report.retries == 0 &&
                    r.chi == *d.reference_chi())
                    ++accepted;
                else
                    bad += fmt::format(" {} trial {}: {} retries;", name, trial, report.retries);
            } catch (const Error& e) {
                bad += fmt::format(" {} trial {}: {};", name, trial, e.what());
            }
        }
    }
    o.pass = accepted == 200;
    o.detail = fmt::format("{}/200 trials rejected at attempt 0 and accepted within 3 retries (max {}).", accepted,
                           worst) +
               bad;
    return o;
}

Outcome resolution_stability()
{
    SweepOptions fine;
    fine.grid = 512;
    fine.samples = 8192;
    long compared = 0, changed = 0;
    std::string bad;
    for (const auto& sc : catalog()) {
        Rng rng(6000);
        for (int k = 0; k < 20; ++k) {
            try {
                const auto [u, report] = ensure_generic(sc.domain, random_direction(rng), rng);
                const auto coarse = tangencies(sc.domain, u);
                const auto dense = tangencies(sc.domain, u, fine);
                coherence.add(coarse);
                coherence.add(dense);
                ++compared;
                if (coarse.size() != dense.size()) {
                    ++changed;
                    bad += fmt::format(" {}: {} vs {} events;", sc.name, coarse.size(), dense.size());
                }
            } catch (const Error& e) {
                ++changed;
                bad += fmt::format(" {}: {};", sc.name, e.what());
            }
        }
    }
    return {changed == 0,
            fmt::format("{} directions, (G, M) = (256, 4096) vs (512, 8192), {} changed counts.", compared, changed) +
                bad};
}

Outcome finite_differences()
{
    std::mt19937_64 rng(7000);
    double worst = 0.0;
    std::string where;
    for (const auto& sc : catalog()) {
        const Surface& s = sc.domain.surface();
        for (int k = 0; k < 1000; ++k) {
            const ParamPoint p = oracle::random_point(s.rect(), rng, 1e-3);
            const SurfaceJet j = s.jet(p);
            const oracle::FdJet first = oracle::fd_jet(s, p);
            const oracle::FdSecond second = oracle::fd_second(s, p);
            auto rel = [](const Vec3& a, const Vec3& b) { return (a - b).norm() / std::max(1.0, b.norm()); };
            const double e = std::max({rel(first.ps, j.ps), rel(first.pt, j.pt), rel(second.pss, j.pss),
                                       rel(second.pst, j.pst), rel(second.ptt, j.ptt)});
            if (e > worst) {
                worst = e;
                where = sc.name;
            }
        }
    }
    return {worst < 1e-6, fmt::format("1000 points per scene surface, worst relative error {:.1e} ({}).", worst, where)};
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    // Coherence is tallied while the other criteria run, so it reports after
    // them.
    const Criterion criteria[] = {
        {"1 catalog exactness", catalog_exactness},       {"2 triple-oracle agreement", triple_oracle},
        {"4 special-case equivalence", special_cases},    {"5 genericity guard", genericity_guard},
        {"6 resolution stability", resolution_stability}, {"7 finite-difference partials", finite_differences},
        {"3 sign coherence", sign_coherence},
    };
    std::vector<std::pair<std::string, Outcome>> results;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("unexpected exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        results.emplace_back(c.name, Outcome{o.pass, o.detail + fmt::format(" [{:.1f}s]", seconds)});
    }
    std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    int failed = 0;
    for (const auto& [name, o] : results) {
        failed += !o.pass;
        fmt::print("[{}] {}: {}\n", o.pass ? "PASS" : "FAIL", name, o.detail);
    }
    std::fflush(stdout);
    return failed;
}
