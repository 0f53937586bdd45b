#include "sweepchi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include "sweepchi/errors.hpp"
#include "sweepchi/geometry.hpp"
#include "sweepchi/quadrature.hpp"
#include "sweepchi/roots.hpp"

namespace sweepchi {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Two distinct boundary curves closer than a few cells would merge or pinch
// in the cell complex.
void check_resolution(const Domain& domain, double min_gap)
{
    const auto& curves = domain.boundaries();
    constexpr std::size_t stride = 4;
    for (std::size_t a = 0; a < curves.size(); ++a) {
        const auto pa = domain.samples(a);
        for (std::size_t b = a + 1; b < curves.size(); ++b) {
            const auto pb = domain.samples(b);
            for (std::size_t i = 0; i < pa.size(); i += stride) {
                for (std::size_t j = 0; j < pb.size(); j += stride) {
                    const double d = domain.rect().distance({pa[i].x(), pa[i].y()}, {pb[j].x(), pb[j].y()});
                    if (d < min_gap) {
                        throw Error(ErrorKind::ResolutionTooCoarse,
                                    "boundary curves " + std::to_string(a) + " and " + std::to_string(b) +
                                        " are within 3 cells of each other");
                    }
                }
            }
        }
    }
}

double wrap_into(double x, double lo, double period)
{
    double r = std::fmod(x - lo, period);
    if (r < 0.0) r += period;
    return lo + r;
}

// Monotone pieces of t(tau) for one boundary curve.
struct CurveScan {
    std::size_t curve = 0;
    bool horizontal = false;
    std::vector<std::pair<double, double>> pieces;
};

double curve_t(const Domain& d, std::size_t c, double tau)
{
    return d.curve_jet(c, tau).c.y();
}

CurveScan scan_curve(const Domain& domain, std::size_t c, std::vector<double>& breakpoints)
{
    const ParamRect& rect = domain.rect();
    CurveScan scan;
    scan.curve = c;

    const auto dt = [&](double tau) { return domain.curve_jet(c, tau).dc.y(); };
    std::vector<double> values(static_cast<std::size_t>(Domain::kSamples));
    double max_abs = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = dt(kTwoPi * static_cast<double>(i) / static_cast<double>(values.size()));
        max_abs = std::max(max_abs, std::abs(values[i]));
    }
    auto add_break = [&](double t) {
        if (rect.wrap_t) t = wrap_into(t, rect.t0, rect.period_t());
        if (t > rect.t0 && t < rect.t1) breakpoints.push_back(t);
    };
    if (max_abs < 1e-12) {
        scan.horizontal = true;
        add_break(curve_t(domain, c, 0.0));
        return scan;
    }

    std::vector<double> extrema;
    for (double tau : periodic_roots(dt, values)) extrema.push_back(std::fmod(tau, kTwoPi));
    std::sort(extrema.begin(), extrema.end());
    if (extrema.empty()) {
        scan.pieces.emplace_back(0.0, kTwoPi);
        return scan;
    }
    for (std::size_t k = 0; k < extrema.size(); ++k) {
        add_break(curve_t(domain, c, extrema[k]));
        const double next = k + 1 < extrema.size() ? extrema[k + 1] : extrema.front() + kTwoPi;
        scan.pieces.emplace_back(extrema[k], next);
    }
    return scan;
}

// Lifted s coordinates where the boundary meets the row t = level, wrapped
// into the rectangle when s is periodic.
std::vector<double> row_crossings(const Domain& domain, const std::vector<CurveScan>& scans, double level)
{
    const ParamRect& rect = domain.rect();
    std::vector<double> xs;
    for (const CurveScan& scan : scans) {
        if (scan.horizontal) continue;
        for (const auto& [a, b] : scan.pieces) {
            const double ta = curve_t(domain, scan.curve, a);
            const double tb = curve_t(domain, scan.curve, b);
            const double lo = std::min(ta, tb);
            const double hi = std::max(ta, tb);
            int k0 = 0, k1 = 0;
            if (rect.wrap_t) {
                k0 = static_cast<int>(std::ceil((lo - level) / rect.period_t()));
                k1 = static_cast<int>(std::floor((hi - level) / rect.period_t()));
            }
            for (int k = k0; k <= k1; ++k) {
                const double target = level + k * rect.period_t();
                if (!(target >= lo && target < hi)) continue;
                const auto g = [&](double tau) { return curve_t(domain, scan.curve, tau) - target; };
                const double tau = refine_root(g, a, b, ta - target, tb - target);
                double s = domain.curve_jet(scan.curve, tau).c.x();
                if (rect.wrap_s) s = wrap_into(s, rect.s0, rect.period_s());
                xs.push_back(s);
            }
        }
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

double curvature_density(const Surface& surface, ParamPoint p)
{
    const SurfaceGeometry g = surface_geometry(surface, p);
    return g.gauss * g.area_element();
}

} // namespace

CellComplexStats chi_cell_complex(const Domain& domain, int resolution)
{
    if (resolution < kMinGrid) {
        throw Error(ErrorKind::InvalidArgument, "cell complex resolution must be at least " + std::to_string(kMinGrid));
    }
    const ParamRect& rect = domain.rect();
    const int n = resolution;
    const double hs = rect.period_s() / n;
    const double ht = rect.period_t() / n;
    check_resolution(domain, 3.0 * std::max(hs, ht));

    // Row by row: one full membership query, then parity flips between
    // neighbouring centres.
    std::vector<char> inside(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    auto cell = [n](int i, int j) { return static_cast<std::size_t>(j) * static_cast<std::size_t>(n) +
                                           static_cast<std::size_t>(i); };
    for (int j = 0; j < n; ++j) {
        const double t = rect.t0 + (j + 0.5) * ht;
        bool known = false;
        bool cur = false;
        ParamPoint prev{};
        for (int i = 0; i < n; ++i) {
            const ParamPoint p{rect.s0 + (i + 0.5) * hs, t};
            try {
                if (known) {
                    const ParamPoint path[] = {prev, p};
                    cur = cur != ((domain.crossings(path) & 1) != 0);
                } else {
                    cur = domain.contains(p);
                    known = true;
                }
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::OnBoundary) throw;
                inside[cell(i, j)] = 1;
                known = false;
                continue;
            }
            inside[cell(i, j)] = cur ? 1 : 0;
            prev = p;
        }
    }

    const int vs = rect.wrap_s ? n : n + 1;
    const int vt = rect.wrap_t ? n : n + 1;
    auto vi = [&](int i) { return rect.wrap_s ? i % n : i; };
    auto vj = [&](int j) { return rect.wrap_t ? j % n : j; };
    std::vector<char> vert(static_cast<std::size_t>(vs) * static_cast<std::size_t>(vt), 0);
    std::vector<char> hedge(static_cast<std::size_t>(n) * static_cast<std::size_t>(vt), 0);   // (i,j)-(i+1,j)
    std::vector<char> vedge(static_cast<std::size_t>(vs) * static_cast<std::size_t>(n), 0);   // (i,j)-(i,j+1)
    auto at = [](std::vector<char>& v, int stride, int i, int j) -> char& {
        return v[static_cast<std::size_t>(j) * static_cast<std::size_t>(stride) + static_cast<std::size_t>(i)];
    };

    CellComplexStats stats;
    stats.resolution = n;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (!inside[cell(i, j)]) continue;
            ++stats.F;
            at(vert, vs, vi(i), vj(j)) = 1;
            at(vert, vs, vi(i + 1), vj(j)) = 1;
            at(vert, vs, vi(i), vj(j + 1)) = 1;
            at(vert, vs, vi(i + 1), vj(j + 1)) = 1;
            at(hedge, n, i, vj(j)) = 1;
            at(hedge, n, i, vj(j + 1)) = 1;
            at(vedge, vs, vi(i), j) = 1;
            at(vedge, vs, vi(i + 1), j) = 1;
        }
    }
    stats.V = std::count(vert.begin(), vert.end(), 1);
    stats.E = std::count(hedge.begin(), hedge.end(), 1) + std::count(vedge.begin(), vedge.end(), 1);
    return stats;
}

GaussBonnetResult chi_gauss_bonnet(const Domain& domain, int order)
{
    const GaussRule rule = gauss_legendre(order);
    const Surface& surface = domain.surface();
    const ParamRect& rect = domain.rect();
    GaussBonnetResult r;

    if (domain.boundaries().empty()) {
        r.area_term = integrate_composite(rule, rect.t0, rect.t1, 8, [&](double t) {
            return integrate_composite(rule, rect.s0, rect.s1, 8,
                                       [&](double s) { return curvature_density(surface, {s, t}); });
        });
    } else {
        std::vector<double> breaks{rect.t0, rect.t1};
        std::vector<CurveScan> scans;
        for (std::size_t c = 0; c < domain.boundaries().size(); ++c) scans.push_back(scan_curve(domain, c, breaks));
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end(),
                                 [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                     breaks.end());

        const auto row = [&](double t) {
            const std::vector<double> xs = row_crossings(domain, scans, t);
            std::vector<std::pair<double, double>> intervals;
            if (xs.empty()) {
                intervals.emplace_back(rect.s0, rect.s1);
            } else if (rect.wrap_s) {
                for (std::size_t k = 0; k + 1 < xs.size(); ++k) intervals.emplace_back(xs[k], xs[k + 1]);
                intervals.emplace_back(xs.back(), xs.front() + rect.period_s());
            } else {
                double a = rect.s0;
                for (double x : xs) {
                    intervals.emplace_back(a, x);
                    a = x;
                }
                intervals.emplace_back(a, rect.s1);
            }
            double sum = 0.0;
            for (const auto& [a, b] : intervals) {
                if (b - a <= 0.0) continue;
                bool in = false;
                try {
                    in = domain.contains(rect.wrap({0.5 * (a + b), t}));
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::OnBoundary) throw;
                    continue;  // sliver narrower than the boundary tolerance
                }
                if (!in) continue;
                const int panels = std::max(1, static_cast<int>(std::ceil(8.0 * (b - a) / rect.period_s())));
                sum += integrate_composite(rule, a, b, panels,
                                           [&](double s) { return curvature_density(surface, {s, t}); });
            }
            return sum;
        };

        // Between breakpoints the row structure is fixed; crossings appear
        // with square-root behaviour at the ends, which t = a + (b-a)(1 -
        // cos pi x)/2 smooths out.
        for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
            const double a = breaks[k];
            const double b = breaks[k + 1];
            const int panels = std::max(2, static_cast<int>(std::ceil(8.0 * (b - a) / rect.period_t())));
            r.area_term += integrate_composite(rule, 0.0, 1.0, panels, [&](double x) {
                const double t = a + 0.5 * (b - a) * (1.0 - std::cos(std::numbers::pi * x));
                return row(t) * 0.5 * (b - a) * std::numbers::pi * std::sin(std::numbers::pi * x);
            });
        }
    }

    for (const auto& curve : domain.boundaries()) {
        r.boundary_term += integrate_composite(rule, 0.0, kTwoPi, 64, [&](double tau) {
            const CurveGeometry g = curve_geometry(surface, curve, tau);
            return g.geodesic * g.speed;
        });
    }
    r.value = (r.area_term + r.boundary_term) / kTwoPi;
    r.residual = std::abs(r.value - std::round(r.value));
    return r;
}

int SweepCensus::chi() const
{
    const int twice = 2 * (I2 - B2) + (I1 - B1);
    if (twice % 2 != 0) {
        throw Error(ErrorKind::NonIntegralResult, "island and bridge counts differ by an odd number");
    }
    return twice / 2;
}

SweepCensus census_from_events(std::vector<TangencyEvent> events)
{
    const auto key = [](const TangencyEvent& e) {
        return e.kind == TangencyKind::Interior
                   ? std::tuple(0, 0.0, e.location.s, e.location.t)
                   : std::tuple(1, static_cast<double>(e.curve), e.tau, 0.0);
    };
    std::sort(events.begin(), events.end(),
              [](const TangencyEvent& a, const TangencyEvent& b) { return a.level < b.level; });
    for (std::size_t first = 0; first < events.size();) {
        std::size_t last = first + 1;
        while (last < events.size() && events[last].level - events[last - 1].level <= 1e-12) ++last;
        std::sort(events.begin() + static_cast<std::ptrdiff_t>(first), events.begin() + static_cast<std::ptrdiff_t>(last),
                  [&](const TangencyEvent& a, const TangencyEvent& b) { return key(a) < key(b); });
        first = last;
    }

    SweepCensus census;
    double running = 0.0;
    for (auto& e : events) {
        if (e.kind == TangencyKind::Interior) {
            (e.index > 0 ? census.I2 : census.B2) += 1;
            running += e.index;
        } else {
            (e.type == BoundaryType::Island ? census.I1 : census.B1) += 1;
            running += 0.5 * e.sign();
        }
        census.timeline.push_back({std::move(e), running});
    }
    return census;
}

SweepCensus sweep_census(const Domain& domain, const Direction& u, Rng& rng, const SweepOptions& opts)
{
    SweepResult sweep = euler_characteristic(domain, u, rng, opts);
    SweepCensus census = census_from_events(std::move(sweep.events));
    census.report = std::move(sweep.report);
    return census;
}

} // namespace sweepchi
