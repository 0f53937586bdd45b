#pragma once

#include <vector>

#include "sweepchi/domain.hpp"
#include "sweepchi/sweep.hpp"

namespace sweepchi {

struct CellComplexStats {
    long V = 0, E = 0, F = 0;
    int resolution = 0;

    [[nodiscard]] long chi() const noexcept { return V - E + F; }
};

/// V - E + F of the closed subcomplex of the R x R parameter grid made of the
/// cells whose centres lie in D (periodic wraps identified). A centre on the
/// boundary counts as inside.
[[nodiscard]] CellComplexStats chi_cell_complex(const Domain& domain, int resolution);

struct GaussBonnetResult {
    double area_term = 0.0;      // integral of K over D
    double boundary_term = 0.0;  // integral of k_g over the boundary
    double value = 0.0;          // (area_term + boundary_term) / 2pi
    double residual = 0.0;       // distance from value to the nearest integer
};

/// Classical Gauss-Bonnet evaluated by quadrature of the given order. Rows of
/// D are clipped exactly at the boundary crossings.
[[nodiscard]] GaussBonnetResult chi_gauss_bonnet(const Domain& domain, int order = 32);

struct CensusEntry {
    TangencyEvent event;
    double running = 0.0;  // partial chi after this event
};

/// Events of one sweep in order of the level lambda, with the tallies of
/// extremes (I2), saddles (B2), islands (I1) and bridges (B1).
struct SweepCensus {
    int I2 = 0, B2 = 0, I1 = 0, B1 = 0;
    std::vector<CensusEntry> timeline;
    GenericityReport report;

    /// (I2 - B2) + (I1 - B1) / 2; throws NonIntegralResult when I1 - B1 is
    /// odd.
    [[nodiscard]] int chi() const;
};

/// Ties in lambda (within 1e-12) are ordered interior first, interior events
/// by (s, t) and boundary events by (curve, tau).
[[nodiscard]] SweepCensus census_from_events(std::vector<TangencyEvent> events);

[[nodiscard]] SweepCensus sweep_census(const Domain& domain, const Direction& u, Rng& rng,
                                       const SweepOptions& opts = {});

} // namespace sweepchi
