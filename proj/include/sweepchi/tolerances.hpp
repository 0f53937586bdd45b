#pragma once

namespace sweepchi {

/// Numerical thresholds. Every value here is a default; callers may override
/// any of them per call.
struct Tolerances {
    double chart = 1e-12;         // |P_s x P_t| below this is a degenerate chart
    double curve_speed = 1e-12;   // |alpha'| below this is a singular curve point
    double transverse = 1e-10;    // |<u,n>| below this: section not transverse
    double projection = 1e-10;    // |u - <u,N>N| below this: no tangential projection
    double on_boundary = 1e-9;    // parameter distance treated as "on the boundary"
    double gauss = 1e-8;          // |K| below this at a critical point is degenerate
    double geodesic = 1e-8;       // |k_g - k_g^u| below this is degenerate
    double normal = 1e-8;         // |<u,N>| > 1 - normal at a boundary point is critical
    double dedup = 1e-6;          // parameter distance merging Newton roots
    double pole = 1e-6;           // distance of +-u from the boundary on the sphere
    double integrality = 1e-9;
};

struct SweepOptions {
    int grid = 256;          // G: Newton seed grid is G x G over the chart
    int samples = 4096;      // M: samples per boundary curve for bracketing
    int max_retries = 8;
    double base_angle = 1e-3;  // perturbation angle at retry k >= 1 is base_angle * 2^(k-1)
    Tolerances tol{};
};

inline constexpr int kMinGrid = 16;
inline constexpr int kMinSamples = 64;

} // namespace sweepchi
