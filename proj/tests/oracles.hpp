#pragma once

// Independent reference computations for the tests. Everything here works
// from surface positions P(s,t) only, by finite differences, sampling or
// closed forms, never through the library's derivative or root machinery.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sweepchi/surface.hpp"

namespace oracle {

using sweepchi::ParamPoint;
using sweepchi::ParamRect;
using sweepchi::Surface;
using sweepchi::Vec3;

inline Vec3 pos(const Surface& s, double a, double b)
{
    return s.jet({a, b}).p;
}

/// Central-difference partials of P from positions alone.
struct FdJet {
    Vec3 ps, pt, pss, pst, ptt;
};

inline FdJet fd_jet(const Surface& s, ParamPoint p, double h = 1e-5)
{
    FdJet j;
    const Vec3 c = pos(s, p.s, p.t);
    const Vec3 sp = pos(s, p.s + h, p.t), sm = pos(s, p.s - h, p.t);
    const Vec3 tp = pos(s, p.s, p.t + h), tm = pos(s, p.s, p.t - h);
    j.ps = (sp - sm) / (2 * h);
    j.pt = (tp - tm) / (2 * h);
    j.pss = (sp - 2 * c + sm) / (h * h);
    j.ptt = (tp - 2 * c + tm) / (h * h);
    j.pst = (pos(s, p.s + h, p.t + h) - pos(s, p.s + h, p.t - h) - pos(s, p.s - h, p.t + h) +
             pos(s, p.s - h, p.t - h)) /
            (4 * h * h);
    return j;
}

/// Central differences of the analytic first partials, so second partials can
/// be checked at the same 1e-5 step without the h^-2 rounding of fd_jet.
struct FdSecond {
    Vec3 pss, pst, ptt;
};

inline FdSecond fd_second(const Surface& s, ParamPoint p, double h = 1e-5)
{
    const auto sp = s.jet({p.s + h, p.t}), sm = s.jet({p.s - h, p.t});
    const auto tp = s.jet({p.s, p.t + h}), tm = s.jet({p.s, p.t - h});
    return {(sp.ps - sm.ps) / (2 * h), (tp.ps - tm.ps) / (2 * h), (tp.pt - tm.pt) / (2 * h)};
}

/// Gauss curvature from finite-difference fundamental forms.
inline double fd_gauss(const Surface& s, ParamPoint p, double h = 1e-4)
{
    const FdJet j = fd_jet(s, p, h);
    const Vec3 n = j.ps.cross(j.pt).normalized();
    const double E = j.ps.dot(j.ps), F = j.ps.dot(j.pt), G = j.pt.dot(j.pt);
    const double e = j.pss.dot(n), f = j.pst.dot(n), g = j.ptt.dot(n);
    return (e * g - f * f) / (E * G - F * F);
}

inline ParamPoint random_point(const ParamRect& r, std::mt19937_64& rng, double margin = 0.0)
{
    std::uniform_real_distribution<double> us(r.s0 + margin, r.s1 - margin), ut(r.t0 + margin, r.t1 - margin);
    return {us(rng), ut(rng)};
}

/// Critical points of h = <P, u> located by dense sampling: on an n x n grid
/// of the (fully periodic) chart, cells where both difference-quotient
/// components of grad h change sign at the corners, merged into connected
/// clusters. Returns cluster centroids.
inline std::vector<ParamPoint> sampled_critical_points(const Surface& s, const Vec3& u, int n)
{
    const ParamRect& r = s.rect();
    const double hs = r.period_s() / n, ht = r.period_t() / n;
    auto idx = [n](int i, int j) { return static_cast<std::size_t>(((j % n + n) % n) * n + ((i % n + n) % n)); };
    std::vector<double> h(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) h[idx(i, j)] = u.dot(pos(s, r.s0 + i * hs, r.t0 + j * ht));
    std::vector<double> gs(h.size()), gt(h.size());
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            gs[idx(i, j)] = h[idx(i + 1, j)] - h[idx(i - 1, j)];
            gt[idx(i, j)] = h[idx(i, j + 1)] - h[idx(i, j - 1)];
        }
    }
    auto changes = [&](const std::vector<double>& g, int i, int j) {
        const double a = g[idx(i, j)], b = g[idx(i + 1, j)], c = g[idx(i, j + 1)], d = g[idx(i + 1, j + 1)];
        return std::min({a, b, c, d}) <= 0.0 && std::max({a, b, c, d}) >= 0.0;
    };
    std::vector<char> flag(h.size(), 0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) flag[idx(i, j)] = changes(gs, i, j) && changes(gt, i, j);

    std::vector<ParamPoint> out;
    std::vector<char> seen(h.size(), 0);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (!flag[idx(i, j)] || seen[idx(i, j)]) continue;
            // flood fill with wrapped neighbours; accumulate unwrapped offsets
            std::vector<std::pair<int, int>> stack{{i, j}};
            seen[idx(i, j)] = 1;
            double ss = 0, st = 0;
            int count = 0;
            while (!stack.empty()) {
                auto [a, b] = stack.back();
                stack.pop_back();
                ss += a;
                st += b;
                ++count;
                for (int da = -1; da <= 1; ++da) {
                    for (int db = -1; db <= 1; ++db) {
                        const int na = a + da, nb = b + db;
                        if (flag[idx(na, nb)] && !seen[idx(na, nb)]) {
                            seen[idx(na, nb)] = 1;
                            stack.emplace_back(na, nb);
                        }
                    }
                }
            }
            out.push_back(r.wrap({r.s0 + (ss / count + 0.5) * hs, r.t0 + (st / count + 0.5) * ht}));
        }
    }
    return out;
}

/// Curvature vector at the middle of three points (circumscribed circle).
inline Vec3 circumcurvature(const Vec3& a, const Vec3& b, const Vec3& c)
{
    const Vec3 x = a - b, y = c - b;
    const Vec3 w = x.cross(y);
    const Vec3 centre = (x.squaredNorm() * y - y.squaredNorm() * x).cross(w) / (2.0 * w.squaredNorm());
    return centre / centre.squaredNorm();
}

} // namespace oracle
