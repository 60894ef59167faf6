#pragma once

#include <algorithm>
#include <cmath>

#include "embryoreg/grid.hpp"

namespace embryoreg {

/// Clamped trilinear cell lookup shared by scalar and vector sampling.
/// cx/cy/cz flag coordinates that were clamped to the grid (the sampled
/// function is flat there, so positional derivatives vanish).
struct TriCell {
    int x0, y0, z0;
    double fx, fy, fz;
    bool cx, cy, cz;
};

inline TriCell tri_cell(const Dims& d, const Vec3& p) {
    TriCell c;
    const auto axis = [](double v, int n, int& i0, double& f, bool& clamped) {
        clamped = !(v >= 0.0 && v <= n - 1);
        if (n < 2) {
            i0 = 0;
            f = 0.0;
            clamped = true;
            return;
        }
        const double vc = std::clamp(v, 0.0, static_cast<double>(n - 1));
        i0 = std::min(static_cast<int>(vc), n - 2);
        f = vc - i0;
    };
    axis(p.x, d.x, c.x0, c.fx, c.cx);
    axis(p.y, d.y, c.y0, c.fy, c.cy);
    axis(p.z, d.z, c.z0, c.fz, c.cz);
    return c;
}

/// Trilinear interpolation of a scalar grid; if grad is non-null it receives
/// d(value)/d(p), zeroed on clamped axes.
inline double interp_scalar(const double* g, const Dims& d, const TriCell& c, Vec3* grad) {
    const std::int64_t sx = 1;
    const std::int64_t sy = d.x;
    const std::int64_t sz = static_cast<std::int64_t>(d.x) * d.y;
    const double* base = g + c.x0 * sx + c.y0 * sy + c.z0 * sz;

    const double v000 = base[0], v100 = base[sx];
    const double v010 = base[sy], v110 = base[sx + sy];
    const double v001 = base[sz], v101 = base[sx + sz];
    const double v011 = base[sy + sz], v111 = base[sx + sy + sz];

    const double c00 = v000 + (v100 - v000) * c.fx;
    const double c10 = v010 + (v110 - v010) * c.fx;
    const double c01 = v001 + (v101 - v001) * c.fx;
    const double c11 = v011 + (v111 - v011) * c.fx;
    const double c0 = c00 + (c10 - c00) * c.fy;
    const double c1 = c01 + (c11 - c01) * c.fy;
    const double value = c0 + (c1 - c0) * c.fz;

    if (grad) {
        const double gx0 = (v100 - v000) + ((v110 - v010) - (v100 - v000)) * c.fy;
        const double gx1 = (v101 - v001) + ((v111 - v011) - (v101 - v001)) * c.fy;
        grad->x = c.cx ? 0.0 : gx0 + (gx1 - gx0) * c.fz;
        grad->y = c.cy ? 0.0 : (c10 - c00) + ((c11 - c01) - (c10 - c00)) * c.fz;
        grad->z = c.cz ? 0.0 : c1 - c0;
    }
    return value;
}

}  // namespace embryoreg
