#include "embryoreg/volume.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "embryoreg/errors.hpp"

namespace embryoreg {

Volume::Volume(Dims d, double voxel_size, std::vector<double> values)
    : dims(d), voxel_size_mm(voxel_size), data(std::move(values)) {}

void Volume::validate(const char* stage) const {
    if (!dims.valid()) {
        throw_input(stage, "dims must be positive");
    }
    if (static_cast<std::int64_t>(data.size()) != dims.count()) {
        throw_input(stage, "data length does not match dims product");
    }
    if (!(voxel_size_mm > 0.0) || !std::isfinite(voxel_size_mm)) {
        throw_input(stage, "voxel_size_mm must be positive and finite");
    }
    for (double v : data) {
        if (!std::isfinite(v)) {
            throw_input(stage, "non-finite voxel value");
        }
    }
    if (ga_days && *ga_days < 0) {
        throw_input(stage, "ga_days must be non-negative");
    }
    if (landmarks) {
        for (const Vec3& p : {landmarks->crown, landmarks->rump}) {
            if (!p.finite() || p.x < 0.0 || p.x >= dims.x || p.y < 0.0 || p.y >= dims.y ||
                p.z < 0.0 || p.z >= dims.z) {
                throw_input(stage, "landmark outside [0, dims)");
            }
        }
    }
}

Mask::Mask(Dims d, std::uint8_t fill) : dims(d), data(static_cast<size_t>(d.count()), fill) {}

std::int64_t Mask::count_foreground() const {
    return std::count(data.begin(), data.end(), std::uint8_t{1});
}

namespace {

struct PadScaleMap {
    // padded coordinate = input coordinate + off; output = padded * (target/cube)
    int off[3];
    int cube;
    double scale;  // cube / target, i.e. output -> padded coordinate factor
};

PadScaleMap make_pad_scale(const Dims& d, int target_dim) {
    PadScaleMap m;
    m.cube = d.max_side();
    m.off[0] = (m.cube - d.x) / 2;
    m.off[1] = (m.cube - d.y) / 2;
    m.off[2] = (m.cube - d.z) / 2;
    m.scale = static_cast<double>(m.cube) / target_dim;
    return m;
}

// Sample the zero-padded input at padded-space coordinate p (trilinear).
double sample_padded(const Volume& v, const PadScaleMap& m, double px, double py, double pz) {
    const double sx = px - m.off[0];
    const double sy = py - m.off[1];
    const double sz = pz - m.off[2];
    const int x0 = static_cast<int>(std::floor(sx));
    const int y0 = static_cast<int>(std::floor(sy));
    const int z0 = static_cast<int>(std::floor(sz));
    const double fx = sx - x0, fy = sy - y0, fz = sz - z0;

    double acc = 0.0;
    for (int dz = 0; dz < 2; ++dz) {
        for (int dy = 0; dy < 2; ++dy) {
            for (int dx = 0; dx < 2; ++dx) {
                const int xi = x0 + dx, yi = y0 + dy, zi = z0 + dz;
                if (!in_grid(v.dims, xi, yi, zi)) continue;  // zero padding
                const double w = (dx ? fx : 1.0 - fx) * (dy ? fy : 1.0 - fy) * (dz ? fz : 1.0 - fz);
                acc += w * v.at(xi, yi, zi);
            }
        }
    }
    return acc;
}

}  // namespace

Volume preprocess(const Volume& v, int target_dim) {
    v.validate("preprocess");
    if (target_dim < 2) {
        throw_input("preprocess", "target_dim must be >= 2");
    }

    const PadScaleMap m = make_pad_scale(v.dims, target_dim);

    Volume out;
    out.dims = {target_dim, target_dim, target_dim};
    out.voxel_size_mm = v.voxel_size_mm * m.scale;
    out.data.resize(static_cast<size_t>(out.dims.count()));
    out.ga_days = v.ga_days;

    // Identity short-circuit keeps already-preprocessed volumes bit-stable.
    if (v.dims == out.dims) {
        out.data = v.data;
        out.voxel_size_mm = v.voxel_size_mm;
        out.landmarks = v.landmarks;
        return out;
    }

#pragma omp parallel for schedule(static)
    for (int z = 0; z < target_dim; ++z) {
        for (int y = 0; y < target_dim; ++y) {
            for (int x = 0; x < target_dim; ++x) {
                out.at(x, y, z) = sample_padded(v, m, x * m.scale, y * m.scale, z * m.scale);
            }
        }
    }

    if (v.landmarks) {
        auto map_point = [&](const Vec3& p) -> Vec3 {
            return {(p.x + m.off[0]) / m.scale, (p.y + m.off[1]) / m.scale,
                    (p.z + m.off[2]) / m.scale};
        };
        out.landmarks = Landmarks{map_point(v.landmarks->crown), map_point(v.landmarks->rump)};
    }
    return out;
}

Mask preprocess_mask(const Mask& m, int target_dim) {
    if (!m.dims.valid()) {
        throw_input("preprocess", "mask dims must be positive");
    }
    if (target_dim < 2) {
        throw_input("preprocess", "target_dim must be >= 2");
    }
    const PadScaleMap map = make_pad_scale(m.dims, target_dim);

    Mask out({target_dim, target_dim, target_dim});
    out.voxel_size_mm = m.voxel_size_mm * map.scale;
    if (m.dims == out.dims) {
        out.data = m.data;
        out.voxel_size_mm = m.voxel_size_mm;
        return out;
    }

#pragma omp parallel for schedule(static)
    for (int z = 0; z < target_dim; ++z) {
        for (int y = 0; y < target_dim; ++y) {
            for (int x = 0; x < target_dim; ++x) {
                const int xi = static_cast<int>(std::lround(x * map.scale)) - map.off[0];
                const int yi = static_cast<int>(std::lround(y * map.scale)) - map.off[1];
                const int zi = static_cast<int>(std::lround(z * map.scale)) - map.off[2];
                out.at(x, y, z) = in_grid(m.dims, xi, yi, zi) ? m.at(xi, yi, zi) : 0;
            }
        }
    }
    return out;
}

namespace {

std::vector<std::array<int, 3>> ball_offsets(int radius) {
    std::vector<std::array<int, 3>> offs;
    const int r2 = radius * radius;
    for (int z = -radius; z <= radius; ++z) {
        for (int y = -radius; y <= radius; ++y) {
            for (int x = -radius; x <= radius; ++x) {
                if (x * x + y * y + z * z <= r2) {
                    offs.push_back({x, y, z});
                }
            }
        }
    }
    return offs;
}

}  // namespace

Mask dilate(const Mask& m, int radius) {
    if (radius < 1) {
        throw_input("dilate", "radius must be >= 1");
    }
    const auto offs = ball_offsets(radius);
    Mask out(m.dims);
    out.voxel_size_mm = m.voxel_size_mm;

#pragma omp parallel for schedule(static)
    for (int z = 0; z < m.dims.z; ++z) {
        for (int y = 0; y < m.dims.y; ++y) {
            for (int x = 0; x < m.dims.x; ++x) {
                std::uint8_t v = 0;
                for (const auto& o : offs) {
                    const int xi = x + o[0], yi = y + o[1], zi = z + o[2];
                    if (in_grid(m.dims, xi, yi, zi) && m.at(xi, yi, zi)) {
                        v = 1;
                        break;
                    }
                }
                out.at(x, y, z) = v;
            }
        }
    }
    return out;
}

Mask erode(const Mask& m, int radius) {
    if (radius < 1) {
        throw_input("erode", "radius must be >= 1");
    }
    const auto offs = ball_offsets(radius);
    Mask out(m.dims);
    out.voxel_size_mm = m.voxel_size_mm;

#pragma omp parallel for schedule(static)
    for (int z = 0; z < m.dims.z; ++z) {
        for (int y = 0; y < m.dims.y; ++y) {
            for (int x = 0; x < m.dims.x; ++x) {
                std::uint8_t v = 1;
                for (const auto& o : offs) {
                    const int xi = x + o[0], yi = y + o[1], zi = z + o[2];
                    if (!in_grid(m.dims, xi, yi, zi) || !m.at(xi, yi, zi)) {
                        v = 0;
                        break;
                    }
                }
                out.at(x, y, z) = v;
            }
        }
    }
    return out;
}

Mask mask_union(const std::vector<const Mask*>& masks) {
    if (masks.empty()) {
        throw_input("mask_union", "no masks given");
    }
    const Dims d = masks.front()->dims;
    for (const Mask* m : masks) {
        if (m->dims != d) {
            throw_input("mask_union", "dimension mismatch");
        }
    }
    Mask out(d);
    out.voxel_size_mm = masks.front()->voxel_size_mm;
    const std::int64_t n = d.count();
    for (const Mask* m : masks) {
        for (std::int64_t i = 0; i < n; ++i) {
            out.data[i] |= m->data[i];
        }
    }
    return out;
}

Mask complement(const Mask& m) {
    Mask out = m;
    for (auto& v : out.data) {
        v = v ? 0 : 1;
    }
    return out;
}

}  // namespace embryoreg
