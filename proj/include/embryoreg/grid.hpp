#pragma once

#include <cmath>
#include <cstdint>

namespace embryoreg {

struct Dims {
    int x = 0;
    int y = 0;
    int z = 0;

    std::int64_t count() const {
        return static_cast<std::int64_t>(x) * y * z;
    }
    bool operator==(const Dims&) const = default;
    bool valid() const { return x > 0 && y > 0 && z > 0; }
    int max_side() const { return x > y ? (x > z ? x : z) : (y > z ? y : z); }
};

// Voxel order is x-fastest: index = x + dims.x * (y + dims.y * z).
inline std::int64_t voxel_index(const Dims& d, int x, int y, int z) {
    return x + static_cast<std::int64_t>(d.x) * (y + static_cast<std::int64_t>(d.y) * z);
}

inline bool in_grid(const Dims& d, int x, int y, int z) {
    return x >= 0 && x < d.x && y >= 0 && y < d.y && z >= 0 && z < d.z;
}

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        const double n = norm();
        return {x / n, y / n, z / n};
    }
    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

struct Landmarks {
    Vec3 crown;
    Vec3 rump;
};

}  // namespace embryoreg
