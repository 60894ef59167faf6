#pragma once

#include <array>
#include <filesystem>

#include "embryoreg/grid.hpp"
#include "embryoreg/mat3.hpp"

namespace embryoreg {

/// 12-parameter affine map stored as a 4x4 homogeneous matrix (row-major,
/// last row fixed to 0 0 0 1). The parameter vector is the top three rows in
/// row-major order, so identity params are (1,0,0,0, 0,1,0,0, 0,0,1,0).
/// Coordinates are voxel indices of the working grid.
class AffineTransform {
public:
    using Params = std::array<double, 12>;

    AffineTransform() = default;

    static AffineTransform identity() { return {}; }
    static AffineTransform from_params(const Params& p);
    static AffineTransform from_parts(const Mat3& linear, const Vec3& translation);
    static AffineTransform from_matrix(const std::array<double, 16>& row_major);
    static AffineTransform translation(const Vec3& t);
    static AffineTransform scaling(double sx, double sy, double sz);

    Params params() const;
    std::array<double, 16> matrix() const;

    const Mat3& linear() const { return linear_; }
    const Vec3& translation_part() const { return translation_; }

    Vec3 apply(const Vec3& x) const { return linear_.apply(x) + translation_; }

    /// compose(a, b)(x) == a(b(x)).
    AffineTransform compose(const AffineTransform& inner) const;

    /// Throws ErrorCode::numerical if |det(linear)| <= 1e-12.
    AffineTransform inverse() const;

    double det_linear() const { return linear_.det(); }

    /// Singular values of the 3x3 linear block, descending.
    std::array<double, 3> scaling_factors() const;

private:
    Mat3 linear_;
    Vec3 translation_;
};

/// JSON file with key "matrix": 16 numbers row-major.
void write_transform(const AffineTransform& t, const std::filesystem::path& path);
AffineTransform read_transform(const std::filesystem::path& path);

}  // namespace embryoreg
