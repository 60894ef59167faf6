#pragma once

#include <filesystem>
#include <vector>

#include "embryoreg/grid.hpp"
#include "embryoreg/mat3.hpp"

namespace embryoreg {

/// Dense 3-component vector grid in voxel units, component-interleaved per
/// voxel (x-fastest voxel order).
struct VectorField {
    Dims dims;
    std::vector<double> data;  // size 3 * dims.count()

    VectorField() = default;
    explicit VectorField(Dims d) : dims(d), data(static_cast<size_t>(3 * d.count()), 0.0) {}

    Vec3 at(int x, int y, int z) const {
        const std::int64_t i = 3 * voxel_index(dims, x, y, z);
        return {data[i], data[i + 1], data[i + 2]};
    }
    void set(int x, int y, int z, const Vec3& v) {
        const std::int64_t i = 3 * voxel_index(dims, x, y, z);
        data[i] = v.x;
        data[i + 1] = v.y;
        data[i + 2] = v.z;
    }

    void validate(const char* stage = "field") const;
};

// A velocity field is integrated into a displacement; a displacement field
// maps x to x + d(x). Same storage, different role.
using VelocityField = VectorField;
using DisplacementField = VectorField;

/// Trilinear sample of a vector field at p, coordinates clamped to the grid.
Vec3 sample_field(const VectorField& f, const Vec3& p);

/// Same, also filling jac(c, a) = d(component c)/d(p_a); zero on clamped axes.
Vec3 sample_field_grad(const VectorField& f, const Vec3& p, Mat3* jac);

/// result(x) = inner(x) + outer(x + inner(x)): the displacement of
/// (id + outer) o (id + inner) - id, outer sampled trilinearly.
DisplacementField compose_fields(const DisplacementField& outer, const DisplacementField& inner);

/// Scaling-and-squaring flow of a stationary velocity field: halve the field
/// `steps` times, then self-compose `steps` times. Approximates exp(v).
DisplacementField integrate_svf(const VelocityField& v, int steps = 7);

/// Flow of -v; approximates the inverse of integrate_svf(v).
DisplacementField invert_svf(const VelocityField& v, int steps = 7);

/// Forward integration keeping every intermediate level, enabling
/// reverse-mode differentiation through the recursion.
struct SvfTrace {
    int steps = 0;
    std::vector<DisplacementField> levels;  // levels[0] = v / 2^steps ... levels[steps] = result
    const DisplacementField& result() const { return levels.back(); }
};

SvfTrace integrate_svf_trace(const VelocityField& v, int steps = 7);

/// Pulls a gradient w.r.t. the integrated displacement back to a gradient
/// w.r.t. the velocity field.
VectorField integrate_svf_adjoint(const SvfTrace& trace, const VectorField& grad_out);

/// det(grad(id + d)) per voxel; central differences inside, one-sided at the
/// boundary. Identity field gives all ones.
std::vector<double> jacobian_det(const DisplacementField& d);

/// Trilinear upsampling of a coarse control grid onto a fine lattice
/// (align-corners: coarse index c maps to fine coordinate c*(n-1)/(m-1)).
VectorField upsample_trilinear(const VectorField& coarse, Dims fine);

/// Transpose of upsample_trilinear, for pulling gradients back to the
/// control grid.
VectorField upsample_adjoint(const VectorField& fine_grad, Dims coarse);

/// .mfld: JSON header line (dims, channels=3) + raw little-endian f32,
/// component-interleaved per voxel.
void write_field(const VectorField& f, const std::filesystem::path& path);
VectorField read_field(const std::filesystem::path& path);

}  // namespace embryoreg
