#include "embryoreg/sampler.hpp"

#include "embryoreg/errors.hpp"
#include "embryoreg/interp.hpp"

namespace embryoreg {

double sample_trilinear(const Volume& v, const Vec3& p) {
    return interp_scalar(v.data.data(), v.dims, tri_cell(v.dims, p), nullptr);
}

double sample_trilinear_grad(const Volume& v, const Vec3& p, Vec3* grad) {
    return interp_scalar(v.data.data(), v.dims, tri_cell(v.dims, p), grad);
}

Volume warp_affine(const Volume& v, const AffineTransform& t) {
    Volume out;
    out.dims = v.dims;
    out.voxel_size_mm = v.voxel_size_mm;
    out.ga_days = v.ga_days;
    out.data.resize(static_cast<size_t>(v.dims.count()));

    const Dims d = v.dims;
#pragma omp parallel for schedule(static)
    for (int z = 0; z < d.z; ++z) {
        for (int y = 0; y < d.y; ++y) {
            for (int x = 0; x < d.x; ++x) {
                const Vec3 p = t.apply({static_cast<double>(x), static_cast<double>(y),
                                        static_cast<double>(z)});
                out.at(x, y, z) = interp_scalar(v.data.data(), d, tri_cell(d, p), nullptr);
            }
        }
    }
    return out;
}

Volume warp_field(const Volume& v, const DisplacementField& d) {
    if (v.dims != d.dims) {
        throw_input("warp_field", "dimension mismatch");
    }
    Volume out;
    out.dims = v.dims;
    out.voxel_size_mm = v.voxel_size_mm;
    out.ga_days = v.ga_days;
    out.data.resize(static_cast<size_t>(v.dims.count()));

    const Dims dm = v.dims;
#pragma omp parallel for schedule(static)
    for (int z = 0; z < dm.z; ++z) {
        for (int y = 0; y < dm.y; ++y) {
            for (int x = 0; x < dm.x; ++x) {
                const Vec3 u = d.at(x, y, z);
                const Vec3 p{x + u.x, y + u.y, z + u.z};
                out.at(x, y, z) = interp_scalar(v.data.data(), dm, tri_cell(dm, p), nullptr);
            }
        }
    }
    return out;
}

namespace {

Volume mask_as_volume(const Mask& m) {
    Volume v;
    v.dims = m.dims;
    v.voxel_size_mm = m.voxel_size_mm;
    v.data.assign(m.data.begin(), m.data.end());
    return v;
}

Mask threshold_half(const Volume& v) {
    Mask m(v.dims);
    m.voxel_size_mm = v.voxel_size_mm;
    const std::int64_t n = v.dims.count();
    for (std::int64_t i = 0; i < n; ++i) {
        m.data[static_cast<size_t>(i)] = v.data[static_cast<size_t>(i)] >= 0.5 ? 1 : 0;
    }
    return m;
}

}  // namespace

Mask warp_mask(const Mask& m, const AffineTransform& t) {
    return threshold_half(warp_affine(mask_as_volume(m), t));
}

Mask warp_mask(const Mask& m, const DisplacementField& d) {
    return threshold_half(warp_field(mask_as_volume(m), d));
}

}  // namespace embryoreg
