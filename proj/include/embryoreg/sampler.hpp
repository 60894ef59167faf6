#pragma once

#include "embryoreg/affine.hpp"
#include "embryoreg/field.hpp"
#include "embryoreg/volume.hpp"

namespace embryoreg {

/// Trilinear interpolation of the 8 neighbors, coordinates clamped to the
/// valid cube (out-of-bounds reads the nearest edge value).
double sample_trilinear(const Volume& v, const Vec3& p);

/// Same, also returning d(value)/d(p); zero on clamped axes.
double sample_trilinear_grad(const Volume& v, const Vec3& p, Vec3* grad);

/// out(x) = v(t(x)) over the output lattice (same dims as v). The transform
/// maps output coordinates into input coordinates (pull-back convention), so
/// warping by a then by b equals a single warp by compose(a, b).
Volume warp_affine(const Volume& v, const AffineTransform& t);

/// out(x) = v(x + d(x)).
Volume warp_field(const Volume& v, const DisplacementField& d);

/// Masks are warped as float volumes and thresholded at 0.5.
Mask warp_mask(const Mask& m, const AffineTransform& t);
Mask warp_mask(const Mask& m, const DisplacementField& d);

}  // namespace embryoreg
