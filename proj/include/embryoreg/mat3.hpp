#pragma once

#include <array>
#include <cmath>

#include "embryoreg/grid.hpp"

namespace embryoreg {

/// Row-major 3x3 matrix, just enough linear algebra for affine transforms.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return {}; }
    static Mat3 zero() { return Mat3{{0, 0, 0, 0, 0, 0, 0, 0, 0}}; }

    double operator()(int r, int c) const { return m[r * 3 + c]; }
    double& operator()(int r, int c) { return m[r * 3 + c]; }

    Vec3 apply(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    Mat3 mul(const Mat3& o) const {
        Mat3 r = zero();
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
                for (int j = 0; j < 3; ++j) r(i, j) += (*this)(i, k) * o(k, j);
        return r;
    }

    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    double det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }

    Mat3 scaled(double s) const {
        Mat3 r = *this;
        for (double& v : r.m) v *= s;
        return r;
    }

    // Adjugate-based inverse; caller checks det.
    Mat3 inverse() const {
        const double d = det();
        Mat3 r;
        r.m = {(m[4] * m[8] - m[5] * m[7]), (m[2] * m[7] - m[1] * m[8]), (m[1] * m[5] - m[2] * m[4]),
               (m[5] * m[6] - m[3] * m[8]), (m[0] * m[8] - m[2] * m[6]), (m[2] * m[3] - m[0] * m[5]),
               (m[3] * m[7] - m[4] * m[6]), (m[1] * m[6] - m[0] * m[7]), (m[0] * m[4] - m[1] * m[3])};
        for (double& v : r.m) v /= d;
        return r;
    }

    static Mat3 outer(const Vec3& a, const Vec3& b) {
        return Mat3{{a.x * b.x, a.x * b.y, a.x * b.z, a.y * b.x, a.y * b.y, a.y * b.z, a.z * b.x,
                     a.z * b.y, a.z * b.z}};
    }

    static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
        return Mat3{{c0.x, c1.x, c2.x, c0.y, c1.y, c2.y, c0.z, c1.z, c2.z}};
    }
};

struct SymEigen3 {
    std::array<double, 3> values;  // descending
    std::array<Vec3, 3> vectors;   // matching order, orthonormal
};

/// Cyclic Jacobi eigendecomposition of a symmetric 3x3 matrix. Converges to
/// machine precision in a handful of sweeps.
SymEigen3 sym_eigen3(const Mat3& a);

}  // namespace embryoreg
