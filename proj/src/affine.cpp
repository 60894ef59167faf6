#include "embryoreg/affine.hpp"

#include <cmath>
#include <fstream>

#include "embryoreg/errors.hpp"
#include "json.hpp"

namespace embryoreg {

AffineTransform AffineTransform::from_params(const Params& p) {
    for (double v : p) {
        if (!std::isfinite(v)) {
            throw_input("affine", "non-finite parameter");
        }
    }
    AffineTransform t;
    t.linear_ = Mat3{{p[0], p[1], p[2], p[4], p[5], p[6], p[8], p[9], p[10]}};
    t.translation_ = {p[3], p[7], p[11]};
    return t;
}

AffineTransform AffineTransform::from_parts(const Mat3& linear, const Vec3& translation) {
    AffineTransform t;
    t.linear_ = linear;
    t.translation_ = translation;
    return t;
}

AffineTransform AffineTransform::from_matrix(const std::array<double, 16>& m) {
    if (m[12] != 0.0 || m[13] != 0.0 || m[14] != 0.0 || m[15] != 1.0) {
        throw_input("affine", "last matrix row must be (0,0,0,1)");
    }
    return from_params({m[0], m[1], m[2], m[3], m[4], m[5], m[6], m[7], m[8], m[9], m[10], m[11]});
}

AffineTransform AffineTransform::translation(const Vec3& t) {
    return from_parts(Mat3::identity(), t);
}

AffineTransform AffineTransform::scaling(double sx, double sy, double sz) {
    return from_parts(Mat3{{sx, 0, 0, 0, sy, 0, 0, 0, sz}}, {0, 0, 0});
}

AffineTransform::Params AffineTransform::params() const {
    const Mat3& l = linear_;
    return {l(0, 0), l(0, 1), l(0, 2), translation_.x,
            l(1, 0), l(1, 1), l(1, 2), translation_.y,
            l(2, 0), l(2, 1), l(2, 2), translation_.z};
}

std::array<double, 16> AffineTransform::matrix() const {
    const Params p = params();
    return {p[0], p[1], p[2],  p[3], p[4], p[5], p[6], p[7],
            p[8], p[9], p[10], p[11], 0.0, 0.0, 0.0, 1.0};
}

AffineTransform AffineTransform::compose(const AffineTransform& inner) const {
    AffineTransform t;
    t.linear_ = linear_.mul(inner.linear_);
    t.translation_ = linear_.apply(inner.translation_) + translation_;
    return t;
}

AffineTransform AffineTransform::inverse() const {
    const double d = linear_.det();
    if (std::abs(d) <= 1e-12) {
        throw_numerical("affine", "linear block is singular, cannot invert");
    }
    AffineTransform t;
    t.linear_ = linear_.inverse();
    t.translation_ = t.linear_.apply(translation_) * -1.0;
    return t;
}

std::array<double, 3> AffineTransform::scaling_factors() const {
    const SymEigen3 e = sym_eigen3(linear_.transposed().mul(linear_));
    std::array<double, 3> s;
    for (int i = 0; i < 3; ++i) {
        s[i] = std::sqrt(std::max(e.values[i], 0.0));
    }
    return s;  // descending, inherited from eigenvalue order
}

void write_transform(const AffineTransform& t, const std::filesystem::path& path) {
    nlohmann::ordered_json j;
    j["matrix"] = t.matrix();
    std::ofstream out(path);
    if (!out) {
        throw_input("io", "cannot open " + path.string() + " for writing");
    }
    out << j.dump(2) << '\n';
}

AffineTransform read_transform(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw_input("io", "cannot open " + path.string());
    }
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.contains("matrix") || j["matrix"].size() != 16) {
        throw_input("io", "malformed transform file " + path.string());
    }
    std::array<double, 16> m;
    for (int i = 0; i < 16; ++i) {
        m[i] = j["matrix"][i].get<double>();
    }
    return AffineTransform::from_matrix(m);
}

}  // namespace embryoreg
