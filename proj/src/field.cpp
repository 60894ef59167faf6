#include "embryoreg/field.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "embryoreg/errors.hpp"
#include "embryoreg/interp.hpp"
#include "json.hpp"

namespace embryoreg {

void VectorField::validate(const char* stage) const {
    if (!dims.valid()) {
        throw_input(stage, "dims must be positive");
    }
    if (static_cast<std::int64_t>(data.size()) != 3 * dims.count()) {
        throw_input(stage, "data length does not match 3 * dims product");
    }
    for (double v : data) {
        if (!std::isfinite(v)) {
            throw_input(stage, "non-finite field value");
        }
    }
}

namespace {

// Interpolate the three interleaved components at cell c; optionally fill
// jac(comp, axis) with positional derivatives.
inline Vec3 interp_vec(const double* g, const Dims& d, const TriCell& c, Mat3* jac) {
    const std::int64_t sx = 3;
    const std::int64_t sy = 3 * static_cast<std::int64_t>(d.x);
    const std::int64_t sz = 3 * static_cast<std::int64_t>(d.x) * d.y;
    const double* base = g + c.x0 * sx + c.y0 * sy + c.z0 * sz;

    Vec3 out;
    double* outp = &out.x;
    for (int comp = 0; comp < 3; ++comp) {
        const double v000 = base[comp], v100 = base[comp + sx];
        const double v010 = base[comp + sy], v110 = base[comp + sx + sy];
        const double v001 = base[comp + sz], v101 = base[comp + sx + sz];
        const double v011 = base[comp + sy + sz], v111 = base[comp + sx + sy + sz];

        const double c00 = v000 + (v100 - v000) * c.fx;
        const double c10 = v010 + (v110 - v010) * c.fx;
        const double c01 = v001 + (v101 - v001) * c.fx;
        const double c11 = v011 + (v111 - v011) * c.fx;
        const double c0 = c00 + (c10 - c00) * c.fy;
        const double c1 = c01 + (c11 - c01) * c.fy;
        outp[comp] = c0 + (c1 - c0) * c.fz;

        if (jac) {
            const double gx0 = (v100 - v000) + ((v110 - v010) - (v100 - v000)) * c.fy;
            const double gx1 = (v101 - v001) + ((v111 - v011) - (v101 - v001)) * c.fy;
            (*jac)(comp, 0) = c.cx ? 0.0 : gx0 + (gx1 - gx0) * c.fz;
            (*jac)(comp, 1) = c.cy ? 0.0 : (c10 - c00) + ((c11 - c01) - (c10 - c00)) * c.fz;
            (*jac)(comp, 2) = c.cz ? 0.0 : c1 - c0;
        }
    }
    return out;
}

}  // namespace

Vec3 sample_field(const VectorField& f, const Vec3& p) {
    return interp_vec(f.data.data(), f.dims, tri_cell(f.dims, p), nullptr);
}

Vec3 sample_field_grad(const VectorField& f, const Vec3& p, Mat3* jac) {
    return interp_vec(f.data.data(), f.dims, tri_cell(f.dims, p), jac);
}

DisplacementField compose_fields(const DisplacementField& outer, const DisplacementField& inner) {
    if (outer.dims != inner.dims) {
        throw_input("compose_fields", "dimension mismatch");
    }
    const Dims d = outer.dims;
    DisplacementField out(d);

#pragma omp parallel for schedule(static)
    for (int z = 0; z < d.z; ++z) {
        for (int y = 0; y < d.y; ++y) {
            for (int x = 0; x < d.x; ++x) {
                const Vec3 di = inner.at(x, y, z);
                const Vec3 p{x + di.x, y + di.y, z + di.z};
                out.set(x, y, z, di + sample_field(outer, p));
            }
        }
    }
    return out;
}

SvfTrace integrate_svf_trace(const VelocityField& v, int steps) {
    if (steps < 1) {
        throw_input("integrate_svf", "steps must be >= 1");
    }
    v.validate("integrate_svf");

    SvfTrace t;
    t.steps = steps;
    t.levels.reserve(steps + 1);

    DisplacementField d = v;
    const double scale = std::ldexp(1.0, -steps);  // 2^-steps
    for (double& x : d.data) {
        x *= scale;
    }
    t.levels.push_back(d);
    for (int k = 0; k < steps; ++k) {
        t.levels.push_back(compose_fields(t.levels.back(), t.levels.back()));
    }
    return t;
}

DisplacementField integrate_svf(const VelocityField& v, int steps) {
    return integrate_svf_trace(v, steps).levels.back();
}

DisplacementField invert_svf(const VelocityField& v, int steps) {
    VelocityField neg = v;
    for (double& x : neg.data) {
        x = -x;
    }
    return integrate_svf(neg, steps);
}

VectorField integrate_svf_adjoint(const SvfTrace& trace, const VectorField& grad_out) {
    if (grad_out.dims != trace.result().dims) {
        throw_input("integrate_svf_adjoint", "dimension mismatch");
    }
    const Dims d = grad_out.dims;
    VectorField bar = grad_out;

    // Walk the self-composition levels backwards. At each level,
    //   next(x) = cur(x) + interp(cur, x + cur(x)),
    // so the pull-back has a direct term, a positional term through the
    // sample point, and a trilinear scatter onto the sampled corners.
    for (int k = trace.steps - 1; k >= 0; --k) {
        const DisplacementField& cur = trace.levels[static_cast<size_t>(k)];
        VectorField next_bar(d);

        // Direct + positional terms, voxel-parallel.
#pragma omp parallel for schedule(static)
        for (int z = 0; z < d.z; ++z) {
            for (int y = 0; y < d.y; ++y) {
                for (int x = 0; x < d.x; ++x) {
                    const Vec3 g = bar.at(x, y, z);
                    const Vec3 c = cur.at(x, y, z);
                    Mat3 jac;
                    interp_vec(cur.data.data(), d, tri_cell(d, {x + c.x, y + c.y, z + c.z}), &jac);
                    // g^T * d(interp)/dy, added to the direct pass-through
                    const Vec3 pos{g.x * jac(0, 0) + g.y * jac(1, 0) + g.z * jac(2, 0),
                                   g.x * jac(0, 1) + g.y * jac(1, 1) + g.z * jac(2, 1),
                                   g.x * jac(0, 2) + g.y * jac(1, 2) + g.z * jac(2, 2)};
                    next_bar.set(x, y, z, g + pos);
                }
            }
        }

        // Scatter onto the 8 sampled corners. Kept serial: overlapping
        // windows would race, and a fixed order keeps runs bit-reproducible.
        for (int z = 0; z < d.z; ++z) {
            for (int y = 0; y < d.y; ++y) {
                for (int x = 0; x < d.x; ++x) {
                    const Vec3 g = bar.at(x, y, z);
                    const Vec3 c = cur.at(x, y, z);
                    const TriCell cell = tri_cell(d, {x + c.x, y + c.y, z + c.z});
                    const double wx[2] = {1.0 - cell.fx, cell.fx};
                    const double wy[2] = {1.0 - cell.fy, cell.fy};
                    const double wz[2] = {1.0 - cell.fz, cell.fz};
                    for (int dz = 0; dz < 2; ++dz) {
                        for (int dy = 0; dy < 2; ++dy) {
                            for (int dx = 0; dx < 2; ++dx) {
                                const double w = wx[dx] * wy[dy] * wz[dz];
                                if (w == 0.0) continue;
                                const std::int64_t i =
                                    3 * voxel_index(d, cell.x0 + dx, cell.y0 + dy, cell.z0 + dz);
                                next_bar.data[i] += w * g.x;
                                next_bar.data[i + 1] += w * g.y;
                                next_bar.data[i + 2] += w * g.z;
                            }
                        }
                    }
                }
            }
        }
        bar = std::move(next_bar);
    }

    const double scale = std::ldexp(1.0, -trace.steps);
    for (double& x : bar.data) {
        x *= scale;
    }
    return bar;
}

std::vector<double> jacobian_det(const DisplacementField& d) {
    const Dims dm = d.dims;
    std::vector<double> out(static_cast<size_t>(dm.count()));

    const auto diff = [&](int x, int y, int z, int axis) -> Vec3 {
        // derivative of d along `axis`, central inside, one-sided at the faces
        int lo[3] = {x, y, z}, hi[3] = {x, y, z};
        const int n = axis == 0 ? dm.x : (axis == 1 ? dm.y : dm.z);
        int& l = lo[axis];
        int& h = hi[axis];
        double denom = 2.0;
        if (h + 1 <= n - 1) ++h; else denom -= 1.0;
        if (l - 1 >= 0) --l; else denom -= 1.0;
        const Vec3 a = d.at(hi[0], hi[1], hi[2]);
        const Vec3 b = d.at(lo[0], lo[1], lo[2]);
        return (a - b) * (1.0 / denom);
    };

#pragma omp parallel for schedule(static)
    for (int z = 0; z < dm.z; ++z) {
        for (int y = 0; y < dm.y; ++y) {
            for (int x = 0; x < dm.x; ++x) {
                const Vec3 gx = diff(x, y, z, 0);
                const Vec3 gy = diff(x, y, z, 1);
                const Vec3 gz = diff(x, y, z, 2);
                Mat3 j;
                j(0, 0) = 1.0 + gx.x; j(0, 1) = gy.x; j(0, 2) = gz.x;
                j(1, 0) = gx.y; j(1, 1) = 1.0 + gy.y; j(1, 2) = gz.y;
                j(2, 0) = gx.z; j(2, 1) = gy.z; j(2, 2) = 1.0 + gz.z;
                out[static_cast<size_t>(voxel_index(dm, x, y, z))] = j.det();
            }
        }
    }
    return out;
}

VectorField upsample_trilinear(const VectorField& coarse, Dims fine) {
    if (!fine.valid()) {
        throw_input("upsample", "fine dims must be positive");
    }
    VectorField out(fine);
    const auto rate = [](int m, int n) {
        return n > 1 ? static_cast<double>(m - 1) / (n - 1) : 0.0;
    };
    const double rx = rate(coarse.dims.x, fine.x);
    const double ry = rate(coarse.dims.y, fine.y);
    const double rz = rate(coarse.dims.z, fine.z);

#pragma omp parallel for schedule(static)
    for (int z = 0; z < fine.z; ++z) {
        for (int y = 0; y < fine.y; ++y) {
            for (int x = 0; x < fine.x; ++x) {
                out.set(x, y, z, sample_field(coarse, {x * rx, y * ry, z * rz}));
            }
        }
    }
    return out;
}

VectorField upsample_adjoint(const VectorField& fine_grad, Dims coarse) {
    VectorField out(coarse);
    const Dims fine = fine_grad.dims;
    const auto rate = [](int m, int n) {
        return n > 1 ? static_cast<double>(m - 1) / (n - 1) : 0.0;
    };
    const double rx = rate(coarse.x, fine.x);
    const double ry = rate(coarse.y, fine.y);
    const double rz = rate(coarse.z, fine.z);

    // Serial scatter, same rationale as in integrate_svf_adjoint.
    for (int z = 0; z < fine.z; ++z) {
        for (int y = 0; y < fine.y; ++y) {
            for (int x = 0; x < fine.x; ++x) {
                const Vec3 g = fine_grad.at(x, y, z);
                const TriCell cell = tri_cell(coarse, {x * rx, y * ry, z * rz});
                const double wx[2] = {1.0 - cell.fx, cell.fx};
                const double wy[2] = {1.0 - cell.fy, cell.fy};
                const double wz[2] = {1.0 - cell.fz, cell.fz};
                for (int dz = 0; dz < 2; ++dz) {
                    for (int dy = 0; dy < 2; ++dy) {
                        for (int dx = 0; dx < 2; ++dx) {
                            const double w = wx[dx] * wy[dy] * wz[dz];
                            if (w == 0.0) continue;
                            const std::int64_t i =
                                3 * voxel_index(coarse, cell.x0 + dx, cell.y0 + dy, cell.z0 + dz);
                            out.data[i] += w * g.x;
                            out.data[i + 1] += w * g.y;
                            out.data[i + 2] += w * g.z;
                        }
                    }
                }
            }
        }
    }
    return out;
}

void write_field(const VectorField& f, const std::filesystem::path& path) {
    f.validate("write_field");
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw_input("io", "cannot open " + path.string() + " for writing");
    }
    nlohmann::ordered_json h;
    h["dims"] = {f.dims.x, f.dims.y, f.dims.z};
    h["channels"] = 3;
    out << h.dump() << '\n';
    std::vector<float> payload(f.data.begin(), f.data.end());
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size() * sizeof(float)));
    if (!out) {
        throw_input("io", "write failed for " + path.string());
    }
}

VectorField read_field(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw_input("io", "cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw_input("io", "cannot read header from " + path.string());
    }
    nlohmann::json h = nlohmann::json::parse(line, nullptr, false);
    if (h.is_discarded() || !h.contains("dims") || h.value("channels", 0) != 3) {
        throw_input("io", "malformed field header in " + path.string());
    }
    VectorField f(Dims{h["dims"][0].get<int>(), h["dims"][1].get<int>(), h["dims"][2].get<int>()});
    std::vector<float> payload(f.data.size());
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(payload.size() * sizeof(float)));
    if (in.gcount() != static_cast<std::streamsize>(payload.size() * sizeof(float))) {
        throw_input("io", "truncated payload in " + path.string());
    }
    f.data.assign(payload.begin(), payload.end());
    return f;
}

}  // namespace embryoreg
