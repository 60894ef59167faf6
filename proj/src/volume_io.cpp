#include <bit>
#include <cstring>
#include <fstream>
#include <string>

#include "embryoreg/errors.hpp"
#include "embryoreg/volume.hpp"
#include "json.hpp"

namespace embryoreg {

namespace {

using json = nlohmann::ordered_json;

static_assert(std::endian::native == std::endian::little,
              "payloads are little-endian; big-endian hosts are unsupported");

json header_json(const Dims& dims, double voxel_size, const std::optional<int>& ga,
                 const std::optional<Landmarks>& lms, const char* dtype) {
    json h;
    h["dims"] = {dims.x, dims.y, dims.z};
    h["voxel_size_mm"] = voxel_size;
    h["ga_days"] = ga ? json(*ga) : json(nullptr);
    if (lms) {
        h["landmarks"] = {{"crown", {lms->crown.x, lms->crown.y, lms->crown.z}},
                          {"rump", {lms->rump.x, lms->rump.y, lms->rump.z}}};
    } else {
        h["landmarks"] = nullptr;
    }
    h["dtype"] = dtype;
    return h;
}

json read_header(std::istream& in, const std::filesystem::path& path) {
    std::string line;
    if (!std::getline(in, line)) {
        throw_input("io", "cannot read header from " + path.string());
    }
    json h = json::parse(line, nullptr, false);
    if (h.is_discarded() || !h.contains("dims") || !h.contains("dtype")) {
        throw_input("io", "malformed header in " + path.string());
    }
    return h;
}

Dims parse_dims(const json& h, const std::filesystem::path& path) {
    const auto& d = h["dims"];
    if (!d.is_array() || d.size() != 3) {
        throw_input("io", "bad dims in " + path.string());
    }
    return Dims{d[0].get<int>(), d[1].get<int>(), d[2].get<int>()};
}

}  // namespace

void write_volume(const Volume& v, const std::filesystem::path& path) {
    v.validate("write_volume");
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw_input("io", "cannot open " + path.string() + " for writing");
    }
    out << header_json(v.dims, v.voxel_size_mm, v.ga_days, v.landmarks, "f32").dump() << '\n';
    std::vector<float> payload(v.data.begin(), v.data.end());
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size() * sizeof(float)));
    if (!out) {
        throw_input("io", "write failed for " + path.string());
    }
}

Volume read_volume(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw_input("io", "cannot open " + path.string());
    }
    const json h = read_header(in, path);
    if (h["dtype"].get<std::string>() != "f32") {
        throw_input("io", "expected dtype f32 in " + path.string());
    }

    Volume v;
    v.dims = parse_dims(h, path);
    v.voxel_size_mm = h.value("voxel_size_mm", 1.0);
    if (h.contains("ga_days") && !h["ga_days"].is_null()) {
        v.ga_days = h["ga_days"].get<int>();
    }
    if (h.contains("landmarks") && !h["landmarks"].is_null()) {
        const auto& l = h["landmarks"];
        v.landmarks = Landmarks{
            {l["crown"][0].get<double>(), l["crown"][1].get<double>(), l["crown"][2].get<double>()},
            {l["rump"][0].get<double>(), l["rump"][1].get<double>(), l["rump"][2].get<double>()}};
    }

    std::vector<float> payload(static_cast<size_t>(v.dims.count()));
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(payload.size() * sizeof(float)));
    if (in.gcount() != static_cast<std::streamsize>(payload.size() * sizeof(float))) {
        throw_input("io", "truncated payload in " + path.string());
    }
    v.data.assign(payload.begin(), payload.end());
    v.validate("read_volume");
    return v;
}

void write_mask(const Mask& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw_input("io", "cannot open " + path.string() + " for writing");
    }
    out << header_json(m.dims, m.voxel_size_mm, std::nullopt, std::nullopt, "u8").dump() << '\n';
    out.write(reinterpret_cast<const char*>(m.data.data()),
              static_cast<std::streamsize>(m.data.size()));
    if (!out) {
        throw_input("io", "write failed for " + path.string());
    }
}

Mask read_mask(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw_input("io", "cannot open " + path.string());
    }
    const json h = read_header(in, path);
    if (h["dtype"].get<std::string>() != "u8") {
        throw_input("io", "expected dtype u8 in " + path.string());
    }

    Mask m;
    m.dims = parse_dims(h, path);
    m.voxel_size_mm = h.value("voxel_size_mm", 1.0);
    m.data.resize(static_cast<size_t>(m.dims.count()));
    in.read(reinterpret_cast<char*>(m.data.data()), static_cast<std::streamsize>(m.data.size()));
    if (in.gcount() != static_cast<std::streamsize>(m.data.size())) {
        throw_input("io", "truncated payload in " + path.string());
    }
    for (auto& v : m.data) {
        if (v > 1) {
            throw_input("io", "mask values must be 0 or 1 in " + path.string());
        }
    }
    return m;
}

}  // namespace embryoreg
