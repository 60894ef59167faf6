#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "embryoreg/grid.hpp"

namespace embryoreg {

/// 3D scalar grid with isotropic voxel size. Values are stored as double in
/// memory; on disk the payload is little-endian f32 (see read/write below).
struct Volume {
    Dims dims;
    double voxel_size_mm = 1.0;
    std::vector<double> data;  // x-fastest
    std::optional<int> ga_days;
    std::optional<Landmarks> landmarks;

    Volume() = default;
    Volume(Dims d, double voxel_size, std::vector<double> values);

    double at(int x, int y, int z) const { return data[voxel_index(dims, x, y, z)]; }
    double& at(int x, int y, int z) { return data[voxel_index(dims, x, y, z)]; }

    // Throws ErrorCode::input on non-finite data, size mismatch, bad voxel
    // size, or landmarks outside [0, dims).
    void validate(const char* stage = "volume") const;
};

/// Binary grid on the same lattice as its paired Volume.
struct Mask {
    Dims dims;
    double voxel_size_mm = 1.0;
    std::vector<std::uint8_t> data;  // values in {0,1}, x-fastest

    Mask() = default;
    Mask(Dims d, std::uint8_t fill = 0);

    std::uint8_t at(int x, int y, int z) const { return data[voxel_index(dims, x, y, z)]; }
    std::uint8_t& at(int x, int y, int z) { return data[voxel_index(dims, x, y, z)]; }

    std::int64_t count_foreground() const;
    bool empty_foreground() const { return count_foreground() == 0; }
};

/// Zero-pad to a cube of side max(dims) (symmetric, lower side gets the
/// smaller half for odd gaps), then resample trilinearly to target_dim^3.
/// Voxel size scales by max(dims)/target_dim; landmarks follow the same
/// pad+scale map. Idempotent on cubic volumes of side target_dim.
Volume preprocess(const Volume& v, int target_dim);

/// Same pad+scale lattice map with nearest-neighbor sampling, so masks stay
/// binary through preprocessing.
Mask preprocess_mask(const Mask& m, int target_dim);

/// Binary morphology with the discrete ball {o : ||o||_2 <= radius}.
/// Voxels outside the grid are background.
Mask dilate(const Mask& m, int radius);
Mask erode(const Mask& m, int radius);

/// Voxelwise OR. All masks must share dims.
Mask mask_union(const std::vector<const Mask*>& masks);

Mask complement(const Mask& m);

// --- File I/O -------------------------------------------------------------
//
// .mvol / .mmask: one line of compact JSON (keys: dims, voxel_size_mm,
// ga_days, landmarks, dtype), a newline, then the raw voxel payload in
// x-fastest order. Volumes use dtype "f32", masks "u8".

Volume read_volume(const std::filesystem::path& path);
void write_volume(const Volume& v, const std::filesystem::path& path);

Mask read_mask(const std::filesystem::path& path);
void write_mask(const Mask& m, const std::filesystem::path& path);

}  // namespace embryoreg
