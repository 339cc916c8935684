// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include "volume/volume_io.hpp"

#include <zlib.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "json.hpp"

static_assert(std::endian::native == std::endian::little, "volume I/O assumes a little-endian host");

namespace corsurf {
namespace {

namespace fs = std::filesystem;

constexpr int kNiftiHeaderSize = 348;
constexpr int kNiftiDataOffset = 352;

constexpr std::int16_t kDtUInt8 = 2;
constexpr std::int16_t kDtInt16 = 4;
constexpr std::int16_t kDtFloat32 = 16;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<unsigned char> read_maybe_gzipped(const std::string& path) {
  require(fs::exists(path), ErrorCategory::kIo, "no such file: " + path);
  gzFile file = gzopen(path.c_str(), "rb");
  require(file != nullptr, ErrorCategory::kIo, "cannot open " + path);
  std::vector<unsigned char> bytes;
  unsigned char buffer[1 << 16];
  while (true) {
    const int got = gzread(file, buffer, sizeof(buffer));
    if (got < 0) {
      gzclose(file);
      fail(ErrorCategory::kIo, "read error in " + path);
    }
    if (got == 0) break;
    bytes.insert(bytes.end(), buffer, buffer + got);
  }
  gzclose(file);
  return bytes;
}

void write_bytes(const std::string& path, const std::vector<unsigned char>& bytes, bool gzip) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  if (gzip) {
    gzFile file = gzopen(path.c_str(), "wb");
    require(file != nullptr, ErrorCategory::kIo, "cannot write " + path);
    const int wrote = gzwrite(file, bytes.data(), static_cast<unsigned>(bytes.size()));
    gzclose(file);
    require(wrote == static_cast<int>(bytes.size()), ErrorCategory::kIo, "short write to " + path);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorCategory::kIo, "cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  require(out.good(), ErrorCategory::kIo, "short write to " + path);
}

template <class T>
T load_le(const unsigned char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

template <class T>
void store_le(unsigned char* p, T v) {
  std::memcpy(p, &v, sizeof(T));
}

int bytes_per_value(VoxelType t) {
  switch (t) {
    case VoxelType::kUInt8: return 1;
    case VoxelType::kInt16: return 2;
    case VoxelType::kFloat32: return 4;
  }
  return 1;
}

double decode_value(const unsigned char* p, VoxelType t) {
  switch (t) {
    case VoxelType::kUInt8: return *p;
    case VoxelType::kInt16: return load_le<std::int16_t>(p);
    case VoxelType::kFloat32: return load_le<float>(p);
  }
  return 0.0;
}

void encode_value(unsigned char* p, VoxelType t, double v) {
  switch (t) {
    case VoxelType::kUInt8:
      require(v >= 0 && v <= 255 && v == std::floor(v), ErrorCategory::kArgument, "value not representable as uint8");
      *p = static_cast<unsigned char>(v);
      return;
    case VoxelType::kInt16:
      require(v >= -32768 && v <= 32767 && v == std::floor(v), ErrorCategory::kArgument,
              "value not representable as int16");
      store_le<std::int16_t>(p, static_cast<std::int16_t>(v));
      return;
    case VoxelType::kFloat32:
      store_le<float>(p, static_cast<float>(v));
      return;
  }
}

// ---------------------------------------------------------------- NIfTI-1

RawVolume parse_nifti(const std::vector<unsigned char>& bytes, const std::string& path) {
  require(bytes.size() >= kNiftiHeaderSize, ErrorCategory::kFormat, path + ": file shorter than a NIfTI-1 header");
  const unsigned char* h = bytes.data();
  const auto sizeof_hdr = load_le<std::int32_t>(h);
  require(sizeof_hdr == kNiftiHeaderSize, ErrorCategory::kFormat,
          path + ": sizeof_hdr is not 348 (not NIfTI-1 or big-endian)");
  require(std::memcmp(h + 344, "n+1\0", 4) == 0, ErrorCategory::kFormat,
          path + ": magic is not 'n+1' (only single-file NIfTI-1 is supported)");

  std::int16_t dim[8];
  for (int i = 0; i < 8; ++i) dim[i] = load_le<std::int16_t>(h + 40 + 2 * i);
  require(dim[0] == 3 || dim[0] == 4, ErrorCategory::kFormat, path + ": dim[0] must be 3 or 4");
  int components = 1;
  if (dim[0] == 4) {
    require(dim[4] == 1 || dim[4] == 3, ErrorCategory::kFormat, path + ": dim[4] must be 1 or 3");
    components = dim[4];
  }
  for (int a = 1; a <= 3; ++a) require(dim[a] > 0, ErrorCategory::kFormat, path + ": non-positive dimension");

  const auto datatype = load_le<std::int16_t>(h + 70);
  VoxelType type;
  switch (datatype) {
    case kDtUInt8: type = VoxelType::kUInt8; break;
    case kDtInt16: type = VoxelType::kInt16; break;
    case kDtFloat32: type = VoxelType::kFloat32; break;
    default: fail(ErrorCategory::kFormat, path + ": unsupported NIfTI datatype " + std::to_string(datatype));
  }

  float pixdim[8];
  for (int i = 0; i < 8; ++i) pixdim[i] = load_le<float>(h + 76 + 4 * i);
  const float vox_offset = load_le<float>(h + 108);
  const float scl_slope = load_le<float>(h + 112);
  const float scl_inter = load_le<float>(h + 116);
  const auto qform_code = load_le<std::int16_t>(h + 252);
  const auto sform_code = load_le<std::int16_t>(h + 254);

  GridGeometry g;
  g.dims = {dim[1], dim[2], dim[3]};
  g.spacing = {pixdim[1], pixdim[2], pixdim[3]};
  g.origin = {0.0, 0.0, 0.0};

  constexpr double kAxisTol = 1e-6;
  if (sform_code > 0) {
    float srow[3][4];
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 4; ++c) srow[r][c] = load_le<float>(h + 280 + 16 * r + 4 * c);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        if (r == c) {
          require(srow[r][c] > 0.0f, ErrorCategory::kFormat,
                  path + ": sform with flipped or zero axis is not supported");
        } else {
          require(std::fabs(srow[r][c]) < kAxisTol, ErrorCategory::kFormat,
                  path + ": non-axis-aligned sform is not supported");
        }
      }
      g.spacing[r] = srow[r][r];
      g.origin[r] = srow[r][3];
    }
  } else if (qform_code > 0) {
    const float qb = load_le<float>(h + 256), qc = load_le<float>(h + 260), qd = load_le<float>(h + 264);
    require(std::fabs(qb) < kAxisTol && std::fabs(qc) < kAxisTol && std::fabs(qd) < kAxisTol,
            ErrorCategory::kFormat, path + ": rotated qform is not supported");
    require(pixdim[0] >= 0.0f, ErrorCategory::kFormat, path + ": qform with flipped z axis is not supported");
    g.origin = {load_le<float>(h + 268), load_le<float>(h + 272), load_le<float>(h + 276)};
  }
  for (int a = 0; a < 3; ++a) {
    require(g.spacing[a] > 0.0 && std::isfinite(g.spacing[a]), ErrorCategory::kFormat,
            path + ": voxel spacing must be positive");
  }

  const std::size_t offset = static_cast<std::size_t>(vox_offset);
  require(vox_offset >= kNiftiHeaderSize && static_cast<float>(offset) == vox_offset, ErrorCategory::kFormat,
          path + ": invalid vox_offset");
  const std::size_t voxels = g.voxel_count();
  const std::size_t bpv = bytes_per_value(type);
  require(bytes.size() >= offset + voxels * components * bpv, ErrorCategory::kFormat,
          path + ": truncated voxel data");

  const bool scaled = scl_slope != 0.0f && std::isfinite(scl_slope) && (scl_slope != 1.0f || scl_inter != 0.0f);
  RawVolume vol{g, components, std::vector<double>(voxels * components)};
  // NIfTI stores the component axis slowest; RawVolume interleaves it.
  for (int c = 0; c < components; ++c) {
    const unsigned char* src = bytes.data() + offset + c * voxels * bpv;
    for (std::size_t n = 0; n < voxels; ++n) {
      double v = decode_value(src + n * bpv, type);
      if (scaled) v = scl_slope * v + scl_inter;
      vol.data[n * components + c] = v;
    }
  }
  return vol;
}

std::vector<unsigned char> encode_nifti(const RawVolume& vol, VoxelType type) {
  const std::size_t voxels = vol.geometry.voxel_count();
  const std::size_t bpv = bytes_per_value(type);
  std::vector<unsigned char> bytes(kNiftiDataOffset + voxels * vol.components * bpv, 0);
  unsigned char* h = bytes.data();
  store_le<std::int32_t>(h, kNiftiHeaderSize);
  const std::int16_t dim[8] = {static_cast<std::int16_t>(vol.components == 1 ? 3 : 4),
                               static_cast<std::int16_t>(vol.geometry.dims[0]),
                               static_cast<std::int16_t>(vol.geometry.dims[1]),
                               static_cast<std::int16_t>(vol.geometry.dims[2]),
                               static_cast<std::int16_t>(vol.components),
                               1,
                               1,
                               1};
  for (int i = 0; i < 8; ++i) store_le<std::int16_t>(h + 40 + 2 * i, dim[i]);
  std::int16_t datatype = kDtUInt8;
  if (type == VoxelType::kInt16) datatype = kDtInt16;
  if (type == VoxelType::kFloat32) datatype = kDtFloat32;
  store_le<std::int16_t>(h + 70, datatype);
  store_le<std::int16_t>(h + 72, static_cast<std::int16_t>(8 * bpv));
  const float pixdim[8] = {1.0f,
                           static_cast<float>(vol.geometry.spacing.x),
                           static_cast<float>(vol.geometry.spacing.y),
                           static_cast<float>(vol.geometry.spacing.z),
                           1.0f,
                           1.0f,
                           1.0f,
                           1.0f};
  for (int i = 0; i < 8; ++i) store_le<float>(h + 76 + 4 * i, pixdim[i]);
  store_le<float>(h + 108, static_cast<float>(kNiftiDataOffset));
  store_le<float>(h + 112, 1.0f);
  store_le<float>(h + 116, 0.0f);
  h[123] = 2 | 8;  // xyzt_units: mm, seconds
  store_le<std::int16_t>(h + 252, 1);
  store_le<std::int16_t>(h + 254, 1);
  for (int a = 0; a < 3; ++a) store_le<float>(h + 268 + 4 * a, static_cast<float>(vol.geometry.origin[a]));
  for (int r = 0; r < 3; ++r) {
    store_le<float>(h + 280 + 16 * r + 4 * r, static_cast<float>(vol.geometry.spacing[r]));
    store_le<float>(h + 280 + 16 * r + 12, static_cast<float>(vol.geometry.origin[r]));
  }
  std::memcpy(h + 344, "n+1\0", 4);
  for (int c = 0; c < vol.components; ++c) {
    unsigned char* dst = bytes.data() + kNiftiDataOffset + c * voxels * bpv;
    for (std::size_t n = 0; n < voxels; ++n) encode_value(dst + n * bpv, type, vol.data[n * vol.components + c]);
  }
  return bytes;
}

// ---------------------------------------------------------- raw sidecar

std::string dtype_name(VoxelType t, int components) {
  std::string base = t == VoxelType::kUInt8 ? "uint8" : (t == VoxelType::kInt16 ? "int16" : "float32");
  return components == 3 ? base + "x3" : base;
}

RawVolume read_sidecar(const std::string& path) {
  require(fs::exists(path), ErrorCategory::kIo, "no such file: " + path);
  std::ifstream in(path);
  require(in.good(), ErrorCategory::kIo, "cannot open " + path);
  nlohmann::json header;
  try {
    in >> header;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCategory::kFormat, path + ": invalid sidecar JSON: " + e.what());
  }
  RawVolume vol;
  std::string dtype;
  std::string data_name;
  try {
    for (int a = 0; a < 3; ++a) {
      vol.geometry.dims[a] = header.at("dims").at(a).get<int>();
      vol.geometry.spacing[a] = header.at("spacing").at(a).get<double>();
      vol.geometry.origin[a] = header.value("origin", nlohmann::json::array({0.0, 0.0, 0.0})).at(a).get<double>();
    }
    dtype = header.at("dtype").get<std::string>();
    data_name = header.at("data").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCategory::kFormat, path + ": malformed sidecar header: " + e.what());
  }
  for (int a = 0; a < 3; ++a) {
    require(vol.geometry.dims[a] > 0, ErrorCategory::kFormat, path + ": non-positive dimension");
    require(vol.geometry.spacing[a] > 0.0, ErrorCategory::kFormat, path + ": non-positive spacing");
  }
  VoxelType type;
  if (dtype.size() > 2 && dtype.substr(dtype.size() - 2) == "x3") {
    vol.components = 3;
    dtype = dtype.substr(0, dtype.size() - 2);
  }
  if (dtype == "uint8") {
    type = VoxelType::kUInt8;
  } else if (dtype == "int16") {
    type = VoxelType::kInt16;
  } else if (dtype == "float32") {
    type = VoxelType::kFloat32;
  } else {
    fail(ErrorCategory::kFormat, path + ": unsupported dtype '" + dtype + "'");
  }
  const fs::path data_path = fs::path(path).parent_path() / data_name;
  const auto bytes = read_maybe_gzipped(data_path.string());
  const std::size_t count = vol.geometry.voxel_count() * vol.components;
  const std::size_t bpv = bytes_per_value(type);
  require(bytes.size() == count * bpv, ErrorCategory::kFormat,
          data_path.string() + ": expected " + std::to_string(count * bpv) + " bytes, found " +
              std::to_string(bytes.size()));
  vol.data.resize(count);
  for (std::size_t n = 0; n < count; ++n) vol.data[n] = decode_value(bytes.data() + n * bpv, type);
  return vol;
}

void write_sidecar(const std::string& path, const RawVolume& vol, VoxelType type) {
  const fs::path header_path(path);
  const fs::path data_path = fs::path(header_path).replace_extension(".raw");
  const std::size_t bpv = bytes_per_value(type);
  std::vector<unsigned char> bytes(vol.data.size() * bpv);
  for (std::size_t n = 0; n < vol.data.size(); ++n) encode_value(bytes.data() + n * bpv, type, vol.data[n]);
  write_bytes(data_path.string(), bytes, false);
  nlohmann::ordered_json header;
  header["dims"] = {vol.geometry.dims[0], vol.geometry.dims[1], vol.geometry.dims[2]};
  header["spacing"] = {vol.geometry.spacing.x, vol.geometry.spacing.y, vol.geometry.spacing.z};
  header["origin"] = {vol.geometry.origin.x, vol.geometry.origin.y, vol.geometry.origin.z};
  header["dtype"] = dtype_name(type, vol.components);
  header["data"] = data_path.filename().string();
  const std::string text = header.dump(2) + "\n";
  write_bytes(path, std::vector<unsigned char>(text.begin(), text.end()), false);
}

}  // namespace

RawVolume read_volume(const std::string& path) {
  if (ends_with(path, ".json")) return read_sidecar(path);
  return parse_nifti(read_maybe_gzipped(path), path);
}

void write_volume(const std::string& path, const RawVolume& volume, VoxelType type) {
  require(volume.components == 1 || volume.components == 3, ErrorCategory::kArgument, "components must be 1 or 3");
  require(volume.data.size() == volume.geometry.voxel_count() * volume.components, ErrorCategory::kArgument,
          "volume data length does not match its geometry");
  if (ends_with(path, ".json")) {
    write_sidecar(path, volume, type);
    return;
  }
  write_bytes(path, encode_nifti(volume, type), ends_with(path, ".gz"));
}

LabelVolume load_label_volume(const std::string& path) {
  RawVolume raw = read_volume(path);
  require(raw.components == 1, ErrorCategory::kFormat, path + ": label volume must have one component");
  LabelVolume labels{VoxelGrid<std::uint8_t>(raw.geometry, 0)};
  for (std::size_t n = 0; n < raw.data.size(); ++n) {
    const double v = raw.data[n];
    if (!(v >= 0.0 && v <= kMaxLabel && v == std::floor(v))) {
      const Index3 c = raw.geometry.coords(n);
      fail(ErrorCategory::kValidation, path + ": label " + std::to_string(v) + " outside 0..8 at voxel (" +
                                           std::to_string(c[0]) + "," + std::to_string(c[1]) + "," +
                                           std::to_string(c[2]) + ") index " + std::to_string(n));
    }
    labels.grid[n] = static_cast<std::uint8_t>(v);
  }
  return labels;
}

void save_label_volume(const LabelVolume& labels, const std::string& path) {
  RawVolume raw{labels.grid.geometry(), 1, std::vector<double>(labels.grid.size())};
  for (std::size_t n = 0; n < raw.data.size(); ++n) raw.data[n] = labels.grid[n];
  write_volume(path, raw, VoxelType::kUInt8);
}

ScalarField load_scalar_field(const std::string& path) {
  RawVolume raw = read_volume(path);
  require(raw.components == 1, ErrorCategory::kFormat, path + ": scalar field must have one component");
  for (double v : raw.data) require(std::isfinite(v), ErrorCategory::kValidation, path + ": non-finite value");
  return ScalarField(raw.geometry, std::move(raw.data));
}

void save_scalar_field(const ScalarField& field, const std::string& path) {
  write_volume(path, RawVolume{field.geometry(), 1, field.storage()}, VoxelType::kFloat32);
}

}  // namespace corsurf
