// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include <cstring>
#include <fstream>
#include <sstream>

#include "meshing/triangle_mesh.hpp"

namespace corsurf {
namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

enum class PlyScalar { kInt8, kUInt8, kInt16, kUInt16, kInt32, kUInt32, kFloat32, kFloat64 };

PlyScalar parse_scalar(const std::string& name, const std::string& path) {
  if (name == "char" || name == "int8") return PlyScalar::kInt8;
  if (name == "uchar" || name == "uint8") return PlyScalar::kUInt8;
  if (name == "short" || name == "int16") return PlyScalar::kInt16;
  if (name == "ushort" || name == "uint16") return PlyScalar::kUInt16;
  if (name == "int" || name == "int32") return PlyScalar::kInt32;
  if (name == "uint" || name == "uint32") return PlyScalar::kUInt32;
  if (name == "float" || name == "float32") return PlyScalar::kFloat32;
  if (name == "double" || name == "float64") return PlyScalar::kFloat64;
  fail(ErrorCategory::kFormat, path + ": unknown PLY scalar type '" + name + "'");
}

std::size_t scalar_size(PlyScalar t) {
  switch (t) {
    case PlyScalar::kInt8: case PlyScalar::kUInt8: return 1;
    case PlyScalar::kInt16: case PlyScalar::kUInt16: return 2;
    case PlyScalar::kInt32: case PlyScalar::kUInt32: case PlyScalar::kFloat32: return 4;
    case PlyScalar::kFloat64: return 8;
  }
  return 0;
}

struct PlyProperty {
  std::string name;
  PlyScalar type = PlyScalar::kFloat32;
  bool is_list = false;
  PlyScalar count_type = PlyScalar::kUInt8;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;
};

// Pulls scalars out of either a binary little-endian stream or ASCII tokens.
class PlyReader {
 public:
  PlyReader(std::istream& in, bool ascii, std::string path) : in_(in), ascii_(ascii), path_(std::move(path)) {}

  double read(PlyScalar t) {
    if (ascii_) {
      double v;
      if (!(in_ >> v)) fail(ErrorCategory::kFormat, path_ + ": truncated PLY body");
      return v;
    }
    unsigned char buf[8];
    const std::size_t n = scalar_size(t);
    if (!in_.read(reinterpret_cast<char*>(buf), static_cast<std::streamsize>(n)))
      fail(ErrorCategory::kFormat, path_ + ": truncated PLY body");
    switch (t) {
      case PlyScalar::kInt8: return static_cast<std::int8_t>(buf[0]);
      case PlyScalar::kUInt8: return buf[0];
      case PlyScalar::kInt16: { std::int16_t v; std::memcpy(&v, buf, 2); return v; }
      case PlyScalar::kUInt16: { std::uint16_t v; std::memcpy(&v, buf, 2); return v; }
      case PlyScalar::kInt32: { std::int32_t v; std::memcpy(&v, buf, 4); return v; }
      case PlyScalar::kUInt32: { std::uint32_t v; std::memcpy(&v, buf, 4); return v; }
      case PlyScalar::kFloat32: { float v; std::memcpy(&v, buf, 4); return v; }
      case PlyScalar::kFloat64: { double v; std::memcpy(&v, buf, 8); return v; }
    }
    return 0.0;
  }

 private:
  std::istream& in_;
  bool ascii_;
  std::string path_;
};

std::uint32_t checked_index(double v, std::size_t vertex_count, const std::string& path) {
  if (!(v >= 0.0) || v >= static_cast<double>(vertex_count) || v != static_cast<double>(static_cast<std::uint64_t>(v)))
    fail(ErrorCategory::kFormat, path + ": face index out of range");
  return static_cast<std::uint32_t>(v);
}

TriangleMesh load_ply(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCategory::kIo, "cannot open " + path);
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  require(line == "ply", ErrorCategory::kFormat, path + ": missing PLY magic");

  bool ascii = false;
  bool have_format = false;
  std::vector<PlyElement> elements;
  while (true) {
    require(static_cast<bool>(std::getline(in, line)), ErrorCategory::kFormat, path + ": unterminated PLY header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "end_header") break;
    if (word == "comment" || word == "obj_info" || word.empty()) continue;
    if (word == "format") {
      std::string fmt;
      ls >> fmt;
      if (fmt == "ascii") {
        ascii = true;
      } else if (fmt != "binary_little_endian") {
        fail(ErrorCategory::kFormat, path + ": unsupported PLY format '" + fmt + "'");
      }
      have_format = true;
    } else if (word == "element") {
      PlyElement e;
      ls >> e.name >> e.count;
      require(!ls.fail(), ErrorCategory::kFormat, path + ": bad element line");
      elements.push_back(e);
    } else if (word == "property") {
      require(!elements.empty(), ErrorCategory::kFormat, path + ": property before element");
      PlyProperty p;
      std::string type;
      ls >> type;
      if (type == "list") {
        std::string count_type, item_type;
        ls >> count_type >> item_type >> p.name;
        p.is_list = true;
        p.count_type = parse_scalar(count_type, path);
        p.type = parse_scalar(item_type, path);
      } else {
        ls >> p.name;
        p.type = parse_scalar(type, path);
      }
      elements.back().properties.push_back(p);
    } else {
      fail(ErrorCategory::kFormat, path + ": unexpected PLY header line '" + line + "'");
    }
  }
  require(have_format, ErrorCategory::kFormat, path + ": PLY header lacks a format line");

  TriangleMesh mesh;
  PlyReader reader(in, ascii, path);
  bool have_vertices = false;
  for (const PlyElement& e : elements) {
    if (e.name == "vertex") {
      int axis_of[64];
      require(e.properties.size() <= 64, ErrorCategory::kFormat, path + ": too many vertex properties");
      int found = 0;
      for (std::size_t p = 0; p < e.properties.size(); ++p) {
        const auto& name = e.properties[p].name;
        axis_of[p] = name == "x" ? 0 : name == "y" ? 1 : name == "z" ? 2 : -1;
        if (axis_of[p] >= 0) ++found;
        require(!e.properties[p].is_list, ErrorCategory::kFormat, path + ": list property on vertices");
      }
      require(found == 3, ErrorCategory::kFormat, path + ": vertex element needs x, y and z");
      mesh.vertices.resize(e.count);
      for (std::size_t v = 0; v < e.count; ++v)
        for (std::size_t p = 0; p < e.properties.size(); ++p) {
          const double value = reader.read(e.properties[p].type);
          if (axis_of[p] >= 0) mesh.vertices[v][axis_of[p]] = value;
        }
      have_vertices = true;
    } else if (e.name == "face") {
      require(have_vertices, ErrorCategory::kFormat, path + ": face element before vertex element");
      mesh.faces.reserve(e.count);
      for (std::size_t f = 0; f < e.count; ++f) {
        for (const PlyProperty& p : e.properties) {
          if (!p.is_list) {
            reader.read(p.type);
            continue;
          }
          const double n = reader.read(p.count_type);
          if (p.name != "vertex_indices" && p.name != "vertex_index") {
            for (int i = 0; i < static_cast<int>(n); ++i) reader.read(p.type);
            continue;
          }
          require(n == 3.0, ErrorCategory::kFormat, path + ": only triangle faces are supported");
          Face t;
          for (int i = 0; i < 3; ++i) t[i] = checked_index(reader.read(p.type), mesh.vertices.size(), path);
          mesh.faces.push_back(t);
        }
      }
    } else {
      for (std::size_t n = 0; n < e.count; ++n)
        for (const PlyProperty& p : e.properties) {
          const int count = p.is_list ? static_cast<int>(reader.read(p.count_type)) : 1;
          for (int i = 0; i < count; ++i) reader.read(p.type);
        }
    }
  }
  require(have_vertices, ErrorCategory::kFormat, path + ": PLY has no vertex element");
  return mesh;
}

void save_ply(const TriangleMesh& mesh, const std::string& path) {
  std::ostringstream out(std::ios::binary);
  out << "ply\nformat binary_little_endian 1.0\n"
      << "element vertex " << mesh.vertices.size() << "\n"
      << "property float x\nproperty float y\nproperty float z\n"
      << "element face " << mesh.faces.size() << "\n"
      << "property list uchar int vertex_indices\nend_header\n";
  for (const Vec3& v : mesh.vertices) {
    const float xyz[3] = {static_cast<float>(v.x), static_cast<float>(v.y), static_cast<float>(v.z)};
    out.write(reinterpret_cast<const char*>(xyz), sizeof(xyz));
  }
  for (const Face& t : mesh.faces) {
    const unsigned char three = 3;
    out.write(reinterpret_cast<const char*>(&three), 1);
    const std::int32_t idx[3] = {static_cast<std::int32_t>(t[0]), static_cast<std::int32_t>(t[1]),
                                 static_cast<std::int32_t>(t[2])};
    out.write(reinterpret_cast<const char*>(idx), sizeof(idx));
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(file), ErrorCategory::kIo, "cannot write " + path);
  const std::string bytes = out.str();
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  require(static_cast<bool>(file), ErrorCategory::kIo, "write failed for " + path);
}

TriangleMesh load_obj(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCategory::kIo, "cannot open " + path);
  TriangleMesh mesh;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      Vec3 p;
      ls >> p.x >> p.y >> p.z;
      require(!ls.fail(), ErrorCategory::kFormat, path + ":" + std::to_string(line_no) + ": bad vertex");
      mesh.vertices.push_back(p);
    } else if (tag == "f") {
      std::vector<long long> idx;
      std::string token;
      while (ls >> token) {
        long long i = 0;
        try {
          i = std::stoll(token.substr(0, token.find('/')));
        } catch (const std::exception&) {
          fail(ErrorCategory::kFormat, path + ":" + std::to_string(line_no) + ": bad face index");
        }
        if (i < 0) i += static_cast<long long>(mesh.vertices.size()) + 1;
        require(i >= 1 && i <= static_cast<long long>(mesh.vertices.size()), ErrorCategory::kFormat,
                path + ":" + std::to_string(line_no) + ": face index out of range");
        idx.push_back(i - 1);
      }
      require(idx.size() == 3, ErrorCategory::kFormat,
              path + ":" + std::to_string(line_no) + ": only triangle faces are supported");
      mesh.faces.push_back({static_cast<std::uint32_t>(idx[0]), static_cast<std::uint32_t>(idx[1]),
                            static_cast<std::uint32_t>(idx[2])});
    }
  }
  return mesh;
}

void save_obj(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  require(static_cast<bool>(out), ErrorCategory::kIo, "cannot write " + path);
  out.precision(17);
  std::vector<float> xyz(3 * mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i)
    for (int a = 0; a < 3; ++a) xyz[3 * i + a] = static_cast<float>(mesh.vertices[i][a]);
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    out << "v " << static_cast<double>(xyz[3 * i]) << ' ' << static_cast<double>(xyz[3 * i + 1]) << ' '
        << static_cast<double>(xyz[3 * i + 2]) << '\n';
  }
  for (const Face& t : mesh.faces) out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  require(static_cast<bool>(out), ErrorCategory::kIo, "write failed for " + path);
}

}  // namespace

TriangleMesh load_mesh(const std::string& path) {
  TriangleMesh mesh;
  if (ends_with(path, ".ply")) {
    mesh = load_ply(path);
  } else if (ends_with(path, ".obj")) {
    mesh = load_obj(path);
  } else {
    fail(ErrorCategory::kArgument, "unsupported mesh extension: " + path);
  }
  try {
    validate_mesh(mesh);
  } catch (const Error& e) {
    fail(ErrorCategory::kFormat, path + ": " + e.what());
  }
  return mesh;
}

void save_mesh(const TriangleMesh& mesh, const std::string& path) {
  if (ends_with(path, ".ply")) {
    save_ply(mesh, path);
  } else if (ends_with(path, ".obj")) {
    save_obj(mesh, path);
  } else {
    fail(ErrorCategory::kArgument, "unsupported mesh extension: " + path);
  }
}

}  // namespace corsurf
