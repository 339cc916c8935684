// Copyright 2026 The corsurf Authors
// SPDX-License-Identifier: Apache-2.0
#include "corsurf/corsurf.h"

#include <cstring>
#include <new>
#include <string>

#include "collision/intersections.hpp"
#include "common/parallel.hpp"
#include "pipeline/runs.hpp"

struct csurf_mesh {
  corsurf::TriangleMesh mesh;
};

namespace {

thread_local std::string g_message;
thread_local std::string g_stage;

csurf_status to_status(corsurf::ErrorCategory c) {
  using corsurf::ErrorCategory;
  switch (c) {
    case ErrorCategory::kArgument: return CSURF_ERR_ARGUMENT;
    case ErrorCategory::kIo: return CSURF_ERR_IO;
    case ErrorCategory::kFormat: return CSURF_ERR_FORMAT;
    case ErrorCategory::kValidation: return CSURF_ERR_VALIDATION;
    case ErrorCategory::kDegenerate: return CSURF_ERR_DEGENERATE;
    case ErrorCategory::kEmptySurface: return CSURF_ERR_EMPTY_SURFACE;
    case ErrorCategory::kTopology: return CSURF_ERR_TOPOLOGY;
    case ErrorCategory::kNonConvergence: return CSURF_ERR_NON_CONVERGENCE;
    case ErrorCategory::kSchema: return CSURF_ERR_SCHEMA;
    case ErrorCategory::kInternal: return CSURF_ERR_INTERNAL;
  }
  return CSURF_ERR_INTERNAL;
}

template <class F>
csurf_status guard(F&& body) {
  g_message.clear();
  g_stage.clear();
  try {
    body();
    return CSURF_OK;
  } catch (const corsurf::Error& e) {
    g_message = e.what();
    g_stage = e.stage();
    return to_status(e.category());
  } catch (const std::bad_alloc&) {
    g_message = "out of memory";
  } catch (const std::exception& e) {
    g_message = e.what();
  } catch (...) {
    g_message = "unknown failure";
  }
  return CSURF_ERR_INTERNAL;
}

void check_ptr(const void* p, const char* name) {
  corsurf::require(p != nullptr, corsurf::ErrorCategory::kArgument, std::string(name) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

using RunFn = nlohmann::ordered_json (*)(const corsurf::PipelineConfig&);

csurf_status run(RunFn fn, const char* config_json, char** manifest_json) {
  return guard([&] {
    check_ptr(config_json, "config_json");
    check_ptr(manifest_json, "manifest_json");
    *manifest_json = nullptr;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::exception& e) {
      corsurf::fail(corsurf::ErrorCategory::kArgument, std::string("config is not valid JSON: ") + e.what());
    }
    corsurf::PipelineConfig config;
    corsurf::merge_config(config, j);
    *manifest_json = dup_string(fn(config).dump(2));
  });
}

}  // namespace

extern "C" {

const char* csurf_version(void) { return corsurf::kToolVersion; }

const char* csurf_status_name(csurf_status status) {
  switch (status) {
    case CSURF_OK: return "ok";
    case CSURF_ERR_ARGUMENT: return "argument";
    case CSURF_ERR_IO: return "io";
    case CSURF_ERR_FORMAT: return "format";
    case CSURF_ERR_VALIDATION: return "validation";
    case CSURF_ERR_DEGENERATE: return "degenerate_input";
    case CSURF_ERR_EMPTY_SURFACE: return "empty_surface";
    case CSURF_ERR_TOPOLOGY: return "topology";
    case CSURF_ERR_NON_CONVERGENCE: return "non_convergence";
    case CSURF_ERR_SCHEMA: return "schema";
    case CSURF_ERR_INTERNAL: return "internal";
  }
  return "internal";
}

int csurf_status_exit_code(csurf_status status) {
  switch (status) {
    case CSURF_OK: return 0;
    case CSURF_ERR_ARGUMENT: return 2;
    case CSURF_ERR_IO:
    case CSURF_ERR_FORMAT:
    case CSURF_ERR_VALIDATION:
    case CSURF_ERR_SCHEMA: return 3;
    case CSURF_ERR_DEGENERATE:
    case CSURF_ERR_EMPTY_SURFACE:
    case CSURF_ERR_TOPOLOGY: return 4;
    case CSURF_ERR_NON_CONVERGENCE: return 5;
    case CSURF_ERR_INTERNAL: return 1;
  }
  return 1;
}

const char* csurf_last_error_message(void) { return g_message.c_str(); }
const char* csurf_last_error_stage(void) { return g_stage.c_str(); }

csurf_status csurf_set_threads(int threads) {
  return guard([&] {
    corsurf::require(threads >= 1, corsurf::ErrorCategory::kArgument, "threads must be at least 1");
    corsurf::set_thread_count(threads);
  });
}

csurf_status csurf_mesh_load(const char* path, csurf_mesh** out) {
  return guard([&] {
    check_ptr(path, "path");
    check_ptr(out, "out");
    *out = nullptr;
    auto m = std::make_unique<csurf_mesh>();
    m->mesh = corsurf::load_mesh(path);
    *out = m.release();
  });
}

csurf_status csurf_mesh_save(const csurf_mesh* mesh, const char* path) {
  return guard([&] {
    check_ptr(mesh, "mesh");
    check_ptr(path, "path");
    corsurf::save_mesh(mesh->mesh, path);
  });
}

csurf_status csurf_mesh_create(const double* vertices, size_t vertex_count, const uint32_t* faces, size_t face_count,
                               csurf_mesh** out) {
  return guard([&] {
    check_ptr(out, "out");
    *out = nullptr;
    if (vertex_count > 0) check_ptr(vertices, "vertices");
    if (face_count > 0) check_ptr(faces, "faces");
    auto m = std::make_unique<csurf_mesh>();
    m->mesh.vertices.resize(vertex_count);
    for (size_t i = 0; i < vertex_count; ++i)
      m->mesh.vertices[i] = {vertices[3 * i], vertices[3 * i + 1], vertices[3 * i + 2]};
    m->mesh.faces.resize(face_count);
    for (size_t f = 0; f < face_count; ++f) m->mesh.faces[f] = {faces[3 * f], faces[3 * f + 1], faces[3 * f + 2]};
    corsurf::validate_mesh(m->mesh);
    *out = m.release();
  });
}

void csurf_mesh_free(csurf_mesh* mesh) { delete mesh; }

size_t csurf_mesh_vertex_count(const csurf_mesh* mesh) { return mesh ? mesh->mesh.vertices.size() : 0; }
size_t csurf_mesh_face_count(const csurf_mesh* mesh) { return mesh ? mesh->mesh.faces.size() : 0; }

csurf_status csurf_mesh_vertices(const csurf_mesh* mesh, double* out, size_t capacity) {
  return guard([&] {
    check_ptr(mesh, "mesh");
    check_ptr(out, "out");
    const auto& v = mesh->mesh.vertices;
    corsurf::require(capacity >= 3 * v.size(), corsurf::ErrorCategory::kArgument, "vertex buffer too small");
    for (size_t i = 0; i < v.size(); ++i) {
      out[3 * i] = v[i].x;
      out[3 * i + 1] = v[i].y;
      out[3 * i + 2] = v[i].z;
    }
  });
}

csurf_status csurf_mesh_faces(const csurf_mesh* mesh, uint32_t* out, size_t capacity) {
  return guard([&] {
    check_ptr(mesh, "mesh");
    check_ptr(out, "out");
    const auto& f = mesh->mesh.faces;
    corsurf::require(capacity >= 3 * f.size(), corsurf::ErrorCategory::kArgument, "face buffer too small");
    for (size_t i = 0; i < f.size(); ++i)
      for (int c = 0; c < 3; ++c) out[3 * i + c] = f[i][c];
  });
}

csurf_status csurf_mesh_topology(const csurf_mesh* mesh, long long* euler_characteristic, long long* genus,
                                 int* closed) {
  return guard([&] {
    check_ptr(mesh, "mesh");
    const corsurf::MeshDiagnostics d = corsurf::diagnostics(mesh->mesh);
    if (euler_characteristic) *euler_characteristic = d.euler_characteristic;
    if (genus) *genus = d.genus ? *d.genus : -1;
    if (closed) *closed = d.is_closed ? 1 : 0;
  });
}

csurf_status csurf_self_intersection(const csurf_mesh* mesh, double* percent) {
  return guard([&] {
    check_ptr(mesh, "mesh");
    check_ptr(percent, "percent");
    *percent = corsurf::self_intersection_fraction(mesh->mesh).percent;
  });
}

csurf_status csurf_pair_intersection(const csurf_mesh* a, const csurf_mesh* b, double* percent_a, double* percent_b,
                                     size_t* contacts) {
  return guard([&] {
    check_ptr(a, "a");
    check_ptr(b, "b");
    const corsurf::IntersectionReport r = corsurf::mesh_pair_intersections(a->mesh, b->mesh, "a", "b");
    if (percent_a) *percent_a = r.percent_a;
    if (percent_b) *percent_b = r.percent_b;
    if (contacts) *contacts = r.contacts;
  });
}

csurf_status csurf_run_init_surfaces(const char* c, char** m) { return run(corsurf::run_init_surfaces, c, m); }
csurf_status csurf_run_deform(const char* c, char** m) { return run(corsurf::run_deform, c, m); }
csurf_status csurf_run_metrics(const char* c, char** m) { return run(corsurf::run_metrics, c, m); }
csurf_status csurf_run_collide(const char* c, char** m) { return run(corsurf::run_collide, c, m); }
csurf_status csurf_run_phantom(const char* c, char** m) { return run(corsurf::run_phantom, c, m); }
csurf_status csurf_run_report(const char* c, char** m) { return run(corsurf::run_report, c, m); }

csurf_status csurf_config_load(const char* path, char** config_json) {
  return guard([&] {
    check_ptr(path, "path");
    check_ptr(config_json, "config_json");
    *config_json = nullptr;
    *config_json = dup_string(corsurf::to_json(corsurf::load_config_file(path)).dump(2));
  });
}

void csurf_string_free(char* s) { delete[] s; }

}  // extern "C"
