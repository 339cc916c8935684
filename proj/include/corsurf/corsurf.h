/* Copyright 2026 The corsurf Authors
 * SPDX-License-Identifier: Apache-2.0 */
#ifndef CORSURF_CORSURF_H_
#define CORSURF_CORSURF_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CSURF_API __declspec(dllexport)
#else
#define CSURF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum csurf_status {
  CSURF_OK = 0,
  CSURF_ERR_ARGUMENT = 1,
  CSURF_ERR_IO = 2,
  CSURF_ERR_FORMAT = 3,
  CSURF_ERR_VALIDATION = 4,
  CSURF_ERR_DEGENERATE = 5,
  CSURF_ERR_EMPTY_SURFACE = 6,
  CSURF_ERR_TOPOLOGY = 7,
  CSURF_ERR_NON_CONVERGENCE = 8,
  CSURF_ERR_SCHEMA = 9,
  CSURF_ERR_INTERNAL = 10
} csurf_status;

typedef struct csurf_mesh csurf_mesh;

CSURF_API const char* csurf_version(void);

/* Category name such as "io" or "non_convergence". */
CSURF_API const char* csurf_status_name(csurf_status status);
/* Process exit code for the CLI: 0 ok, 2 argument, 3 I/O, format, validation
 * and schema, 4 degenerate input, empty surface and topology,
 * 5 non-convergence, 1 internal. */
CSURF_API int csurf_status_exit_code(csurf_status status);

/* Details of the last failure on the calling thread. Valid until the next
 * call into the library from that thread. */
CSURF_API const char* csurf_last_error_message(void);
CSURF_API const char* csurf_last_error_stage(void);

CSURF_API csurf_status csurf_set_threads(int threads);

/* Meshes. Handles are owned by the caller and released with csurf_mesh_free. */
CSURF_API csurf_status csurf_mesh_load(const char* path, csurf_mesh** out);
CSURF_API csurf_status csurf_mesh_save(const csurf_mesh* mesh, const char* path);
CSURF_API csurf_status csurf_mesh_create(const double* vertices, size_t vertex_count, const uint32_t* faces,
                                         size_t face_count, csurf_mesh** out);
CSURF_API void csurf_mesh_free(csurf_mesh* mesh);
CSURF_API size_t csurf_mesh_vertex_count(const csurf_mesh* mesh);
CSURF_API size_t csurf_mesh_face_count(const csurf_mesh* mesh);
/* Copies 3 * vertex_count doubles into out. */
CSURF_API csurf_status csurf_mesh_vertices(const csurf_mesh* mesh, double* out, size_t capacity);
/* Copies 3 * face_count indices into out. */
CSURF_API csurf_status csurf_mesh_faces(const csurf_mesh* mesh, uint32_t* out, size_t capacity);

/* genus is -1 when the mesh is not closed. */
CSURF_API csurf_status csurf_mesh_topology(const csurf_mesh* mesh, long long* euler_characteristic, long long* genus,
                                           int* closed);
CSURF_API csurf_status csurf_self_intersection(const csurf_mesh* mesh, double* percent);
CSURF_API csurf_status csurf_pair_intersection(const csurf_mesh* a, const csurf_mesh* b, double* percent_a,
                                               double* percent_b, size_t* contacts);

/* Pipeline runs. config_json is a JSON object with the same keys as a config
 * file. On success *manifest_json receives the run manifest, to be released
 * with csurf_string_free. */
CSURF_API csurf_status csurf_run_init_surfaces(const char* config_json, char** manifest_json);
CSURF_API csurf_status csurf_run_deform(const char* config_json, char** manifest_json);
CSURF_API csurf_status csurf_run_metrics(const char* config_json, char** manifest_json);
CSURF_API csurf_status csurf_run_collide(const char* config_json, char** manifest_json);
CSURF_API csurf_status csurf_run_phantom(const char* config_json, char** manifest_json);
CSURF_API csurf_status csurf_run_report(const char* config_json, char** manifest_json);

/* Reads a config file and returns it as normalised JSON with every key set. */
CSURF_API csurf_status csurf_config_load(const char* path, char** config_json);

CSURF_API void csurf_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* CORSURF_CORSURF_H_ */
