/* polyprof — linear-region profiler for fully-connected ReLU networks.
 *
 * C API of the shared library. All functions return a pp_status; outputs go
 * through pointers. Objects are opaque handles released with their _free
 * function. pp_last_error() returns a thread-local message describing the
 * most recent failure on the calling thread.
 */
#ifndef POLYPROF_H
#define POLYPROF_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pp_status {
  PP_OK = 0,
  PP_ERR_INVALID_ARGUMENT = 1,
  PP_ERR_BAD_ARCH = 2,
  PP_ERR_DIM_MISMATCH = 3,
  PP_ERR_PARSE = 4,
  PP_ERR_INFEASIBLE = 5,
  PP_ERR_UNBOUNDED = 6,
  PP_ERR_DEGENERATE = 7,
  PP_ERR_TOO_LARGE = 8,
  PP_ERR_NOT_INTERIOR = 9,
  PP_ERR_EMPTY_PROFILE = 10,
  PP_ERR_NUMERICAL = 11,
  PP_ERR_IO = 12
} pp_status;

const char* pp_status_name(pp_status s);
const char* pp_last_error(void);

/* ---------- networks (weights files use the relu-mlp-v1 JSON schema) ---- */

typedef struct pp_network pp_network;

/* widths lists every layer including input and output, e.g. {3,40,20,1}.
 * method: "xavier-uniform" | "xavier-normal" | "kaiming" | "orthogonal". */
pp_status pp_network_init(const int32_t* widths, int32_t n_widths,
                          const char* method, double bias_value, uint64_t seed,
                          pp_network** out);
pp_status pp_network_load(const char* path, pp_network** out);
pp_status pp_network_save(const pp_network* net, const char* path);
void pp_network_free(pp_network* net);

int32_t pp_network_input_dim(const pp_network* net);
int32_t pp_network_output_dim(const pp_network* net);
int32_t pp_network_hidden_neurons(const pp_network* net);

/* output must hold output_dim values; pattern_bits (optional) holds one byte
 * per hidden neuron, 1 iff the pre-activation is positive */
pp_status pp_network_forward(const pp_network* net, const double* x,
                             double* output, uint8_t* pattern_bits);

pp_status pp_network_first_layer_rank(const pp_network* net, double tol,
                                      int32_t* out_rank);

/* ---------- halfspace systems {x : a_k.x + b_k <= 0} --------------------- */

typedef struct pp_system pp_system;

pp_status pp_system_create(int32_t dim, int32_t n_rows,
                           const double* normals_row_major,
                           const double* offsets, pp_system** out);
/* file schema: {"dim": d, "normals": [[...], ...], "offsets": [...]} */
pp_status pp_system_load(const char* path, pp_system** out);
/* the region of the pattern observed at point x, boxed to [-box,box]^d */
pp_status pp_system_region_of(const pp_network* net, const double* x,
                              double box_half, pp_system** out);
void pp_system_free(pp_system* s);

int32_t pp_system_dim(const pp_system* s);
int32_t pp_system_rows(const pp_system* s);

pp_status pp_chebyshev_center(const pp_system* s, double* center,
                              double* radius);
pp_status pp_is_full_dimensional(const pp_system* s, int32_t* out_flag);
pp_status pp_nonredundant_rows(const pp_system* s, int32_t* out_idx,
                               int32_t cap, int32_t* out_count);

/* Monte Carlo face detection (coordinate-direction hit-and-run). x0 may be
 * NULL to start from the Chebyshev center. n_chains > 1 merges independent
 * walks. Found indices are always true faces; the set is a lower bound. */
pp_status pp_hit_and_run(const pp_system* s, const double* x0,
                         int32_t checkpoint, uint64_t seed,
                         uint64_t max_iterations, int32_t n_chains,
                         int32_t sphere_directions, int32_t* out_idx,
                         int32_t cap, int32_t* out_count,
                         uint64_t* out_iterations);

/* region system of the pattern at x, walked from x */
pp_status pp_estimate_region_faces(const pp_network* net, const double* x,
                                   double box_half, int32_t checkpoint,
                                   uint64_t seed, uint64_t max_iterations,
                                   int32_t* out_found, uint64_t* out_iterations,
                                   int32_t* out_total_rows);

/* ---------- region profiling -------------------------------------------- */

typedef struct pp_profile pp_profile;

/* mode: "sample" | "exhaustive". exhaustive_cap <= 0 keeps the default (24).
 * threads <= 0 means one worker. net_path_label is recorded in the report. */
pp_status pp_profile_run(const pp_network* net, const char* mode,
                         int32_t n_samples, uint64_t seed, double box_half,
                         int32_t exhaustive_cap, int32_t include_box_faces,
                         int32_t threads, const char* net_path_label,
                         pp_profile** out);
pp_status pp_profile_load(const char* path, pp_profile** out);
void pp_profile_free(pp_profile* p);

int32_t pp_profile_region_count(const pp_profile* p);
int32_t pp_profile_omega(const pp_profile* p);
int64_t pp_profile_total_simplices(const pp_profile* p);
int64_t pp_profile_total_faces(const pp_profile* p);
double pp_profile_total_volume(const pp_profile* p);
pp_status pp_profile_summary(const pp_profile* p, double* simple_fraction,
                             double* avg_faces);
pp_status pp_profile_region_stats(const pp_profile* p, int32_t index,
                                  int32_t* vertices, int32_t* faces,
                                  int32_t* simplices, double* volume);

pp_status pp_profile_write_json(const pp_profile* p, const char* path);
pp_status pp_profile_write_histogram_csv(const pp_profile* p,
                                         int32_t bin_width, const char* path);
pp_status pp_profile_write_histogram_svg(const pp_profile* p,
                                         int32_t bin_width, const char* path);

/* ---------- cross-sections ---------------------------------------------- */

typedef struct pp_cross_section pp_cross_section;

pp_status pp_cross_section_run(const pp_network* net, const double* p1,
                               const double* p2, double extent, uint64_t seed,
                               int32_t n_samples, int32_t cap,
                               pp_cross_section** out);
void pp_cross_section_free(pp_cross_section* cs);
int32_t pp_cross_section_polygon_count(const pp_cross_section* cs);
pp_status pp_cross_section_write_json(const pp_cross_section* cs,
                                      const char* net_path, const char* path);
pp_status pp_cross_section_write_svg(const pp_cross_section* cs,
                                     const char* path);

/* ---------- closed-form bounds ------------------------------------------ */

typedef struct pp_bounds pp_bounds;

/* arch as in pp_network_init; rank < 0 skips the low-rank rows */
pp_status pp_bounds_compute(const int32_t* arch, int32_t n_widths,
                            int32_t rank, int32_t zero_bias, pp_bounds** out);
void pp_bounds_free(pp_bounds* b);

/* named value as a decimal string (values can exceed 64-bit range) */
pp_status pp_bounds_value(const pp_bounds* b, const char* name, char* buf,
                          size_t buf_len);
/* aligned table, upper / enumerated / lower layout */
pp_status pp_bounds_table(const pp_bounds* b,
                          const int64_t* enumerated_simplices, char* buf,
                          size_t buf_len);
pp_status pp_bounds_write_json(const pp_bounds* b, const char* path);

/* ---------- small helpers ------------------------------------------------ */

/* reads a JSON array of numbers; returns the dimension through out_dim */
pp_status pp_point_load(const char* path, double* buf, int32_t cap,
                        int32_t* out_dim);

#ifdef __cplusplus
}
#endif

#endif /* POLYPROF_H */
