/* sparkproj — point clouds to 2D images through curved projection rays.
 *
 * C API over the C++ core: opaque handles, integer status codes, and a
 * thread-local error message. Every function that can fail returns
 * sp_status; on failure sp_last_error() describes what went wrong. Strings
 * and buffers returned through out-parameters are owned by the caller and
 * released with sp_string_free() / sp_buffer_free().
 */
#ifndef SPARKPROJ_H_
#define SPARKPROJ_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SPARKPROJ_API __attribute__((visibility("default")))

typedef enum sp_status {
  SP_OK = 0,
  SP_ERR_IO = 1,
  SP_ERR_PARSE = 2,
  SP_ERR_INVALID_ARGUMENT = 3,
  SP_ERR_DOMAIN = 4,
  SP_ERR_MISSING_LABEL = 5,
  SP_ERR_BAD_WEIGHTS = 6,
  SP_ERR_BAD_SPEC = 7,
  SP_ERR_UNKNOWN = 8
} sp_status;

typedef struct sp_cloud sp_cloud;
typedef struct sp_image sp_image;
typedef struct sp_rng sp_rng;
typedef struct sp_weights sp_weights;

SPARKPROJ_API const char* sp_version(void);

/* Message of the last failing call on this thread ("" if none). */
SPARKPROJ_API const char* sp_last_error(void);

SPARKPROJ_API void sp_string_free(char* text);
SPARKPROJ_API void sp_buffer_free(uint8_t* bytes);

/* ---- clouds ------------------------------------------------------- */

/* xyz-ascii: "x y z r g b [label]" per line, '#' comments, colors 0-255. */
SPARKPROJ_API sp_status sp_cloud_load_xyz(const char* path, sp_cloud** out);
SPARKPROJ_API sp_status sp_cloud_from_preset(const char* name, sp_cloud** out);
SPARKPROJ_API sp_status sp_cloud_from_spec_json(const char* json_text,
                                                sp_cloud** out);
SPARKPROJ_API sp_status sp_cloud_write_xyz(const sp_cloud* cloud,
                                           const char* path);
/* Per-axis affine map onto [-0.5, 0.5]; idempotent. */
SPARKPROJ_API sp_status sp_cloud_normalize(sp_cloud* cloud);
SPARKPROJ_API size_t sp_cloud_point_count(const sp_cloud* cloud);
SPARKPROJ_API int sp_cloud_class_count(const sp_cloud* cloud);
SPARKPROJ_API int sp_cloud_has_labels(const sp_cloud* cloud);
SPARKPROJ_API void sp_cloud_free(sp_cloud* cloud);

/* ---- view planes and ray math ------------------------------------- */

/* axes: 0 = X, 1 = Y, 2 = Z */
typedef struct sp_view_plane {
  int id;
  int depth_axis;
  int depth_sign; /* +1 or -1 */
  int height_axis;
  int width_axis;
} sp_view_plane;

/* Fills planes[0..count) with the default enumeration
 * (+X,YZ), (-X,YZ), (+Y,XZ), (-Y,XZ), (+Z,XY), (-Z,XY); count in [1,6]. */
SPARKPROJ_API sp_status sp_default_planes(int count, sp_view_plane* planes);

typedef struct sp_pixel {
  int h;
  int w;
  double h_cont;
  double w_cont;
  double depth;
  int in_frame;
} sp_pixel;

/* Point (x,y,z) must come from a normalized cloud. */
SPARKPROJ_API sp_status sp_project_point(double x, double y, double z,
                                         const sp_view_plane* plane,
                                         double kappa_h, double kappa_w,
                                         int rows, int cols, sp_pixel* out);

/* Bitmask: 1 = kappa_h>0 (upward), 2 = kappa_h<0 (downward),
 * 4 = kappa_w>0 (leftward), 8 = kappa_w<0 (rightward), 0 = straight.
 * name_buf (optional, >= 32 bytes) receives e.g. "Upward-Curve Ray". */
SPARKPROJ_API int sp_classify_ray(double kappa_h, double kappa_w,
                                  char* name_buf, size_t name_buf_size);

SPARKPROJ_API sp_status sp_boundary_check(double x, double y, double z,
                                          const sp_view_plane* plane,
                                          double kappa_h, double kappa_w,
                                          int* inside);

/* ---- rendering ----------------------------------------------------- */

typedef enum sp_color_mode { SP_COLOR_REAL = 0, SP_COLOR_SEMANTIC = 1 } sp_color_mode;

/* Renders the plane's strict-side subset of a normalized cloud with
 * nearest-depth occlusion (depth ties go to the lower point index). */
SPARKPROJ_API sp_status sp_render(const sp_cloud* cloud,
                                  const sp_view_plane* plane, double kappa_h,
                                  double kappa_w, int rows, int cols,
                                  sp_color_mode mode, sp_image** out);
SPARKPROJ_API sp_status sp_image_size(const sp_image* img, int* rows,
                                      int* cols);
SPARKPROJ_API sp_status sp_image_pixel(const sp_image* img, int h, int w,
                                       double rgb[3], double* depth);
/* Count of pixels that received at least one point. */
SPARKPROJ_API size_t sp_image_occupied(const sp_image* img);
/* Eq-style utilization: (non-black fraction)^tau with 0^0 = 0. */
SPARKPROJ_API sp_status sp_image_u_space(const sp_image* img, double tau,
                                         double* out);
/* Binary PPM (P6, maxval 255); byte-identical for identical images. */
SPARKPROJ_API sp_status sp_image_encode_ppm(const sp_image* img,
                                            uint8_t** bytes, size_t* size);
SPARKPROJ_API sp_status sp_image_write_ppm(const sp_image* img,
                                           const char* path);
SPARKPROJ_API void sp_image_free(sp_image* img);

/* ---- objective ------------------------------------------------------ */

/* Gaussian kernel l(kh, kw) with standard deviation u (> 0). */
SPARKPROJ_API sp_status sp_gauss_reg(double kappa_h, double kappa_w, double u,
                                     double* out);
SPARKPROJ_API sp_status sp_grad_gauss_reg(double kappa_h, double kappa_w,
                                          double u, double* d_kappa_h,
                                          double* d_kappa_w);
/* logits: n*classes row-major; onehot: same layout. Uses the 1/(n*C) mean. */
SPARKPROJ_API sp_status sp_cross_entropy(const double* logits,
                                         const double* onehot, size_t n,
                                         size_t classes, double* out);
SPARKPROJ_API double sp_total_loss(double cross_entropy_value, double sparks,
                                   double lambda);

/* ---- mutation and search ------------------------------------------- */

SPARKPROJ_API sp_status sp_rng_new(uint64_t seed, sp_rng** out);
SPARKPROJ_API double sp_rng_gaussian(sp_rng* rng);
SPARKPROJ_API void sp_rng_free(sp_rng* rng);

/* kappa*(1+N(0,1)) wrapped back into [kappa_min, kappa_max]. */
SPARKPROJ_API sp_status sp_mutate(double kappa, double kappa_min,
                                  double kappa_max, sp_rng* rng, double* out);

typedef struct sp_search_result {
  double kappa_h;
  double kappa_w;
  double u_space;
  int iterations; /* trace length, including iteration 0 */
} sp_search_result;

/* Fireworks-style elitist search maximizing U_Space of the plane render. */
SPARKPROJ_API sp_status sp_optimize_plane(const sp_cloud* cloud,
                                          const sp_view_plane* plane, int rows,
                                          int cols, double tau,
                                          double kappa_min, double kappa_max,
                                          uint64_t seed, int population,
                                          int iterations, double init_kappa_h,
                                          double init_kappa_w,
                                          sp_search_result* out);

/* ---- predictor ------------------------------------------------------ */

SPARKPROJ_API sp_status sp_weights_load(const char* path, sp_weights** out);
SPARKPROJ_API sp_status sp_weights_zero(sp_weights** out);
SPARKPROJ_API sp_status sp_weights_save(const sp_weights* weights,
                                        const char* path);
SPARKPROJ_API void sp_weights_free(sp_weights* weights);

/* Forward pass for one plane: FPS -> ball query -> attention -> MLP ->
 * rescale onto [kappa_min, kappa_max]; optional mutation step. */
SPARKPROJ_API sp_status sp_predict_kappa(const sp_cloud* cloud,
                                         const sp_view_plane* plane,
                                         const sp_weights* weights,
                                         size_t centers, double radius,
                                         double omega, double kappa_min,
                                         double kappa_max, int mutate,
                                         uint64_t seed, double* kappa_h,
                                         double* kappa_w);

/* ---- pipeline commands ---------------------------------------------- */

/* Mirrors the CLI flag set; zero-initialize with sp_run_options_init. */
typedef struct sp_run_options {
  const char* input_path;
  const char* preset;
  const char* scene_spec_path;
  const char* out_dir;
  const char* scene_name;
  int height;
  int width;
  double tau;
  double lambda;
  double omega;
  uint64_t centers;
  double ball_radius;
  double kappa_min;
  double kappa_max;
  uint64_t seed;
  int plane_count;
  const char* plane_list;
  int threads;
  const char* mode; /* "auto", "real", "semantic", "both" */
  const double* kappa_h; /* 1 value or one per plane */
  size_t kappa_h_count;
  const double* kappa_w;
  size_t kappa_w_count;
  int population;
  int iterations;
  double init_kappa_h;
  double init_kappa_w;
  const char* weights_path;
  int mutate;
  const double* grid;
  size_t grid_count;
  int sweep_plane;
  const char* synth_out;
} sp_run_options;

SPARKPROJ_API void sp_run_options_init(sp_run_options* options);

/* Each command writes its files under out_dir and hands back the canonical
 * report JSON (CSV for sweep) through report_out (optional). */
SPARKPROJ_API sp_status sp_cmd_project(const sp_run_options* options,
                                       char** report_out);
SPARKPROJ_API sp_status sp_cmd_optimize(const sp_run_options* options,
                                        char** report_out);
SPARKPROJ_API sp_status sp_cmd_predict(const sp_run_options* options,
                                       char** report_out);
SPARKPROJ_API sp_status sp_cmd_sweep(const sp_run_options* options,
                                     char** csv_out);
SPARKPROJ_API sp_status sp_cmd_synth(const sp_run_options* options);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SPARKPROJ_H_ */
