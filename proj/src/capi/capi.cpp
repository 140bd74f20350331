#include "sparkproj.h"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "core/cloud.hpp"
#include "core/error.hpp"
#include "core/fireworks.hpp"
#include "core/objective.hpp"
#include "core/pipeline.hpp"
#include "core/predictor.hpp"
#include "core/projection.hpp"
#include "core/raster.hpp"
#include "core/rng.hpp"
#include "core/scenes.hpp"

using namespace sparkproj;

namespace {

thread_local std::string g_last_error;

sp_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return SP_ERR_IO;
    case ErrorCode::kParse: return SP_ERR_PARSE;
    case ErrorCode::kInvalidArgument: return SP_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDomain: return SP_ERR_DOMAIN;
    case ErrorCode::kMissingLabel: return SP_ERR_MISSING_LABEL;
    case ErrorCode::kBadWeights: return SP_ERR_BAD_WEIGHTS;
    case ErrorCode::kBadSpec: return SP_ERR_BAD_SPEC;
  }
  return SP_ERR_UNKNOWN;
}

// Runs fn, routing exceptions into status codes + the thread-local message.
template <typename Fn>
sp_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SP_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SP_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown error";
    return SP_ERR_UNKNOWN;
  }
}

sp_status invalid(const char* message) {
  g_last_error = message;
  return SP_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

ViewPlane to_plane(const sp_view_plane& p) {
  ViewPlane plane;
  plane.id = p.id;
  plane.depth_axis = static_cast<Axis>(p.depth_axis);
  plane.depth_sign = p.depth_sign;
  plane.height_axis = static_cast<Axis>(p.height_axis);
  plane.width_axis = static_cast<Axis>(p.width_axis);
  return plane;
}

bool plane_ok(const sp_view_plane* p) {
  if (!p) return false;
  auto axis_ok = [](int a) { return a >= 0 && a <= 2; };
  return axis_ok(p->depth_axis) && axis_ok(p->height_axis) &&
         axis_ok(p->width_axis) && p->depth_axis != p->height_axis &&
         p->depth_axis != p->width_axis && p->height_axis != p->width_axis &&
         (p->depth_sign == 1 || p->depth_sign == -1);
}

RunOptions to_run_options(const sp_run_options& o) {
  RunOptions r;
  if (o.input_path) r.input_path = o.input_path;
  if (o.preset) r.preset = o.preset;
  if (o.scene_spec_path) r.scene_spec_path = o.scene_spec_path;
  if (o.out_dir) r.out_dir = o.out_dir;
  if (o.scene_name) r.scene_name = o.scene_name;
  r.height = o.height;
  r.width = o.width;
  r.tau = o.tau;
  r.lambda = o.lambda;
  r.omega = o.omega;
  r.centers = o.centers;
  r.ball_radius = o.ball_radius;
  r.kappa_min = o.kappa_min;
  r.kappa_max = o.kappa_max;
  r.seed = o.seed;
  r.plane_count = o.plane_count;
  if (o.plane_list) r.plane_list = o.plane_list;
  r.threads = o.threads;
  if (o.mode) {
    const std::string mode = o.mode;
    if (mode == "real") r.mode = OutputMode::kReal;
    else if (mode == "semantic") r.mode = OutputMode::kSemantic;
    else if (mode == "both") r.mode = OutputMode::kBoth;
    else if (mode == "auto" || mode.empty()) r.mode = OutputMode::kAuto;
    else fail(ErrorCode::kInvalidArgument, "unknown mode \"" + mode + "\"");
  }
  if (o.kappa_h && o.kappa_h_count) {
    r.kappa_h.assign(o.kappa_h, o.kappa_h + o.kappa_h_count);
  }
  if (o.kappa_w && o.kappa_w_count) {
    r.kappa_w.assign(o.kappa_w, o.kappa_w + o.kappa_w_count);
  }
  r.population = o.population;
  r.iterations = o.iterations;
  r.init_kappa_h = o.init_kappa_h;
  r.init_kappa_w = o.init_kappa_w;
  if (o.weights_path) r.weights_path = o.weights_path;
  r.mutate = o.mutate != 0;
  if (o.grid && o.grid_count) {
    r.grid.assign(o.grid, o.grid + o.grid_count);
  }
  r.sweep_plane = o.sweep_plane;
  if (o.synth_out) r.synth_out = o.synth_out;
  return r;
}

template <typename Cmd>
sp_status run_command(const sp_run_options* options, char** report_out,
                      Cmd&& cmd) {
  if (!options) return invalid("null options");
  return guarded([&] {
    const std::string text = cmd(to_run_options(*options));
    if (report_out) *report_out = copy_string(text);
  });
}

}  // namespace

struct sp_cloud {
  PointCloud cloud;
};

struct sp_image {
  RasterImage image;
};

struct sp_rng {
  Rng rng;
};

struct sp_weights {
  PredictorWeights weights;
};

extern "C" {

const char* sp_version(void) { return kVersion; }

const char* sp_last_error(void) { return g_last_error.c_str(); }

void sp_string_free(char* text) { delete[] text; }

void sp_buffer_free(uint8_t* bytes) { delete[] bytes; }

sp_status sp_cloud_load_xyz(const char* path, sp_cloud** out) {
  if (!path || !out) return invalid("null argument");
  return guarded([&] { *out = new sp_cloud{load_xyz(path)}; });
}

sp_status sp_cloud_from_preset(const char* name, sp_cloud** out) {
  if (!name || !out) return invalid("null argument");
  return guarded([&] { *out = new sp_cloud{synth_room(preset_scene(name))}; });
}

sp_status sp_cloud_from_spec_json(const char* json_text, sp_cloud** out) {
  if (!json_text || !out) return invalid("null argument");
  return guarded([&] {
    *out = new sp_cloud{synth_room(parse_scene_spec(json_text, "spec"))};
  });
}

sp_status sp_cloud_write_xyz(const sp_cloud* cloud, const char* path) {
  if (!cloud || !path) return invalid("null argument");
  return guarded([&] { write_xyz(cloud->cloud, path); });
}

sp_status sp_cloud_normalize(sp_cloud* cloud) {
  if (!cloud) return invalid("null argument");
  return guarded([&] { cloud->cloud = normalize(cloud->cloud); });
}

size_t sp_cloud_point_count(const sp_cloud* cloud) {
  return cloud ? cloud->cloud.size() : 0;
}

int sp_cloud_class_count(const sp_cloud* cloud) {
  return cloud ? cloud->cloud.class_count : 0;
}

int sp_cloud_has_labels(const sp_cloud* cloud) {
  return cloud && cloud->cloud.has_labels() ? 1 : 0;
}

void sp_cloud_free(sp_cloud* cloud) { delete cloud; }

sp_status sp_default_planes(int count, sp_view_plane* planes) {
  if (!planes) return invalid("null argument");
  return guarded([&] {
    const std::vector<ViewPlane> defaults = default_planes(count);
    for (size_t i = 0; i < defaults.size(); ++i) {
      const ViewPlane& p = defaults[i];
      planes[i] = {p.id, axis_index(p.depth_axis), p.depth_sign,
                   axis_index(p.height_axis), axis_index(p.width_axis)};
    }
  });
}

sp_status sp_project_point(double x, double y, double z,
                           const sp_view_plane* plane, double kappa_h,
                           double kappa_w, int rows, int cols, sp_pixel* out) {
  if (!plane_ok(plane) || !out) return invalid("bad plane or null output");
  if (rows < 1 || cols < 1) return invalid("rows/cols must be >= 1");
  Point p;
  p.position = {x, y, z};
  const RayParams ray{kappa_h, kappa_w,
                      std::min({kappa_h, kappa_w, -5.0}),
                      std::max({kappa_h, kappa_w, 5.0})};
  const PixelCoord pc = project_point(p, to_plane(*plane), ray, rows, cols);
  *out = {pc.h, pc.w, pc.h_cont, pc.w_cont, pc.depth, pc.in_frame ? 1 : 0};
  return SP_OK;
}

int sp_classify_ray(double kappa_h, double kappa_w, char* name_buf,
                    size_t name_buf_size) {
  const RayParams ray{kappa_h, kappa_w, 0.0, 0.0};
  const RayDirection dir = classify_ray(ray);
  if (name_buf && name_buf_size > 0) {
    const std::string name = direction_name(dir);
    std::snprintf(name_buf, name_buf_size, "%s", name.c_str());
  }
  return (dir.h_pos ? 1 : 0) | (dir.h_neg ? 2 : 0) | (dir.w_pos ? 4 : 0) |
         (dir.w_neg ? 8 : 0);
}

sp_status sp_boundary_check(double x, double y, double z,
                            const sp_view_plane* plane, double kappa_h,
                            double kappa_w, int* inside) {
  if (!plane_ok(plane) || !inside) return invalid("bad plane or null output");
  Point p;
  p.position = {x, y, z};
  const RayParams ray{kappa_h, kappa_w, 0.0, 0.0};
  *inside = boundary_check(p, to_plane(*plane), ray) ? 1 : 0;
  return SP_OK;
}

sp_status sp_render(const sp_cloud* cloud, const sp_view_plane* plane,
                    double kappa_h, double kappa_w, int rows, int cols,
                    sp_color_mode mode, sp_image** out) {
  if (!cloud || !plane_ok(plane) || !out) return invalid("null argument");
  return guarded([&] {
    if (!cloud->cloud.normalized) {
      fail(ErrorCode::kInvalidArgument, "cloud must be normalized first");
    }
    const ViewPlane vp = to_plane(*plane);
    const std::vector<size_t> subset = partition_view(cloud->cloud, vp);
    const RayParams ray{kappa_h, kappa_w,
                        std::min({kappa_h, kappa_w, -5.0}),
                        std::max({kappa_h, kappa_w, 5.0})};
    *out = new sp_image{render_view(
        cloud->cloud, subset, vp, ray, rows, cols,
        mode == SP_COLOR_SEMANTIC ? ColorMode::kSemantic : ColorMode::kReal)};
  });
}

sp_status sp_image_size(const sp_image* img, int* rows, int* cols) {
  if (!img || !rows || !cols) return invalid("null argument");
  *rows = img->image.height;
  *cols = img->image.width;
  return SP_OK;
}

sp_status sp_image_pixel(const sp_image* img, int h, int w, double rgb[3],
                         double* depth) {
  if (!img || !rgb) return invalid("null argument");
  if (h < 0 || h >= img->image.height || w < 0 || w >= img->image.width) {
    return invalid("pixel index out of range");
  }
  const Rgb& px = img->image.at(h, w);
  rgb[0] = px.r;
  rgb[1] = px.g;
  rgb[2] = px.b;
  if (depth) *depth = img->image.depth_at(h, w);
  return SP_OK;
}

size_t sp_image_occupied(const sp_image* img) {
  return img ? img->image.occupied_count() : 0;
}

sp_status sp_image_u_space(const sp_image* img, double tau, double* out) {
  if (!img || !out) return invalid("null argument");
  return guarded([&] { *out = u_space(img->image, tau); });
}

sp_status sp_image_encode_ppm(const sp_image* img, uint8_t** bytes,
                              size_t* size) {
  if (!img || !bytes || !size) return invalid("null argument");
  return guarded([&] {
    const std::vector<uint8_t> encoded = encode_ppm(img->image);
    *bytes = new uint8_t[encoded.size()];
    std::memcpy(*bytes, encoded.data(), encoded.size());
    *size = encoded.size();
  });
}

sp_status sp_image_write_ppm(const sp_image* img, const char* path) {
  if (!img || !path) return invalid("null argument");
  return guarded([&] { write_ppm(img->image, path); });
}

void sp_image_free(sp_image* img) { delete img; }

sp_status sp_gauss_reg(double kappa_h, double kappa_w, double u, double* out) {
  if (!out) return invalid("null argument");
  return guarded([&] { *out = gauss_reg(kappa_h, kappa_w, u); });
}

sp_status sp_grad_gauss_reg(double kappa_h, double kappa_w, double u,
                            double* d_kappa_h, double* d_kappa_w) {
  if (!d_kappa_h || !d_kappa_w) return invalid("null argument");
  return guarded([&] {
    const auto [dh, dw] = grad_gauss_reg(kappa_h, kappa_w, u);
    *d_kappa_h = dh;
    *d_kappa_w = dw;
  });
}

sp_status sp_cross_entropy(const double* logits, const double* onehot,
                           size_t n, size_t classes, double* out) {
  if (!logits || !onehot || !out) return invalid("null argument");
  return guarded([&] {
    std::vector<std::vector<double>> lg(n), lb(n);
    for (size_t i = 0; i < n; ++i) {
      lg[i].assign(logits + i * classes, logits + (i + 1) * classes);
      lb[i].assign(onehot + i * classes, onehot + (i + 1) * classes);
    }
    *out = cross_entropy(lg, lb);
  });
}

double sp_total_loss(double cross_entropy_value, double sparks,
                     double lambda) {
  return cross_entropy_value + lambda * sparks;
}

sp_status sp_rng_new(uint64_t seed, sp_rng** out) {
  if (!out) return invalid("null argument");
  *out = new sp_rng{Rng(seed)};
  return SP_OK;
}

double sp_rng_gaussian(sp_rng* rng) {
  return rng ? rng->rng.next_gaussian() : 0.0;
}

void sp_rng_free(sp_rng* rng) { delete rng; }

sp_status sp_mutate(double kappa, double kappa_min, double kappa_max,
                    sp_rng* rng, double* out) {
  if (!rng || !out) return invalid("null argument");
  if (kappa_min >= kappa_max) return invalid("kappa_min must be < kappa_max");
  const MutationConfig config{kappa_min, kappa_max, 0};
  *out = mutate(kappa, config, rng->rng);
  return SP_OK;
}

sp_status sp_optimize_plane(const sp_cloud* cloud, const sp_view_plane* plane,
                            int rows, int cols, double tau, double kappa_min,
                            double kappa_max, uint64_t seed, int population,
                            int iterations, double init_kappa_h,
                            double init_kappa_w, sp_search_result* out) {
  if (!cloud || !plane_ok(plane) || !out) return invalid("null argument");
  return guarded([&] {
    if (!cloud->cloud.normalized) {
      fail(ErrorCode::kInvalidArgument, "cloud must be normalized first");
    }
    const ViewPlane vp = to_plane(*plane);
    const std::vector<size_t> subset = partition_view(cloud->cloud, vp);
    const MutationConfig config{kappa_min, kappa_max, seed};
    const RayParams init{init_kappa_h, init_kappa_w, kappa_min, kappa_max};
    const SearchResult result =
        optimize_plane(cloud->cloud, subset, vp, rows, cols, tau, config,
                       population, iterations, init);
    out->kappa_h = result.best.kappa_h;
    out->kappa_w = result.best.kappa_w;
    out->u_space = result.best_score;
    out->iterations = static_cast<int>(result.trace.iterations.size());
  });
}

sp_status sp_weights_load(const char* path, sp_weights** out) {
  if (!path || !out) return invalid("null argument");
  return guarded([&] { *out = new sp_weights{load_weights(path)}; });
}

sp_status sp_weights_zero(sp_weights** out) {
  if (!out) return invalid("null argument");
  *out = new sp_weights{PredictorWeights::zeros()};
  return SP_OK;
}

sp_status sp_weights_save(const sp_weights* weights, const char* path) {
  if (!weights || !path) return invalid("null argument");
  return guarded([&] { save_weights(weights->weights, path); });
}

void sp_weights_free(sp_weights* weights) { delete weights; }

sp_status sp_predict_kappa(const sp_cloud* cloud, const sp_view_plane* plane,
                           const sp_weights* weights, size_t centers,
                           double radius, double omega, double kappa_min,
                           double kappa_max, int mutate_flag, uint64_t seed,
                           double* kappa_h, double* kappa_w) {
  if (!cloud || !plane_ok(plane) || !weights || !kappa_h || !kappa_w) {
    return invalid("null argument");
  }
  return guarded([&] {
    if (!cloud->cloud.normalized) {
      fail(ErrorCode::kInvalidArgument, "cloud must be normalized first");
    }
    PredictConfig config;
    config.centers = centers;
    config.radius = radius;
    config.omega = omega;
    config.kappa_min = kappa_min;
    config.kappa_max = kappa_max;
    config.mutate = mutate_flag != 0;
    config.seed = seed;
    const RayParams ray =
        predict_kappa(cloud->cloud, to_plane(*plane), weights->weights, config);
    *kappa_h = ray.kappa_h;
    *kappa_w = ray.kappa_w;
  });
}

void sp_run_options_init(sp_run_options* options) {
  if (!options) return;
  std::memset(options, 0, sizeof(*options));
  options->out_dir = ".";
  options->height = 224;
  options->width = 224;
  options->tau = 0.8;
  options->lambda = 0.2;
  options->omega = 0.8;
  options->centers = 32;
  options->ball_radius = 0.2;
  options->kappa_min = -5.0;
  options->kappa_max = 5.0;
  options->plane_count = 4;
  options->mode = "auto";
  options->population = 16;
  options->iterations = 30;
  options->sweep_plane = 1;
  options->synth_out = "scene.xyz";
}

sp_status sp_cmd_project(const sp_run_options* options, char** report_out) {
  return run_command(options, report_out,
                     [](const RunOptions& o) { return cmd_project(o); });
}

sp_status sp_cmd_optimize(const sp_run_options* options, char** report_out) {
  return run_command(options, report_out,
                     [](const RunOptions& o) { return cmd_optimize(o); });
}

sp_status sp_cmd_predict(const sp_run_options* options, char** report_out) {
  return run_command(options, report_out,
                     [](const RunOptions& o) { return cmd_predict(o); });
}

sp_status sp_cmd_sweep(const sp_run_options* options, char** csv_out) {
  return run_command(options, csv_out,
                     [](const RunOptions& o) { return cmd_sweep(o); });
}

sp_status sp_cmd_synth(const sp_run_options* options) {
  if (!options) return invalid("null options");
  return guarded([&] { cmd_synth(to_run_options(*options)); });
}

}  // extern "C"
