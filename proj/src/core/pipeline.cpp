#include "core/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>

#include "core/cloud.hpp"
#include "core/error.hpp"
#include "core/fireworks.hpp"
#include "core/objective.hpp"
#include "core/predictor.hpp"
#include "core/projection.hpp"
#include "core/raster.hpp"
#include "core/report.hpp"
#include "core/rng.hpp"
#include "core/scenes.hpp"

namespace sparkproj {

namespace {

namespace fs = std::filesystem;

struct ResolvedInput {
  PointCloud cloud;  // normalized
  std::string scene_name;
  std::string digest;
};

ResolvedInput resolve_input(const RunOptions& options) {
  const int sources = (options.input_path.empty() ? 0 : 1) +
                      (options.preset.empty() ? 0 : 1) +
                      (options.scene_spec_path.empty() ? 0 : 1);
  if (sources != 1) {
    fail(ErrorCode::kInvalidArgument,
         "exactly one of --input, --preset, --spec is required");
  }
  ResolvedInput out;
  if (!options.input_path.empty()) {
    out.cloud = normalize(load_xyz(options.input_path));
    out.digest = digest_file(options.input_path);
    out.scene_name = fs::path(options.input_path).stem().string();
  } else {
    const SceneSpec spec = options.preset.empty()
                               ? load_scene_spec(options.scene_spec_path)
                               : preset_scene(options.preset);
    const PointCloud raw = synth_room(spec);
    out.digest = digest_hex(serialize_xyz(raw));
    out.cloud = normalize(raw);
    out.scene_name = options.preset.empty()
                         ? fs::path(options.scene_spec_path).stem().string()
                         : options.preset;
  }
  if (!options.scene_name.empty()) out.scene_name = options.scene_name;
  return out;
}

std::vector<ViewPlane> resolve_planes(const RunOptions& options) {
  if (!options.plane_list.empty()) return parse_plane_list(options.plane_list);
  return default_planes(options.plane_count);
}

// real render, semantic render (optional), mode resolution
struct RenderPair {
  RasterImage real;
  RasterImage semantic;
  bool has_real = false;
  bool has_semantic = false;
};

RenderPair render_modes(const PointCloud& cloud,
                        const std::vector<size_t>& subset,
                        const ViewPlane& plane, const RayParams& ray,
                        const RunOptions& options) {
  OutputMode mode = options.mode;
  if (mode == OutputMode::kAuto) {
    mode = cloud.has_labels() ? OutputMode::kBoth : OutputMode::kReal;
  }
  RenderPair out;
  if (mode == OutputMode::kReal || mode == OutputMode::kBoth) {
    out.real = render_view(cloud, subset, plane, ray, options.height,
                           options.width, ColorMode::kReal);
    out.has_real = true;
  }
  if (mode == OutputMode::kSemantic || mode == OutputMode::kBoth) {
    out.semantic = render_view(cloud, subset, plane, ray, options.height,
                               options.width, ColorMode::kSemantic);
    out.has_semantic = true;
  }
  return out;
}

// Occupied-pixel fraction, identical to the non-black fraction of the
// semantic render (the palette never produces black).
UtilizationReport score_plane(const ViewPlane& plane, const RayParams& ray,
                              const RasterImage& img, bool empty_subset,
                              double tau) {
  UtilizationReport report;
  report.plane_id = plane.id;
  report.tau = tau;
  report.kappa = ray;
  report.empty_subset = empty_subset;
  const double cells = static_cast<double>(img.occupied_count());
  report.semantic_fraction =
      cells / (static_cast<double>(img.height) * img.width);
  report.u_space = u_space_from_fraction(report.semantic_fraction, tau);
  if (report.u_space > 0.0) {
    report.reg_peak = gauss_reg(0.0, 0.0, report.u_space);
    report.reg_value =
        gauss_reg(ray.kappa_h, ray.kappa_w, report.u_space);
  }
  return report;
}

void write_images(const RenderPair& renders, const RunOptions& options,
                  const std::string& scene_name, int plane_id) {
  const fs::path dir(options.out_dir);
  const std::string stem = scene_name + "_" + std::to_string(plane_id);
  if (renders.has_real) {
    write_ppm(renders.real, (dir / (stem + "_real.ppm")).string());
  }
  if (renders.has_semantic) {
    write_ppm(renders.semantic, (dir / (stem + "_semantic.ppm")).string());
  }
}

const RasterImage& scoring_image(const RenderPair& renders) {
  return renders.has_semantic ? renders.semantic : renders.real;
}

ReportSettings settings_echo(const RunOptions& options, int plane_count) {
  ReportSettings s;
  s.ball_radius = options.ball_radius;
  s.bounds_min = options.kappa_min;
  s.bounds_max = options.kappa_max;
  s.centers = options.centers;
  s.height = options.height;
  s.lambda = options.lambda;
  s.omega = options.omega;
  s.plane_count = plane_count;
  s.seed = options.seed;
  s.tau = options.tau;
  s.width = options.width;
  return s;
}

void ensure_out_dir(const RunOptions& options) {
  std::error_code ec;
  fs::create_directories(options.out_dir, ec);
  if (ec && !fs::is_directory(options.out_dir)) {
    fail(ErrorCode::kIo, "cannot create output directory " + options.out_dir);
  }
}

std::string finalize_report(RunReport& report, const RunOptions& options) {
  std::vector<UtilizationReport> utils;
  for (const PlaneReport& p : report.planes) utils.push_back(p.utilization);
  report.l_sparks = l_sparks(utils);
  report.version = kVersion;
  const std::string text = serialize_report(report);
  const fs::path path = fs::path(options.out_dir) / "report.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    fail(ErrorCode::kIo, "cannot write " + path.string());
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  return text;
}

RayParams plane_ray(const RunOptions& options, size_t plane_slot,
                    size_t plane_total) {
  auto pick = [&](const std::vector<double>& values, const char* name) {
    if (values.size() == 1) return values[0];
    if (values.size() == plane_total) return values[plane_slot];
    fail(ErrorCode::kInvalidArgument,
         std::string(name) + " needs 1 value or one per plane");
  };
  RayParams ray;
  ray.kappa_h = pick(options.kappa_h, "--kh");
  ray.kappa_w = pick(options.kappa_w, "--kw");
  ray.kappa_min = std::min(options.kappa_min, std::min(ray.kappa_h, ray.kappa_w));
  ray.kappa_max = std::max(options.kappa_max, std::max(ray.kappa_h, ray.kappa_w));
  return ray;
}

// Runs fn(slot) for every plane slot, sequentially when threads == 1.
// Results are committed by slot, so scheduling cannot change outputs.
template <typename Fn>
void for_each_plane(size_t count, int threads, Fn&& fn) {
  if (threads == 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> tasks;
  tasks.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    tasks.push_back(std::async(std::launch::async, [&fn, i] { fn(i); }));
  }
  for (std::future<void>& task : tasks) task.get();
}

}  // namespace

std::string cmd_project(const RunOptions& options) {
  ensure_out_dir(options);
  const ResolvedInput input = resolve_input(options);
  const std::vector<ViewPlane> planes = resolve_planes(options);

  RunReport report;
  report.input_digest = input.digest;
  report.settings = settings_echo(options, static_cast<int>(planes.size()));
  report.planes.resize(planes.size());

  for_each_plane(planes.size(), options.threads, [&](size_t slot) {
    const ViewPlane& plane = planes[slot];
    const RayParams ray = plane_ray(options, slot, planes.size());
    const std::vector<size_t> subset = partition_view(input.cloud, plane);
    const RenderPair renders =
        render_modes(input.cloud, subset, plane, ray, options);
    write_images(renders, options, input.scene_name, plane.id);
    report.planes[slot].utilization = score_plane(
        plane, ray, scoring_image(renders), subset.empty(), options.tau);
  });

  return finalize_report(report, options);
}

std::string cmd_optimize(const RunOptions& options) {
  ensure_out_dir(options);
  if (options.population < 1 || options.iterations < 0) {
    fail(ErrorCode::kInvalidArgument,
         "optimize: need --pop >= 1 and --iters >= 0");
  }
  const ResolvedInput input = resolve_input(options);
  const std::vector<ViewPlane> planes = resolve_planes(options);

  RunReport report;
  report.input_digest = input.digest;
  report.settings = settings_echo(options, static_cast<int>(planes.size()));
  report.settings.has_search = true;
  report.settings.pop = options.population;
  report.settings.iters = options.iterations;
  report.planes.resize(planes.size());

  for_each_plane(planes.size(), options.threads, [&](size_t slot) {
    const ViewPlane& plane = planes[slot];
    const std::vector<size_t> subset = partition_view(input.cloud, plane);

    MutationConfig config;
    config.kappa_min = options.kappa_min;
    config.kappa_max = options.kappa_max;
    config.seed = Rng::derive(options.seed, static_cast<uint64_t>(plane.id));

    RayParams init{options.init_kappa_h, options.init_kappa_w,
                   options.kappa_min, options.kappa_max};
    const SearchResult search =
        optimize_plane(input.cloud, subset, plane, options.height,
                       options.width, options.tau, config, options.population,
                       options.iterations, init);

    const RenderPair renders =
        render_modes(input.cloud, subset, plane, search.best, options);
    write_images(renders, options, input.scene_name, plane.id);

    PlaneReport& out = report.planes[slot];
    out.utilization = score_plane(plane, search.best, scoring_image(renders),
                                  search.trace.empty_subset, options.tau);
    out.has_trace = true;
    for (const SearchIteration& it : search.trace.iterations) {
      out.iter_best.push_back(it.best_so_far.score);
    }
  });

  return finalize_report(report, options);
}

std::string cmd_predict(const RunOptions& options) {
  ensure_out_dir(options);
  if (options.weights_path.empty()) {
    fail(ErrorCode::kInvalidArgument, "predict: --weights is required");
  }
  const PredictorWeights weights = load_weights(options.weights_path);
  const std::string weights_digest = digest_file(options.weights_path);
  const ResolvedInput input = resolve_input(options);
  const std::vector<ViewPlane> planes = resolve_planes(options);

  RunReport report;
  report.input_digest = input.digest;
  report.settings = settings_echo(options, static_cast<int>(planes.size()));
  report.settings.has_predict = true;
  report.settings.mutate = options.mutate;
  report.settings.weights_digest = weights_digest;
  report.planes.resize(planes.size());

  for_each_plane(planes.size(), options.threads, [&](size_t slot) {
    const ViewPlane& plane = planes[slot];
    PredictConfig config;
    config.centers = options.centers;
    config.radius = options.ball_radius;
    config.omega = options.omega;
    config.kappa_min = options.kappa_min;
    config.kappa_max = options.kappa_max;
    config.mutate = options.mutate;
    config.seed = options.seed;

    const RayParams ray = predict_kappa(input.cloud, plane, weights, config);
    const std::vector<size_t> subset = partition_view(input.cloud, plane);
    const RenderPair renders =
        render_modes(input.cloud, subset, plane, ray, options);
    write_images(renders, options, input.scene_name, plane.id);
    report.planes[slot].utilization = score_plane(
        plane, ray, scoring_image(renders), subset.empty(), options.tau);
  });

  return finalize_report(report, options);
}

std::string cmd_sweep(const RunOptions& options) {
  ensure_out_dir(options);
  if (options.grid.empty()) {
    fail(ErrorCode::kInvalidArgument, "sweep: --grid is required");
  }
  const ResolvedInput input = resolve_input(options);
  const std::vector<ViewPlane> planes = resolve_planes(options);
  if (options.sweep_plane < 1 ||
      options.sweep_plane > static_cast<int>(planes.size())) {
    fail(ErrorCode::kInvalidArgument, "sweep: --plane outside [1, M]");
  }
  const ViewPlane& plane = planes[static_cast<size_t>(options.sweep_plane - 1)];

  const std::vector<SweepRow> rows =
      sweep_grid(input.cloud, plane, options.grid, options.height,
                 options.width, options.tau);
  const std::string csv = sweep_to_csv(rows);

  const fs::path path = fs::path(options.out_dir) /
                        ("sweep_" + input.scene_name + "_" +
                         std::to_string(plane.id) + ".csv");
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    fail(ErrorCode::kIo, "cannot write " + path.string());
  }
  out.write(csv.data(), static_cast<std::streamsize>(csv.size()));
  return csv;
}

void cmd_synth(const RunOptions& options) {
  if (!options.input_path.empty() ||
      (options.preset.empty() == options.scene_spec_path.empty())) {
    fail(ErrorCode::kInvalidArgument,
         "synth: exactly one of --preset or --spec is required");
  }
  const SceneSpec spec = options.preset.empty()
                             ? load_scene_spec(options.scene_spec_path)
                             : preset_scene(options.preset);
  const PointCloud cloud = synth_room(spec);
  write_xyz(cloud, options.synth_out);
}

}  // namespace sparkproj
