// sparkproj CLI: thin flag layer over the shared-library C API.
//
// Exit codes: 0 success, 2 usage/input error, 3 data/contract error.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sparkproj.h"

namespace {

int status_to_exit(sp_status status) {
  switch (status) {
    case SP_OK:
      return 0;
    case SP_ERR_IO:
    case SP_ERR_PARSE:
      return 2;
    default:
      return 3;
  }
}

int report_failure(const char* command, sp_status status) {
  std::fprintf(stderr, "sparkproj %s: %s\n", command, sp_last_error());
  return status_to_exit(status);
}

// parses "min:max:count" into `count` evenly spaced values
bool parse_grid(const std::string& text, std::vector<double>& out) {
  double lo = 0.0, hi = 0.0;
  int count = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 ||
      count < 1 || (count > 1 && hi <= lo)) {
    return false;
  }
  out.clear();
  for (int i = 0; i < count; ++i) {
    out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  }
  return true;
}

struct CommonFlags {
  std::string input, preset, spec, out_dir = ".", scene_name, plane_list;
  std::string mode = "auto";
  int height = 224, width = 224, planes = 4, threads = 0;
  double tau = 0.8, lambda = 0.2, omega = 0.8, radius = 0.2;
  double kmin = -5.0, kmax = 5.0;
  uint64_t centers = 32, seed = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  auto* input = cmd->add_option("--input", f.input, "xyz-ascii point cloud");
  auto* preset = cmd->add_option("--preset", f.preset, "built-in scene preset");
  auto* spec = cmd->add_option("--spec", f.spec, "scene spec JSON");
  input->excludes(preset)->excludes(spec);
  preset->excludes(spec);
  cmd->add_option("--out", f.out_dir, "output directory")
      ->capture_default_str();
  cmd->add_option("--scene-name", f.scene_name, "override output file stem");
  cmd->add_option("--height", f.height, "image rows")->capture_default_str();
  cmd->add_option("--width", f.width, "image columns")->capture_default_str();
  cmd->add_option("--planes", f.planes, "number of view planes (1-6)")
      ->capture_default_str();
  cmd->add_option("--plane-list", f.plane_list,
                  "explicit planes, e.g. +X,-X,+Y,-Y");
  cmd->add_option("--tau", f.tau, "space-utilization exponent")
      ->capture_default_str();
  cmd->add_option("--lambda", f.lambda, "regularization weight")
      ->capture_default_str();
  cmd->add_option("--omega", f.omega, "attention blend weight")
      ->capture_default_str();
  cmd->add_option("--centers", f.centers, "FPS center count")
      ->capture_default_str();
  cmd->add_option("--radius", f.radius, "ball-query radius")
      ->capture_default_str();
  cmd->add_option("--kmin", f.kmin, "curvature lower bound")
      ->capture_default_str();
  cmd->add_option("--kmax", f.kmax, "curvature upper bound")
      ->capture_default_str();
  cmd->add_option("--threads", f.threads,
                  "plane parallelism (1 = sequential, 0 = parallel)")
      ->capture_default_str();
  cmd->add_option("--mode", f.mode, "images to write: auto|real|semantic|both")
      ->capture_default_str();
}

void fill_options(const CommonFlags& f, sp_run_options& o) {
  sp_run_options_init(&o);
  if (!f.input.empty()) o.input_path = f.input.c_str();
  if (!f.preset.empty()) o.preset = f.preset.c_str();
  if (!f.spec.empty()) o.scene_spec_path = f.spec.c_str();
  o.out_dir = f.out_dir.c_str();
  if (!f.scene_name.empty()) o.scene_name = f.scene_name.c_str();
  if (!f.plane_list.empty()) o.plane_list = f.plane_list.c_str();
  o.mode = f.mode.c_str();
  o.height = f.height;
  o.width = f.width;
  o.plane_count = f.planes;
  o.threads = f.threads;
  o.tau = f.tau;
  o.lambda = f.lambda;
  o.omega = f.omega;
  o.ball_radius = f.radius;
  o.centers = f.centers;
  o.kappa_min = f.kmin;
  o.kappa_max = f.kmax;
  o.seed = f.seed;
}

void print_report_line(const char* command, const char* out_dir) {
  std::printf("%s: wrote report.json and images under %s\n", command, out_dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"point-cloud projection through curved rays", "sparkproj"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sp_version());

  CommonFlags common;

  // project
  auto* project = app.add_subcommand(
      "project", "render each view plane under fixed ray curvatures");
  add_common(project, common);
  std::vector<double> kh = {0.0}, kw = {0.0};
  project->add_option("--kh", kh,
                      "height curvature (one value or one per plane)")
      ->delimiter(',');
  project->add_option("--kw", kw,
                      "width curvature (one value or one per plane)")
      ->delimiter(',');
  project->add_option("--seed", common.seed, "report echo seed");

  // optimize
  auto* optimize = app.add_subcommand(
      "optimize", "search ray curvatures maximizing 2D space utilization");
  add_common(optimize, common);
  int pop = 16, iters = 30;
  double init_kh = 0.0, init_kw = 0.0;
  optimize->add_option("--pop", pop, "candidates per iteration")
      ->capture_default_str();
  optimize->add_option("--iters", iters, "search iterations")
      ->capture_default_str();
  optimize->add_option("--init-kh", init_kh, "initial height curvature");
  optimize->add_option("--init-kw", init_kw, "initial width curvature");
  optimize->add_option("--seed", common.seed, "search seed")->required();

  // predict
  auto* predict = app.add_subcommand(
      "predict", "predict ray curvatures with the attention forward pass");
  add_common(predict, common);
  std::string weights_path;
  bool mutate = false;
  predict->add_option("--weights", weights_path, "predictor weight JSON")
      ->required();
  predict->add_flag("--mutate", mutate, "apply the mutation step");
  predict->add_option("--seed", common.seed, "mutation seed");

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "score a curvature grid on one plane and emit CSV");
  add_common(sweep, common);
  std::string grid_text;
  int sweep_plane = 1;
  sweep->add_option("--grid", grid_text, "grid as min:max:count")->required();
  sweep->add_option("--plane", sweep_plane, "plane id to sweep")
      ->capture_default_str();
  sweep->add_option("--seed", common.seed, "report echo seed");

  // synth
  auto* synth = app.add_subcommand(
      "synth", "write a synthetic scene as an xyz-ascii file");
  std::string synth_preset, synth_spec, synth_out = "scene.xyz";
  auto* sp_opt = synth->add_option("--preset", synth_preset, "scene preset");
  auto* ss_opt = synth->add_option("--spec", synth_spec, "scene spec JSON");
  sp_opt->excludes(ss_opt);
  synth->add_option("--out", synth_out, "output xyz path")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  sp_run_options options;
  char* text = nullptr;
  sp_status status = SP_OK;

  const bool has_input =
      !common.input.empty() || !common.preset.empty() || !common.spec.empty();
  if ((project->parsed() || optimize->parsed() || predict->parsed() ||
       sweep->parsed()) &&
      !has_input) {
    std::fprintf(stderr,
                 "sparkproj: one of --input, --preset, --spec is required\n");
    return 2;
  }

  if (project->parsed()) {
    fill_options(common, options);
    options.kappa_h = kh.data();
    options.kappa_h_count = kh.size();
    options.kappa_w = kw.data();
    options.kappa_w_count = kw.size();
    status = sp_cmd_project(&options, &text);
    if (status != SP_OK) return report_failure("project", status);
    print_report_line("project", options.out_dir);
  } else if (optimize->parsed()) {
    fill_options(common, options);
    options.population = pop;
    options.iterations = iters;
    options.init_kappa_h = init_kh;
    options.init_kappa_w = init_kw;
    status = sp_cmd_optimize(&options, &text);
    if (status != SP_OK) return report_failure("optimize", status);
    print_report_line("optimize", options.out_dir);
  } else if (predict->parsed()) {
    fill_options(common, options);
    options.weights_path = weights_path.c_str();
    options.mutate = mutate ? 1 : 0;
    status = sp_cmd_predict(&options, &text);
    if (status != SP_OK) return report_failure("predict", status);
    print_report_line("predict", options.out_dir);
  } else if (sweep->parsed()) {
    std::vector<double> grid;
    if (!parse_grid(grid_text, grid)) {
      std::fprintf(stderr, "sparkproj sweep: bad --grid \"%s\"\n",
                   grid_text.c_str());
      return 2;
    }
    fill_options(common, options);
    options.grid = grid.data();
    options.grid_count = grid.size();
    options.sweep_plane = sweep_plane;
    status = sp_cmd_sweep(&options, &text);
    if (status != SP_OK) return report_failure("sweep", status);
    std::printf("sweep: wrote %zu-cell CSV under %s\n",
                grid.size() * grid.size(), options.out_dir);
  } else if (synth->parsed()) {
    sp_run_options_init(&options);
    if (!synth_preset.empty()) options.preset = synth_preset.c_str();
    if (!synth_spec.empty()) options.scene_spec_path = synth_spec.c_str();
    options.synth_out = synth_out.c_str();
    status = sp_cmd_synth(&options);
    if (status != SP_OK) return report_failure("synth", status);
    std::printf("synth: wrote %s\n", synth_out.c_str());
  }

  if (text) sp_string_free(text);
  return 0;
}
