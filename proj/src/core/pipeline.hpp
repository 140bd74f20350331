#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace sparkproj {

inline constexpr const char* kVersion = "0.1.0";

enum class OutputMode { kAuto, kReal, kSemantic, kBoth };

// Shared option block for the pipeline commands. Field defaults are the
// library defaults; the CLI maps its flags 1:1 onto this.
struct RunOptions {
  // input: exactly one of these
  std::string input_path;
  std::string preset;
  std::string scene_spec_path;

  std::string out_dir = ".";
  std::string scene_name;  // output stem; derived from the input if empty

  int height = 224;
  int width = 224;
  double tau = 0.8;
  double lambda = 0.2;
  double omega = 0.8;
  uint64_t centers = 32;  // FPS S
  double ball_radius = 0.2;
  double kappa_min = -5.0;
  double kappa_max = 5.0;
  uint64_t seed = 0;
  int plane_count = 4;
  std::string plane_list;  // e.g. "+X,-X,+Y,-Y"; overrides plane_count
  int threads = 0;         // 0 = parallel over planes; 1 = sequential
  OutputMode mode = OutputMode::kAuto;

  // project
  std::vector<double> kappa_h = {0.0};  // one global value or one per plane
  std::vector<double> kappa_w = {0.0};

  // optimize
  int population = 16;
  int iterations = 30;
  double init_kappa_h = 0.0;
  double init_kappa_w = 0.0;

  // predict
  std::string weights_path;
  bool mutate = false;

  // sweep
  std::vector<double> grid;
  int sweep_plane = 1;

  // synth
  std::string synth_out = "scene.xyz";
};

// Each cmd_* writes its outputs under out_dir and returns the text artifact
// (canonical report JSON, or CSV for sweep). Errors are thrown as Error.
std::string cmd_project(const RunOptions& options);
std::string cmd_optimize(const RunOptions& options);
std::string cmd_predict(const RunOptions& options);
std::string cmd_sweep(const RunOptions& options);
void cmd_synth(const RunOptions& options);

}  // namespace sparkproj
