#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/objective.hpp"

namespace sparkproj {

// FNV-1a over raw bytes, hex-encoded; used as the content digest of inputs.
uint64_t fnv1a64(const void* data, size_t size);
std::string digest_hex(const std::string& bytes);
std::string digest_file(const std::string& path);

// %.6g with C-locale semantics; the fixed float formatting that keeps
// reports byte-identical across runs.
std::string format_number(double value);

struct ReportSettings {
  double ball_radius = 0.2;
  double bounds_min = -5.0;
  double bounds_max = 5.0;
  uint64_t centers = 32;
  int height = 224;
  double lambda = 0.2;
  double omega = 0.8;
  int plane_count = 4;
  uint64_t seed = 0;
  double tau = 0.8;
  int width = 224;
  // present only for the commands that use them
  bool has_search = false;
  int pop = 0;
  int iters = 0;
  bool has_predict = false;
  bool mutate = false;
  std::string weights_digest;
};

struct PlaneReport {
  UtilizationReport utilization;
  std::vector<double> iter_best;  // per-iteration best score (optimize only)
  bool has_trace = false;
};

struct RunReport {
  std::string version;
  std::string input_digest;
  ReportSettings settings;
  std::vector<PlaneReport> planes;
  double l_sparks = 0.0;
};

// Canonical JSON: keys sorted at every level, numbers via format_number,
// no locale dependence. Identical runs serialize to identical bytes.
std::string serialize_report(const RunReport& report);

}  // namespace sparkproj
