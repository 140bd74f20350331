#include "core/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace sparkproj {

uint64_t fnv1a64(const void* data, size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string digest_hex(const std::string& bytes) {
  const uint64_t hash = fnv1a64(bytes.data(), bytes.size());
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

std::string digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::kIo, "cannot open " + path);
  }
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return digest_hex(bytes.str());
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

std::string serialize_report(const RunReport& report) {
  std::ostringstream out;
  const ReportSettings& s = report.settings;

  out << "{\n";
  out << "  \"input_digest\": \"" << report.input_digest << "\",\n";
  out << "  \"l_sparks\": " << format_number(report.l_sparks) << ",\n";
  out << "  \"planes\": [\n";
  for (size_t i = 0; i < report.planes.size(); ++i) {
    const PlaneReport& plane = report.planes[i];
    const UtilizationReport& u = plane.utilization;
    out << "    {";
    out << "\"empty_subset\": " << (u.empty_subset ? "true" : "false") << ", ";
    out << "\"id\": " << u.plane_id << ", ";
    if (plane.has_trace) {
      out << "\"iter_best\": [";
      for (size_t k = 0; k < plane.iter_best.size(); ++k) {
        out << (k ? ", " : "") << format_number(plane.iter_best[k]);
      }
      out << "], ";
    }
    out << "\"kappa_h\": " << format_number(u.kappa.kappa_h) << ", ";
    out << "\"kappa_w\": " << format_number(u.kappa.kappa_w) << ", ";
    out << "\"reg_value\": " << format_number(u.reg_value) << ", ";
    out << "\"semantic_fraction\": " << format_number(u.semantic_fraction)
        << ", ";
    out << "\"u_space\": " << format_number(u.u_space);
    out << "}" << (i + 1 < report.planes.size() ? "," : "") << "\n";
  }
  out << "  ],\n";
  out << "  \"settings\": {\n";
  out << "    \"ball_radius\": " << format_number(s.ball_radius) << ",\n";
  out << "    \"bounds\": [" << format_number(s.bounds_min) << ", "
      << format_number(s.bounds_max) << "],\n";
  out << "    \"centers\": " << s.centers << ",\n";
  out << "    \"height\": " << s.height << ",\n";
  if (s.has_search) {
    out << "    \"iters\": " << s.iters << ",\n";
  }
  out << "    \"lambda\": " << format_number(s.lambda) << ",\n";
  if (s.has_predict) {
    out << "    \"mutate\": " << (s.mutate ? "true" : "false") << ",\n";
  }
  out << "    \"omega\": " << format_number(s.omega) << ",\n";
  out << "    \"planes\": " << s.plane_count << ",\n";
  if (s.has_search) {
    out << "    \"pop\": " << s.pop << ",\n";
  }
  out << "    \"seed\": " << s.seed << ",\n";
  out << "    \"tau\": " << format_number(s.tau) << ",\n";
  if (s.has_predict) {
    out << "    \"weights_digest\": \"" << s.weights_digest << "\",\n";
  }
  out << "    \"width\": " << s.width << "\n";
  out << "  },\n";
  out << "  \"version\": \"" << report.version << "\"\n";
  out << "}\n";
  return out.str();
}

}  // namespace sparkproj
