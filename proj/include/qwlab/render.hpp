#pragma once

// Batch jobs behind the command-line front end. Each returns the complete
// output document (CSV or JSON) including its reproducibility header, so
// identical configurations give byte-identical output.
//
// JSON documents start with a "meta" object {tool, version, command, seed,
// tolerances}; CSV documents start with '#' comment rows carrying the same
// fields. CSV numbers use 17 significant digits.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qwlab/optimality.hpp"
#include "qwlab/verify.hpp"
#include "qwlab/witness.hpp"

namespace qwlab {

enum class OutputFormat { Csv, Json };

struct RunConfig {
  std::string command_line;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> tolerances;  // echoed in order
  OutputFormat format = OutputFormat::Json;

  void set_tolerance(const std::string& name, double value);
};

/// Formats with 17 significant digits ("%.17g").
std::string format_double(double v);

std::string render_classify(const RunConfig& cfg, const WitnessParams& p, double tol);

struct SpanJob {
  double b = 0.0;
  double c = 0.0;
  double ellipse_tol = 1e-4;
  SpanOptions options;
  bool include_vectors = false;
};

/// Snaps (b, c) to the ellipse point with a = 2 - b - c on the matching
/// branch. Throws NotOnEllipse when the residual exceeds ellipse_tol.
WitnessParams snap_to_ellipse(double b, double c, double ellipse_tol);

std::string render_span(const RunConfig& cfg, const SpanJob& job);

/// 2N sampled rows (a uniform on [0, 4/3], both branches) plus five tagged
/// special-point rows.
std::string render_ellipse(const RunConfig& cfg, int samples);

/// N x N grid over (b, c) in [0, 2]^2 with a = max(0, 2 - b - c).
std::string render_scan(const RunConfig& cfg, int grid, double tol);

std::string render_minimize(const RunConfig& cfg, const WitnessParams& p,
                            const SeesawOptions& opts);

std::string render_verify(const RunConfig& cfg, const VerifyReport& report);

}  // namespace qwlab
