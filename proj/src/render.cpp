#include "qwlab/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "qwlab/error.hpp"

namespace qwlab {

namespace {

using json = nlohmann::ordered_json;

json meta(const RunConfig& cfg) {
  json tol = json::object();
  for (const auto& [name, value] : cfg.tolerances) tol[name] = value;
  return {{"tool", "qwlab"},
          {"version", QWLAB_VERSION},
          {"command", cfg.command_line},
          {"seed", cfg.seed},
          {"tolerances", tol}};
}

std::string csv_header(const RunConfig& cfg) {
  std::ostringstream out;
  out << "# tool: qwlab " << QWLAB_VERSION << "\n";
  out << "# command: " << cfg.command_line << "\n";
  out << "# seed: " << cfg.seed << "\n";
  for (const auto& [name, value] : cfg.tolerances)
    out << "# tolerance " << name << ": " << format_double(value) << "\n";
  return out.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json vector_json(const CVec& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back({z.real(), z.imag()});
  return out;
}

json params_json(const WitnessParams& p) { return {{"a", p.a}, {"b", p.b}, {"c", p.c}}; }

const char* boolstr(bool b) { return b ? "true" : "false"; }

json bool_or_na(const std::optional<bool>& b) { return b ? json(*b) : json("na"); }

/// A table rendered either as CSV rows or as a JSON array of row objects.
class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<json> row) { rows_.push_back(std::move(row)); }

  std::string render(const RunConfig& cfg) const {
    if (cfg.format == OutputFormat::Json) {
      json rows = json::array();
      for (const auto& r : rows_) {
        json obj = json::object();
        for (std::size_t i = 0; i < columns_.size(); ++i) obj[columns_[i]] = r[i];
        rows.push_back(obj);
      }
      return dump({{"meta", meta(cfg)}, {"rows", rows}});
    }
    std::ostringstream out;
    out << csv_header(cfg);
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
    out << "\n";
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << cell(r[i]);
      out << "\n";
    }
    return out.str();
  }

 private:
  static std::string cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return boolstr(v.get<bool>());
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_number()) return v.dump();
    return v.get<std::string>();
  }

  std::vector<std::string> columns_;
  std::vector<std::vector<json>> rows_;
};

}  // namespace

void RunConfig::set_tolerance(const std::string& name, double value) {
  for (auto& [n, v] : tolerances)
    if (n == name) {
      v = value;
      return;
    }
  tolerances.emplace_back(name, value);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render_classify(const RunConfig& cfg, const WitnessParams& p, double tol) {
  const Classification c = classify(p, tol);
  json failed = json::array();
  for (Condition cond : c.failed_conditions) failed.push_back(std::string(to_string(cond)));
  json out = {{"meta", meta(cfg)},
              {"is_witness", c.is_witness},
              {"indecomposable", c.indecomposable ? json(*c.indecomposable) : json(nullptr)},
              {"on_ellipse", c.on_ellipse},
              {"is_psd", c.is_psd},
              {"failed_conditions", failed},
              {"params", params_json(p)}};
  return dump(out);
}

WitnessParams snap_to_ellipse(double b, double c, double ellipse_tol) {
  if (!std::isfinite(b) || !std::isfinite(c) || b < 0.0 || c < 0.0)
    throw Error(ErrorCode::InvalidArgument, "b and c must be finite and nonnegative");
  const double a = 2.0 - b - c;
  if (!on_ellipse(b, c, ellipse_tol) || a < -ellipse_tol || a > kEllipseMaxA + ellipse_tol) {
    std::ostringstream msg;
    msg << "(b,c) = (" << b << ", " << c << ") is off the ellipse: residual "
        << ellipse_residual(b, c) << " exceeds " << ellipse_tol;
    throw Error(ErrorCode::NotOnEllipse, msg.str());
  }
  return ellipse_from_a(std::clamp(a, 0.0, kEllipseMaxA), b <= c ? Branch::Lower : Branch::Upper);
}

std::string render_span(const RunConfig& cfg, const SpanJob& job) {
  const WitnessParams p = snap_to_ellipse(job.b, job.c, job.ellipse_tol);
  const SpanReport r = spanning_report(p, job.options);
  json out = {{"meta", meta(cfg)},
              {"input", {{"b", job.b}, {"c", job.c}}},
              {"params", params_json(r.params)},
              {"method", std::string(to_string(r.method))},
              {"gram_rank", r.gram_rank},
              {"spanning", r.spanning},
              {"degenerate", r.degenerate},
              {"vector_count", r.vectors.size()},
              {"notes", r.notes}};
  if (job.include_vectors) {
    json vs = json::array();
    for (const auto& v : r.vectors) vs.push_back(vector_json(v));
    out["vectors"] = vs;
  }
  return dump(out);
}

std::string render_ellipse(const RunConfig& cfg, int samples) {
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "--samples must be at least 2");
  SpanOptions opts;
  opts.seed = cfg.seed;

  Table table({"a", "branch", "b", "c", "indecomposable", "span_rank", "outer_arc", "tag"});
  auto add_point = [&](const WitnessParams& p, const std::string& branch, const std::string& tag,
                       bool spannable) {
    const Classification c = classify(p);
    json rank = spannable ? json(spanning_report(p, opts).gram_rank) : json(nullptr);
    table.add({p.a, branch, p.b, p.c, bool_or_na(c.indecomposable), rank, p.a <= 1.0, tag});
  };

  for (int i = 0; i < samples; ++i) {
    const double a = kEllipseMaxA * i / (samples - 1);
    for (Branch br : {Branch::Lower, Branch::Upper})
      add_point(ellipse_from_a(a, br), std::string(to_string(br)), "", true);
  }
  add_point(ellipse_from_a(1.0, Branch::Lower), "lower", "i", true);
  add_point(ellipse_from_a(1.0, Branch::Upper), "upper", "ii", true);
  add_point(ellipse_from_a(0.0, Branch::Lower), "lower", "iii", true);
  add_point(ellipse_from_a(kEllipseMaxA, Branch::Lower), "lower", "iv", true);
  add_point(WitnessParams{2.0, 0.0, 0.0}, "none", "v", false);
  return table.render(cfg);
}

std::string render_scan(const RunConfig& cfg, int grid, double tol) {
  if (grid < 2) throw Error(ErrorCode::InvalidArgument, "--grid must be at least 2");
  Table table({"b", "c", "a", "is_witness", "indecomposable", "is_psd"});
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const double b = 2.0 * i / (grid - 1);
      const double c = 2.0 * j / (grid - 1);
      const WitnessParams p{std::max(0.0, 2.0 - b - c), b, c};
      const Classification cl = classify(p, tol);
      table.add({b, c, p.a, cl.is_witness, bool_or_na(cl.indecomposable), cl.is_psd});
    }
  return table.render(cfg);
}

std::string render_minimize(const RunConfig& cfg, const WitnessParams& p, const SeesawOptions& opts) {
  const SeesawResult r = seesaw_minimize(build_witness(p), opts);
  json out = {{"meta", meta(cfg)},
              {"params", params_json(p)},
              {"n_starts", opts.n_starts},
              {"max_iters", opts.max_iters},
              {"min_value", r.min_value},
              {"x", vector_json(r.argmin.x)},
              {"y", vector_json(r.argmin.y)},
              {"converged", r.converged},
              {"monotone", r.monotone},
              {"unconverged_starts", r.unconverged_starts},
              {"notes", r.notes}};
  return dump(out);
}

std::string render_verify(const RunConfig& cfg, const VerifyReport& report) {
  json claims = json::array();
  for (const auto& c : report.claims)
    claims.push_back({{"id", c.id},
                      {"anchor", c.anchor},
                      {"status", std::string(to_string(c.status))},
                      {"measured", c.measured}});
  json out = {{"meta", meta(cfg)},
              {"overall", report.all_pass() ? "pass" : "fail"},
              {"claims", claims}};
  return dump(out);
}

}  // namespace qwlab
