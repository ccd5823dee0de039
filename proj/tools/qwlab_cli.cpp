// qwlab command-line front end. Talks to the library only through qwlab.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qwlab/qwlab.h"

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kInvalidInput = 2, kDegenerate = 3 };

int exit_code(qwl_status s) {
  switch (s) {
    case QWL_OK: return kOk;
    case QWL_ERR_INVALID_ARGUMENT:
    case QWL_ERR_NOT_ON_ELLIPSE: return kInvalidInput;
    case QWL_ERR_DEGENERATE: return kDegenerate;
    default: return kVerifyFailed;
  }
}

struct Common {
  std::uint64_t seed = 0;
  std::string output;
  std::string format = "json";
};

class Config {
 public:
  Config(const std::string& command_line, const Common& common, int default_format) {
    qwl_config_create(&cfg_);
    qwl_config_set_command_line(cfg_, command_line.c_str());
    qwl_config_set_seed(cfg_, common.seed);
    int format = default_format;
    if (common.format == "csv") format = QWL_FORMAT_CSV;
    if (common.format == "json") format = QWL_FORMAT_JSON;
    qwl_config_set_format(cfg_, format);
  }
  ~Config() { qwl_config_destroy(cfg_); }
  Config(const Config&) = delete;
  Config& operator=(const Config&) = delete;

  void tolerance(const char* name, double value) { qwl_config_set_tolerance(cfg_, name, value); }
  const qwl_config* get() const { return cfg_; }

 private:
  qwl_config* cfg_ = nullptr;
};

int report_error(qwl_status s) {
  std::cerr << "qwlab: " << qwl_status_name(s) << ": " << qwl_last_error() << "\n";
  return exit_code(s);
}

int write(qwl_text* text, const std::string& path) {
  int rc = kOk;
  if (path.empty() || path == "-") {
    std::fwrite(qwl_text_data(text), 1, qwl_text_size(text), stdout);
    std::fflush(stdout);
  } else {
    std::ofstream out(path, std::ios::binary);
    out.write(qwl_text_data(text), static_cast<std::streamsize>(qwl_text_size(text)));
    if (!out) {
      std::cerr << "qwlab: cannot write " << path << "\n";
      rc = kInvalidInput;
    }
  }
  qwl_text_destroy(text);
  return rc;
}

int finish(qwl_status s, qwl_text*& text, const std::string& path) {
  if (s != QWL_OK) return report_error(s);
  return write(text, path);
}

std::string join_args(int argc, char** argv) {
  std::string out = "qwlab";
  for (int i = 1; i < argc; ++i) {
    out += ' ';
    out += argv[i];
  }
  return out;
}

void add_common(CLI::App* cmd, Common& common, bool allow_csv) {
  cmd->add_option("--seed", common.seed, "RNG seed")->capture_default_str();
  cmd->add_option("-o,--output", common.output, "output file (default stdout)");
  if (allow_csv)
    cmd->add_option("--format", common.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qwlab: two-qutrit witness family W[a,b,c] toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qwl_version()));

  Common common;
  int rc = kOk;
  const std::string command_line = join_args(argc, argv);

  double a = 0, b = 0, c = 0;
  double tol = 1e-12;

  auto* classify = app.add_subcommand("classify", "classify W[a,b,c]");
  classify->add_option("a", a)->required();
  classify->add_option("b", b)->required();
  classify->add_option("c", c)->required();
  classify->add_option("--tol", tol, "condition tolerance")->capture_default_str();
  add_common(classify, common, false);
  classify->callback([&] {
    Config cfg(command_line, common, QWL_FORMAT_JSON);
    cfg.tolerance("classify", tol);
    qwl_text* text = nullptr;
    rc = finish(qwl_run_classify(cfg.get(), a, b, c, tol, &text), text, common.output);
  });

  qwl_span_options span_opts;
  qwl_span_options_default(&span_opts);
  span_opts.numeric_fallback = 0;
  bool fallback = false;
  bool vectors = false;
  double ellipse_tol = 1e-4;
  auto* span = app.add_subcommand("span", "zero-set spanning report for an ellipse point (b, c)");
  span->add_option("b", b)->required();
  span->add_option("c", c)->required();
  span->add_option("--phi1", span_opts.phi1, "phase of the first constructed vector")->capture_default_str();
  span->add_option("--phi2", span_opts.phi2, "phase of the second constructed vector")->capture_default_str();
  span->add_flag("--numeric-fallback", fallback, "use see-saw search where no closed form exists");
  span->add_option("--starts", span_opts.n_starts, "see-saw starts for the fallback")->capture_default_str();
  span->add_option("--zero-tol", span_opts.zero_tol, "zero threshold for the fallback")->capture_default_str();
  span->add_option("--ellipse-tol", ellipse_tol, "accepted ellipse residual")->capture_default_str();
  span->add_flag("--vectors", vectors, "include the vectors in the output");
  add_common(span, common, false);
  span->callback([&] {
    Config cfg(command_line, common, QWL_FORMAT_JSON);
    span_opts.numeric_fallback = fallback ? 1 : 0;
    span_opts.seed = common.seed;
    cfg.tolerance("ellipse", ellipse_tol);
    cfg.tolerance("zero", span_opts.zero_tol);
    cfg.tolerance("gram_rank", 1e-9);
    qwl_text* text = nullptr;
    rc = finish(qwl_run_span(cfg.get(), b, c, ellipse_tol, &span_opts, vectors ? 1 : 0, &text), text,
                common.output);
  });

  int samples = 25;
  auto* ellipse = app.add_subcommand("ellipse", "sample the ellipse a+b+c=2, bc=(1-a)^2");
  ellipse->add_option("--samples", samples, "samples per branch")->capture_default_str();
  add_common(ellipse, common, true);
  ellipse->callback([&] {
    Config cfg(command_line, common, QWL_FORMAT_CSV);
    cfg.tolerance("classify", 1e-12);
    cfg.tolerance("gram_rank", 1e-9);
    qwl_text* text = nullptr;
    rc = finish(qwl_run_ellipse(cfg.get(), samples, &text), text, common.output);
  });

  int grid = 41;
  auto* scan = app.add_subcommand("scan", "classify a (b, c) grid over [0,2]^2 with a = max(0, 2-b-c)");
  scan->add_option("--grid", grid, "points per axis")->capture_default_str();
  scan->add_option("--tol", tol, "condition tolerance")->capture_default_str();
  add_common(scan, common, true);
  scan->callback([&] {
    Config cfg(command_line, common, QWL_FORMAT_CSV);
    cfg.tolerance("classify", tol);
    qwl_text* text = nullptr;
    rc = finish(qwl_run_scan(cfg.get(), grid, tol, &text), text, common.output);
  });

  int starts = 64;
  int iters = 200;
  auto* minimize = app.add_subcommand("minimize", "see-saw minimum of <x(x)y|W|x(x)y>");
  minimize->add_option("a", a)->required();
  minimize->add_option("b", b)->required();
  minimize->add_option("c", c)->required();
  minimize->add_option("--starts", starts, "random starts")->capture_default_str();
  minimize->add_option("--iters", iters, "iterations per start")->capture_default_str();
  add_common(minimize, common, false);
  minimize->callback([&] {
    Config cfg(command_line, common, QWL_FORMAT_JSON);
    cfg.tolerance("convergence", 1e-12);
    qwl_text* text = nullptr;
    rc = finish(qwl_run_minimize(cfg.get(), a, b, c, starts, iters, &text), text, common.output);
  });

  bool quick = false;
  int tamper = -1;
  auto* verify = app.add_subcommand("verify", "run the self-verification suite");
  verify->add_flag("--quick", quick, "4x smaller grids and sample counts");
  verify->add_option("--tamper", tamper, "flip the sign of one witness entry (0..14)")
      ->check(CLI::Range(-1, 14));
  add_common(verify, common, false);
  verify->callback([&] {
    if (verify->count("--seed") == 0) common.seed = 20240611;
    Config cfg(command_line, common, QWL_FORMAT_JSON);
    cfg.tolerance("classify", 1e-12);
    cfg.tolerance("seesaw_negative", -1e-5);
    cfg.tolerance("gram_rank", 1e-9);
    qwl_text* text = nullptr;
    int all_pass = 0;
    const qwl_status s = qwl_run_verify(cfg.get(), quick ? 1 : 0, tamper, &text, &all_pass);
    rc = finish(s, text, common.output);
    if (rc == kOk && !all_pass) rc = kVerifyFailed;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }
  return rc;
}
