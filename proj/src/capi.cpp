#include "qwlab/qwlab.h"

#include <algorithm>
#include <string>

#include "qwlab/error.hpp"
#include "qwlab/optimality.hpp"
#include "qwlab/render.hpp"
#include "qwlab/verify.hpp"
#include "qwlab/witness.hpp"

struct qwl_witness {
  qwlab::WitnessParams params;
  qwlab::CMat matrix;
};

struct qwl_span_report {
  qwlab::SpanReport report;
};

struct qwl_config {
  qwlab::RunConfig config;
};

struct qwl_text {
  std::string data;
};

namespace {

thread_local std::string last_error;

qwl_status fail(qwl_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

qwl_status to_status(qwlab::ErrorCode code) {
  switch (code) {
    case qwlab::ErrorCode::InvalidArgument: return QWL_ERR_INVALID_ARGUMENT;
    case qwlab::ErrorCode::NotOnEllipse: return QWL_ERR_NOT_ON_ELLIPSE;
    case qwlab::ErrorCode::Degenerate: return QWL_ERR_DEGENERATE;
    case qwlab::ErrorCode::Numeric: return QWL_ERR_NUMERIC;
  }
  return QWL_ERR_INTERNAL;
}

template <class Fn>
qwl_status guard(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return QWL_OK;
  } catch (const qwlab::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::exception& e) {
    return fail(QWL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QWL_ERR_INTERNAL, "unknown error");
  }
}

qwlab::CVec read3(const double* v) {
  return qwlab::CVec{{v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}};
}

void write_vec(const qwlab::CVec& v, double* out) {
  for (std::size_t i = 0; i < v.dim(); ++i) {
    out[2 * i] = v[i].real();
    out[2 * i + 1] = v[i].imag();
  }
}

void write_mat(const qwlab::CMat& m, double* out) {
  std::size_t k = 0;
  for (const auto& z : m.entries()) {
    out[k++] = z.real();
    out[k++] = z.imag();
  }
}

qwlab::SpanOptions span_options(const qwl_span_options* opts) {
  qwl_span_options o;
  if (opts) o = *opts;
  else qwl_span_options_default(&o);
  qwlab::SpanOptions s;
  s.phi1 = o.phi1;
  s.phi2 = o.phi2;
  s.numeric_fallback = o.numeric_fallback != 0;
  s.n_starts = o.n_starts;
  s.zero_tol = o.zero_tol;
  s.seed = o.seed;
  s.ellipse_tol = o.ellipse_tol;
  return s;
}

qwl_status emit(std::string text, qwl_text** out) {
  *out = new qwl_text{std::move(text)};
  return QWL_OK;
}

#define QWL_REQUIRE(ptr)                                          \
  do {                                                            \
    if (!(ptr)) return fail(QWL_ERR_NULL_HANDLE, #ptr " is NULL"); \
  } while (0)

}  // namespace

extern "C" {

const char* qwl_version(void) { return QWLAB_VERSION; }

const char* qwl_last_error(void) { return last_error.c_str(); }

const char* qwl_status_name(qwl_status status) {
  switch (status) {
    case QWL_OK: return "ok";
    case QWL_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case QWL_ERR_NOT_ON_ELLIPSE: return "not_on_ellipse";
    case QWL_ERR_DEGENERATE: return "degenerate";
    case QWL_ERR_NUMERIC: return "numeric";
    case QWL_ERR_NULL_HANDLE: return "null_handle";
    case QWL_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

qwl_status qwl_witness_create(double a, double b, double c, qwl_witness** out) {
  QWL_REQUIRE(out);
  return guard([&] {
    const qwlab::WitnessParams p{a, b, c};
    *out = new qwl_witness{p, qwlab::build_witness(p)};
  });
}

void qwl_witness_destroy(qwl_witness* w) { delete w; }

qwl_status qwl_witness_params(const qwl_witness* w, double out_abc[3]) {
  QWL_REQUIRE(w);
  QWL_REQUIRE(out_abc);
  out_abc[0] = w->params.a;
  out_abc[1] = w->params.b;
  out_abc[2] = w->params.c;
  return QWL_OK;
}

qwl_status qwl_witness_matrix(const qwl_witness* w, double out[162]) {
  QWL_REQUIRE(w);
  QWL_REQUIRE(out);
  write_mat(w->matrix, out);
  return QWL_OK;
}

qwl_status qwl_witness_classify(const qwl_witness* w, double tol, qwl_classification* out) {
  QWL_REQUIRE(w);
  QWL_REQUIRE(out);
  return guard([&] {
    const qwlab::Classification c = qwlab::classify(w->params, tol);
    out->is_witness = c.is_witness;
    out->indecomposable = c.indecomposable ? static_cast<int>(*c.indecomposable) : -1;
    out->on_ellipse = c.on_ellipse;
    out->is_psd = c.is_psd;
    out->failed_conditions = 0;
    for (qwlab::Condition cond : c.failed_conditions) {
      switch (cond) {
        case qwlab::Condition::ARange: out->failed_conditions |= QWL_COND_A_RANGE; break;
        case qwlab::Condition::SumAtLeastTwo: out->failed_conditions |= QWL_COND_SUM_AT_LEAST_TWO; break;
        case qwlab::Condition::ProductBound: out->failed_conditions |= QWL_COND_PRODUCT_BOUND; break;
      }
    }
  });
}

qwl_status qwl_witness_expectation(const qwl_witness* w, const double x[6], const double y[6], double* out) {
  QWL_REQUIRE(w);
  QWL_REQUIRE(x);
  QWL_REQUIRE(y);
  QWL_REQUIRE(out);
  return guard([&] { *out = qwlab::expectation(w->matrix, read3(x), read3(y)); });
}

qwl_status qwl_witness_reduce_second(const qwl_witness* w, const double y[6], double out[18]) {
  QWL_REQUIRE(w);
  QWL_REQUIRE(y);
  QWL_REQUIRE(out);
  return guard([&] { write_mat(qwlab::partial_trace_second(w->matrix, read3(y)), out); });
}

qwl_status qwl_witness_reduce_first(const qwl_witness* w, const double x[6], double out[18]) {
  QWL_REQUIRE(w);
  QWL_REQUIRE(x);
  QWL_REQUIRE(out);
  return guard([&] { write_mat(qwlab::partial_trace_first(w->matrix, read3(x)), out); });
}

qwl_status qwl_ellipse_point(double a, int upper, double out_abc[3]) {
  QWL_REQUIRE(out_abc);
  return guard([&] {
    const auto p = qwlab::ellipse_from_a(a, upper ? qwlab::Branch::Upper : qwlab::Branch::Lower);
    out_abc[0] = p.a;
    out_abc[1] = p.b;
    out_abc[2] = p.c;
  });
}

int qwl_on_ellipse(double b, double c, double tol) { return qwlab::on_ellipse(b, c, tol) ? 1 : 0; }

void qwl_span_options_default(qwl_span_options* opts) {
  if (!opts) return;
  const qwlab::SpanOptions d;
  opts->phi1 = d.phi1;
  opts->phi2 = d.phi2;
  opts->numeric_fallback = d.numeric_fallback ? 1 : 0;
  opts->n_starts = d.n_starts;
  opts->zero_tol = d.zero_tol;
  opts->seed = d.seed;
  opts->ellipse_tol = d.ellipse_tol;
}

qwl_status qwl_span_compute(const qwl_witness* w, const qwl_span_options* opts, qwl_span_report** out) {
  QWL_REQUIRE(w);
  QWL_REQUIRE(out);
  return guard([&] { *out = new qwl_span_report{qwlab::spanning_report(w->params, span_options(opts))}; });
}

void qwl_span_destroy(qwl_span_report* r) { delete r; }

int qwl_span_rank(const qwl_span_report* r) { return r ? r->report.gram_rank : -1; }
int qwl_span_spanning(const qwl_span_report* r) { return r && r->report.spanning ? 1 : 0; }
int qwl_span_method(const qwl_span_report* r) {
  if (!r) return -1;
  return r->report.method == qwlab::SpanMethod::ClosedForm ? QWL_METHOD_CLOSED_FORM
                                                           : QWL_METHOD_NUMERIC_SEARCH;
}
int qwl_span_degenerate(const qwl_span_report* r) { return r && r->report.degenerate ? 1 : 0; }
size_t qwl_span_vector_count(const qwl_span_report* r) { return r ? r->report.vectors.size() : 0; }

qwl_status qwl_span_vector(const qwl_span_report* r, size_t index, double out[18]) {
  QWL_REQUIRE(r);
  QWL_REQUIRE(out);
  if (index >= r->report.vectors.size()) return fail(QWL_ERR_INVALID_ARGUMENT, "vector index out of range");
  write_vec(r->report.vectors[index], out);
  return QWL_OK;
}

const char* qwl_span_notes(const qwl_span_report* r) { return r ? r->report.notes.c_str() : ""; }

qwl_status qwl_seesaw_minimize(const qwl_witness* w, int n_starts, int max_iters, uint64_t seed,
                               qwl_seesaw_result* out) {
  QWL_REQUIRE(w);
  QWL_REQUIRE(out);
  return guard([&] {
    qwlab::SeesawOptions opts;
    opts.n_starts = n_starts;
    opts.max_iters = max_iters;
    opts.seed = seed;
    const qwlab::SeesawResult r = qwlab::seesaw_minimize(w->matrix, opts);
    out->min_value = r.min_value;
    write_vec(r.argmin.x, out->x);
    write_vec(r.argmin.y, out->y);
    out->converged = r.converged;
    out->monotone = r.monotone;
    out->unconverged_starts = r.unconverged_starts;
  });
}

qwl_status qwl_config_create(qwl_config** out) {
  QWL_REQUIRE(out);
  *out = new qwl_config{};
  return QWL_OK;
}

void qwl_config_destroy(qwl_config* cfg) { delete cfg; }

qwl_status qwl_config_set_command_line(qwl_config* cfg, const char* command_line) {
  QWL_REQUIRE(cfg);
  QWL_REQUIRE(command_line);
  cfg->config.command_line = command_line;
  return QWL_OK;
}

qwl_status qwl_config_set_seed(qwl_config* cfg, uint64_t seed) {
  QWL_REQUIRE(cfg);
  cfg->config.seed = seed;
  return QWL_OK;
}

qwl_status qwl_config_set_tolerance(qwl_config* cfg, const char* name, double value) {
  QWL_REQUIRE(cfg);
  QWL_REQUIRE(name);
  cfg->config.set_tolerance(name, value);
  return QWL_OK;
}

qwl_status qwl_config_set_format(qwl_config* cfg, int format) {
  QWL_REQUIRE(cfg);
  if (format != QWL_FORMAT_CSV && format != QWL_FORMAT_JSON)
    return fail(QWL_ERR_INVALID_ARGUMENT, "unknown output format");
  cfg->config.format = format == QWL_FORMAT_CSV ? qwlab::OutputFormat::Csv : qwlab::OutputFormat::Json;
  return QWL_OK;
}

const char* qwl_text_data(const qwl_text* t) { return t ? t->data.c_str() : ""; }
size_t qwl_text_size(const qwl_text* t) { return t ? t->data.size() : 0; }
void qwl_text_destroy(qwl_text* t) { delete t; }

qwl_status qwl_run_classify(const qwl_config* cfg, double a, double b, double c, double tol, qwl_text** out) {
  QWL_REQUIRE(cfg);
  QWL_REQUIRE(out);
  return guard([&] { emit(qwlab::render_classify(cfg->config, {a, b, c}, tol), out); });
}

qwl_status qwl_run_span(const qwl_config* cfg, double b, double c, double ellipse_tol,
                        const qwl_span_options* opts, int include_vectors, qwl_text** out) {
  QWL_REQUIRE(cfg);
  QWL_REQUIRE(out);
  return guard([&] {
    qwlab::SpanJob job;
    job.b = b;
    job.c = c;
    job.ellipse_tol = ellipse_tol;
    job.options = span_options(opts);
    job.include_vectors = include_vectors != 0;
    emit(qwlab::render_span(cfg->config, job), out);
  });
}

qwl_status qwl_run_ellipse(const qwl_config* cfg, int samples, qwl_text** out) {
  QWL_REQUIRE(cfg);
  QWL_REQUIRE(out);
  return guard([&] { emit(qwlab::render_ellipse(cfg->config, samples), out); });
}

qwl_status qwl_run_scan(const qwl_config* cfg, int grid, double tol, qwl_text** out) {
  QWL_REQUIRE(cfg);
  QWL_REQUIRE(out);
  return guard([&] { emit(qwlab::render_scan(cfg->config, grid, tol), out); });
}

qwl_status qwl_run_minimize(const qwl_config* cfg, double a, double b, double c, int n_starts, int max_iters,
                            qwl_text** out) {
  QWL_REQUIRE(cfg);
  QWL_REQUIRE(out);
  return guard([&] {
    qwlab::SeesawOptions opts;
    opts.n_starts = n_starts;
    opts.max_iters = max_iters;
    opts.seed = cfg->config.seed;
    emit(qwlab::render_minimize(cfg->config, {a, b, c}, opts), out);
  });
}

qwl_status qwl_run_verify(const qwl_config* cfg, int quick, int tamper, qwl_text** out, int* all_pass) {
  QWL_REQUIRE(cfg);
  QWL_REQUIRE(out);
  return guard([&] {
    qwlab::VerifyOptions opts;
    opts.seed = cfg->config.seed;
    opts.quick = quick != 0;
    if (tamper >= 0) opts.tamper = tamper;
    const qwlab::VerifyReport report = qwlab::run_verify(opts);
    if (all_pass) *all_pass = report.all_pass() ? 1 : 0;
    emit(qwlab::render_verify(cfg->config, report), out);
  });
}

}  // extern "C"
