#include "qwlab/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "parallel.hpp"
#include "qwlab/error.hpp"

namespace qwlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

Complex cis(double t) { return std::polar(1.0, t); }

/// out[(i + shift) % 3] = v[i]
CVec cyclic_shift(const CVec& v, int shift) {
  CVec out(3);
  for (std::size_t i = 0; i < 3; ++i) out[(i + static_cast<std::size_t>(shift)) % 3] = v[i];
  return out;
}

void require_ellipse(const WitnessParams& p, double tol) {
  if (!on_ellipse(p.b, p.c, tol) || std::abs(p.a + p.b + p.c - 2.0) > tol) {
    std::ostringstream msg;
    msg << "(a,b,c) = (" << p.a << ", " << p.b << ", " << p.c
        << ") is not on the ellipse a+b+c=2, bc=(1-a)^2";
    throw Error(ErrorCode::NotOnEllipse, msg.str());
  }
}

bool is_choi_point(const WitnessParams& p) {
  constexpr double kTol = 1e-12;
  return (std::abs(p.b) <= kTol && std::abs(p.c - 1.0) <= kTol) ||
         (std::abs(p.b - 1.0) <= kTol && std::abs(p.c) <= kTol);
}

ProductVector swap_factors(const ProductVector& pv) { return {pv.y, pv.x}; }

std::vector<SeesawRun> seesaw_starts(const CMat& w, const SeesawOptions& opts) {
  if (opts.n_starts < 1) throw Error(ErrorCode::InvalidArgument, "n_starts must be positive");
  if (opts.max_iters < 1) throw Error(ErrorCode::InvalidArgument, "max_iters must be positive");
  return detail::parallel_map<SeesawRun>(static_cast<std::size_t>(opts.n_starts), [&](std::size_t i) {
    return seesaw_run(w, random_unit_vector(3, opts.seed + i), opts.max_iters, opts.convergence);
  });
}

}  // namespace

ProductVector phase_product(const PhaseTriple& t) {
  CVec y{cis(t.alpha), cis(t.beta), cis(t.gamma)};
  return {conj(y), y};
}

const std::array<PhaseTriple, 7>& canonical_triples() {
  static const std::array<PhaseTriple, 7> triples = {{
      {0.0, 0.0, 0.0},
      {0.0, 0.0, kPi},
      {0.0, kPi, 0.0},
      {0.0, kPi, kPi},
      {0.0, 0.0, kPi / 2},
      {0.0, kPi / 2, 0.0},
      {0.0, kPi / 2, -kPi / 2},
  }};
  return triples;
}

std::vector<CVec> canonical_seven() {
  std::vector<CVec> out;
  for (const auto& t : canonical_triples()) out.push_back(phase_product(t).flatten());
  return out;
}

Case1Data case1_data(const WitnessParams& p) {
  validate(p);
  require_ellipse(p, 1e-9);
  if (p.b > p.c + 1e-12)
    throw Error(ErrorCode::InvalidArgument, "case-1 construction expects b <= c; swap b and c");
  if (std::abs(p.a - kEllipseMaxA) <= 1e-9)
    throw Error(ErrorCode::Degenerate, "a = 4/3 (b = c = 1/3): closed form is 0/0");
  const double p2 = 1.0 + p.b - p.a;
  const double q2 = 3.0 - p.b - 2.0 * p.a;
  if (p2 < -1e-12 || q2 < -1e-12) {
    std::ostringstream msg;
    msg << "no real case-1 vector for a = " << p.a << " (1 + b - a = " << p2 << ")";
    throw Error(ErrorCode::Degenerate, msg.str());
  }
  Case1Data d;
  d.p = std::sqrt(std::max(0.0, p2));
  d.q = std::sqrt(std::max(0.0, q2));
  d.r = d.p * d.q;
  d.s = p.a * d.p * d.p + p.b * d.q * d.q;
  return d;
}

double quadratic_second_term(double a, double b, double t) {
  return a * (4.0 - 3.0 * a) * t * t + 2.0 * a * (a - b - 1.0) * t + a * b;
}

double quadratic_discriminant(double a, double b) {
  const double lin = 2.0 * a * (a - b - 1.0);
  return lin * lin - 4.0 * a * (4.0 - 3.0 * a) * a * b;
}

double det_wy_factored(const WitnessParams& p, Complex y2, Complex y3) {
  const double t2 = std::norm(y2);
  const double t3 = std::norm(y3);
  const double first = p.b * t2 + p.c * t3;
  const double second =
      p.a * p.c * t2 * t2 + (p.a * p.a + p.b * p.c - 1.0) * t2 * t3 + p.a * p.b * t3 * t3;
  return first * second;
}

double case2_det_poly(const CVec& y) {
  if (y.dim() != 3) throw Error(ErrorCode::InvalidArgument, "expected a 3-vector");
  const double t1 = std::norm(y[0]);
  const double t2 = std::norm(y[1]);
  const double t3 = std::norm(y[2]);
  return t1 * t1 * t2 + t2 * t2 * t3 + t3 * t3 * t1 - 3.0 * t1 * t2 * t3;
}

ProductVector case1_psi(const WitnessParams& p, int k, double phi) {
  if (k < 1 || k > 3) throw Error(ErrorCode::InvalidArgument, "case-1 index k must be 1, 2 or 3");
  const Case1Data d = case1_data(p);
  const CVec y = cyclic_shift(CVec{0.0, d.p, d.q * cis(phi)}, k - 1);
  const CVec expected = cyclic_shift(CVec{0.0, d.r * cis(phi), d.s}, k - 1);
  if (norm(expected) == 0.0) return {expected, y};  // b -> 0 limit: both p and s vanish

  // x is taken from ker W_y; the closed form only fixes its scale and phase.
  const CMat wy = partial_trace_second(build_witness(p), y);
  const std::vector<CVec> kernel = nullspace(wy);
  CVec x(3);
  for (const auto& v : kernel) x = x + inner(v, expected) * v;
  if (norm(x - expected) > 1e-8 * norm(expected)) {
    std::ostringstream msg;
    msg << "case-1 kernel vector disagrees with its closed form (kernel dim " << kernel.size()
        << ", deviation " << norm(x - expected) << ")";
    throw Error(ErrorCode::Numeric, msg.str());
  }
  return {x, y};
}

ProductVector case2_phi(int k) {
  switch (k) {
    case 1: return {CVec::basis(3, 2), CVec::basis(3, 0)};
    case 2: return {CVec::basis(3, 0), CVec::basis(3, 1)};
    case 3: return {CVec::basis(3, 1), CVec::basis(3, 2)};
    default: throw Error(ErrorCode::InvalidArgument, "case-2 index k must be 1, 2 or 3");
  }
}

CMat reference_basis_matrix(const WitnessParams& params, double phi1, double phi2) {
  const Case1Data d = case1_data(params);
  const Complex i = kI;
  const Complex e1 = cis(phi1);
  const Complex e2 = cis(phi2);
  const double pr = d.p * d.r, ps = d.p * d.s, qr = d.q * d.r, qs = d.q * d.s;
  return CMat{
      {1, 1, 1, 1, 1, 1, 1, 1, 1},
      {1, 1, -1, 1, 1, -1, -1, -1, 1},
      {1, -1, 1, -1, 1, -1, 1, -1, 1},
      {1, -1, -1, -1, 1, -1, -1, 1, 1},
      {1, 1, i, 1, 1, i, -i, -i, 1},
      {1, i, 1, -i, 1, -i, 1, i, 1},
      {1, i, -i, -i, 1, -1, i, i, 1},
      {0, 0, 0, 0, pr * e1, ps, 0, qr * e1 * e1, qs * e1},
      {qs * e2, 0, qr * e2 * e2, 0, 0, 0, ps, 0, pr * e2},
  };
}

CMat convention_basis_matrix(const WitnessParams& p, double phi1, double phi2) {
  std::vector<CVec> rows = canonical_seven();
  rows.push_back(case1_psi(p, 1, phi1).flatten());
  rows.push_back(case1_psi(p, 2, phi2).flatten());
  return CMat::from_rows(rows);
}

Complex basis_determinant_kernel(const WitnessParams& p, double phi1, double phi2) {
  const Case1Data d = case1_data(p);
  const double qs = d.q * d.s;
  const double pr = d.p * d.r;
  return cis(phi1 + phi2) * (qs * qs + pr * pr - qs * pr);
}

std::string_view to_string(SpanMethod m) {
  return m == SpanMethod::ClosedForm ? "closed_form" : "numeric_search";
}

CVec random_unit_vector(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  CVec v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = Complex(gauss(rng), gauss(rng));
  return normalized(v);
}

SeesawRun seesaw_run(const CMat& w, const CVec& y0, int max_iters, double convergence) {
  SeesawRun run;
  const double slack = 1e-12 * std::max(1.0, w.max_abs());
  CVec y = normalized(y0);
  CVec x;
  double previous = 0.0;
  bool have_previous = false;
  double last = 0.0;

  auto record = [&](double value) {
    if (!run.trace.empty() && value > run.trace.back() + slack) run.monotone = false;
    run.trace.push_back(value);
    last = value;
  };

  for (int it = 0; it < max_iters; ++it) {
    x = hermitian_eigen(partial_trace_second(w, y)).vectors.front();
    record(expectation(w, x, y));
    y = hermitian_eigen(partial_trace_first(w, x)).vectors.front();
    record(expectation(w, x, y));
    if (have_previous && previous - last < convergence) {
      run.converged = true;
      break;
    }
    previous = last;
    have_previous = true;
  }
  run.argmin = {x, y};
  run.value = expectation(w, x, y);
  return run;
}

SeesawResult seesaw_minimize(const CMat& w, const SeesawOptions& opts) {
  const std::vector<SeesawRun> runs = seesaw_starts(w, opts);
  SeesawResult result;
  std::size_t best = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    result.start_values.push_back(runs[i].value);
    if (runs[i].value < runs[best].value) best = i;
    if (!runs[i].converged) ++result.unconverged_starts;
    if (!runs[i].monotone) result.monotone = false;
  }
  result.converged = result.unconverged_starts == 0;
  result.argmin = runs[best].argmin;
  result.min_value = expectation(w, result.argmin.x, result.argmin.y);
  if (!result.converged) {
    std::ostringstream msg;
    msg << result.unconverged_starts << " of " << runs.size() << " starts hit max_iters";
    result.notes = msg.str();
  }
  return result;
}

SpanReport numeric_zero_set(const WitnessParams& p, int n_starts, double zero_tol,
                            std::uint64_t seed) {
  if (!classify(p).is_witness)
    throw Error(ErrorCode::InvalidArgument, "numeric zero-set search expects a witness");
  SeesawOptions opts;
  opts.n_starts = n_starts;
  opts.seed = seed;
  const CMat w = build_witness(p);
  const std::vector<SeesawRun> runs = seesaw_starts(w, opts);

  SpanReport report;
  report.params = p;
  report.method = SpanMethod::NumericSearch;
  for (const auto& run : runs)
    if (run.value <= zero_tol) report.vectors.push_back(run.argmin.flatten());
  report.gram_rank = gram_rank(report.vectors);
  report.spanning = report.gram_rank == 9;
  std::ostringstream msg;
  msg << report.vectors.size() << " of " << runs.size() << " see-saw starts reached expectation <= "
      << zero_tol;
  report.notes = msg.str();
  return report;
}

SpanReport spanning_report(const WitnessParams& p, const SpanOptions& opts) {
  validate(p);
  require_ellipse(p, opts.ellipse_tol);

  if (p.a > 1.0 + 1e-12) {
    if (!opts.numeric_fallback)
      throw Error(ErrorCode::Degenerate,
                  "closed-form zero vectors unavailable for a > 1; enable the numeric fallback");
    SpanReport report = numeric_zero_set(p, opts.n_starts, opts.zero_tol, opts.seed);
    report.degenerate = true;
    report.notes = "closed form unavailable for a > 1; " + report.notes;
    return report;
  }

  SpanReport report;
  report.params = p;
  report.method = SpanMethod::ClosedForm;
  report.vectors = canonical_seven();

  if (is_choi_point(p)) {
    const bool swapped = p.b > p.c;
    for (int k = 1; k <= 3; ++k) {
      const ProductVector phi = case2_phi(k);
      report.vectors.push_back((swapped ? swap_factors(phi) : phi).flatten());
    }
    report.notes = "Choi point: zero set is the phase family plus three basis product vectors";
  } else {
    // W[a,c,b] is W[a,b,c] with the tensor factors exchanged.
    const bool swapped = p.b > p.c;
    const WitnessParams canon = swapped ? WitnessParams{p.a, p.c, p.b} : p;
    for (auto [k, phi] : {std::pair{1, opts.phi1}, std::pair{2, opts.phi2}}) {
      const ProductVector psi = case1_psi(canon, k, phi);
      report.vectors.push_back((swapped ? swap_factors(psi) : psi).flatten());
    }
    report.notes = swapped ? "case-1 vectors built for (a,c,b) and factor-swapped" : "case-1 vectors";
  }
  report.gram_rank = gram_rank(report.vectors);
  report.spanning = report.gram_rank == 9;
  return report;
}

}  // namespace qwlab
