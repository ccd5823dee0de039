#include "qwlab/witness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "qwlab/error.hpp"

namespace qwlab {

namespace {

constexpr std::array<std::size_t, 3> kCoupled = {0, 4, 8};

std::size_t flat(std::size_t i, std::size_t j) { return 3 * i + j; }

void require_dims(const CMat& w, const CVec& v) {
  if (w.rows() != 9 || w.cols() != 9 || v.dim() != 3)
    throw Error(ErrorCode::InvalidArgument, "expected a 9x9 operator and a 3-vector");
}

}  // namespace

void validate(const WitnessParams& p) {
  for (double v : {p.a, p.b, p.c}) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "parameters must be finite");
    if (v < 0.0) {
      std::ostringstream msg;
      msg << "parameters must be nonnegative, got (" << p.a << ", " << p.b << ", " << p.c << ")";
      throw Error(ErrorCode::InvalidArgument, msg.str());
    }
  }
}

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::ARange: return "a_range";
    case Condition::SumAtLeastTwo: return "sum_at_least_two";
    case Condition::ProductBound: return "product_bound";
  }
  return "unknown";
}

std::string_view to_string(Branch b) { return b == Branch::Lower ? "lower" : "upper"; }

CMat build_witness(const WitnessParams& p) {
  validate(p);
  const std::array<double, 9> diag = {p.a, p.b, p.c, p.c, p.a, p.b, p.b, p.c, p.a};
  CMat w(9, 9);
  for (std::size_t i = 0; i < 9; ++i) w(i, i) = diag[i];
  for (std::size_t i : kCoupled)
    for (std::size_t j : kCoupled)
      if (i != j) w(i, j) = -1.0;
  return w;
}

bool satisfies_witness_conditions(const WitnessParams& p, double tol,
                                  std::vector<Condition>* failed) {
  std::vector<Condition> bad;
  if (!(p.a >= 0.0 && p.a < 2.0)) bad.push_back(Condition::ARange);
  if (!(p.a + p.b + p.c >= 2.0 - tol)) bad.push_back(Condition::SumAtLeastTwo);
  if (p.a <= 1.0 && !(p.b * p.c >= (1.0 - p.a) * (1.0 - p.a) - tol))
    bad.push_back(Condition::ProductBound);
  const bool ok = bad.empty();
  if (failed) *failed = std::move(bad);
  return ok;
}

Classification classify(const WitnessParams& p, double tol) {
  validate(p);
  Classification out;
  out.is_witness = satisfies_witness_conditions(p, tol, &out.failed_conditions);
  if (out.is_witness) out.indecomposable = p.b * p.c < (2.0 - p.a) * (2.0 - p.a) / 4.0 - tol;
  out.on_ellipse = on_ellipse(p.b, p.c, tol) && std::abs(p.a + p.b + p.c - 2.0) <= tol;
  const Eigensystem es = hermitian_eigen(build_witness(p));
  out.is_psd = es.values.front() >= -tol;
  return out;
}

double ellipse_residual(double b, double c) { return b * b + b * c + c * c - 2.0 * b - 2.0 * c + 1.0; }

bool on_ellipse(double b, double c, double tol) { return std::abs(ellipse_residual(b, c)) <= tol; }

WitnessParams ellipse_from_a(double a, Branch branch) {
  constexpr double kSlack = 1e-12;
  if (!std::isfinite(a) || a < -kSlack || a > kEllipseMaxA + kSlack) {
    std::ostringstream msg;
    msg << "ellipse parameter a=" << a << " outside [0, 4/3]";
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }
  a = std::clamp(a, 0.0, kEllipseMaxA);
  const double root = std::sqrt(std::max(0.0, 4.0 * a - 3.0 * a * a));
  const double lo = 0.5 * (2.0 - a - root);
  const double hi = 0.5 * (2.0 - a + root);
  return branch == Branch::Lower ? WitnessParams{a, lo, hi} : WitnessParams{a, hi, lo};
}

CMat partial_trace_second(const CMat& w, const CVec& y) {
  require_dims(w, y);
  CMat out(3, 3);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t k = 0; k < 3; ++k) {
      Complex acc{};
      for (std::size_t m = 0; m < 3; ++m)
        for (std::size_t n = 0; n < 3; ++n) acc += w(flat(j, m), flat(k, n)) * y[n] * std::conj(y[m]);
      out(j, k) = acc;
    }
  return out;
}

CMat partial_trace_first(const CMat& w, const CVec& x) {
  require_dims(w, x);
  CMat out(3, 3);
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t n = 0; n < 3; ++n) {
      Complex acc{};
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) acc += std::conj(x[j]) * x[k] * w(flat(j, m), flat(k, n));
      out(m, n) = acc;
    }
  return out;
}

CMat reduction_closed_form(const WitnessParams& p, const CVec& y) {
  if (y.dim() != 3) throw Error(ErrorCode::InvalidArgument, "expected a 3-vector");
  const double t1 = std::norm(y[0]);
  const double t2 = std::norm(y[1]);
  const double t3 = std::norm(y[2]);
  const std::array<Complex, 3> d = {
      (p.a + 1.0) * t1 + p.b * t2 + p.c * t3,
      p.c * t1 + (p.a + 1.0) * t2 + p.b * t3,
      p.b * t1 + p.c * t2 + (p.a + 1.0) * t3,
  };
  const CVec ystar = conj(y);
  return CMat::diagonal(d) - outer(ystar, ystar);
}

double expectation(const CMat& w, const CVec& x, const CVec& y) {
  const CVec xy = kron(x, y);
  if (w.rows() != xy.dim() || w.cols() != xy.dim())
    throw Error(ErrorCode::InvalidArgument, "operator and product vector dimensions differ");
  const Complex value = inner(xy, w * xy);
  const double scale = std::pow(norm(x) * norm(y), 2) * std::max(1.0, w.max_abs());
  if (std::abs(value.imag()) > 1e-10 * scale) {
    std::ostringstream msg;
    msg << "expectation has imaginary part " << value.imag() << "; operator is not Hermitian";
    throw Error(ErrorCode::Numeric, msg.str());
  }
  return value.real();
}

}  // namespace qwlab
