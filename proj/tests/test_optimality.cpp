#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gen.hpp"
#include "qwlab/error.hpp"
#include "qwlab/optimality.hpp"

using namespace qwlab;
using qwlab::test::Gen;
using qwlab::test::max_abs_diff;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0, 1};

Complex eigen_det(const CMat& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e.determinant();
}

/// |<u|v>| / (|u||v|)
double overlap(const CVec& u, const CVec& v) { return std::abs(inner(u, v)) / (norm(u) * norm(v)); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no qwlab::Error thrown");
  return ErrorCode::Numeric;
}

}  // namespace

TEST_CASE("phase_product examples") {
  const CVec ones = phase_product({0, 0, 0}).flatten();
  for (const auto& z : ones) CHECK(std::abs(z - 1.0) < 1e-15);

  const CVec row2 = phase_product({0, 0, kPi}).flatten();
  const double expect2[9] = {1, 1, -1, 1, 1, -1, -1, -1, 1};
  for (std::size_t i = 0; i < 9; ++i) CHECK(std::abs(row2[i] - expect2[i]) < 1e-15);

  const CVec row7 = phase_product({0, kPi / 2, -kPi / 2}).flatten();
  const Complex expect7[9] = {1, kI, -kI, -kI, 1, -1.0, kI, -1.0, 1};
  for (std::size_t i = 0; i < 9; ++i) CHECK(std::abs(row7[i] - expect7[i]) < 1e-15);
}

TEST_CASE("phase_product flatten formula") {
  Gen g(31);
  for (int rep = 0; rep < 20; ++rep) {
    const PhaseTriple t{g.uniform(-4, 4), g.uniform(-4, 4), g.uniform(-4, 4)};
    const double ang[3] = {t.alpha, t.beta, t.gamma};
    const CVec f = phase_product(t).flatten();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(f[3 * i + j] - std::polar(1.0, ang[j] - ang[i])) < 1e-14);
  }
}

TEST_CASE("canonical_seven") {
  const auto seven = canonical_seven();
  REQUIRE(seven.size() == 7);
  CHECK(gram_rank(seven) == 7);
  for (const auto& z : seven[0]) CHECK(std::abs(z - 1.0) < 1e-15);
  for (double a : {0.0, 0.25, 0.5, 0.9, 1.0, 1.2, kEllipseMaxA})
    for (Branch br : {Branch::Lower, Branch::Upper}) {
      const CMat w = build_witness(ellipse_from_a(a, br));
      for (const auto& t : canonical_triples()) {
        const ProductVector pv = phase_product(t);
        CHECK(std::abs(expectation(w, pv.x, pv.y)) < 1e-13);
      }
    }
}

TEST_CASE("case1_data frozen values") {
  const Case1Data r = case1_data({0, 1, 1});
  CHECK(r.p == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r.q == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r.r == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(r.s == doctest::Approx(2.0).epsilon(1e-15));

  const WitnessParams h = ellipse_from_a(0.5, Branch::Lower);
  const Case1Data d = case1_data(h);
  CHECK(d.p * d.p == doctest::Approx(0.69098300562505258).epsilon(1e-13));
  CHECK(d.q * d.q == doctest::Approx(1.8090169943749475).epsilon(1e-13));
  CHECK(d.r == doctest::Approx(1.1180339887498949).epsilon(1e-13));
  CHECK(d.s == doctest::Approx(0.69098300562505258).epsilon(1e-13));
  const double t = d.p * d.p / (d.p * d.p + d.q * d.q);
  CHECK(t == doctest::Approx(0.27639320225002103).epsilon(1e-13));
  CHECK(std::abs(quadratic_second_term(h.a, h.b, t)) < 1e-12);

  const Case1Data lim = case1_data(ellipse_from_a(1.0, Branch::Lower));
  CHECK(lim.p < 1e-7);
  CHECK(lim.q == doctest::Approx(1.0));
  CHECK(lim.r < 1e-7);
  CHECK(lim.s < 1e-7);
}

TEST_CASE("case1_data errors") {
  CHECK(code_of([] { case1_data({4.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}); }) == ErrorCode::Degenerate);
  CHECK(code_of([] { case1_data(ellipse_from_a(1.2, Branch::Lower)); }) == ErrorCode::Degenerate);
  CHECK(code_of([] { case1_data({0.5, 0.5, 0.5}); }) == ErrorCode::NotOnEllipse);
  CHECK(code_of([] { case1_data(ellipse_from_a(0.5, Branch::Upper)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("property: fraction |y2|^2 = (1+b-a)/(4-3a)") {
  Gen g(32);
  for (int rep = 0; rep < 100; ++rep) {
    const WitnessParams p = g.ellipse(0.0, 1.0);
    const Case1Data d = case1_data(p);
    CHECK(std::abs(d.p * d.p / (d.p * d.p + d.q * d.q) - (1 + p.b - p.a) / (4 - 3 * p.a)) < 1e-12);
  }
}

TEST_CASE("quadratic_second_term") {
  Gen g(33);
  for (int rep = 0; rep < 20; ++rep) CHECK(quadratic_second_term(0.0, g.uniform(0, 2), g.uniform(0, 1)) == 0.0);
  for (int i = 1; i <= 13; ++i) {
    const double a = 0.1 * i;
    const WitnessParams p = ellipse_from_a(a, Branch::Lower);
    CAPTURE(a);
    CHECK(std::abs(quadratic_discriminant(p.a, p.b)) < 1e-12);
  }
}

TEST_CASE("det_wy_factored matches the determinant of W_y") {
  Gen g(34);
  for (int rep = 0; rep < 100; ++rep) {
    const WitnessParams p = rep % 2 ? g.params() : g.ellipse(0, kEllipseMaxA);
    const Complex y2 = g.complex(), y3 = g.complex();
    const CMat wy = partial_trace_second(build_witness(p), {0, y2, y3});
    const Complex det = eigen_det(wy);
    CAPTURE(rep);
    CHECK(std::abs(det - det_wy_factored(p, y2, y3)) < 1e-10 * std::max(1.0, std::abs(det)));
  }
  CHECK(det_wy_factored({1, 0, 1}, 1, 1) == doctest::Approx(1.0));
  const WitnessParams p{0.7, 0.4, 1.1};
  CHECK(det_wy_factored(p, 2, 0) == doctest::Approx(p.a * p.b * p.c * 64));
}

TEST_CASE("the other factor assignment is not the determinant") {
  // b, c exchanged between the quadratic's end coefficients and a^2+ac-1 in the middle
  auto swapped = [](const WitnessParams& p, double t2, double t3) {
    return (p.b * t2 + p.c * t3) * (p.a * p.b * t2 * t2 + (p.a * p.a + p.a * p.c - 1) * t2 * t3 + p.b * p.c * t3 * t3);
  };
  Gen g(35);
  int disagreements = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const WitnessParams p = g.ellipse(0.05, 0.95);
    const Complex y2 = g.complex(), y3 = g.complex();
    const double det = eigen_det(partial_trace_second(build_witness(p), {0, y2, y3})).real();
    disagreements += std::abs(det - swapped(p, std::norm(y2), std::norm(y3))) > 1e-6;
  }
  CHECK(disagreements == 50);
}

TEST_CASE("case2_det_poly") {
  CHECK(case2_det_poly({1, 1, 1}) == 0.0);
  CHECK(case2_det_poly({0, 1, 1}) == 1.0);
  Gen g(36);
  const CMat w = build_witness({1, 0, 1});
  for (int rep = 0; rep < 100; ++rep) {
    const CVec y = g.vec(3);
    const Complex det = eigen_det(partial_trace_second(w, y));
    CHECK(std::abs(det - case2_det_poly(y)) < 1e-10 * std::max(1.0, std::abs(det)));
  }
  CHECK_THROWS_AS(case2_det_poly(CVec(2)), Error);
}

TEST_CASE("case2_det_poly is not the determinant for W[1,1,0]") {
  Gen g(37);
  const CMat w = build_witness({1, 1, 0});
  int disagreements = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const CVec y = g.unit(3);
    disagreements += std::abs(eigen_det(partial_trace_second(w, y)) - case2_det_poly(y)) > 1e-6;
  }
  CHECK(disagreements == 20);
}

TEST_CASE("case1_psi example at a = 0") {
  const ProductVector pv = case1_psi({0, 1, 1}, 1, 0.0);
  const CVec x_expect{0, 2, 2};
  const CVec y_expect{0, std::sqrt(2.0), std::sqrt(2.0)};
  CHECK(max_abs_diff(pv.x, x_expect) < 1e-10);
  CHECK(max_abs_diff(pv.y, y_expect) < 1e-15);
  CHECK(std::abs(expectation(build_witness({0, 1, 1}), pv.x, pv.y)) < 1e-12);
}

TEST_CASE("case1_psi cyclic shifts and kernel property") {
  Gen g(38);
  for (int rep = 0; rep < 60; ++rep) {
    const WitnessParams p = g.ellipse(0.0, 0.999);
    const CMat w = build_witness(p);
    const double phi = g.uniform(-kPi, kPi);
    const Case1Data d = case1_data(p);
    const CVec y1{0, d.p, d.q * std::polar(1.0, phi)};
    const CVec x1{0, d.r * std::polar(1.0, phi), d.s};
    for (int k = 1; k <= 3; ++k) {
      const ProductVector pv = case1_psi(p, k, phi);
      for (std::size_t i = 0; i < 3; ++i) {
        CHECK(pv.y[(i + k - 1) % 3] == y1[i]);
        CHECK(std::abs(pv.x[(i + k - 1) % 3] - x1[i]) < 1e-8);
      }
      const double n2 = norm(pv.x) * norm(pv.x) * norm(pv.y) * norm(pv.y);
      CHECK(std::abs(expectation(w, pv.x, pv.y)) <= 1e-10 * n2);
      CHECK(max_abs(partial_trace_second(w, pv.y) * pv.x) < 1e-10 * std::max(1.0, norm(pv.x)));
    }
  }
  CHECK_THROWS_AS(case1_psi({0, 1, 1}, 0, 0.0), Error);
  CHECK_THROWS_AS(case1_psi({0, 1, 1}, 4, 0.0), Error);
}

TEST_CASE("case2_phi") {
  const CMat w = build_witness({1, 0, 1});
  std::vector<CVec> all = canonical_seven();
  for (int k = 1; k <= 3; ++k) {
    const ProductVector pv = case2_phi(k);
    CHECK(expectation(w, pv.x, pv.y) == 0.0);
    all.push_back(pv.flatten());
  }
  CHECK(max_abs_diff(case2_phi(1).flatten(), CVec::basis(9, 6)) == 0.0);
  CHECK(max_abs_diff(case2_phi(2).flatten(), CVec::basis(9, 1)) == 0.0);
  CHECK(max_abs_diff(case2_phi(3).flatten(), CVec::basis(9, 5)) == 0.0);
  CHECK(gram_rank(all) == 7);
  CHECK_THROWS_AS(case2_phi(0), Error);
}

TEST_CASE("factor-exchanged basis vectors are not zeros of W[1,0,1]") {
  const CMat w = build_witness({1, 0, 1});
  for (int k = 1; k <= 3; ++k) {
    const ProductVector pv = case2_phi(k);
    CHECK(expectation(w, pv.y, pv.x) == doctest::Approx(1.0));
  }
}

TEST_CASE("case-1 vectors tend to the basis product vectors as b -> 0") {
  double previous[3] = {0, 0, 0};
  for (double a : {0.9, 0.99, 0.999, 0.9999}) {
    const WitnessParams p = ellipse_from_a(a, Branch::Lower);
    for (int k = 1; k <= 3; ++k) {
      const CVec psi = case1_psi(p, k, 0.4).flatten();
      const CVec phi = case2_phi((k + 1) % 3 + 1).flatten();
      const double o = overlap(psi, phi);
      CHECK(o > previous[k - 1]);
      previous[k - 1] = o;
    }
  }
  for (double o : previous) CHECK(o > 0.9999);
}

TEST_CASE("reference basis determinant closed form") {
  Gen g(39);
  for (int rep = 0; rep < 20; ++rep) {
    const WitnessParams p = g.ellipse(0.0, 0.999);
    const double phi1 = g.uniform(-kPi, kPi), phi2 = g.uniform(-kPi, kPi);
    const Complex closed = kReferenceDeterminantConstant * basis_determinant_kernel(p, phi1, phi2);
    const Complex det = determinant(reference_basis_matrix(p, phi1, phi2));
    CAPTURE(rep);
    CHECK(std::abs(det - closed) <= 1e-9 * std::abs(closed));
    CHECK(std::abs(det - eigen_det(reference_basis_matrix(p, phi1, phi2))) <= 1e-11 * std::abs(closed));
    const Complex conv = determinant(convention_basis_matrix(p, phi1, phi2));
    CHECK(std::abs(conv - Complex(0, 256) * basis_determinant_kernel(p, phi1, phi2)) <= 1e-9 * std::abs(conv));
    CHECK(std::abs(conv - closed) > 1e-3 * std::abs(closed));
  }
  const WitnessParams choi = ellipse_from_a(1.0, Branch::Lower);
  CHECK(std::abs(determinant(reference_basis_matrix(choi, 0.3, 1.1))) < 1e-6);
}

TEST_CASE("reference table rows 1-3, 5-6 equal the phase products") {
  const CMat m = reference_basis_matrix({0, 1, 1}, 0.3, 1.1);
  const auto seven = canonical_seven();
  for (std::size_t r : {0u, 1u, 2u, 4u, 5u}) CHECK(max_abs_diff(m.row(r), seven[r]) < 1e-15);
  CHECK(max_abs_diff(m.row(3), seven[3]) > 0.5);
  CHECK(max_abs_diff(m.row(6), seven[6]) > 0.5);
}

TEST_CASE("spanning_report examples") {
  const SpanReport r11 = spanning_report({0, 1, 1});
  CHECK(r11.gram_rank == 9);
  CHECK(r11.spanning);
  CHECK(r11.method == SpanMethod::ClosedForm);
  CHECK(r11.vectors.size() == 9);

  for (const WitnessParams p : {WitnessParams{1, 0, 1}, WitnessParams{1, 1, 0}}) {
    const SpanReport r = spanning_report(p);
    CHECK(r.gram_rank == 7);
    CHECK_FALSE(r.spanning);
    const CMat w = build_witness(p);
    for (const auto& v : r.vectors) CHECK(std::abs(inner(v, w * v)) < 1e-13);
  }

  const SpanReport h = spanning_report(ellipse_from_a(0.5, Branch::Lower));
  CHECK(h.gram_rank == 9);
  const Case1Data d = case1_data(ellipse_from_a(0.5, Branch::Lower));
  CHECK(d.q * d.s == doctest::Approx(0.92940).epsilon(1e-4));
  CHECK(d.p * d.r == doctest::Approx(0.92940).epsilon(1e-4));
  CHECK(spanning_report(ellipse_from_a(0.5, Branch::Upper)).gram_rank == 9);
}

TEST_CASE("spanning_report errors and fallback") {
  CHECK(code_of([] { spanning_report({0.5, 0.5, 0.5}); }) == ErrorCode::NotOnEllipse);
  SpanOptions off;
  off.numeric_fallback = false;
  CHECK(code_of([&] { spanning_report(ellipse_from_a(1.2, Branch::Lower), off); }) == ErrorCode::Degenerate);
  SpanOptions on;
  on.n_starts = 40;
  const SpanReport r = spanning_report(ellipse_from_a(1.2, Branch::Lower), on);
  CHECK(r.degenerate);
  CHECK(r.method == SpanMethod::NumericSearch);
  CHECK(r.gram_rank == 7);
}

TEST_CASE("property: spanning vectors are zeros of the witness") {
  Gen g(40);
  for (int rep = 0; rep < 40; ++rep) {
    const WitnessParams p = ellipse_from_a(g.uniform(0, 1), rep % 2 ? Branch::Upper : Branch::Lower);
    SpanOptions opts;
    opts.phi1 = g.uniform(-kPi, kPi);
    opts.phi2 = g.uniform(-kPi, kPi);
    const SpanReport r = spanning_report(p, opts);
    const CMat w = build_witness(p);
    for (const auto& v : r.vectors) CHECK(std::abs(inner(v, w * v)) <= 1e-10 * norm(v) * norm(v));
    CHECK(r.spanning == (r.gram_rank == 9));
  }
}

TEST_CASE("seesaw examples") {
  SeesawOptions opts;
  opts.seed = 41;
  const SeesawResult choi = seesaw_minimize(build_witness({1, 1, 0}), opts);
  CHECK(std::abs(choi.min_value) <= 1e-7);
  const SeesawResult bad = seesaw_minimize(build_witness({0.5, 0.1, 1.4}), opts);
  CHECK(bad.min_value < -1e-4);
  CHECK(bad.min_value == doctest::Approx(-0.0293).epsilon(0.05));
  const SeesawResult id = seesaw_minimize(CMat::identity(9), opts);
  CHECK(id.min_value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(norm(id.argmin.x) == doctest::Approx(1.0));
  CHECK(norm(id.argmin.y) == doctest::Approx(1.0));
}

TEST_CASE("seesaw is monotone, deterministic and parallel-order independent") {
  Gen g(42);
  const CMat w = build_witness({0.6, 0.3, 1.2});
  for (int rep = 0; rep < 30; ++rep) {
    const SeesawRun run = seesaw_run(w, g.unit(3), 200, 1e-12);
    CHECK(run.monotone);
    for (std::size_t i = 1; i < run.trace.size(); ++i) CHECK(run.trace[i] <= run.trace[i - 1] + 1e-12);
    CHECK(run.value <= run.trace.front() + 1e-12);
  }
  SeesawOptions opts;
  opts.seed = 7;
  opts.n_starts = 24;
  const SeesawResult a = seesaw_minimize(w, opts), b = seesaw_minimize(w, opts);
  CHECK(a.min_value == b.min_value);
  CHECK(a.start_values == b.start_values);
  for (int i = 0; i < opts.n_starts; ++i) {
    const SeesawRun single = seesaw_run(w, random_unit_vector(3, opts.seed + i), opts.max_iters, opts.convergence);
    CHECK(single.value == a.start_values[i]);
  }
}

TEST_CASE("numeric_zero_set examples") {
  const SpanReport r = numeric_zero_set({0, 1, 1}, 60, 1e-8, 43);
  CHECK(r.gram_rank >= 7);
  CHECK(r.method == SpanMethod::NumericSearch);
  const SpanReport choi = numeric_zero_set({1, 0, 1}, 60, 1e-8, 44);
  CHECK(choi.gram_rank == 7);
  CHECK_THROWS_AS(numeric_zero_set({0.5, 0.1, 1.4}, 10, 1e-8, 1), Error);
}

TEST_CASE("property: random_unit_vector is seeded and normalized") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const CVec v = random_unit_vector(9, s);
    CHECK(norm(v) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(max_abs_diff(v, random_unit_vector(9, s)) == 0.0);
  }
  CHECK(max_abs_diff(random_unit_vector(3, 1), random_unit_vector(3, 2)) > 0.0);
}
