// Cross-module properties on seeded random inputs.

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "gen.hpp"
#include "qwlab/optimality.hpp"
#include "qwlab/witness.hpp"

using namespace qwlab;
using qwlab::test::Gen;

namespace {

constexpr double kPi = std::numbers::pi;

double seesaw_min(const WitnessParams& p, std::uint64_t seed, int starts = 16) {
  SeesawOptions opts;
  opts.n_starts = starts;
  opts.seed = seed;
  return seesaw_minimize(build_witness(p), opts).min_value;
}

}  // namespace

TEST_CASE("property: members of the family are block positive") {
  Gen g(51);
  int checked = 0;
  while (checked < 80) {
    const WitnessParams p{g.uniform(0, 2), g.uniform(0, 2), g.uniform(0, 2)};
    if (!satisfies_witness_conditions(p, 0.0)) continue;
    CAPTURE(p.a);
    CAPTURE(p.b);
    CAPTURE(p.c);
    CHECK(seesaw_min(p, 1000 + checked) >= -1e-7);
    ++checked;
  }
}

TEST_CASE("property: violating only the product bound gives a negative product expectation") {
  Gen g(52);
  int checked = 0;
  while (checked < 80) {
    const double a = g.uniform(0, 1), b = g.uniform(0, 2), c = g.uniform(0, 2);
    const WitnessParams p{a, b, c};
    if (a + b + c < 2 || b * c >= (1 - a) * (1 - a) - 0.02) continue;
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(c);
    CHECK(seesaw_min(p, 2000 + checked) < -1e-4);
    ++checked;
  }
}

TEST_CASE("property: constructed vectors are zeros of their witness") {
  Gen g(53);
  for (int rep = 0; rep < 100; ++rep) {
    const WitnessParams p = g.ellipse(0, 0.999);
    const CMat w = build_witness(p);
    const PhaseTriple t{g.uniform(-kPi, kPi), g.uniform(-kPi, kPi), g.uniform(-kPi, kPi)};
    const ProductVector ph = phase_product(t);
    CHECK(std::abs(expectation(w, ph.x, ph.y)) <= 1e-10 * std::pow(norm(ph.flatten()), 2));
    for (int k = 1; k <= 3; ++k) {
      const ProductVector psi = case1_psi(p, k, g.uniform(-kPi, kPi));
      CHECK(std::abs(expectation(w, psi.x, psi.y)) <= 1e-10 * std::pow(norm(psi.flatten()), 2));
    }
  }
  const CMat choi = build_witness({1, 0, 1});
  for (int k = 1; k <= 3; ++k) {
    const ProductVector phi = case2_phi(k);
    CHECK(expectation(choi, phi.x, phi.y) == 0.0);
  }
}

TEST_CASE("property: an eighth phase vector never raises the rank") {
  Gen g(54);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<CVec> vs = canonical_seven();
    vs.push_back(phase_product({g.uniform(-kPi, kPi), g.uniform(-kPi, kPi), g.uniform(-kPi, kPi)}).flatten());
    CHECK(gram_rank(vs) == 7);
  }
}

TEST_CASE("property: spanning rank is invariant under b <-> c") {
  Gen g(55);
  for (int rep = 0; rep < 40; ++rep) {
    const double a = g.uniform(0, 1);
    const WitnessParams lo = ellipse_from_a(a, Branch::Lower), hi = ellipse_from_a(a, Branch::Upper);
    CHECK(spanning_report(lo).gram_rank == spanning_report(hi).gram_rank);
  }
  CHECK(spanning_report({1, 0, 1}).gram_rank == spanning_report({1, 1, 0}).gram_rank);
}

TEST_CASE("property: reference determinant is nonzero for 0 < b < c") {
  Gen g(56);
  for (int rep = 0; rep < 100; ++rep) {
    const WitnessParams p = g.ellipse(0.001, 0.999);
    REQUIRE(p.b > 0);
    REQUIRE(p.b < p.c);
    const double phi1 = g.uniform(-kPi, kPi), phi2 = g.uniform(-kPi, kPi);
    const Complex det = determinant(reference_basis_matrix(p, phi1, phi2));
    const Complex closed = kReferenceDeterminantConstant * basis_determinant_kernel(p, phi1, phi2);
    CHECK(std::abs(det) > 0);
    CHECK(std::abs(det - closed) <= 1e-9 * std::abs(closed));
  }
}

TEST_CASE("property: case2_det_poly is nonnegative and vanishes on its zero manifold") {
  Gen g(57);
  double lowest = 1;
  for (int rep = 0; rep < 10000; ++rep) {
    const CVec y = g.unit(3);
    const double v = case2_det_poly(y);
    CHECK(v >= -1e-12);
    lowest = std::min(lowest, v);
  }
  CHECK(lowest >= -1e-12);
  for (int rep = 0; rep < 500; ++rep) {
    CHECK(std::abs(case2_det_poly(Complex(g.uniform(0.1, 3)) * g.phases(3))) < 1e-10 * 30);
    CVec two(3);
    two[g.integer(0, 2)] = g.complex();
    CHECK(case2_det_poly(two) == 0.0);
  }
  // strictly positive off the manifold
  for (int rep = 0; rep < 500; ++rep) {
    CVec y = g.phases(3);
    y[g.integer(0, 2)] *= g.uniform(1.1, 2.0);
    CHECK(case2_det_poly(y) > 1e-6);
  }
}

TEST_CASE("property: see-saw runs are monotone for every start") {
  Gen g(58);
  for (int rep = 0; rep < 30; ++rep) {
    const CMat w = build_witness(g.params());
    SeesawOptions opts;
    opts.n_starts = 8;
    opts.seed = 100 + rep;
    CHECK(seesaw_minimize(w, opts).monotone);
  }
}
