#pragma once

// Zero-expectation product vectors of the ellipse witnesses and the spanning
// test built on them, plus a see-saw minimizer over product states that finds
// such vectors (and negative expectations) without any closed form.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qwlab/linalg.hpp"
#include "qwlab/witness.hpp"

namespace qwlab {

/// x (x) y with flatten index 3 i + j for x_i y_j (zero based).
struct ProductVector {
  CVec x;
  CVec y;

  CVec flatten() const { return kron(x, y); }
};

struct PhaseTriple {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// y = (e^{i alpha}, e^{i beta}, e^{i gamma}), x = conj(y).
ProductVector phase_product(const PhaseTriple& t);

const std::array<PhaseTriple, 7>& canonical_triples();

/// Flattened phase products of canonical_triples(); they span a 7-dim subspace.
std::vector<CVec> canonical_seven();

struct Case1Data {
  double p = 0.0;  // sqrt(1 + b - a)
  double q = 0.0;  // sqrt(3 - b - 2a)
  double r = 0.0;  // p q
  double s = 0.0;  // a p^2 + b q^2
};

/// Requires an ellipse point with b <= c and a <= 1. The point a = 4/3 and
/// the inner arc 1 < a < 4/3 (where 1 + b - a < 0) throw Degenerate.
Case1Data case1_data(const WitnessParams& p);

/// Second factor of det W_y for y = (0, y2, y3) with ||y|| = 1, t = |y2|^2:
/// a(4 - 3a) t^2 + 2a(a - b - 1) t + ab.
double quadratic_second_term(double a, double b, double t);

/// Discriminant of quadratic_second_term in t.
double quadratic_discriminant(double a, double b);

/// det W_y for y = (0, y2, y3) in factored form:
/// (b|y2|^2 + c|y3|^2) (ac|y2|^4 + (a^2 + bc - 1)|y2|^2|y3|^2 + ab|y3|^4).
double det_wy_factored(const WitnessParams& p, Complex y2, Complex y3);

/// det W_y for W[1,0,1]:
/// |y1|^4|y2|^2 + |y2|^4|y3|^2 + |y3|^4|y1|^2 - 3|y1|^2|y2|^2|y3|^2.
double case2_det_poly(const CVec& y);

/// Zero-expectation product vector with y having its zero in slot k (1..3):
/// for k = 1, y = (0, p, q e^{i phi}) and x spans ker W_y, scaled to
/// (0, r e^{i phi}, s). k = 2, 3 are the cyclic shifts.
ProductVector case1_psi(const WitnessParams& p, int k, double phi);

/// Zero product vectors of W[1,0,1] with a zero coordinate in y:
/// k=1: (0,0,1)(x)(1,0,0), k=2: (1,0,0)(x)(0,1,0), k=3: (0,1,0)(x)(0,0,1).
ProductVector case2_phi(int k);

/// The 9x9 reference basis table:
/// seven phase rows (rows 4 and 7 carry entries that differ from
/// phase_product) followed by two Case-1 rows in y (x) x ordering.
CMat reference_basis_matrix(const WitnessParams& p, double phi1, double phi2);

/// The same construction from this library's own vectors: canonical_seven()
/// followed by flatten(case1_psi(p, 1, phi1)) and flatten(case1_psi(p, 2, phi2)).
CMat convention_basis_matrix(const WitnessParams& p, double phi1, double phi2);

/// e^{i(phi1 + phi2)} [(qs)^2 + (pr)^2 - qs pr]; the reference table determinant is
/// (-32 + 160i) times this.
Complex basis_determinant_kernel(const WitnessParams& p, double phi1, double phi2);
inline const Complex kReferenceDeterminantConstant{-32.0, 160.0};

enum class SpanMethod { ClosedForm, NumericSearch };

std::string_view to_string(SpanMethod m);

struct SpanReport {
  WitnessParams params;
  std::vector<CVec> vectors;
  int gram_rank = 0;
  bool spanning = false;
  SpanMethod method = SpanMethod::ClosedForm;
  /// True where the closed-form construction is unavailable (a > 1).
  bool degenerate = false;
  std::string notes;
};

struct SeesawOptions {
  int n_starts = 64;
  int max_iters = 200;
  std::uint64_t seed = 0;
  double convergence = 1e-12;
};

struct SeesawResult {
  double min_value = 0.0;
  ProductVector argmin;
  bool converged = true;   // every start converged within max_iters
  bool monotone = true;    // every start was non-increasing per half-step
  int unconverged_starts = 0;
  std::vector<double> start_values;  // best value per start, in start order
  std::string notes;
};

struct SeesawRun {
  double value = 0.0;
  ProductVector argmin;
  bool converged = false;
  bool monotone = true;
  std::vector<double> trace;  // expectation after each half-step
};

/// One alternating run from the unit start vector y0.
SeesawRun seesaw_run(const CMat& w, const CVec& y0, int max_iters, double convergence);

/// Best of n_starts runs; start i uses seed + i. Starts may run in parallel.
SeesawResult seesaw_minimize(const CMat& w, const SeesawOptions& opts = {});

inline constexpr double kDefaultZeroTol = 1e-8;

/// Collects see-saw minimizers with expectation <= zero_tol and reports the
/// rank of their span.
SpanReport numeric_zero_set(const WitnessParams& p, int n_starts, double zero_tol,
                            std::uint64_t seed);

struct SpanOptions {
  double phi1 = 0.3;
  double phi2 = 1.1;
  bool numeric_fallback = true;
  int n_starts = 64;
  double zero_tol = kDefaultZeroTol;
  std::uint64_t seed = 0;
  double ellipse_tol = 1e-9;
};

/// Spanning test for an ellipse point. Outer arc (a <= 1): closed-form
/// vectors; Choi points (b,c) = (0,1), (1,0) use the Phi set. Inner arc
/// (a > 1) falls back to numeric_zero_set, or throws Degenerate if disabled.
SpanReport spanning_report(const WitnessParams& p, const SpanOptions& opts = {});

/// Random unit vector with i.i.d. complex Gaussian entries, seeded.
CVec random_unit_vector(std::size_t dim, std::uint64_t seed);

}  // namespace qwlab
