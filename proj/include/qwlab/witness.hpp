#pragma once

// The two-qutrit witness family W[a,b,c]: construction, the membership and
// decomposability test for the family, the ellipse a+b+c=2, bc=(1-a)^2, and
// the partial-trace reductions that drive the product-vector analysis.

#include <optional>
#include <string_view>
#include <vector>

#include "qwlab/linalg.hpp"

namespace qwlab {

inline constexpr double kDefaultClassifyTol = 1e-12;
/// Largest a on the ellipse (the point b = c = 1/3).
inline constexpr double kEllipseMaxA = 4.0 / 3.0;

struct WitnessParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// Throws InvalidArgument unless a, b, c are finite and nonnegative.
void validate(const WitnessParams& p);

/// The three membership conditions of the family.
enum class Condition {
  ARange,          // 0 <= a < 2
  SumAtLeastTwo,   // a + b + c >= 2
  ProductBound,    // a <= 1  =>  bc >= (1 - a)^2
};

std::string_view to_string(Condition c);

struct Classification {
  bool is_witness = false;
  /// Empty when is_witness is false.
  std::optional<bool> indecomposable;
  bool on_ellipse = false;
  bool is_psd = false;
  std::vector<Condition> failed_conditions;
};

enum class Branch { Lower, Upper };

std::string_view to_string(Branch b);

/// 9x9 real symmetric matrix with diagonal (a,b,c | c,a,b | b,c,a) and -1 at
/// the off-diagonal pairs among indices {0, 4, 8}. Unnormalized.
CMat build_witness(const WitnessParams& p);

/// Membership conditions checked with tolerance on their closed sides.
bool satisfies_witness_conditions(const WitnessParams& p, double tol,
                                  std::vector<Condition>* failed = nullptr);

Classification classify(const WitnessParams& p, double tol = kDefaultClassifyTol);

/// |b^2 + bc + c^2 - 2b - 2c + 1| <= tol.
bool on_ellipse(double b, double c, double tol);
double ellipse_residual(double b, double c);

/// Ellipse point with given a in [0, 4/3]. Lower branch has b <= c.
WitnessParams ellipse_from_a(double a, Branch branch);

/// W_y[j][k] = sum_{m,n} W[(j,m),(k,n)] y_n conj(y_m); <x|W_y|x> = <x(x)y|W|x(x)y>.
CMat partial_trace_second(const CMat& w, const CVec& y);

/// W_x[m][n] = sum_{j,k} conj(x_j) x_k W[(j,m),(k,n)]; <y|W_x|y> = <x(x)y|W|x(x)y>.
CMat partial_trace_first(const CMat& w, const CVec& x);

/// Closed form of partial_trace_second(build_witness(p), y):
/// diag((a+1)|y1|^2 + b|y2|^2 + c|y3|^2, ...) - |y*><y*|.
CMat reduction_closed_form(const WitnessParams& p, const CVec& y);

/// <x(x)y|W|x(x)y>. Throws Numeric if the imaginary part exceeds
/// 1e-10 (|x||y|)^2 max(1, max|W|).
double expectation(const CMat& w, const CVec& x, const CVec& y);

}  // namespace qwlab
