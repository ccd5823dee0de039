#pragma once

// Dense complex linear algebra for the small (3 and 9 dimensional) objects
// used throughout the library. Everything is a pure function of its inputs.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qwlab {

using Complex = std::complex<double>;

inline constexpr double kDefaultRankTol = 1e-9;
inline constexpr double kDefaultHermiticityTol = 1e-10;

class CVec {
 public:
  CVec() = default;
  explicit CVec(std::size_t dim) : data_(dim) {}
  CVec(std::initializer_list<Complex> xs) : data_(xs) {}
  explicit CVec(std::vector<Complex> xs) : data_(std::move(xs)) {}

  std::size_t dim() const noexcept { return data_.size(); }
  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }
  std::span<const Complex> entries() const noexcept { return data_; }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  static CVec basis(std::size_t dim, std::size_t k);

 private:
  std::vector<Complex> data_;
};

class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  /// Row-major nested initializer: CMat{{1, 2}, {3, 4}}.
  CMat(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMat identity(std::size_t n);
  static CMat diagonal(std::span<const Complex> d);
  /// Rows of the result are the given vectors.
  static CMat from_rows(std::span<const CVec> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const Complex> entries() const noexcept { return data_; }

  CVec row(std::size_t i) const;
  CVec col(std::size_t j) const;
  double max_abs() const noexcept;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMat operator*(const CMat& a, const CMat& b);
CVec operator*(const CMat& a, const CVec& v);
CMat operator+(const CMat& a, const CMat& b);
CMat operator-(const CMat& a, const CMat& b);
CMat operator*(Complex s, const CMat& a);
CVec operator*(Complex s, const CVec& v);
CVec operator+(const CVec& u, const CVec& v);
CVec operator-(const CVec& u, const CVec& v);

CMat adjoint(const CMat& a);
CMat outer(const CVec& u, const CVec& v);  // |u><v|
Complex inner(const CVec& u, const CVec& v);  // <u|v>, antilinear in u
double norm(const CVec& v);
CVec normalized(const CVec& v);
CVec conj(const CVec& v);
double max_abs(const CVec& v) noexcept;
Complex trace(const CMat& a);

CMat kron(const CMat& a, const CMat& b);
CVec kron(const CVec& u, const CVec& v);

/// LU with partial pivoting. Throws InvalidArgument for non-square input.
Complex determinant(const CMat& a);

/// max_{jk} |H_jk - conj(H_kj)|.
double hermitian_asymmetry(const CMat& h);

struct Eigensystem {
  std::vector<double> values;  // ascending
  std::vector<CVec> vectors;   // orthonormal, vectors[k] pairs with values[k]
};

/// Cyclic Jacobi. The asymmetry check is relative to max|H|; rejected input
/// reports the measured asymmetry in the error message.
Eigensystem hermitian_eigen(const CMat& h, double hermiticity_tol = kDefaultHermiticityTol);

/// Eigenvectors with |lambda| <= rank_tol * max(1, max|lambda|).
std::vector<CVec> nullspace(const CMat& h, double rank_tol = kDefaultRankTol);

/// Dimension of span(vs): eigenvalues of the Gram matrix above
/// rank_tol * (largest eigenvalue). Mixed dimensions are rejected.
int gram_rank(std::span<const CVec> vs, double rank_tol = kDefaultRankTol);

/// Eigenvalues (descending) of the Gram matrix <v_j|v_k>, without zero padding
/// beyond min(n, dim) entries.
std::vector<double> gram_spectrum(std::span<const CVec> vs);

}  // namespace qwlab
