#include "qwlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qwlab/error.hpp"

namespace qwlab {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

double frobenius_off_diagonal(const CMat& h) {
  double acc = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (i != j) acc += std::norm(h(i, j));
  return std::sqrt(acc);
}

double frobenius(const CMat& h) {
  double acc = 0.0;
  for (const auto& z : h.entries()) acc += std::norm(z);
  return std::sqrt(acc);
}

}  // namespace

CVec CVec::basis(std::size_t dim, std::size_t k) {
  CVec e(dim);
  e[k] = 1.0;
  return e;
}

CMat::CMat(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    require(r.size() == cols_, "ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMat CMat::identity(std::size_t n) {
  CMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::diagonal(std::span<const Complex> d) {
  CMat m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMat CMat::from_rows(std::span<const CVec> rows) {
  if (rows.empty()) return {};
  CMat m(rows.size(), rows.front().dim());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].dim() == m.cols(), "rows of different length");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

CVec CMat::row(std::size_t i) const {
  CVec v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

CVec CMat::col(std::size_t j) const {
  CVec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

double CMat::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

CMat operator*(const CMat& a, const CMat& b) {
  require(a.cols() == b.rows(), "matrix product dimension mismatch");
  CMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

CVec operator*(const CMat& a, const CVec& v) {
  require(a.cols() == v.dim(), "matrix-vector dimension mismatch");
  CVec out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

CMat operator+(const CMat& a, const CMat& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), "matrix sum dimension mismatch");
  CMat c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

CMat operator-(const CMat& a, const CMat& b) { return a + Complex(-1.0) * b; }

CMat operator*(Complex s, const CMat& a) {
  CMat c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

CVec operator*(Complex s, const CVec& v) {
  CVec out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = s * v[i];
  return out;
}

CVec operator+(const CVec& u, const CVec& v) {
  require(u.dim() == v.dim(), "vector sum dimension mismatch");
  CVec out(u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) out[i] = u[i] + v[i];
  return out;
}

CVec operator-(const CVec& u, const CVec& v) { return u + Complex(-1.0) * v; }

CMat adjoint(const CMat& a) {
  CMat t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

CMat outer(const CVec& u, const CVec& v) {
  CMat m(u.dim(), v.dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

Complex inner(const CVec& u, const CVec& v) {
  require(u.dim() == v.dim(), "inner product dimension mismatch");
  Complex acc{};
  for (std::size_t i = 0; i < u.dim(); ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

double norm(const CVec& v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return std::sqrt(acc);
}

CVec normalized(const CVec& v) {
  const double n = norm(v);
  require(n > 0.0, "cannot normalize the zero vector");
  return Complex(1.0 / n) * v;
}

CVec conj(const CVec& v) {
  CVec out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = std::conj(v[i]);
  return out;
}

double max_abs(const CVec& v) noexcept {
  double m = 0.0;
  for (const auto& z : v) m = std::max(m, std::abs(z));
  return m;
}

Complex trace(const CMat& a) {
  require(a.square(), "trace of non-square matrix");
  Complex t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

CVec kron(const CVec& u, const CVec& v) {
  CVec out(u.dim() * v.dim());
  for (std::size_t i = 0; i < u.dim(); ++i)
    for (std::size_t j = 0; j < v.dim(); ++j) out[i * v.dim() + j] = u[i] * v[j];
  return out;
}

Complex determinant(const CMat& a) {
  require(a.square(), "determinant of non-square matrix");
  CMat lu = a;
  const std::size_t n = lu.rows();
  Complex det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    if (lu(piv, k) == Complex{}) return Complex{};
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      det = -det;
    }
    det *= lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu(i, k) / lu(k, k);
      for (std::size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return det;
}

double hermitian_asymmetry(const CMat& h) {
  double m = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = i; j < h.cols(); ++j)
      m = std::max(m, std::abs(h(i, j) - std::conj(h(j, i))));
  return m;
}

Eigensystem hermitian_eigen(const CMat& h, double hermiticity_tol) {
  require(h.square(), "eigendecomposition of non-square matrix");
  const double scale = h.max_abs();
  const double asym = hermitian_asymmetry(h);
  if (asym > hermiticity_tol * scale) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian: asymmetry " << asym << " exceeds " << hermiticity_tol
        << " * " << scale;
    throw Error(ErrorCode::InvalidArgument, msg.str());
  }

  const std::size_t n = h.rows();
  // Work on the exactly Hermitian part.
  CMat a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
  CMat v = CMat::identity(n);

  const double threshold = 1e-14 * frobenius(a);
  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps && frobenius_off_diagonal(a) > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Phase out a_pq, then rotate the resulting real symmetric 2x2 block.
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Unitary U on (p, q): [[c, s], [-s conj(phase), c conj(phase)]].
        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }
  if (frobenius_off_diagonal(a) > threshold)
    throw Error(ErrorCode::Numeric, "Jacobi iteration did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  Eigensystem es;
  es.values.reserve(n);
  es.vectors.reserve(n);
  for (std::size_t k : order) {
    es.values.push_back(a(k, k).real());
    es.vectors.push_back(v.col(k));
  }
  return es;
}

std::vector<CVec> nullspace(const CMat& h, double rank_tol) {
  const Eigensystem es = hermitian_eigen(h);
  double largest = 0.0;
  for (double l : es.values) largest = std::max(largest, std::abs(l));
  const double cutoff = rank_tol * std::max(1.0, largest);
  std::vector<CVec> out;
  for (std::size_t k = 0; k < es.values.size(); ++k)
    if (std::abs(es.values[k]) <= cutoff) out.push_back(es.vectors[k]);
  return out;
}

std::vector<double> gram_spectrum(std::span<const CVec> vs) {
  if (vs.empty()) return {};
  const std::size_t dim = vs.front().dim();
  for (const auto& v : vs) require(v.dim() == dim, "vectors of mixed dimension");

  CMat g;
  if (vs.size() <= dim) {
    g = CMat(vs.size(), vs.size());
    for (std::size_t j = 0; j < vs.size(); ++j)
      for (std::size_t k = 0; k < vs.size(); ++k) g(j, k) = inner(vs[j], vs[k]);
  } else {
    // V V^dagger shares the nonzero spectrum of the Gram matrix V^dagger V.
    g = CMat(dim, dim);
    for (const auto& v : vs)
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) += v[i] * std::conj(v[j]);
  }
  std::vector<double> values = hermitian_eigen(g).values;
  std::reverse(values.begin(), values.end());
  return values;
}

int gram_rank(std::span<const CVec> vs, double rank_tol) {
  const std::vector<double> spectrum = gram_spectrum(vs);
  if (spectrum.empty() || spectrum.front() <= 0.0) return 0;
  const double cutoff = rank_tol * spectrum.front();
  return static_cast<int>(
      std::count_if(spectrum.begin(), spectrum.end(), [&](double l) { return l > cutoff; }));
}

}  // namespace qwlab
