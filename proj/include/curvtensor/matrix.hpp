#pragma once

// Dense matrices over the scalar field, plus the exact elimination routines
// the rest of the library is built on. Exact rank uses fraction-free
// (Bareiss) elimination on denominator-cleared rows so intermediate values
// stay integral; kernels and linear solves use rational RREF. Float-mode
// rank/kernel live in linalg.hpp on top of SVD.

#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "curvtensor/errors.hpp"
#include "curvtensor/scalar.hpp"

namespace curv {

template <typename S>
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols, S fill = S(0))
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw ParseError("negative matrix dimension");
  }
  Matrix(std::initializer_list<std::initializer_list<S>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    data_.reserve(static_cast<size_t>(rows_) * cols_);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) throw ParseError("ragged matrix literal");
      for (const auto& v : r) data_.push_back(v);
    }
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  S& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const S& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  const std::vector<S>& data() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw ParseError("matrix product shape mismatch");
    Matrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const S& a = (*this)(i, k);
        if (a == S(0)) continue;
        for (int j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
      }
    return out;
  }

  Matrix operator+(const Matrix& rhs) const {
    check_same_shape(rhs);
    Matrix out(*this);
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
    return out;
  }

  Matrix operator-(const Matrix& rhs) const {
    check_same_shape(rhs);
    Matrix out(*this);
    for (size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
    return out;
  }

  Matrix operator-() const {
    Matrix out(*this);
    for (auto& v : out.data_) v = -v;
    return out;
  }

  Matrix scaled(const S& c) const {
    Matrix out(*this);
    for (auto& v : out.data_) v *= c;
    return out;
  }

  bool operator==(const Matrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
  }
  bool operator!=(const Matrix& rhs) const { return !(*this == rhs); }

  std::vector<S> apply(const std::vector<S>& x) const {
    if (static_cast<int>(x.size()) != cols_) throw ParseError("matrix-vector shape mismatch");
    std::vector<S> y(rows_, S(0));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& v : data_) {
      const double a = std::fabs(to_double(v));
      if (a > m) m = a;
    }
    return m;
  }

  bool is_zero(double eps = 0) const {
    for (const auto& v : data_)
      if (!scalar_is_zero(v, eps)) return false;
    return true;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if ((*this)(i, j) != S(i == j ? 1 : 0)) return false;
    return true;
  }

  // Row-major flattening; the standard embedding of operators into vectors.
  std::vector<S> vec() const { return data_; }

  template <typename T>
  Matrix<T> convert() const {
    Matrix<T> out(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) {
        if constexpr (std::is_same_v<T, S>) out(i, j) = (*this)(i, j);
        else if constexpr (std::is_same_v<T, double>) out(i, j) = to_double((*this)(i, j));
        else out(i, j) = rational_from_double(to_double((*this)(i, j)));
      }
    return out;
  }

private:
  void check_same_shape(const Matrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ParseError("matrix shape mismatch");
  }

  int rows_, cols_;
  std::vector<S> data_;
};

// ---------------------------------------------------------------------------
// Exact elimination.

// Fraction-free elimination after clearing row denominators. Intermediate
// entries are minors of the integer matrix, so every division is exact.
inline int bareiss_rank(const Matrix<Rational>& m) {
  const int rows = m.rows(), cols = m.cols();
  if (rows == 0 || cols == 0) return 0;
  std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
  for (int i = 0; i < rows; ++i) {
    BigInt l(1);
    for (int j = 0; j < cols; ++j) l = lcm(l, denominator(m(i, j)));
    for (int j = 0; j < cols; ++j) {
      const Rational v = m(i, j) * Rational(l);
      a[i][j] = numerator(v);
    }
  }
  BigInt prev(1);
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][col] != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(a[piv], a[r]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = col + 1; j < cols; ++j)
        a[i][j] = (a[r][col] * a[i][j] - a[i][col] * a[r][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[r][col];
    ++r;
  }
  return r;
}

// Reduced row echelon form in place; returns pivot column indices.
inline std::vector<int> rref(Matrix<Rational>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int col = 0; col < m.cols() && r < m.rows(); ++col) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const Rational inv = Rational(1) / m(r, col);
    for (int j = col; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

// Basis for {x : Mx = 0}, one vector per free column.
inline std::vector<std::vector<Rational>> exact_kernel(const Matrix<Rational>& m) {
  Matrix<Rational> red = m;
  const std::vector<int> pivots = rref(red);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[f] = 1;
    for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -red(static_cast<int>(k), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Particular solution of Mx = b with free variables set to zero, or nullopt
// when the system is inconsistent.
inline std::optional<std::vector<Rational>> exact_solve(const Matrix<Rational>& m,
                                                        const std::vector<Rational>& b) {
  if (static_cast<int>(b.size()) != m.rows()) throw ParseError("solve shape mismatch");
  Matrix<Rational> aug(m.rows(), m.cols() + 1);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const std::vector<int> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  std::vector<Rational> x(m.cols(), Rational(0));
  for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(static_cast<int>(k), m.cols());
  return x;
}

// Gauss-Jordan inverse. Exact mode rejects any zero pivot; float callers pass
// a singularity threshold scaled to the matrix.
template <typename S>
std::optional<Matrix<S>> inverse(const Matrix<S>& m, double eps = 0) {
  if (!m.square()) throw ParseError("inverse of non-square matrix");
  const int n = m.rows();
  Matrix<S> a = m, inv = Matrix<S>::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    if constexpr (is_exact_v<S>) {
      for (int i = col; i < n; ++i)
        if (a(i, col) != 0) { piv = i; break; }
    } else {
      double best = eps;
      for (int i = col; i < n; ++i) {
        const double mag = std::fabs(to_double(a(i, col)));
        if (mag > best) { best = mag; piv = i; }
      }
    }
    if (piv < 0) return std::nullopt;
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const S d = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      const S f = a(i, col);
      if (f == S(0)) continue;
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// Max |a_ij - b_ij| as a double; used for tolerance reporting in both modes.
template <typename S>
double max_abs_diff(const Matrix<S>& a, const Matrix<S>& b) {
  double m = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const double d = std::fabs(to_double(a(i, j)) - to_double(b(i, j)));
      if (d > m) m = d;
    }
  return m;
}

template <typename S>
bool matrices_near(const Matrix<S>& a, const Matrix<S>& b, double eps) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!scalar_near(a(i, j), b(i, j), eps)) return false;
  return true;
}

}  // namespace curv
