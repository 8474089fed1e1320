#pragma once

// Dense quadrilinear tensor on V^4, stored flat in lexicographic index order
// (x, y, z, w). flatten() exposes exactly that order, which is the linear
// embedding every rank/dependence computation in the library uses.

#include <vector>

#include "curvtensor/errors.hpp"
#include "curvtensor/matrix.hpp"
#include "curvtensor/scalar.hpp"

namespace curv {

template <typename S>
class CurvatureTensor {
public:
  CurvatureTensor() : n_(0) {}
  explicit CurvatureTensor(int n) : n_(n), e_(idx_count(n), S(0)) {
    if (n < 1) throw ParseError("tensor dimension must be at least 1");
  }

  int dim() const { return n_; }

  S& at(int x, int y, int z, int w) { return e_[offset(x, y, z, w)]; }
  const S& at(int x, int y, int z, int w) const { return e_[offset(x, y, z, w)]; }

  const std::vector<S>& entries() const { return e_; }
  std::vector<S> flatten() const { return e_; }

  // Multilinear evaluation at coordinate vectors.
  S eval(const std::vector<S>& u, const std::vector<S>& v, const std::vector<S>& s,
         const std::vector<S>& t) const {
    S acc(0);
    for (int x = 0; x < n_; ++x) {
      if (u[x] == S(0)) continue;
      for (int y = 0; y < n_; ++y) {
        if (v[y] == S(0)) continue;
        for (int z = 0; z < n_; ++z) {
          if (s[z] == S(0)) continue;
          for (int w = 0; w < n_; ++w) acc += u[x] * v[y] * s[z] * t[w] * at(x, y, z, w);
        }
      }
    }
    return acc;
  }

  CurvatureTensor operator+(const CurvatureTensor& rhs) const {
    check_dim(rhs);
    CurvatureTensor out(*this);
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] += rhs.e_[i];
    return out;
  }

  CurvatureTensor operator-(const CurvatureTensor& rhs) const {
    check_dim(rhs);
    CurvatureTensor out(*this);
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] -= rhs.e_[i];
    return out;
  }

  CurvatureTensor operator-() const {
    CurvatureTensor out(*this);
    for (auto& v : out.e_) v = -v;
    return out;
  }

  CurvatureTensor scaled(const S& c) const {
    CurvatureTensor out(*this);
    for (auto& v : out.e_) v *= c;
    return out;
  }

  bool operator==(const CurvatureTensor& rhs) const { return n_ == rhs.n_ && e_ == rhs.e_; }
  bool operator!=(const CurvatureTensor& rhs) const { return !(*this == rhs); }

  double max_abs() const {
    double m = 0;
    for (const auto& v : e_) {
      const double a = std::fabs(to_double(v));
      if (a > m) m = a;
    }
    return m;
  }

  bool is_zero(double eps = 0) const {
    for (const auto& v : e_)
      if (!scalar_is_zero(v, eps)) return false;
    return true;
  }

  int nonzero_count(double eps = 0) const {
    int c = 0;
    for (const auto& v : e_)
      if (!scalar_is_zero(v, eps)) ++c;
    return c;
  }

  template <typename T>
  CurvatureTensor<T> convert() const {
    CurvatureTensor<T> out(n_);
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y)
        for (int z = 0; z < n_; ++z)
          for (int w = 0; w < n_; ++w) {
            if constexpr (std::is_same_v<T, S>) out.at(x, y, z, w) = at(x, y, z, w);
            else if constexpr (std::is_same_v<T, double>) out.at(x, y, z, w) = to_double(at(x, y, z, w));
            else out.at(x, y, z, w) = rational_from_double(to_double(at(x, y, z, w)));
          }
    return out;
  }

private:
  static size_t idx_count(int n) {
    const size_t m = static_cast<size_t>(n);
    return m * m * m * m;
  }
  size_t offset(int x, int y, int z, int w) const {
    return ((static_cast<size_t>(x) * n_ + y) * n_ + z) * n_ + w;
  }
  void check_dim(const CurvatureTensor& rhs) const {
    if (n_ != rhs.n_) throw ParseError("tensor dimension mismatch");
  }

  int n_;
  std::vector<S> e_;
};

template <typename S>
double tensor_max_deviation(const CurvatureTensor<S>& a, const CurvatureTensor<S>& b) {
  double m = 0;
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  for (size_t i = 0; i < ea.size(); ++i) {
    const double d = std::fabs(to_double(ea[i]) - to_double(eb[i]));
    if (d > m) m = d;
  }
  return m;
}

template <typename S>
bool tensors_near(const CurvatureTensor<S>& a, const CurvatureTensor<S>& b, double eps) {
  if (a.dim() != b.dim()) return false;
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  for (size_t i = 0; i < ea.size(); ++i)
    if (!scalar_near(ea[i], eb[i], eps)) return false;
  return true;
}

// dim of the space of algebraic curvature tensors: n^2 (n^2 - 1) / 12.
inline long act_space_dim(int n) {
  const long m = static_cast<long>(n) * n;
  return m * (m - 1) / 12;
}

}  // namespace curv
