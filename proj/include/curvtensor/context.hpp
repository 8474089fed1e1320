#pragma once

// SpaceContext fixes the ambient data every operation depends on: the
// dimension, the symmetric positive definite form phi, and the arithmetic
// mode. The float tolerance rides along for S = double and is ignored by
// exact arithmetic.

#include <string>

#include "curvtensor/errors.hpp"
#include "curvtensor/matrix.hpp"
#include "curvtensor/scalar.hpp"

namespace curv {

enum class Mode { Exact, Float64 };

inline std::string mode_name(Mode m) { return m == Mode::Exact ? "exact" : "float64"; }

constexpr double kDefaultTolerance = 1e-9;

template <typename S>
class SpaceContext {
public:
  SpaceContext(int dim, Matrix<S> phi, double tolerance = kDefaultTolerance)
      : dim_(dim), phi_(std::move(phi)), tol_(tolerance) {
    validate();
    auto inv = inverse(phi_, tol_ * (1 + phi_.max_abs()));
    if (!inv) throw ContextError("phi is singular");
    phi_inv_ = std::move(*inv);
  }

  static SpaceContext standard(int dim, double tolerance = kDefaultTolerance) {
    return SpaceContext(dim, Matrix<S>::identity(dim), tolerance);
  }

  int dim() const { return dim_; }
  const Matrix<S>& phi() const { return phi_; }
  const Matrix<S>& phi_inverse() const { return phi_inv_; }
  double tolerance() const { return tol_; }

  static constexpr Mode mode() { return is_exact_v<S> ? Mode::Exact : Mode::Float64; }

  // phi(x, y) for coordinate vectors.
  S inner(const std::vector<S>& x, const std::vector<S>& y) const {
    S acc(0);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) acc += x[i] * phi_(i, j) * y[j];
    return acc;
  }

  // Entrywise comparison threshold at a given magnitude scale. Exact mode
  // compares exactly, so the value is only consulted when S = double.
  double eps_at(double scale) const { return tol_ * (1 + scale); }

private:
  void validate() const {
    if (dim_ < 1) throw ContextError("dimension must be at least 1");
    if (phi_.rows() != dim_ || phi_.cols() != dim_)
      throw ContextError("phi shape does not match dimension");
    const double eps = tol_ * (1 + phi_.max_abs());
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        if (!scalar_near(phi_(i, j), phi_(j, i), eps))
          throw ContextError("phi is not symmetric");
    if constexpr (is_exact_v<S>) {
      // Positive leading principal minors, computed fraction-free: the
      // Bareiss pivot sequence on a matrix needing no row swaps is exactly
      // the sequence of leading minors.
      if (!leading_minors_positive()) throw ContextError("phi is not positive definite");
    } else {
      if (!cholesky_ok()) throw ContextError("phi is not positive definite");
    }
  }

  bool leading_minors_positive() const {
    Matrix<Rational> a = phi_;
    Rational prev(1);
    for (int k = 0; k < dim_; ++k) {
      if (a(k, k) <= 0) return false;
      for (int i = k + 1; i < dim_; ++i) {
        for (int j = k + 1; j < dim_; ++j)
          a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
        a(i, k) = 0;
      }
      prev = a(k, k);
    }
    return true;
  }

  bool cholesky_ok() const {
    Matrix<double> a = phi_.template convert<double>();
    const int n = dim_;
    for (int k = 0; k < n; ++k) {
      double d = a(k, k);
      for (int j = 0; j < k; ++j) d -= a(k, j) * a(k, j);
      if (d <= 0) return false;
      a(k, k) = std::sqrt(d);
      for (int i = k + 1; i < n; ++i) {
        double v = a(i, k);
        for (int j = 0; j < k; ++j) v -= a(i, j) * a(k, j);
        a(i, k) = v / a(k, k);
      }
    }
    return true;
  }

  int dim_;
  Matrix<S> phi_;
  Matrix<S> phi_inv_;
  double tol_;
};

}  // namespace curv
