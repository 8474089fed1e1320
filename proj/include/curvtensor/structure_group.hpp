#pragma once

// Bilinear forms tau(x, y) = phi(Bx, y), their pullbacks, and the three
// invariance groups attached to an anti-symmetric tau:
//
//   G_tau      = { A in GL : tau(Ax, Ay) = tau(x, y) }
//   G^pm_tau   = { A in GL : tau(Ax, Ay) = +-tau(x, y) }
//   G_{R^L_tau} = { A in GL : R^L_tau(Ax, Ay, Az, Aw) = R^L_tau(x, y, z, w) }
//
// For rank(tau) >= 4 the last two coincide; verify_structure_theorem samples
// witnesses from an isometry pool, an anti-isometry pool, and a generic pool
// and checks the equivalence on every sample.
//
// In coordinates the form matrix is T = B^T phi (tau(x,y) = x^T T y) and the
// pullback under A is T' = A^T T A, i.e. the operator A* B A.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvtensor/context.hpp"
#include "curvtensor/curvature.hpp"
#include "curvtensor/errors.hpp"
#include "curvtensor/linalg.hpp"
#include "curvtensor/rng.hpp"

namespace curv {

template <typename S>
struct FormView {
  Operator<S> op;  // kind SelfAdjoint <=> symmetric form, SkewAdjoint <=> anti-symmetric

  FormView() = default;
  FormView(const SpaceContext<S>& ctx, Operator<S> o) : op(std::move(o)) {
    if (op.kind == OperatorKind::General)
      throw ParseError("a form requires a self-adjoint or skew-adjoint operator");
    if constexpr (is_exact_v<S>) validate_kind(ctx, op);
  }

  Matrix<S> form_matrix(const SpaceContext<S>& ctx) const {
    return op.mat.transpose() * ctx.phi();
  }

  bool anti_symmetric() const { return op.kind == OperatorKind::SkewAdjoint; }
};

// Build the view from the matrix of the form itself (T with tau(x,y)=x^T T y).
template <typename S>
FormView<S> form_from_matrix(const SpaceContext<S>& ctx, const Matrix<S>& t) {
  const double eps = ctx.eps_at(t.max_abs());
  OperatorKind kind;
  if (matrices_near(t.transpose(), t, eps)) kind = OperatorKind::SelfAdjoint;
  else if (matrices_near(t.transpose(), -t, eps)) kind = OperatorKind::SkewAdjoint;
  else throw ParseError("form matrix is neither symmetric nor anti-symmetric");
  // T = B^T phi  =>  B = phi^{-1} T^T.
  return FormView<S>(ctx, Operator<S>{ctx.phi_inverse() * t.transpose(), kind});
}

template <typename S>
FormView<S> pullback_form(const SpaceContext<S>& ctx, const Matrix<S>& a, const FormView<S>& tau) {
  return FormView<S>(ctx, Operator<S>{adjoint_matrix(ctx, a) * tau.op.mat * a, tau.op.kind});
}

namespace detail {

template <typename S>
void require_invertible(const SpaceContext<S>& ctx, const Matrix<S>& a) {
  if (!is_invertible(ctx, a)) throw DomainError("group membership requires an invertible map");
}

}  // namespace detail

// Float comparisons scale with the map magnitude: the rounding error of the
// pulled-back form grows like |a|^2 |t|, so a magnitude-only epsilon misfires
// on large group elements. Membership gaps are orders of magnitude wider.
template <typename S>
double form_pullback_eps(const SpaceContext<S>& ctx, const Matrix<S>& a, const Matrix<S>& t) {
  const double am = 1 + a.max_abs();
  return ctx.eps_at(am * am * (1 + t.max_abs()));
}

template <typename S>
bool in_G_tau(const SpaceContext<S>& ctx, const Matrix<S>& a, const FormView<S>& tau) {
  detail::require_invertible(ctx, a);
  const Matrix<S> t = tau.form_matrix(ctx);
  const Matrix<S> pulled = a.transpose() * t * a;
  return matrices_near(pulled, t, form_pullback_eps(ctx, a, t));
}

// +1 / -1 when A preserves tau up to that sign, nullopt otherwise.
template <typename S>
std::optional<int> in_G_pm_tau(const SpaceContext<S>& ctx, const Matrix<S>& a,
                               const FormView<S>& tau) {
  detail::require_invertible(ctx, a);
  const Matrix<S> t = tau.form_matrix(ctx);
  const Matrix<S> pulled = a.transpose() * t * a;
  const double eps = form_pullback_eps(ctx, a, t);
  if (matrices_near(pulled, t, eps)) return 1;
  if (matrices_near(pulled, -t, eps)) return -1;
  return std::nullopt;
}

template <typename S>
bool in_G_R_tau(const SpaceContext<S>& ctx, const Matrix<S>& a, const FormView<S>& tau,
                const CurvatureTensor<S>* cached_r = nullptr) {
  detail::require_invertible(ctx, a);
  CurvatureTensor<S> r = cached_r ? *cached_r : build_alternating(ctx, tau.op.mat);
  const CurvatureTensor<S> pulled = precompose(r, a);
  // Quartic in the map: rounding in the pulled-back tensor grows like |a|^4.
  const double am = 1 + a.max_abs();
  const double eps = ctx.eps_at(am * am * am * am * (1 + r.max_abs()));
  return tensors_near(pulled, r, eps);
}

// --- Symplectic-style normal form -------------------------------------------

// Basis change P with P^T T P = blockdiag(J, ..., J, 0) for anti-symmetric T,
// J = [[0,1],[-1,0]]. Columns are u1, v1, ..., uk, vk, then a radical basis.
template <typename S>
std::pair<Matrix<S>, int> skew_normal_basis(const SpaceContext<S>& ctx, const FormView<S>& tau) {
  if (!tau.anti_symmetric()) throw HypothesisError("normal form requires an anti-symmetric form");
  const int n = ctx.dim();
  const Matrix<S> t = tau.form_matrix(ctx);
  const double eps = ctx.eps_at(t.max_abs());
  auto pair_value = [&](const std::vector<S>& u, const std::vector<S>& v) {
    S acc(0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) acc += u[i] * t(i, j) * v[j];
    return acc;
  };
  std::vector<std::vector<S>> work;
  for (int i = 0; i < n; ++i) work.push_back(basis_vector<S>(n, i));
  std::vector<std::vector<S>> cols, radical;
  while (!work.empty()) {
    std::vector<S> u = work.front();
    work.erase(work.begin());
    int mate = -1;
    S best(0);
    for (size_t j = 0; j < work.size(); ++j) {
      const S c = pair_value(u, work[j]);
      if (scalar_is_zero(c, eps)) continue;
      if (mate < 0 || scalar_abs(c) > scalar_abs(best)) { mate = static_cast<int>(j); best = c; }
      if constexpr (is_exact_v<S>) break;  // any exact nonzero works
    }
    if (mate < 0) {
      radical.push_back(std::move(u));
      continue;
    }
    std::vector<S> v = work[mate];
    work.erase(work.begin() + mate);
    const S c = pair_value(u, v);
    for (auto& x : v) x /= c;  // now tau(u, v) = 1
    for (auto& w : work) {
      const S alpha = pair_value(u, w);
      const S beta = pair_value(v, w);
      for (int i = 0; i < n; ++i) w[i] += beta * u[i] - alpha * v[i];
    }
    cols.push_back(std::move(u));
    cols.push_back(std::move(v));
  }
  const int pairs = static_cast<int>(cols.size()) / 2;
  for (auto& r : radical) cols.push_back(std::move(r));
  Matrix<S> p(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) p(i, j) = cols[j][i];
  return {p, pairs};
}

// For any anti-symmetric tau produces A with pullback(A, tau) = -tau: negate
// the second leg of every normal-form pair, fix the radical.
template <typename S>
Matrix<S> anti_isometry_witness(const SpaceContext<S>& ctx, const FormView<S>& tau) {
  const auto [p, pairs] = skew_normal_basis(ctx, tau);
  const int n = ctx.dim();
  Matrix<S> d = Matrix<S>::identity(n);
  for (int k = 0; k < pairs; ++k) d(2 * k + 1, 2 * k + 1) = S(-1);
  auto pinv = inverse(p, ctx.eps_at(p.max_abs()));
  if (!pinv) throw Error("normal-form basis is singular");  // unreachable
  return p * d * *pinv;
}

// Basis of the linear space { X : X^T T + T X = 0 }, the tangent space of
// the tau-isometries. The Cayley transform (I - X)(I + X)^{-1} of any member
// with I + X invertible is a rational tau-isometry.
template <typename S>
std::vector<Matrix<S>> isometry_algebra_basis(const SpaceContext<S>& ctx, const FormView<S>& tau) {
  const int n = ctx.dim();
  const Matrix<S> t = tau.form_matrix(ctx);
  // Row-major vec: constraint matrix maps vec(X) to the strict upper triangle
  // of X^T T + T X (the result is anti-symmetric by construction whenever T
  // is, and symmetric when T is; take the full triangle incl. diagonal).
  const int ncon = n * (n + 1) / 2;
  Matrix<S> con(ncon, n * n);
  int row = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      // (X^T T + T X)(i, j) = sum_k X(k, i) T(k, j) + T(i, k) X(k, j)
      for (int k = 0; k < n; ++k) {
        con(row, k * n + i) += t(k, j);
        con(row, k * n + j) += t(i, k);
      }
      ++row;
    }
  std::vector<Matrix<S>> basis;
  if constexpr (is_exact_v<S>) {
    for (const auto& v : exact_kernel(con)) {
      Matrix<S> x(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x(i, j) = v[static_cast<size_t>(i) * n + j];
      basis.push_back(std::move(x));
    }
  } else {
    for (const auto& v : kernel_basis(ctx, con)) {
      Matrix<S> x(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x(i, j) = v[static_cast<size_t>(i) * n + j];
      basis.push_back(std::move(x));
    }
  }
  return basis;
}

// --- Theorem verification ----------------------------------------------------

struct PoolStats {
  long samples = 0;
  long in_tensor_group = 0;  // in_G_R_tau
  long in_pm_group = 0;      // in_G_pm_tau != none
  long mismatches = 0;       // equivalence failures
};

struct StructureTheoremReport {
  int dim = 0;
  int tau_rank = 0;
  long trials = 0;
  std::uint64_t seed = 0;
  PoolStats isometries, anti_isometries, generic;
  bool equivalence_holds = true;
  std::string first_mismatch_pool;
  long first_mismatch_index = -1;
};

// Samples `trials` maps per pool and checks in_G_R_tau <=> in_G_pm_tau != none
// on each. Requires anti-symmetric tau of rank >= 4.
template <typename S>
StructureTheoremReport verify_structure_theorem(const SpaceContext<S>& ctx, const FormView<S>& tau,
                                                long trials, std::uint64_t seed) {
  if (!tau.anti_symmetric())
    throw HypothesisError("structure theorem requires an anti-symmetric form");
  const int tau_rank = rank(ctx, tau.op.mat);
  if (tau_rank < 4) throw HypothesisError("structure theorem requires rank(tau) >= 4");
  const int n = ctx.dim();

  StructureTheoremReport rep;
  rep.dim = n;
  rep.tau_rank = tau_rank;
  rep.trials = trials;
  rep.seed = seed;

  const CurvatureTensor<S> r_tau = build_alternating(ctx, tau.op.mat);
  const std::vector<Matrix<S>> algebra = isometry_algebra_basis(ctx, tau);
  const Matrix<S> flip = anti_isometry_witness(ctx, tau);
  const Matrix<S> eye = Matrix<S>::identity(n);

  auto sample_isometry = [&](Rng& rng) -> Matrix<S> {
    for (int attempt = 0; attempt < 64; ++attempt) {
      Matrix<S> x(n, n);
      for (const auto& b : algebra) {
        const long c = rng.uniform(-2, 2);
        if (c != 0) x = x + b.scaled(scalar_from_int<S>(c));
      }
      // The transform is a group member only when both factors are regular;
      // algebra elements with eigenvalue +-1 do occur at integer coefficients.
      const double eps = ctx.eps_at(1 + x.max_abs());
      auto inv = inverse(eye + x, eps);
      if (!inv || !is_invertible(ctx, eye - x)) continue;
      Matrix<S> q = (eye - x) * *inv;
      // Keep the pool well conditioned; a nearly singular I + X amplifies
      // rounding error through every downstream product.
      if (q.max_abs() > 1e3) continue;
      return q;
    }
    throw SamplingError("could not sample an invertible Cayley transform");
  };
  auto sample_generic = [&](Rng& rng) -> Matrix<S> {
    for (int attempt = 0; attempt < 64; ++attempt) {
      Matrix<S> a = detail::random_int_matrix<S>(n, n, rng, -3, 3);
      if (is_invertible(ctx, a)) return a;
    }
    throw SamplingError("could not sample an invertible generic map");
  };

  auto run_pool = [&](const std::string& name, PoolStats& stats, auto&& make) {
    Rng rng(derive_seed(seed, {std::hash<std::string>{}(name)}));
    for (long i = 0; i < trials; ++i) {
      const Matrix<S> a = make(rng);
      const bool in_r = in_G_R_tau(ctx, a, tau, &r_tau);
      const bool in_pm = in_G_pm_tau(ctx, a, tau).has_value();
      ++stats.samples;
      if (in_r) ++stats.in_tensor_group;
      if (in_pm) ++stats.in_pm_group;
      if (in_r != in_pm) {
        ++stats.mismatches;
        if (rep.equivalence_holds) {
          rep.equivalence_holds = false;
          rep.first_mismatch_pool = name;
          rep.first_mismatch_index = i;
        }
      }
    }
  };

  run_pool("isometry", rep.isometries, [&](Rng& rng) { return sample_isometry(rng); });
  run_pool("anti-isometry", rep.anti_isometries,
           [&](Rng& rng) { return flip * sample_isometry(rng); });
  run_pool("generic", rep.generic, [&](Rng& rng) { return sample_generic(rng); });
  return rep;
}

}  // namespace curv
