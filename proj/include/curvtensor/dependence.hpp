#pragma once

// Linear (in)dependence of canonical curvature tensors via flatten + nullspace,
// the triple-independence theorems for {R^S_I, R^S_B, R^L_C} and
// {R^S_I, R^L_C, R^L_D}, the commutation/rank necessary conditions, and the
// pairwise exclusion lemmas.
//
// A dependent set is *properly* dependent when no proper subset is dependent;
// equivalently the relation uses every member. The triple theorems rule out
// proper dependence; degenerate subset relations (e.g. R^L_{J + 0} = 3 R^S_P
// for the rank-2 projection P onto the plane of J, or R^S_B = 0 for rank-1
// self-adjoint B) are reported distinctly rather than as falsifications.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvtensor/context.hpp"
#include "curvtensor/curvature.hpp"
#include "curvtensor/errors.hpp"
#include "curvtensor/linalg.hpp"
#include "curvtensor/tensor.hpp"

namespace curv {

namespace detail {

// Scale a rational vector to coprime integers with positive leading entry.
inline std::vector<Rational> primitive_integer_vector(const std::vector<Rational>& v) {
  BigInt denom_lcm(1);
  for (const auto& x : v) denom_lcm = lcm(denom_lcm, BigInt(denominator(x)));
  std::vector<BigInt> ints;
  ints.reserve(v.size());
  BigInt g(0);
  for (const auto& x : v) {
    const Rational scaled = x * Rational(denom_lcm);
    ints.emplace_back(numerator(scaled));
    g = gcd(g, ints.back());
  }
  if (g == 0) return v;  // zero vector, nothing to normalize
  int lead_sign = 0;
  for (const auto& x : ints)
    if (x != 0) { lead_sign = x > 0 ? 1 : -1; break; }
  if (lead_sign < 0) g = -g;
  std::vector<Rational> out;
  out.reserve(v.size());
  for (const auto& x : ints) out.emplace_back(Rational(x / g));
  return out;
}

// Columns are the flattened tensors.
template <typename S>
Matrix<S> stack_columns(const std::vector<std::vector<S>>& cols) {
  const size_t rows = cols.front().size();
  Matrix<S> m(static_cast<int>(rows), static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < rows; ++i) m(static_cast<int>(i), static_cast<int>(j)) = cols[j][i];
  return m;
}

}  // namespace detail

template <typename S>
struct DependenceVerdict {
  bool independent = true;
  std::optional<std::vector<S>> coefficients;  // one relation, when dependent
  std::optional<bool> proper;                  // set when dependent and size <= 5
  int nullity = 0;
  bool exact_certificate = false;  // relation verified over the rationals
  bool used_referee = false;       // float verdict fell into the ambiguity band
};

namespace detail {

template <typename S>
DependenceVerdict<S> dependence_impl(const SpaceContext<S>& ctx,
                                     const std::vector<CurvatureTensor<S>>& tensors) {
  if (tensors.empty()) throw ContextError("dependence requires at least one tensor");
  for (const auto& t : tensors)
    if (t.dim() != ctx.dim()) throw ContextError("tensors come from different contexts");
  const int m = static_cast<int>(tensors.size());

  DependenceVerdict<S> verdict;
  if constexpr (is_exact_v<S>) {
    std::vector<std::vector<S>> cols;
    cols.reserve(tensors.size());
    for (const auto& t : tensors) cols.push_back(t.flatten());
    auto kernel = exact_kernel(stack_columns<S>(cols));
    verdict.nullity = static_cast<int>(kernel.size());
    verdict.independent = kernel.empty();
    if (!kernel.empty()) {
      verdict.coefficients = primitive_integer_vector(kernel.front());
      verdict.exact_certificate = true;
      // Re-substitution guard: the relation must vanish identically.
      CurvatureTensor<S> acc(ctx.dim());
      for (int j = 0; j < m; ++j) acc = acc + tensors[j].scaled((*verdict.coefficients)[j]);
      if (!acc.is_zero(0)) throw Error("nullspace relation failed re-substitution");
    }
    return verdict;
  } else {
    // Zero tensors are dependent outright.
    for (int j = 0; j < m; ++j) {
      if (tensors[j].is_zero(ctx.eps_at(0))) {
        verdict.independent = false;
        verdict.nullity = std::max(verdict.nullity, 1);
        std::vector<S> coeffs(m, S(0));
        coeffs[j] = S(1);
        verdict.coefficients = std::move(coeffs);
        verdict.exact_certificate = true;
        return verdict;
      }
    }
    std::vector<std::vector<S>> cols;
    cols.reserve(tensors.size());
    for (const auto& t : tensors) {
      auto c = t.flatten();
      double scale = 0;
      for (double x : c) scale = std::max(scale, std::abs(x));
      for (auto& x : c) x /= scale;
      cols.push_back(std::move(c));
    }
    const Matrix<double> a = stack_columns<double>(cols);
    const auto sv = singular_values(a);
    const double smin = sv.empty() ? 0.0 : sv.back();
    const double tol = ctx.tolerance();

    auto exact_referee = [&]() -> std::optional<std::vector<Rational>> {
      std::vector<std::vector<Rational>> exact_cols;
      for (const auto& t : tensors) {
        std::vector<Rational> c;
        for (double x : t.flatten()) c.push_back(rational_from_double(x));
        exact_cols.push_back(std::move(c));
      }
      auto kernel = exact_kernel(detail::stack_columns<Rational>(exact_cols));
      verdict.nullity = static_cast<int>(kernel.size());
      if (kernel.empty()) return std::nullopt;
      return primitive_integer_vector(kernel.front());
    };

    if (smin > 10 * tol) {
      verdict.independent = true;
      verdict.nullity = 0;
      return verdict;
    }
    const bool in_band = smin >= 0.1 * tol;
    verdict.used_referee = in_band;
    auto exact_relation = exact_referee();
    if (in_band) {
      // The doubles lift exactly to rationals; let the exact kernel decide.
      verdict.independent = !exact_relation.has_value();
    } else {
      verdict.independent = false;
    }
    if (verdict.independent) return verdict;
    if (exact_relation) {
      std::vector<S> coeffs;
      for (const auto& c : *exact_relation) coeffs.push_back(to_double(c));
      verdict.coefficients = std::move(coeffs);
      verdict.exact_certificate = true;
      verdict.nullity = std::max(verdict.nullity, 1);
    } else {
      // Numerically dependent but exactly independent: report the singular
      // direction, scaled to unit max entry with positive leading entry.
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a), Eigen::ComputeThinU | Eigen::ComputeFullV);
      Eigen::VectorXd v = svd.matrixV().col(m - 1);
      double big = 0;
      for (int j = 0; j < m; ++j) big = std::max(big, std::abs(v[j]));
      int lead = 0;
      while (lead < m && std::abs(v[lead]) < 1e-12 * big) ++lead;
      const double flip = (lead < m && v[lead] < 0) ? -1.0 : 1.0;
      std::vector<S> coeffs(m);
      for (int j = 0; j < m; ++j) coeffs[j] = flip * v[j] / big;
      verdict.coefficients = std::move(coeffs);
      verdict.nullity = std::max(verdict.nullity, 1);
    }
    return verdict;
  }
}

}  // namespace detail

// Verdict on the set; for sets of at most 5 a dependent verdict also says
// whether the dependence is proper (every proper subset independent).
template <typename S>
DependenceVerdict<S> dependence(const SpaceContext<S>& ctx,
                                const std::vector<CurvatureTensor<S>>& tensors,
                                bool check_proper = true) {
  DependenceVerdict<S> verdict = detail::dependence_impl(ctx, tensors);
  const size_t m = tensors.size();
  if (!verdict.independent && check_proper && m >= 2 && m <= 5) {
    bool proper = true;
    for (std::uint32_t mask = 1; proper && mask + 1 < (1u << m); ++mask) {
      std::vector<CurvatureTensor<S>> subset;
      for (size_t j = 0; j < m; ++j)
        if (mask & (1u << j)) subset.push_back(tensors[j]);
      if (!detail::dependence_impl(ctx, subset).independent) proper = false;
    }
    verdict.proper = proper;
  }
  return verdict;
}

// Independence of operators as flattened n^2-vectors.
template <typename S>
bool operators_independent(const SpaceContext<S>& ctx, const std::vector<Matrix<S>>& ops) {
  std::vector<std::vector<S>> cols;
  cols.reserve(ops.size());
  for (const auto& a : ops) cols.push_back(a.vec());
  const Matrix<S> m = detail::stack_columns<S>(cols);
  return rank(ctx, m) == static_cast<int>(ops.size());
}

// --- Triple-independence theorems --------------------------------------------

enum class TheoremStatus { ConclusionHolds, HypothesisUnmet, SubsetDependent, Falsified };

inline std::string status_name(TheoremStatus s) {
  switch (s) {
    case TheoremStatus::ConclusionHolds: return "conclusion_holds";
    case TheoremStatus::HypothesisUnmet: return "hypothesis_unmet";
    case TheoremStatus::SubsetDependent: return "subset_dependent";
    case TheoremStatus::Falsified: return "falsified";
  }
  return "?";
}

template <typename S>
struct TripleTheoremReport {
  std::string triple;  // builds of the three tensors, e.g. "S/S/Lambda"
  bool operators_independent = false;
  DependenceVerdict<S> tensors;
  TheoremStatus status = TheoremStatus::HypothesisUnmet;
  bool falsified() const { return status == TheoremStatus::Falsified; }
};

namespace detail {

template <typename S>
TheoremStatus classify_triple(bool ops_independent, const DependenceVerdict<S>& verdict) {
  if (!ops_independent) return TheoremStatus::HypothesisUnmet;
  if (verdict.independent) return TheoremStatus::ConclusionHolds;
  if (verdict.proper.value_or(true)) return TheoremStatus::Falsified;
  return TheoremStatus::SubsetDependent;
}

}  // namespace detail

// {R^S_I, R^S_B, R^L_C} with B self-adjoint, C skew-adjoint, dim > 3:
// operator independence of {I, B, C} forces proper independence of the triple.
template <typename S>
TripleTheoremReport<S> check_theorem_ssl(const SpaceContext<S>& ctx, const Operator<S>& b,
                                         const Operator<S>& c) {
  if (ctx.dim() <= 3)
    throw HypothesisError("triple theorem S/S/Lambda requires dim > 3");
  if (b.kind != OperatorKind::SelfAdjoint || c.kind != OperatorKind::SkewAdjoint)
    throw HypothesisError("triple theorem S/S/Lambda expects a self-adjoint and a skew-adjoint operator");
  if constexpr (is_exact_v<S>) { validate_kind(ctx, b); validate_kind(ctx, c); }
  TripleTheoremReport<S> rep;
  rep.triple = "S/S/Lambda";
  const Matrix<S> eye = Matrix<S>::identity(ctx.dim());
  rep.operators_independent = operators_independent(ctx, {eye, b.mat, c.mat});
  rep.tensors = dependence(ctx, {build_symmetric(ctx, eye), build_symmetric(ctx, b.mat),
                                 build_alternating(ctx, c.mat)});
  rep.status = detail::classify_triple(rep.operators_independent, rep.tensors);
  return rep;
}

// {R^S_I, R^L_C, R^L_D} with C, D skew-adjoint, dim >= 3.
template <typename S>
TripleTheoremReport<S> check_theorem_sll(const SpaceContext<S>& ctx, const Operator<S>& c,
                                         const Operator<S>& d) {
  if (ctx.dim() < 3)
    throw HypothesisError("triple theorem S/Lambda/Lambda requires dim >= 3");
  if (c.kind != OperatorKind::SkewAdjoint || d.kind != OperatorKind::SkewAdjoint)
    throw HypothesisError("triple theorem S/Lambda/Lambda expects two skew-adjoint operators");
  if constexpr (is_exact_v<S>) { validate_kind(ctx, c); validate_kind(ctx, d); }
  TripleTheoremReport<S> rep;
  rep.triple = "S/Lambda/Lambda";
  const Matrix<S> eye = Matrix<S>::identity(ctx.dim());
  rep.operators_independent = operators_independent(ctx, {eye, c.mat, d.mat});
  rep.tensors = dependence(ctx, {build_symmetric(ctx, eye), build_alternating(ctx, c.mat),
                                 build_alternating(ctx, d.mat)});
  rep.status = detail::classify_triple(rep.operators_independent, rep.tensors);
  return rep;
}

// --- Necessary conditions for a dependent S/S/Lambda triple ------------------

template <typename S>
struct NecessaryConditionsReport {
  DependenceVerdict<S> tensors;
  bool gate_triggered = false;  // proper dependence observed
  bool commute = false;         // BC = CB
  double commutator_norm = 0;
  int rank_c = 0;
  bool conclusions_hold = true;  // vacuously true when the gate is closed
};

// When {R^S_I, R^S_B, R^L_C} is properly dependent, B and C must commute and
// rank(C) must be exactly 2. Commutator and rank are reported regardless.
template <typename S>
NecessaryConditionsReport<S> necessary_conditions_ssl(const SpaceContext<S>& ctx,
                                                      const Operator<S>& b,
                                                      const Operator<S>& c) {
  if (ctx.dim() < 3) throw HypothesisError("necessary conditions require dim >= 3");
  if (b.kind != OperatorKind::SelfAdjoint || c.kind != OperatorKind::SkewAdjoint)
    throw HypothesisError("necessary conditions expect a self-adjoint and a skew-adjoint operator");
  if constexpr (is_exact_v<S>) { validate_kind(ctx, b); validate_kind(ctx, c); }
  NecessaryConditionsReport<S> rep;
  const Matrix<S> eye = Matrix<S>::identity(ctx.dim());
  rep.tensors = dependence(ctx, {build_symmetric(ctx, eye), build_symmetric(ctx, b.mat),
                                 build_alternating(ctx, c.mat)});
  const Matrix<S> comm = b.mat * c.mat - c.mat * b.mat;
  rep.commutator_norm = comm.max_abs();
  rep.commute = comm.is_zero(ctx.eps_at(std::max(b.mat.max_abs(), c.mat.max_abs())));
  rep.rank_c = rank(ctx, c.mat);
  rep.gate_triggered = !rep.tensors.independent && rep.tensors.proper.value_or(false);
  rep.conclusions_hold = !rep.gate_triggered || (rep.commute && rep.rank_c == 2);
  return rep;
}

// --- Pairwise exclusion lemmas ------------------------------------------------

template <typename S>
struct ExclusionReport {
  std::string arm;  // "mixed", "symmetric/symmetric", "alternating/alternating"
  bool holds = false;
  double deviation_plus = 0;   // max-abs of lhs - rhs for the compared pair
  double deviation_minus = 0;  // max-abs of lhs + rhs
};

// Dispatched on the operator kinds:
//   one self-adjoint of rank >= 3 and one nonzero skew-adjoint:
//     R^L_skew != +- R^S_self,
//   two self-adjoint with at least one of rank >= 4:  R^S_A != -R^S_B,
//   two nonzero skew-adjoint:                         R^L_C != -R^L_D.
template <typename S>
ExclusionReport<S> pairwise_exclusions(const SpaceContext<S>& ctx, const Operator<S>& a,
                                       const Operator<S>& b) {
  if (a.kind == OperatorKind::General || b.kind == OperatorKind::General)
    throw HypothesisError("exclusion lemmas require self-adjoint or skew-adjoint operators");
  if constexpr (is_exact_v<S>) { validate_kind(ctx, a); validate_kind(ctx, b); }
  ExclusionReport<S> rep;
  const double zero_eps = ctx.eps_at(0);
  if (a.kind != b.kind) {
    const Operator<S>& skew = a.kind == OperatorKind::SkewAdjoint ? a : b;
    const Operator<S>& self = a.kind == OperatorKind::SkewAdjoint ? b : a;
    rep.arm = "mixed";
    if (rank(ctx, self.mat) < 3)
      throw HypothesisError("mixed exclusion requires a self-adjoint operator of rank >= 3");
    if (skew.mat.is_zero(zero_eps))
      throw HypothesisError("mixed exclusion requires a nonzero skew-adjoint operator");
    const auto lhs = build_alternating(ctx, skew.mat);
    const auto rhs = build_symmetric(ctx, self.mat);
    rep.deviation_plus = tensor_max_deviation(lhs, rhs);
    rep.deviation_minus = tensor_max_deviation(lhs, -rhs);
    const double eps = ctx.eps_at(std::max(lhs.max_abs(), rhs.max_abs()));
    rep.holds = rep.deviation_plus > eps && rep.deviation_minus > eps;
  } else if (a.kind == OperatorKind::SelfAdjoint) {
    rep.arm = "symmetric/symmetric";
    if (rank(ctx, a.mat) < 4 && rank(ctx, b.mat) < 4)
      throw HypothesisError("symmetric exclusion requires an operator of rank >= 4");
    const auto lhs = build_symmetric(ctx, a.mat);
    const auto rhs = build_symmetric(ctx, b.mat);
    rep.deviation_plus = tensor_max_deviation(lhs, rhs);  // informational
    rep.deviation_minus = tensor_max_deviation(lhs, -rhs);
    rep.holds = rep.deviation_minus > ctx.eps_at(std::max(lhs.max_abs(), rhs.max_abs()));
  } else {
    rep.arm = "alternating/alternating";
    if (a.mat.is_zero(zero_eps) || b.mat.is_zero(zero_eps))
      throw HypothesisError("alternating exclusion requires nonzero operators");
    const auto lhs = build_alternating(ctx, a.mat);
    const auto rhs = build_alternating(ctx, b.mat);
    rep.deviation_plus = tensor_max_deviation(lhs, rhs);  // informational
    rep.deviation_minus = tensor_max_deviation(lhs, -rhs);
    rep.holds = rep.deviation_minus > ctx.eps_at(std::max(lhs.max_abs(), rhs.max_abs()));
  }
  return rep;
}

}  // namespace curv
