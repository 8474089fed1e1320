#pragma once

// Chain-complex detection, the chain-sum theorems (three-node, star, four-node),
// and the kernel-reduction transform on decompositions.
//
// A sum premise R_A + eps R_B + delta R_C = 0 is always verified entrywise
// before any conclusion is evaluated; build of each term follows its operator
// kind (self-adjoint -> S, skew-adjoint -> Lambda). Conclusions are reported
// pass / fail / not_applicable, never silently skipped.

#include <algorithm>
#include <type_traits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvtensor/context.hpp"
#include "curvtensor/curvature.hpp"
#include "curvtensor/errors.hpp"
#include "curvtensor/linalg.hpp"
#include "curvtensor/tensor.hpp"

namespace curv {

// --- Chains -------------------------------------------------------------------

struct ChainCheck {
  bool ok = true;
  std::optional<std::pair<int, int>> first_failure;  // 1-based consecutive pair
  double max_residual = 0;                           // largest entry of any product
};

template <typename S>
ChainCheck is_chain(const SpaceContext<S>& ctx, const std::vector<Matrix<S>>& ops) {
  ChainCheck check;
  double scale = 0;
  for (const auto& a : ops) scale = std::max(scale, a.max_abs());
  for (size_t i = 0; i + 1 < ops.size(); ++i) {
    const Matrix<S> prod = ops[i + 1] * ops[i];
    check.max_residual = std::max(check.max_residual, prod.max_abs());
    if (!prod.is_zero(ctx.eps_at(scale * scale)) && check.ok) {
      check.ok = false;
      check.first_failure = {static_cast<int>(i) + 1, static_cast<int>(i) + 2};
    }
  }
  return check;
}

// Exactness at every interior node: Im A_i = ker A_{i+1}. Containment is the
// chain property; equality is decided by rank count.
template <typename S>
bool chain_is_exact(const SpaceContext<S>& ctx, const std::vector<Matrix<S>>& ops) {
  const int n = ctx.dim();
  for (size_t i = 0; i + 1 < ops.size(); ++i)
    if (rank(ctx, ops[i]) != n - rank(ctx, ops[i + 1])) return false;
  return true;
}

// --- Decompositions -----------------------------------------------------------

template <typename S>
struct Decomposition {
  std::optional<CanonicalTerm<S>> canonical_target;  // target known in operator form
  std::optional<CurvatureTensor<S>> target;
  std::vector<CanonicalTerm<S>> terms;
};

template <typename S>
CurvatureTensor<S> decomposition_sum(const SpaceContext<S>& ctx, const Decomposition<S>& d) {
  return sum_terms(ctx, d.terms);
}

// Entrywise residual of target - sum(terms); 0 when no target is present.
template <typename S>
double decomposition_residual(const SpaceContext<S>& ctx, const Decomposition<S>& d) {
  if (!d.target) return 0;
  return tensor_max_deviation(*d.target, decomposition_sum(ctx, d));
}

// --- Theorem reports ----------------------------------------------------------

enum class ConclusionStatus { Pass, Fail, NotApplicable };

inline std::string conclusion_status_name(ConclusionStatus s) {
  switch (s) {
    case ConclusionStatus::Pass: return "pass";
    case ConclusionStatus::Fail: return "fail";
    case ConclusionStatus::NotApplicable: return "not_applicable";
  }
  return "?";
}

struct Conclusion {
  std::string name;
  ConclusionStatus status = ConclusionStatus::NotApplicable;
  double deviation = 0;
};

struct ChainTheoremReport {
  std::string theorem;
  double premise_residual = 0;
  bool exact_sequence = false;
  std::vector<Conclusion> conclusions;
  bool all_hold() const {
    for (const auto& c : conclusions)
      if (c.status == ConclusionStatus::Fail) return false;
    return true;
  }
};

namespace detail {

template <typename S>
CurvatureTensor<S> kind_build(const SpaceContext<S>& ctx, const Operator<S>& op) {
  if (op.kind == OperatorKind::General)
    throw HypothesisError("chain theorems require self-adjoint or skew-adjoint operators");
  if constexpr (is_exact_v<S>) validate_kind(ctx, op);
  return build(ctx, build_for_kind(op.kind), op.mat);
}

inline void require_sign(int s, const char* what) {
  if (s != 1 && s != -1) throw ParseError(std::string(what) + " must be +1 or -1");
}

template <typename S>
Conclusion matrix_conclusion(const SpaceContext<S>& ctx, std::string name, const Matrix<S>& got,
                             const Matrix<S>& want) {
  Conclusion c{std::move(name)};
  c.deviation = max_abs_diff(got, want);
  const double eps = ctx.eps_at(std::max(got.max_abs(), want.max_abs()));
  c.status = c.deviation <= eps ? ConclusionStatus::Pass : ConclusionStatus::Fail;
  return c;
}

template <typename S>
Conclusion matrix_pm_conclusion(const SpaceContext<S>& ctx, std::string name, const Matrix<S>& got,
                                const Matrix<S>& want) {
  Conclusion c{std::move(name)};
  c.deviation = std::min(max_abs_diff(got, want), max_abs_diff(got, -want));
  const double eps = ctx.eps_at(std::max(got.max_abs(), want.max_abs()));
  c.status = c.deviation <= eps ? ConclusionStatus::Pass : ConclusionStatus::Fail;
  return c;
}

inline Conclusion bool_conclusion(std::string name, bool pass) {
  Conclusion c{std::move(name)};
  c.status = pass ? ConclusionStatus::Pass : ConclusionStatus::Fail;
  return c;
}

}  // namespace detail

// --- Three-node chain: V -A-> V -B-> V -C-> V ---------------------------------

// Premises: kinds, chain, R_A + eps R_B + delta R_C = 0. Conclusions: R_B = 0
// always; with rank(A) >= 4 and rank(C) >= 4 also C = +-A and delta = -1; with
// an exact sequence and skew B, A and C invertible.
template <typename S>
ChainTheoremReport analyze_three_chain(const SpaceContext<S>& ctx, const Operator<S>& a,
                                       const Operator<S>& b, const Operator<S>& c, int eps,
                                       int delta) {
  detail::require_sign(eps, "eps");
  detail::require_sign(delta, "delta");
  const CurvatureTensor<S> ra = detail::kind_build(ctx, a);
  const CurvatureTensor<S> rb = detail::kind_build(ctx, b);
  const CurvatureTensor<S> rc = detail::kind_build(ctx, c);

  ChainTheoremReport rep;
  rep.theorem = "three-chain";
  const auto chain = is_chain(ctx, {a.mat, b.mat, c.mat});
  if (!chain.ok) throw PremiseError("not_a_chain");

  const CurvatureTensor<S> sum =
      ra + rb.scaled(scalar_from_int<S>(eps)) + rc.scaled(scalar_from_int<S>(delta));
  rep.premise_residual = sum.max_abs();
  const double tensor_scale = std::max({ra.max_abs(), rb.max_abs(), rc.max_abs()});
  if (!sum.is_zero(ctx.eps_at(tensor_scale))) throw PremiseError("premise sum is nonzero");

  Conclusion rb_zero{"R_B = 0"};
  rb_zero.deviation = rb.max_abs();
  rb_zero.status =
      rb.is_zero(ctx.eps_at(tensor_scale)) ? ConclusionStatus::Pass : ConclusionStatus::Fail;
  rep.conclusions.push_back(rb_zero);

  const bool rank_gate = rank(ctx, a.mat) >= 4 && rank(ctx, c.mat) >= 4;
  if (rank_gate) {
    rep.conclusions.push_back(detail::matrix_pm_conclusion(ctx, "C = +-A", c.mat, a.mat));
    rep.conclusions.push_back(detail::bool_conclusion("delta = -1", delta == -1));
  } else {
    rep.conclusions.push_back({"C = +-A", ConclusionStatus::NotApplicable, 0});
    rep.conclusions.push_back({"delta = -1", ConclusionStatus::NotApplicable, 0});
  }

  rep.exact_sequence = chain_is_exact(ctx, {a.mat, b.mat, c.mat});
  if (rep.exact_sequence && b.kind == OperatorKind::SkewAdjoint) {
    rep.conclusions.push_back(
        detail::bool_conclusion("A invertible", is_invertible(ctx, a.mat)));
    rep.conclusions.push_back(
        detail::bool_conclusion("C invertible", is_invertible(ctx, c.mat)));
  } else {
    rep.conclusions.push_back({"A invertible", ConclusionStatus::NotApplicable, 0});
    rep.conclusions.push_back({"C invertible", ConclusionStatus::NotApplicable, 0});
  }
  return rep;
}

// --- Star: one hub A against legs B_1..B_k ------------------------------------

struct StarLeg {
  bool exact = false;
  Conclusion invertible;  // "B_i invertible", applicable on exact legs with skew A
};

struct StarReport {
  ChainTheoremReport base;
  std::string direction;  // "hub-first" (B_i A = 0) or "hub-last" (A B_i = 0)
  std::vector<StarLeg> legs;
};

// Premises: every leg composes to zero with the hub on a consistent side, and
// R_A + sum eps_i R_{B_i} = 0. Conclusions: R_A = 0; skew A forces A = 0 and,
// on each exact leg, that B_i is invertible.
template <typename S>
StarReport analyze_star(const SpaceContext<S>& ctx, const Operator<S>& a,
                        const std::vector<Operator<S>>& bs, const std::vector<int>& signs) {
  if (bs.empty()) throw ParseError("star needs at least one leg");
  if (signs.size() != bs.size()) throw ParseError("one sign per leg required");
  for (int s : signs) detail::require_sign(s, "leg sign");

  const CurvatureTensor<S> ra = detail::kind_build(ctx, a);
  std::vector<CurvatureTensor<S>> rbs;
  rbs.reserve(bs.size());
  for (const auto& b : bs) rbs.push_back(detail::kind_build(ctx, b));

  StarReport rep;
  rep.base.theorem = "star";
  const double scale = [&] {
    double s = a.mat.max_abs();
    for (const auto& b : bs) s = std::max(s, b.mat.max_abs());
    return s;
  }();
  auto vanishes = [&](const Matrix<S>& m) { return m.is_zero(ctx.eps_at(scale * scale)); };
  bool hub_first = true, hub_last = true;
  for (const auto& b : bs) {
    if (!vanishes(b.mat * a.mat)) hub_first = false;
    if (!vanishes(a.mat * b.mat)) hub_last = false;
  }
  if (!hub_first && !hub_last) throw PremiseError("not_a_chain");
  rep.direction = hub_first ? "hub-first" : "hub-last";

  CurvatureTensor<S> sum = ra;
  double tensor_scale = ra.max_abs();
  for (size_t i = 0; i < bs.size(); ++i) {
    sum = sum + rbs[i].scaled(scalar_from_int<S>(signs[i]));
    tensor_scale = std::max(tensor_scale, rbs[i].max_abs());
  }
  rep.base.premise_residual = sum.max_abs();
  if (!sum.is_zero(ctx.eps_at(tensor_scale))) throw PremiseError("premise sum is nonzero");

  Conclusion ra_zero{"R_A = 0"};
  ra_zero.deviation = ra.max_abs();
  ra_zero.status =
      ra.is_zero(ctx.eps_at(tensor_scale)) ? ConclusionStatus::Pass : ConclusionStatus::Fail;
  rep.base.conclusions.push_back(ra_zero);

  const bool skew_hub = a.kind == OperatorKind::SkewAdjoint;
  if (skew_hub) {
    Conclusion a_zero{"A = 0"};
    a_zero.deviation = a.mat.max_abs();
    a_zero.status =
        a.mat.is_zero(ctx.eps_at(scale)) ? ConclusionStatus::Pass : ConclusionStatus::Fail;
    rep.base.conclusions.push_back(a_zero);
  } else {
    rep.base.conclusions.push_back({"A = 0", ConclusionStatus::NotApplicable, 0});
  }

  const int n = ctx.dim();
  const int rank_a = rank(ctx, a.mat);
  for (size_t i = 0; i < bs.size(); ++i) {
    StarLeg leg;
    const int rank_b = rank(ctx, bs[i].mat);
    leg.exact = hub_first ? (rank_a == n - rank_b) : (rank_b == n - rank_a);
    const std::string name = "B_" + std::to_string(i + 1) + " invertible";
    if (leg.exact && skew_hub)
      leg.invertible = detail::bool_conclusion(name, is_invertible(ctx, bs[i].mat));
    else
      leg.invertible = {name, ConclusionStatus::NotApplicable, 0};
    rep.legs.push_back(leg);
  }
  return rep;
}

// --- Four-node chain: V -A-> V -B-> V -C-> V -D-> V ----------------------------

// Requires rank(B) >= 4 and rank(C) >= 4 up front. Conclusions: the builds of
// R_A/R_C agree and those of R_B/R_D agree, eps2 = -1, eps1 = -eps3,
// B^3 = +-BDB, C^3 = +-CAC.
template <typename S>
ChainTheoremReport analyze_four_chain(const SpaceContext<S>& ctx, const Operator<S>& a,
                                      const Operator<S>& b, const Operator<S>& c,
                                      const Operator<S>& d, int eps1, int eps2, int eps3) {
  detail::require_sign(eps1, "eps1");
  detail::require_sign(eps2, "eps2");
  detail::require_sign(eps3, "eps3");
  const CurvatureTensor<S> ra = detail::kind_build(ctx, a);
  const CurvatureTensor<S> rb = detail::kind_build(ctx, b);
  const CurvatureTensor<S> rc = detail::kind_build(ctx, c);
  const CurvatureTensor<S> rd = detail::kind_build(ctx, d);
  if (rank(ctx, b.mat) < 4 || rank(ctx, c.mat) < 4)
    throw HypothesisError("four-chain theorem requires rank(B) >= 4 and rank(C) >= 4");

  ChainTheoremReport rep;
  rep.theorem = "four-chain";
  if (!is_chain(ctx, {a.mat, b.mat, c.mat, d.mat}).ok) throw PremiseError("not_a_chain");

  const CurvatureTensor<S> sum = ra + rb.scaled(scalar_from_int<S>(eps1)) +
                                 rc.scaled(scalar_from_int<S>(eps2)) +
                                 rd.scaled(scalar_from_int<S>(eps3));
  rep.premise_residual = sum.max_abs();
  const double tensor_scale =
      std::max({ra.max_abs(), rb.max_abs(), rc.max_abs(), rd.max_abs()});
  if (!sum.is_zero(ctx.eps_at(tensor_scale))) throw PremiseError("premise sum is nonzero");

  rep.conclusions.push_back(detail::bool_conclusion(
      "R_A, R_C same build",
      build_for_kind(a.kind) == build_for_kind(c.kind)));
  rep.conclusions.push_back(detail::bool_conclusion(
      "R_B, R_D same build",
      build_for_kind(b.kind) == build_for_kind(d.kind)));
  rep.conclusions.push_back(detail::bool_conclusion("eps2 = -1", eps2 == -1));
  rep.conclusions.push_back(detail::bool_conclusion("eps1 = -eps3", eps1 == -eps3));
  rep.conclusions.push_back(detail::matrix_pm_conclusion(
      ctx, "B^3 = +-BDB", b.mat * b.mat * b.mat, b.mat * d.mat * b.mat));
  rep.conclusions.push_back(detail::matrix_pm_conclusion(
      ctx, "C^3 = +-CAC", c.mat * c.mat * c.mat, c.mat * a.mat * c.mat));
  return rep;
}

// --- Kernel reduction ----------------------------------------------------------

template <typename S>
struct ReductionResult {
  Decomposition<S> reduced;
  Matrix<S> map;          // the A that was applied
  double residual = 0;    // verification deviation of the reduced decomposition
};

namespace detail {

// phi-orthogonal projection onto the span of the kernel basis columns.
template <typename S>
Matrix<S> kernel_projection(const SpaceContext<S>& ctx, const std::vector<std::vector<S>>& basis) {
  const int n = ctx.dim();
  const int k = static_cast<int>(basis.size());
  Matrix<S> kmat(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) kmat(i, j) = basis[j][i];
  const Matrix<S> kg = kmat.transpose() * ctx.phi() * kmat;  // SPD Gram matrix
  auto gram_inv = inverse(kg, ctx.eps_at(kg.max_abs()));
  if (!gram_inv) throw Error("kernel Gram matrix is singular");  // unreachable: phi SPD
  return kmat * *gram_inv * kmat.transpose() * ctx.phi();
}

template <typename S>
Operator<S> transported_term_op(const SpaceContext<S>& ctx, const Operator<S>& op,
                                const Matrix<S>& a) {
  Operator<S> out{adjoint_matrix(ctx, a) * op.mat * a, op.kind};
  if constexpr (is_exact_v<S>) {
    if (out.kind != OperatorKind::General) validate_kind(ctx, out);
  }
  return out;
}

}  // namespace detail

// Applies A with Im A inside ker(pivot operator) to every term: the pivot dies,
// term i becomes (sign_i, scale_i, A^adj B_i A), and the target becomes the
// pullback of the old target under A. The reduced decomposition is re-verified
// entrywise before being returned.
template <typename S>
ReductionResult<S> reduce_by_kernel(const SpaceContext<S>& ctx, const Decomposition<S>& decomp,
                                    int pivot_index,
                                    const std::optional<Matrix<std::type_identity_t<S>>>& map = {}) {
  if (pivot_index < 0 || pivot_index >= static_cast<int>(decomp.terms.size()))
    throw ParseError("pivot index out of range");
  const Operator<S>& pivot = decomp.terms[pivot_index].op;
  const auto kernel = kernel_basis(ctx, pivot.mat);
  if (kernel.empty()) throw KernelError("pivot operator is invertible");

  Matrix<S> a = map ? *map : detail::kernel_projection(ctx, kernel);
  {
    const Matrix<S> prod = pivot.mat * a;
    if (!prod.is_zero(ctx.eps_at(pivot.mat.max_abs() * std::max(1.0, a.max_abs()))))
      throw DomainError("image of the map is not inside the pivot kernel");
  }

  ReductionResult<S> result;
  result.map = a;
  const CurvatureTensor<S> old_sum = decomposition_sum(ctx, decomp);
  for (int i = 0; i < static_cast<int>(decomp.terms.size()); ++i) {
    if (i == pivot_index) continue;
    const CanonicalTerm<S>& t = decomp.terms[i];
    result.reduced.terms.push_back(
        CanonicalTerm<S>(t.build, t.sign, detail::transported_term_op(ctx, t.op, a), t.scale));
  }
  if (decomp.target) result.reduced.target = precompose(*decomp.target, a);

  // The transform must agree with pulling back the whole sum.
  const CurvatureTensor<S> expected = precompose(old_sum, a);
  const CurvatureTensor<S> got = decomposition_sum(ctx, result.reduced);
  result.residual = tensor_max_deviation(got, expected);
  if (result.residual > ctx.eps_at(std::max(expected.max_abs(), got.max_abs())))
    throw Error("kernel reduction failed verification");
  return result;
}

// Variant that keeps a canonical target fixed: additionally requires the
// pullback of the target operator C to be +-C, which makes precompose(R_C, A)
// equal to R_C itself (the build is quadratic in its operator).
template <typename S>
ReductionResult<S> reduce_preserving_target(const SpaceContext<S>& ctx,
                                            const Decomposition<S>& decomp, int pivot_index,
                                            const std::optional<Matrix<std::type_identity_t<S>>>& map = {}) {
  if (!decomp.canonical_target)
    throw HypothesisError("target-preserving reduction needs a canonical target");
  if (pivot_index < 0 || pivot_index >= static_cast<int>(decomp.terms.size()))
    throw ParseError("pivot index out of range");
  const Operator<S>& pivot = decomp.terms[pivot_index].op;
  const auto kernel = kernel_basis(ctx, pivot.mat);
  if (kernel.empty()) throw KernelError("pivot operator is invertible");
  Matrix<S> a = map ? *map : detail::kernel_projection(ctx, kernel);

  const Matrix<S>& cmat = decomp.canonical_target->op.mat;
  const Matrix<S> pulled = adjoint_matrix(ctx, a) * cmat * a;
  const double eps = ctx.eps_at(std::max(cmat.max_abs(), pulled.max_abs()));
  if (!matrices_near(pulled, cmat, eps) && !matrices_near(pulled, -cmat, eps))
    throw HypothesisError("map does not preserve the target operator up to sign");

  ReductionResult<S> result = reduce_by_kernel(ctx, decomp, pivot_index, a);
  result.reduced.canonical_target = decomp.canonical_target;
  const CurvatureTensor<S> target_tensor = build_term(ctx, *decomp.canonical_target);
  result.reduced.target = target_tensor;
  result.residual =
      tensor_max_deviation(target_tensor, decomposition_sum(ctx, result.reduced));
  if (result.residual > ctx.eps_at(target_tensor.max_abs()))
    throw Error("target-preserving reduction failed verification");
  return result;
}

}  // namespace curv
