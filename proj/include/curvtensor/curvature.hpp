#pragma once

// The two canonical builds and the identities tying them together.
//
// With M(x, w) = phi(A e_x, e_w) (so M = A^T phi in coordinates):
//
//   symmetric build    R^S_A(x,y,z,w) = M(x,w) M(y,z) - M(x,z) M(y,w)
//   alternating build  R^L_B(x,y,z,w) = M(x,w) M(y,z) - M(x,z) M(y,w)
//                                       - 2 M(x,y) M(z,w)
//
// R^S_A is an algebraic curvature tensor when A is self-adjoint, R^L_B when
// B is skew-adjoint; the converses hold once the rank is at least 3. Both
// builds are quadratic in the operator: build(cA) = c^2 build(A).

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "curvtensor/context.hpp"
#include "curvtensor/errors.hpp"
#include "curvtensor/linalg.hpp"
#include "curvtensor/tensor.hpp"

namespace curv {

enum class BuildKind { Symmetric, Alternating };

inline std::string build_name(BuildKind b) {
  return b == BuildKind::Symmetric ? "S" : "Lambda";
}

// Kind of operator each build expects in canonical form.
inline OperatorKind canonical_operator_kind(BuildKind b) {
  return b == BuildKind::Symmetric ? OperatorKind::SelfAdjoint : OperatorKind::SkewAdjoint;
}

// Build a canonical operator of the given kind produces (General maps to S).
inline BuildKind build_for_kind(OperatorKind k) {
  return k == OperatorKind::SkewAdjoint ? BuildKind::Alternating : BuildKind::Symmetric;
}

namespace detail {

// M(x, w) = phi(A e_x, e_w).
template <typename S>
Matrix<S> pairing_matrix(const SpaceContext<S>& ctx, const Matrix<S>& a) {
  return a.transpose() * ctx.phi();
}

// Bilinear extension of a build in its pairing matrix: build(M) equals
// pairing_bilinear(M, M); the directional derivative in dM is
// pairing_bilinear(dM, M) + pairing_bilinear(M, dM).
template <typename S>
CurvatureTensor<S> pairing_bilinear(const Matrix<S>& m1, const Matrix<S>& m2, BuildKind kind) {
  const int n = m1.rows();
  CurvatureTensor<S> r(n);
  const bool alt = kind == BuildKind::Alternating;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w) {
          S v = m1(x, w) * m2(y, z) - m1(x, z) * m2(y, w);
          if (alt) v -= S(2) * m1(x, y) * m2(z, w);
          r.at(x, y, z, w) = v;
        }
  return r;
}

}  // namespace detail

template <typename S>
CurvatureTensor<S> build_symmetric(const SpaceContext<S>& ctx, const Matrix<S>& a) {
  const int n = ctx.dim();
  const Matrix<S> m = detail::pairing_matrix(ctx, a);
  CurvatureTensor<S> r(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w)
          r.at(x, y, z, w) = m(x, w) * m(y, z) - m(x, z) * m(y, w);
  return r;
}

template <typename S>
CurvatureTensor<S> build_alternating(const SpaceContext<S>& ctx, const Matrix<S>& a) {
  const int n = ctx.dim();
  const Matrix<S> m = detail::pairing_matrix(ctx, a);
  CurvatureTensor<S> r(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w)
          r.at(x, y, z, w) = m(x, w) * m(y, z) - m(x, z) * m(y, w)
                             - S(2) * m(x, y) * m(z, w);
  return r;
}

template <typename S>
CurvatureTensor<S> build(const SpaceContext<S>& ctx, BuildKind b, const Matrix<S>& a) {
  return b == BuildKind::Symmetric ? build_symmetric(ctx, a) : build_alternating(ctx, a);
}

// A signed canonical term sign * scale * build(op). The positive rational
// scale exists because |coefficient| can only be pushed into the operator
// through a square root, which exact arithmetic cannot always represent;
// float mode always absorbs it fully (scale 1).
template <typename S>
struct CanonicalTerm {
  BuildKind build = BuildKind::Symmetric;
  int sign = 1;  // +1 or -1
  Operator<S> op;
  Rational scale = Rational(1);

  CanonicalTerm() = default;
  CanonicalTerm(BuildKind b, int sgn, Operator<S> o, Rational sc = Rational(1), bool raw = false)
      : build(b), sign(sgn), op(std::move(o)), scale(std::move(sc)) {
    if (sign != 1 && sign != -1) throw ParseError("term sign must be +1 or -1");
    if (scale <= 0) throw ParseError("term scale must be positive");
    if (!raw && op.kind != canonical_operator_kind(build))
      throw ParseError("operator kind does not match the build (pass raw to override)");
  }
};

template <typename S>
CurvatureTensor<S> build_term(const SpaceContext<S>& ctx, const CanonicalTerm<S>& t) {
  CurvatureTensor<S> r = build(ctx, t.build, t.op.mat);
  S c = scalar_from_rational<S>(t.scale);
  if (t.sign < 0) c = -c;
  return c == S(1) ? r : r.scaled(c);
}

template <typename S>
CurvatureTensor<S> sum_terms(const SpaceContext<S>& ctx, const std::vector<CanonicalTerm<S>>& ts) {
  CurvatureTensor<S> acc(ctx.dim());
  for (const auto& t : ts) acc = acc + build_term(ctx, t);
  return acc;
}

// --- Axiom checking ---------------------------------------------------------

struct AxiomWitness {
  std::string axiom;             // "antisymmetry", "pair-symmetry", "cyclic-sum"
  std::array<int, 4> quadruple;  // first violating (x, y, z, w), 0-based
  double magnitude = 0;
};

struct AxiomReport {
  bool is_act = false;
  std::vector<AxiomWitness> witnesses;  // at most one per axiom family
};

// Checks R(x,y,z,w) = -R(y,x,z,w) = R(z,w,x,y) and the vanishing cyclic sum
// R(x,y,z,w) + R(z,x,y,w) + R(y,z,x,w) = 0. Float comparisons use
// tolerance * (1 + max |entry|).
template <typename S>
AxiomReport is_act(const SpaceContext<S>& ctx, const CurvatureTensor<S>& r) {
  const int n = r.dim();
  const double eps = ctx.eps_at(r.max_abs());
  AxiomReport rep;
  std::optional<AxiomWitness> anti, pair, cyc;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w) {
          if (!anti && !scalar_near(r.at(x, y, z, w), -r.at(y, x, z, w), eps)) {
            const double d = std::fabs(to_double(r.at(x, y, z, w)) + to_double(r.at(y, x, z, w)));
            anti = AxiomWitness{"antisymmetry", {x, y, z, w}, d};
          }
          if (!pair && !scalar_near(r.at(x, y, z, w), r.at(z, w, x, y), eps)) {
            const double d = std::fabs(to_double(r.at(x, y, z, w)) - to_double(r.at(z, w, x, y)));
            pair = AxiomWitness{"pair-symmetry", {x, y, z, w}, d};
          }
          if (!cyc) {
            const S s = r.at(x, y, z, w) + r.at(z, x, y, w) + r.at(y, z, x, w);
            if (!scalar_is_zero(s, eps)) cyc = AxiomWitness{"cyclic-sum", {x, y, z, w},
                                                            std::fabs(to_double(s))};
          }
        }
  if (anti) rep.witnesses.push_back(*anti);
  if (pair) rep.witnesses.push_back(*pair);
  if (cyc) rep.witnesses.push_back(*cyc);
  rep.is_act = rep.witnesses.empty();
  return rep;
}

// --- Identities ------------------------------------------------------------

template <typename S>
std::vector<S> basis_vector(int n, int i) {
  std::vector<S> v(n, S(0));
  v[i] = S(1);
  return v;
}

// R^S_A(x,y,z,w) = R^S_I(Ax, Ay, z, w) = R^S_I(x, y, A*z, A*w) for any A.
// Returns the three evaluations at one quadruple of coordinate vectors.
template <typename S>
std::array<S, 3> symmetric_shift_identity(const SpaceContext<S>& ctx, const Matrix<S>& a,
                                          const std::vector<S>& x, const std::vector<S>& y,
                                          const std::vector<S>& z, const std::vector<S>& w) {
  const CurvatureTensor<S> rs_a = build_symmetric(ctx, a);
  const CurvatureTensor<S> rs_phi = build_symmetric(ctx, Matrix<S>::identity(ctx.dim()));
  const Matrix<S> adj = adjoint_matrix(ctx, a);
  const S lhs = rs_a.eval(x, y, z, w);
  const S mid = rs_phi.eval(a.apply(x), a.apply(y), z, w);
  const S rhs = rs_phi.eval(x, y, adj.apply(z), adj.apply(w));
  return {lhs, mid, rhs};
}

template <typename S>
std::array<S, 3> symmetric_shift_identity(const SpaceContext<S>& ctx, const Matrix<S>& a,
                                          const std::array<int, 4>& q) {
  const int n = ctx.dim();
  return symmetric_shift_identity(ctx, a, basis_vector<S>(n, q[0]), basis_vector<S>(n, q[1]),
                                  basis_vector<S>(n, q[2]), basis_vector<S>(n, q[3]));
}

// Entrywise comparison result. `exact` is scalar equality (the exact-mode
// verdict); `max_abs` is the largest |difference| after conversion to double
// (the float-mode magnitude). Keeping both means a sub-double-precision
// exact mismatch cannot masquerade as zero.
struct Deviation {
  bool exact = false;
  double max_abs = 0;
};

template <typename S>
Deviation deviation_between(const CurvatureTensor<S>& a, const CurvatureTensor<S>& b) {
  return Deviation{a == b, tensor_max_deviation(a, b)};
}

// Deviation of R^L_A from R^S_A(x,y,z,w) - 2 phi(Ax,y) phi(Az,w), valid for
// every operator kind. Exact mode must report an exact match.
template <typename S>
Deviation builds_relation_deviation(const SpaceContext<S>& ctx, const Matrix<S>& a) {
  const int n = ctx.dim();
  const CurvatureTensor<S> rl = build_alternating(ctx, a);
  const CurvatureTensor<S> rs = build_symmetric(ctx, a);
  const Matrix<S> m = detail::pairing_matrix(ctx, a);
  CurvatureTensor<S> expected(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w)
          expected.at(x, y, z, w) = rs.at(x, y, z, w) - S(2) * m(x, y) * m(z, w);
  return deviation_between(rl, expected);
}

// For skew-adjoint A the alternating build decomposes into symmetric builds:
//   R^L_A(x,y,z,w) = 2 R^S_A(x,y,z,w) + R^S_A(x,z,y,w) + R^S_A(x,w,z,y).
// Requires kind SkewAdjoint.
template <typename S>
Deviation skew_build_identity_deviation(const SpaceContext<S>& ctx, const Operator<S>& a) {
  if (a.kind != OperatorKind::SkewAdjoint)
    throw HypothesisError("identity requires a skew-adjoint operator");
  if constexpr (is_exact_v<S>) validate_kind(ctx, a);
  const int n = ctx.dim();
  const CurvatureTensor<S> rl = build_alternating(ctx, a.mat);
  const CurvatureTensor<S> rs = build_symmetric(ctx, a.mat);
  CurvatureTensor<S> expected(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w)
          expected.at(x, y, z, w) =
              S(2) * rs.at(x, y, z, w) + rs.at(x, z, y, w) + rs.at(x, w, z, y);
  return deviation_between(rl, expected);
}

// --- Precomposition ---------------------------------------------------------

// (A*R)(x,y,z,w) = R(Ax, Ay, Az, Aw), computed one mode at a time. For the
// canonical builds this agrees with building from adjoint(A) * op * A.
template <typename S>
CurvatureTensor<S> precompose(const CurvatureTensor<S>& r, const Matrix<S>& a) {
  const int n = r.dim();
  if (a.rows() != n || a.cols() != n) throw ParseError("precompose shape mismatch");
  std::vector<S> cur = r.entries();
  std::vector<S> next(cur.size());
  // Contract mode m: result[... i_m ...] = sum_k cur[... k ...] * a(k, i_m).
  for (int mode = 0; mode < 4; ++mode) {
    size_t outer = 1, inner = 1;
    for (int t = 0; t < mode; ++t) outer *= n;
    for (int t = mode + 1; t < 4; ++t) inner *= n;
    for (auto& v : next) v = S(0);
    for (size_t o = 0; o < outer; ++o)
      for (int k = 0; k < n; ++k) {
        const size_t src_base = (o * n + k) * inner;
        for (int i = 0; i < n; ++i) {
          const S& c = a(k, i);
          if (c == S(0)) continue;
          const size_t dst_base = (o * n + i) * inner;
          for (size_t t = 0; t < inner; ++t) next[dst_base + t] += cur[src_base + t] * c;
        }
      }
    cur.swap(next);
  }
  CurvatureTensor<S> out(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int w = 0; w < n; ++w)
          out.at(x, y, z, w) = cur[((static_cast<size_t>(x) * n + y) * n + z) * n + w];
  return out;
}

template <typename S>
CurvatureTensor<S> precompose(const CurvatureTensor<S>& r, const Operator<S>& a) {
  return precompose(r, a.mat);
}

}  // namespace curv
