#pragma once

// Seeded fuzz campaigns over the library's theorem checkers. Each campaign
// constructs hypothesis- or premise-satisfying instances by explicit block
// patterns, randomizes them by conjugation with rational orthogonal maps
// (which preserves kinds, ranks, chain products, and every build identity),
// and counts violations. A nonzero failure count is a finding, not noise.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvtensor/chain_reduce.hpp"
#include "curvtensor/context.hpp"
#include "curvtensor/curvature.hpp"
#include "curvtensor/decompose.hpp"
#include "curvtensor/dependence.hpp"
#include "curvtensor/errors.hpp"
#include "curvtensor/linalg.hpp"
#include "curvtensor/rng.hpp"
#include "curvtensor/structure_group.hpp"

namespace curv::fuzz {

struct CampaignResult {
  std::string name;
  long trials = 0;
  long failures = 0;
  std::string first_failure;
  double worst = 0;  // campaign-specific magnitude (worst deviation / ratio)

  bool ok() const { return failures == 0; }
  void fail(const std::string& what) {
    ++failures;
    if (first_failure.empty()) first_failure = what;
  }
};

namespace detail {

// Rational orthogonal matrix via the Cayley transform of a random integer
// skew matrix; I + S is always invertible for real skew S.
inline Matrix<Rational> cayley_orthogonal(int n, Rng& rng) {
  Matrix<Rational> s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Rational v(rng.uniform(-2, 2));
      s(i, j) = v;
      s(j, i) = -v;
    }
  const Matrix<Rational> eye = Matrix<Rational>::identity(n);
  const auto inv = inverse(eye + s);
  return (eye - s) * (*inv);
}

inline Matrix<Rational> embed_block(int n, int offset, const Matrix<Rational>& block) {
  Matrix<Rational> m(n, n);
  for (int i = 0; i < block.rows(); ++i)
    for (int j = 0; j < block.cols(); ++j) m(offset + i, offset + j) = block(i, j);
  return m;
}

inline Matrix<Rational> random_invertible_symmetric(int p, Rng& rng) {
  for (;;) {
    Matrix<Rational> m(p, p);
    for (int i = 0; i < p; ++i)
      for (int j = i; j < p; ++j) {
        const Rational v(rng.uniform(-3, 3));
        m(i, j) = v;
        m(j, i) = v;
      }
    if (bareiss_rank(m) == p) return m;
  }
}

inline Matrix<Rational> random_invertible_skew(int p, Rng& rng) {
  for (;;) {
    Matrix<Rational> m(p, p);
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j) {
        const Rational v(rng.uniform(-3, 3));
        m(i, j) = v;
        m(j, i) = -v;
      }
    if (bareiss_rank(m) == p) return m;
  }
}

inline Matrix<Rational> conjugate(const Matrix<Rational>& q, const Matrix<Rational>& x) {
  return q * x * q.transpose();
}

template <typename S>
Operator<S> as_operator(const Matrix<Rational>& m, OperatorKind kind) {
  return Operator<S>{m.template convert<S>(), kind};
}

}  // namespace detail

// --- Build axioms ------------------------------------------------------------------

// Symmetric builds of self-adjoint operators and alternating builds of
// skew-adjoint operators always land in the tensor space; a symmetric build
// of a general operator of rank >= 3 lands there exactly when the operator is
// self-adjoint.
template <typename S>
CampaignResult axiom_campaign(int n, long per_arm, std::uint64_t seed) {
  CampaignResult res;
  res.name = "axioms(n=" + std::to_string(n) + ")";
  const auto ctx = SpaceContext<S>::standard(n);
  for (long i = 0; i < per_arm; ++i) {
    ++res.trials;
    const auto a = random_operator(ctx, OperatorKind::SelfAdjoint, std::nullopt,
                                   derive_seed(seed, {1, static_cast<std::uint64_t>(i)}));
    if (!is_act(ctx, build_symmetric(ctx, a.mat)).is_act)
      res.fail("symmetric build of a self-adjoint operator failed the axioms at trial " +
               std::to_string(i));

    ++res.trials;
    const auto b = random_operator(ctx, OperatorKind::SkewAdjoint, std::nullopt,
                                   derive_seed(seed, {2, static_cast<std::uint64_t>(i)}));
    if (!is_act(ctx, build_alternating(ctx, b.mat)).is_act)
      res.fail("alternating build of a skew-adjoint operator failed the axioms at trial " +
               std::to_string(i));

    if (n >= 3) {
      ++res.trials;
      const int r = 3 + static_cast<int>(i % (n - 2));
      const auto g = random_operator(ctx, OperatorKind::General, r,
                                     derive_seed(seed, {3, static_cast<std::uint64_t>(i)}));
      const bool self_adjoint =
          max_abs_diff(adjoint_matrix(ctx, g.mat), g.mat) <= ctx.eps_at(g.mat.max_abs());
      const bool act = is_act(ctx, build_symmetric(ctx, g.mat)).is_act;
      if (act != self_adjoint)
        res.fail("rank-" + std::to_string(r) + " general operator at trial " + std::to_string(i) +
                 ": axioms " + (act ? "passed" : "failed") + " but operator is " +
                 (self_adjoint ? "" : "not ") + "self-adjoint");
    }
  }
  return res;
}

// --- Alternating-build identity ------------------------------------------------------

// 2 R^S(x,y,z,w) + R^S(x,z,y,w) + R^S(x,w,z,y) against the alternating build,
// for skew-adjoint operators. Exact mode demands literal zero; float mode a
// 1e-10 relative bound.
template <typename S>
CampaignResult skew_identity_campaign(const std::vector<int>& dims, long trials,
                                      std::uint64_t seed) {
  CampaignResult res;
  res.name = "skew-identity";
  for (long i = 0; i < trials; ++i) {
    ++res.trials;
    const int n = dims[i % dims.size()];
    const auto ctx = SpaceContext<S>::standard(n);
    const auto a = random_operator(ctx, OperatorKind::SkewAdjoint, std::nullopt,
                                   derive_seed(seed, {static_cast<std::uint64_t>(i)}));
    const Deviation dev = skew_build_identity_deviation(ctx, a);
    if constexpr (is_exact_v<S>) {
      if (!dev.exact) res.fail("nonzero exact deviation at trial " + std::to_string(i));
    } else {
      const double scale = 1 + build_alternating(ctx, a.mat).max_abs();
      const double ratio = dev.max_abs / scale;
      res.worst = std::max(res.worst, ratio);
      if (ratio > 1e-10)
        res.fail("relative deviation " + std::to_string(ratio) + " at trial " +
                 std::to_string(i));
    }
  }
  return res;
}

// --- Precomposition -------------------------------------------------------------------

// R_C(Ax, Ay, Az, Aw) = R_{A*CA}(x, y, z, w) for arbitrary A, both builds.
template <typename S>
CampaignResult precompose_campaign(int n, long pairs_per_build, std::uint64_t seed) {
  CampaignResult res;
  res.name = "precompose(n=" + std::to_string(n) + ")";
  const auto ctx = SpaceContext<S>::standard(n);
  for (long i = 0; i < pairs_per_build; ++i) {
    for (const BuildKind bk : {BuildKind::Symmetric, BuildKind::Alternating}) {
      ++res.trials;
      const OperatorKind kind = canonical_operator_kind(bk);
      const auto c =
          random_operator(ctx, kind, std::nullopt,
                          derive_seed(seed, {static_cast<std::uint64_t>(bk),
                                             static_cast<std::uint64_t>(i), 1}));
      const auto a =
          random_operator(ctx, OperatorKind::General, std::nullopt,
                          derive_seed(seed, {static_cast<std::uint64_t>(bk),
                                             static_cast<std::uint64_t>(i), 2}));
      const auto lhs = precompose(build(ctx, bk, c.mat), a.mat);
      const auto transported = adjoint_matrix(ctx, a.mat) * c.mat * a.mat;
      const auto rhs = build(ctx, bk, transported);
      const double dev = tensor_max_deviation(lhs, rhs);
      res.worst = std::max(res.worst, dev);
      const double eps = is_exact_v<S> ? 0 : ctx.eps_at(std::max(lhs.max_abs(), rhs.max_abs()));
      if (dev > eps)
        res.fail("deviation " + std::to_string(dev) + " for " + build_name(bk) + " at trial " +
                 std::to_string(i));
    }
  }
  return res;
}

// --- Span dimension --------------------------------------------------------------------

// The flattened symmetric builds of random self-adjoint operators span a
// space of dimension exactly n^2 (n^2 - 1) / 12.
inline CampaignResult dimension_campaign(int n, long samples, std::uint64_t seed) {
  CampaignResult res;
  res.name = "span-dimension(n=" + std::to_string(n) + ")";
  res.trials = samples;
  const auto ctx = SpaceContext<Rational>::standard(n);
  Matrix<Rational> stacked(static_cast<int>(samples), n * n * n * n);
  for (long i = 0; i < samples; ++i) {
    const auto a = random_operator(ctx, OperatorKind::SelfAdjoint, std::nullopt,
                                   derive_seed(seed, {static_cast<std::uint64_t>(i)}));
    const auto flat = build_symmetric(ctx, a.mat).flatten();
    for (size_t j = 0; j < flat.size(); ++j) stacked(static_cast<int>(i), static_cast<int>(j)) = flat[j];
  }
  const long r = bareiss_rank(stacked);
  const long expected = act_space_dim(n);
  res.worst = static_cast<double>(r);
  if (r != expected)
    res.fail("span rank " + std::to_string(r) + ", expected " + std::to_string(expected));
  return res;
}

// --- Structure-group theorem -------------------------------------------------------------

// The two fixture forms of the acceptance suite: a full-rank anti-symmetric
// form at n=4 and a rank-4 one at n=6.
template <typename S>
Matrix<S> standard_block_form(int n, int pairs) {
  Matrix<S> t(n, n);
  for (int k = 0; k < pairs; ++k) {
    t(2 * k, 2 * k + 1) = S(1);
    t(2 * k + 1, 2 * k) = S(-1);
  }
  return t;
}

template <typename S>
CampaignResult structure_campaign(long trials_per_pool, std::uint64_t seed) {
  CampaignResult res;
  res.name = "structure-group";
  struct Fixture { int n; int pairs; };
  for (const Fixture f : {Fixture{4, 2}, Fixture{6, 2}}) {
    const auto ctx = SpaceContext<S>::standard(f.n);
    const auto tau = form_from_matrix(ctx, standard_block_form<S>(f.n, f.pairs));
    const auto rep = verify_structure_theorem(ctx, tau, trials_per_pool,
                                              derive_seed(seed, {static_cast<std::uint64_t>(f.n)}));
    res.trials += rep.isometries.samples + rep.anti_isometries.samples + rep.generic.samples;
    if (!rep.equivalence_holds)
      res.fail("equivalence mismatch at n=" + std::to_string(f.n) + " in pool " +
               rep.first_mismatch_pool + " index " + std::to_string(rep.first_mismatch_index));
    if (rep.generic.in_pm_group == rep.generic.samples)
      res.fail("generic pool at n=" + std::to_string(f.n) +
               " produced no non-members; campaign is vacuous");
  }
  return res;
}

// --- Triple independence theorems ----------------------------------------------------------

template <typename S>
CampaignResult triple_ssl_campaign(const std::vector<int>& dims, long trials,
                                   std::uint64_t seed) {
  CampaignResult res;
  res.name = "triple-S/S/Lambda";
  for (long i = 0; i < trials; ++i) {
    ++res.trials;
    const int n = dims[i % dims.size()];
    const auto ctx = SpaceContext<S>::standard(n);
    const auto b = random_operator(ctx, OperatorKind::SelfAdjoint, std::nullopt,
                                   derive_seed(seed, {static_cast<std::uint64_t>(i), 1}));
    const auto c = random_operator(ctx, OperatorKind::SkewAdjoint, std::nullopt,
                                   derive_seed(seed, {static_cast<std::uint64_t>(i), 2}));
    const auto rep = check_theorem_ssl(ctx, b, c);
    if (rep.status == TheoremStatus::Falsified)
      res.fail("falsified at trial " + std::to_string(i) + " (n=" + std::to_string(n) + ")");
  }
  return res;
}

template <typename S>
CampaignResult triple_sll_campaign(const std::vector<int>& dims, long trials,
                                   std::uint64_t seed) {
  CampaignResult res;
  res.name = "triple-S/Lambda/Lambda";
  for (long i = 0; i < trials; ++i) {
    ++res.trials;
    const int n = dims[i % dims.size()];
    const auto ctx = SpaceContext<S>::standard(n);
    const auto c = random_operator(ctx, OperatorKind::SkewAdjoint, std::nullopt,
                                   derive_seed(seed, {static_cast<std::uint64_t>(i), 1}));
    const auto d = random_operator(ctx, OperatorKind::SkewAdjoint, std::nullopt,
                                   derive_seed(seed, {static_cast<std::uint64_t>(i), 2}));
    const auto rep = check_theorem_sll(ctx, c, d);
    if (rep.status == TheoremStatus::Falsified)
      res.fail("falsified at trial " + std::to_string(i) + " (n=" + std::to_string(n) + ")");
  }
  return res;
}

// --- Necessary conditions on dependent triples ----------------------------------------------

// Dependent-by-construction instances. The n=3 family solves
// 1 - t^2 + 3 c^2 = 0 over rationals (t, c) in {(2,1), (7,4), (26,15),
// (97,56)}, giving a proper relation among the three tensors; the n >= 4
// family aligns a rank-2 rotation block with a matching diagonal, giving a
// dependent but subset-degenerate triple. Both are conjugation-randomized
// and must satisfy commutation and the rank-2 conclusion.
template <typename S>
CampaignResult necessary_conditions_campaign(long trials, std::uint64_t seed) {
  CampaignResult res;
  res.name = "necessary-conditions";
  static const std::pair<long, long> pell[] = {{2, 1}, {7, 4}, {26, 15}, {97, 56}};
  for (long i = 0; i < trials; ++i) {
    ++res.trials;
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(i)}));
    const bool proper_family = i % 2 == 0;
    const int n = proper_family ? 3 : 4 + static_cast<int>(i % 3);
    const auto ctx = SpaceContext<S>::standard(n);

    Matrix<Rational> b0(n, n), c0(n, n);
    if (proper_family) {
      const auto [t, c] = pell[(i / 2) % 4];
      b0(0, 0) = t;
      b0(1, 1) = t;
      b0(2, 2) = Rational(1) / t;
      const Rational cv = rng.coin() ? Rational(c) : Rational(-c);
      c0(0, 1) = cv;
      c0(1, 0) = -cv;
    } else {
      const long t = rng.uniform(1, 3);
      b0(0, 0) = t;
      b0(1, 1) = t;
      const Rational cv(rng.uniform(1, 3));
      c0(0, 1) = cv;
      c0(1, 0) = -cv;
    }
    const auto q = detail::cayley_orthogonal(n, rng);
    const auto b = detail::as_operator<S>(detail::conjugate(q, b0), OperatorKind::SelfAdjoint);
    const auto c = detail::as_operator<S>(detail::conjugate(q, c0), OperatorKind::SkewAdjoint);

    const auto rep = necessary_conditions_ssl(ctx, b, c);
    if (rep.tensors.independent) {
      res.fail("constructed instance reported independent at trial " + std::to_string(i));
      continue;
    }
    if (proper_family && !rep.gate_triggered) {
      res.fail("proper instance did not trigger the gate at trial " + std::to_string(i));
      continue;
    }
    if (!rep.conclusions_hold)
      res.fail("conclusions failed at trial " + std::to_string(i) +
               " (commute=" + std::to_string(rep.commute) +
               ", rank_c=" + std::to_string(rep.rank_c) + ")");
  }
  return res;
}

// --- Pairwise exclusions -----------------------------------------------------------------

template <typename S>
CampaignResult exclusion_campaign(long pairs_per_arm, std::uint64_t seed) {
  CampaignResult res;
  res.name = "pairwise-exclusions";
  for (long i = 0; i < pairs_per_arm; ++i) {
    {  // mixed: self-adjoint of rank >= 3 vs nonzero skew-adjoint
      ++res.trials;
      const int n = 3 + static_cast<int>(i % 3);
      const auto ctx = SpaceContext<S>::standard(n);
      const int r = 3 + static_cast<int>(i % (n - 2));
      const auto b = random_operator(ctx, OperatorKind::SelfAdjoint, r,
                                     derive_seed(seed, {1, static_cast<std::uint64_t>(i)}));
      const auto a = random_operator(ctx, OperatorKind::SkewAdjoint, std::nullopt,
                                     derive_seed(seed, {2, static_cast<std::uint64_t>(i)}));
      if (!pairwise_exclusions(ctx, a, b).holds)
        res.fail("mixed arm equality at trial " + std::to_string(i));
    }
    {  // symmetric/symmetric with max rank >= 4
      ++res.trials;
      const int n = 4 + static_cast<int>(i % 2);
      const auto ctx = SpaceContext<S>::standard(n);
      const int r = 4 + static_cast<int>(i % (n - 3));
      const auto a = random_operator(ctx, OperatorKind::SelfAdjoint, r,
                                     derive_seed(seed, {3, static_cast<std::uint64_t>(i)}));
      const auto b = random_operator(ctx, OperatorKind::SelfAdjoint, std::nullopt,
                                     derive_seed(seed, {4, static_cast<std::uint64_t>(i)}));
      if (!pairwise_exclusions(ctx, a, b).holds)
        res.fail("symmetric arm equality at trial " + std::to_string(i));
    }
    {  // alternating/alternating, both nonzero
      ++res.trials;
      const int n = 2 + static_cast<int>(i % 4);
      const auto ctx = SpaceContext<S>::standard(n);
      const auto c = random_operator(ctx, OperatorKind::SkewAdjoint, std::nullopt,
                                     derive_seed(seed, {5, static_cast<std::uint64_t>(i)}));
      const auto d = random_operator(ctx, OperatorKind::SkewAdjoint, std::nullopt,
                                     derive_seed(seed, {6, static_cast<std::uint64_t>(i)}));
      if (!pairwise_exclusions(ctx, c, d).holds)
        res.fail("alternating arm equality at trial " + std::to_string(i));
    }
  }
  return res;
}

// --- Chain theorems ------------------------------------------------------------------------

// Premise-satisfying three-node chains. Three shapes, all conjugated:
//   interior: A of rank >= 4 on a leading block, rank-one self-adjoint B in
//     the complement (its build vanishes), C = +-A;
//   exact with self-adjoint B: the block has corank one and B spans it;
//   exact with skew B: A invertible, B = 0, which also exercises the
//     invertibility conclusions.
template <typename S>
CampaignResult three_chain_campaign(long instances, std::uint64_t seed) {
  CampaignResult res;
  res.name = "three-chain";
  for (long i = 0; i < instances; ++i) {
    ++res.trials;
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(i)}));
    const int shape = static_cast<int>(i % 3);
    const int n = 5 + static_cast<int>(rng.uniform(0, 3));
    const auto ctx = SpaceContext<S>::standard(n);

    int p = 0;
    OperatorKind kind_a = OperatorKind::SelfAdjoint;
    if (shape == 0) p = 4 + static_cast<int>(rng.uniform(0, std::max(0, n - 6)));
    else if (shape == 1) p = n - 1;
    else p = n;
    if (rng.coin() && p % 2 == 0 && p >= 4) kind_a = OperatorKind::SkewAdjoint;

    const Matrix<Rational> block = kind_a == OperatorKind::SelfAdjoint
                                       ? detail::random_invertible_symmetric(p, rng)
                                       : detail::random_invertible_skew(p, rng);
    const Matrix<Rational> a0 = detail::embed_block(n, 0, block);

    Matrix<Rational> b0(n, n);
    OperatorKind kind_b = OperatorKind::SkewAdjoint;  // shape 2: B = 0, skew
    if (shape != 2 && p < n) {
      kind_b = OperatorKind::SelfAdjoint;
      std::vector<Rational> v(n);
      bool nonzero = false;
      for (int j = p; j < n; ++j) {
        v[j] = Rational(rng.uniform(-3, 3));
        if (v[j] != 0) nonzero = true;
      }
      if (!nonzero) v[p] = 1;
      for (int r = 0; r < n; ++r)
        for (int cidx = 0; cidx < n; ++cidx) b0(r, cidx) = v[r] * v[cidx];
    }

    const int sigma = rng.coin() ? 1 : -1;
    const Matrix<Rational> c0 = a0.scaled(Rational(sigma));
    const int eps = rng.coin() ? 1 : -1;

    const auto q = detail::cayley_orthogonal(n, rng);
    const auto a = detail::as_operator<S>(detail::conjugate(q, a0), kind_a);
    const auto b = detail::as_operator<S>(detail::conjugate(q, b0), kind_b);
    const auto c = detail::as_operator<S>(detail::conjugate(q, c0), kind_a);

    try {
      const auto rep = analyze_three_chain(ctx, a, b, c, eps, -1);
      if (!rep.all_hold()) {
        std::string bad;
        for (const auto& concl : rep.conclusions)
          if (concl.status == ConclusionStatus::Fail) bad += concl.name + "; ";
        res.fail("conclusions failed at trial " + std::to_string(i) + ": " + bad);
      }
      if (shape != 0 && !rep.exact_sequence)
        res.fail("constructed exact sequence not detected at trial " + std::to_string(i));
    } catch (const Error& e) {
      res.fail(std::string("checker rejected constructed instance at trial ") +
               std::to_string(i) + ": " + e.what());
    }
  }
  return res;
}

// Premise-satisfying stars: legs cancel in sign-paired duplicates. Skew hubs
// are zero (their legs invertible, hence exact); self-adjoint hubs are rank
// one with legs supported away from the hub vector.
template <typename S>
CampaignResult star_campaign(long instances, std::uint64_t seed) {
  CampaignResult res;
  res.name = "star";
  for (long i = 0; i < instances; ++i) {
    ++res.trials;
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(i)}));
    const int n = 4 + static_cast<int>(rng.uniform(0, 3));
    const auto ctx = SpaceContext<S>::standard(n);
    const bool skew_hub = i % 2 == 0;
    const int pairs = 1 + static_cast<int>(rng.uniform(0, 1));

    Matrix<Rational> a0(n, n);
    if (!skew_hub) {
      std::vector<Rational> v(n);
      v[0] = Rational(rng.uniform(1, 3));
      for (int r = 0; r < n; ++r)
        for (int cidx = 0; cidx < n; ++cidx) a0(r, cidx) = v[r] * v[cidx];
    }

    std::vector<Operator<S>> legs;
    std::vector<int> signs;
    const auto q = detail::cayley_orthogonal(n, rng);
    for (int k = 0; k < pairs; ++k) {
      Matrix<Rational> leg0(n, n);
      OperatorKind leg_kind;
      if (skew_hub) {
        // Any invertible leg composes to zero with the zero hub.
        const bool leg_self = rng.coin();
        leg_kind = leg_self ? OperatorKind::SelfAdjoint : OperatorKind::SkewAdjoint;
        if (leg_self) leg0 = detail::random_invertible_symmetric(n, rng);
        else if (n % 2 == 0) leg0 = detail::random_invertible_skew(n, rng);
        else { leg_kind = OperatorKind::SelfAdjoint; leg0 = detail::random_invertible_symmetric(n, rng); }
      } else {
        // Legs vanish on the hub vector e_0: support in coordinates 1..n-1.
        const bool leg_self = rng.coin();
        const int m = n - 1;
        leg_kind = leg_self ? OperatorKind::SelfAdjoint : OperatorKind::SkewAdjoint;
        Matrix<Rational> blk = leg_self ? detail::random_invertible_symmetric(m, rng)
                                        : (m % 2 == 0 ? detail::random_invertible_skew(m, rng)
                                                      : Matrix<Rational>(m, m));
        if (blk.is_zero(0)) { leg_kind = OperatorKind::SelfAdjoint; blk = detail::random_invertible_symmetric(m, rng); }
        leg0 = detail::embed_block(n, 1, blk);
      }
      const auto leg = detail::as_operator<S>(detail::conjugate(q, leg0), leg_kind);
      legs.push_back(leg);
      legs.push_back(leg);
      signs.push_back(1);
      signs.push_back(-1);
    }
    const auto a = detail::as_operator<S>(
        detail::conjugate(q, a0), skew_hub ? OperatorKind::SkewAdjoint : OperatorKind::SelfAdjoint);

    try {
      const auto rep = analyze_star(ctx, a, legs, signs);
      if (!rep.base.all_hold())
        res.fail("hub conclusions failed at trial " + std::to_string(i));
      for (const auto& leg : rep.legs)
        if (leg.invertible.status == ConclusionStatus::Fail)
          res.fail("leg invertibility failed at trial " + std::to_string(i));
      if (skew_hub)
        for (const auto& leg : rep.legs)
          if (!leg.exact)
            res.fail("constructed exact leg not detected at trial " + std::to_string(i));
    } catch (const Error& e) {
      res.fail(std::string("checker rejected constructed star at trial ") + std::to_string(i) +
               ": " + e.what());
    }
  }
  return res;
}

// Premise-satisfying four-node chains: A = +-C on a leading block of rank
// >= 4, B = +-D on a disjoint block of rank >= 4, signs (e1, -1, -e1).
template <typename S>
CampaignResult four_chain_campaign(long instances, std::uint64_t seed) {
  CampaignResult res;
  res.name = "four-chain";
  for (long i = 0; i < instances; ++i) {
    ++res.trials;
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(i)}));
    const int n = 8 + static_cast<int>(rng.uniform(0, 2));
    const auto ctx = SpaceContext<S>::standard(n);
    const int p = 4;
    const int qsz = 4;

    const bool ac_skew = rng.coin();
    const bool bd_skew = rng.coin();
    const Matrix<Rational> blk1 = ac_skew ? detail::random_invertible_skew(p, rng)
                                          : detail::random_invertible_symmetric(p, rng);
    const Matrix<Rational> blk2 = bd_skew ? detail::random_invertible_skew(qsz, rng)
                                          : detail::random_invertible_symmetric(qsz, rng);
    const Matrix<Rational> c0 = detail::embed_block(n, 0, blk1);
    const Matrix<Rational> b0 = detail::embed_block(n, p, blk2);
    const int s_ac = rng.coin() ? 1 : -1;
    const int s_bd = rng.coin() ? 1 : -1;
    const Matrix<Rational> a0 = c0.scaled(Rational(s_ac));
    const Matrix<Rational> d0 = b0.scaled(Rational(s_bd));
    const int eps1 = rng.coin() ? 1 : -1;

    const auto q = detail::cayley_orthogonal(n, rng);
    const OperatorKind k1 = ac_skew ? OperatorKind::SkewAdjoint : OperatorKind::SelfAdjoint;
    const OperatorKind k2 = bd_skew ? OperatorKind::SkewAdjoint : OperatorKind::SelfAdjoint;
    const auto a = detail::as_operator<S>(detail::conjugate(q, a0), k1);
    const auto b = detail::as_operator<S>(detail::conjugate(q, b0), k2);
    const auto c = detail::as_operator<S>(detail::conjugate(q, c0), k1);
    const auto d = detail::as_operator<S>(detail::conjugate(q, d0), k2);

    try {
      const auto rep = analyze_four_chain(ctx, a, b, c, d, eps1, -1, -eps1);
      if (!rep.all_hold()) {
        std::string bad;
        for (const auto& concl : rep.conclusions)
          if (concl.status == ConclusionStatus::Fail) bad += concl.name + "; ";
        res.fail("conclusions failed at trial " + std::to_string(i) + ": " + bad);
      }
    } catch (const Error& e) {
      res.fail(std::string("checker rejected constructed instance at trial ") +
               std::to_string(i) + ": " + e.what());
    }
  }
  return res;
}

// rank(A^k) = rank(A) for self- and skew-adjoint A. A statement about true
// ranks, so it runs in exact arithmetic regardless of the ambient mode: the
// singular values of a fourth power can legitimately fall below any float
// tolerance while the rank is unchanged.
inline CampaignResult rank_power_campaign(long operators, std::uint64_t seed) {
  CampaignResult res;
  res.name = "rank-of-powers";
  for (long i = 0; i < operators; ++i) {
    ++res.trials;
    const int n = 2 + static_cast<int>(i % 5);
    const auto ctx = SpaceContext<Rational>::standard(n);
    const OperatorKind kind = i % 2 == 0 ? OperatorKind::SelfAdjoint : OperatorKind::SkewAdjoint;
    const auto a = random_operator(ctx, kind, std::nullopt,
                                   derive_seed(seed, {static_cast<std::uint64_t>(i)}));
    const int r = rank(ctx, a.mat);
    Matrix<Rational> power = a.mat;
    for (int k = 2; k <= 4; ++k) {
      power = power * a.mat;
      const int rk = rank(ctx, power);
      if (rk != r) {
        res.fail("rank(A^" + std::to_string(k) + ") = " + std::to_string(rk) + " != rank(A) = " +
                 std::to_string(r) + " at trial " + std::to_string(i));
        break;
      }
    }
  }
  return res;
}

// --- Kernel reduction -------------------------------------------------------------------

// Random decompositions whose pivot operator has a nontrivial kernel; the
// default projection map must drop exactly the pivot term, reproduce the
// precomposed target with zero residual, and keep every term in the space.
template <typename S>
CampaignResult reduction_campaign(long instances, std::uint64_t seed) {
  CampaignResult res;
  res.name = "kernel-reduction";
  for (long i = 0; i < instances; ++i) {
    ++res.trials;
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(i)}));
    const int n = 3 + static_cast<int>(i % 4);
    const auto ctx = SpaceContext<S>::standard(n);
    const int m = 2 + static_cast<int>(i % 3);
    const int pivot = static_cast<int>(rng.uniform(0, m - 1));

    Decomposition<S> d;
    for (int t = 0; t < m; ++t) {
      const bool self = rng.coin();
      const OperatorKind kind = self ? OperatorKind::SelfAdjoint : OperatorKind::SkewAdjoint;
      std::optional<int> rank_req;
      if (t == pivot) {
        if (self) rank_req = 1 + static_cast<int>(rng.uniform(0, n - 2));
        else rank_req = 2 * (1 + static_cast<int>(rng.uniform(0, (n - 1) / 2 - 1 >= 0 ? (n - 1) / 2 - 1 : 0)));
      }
      const auto op = random_operator(ctx, kind, rank_req,
                                      derive_seed(seed, {static_cast<std::uint64_t>(i),
                                                         static_cast<std::uint64_t>(t)}));
      d.terms.push_back(CanonicalTerm<S>(build_for_kind(kind), rng.coin() ? 1 : -1, op));
    }
    d.target = decomposition_sum(ctx, d);

    try {
      const auto rr = reduce_by_kernel(ctx, d, pivot);
      if (rr.reduced.terms.size() != d.terms.size() - 1)
        res.fail("wrong term count at trial " + std::to_string(i));
      else if (is_exact_v<S> ? rr.residual != 0 : rr.residual > ctx.eps_at(1))
        res.fail("nonzero residual " + std::to_string(rr.residual) + " at trial " +
                 std::to_string(i));
      else {
        for (const auto& term : rr.reduced.terms)
          if (!is_act(ctx, build_term(ctx, term)).is_act) {
            res.fail("reduced term left the tensor space at trial " + std::to_string(i));
            break;
          }
      }
    } catch (const Error& e) {
      res.fail(std::string("reduction rejected constructed instance at trial ") +
               std::to_string(i) + ": " + e.what());
    }
  }
  return res;
}

}  // namespace curv::fuzz
