#pragma once

// Term-count estimation for sums of canonical curvature tensors: a sampled
// spanning-set constructive decomposition, a multi-start damped Gauss-Newton
// minimal search, and the campaign comparing the mixed estimate against the
// symmetric-only one.
//
// Search internals parameterize each term by its pairing matrix M (symmetric
// or anti-symmetric, so n(n+1)/2 resp. n(n-1)/2 free entries); the operator is
// recovered as A = phi^{-1} M^T and the build is quadratic in M, which gives
// an analytic Jacobian via the polarized build. A float hit is refined by
// rationalizing the normalized directions and solving the coefficients
// exactly; minimality is certified only where a certificate exists (the
// zero tensor, single terms, or n = 2 where the whole space is a line).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvtensor/chain_reduce.hpp"
#include "curvtensor/context.hpp"
#include "curvtensor/curvature.hpp"
#include "curvtensor/dependence.hpp"
#include "curvtensor/errors.hpp"
#include "curvtensor/linalg.hpp"
#include "curvtensor/rng.hpp"
#include "curvtensor/tensor.hpp"

namespace curv {

enum class Family { SymmetricOnly, SkewOnly, Mixed };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::SymmetricOnly: return "sym";
    case Family::SkewOnly: return "skew";
    case Family::Mixed: return "mixed";
  }
  return "?";
}

inline std::optional<Family> family_from_name(const std::string& s) {
  if (s == "sym") return Family::SymmetricOnly;
  if (s == "skew") return Family::SkewOnly;
  if (s == "mixed") return Family::Mixed;
  return std::nullopt;
}

enum class BoundKind { Exact, Heuristic };

inline std::string bound_kind_name(BoundKind b) {
  return b == BoundKind::Exact ? "exact" : "heuristic";
}

// Relative acceptance threshold for a float-mode search hit.
inline constexpr double kHitThreshold = 1e-7;

namespace detail {

template <typename S>
void require_act(const SpaceContext<S>& ctx, const CurvatureTensor<S>& r) {
  if (!is_act(ctx, r).is_act)
    throw HypothesisError("target is not an algebraic curvature tensor");
}

// Turn an exact coefficient into (sign, scaled operator, leftover scale):
// |c| is pushed into the operator when it is a perfect rational square,
// otherwise it stays in the term's scale field.
inline std::pair<Rational, Rational> split_square_scale(const Rational& c) {
  const Rational mag = c < 0 ? Rational(-c) : c;
  if (auto root = exact_sqrt(mag)) return {*root, Rational(1)};
  return {Rational(1), mag};
}

template <typename S>
OperatorKind term_kind(Family f, size_t index) {
  switch (f) {
    case Family::SymmetricOnly: return OperatorKind::SelfAdjoint;
    case Family::SkewOnly: return OperatorKind::SkewAdjoint;
    case Family::Mixed:
      return index % 2 == 0 ? OperatorKind::SelfAdjoint : OperatorKind::SkewAdjoint;
  }
  return OperatorKind::SelfAdjoint;
}

}  // namespace detail

// --- Constructive decomposition ------------------------------------------------

// Samples dim A(V) = n^2(n^2-1)/12 operators of the family's kind(s), solves
// the flattened linear system exactly, and absorbs coefficient magnitudes via
// sqrt scaling (fully in float; up to perfect squares in exact mode, keeping
// the remainder in the term scale). Zero coefficients are dropped.
template <typename S>
Decomposition<S> constructive_decomposition(const SpaceContext<S>& ctx,
                                            const CurvatureTensor<S>& r, Family family,
                                            std::uint64_t seed = 1, int retries = 32) {
  detail::require_act(ctx, r);
  Decomposition<S> out;
  out.target = r;
  if (r.is_zero(ctx.eps_at(0))) return out;

  const int n = ctx.dim();
  const long d = act_space_dim(n);

  // Exact arithmetic throughout: in float mode the sampled operators have
  // small integer entries and the target lifts exactly to rationals.
  std::vector<Rational> rhs;
  for (double x : r.template convert<double>().flatten()) rhs.push_back(rational_from_double(x));
  if constexpr (is_exact_v<S>) {
    rhs.clear();
    for (const auto& x : r.flatten()) rhs.push_back(x);
  }
  auto exact_ctx = SpaceContext<Rational>(n, ctx.phi().template convert<Rational>());

  for (int attempt = 0; attempt < retries; ++attempt) {
    Rng rng(derive_seed(seed, {0x5eedu, static_cast<std::uint64_t>(attempt)}));
    std::vector<Operator<Rational>> ops;
    std::vector<std::vector<Rational>> cols;
    for (long i = 0; i < d; ++i) {
      const OperatorKind kind = detail::term_kind<S>(family, static_cast<size_t>(i));
      const auto op = random_operator(exact_ctx, kind, std::nullopt,
                                      derive_seed(seed, {static_cast<std::uint64_t>(attempt),
                                                         static_cast<std::uint64_t>(i)}));
      ops.push_back(op);
      cols.push_back(build(exact_ctx, build_for_kind(kind), op.mat).flatten());
    }
    auto solution = exact_solve(detail::stack_columns<Rational>(cols), rhs);
    if (!solution) continue;
    for (long i = 0; i < d; ++i) {
      const Rational& c = (*solution)[i];
      if (c == 0) continue;
      const int sign = c < 0 ? -1 : 1;
      auto [root, scale] = detail::split_square_scale(c);
      Matrix<Rational> mat = ops[i].mat.scaled(root);
      if constexpr (!is_exact_v<S>) {
        // Absorb the remainder numerically as well.
        mat = mat.scaled(rational_from_double(std::sqrt(to_double(scale))));
        scale = Rational(1);
      }
      out.terms.push_back(CanonicalTerm<S>(
          build_for_kind(ops[i].kind), sign,
          Operator<S>{mat.template convert<S>(), ops[i].kind}, scale));
    }
    const double residual = decomposition_residual(ctx, out);
    if (residual > ctx.eps_at(r.max_abs())) {
      out.terms.clear();
      continue;
    }
    return out;
  }
  throw SamplingError("sampled family failed to span after retry budget");
}

// --- Minimal search -------------------------------------------------------------

template <typename S>
struct DecompositionReport {
  CurvatureTensor<S> target;
  Decomposition<S> best;
  int k = 0;
  double residual = 0;
  bool exact_residual_zero = false;
  BoundKind bound_kind = BoundKind::Heuristic;
  Family family = Family::SymmetricOnly;
  bool search_hit = false;           // a k <= k_max candidate met the threshold
  bool constructive_fallback = false;
  long restarts = 0;
  std::uint64_t seed = 0;
  // Reference upper bound for the symmetric count, for context in reports.
  long reference_upper_bound = 0;  // n(n+1)/2
};

namespace detail {

// One term's parameterization inside the search.
struct TermShape {
  OperatorKind kind;
  int params;  // n(n+1)/2 symmetric, n(n-1)/2 anti-symmetric
};

inline std::vector<std::pair<int, int>> param_slots(int n, OperatorKind kind) {
  std::vector<std::pair<int, int>> slots;
  if (kind == OperatorKind::SelfAdjoint) {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) slots.push_back({i, j});
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) slots.push_back({i, j});
  }
  return slots;
}

inline Matrix<double> pairing_from_params(int n, OperatorKind kind, const double* theta) {
  Matrix<double> m(n, n);
  const auto slots = param_slots(n, kind);
  for (size_t s = 0; s < slots.size(); ++s) {
    const auto [i, j] = slots[s];
    m(i, j) = theta[s];
    if (kind == OperatorKind::SelfAdjoint) m(j, i) = theta[s];
    else m(j, i) = -theta[s];
  }
  return m;
}

// Kind patterns for a k-term candidate: pure families have one, the mixed
// family enumerates every split "first j symmetric, rest anti-symmetric"
// (order inside a sum is irrelevant). j = k and j = 0 reproduce the pure
// patterns, which is what keeps the mixed estimate at or below both pure ones.
inline std::vector<std::vector<OperatorKind>> kind_patterns(Family f, int k) {
  std::vector<std::vector<OperatorKind>> out;
  if (f == Family::SymmetricOnly) {
    out.emplace_back(k, OperatorKind::SelfAdjoint);
  } else if (f == Family::SkewOnly) {
    out.emplace_back(k, OperatorKind::SkewAdjoint);
  } else {
    for (int j = k; j >= 0; --j) {
      std::vector<OperatorKind> pat(k, OperatorKind::SkewAdjoint);
      for (int i = 0; i < j; ++i) pat[i] = OperatorKind::SelfAdjoint;
      out.push_back(std::move(pat));
    }
  }
  return out;
}

// Sign patterns, canonical inside each kind group (signs are non-increasing
// within a group since same-kind terms are interchangeable).
inline std::vector<std::vector<int>> sign_patterns(const std::vector<OperatorKind>& kinds) {
  const int k = static_cast<int>(kinds.size());
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << k); ++mask) {
    std::vector<int> signs(k);
    for (int i = 0; i < k; ++i) signs[i] = (mask >> i) & 1 ? -1 : 1;
    bool canonical = true;
    for (int i = 1; i < k; ++i)
      if (kinds[i] == kinds[i - 1] && signs[i] > signs[i - 1]) canonical = false;
    if (canonical) out.push_back(std::move(signs));
  }
  return out;
}

struct SearchCandidate {
  std::vector<OperatorKind> kinds;
  std::vector<int> signs;
  std::vector<double> theta;  // concatenated per-term parameters
  double residual_inf = std::numeric_limits<double>::infinity();
};

// Damped Gauss-Newton descent on || flatten(sum signs_i build(M_i)) - target ||.
inline void descend(int n, const std::vector<double>& target,
                    const std::vector<OperatorKind>& kinds, const std::vector<int>& signs,
                    std::vector<double>& theta, double hit_inf, int max_iters) {
  const int k = static_cast<int>(kinds.size());
  const int entries = static_cast<int>(target.size());
  std::vector<int> offsets(k + 1, 0);
  for (int t = 0; t < k; ++t)
    offsets[t + 1] = offsets[t] + static_cast<int>(param_slots(n, kinds[t]).size());
  const int p = offsets[k];

  auto residual_of = [&](const std::vector<double>& th, std::vector<double>& res,
                         std::vector<Matrix<double>>& ms) {
    std::fill(res.begin(), res.end(), 0.0);
    for (int t = 0; t < k; ++t) {
      ms[t] = pairing_from_params(n, kinds[t], th.data() + offsets[t]);
      const auto r = pairing_bilinear(ms[t], ms[t], build_for_kind(kinds[t]));
      const auto& flat = r.entries();
      for (int e = 0; e < entries; ++e) res[e] += signs[t] * flat[e];
    }
    double norm2 = 0;
    for (int e = 0; e < entries; ++e) {
      res[e] -= target[e];
      norm2 += res[e] * res[e];
    }
    return norm2;
  };

  std::vector<double> res(entries), trial_res(entries);
  std::vector<Matrix<double>> ms(k, Matrix<double>(n, n)), trial_ms(k, Matrix<double>(n, n));
  double norm2 = residual_of(theta, res, ms);
  double lambda = 1e-3;

  std::vector<std::vector<double>> jac(p, std::vector<double>(entries));
  for (int iter = 0; iter < max_iters; ++iter) {
    double inf = 0;
    for (double r : res) inf = std::max(inf, std::abs(r));
    if (inf < hit_inf) return;

    for (int t = 0; t < k; ++t) {
      const auto slots = param_slots(n, kinds[t]);
      const BuildKind bk = build_for_kind(kinds[t]);
      for (size_t s = 0; s < slots.size(); ++s) {
        Matrix<double> dm(n, n);
        const auto [i, j] = slots[s];
        dm(i, j) = 1;
        if (kinds[t] == OperatorKind::SelfAdjoint) dm(j, i) = 1;
        else dm(j, i) = -1;
        const auto d1 = pairing_bilinear(dm, ms[t], bk);
        const auto d2 = pairing_bilinear(ms[t], dm, bk);
        auto& col = jac[offsets[t] + static_cast<int>(s)];
        for (int e = 0; e < entries; ++e)
          col[e] = signs[t] * (d1.entries()[e] + d2.entries()[e]);
      }
    }

    // Normal equations (J^T J + lambda diag) step = -J^T res.
    Matrix<double> jtj(p, p);
    std::vector<double> jtr(p, 0.0);
    for (int a = 0; a < p; ++a) {
      for (int b = a; b < p; ++b) {
        double acc = 0;
        for (int e = 0; e < entries; ++e) acc += jac[a][e] * jac[b][e];
        jtj(a, b) = acc;
        jtj(b, a) = acc;
      }
      for (int e = 0; e < entries; ++e) jtr[a] += jac[a][e] * res[e];
    }

    bool stepped = false;
    for (int tries = 0; tries < 8 && !stepped; ++tries) {
      Matrix<double> damped = jtj;
      for (int a = 0; a < p; ++a) damped(a, a) += lambda * (1.0 + jtj(a, a));
      auto inv = inverse(damped, 1e-300);
      if (inv) {
        std::vector<double> trial = theta;
        for (int a = 0; a < p; ++a) {
          double step = 0;
          for (int b = 0; b < p; ++b) step += (*inv)(a, b) * jtr[b];
          trial[a] -= step;
        }
        const double trial_norm2 = residual_of(trial, trial_res, trial_ms);
        if (trial_norm2 < norm2) {
          theta = std::move(trial);
          res = trial_res;
          ms = trial_ms;
          const double gain = trial_norm2 / (norm2 + 1e-300);
          norm2 = trial_norm2;
          lambda = std::max(lambda * (gain < 0.5 ? 0.3 : 0.7), 1e-12);
          stepped = true;
          break;
        }
      }
      lambda *= 4;
    }
    if (!stepped) return;  // stalled
  }
}

}  // namespace detail

namespace detail {

// Try to certify a float hit exactly: rationalize the normalized pairing
// directions, solve the term coefficients as an exact linear system against
// the exact target, and rebuild canonical terms on success.
template <typename S>
std::optional<Decomposition<S>> rationalize_candidate(const SpaceContext<S>& ctx,
                                                      const CurvatureTensor<S>& target,
                                                      const SearchCandidate& cand) {
  const int n = ctx.dim();
  std::vector<Rational> rhs;
  if constexpr (is_exact_v<S>) {
    for (const auto& x : target.flatten()) rhs.push_back(x);
  } else {
    for (double x : target.flatten()) rhs.push_back(rational_from_double(x));
  }
  auto exact_ctx = SpaceContext<Rational>(n, ctx.phi().template convert<Rational>());
  const int k = static_cast<int>(cand.kinds.size());

  for (std::uint64_t max_den : {8ull, 64ull, 1024ull}) {
    std::vector<Matrix<Rational>> mats;
    std::vector<std::vector<Rational>> cols;
    int offset = 0;
    bool degenerate = false;
    for (int t = 0; t < k; ++t) {
      const auto slots = param_slots(n, cand.kinds[t]);
      const Matrix<double> m =
          pairing_from_params(n, cand.kinds[t], cand.theta.data() + offset);
      offset += static_cast<int>(slots.size());
      const double big = m.max_abs();
      if (big < 1e-12) { degenerate = true; break; }
      Matrix<Rational> mr(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) mr(i, j) = rationalize(m(i, j) / big, max_den);
      // Operator recovered from the pairing matrix: A = phi^{-1} M^T.
      const Matrix<Rational> a = exact_ctx.phi_inverse() * mr.transpose();
      mats.push_back(a);
      cols.push_back(build(exact_ctx, build_for_kind(cand.kinds[t]), a).flatten());
    }
    if (degenerate) return std::nullopt;
    auto solution = exact_solve(stack_columns<Rational>(cols), rhs);
    if (!solution) continue;
    Decomposition<S> out;
    out.target = target;
    for (int t = 0; t < k; ++t) {
      const Rational& c = (*solution)[t];
      if (c == 0) continue;
      const int sign = c < 0 ? -1 : 1;
      auto [root, scale] = split_square_scale(c);
      out.terms.push_back(CanonicalTerm<S>(
          build_for_kind(cand.kinds[t]), sign,
          Operator<S>{mats[t].scaled(root).template convert<S>(), cand.kinds[t]}, scale));
    }
    // The exact solve used exact arithmetic end to end; residual is zero by
    // construction whenever the system was consistent.
    return out;
  }
  return std::nullopt;
}

// Float decomposition straight from the candidate parameters: unit scale,
// sqrt-absorbed magnitudes live in the operator entries directly.
template <typename S>
Decomposition<S> candidate_decomposition(const SpaceContext<S>& ctx,
                                         const CurvatureTensor<S>& target,
                                         const SearchCandidate& cand) {
  const int n = ctx.dim();
  Decomposition<S> out;
  out.target = target;
  int offset = 0;
  for (size_t t = 0; t < cand.kinds.size(); ++t) {
    const auto slots = param_slots(n, cand.kinds[t]);
    const Matrix<double> m = pairing_from_params(n, cand.kinds[t], cand.theta.data() + offset);
    offset += static_cast<int>(slots.size());
    const Matrix<double> phi_inv = ctx.phi_inverse().template convert<double>();
    const Matrix<double> a = phi_inv * m.transpose();
    out.terms.push_back(CanonicalTerm<S>(build_for_kind(cand.kinds[t]), cand.signs[t],
                                         Operator<S>{a.template convert<S>(), cand.kinds[t]}));
  }
  return out;
}

}  // namespace detail

// Smallest term count k <= k_max whose multi-start descent meets the relative
// acceptance threshold; candidates are refined to exact-rational certificates
// when the directions rationalize. Deterministic per seed. Falls back to the
// constructive decomposition when no k within range hits.
template <typename S>
DecompositionReport<S> minimal_search(const SpaceContext<S>& ctx, const CurvatureTensor<S>& r,
                                      Family family, int k_max, long budget, std::uint64_t seed) {
  detail::require_act(ctx, r);
  if (k_max < 0) throw ParseError("k_max must be nonnegative");
  if (budget < 1) throw ParseError("budget must be positive");

  DecompositionReport<S> rep;
  rep.target = r;
  rep.family = family;
  rep.seed = seed;
  const int n = ctx.dim();
  rep.reference_upper_bound = static_cast<long>(n) * (n + 1) / 2;
  rep.best.target = r;

  if (r.is_zero(ctx.eps_at(0))) {
    rep.k = 0;
    rep.exact_residual_zero = true;
    rep.bound_kind = BoundKind::Exact;
    rep.search_hit = true;
    return rep;
  }

  const auto target_flat = r.template convert<double>().flatten();
  double target_norm = 0;
  for (double x : target_flat) target_norm = std::max(target_norm, std::abs(x));
  const double hit_inf = kHitThreshold * (1 + target_norm);
  const double start_scale = std::sqrt(1 + target_norm);
  const int max_iters = 160;

  std::optional<detail::SearchCandidate> previous_best;  // k-term optimum for seeding

  for (int k = 1; k <= k_max && !rep.search_hit; ++k) {
    detail::SearchCandidate best_k;
    const auto patterns = detail::kind_patterns(family, k);
    for (size_t pi = 0; pi < patterns.size(); ++pi) {
      const auto& kinds = patterns[pi];
      int p = 0;
      for (auto kind : kinds) p += static_cast<int>(detail::param_slots(n, kind).size());
      const auto signs_list = detail::sign_patterns(kinds);
      for (size_t si = 0; si < signs_list.size(); ++si) {
        const auto& signs = signs_list[si];
        for (long restart = 0; restart < budget + 1; ++restart) {
          std::vector<double> theta(p);
          if (restart == 0 && previous_best && previous_best->kinds.size() == kinds.size() - 1) {
            // Monotone seeding: the (k-1)-term optimum padded with a zero term,
            // when kinds and signs extend it.
            bool extends = std::equal(previous_best->kinds.begin(), previous_best->kinds.end(),
                                      kinds.begin()) &&
                           std::equal(previous_best->signs.begin(), previous_best->signs.end(),
                                      signs.begin());
            if (extends)
              std::copy(previous_best->theta.begin(), previous_best->theta.end(), theta.begin());
            else
              continue;
          } else if (restart == 0) {
            continue;
          } else {
            Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(k), pi, si,
                                       static_cast<std::uint64_t>(restart)}));
            for (int a = 0; a < p; ++a) theta[a] = start_scale * (2 * rng.uniform_real() - 1);
          }
          ++rep.restarts;
          detail::descend(n, target_flat, kinds, signs, theta, hit_inf, max_iters);

          detail::SearchCandidate cand{kinds, signs, theta, 0};
          // Recompute the residual for the verdict.
          std::vector<double> acc(target_flat.size(), 0.0);
          int offset = 0;
          for (size_t t = 0; t < kinds.size(); ++t) {
            const Matrix<double> m =
                detail::pairing_from_params(n, kinds[t], theta.data() + offset);
            offset += static_cast<int>(detail::param_slots(n, kinds[t]).size());
            const auto rt = detail::pairing_bilinear(m, m, build_for_kind(kinds[t]));
            for (size_t e = 0; e < acc.size(); ++e) acc[e] += signs[t] * rt.entries()[e];
          }
          double inf = 0;
          for (size_t e = 0; e < acc.size(); ++e)
            inf = std::max(inf, std::abs(acc[e] - target_flat[e]));
          cand.residual_inf = inf;
          if (inf < best_k.residual_inf) best_k = std::move(cand);
          if (best_k.residual_inf < hit_inf) break;
        }
        if (best_k.residual_inf < hit_inf) break;
      }
      if (best_k.residual_inf < hit_inf) break;
    }

    if (best_k.residual_inf < hit_inf) {
      rep.search_hit = true;
      if (auto refined = detail::rationalize_candidate(ctx, r, best_k)) {
        rep.best = std::move(*refined);
        rep.exact_residual_zero = true;
        rep.residual = 0;
      } else {
        rep.best = detail::candidate_decomposition(ctx, r, best_k);
        rep.residual = best_k.residual_inf;
      }
      rep.k = static_cast<int>(rep.best.terms.size());
    } else {
      previous_best = best_k.residual_inf < std::numeric_limits<double>::infinity()
                          ? std::optional<detail::SearchCandidate>(best_k)
                          : std::nullopt;
    }
  }

  if (!rep.search_hit) {
    rep.best = constructive_decomposition(ctx, r, family, derive_seed(seed, {0xfa11u}));
    rep.constructive_fallback = true;
    rep.k = static_cast<int>(rep.best.terms.size());
    rep.residual = decomposition_residual(ctx, rep.best);
    rep.exact_residual_zero = is_exact_v<S> && rep.residual == 0;
  }

  // Minimality certificates: the zero tensor, a single term when the target
  // is nonzero (zero terms cannot express it), or n = 2 where the canonical
  // tensor space is one-dimensional.
  rep.bound_kind = (rep.exact_residual_zero && (rep.k <= 1 || n == 2))
                       ? BoundKind::Exact
                       : BoundKind::Heuristic;
  return rep;
}

// --- Conjecture campaign ---------------------------------------------------------

// Random targets: rational combinations of sampled symmetric builds, so every
// target is an algebraic curvature tensor by construction.
template <typename S>
CurvatureTensor<S> random_act(const SpaceContext<S>& ctx, std::uint64_t seed) {
  const int n = ctx.dim();
  const long d = act_space_dim(n);
  Rng rng(derive_seed(seed, {0xacdu}));
  CurvatureTensor<S> r(n);
  for (long i = 0; i < d; ++i) {
    const auto op = random_operator(ctx, OperatorKind::SelfAdjoint, std::nullopt,
                                    derive_seed(seed, {0xacdu, static_cast<std::uint64_t>(i)}));
    const long num = rng.uniform(-3, 3);
    const long den = rng.uniform(1, 2);
    if (num == 0) continue;
    r = r + build_symmetric(ctx, op.mat)
                .scaled(scalar_from_rational<S>(Rational(num) / Rational(den)));
  }
  return r;
}

struct ConjectureWitness {
  long trial = 0;
  std::uint64_t target_seed = 0;
  int nu_hat = 0;
  int mu_hat = 0;
};

struct ConjectureReport {
  int dim = 0;
  long trials = 0;
  std::uint64_t seed = 0;
  std::vector<int> nu_hats, mu_hats;
  std::map<int, long> gap_histogram;          // nu_hat - mu_hat
  std::vector<ConjectureWitness> witnesses;   // exact-certified mu < nu only
};

// Compares the mixed-family estimate against the symmetric-only one on random
// targets; a witness needs both bounds exact-certified, anything else is noise.
template <typename S>
ConjectureReport conjecture_campaign(const SpaceContext<S>& ctx, long trials, std::uint64_t seed,
                                     int k_max = 4, long budget = 12) {
  if (ctx.dim() > 3) throw HypothesisError("campaign runs at dim 2 or 3");
  ConjectureReport rep;
  rep.dim = ctx.dim();
  rep.trials = trials;
  rep.seed = seed;
  for (long t = 0; t < trials; ++t) {
    const std::uint64_t target_seed = derive_seed(seed, {static_cast<std::uint64_t>(t)});
    const CurvatureTensor<S> r = random_act(ctx, target_seed);
    const auto nu = minimal_search(ctx, r, Family::SymmetricOnly, k_max, budget, target_seed);
    const auto mu = minimal_search(ctx, r, Family::Mixed, k_max, budget, target_seed);
    rep.nu_hats.push_back(nu.k);
    rep.mu_hats.push_back(mu.k);
    ++rep.gap_histogram[nu.k - mu.k];
    if (mu.k < nu.k && nu.bound_kind == BoundKind::Exact && mu.bound_kind == BoundKind::Exact)
      rep.witnesses.push_back({t, target_seed, nu.k, mu.k});
  }
  return rep;
}

}  // namespace curv
