#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvtensor/chain_reduce.hpp"

using namespace curv;

namespace {

Matrix<Rational> diag(std::initializer_list<int> entries) {
  const int n = static_cast<int>(entries.size());
  Matrix<Rational> m(n, n);
  int i = 0;
  for (int e : entries) {
    m(i, i) = Rational(e);
    ++i;
  }
  return m;
}

Operator<Rational> self(Matrix<Rational> m) {
  return {std::move(m), OperatorKind::SelfAdjoint};
}
Operator<Rational> skew(Matrix<Rational> m) {
  return {std::move(m), OperatorKind::SkewAdjoint};
}

const Conclusion& find(const ChainTheoremReport& rep, const std::string& name) {
  for (const auto& c : rep.conclusions)
    if (c.name == name) return c;
  static Conclusion missing;
  REQUIRE(false);
  return missing;
}

}  // namespace

TEST_CASE("chain and exactness predicates on frozen operators") {
  const auto ctx = SpaceContext<Rational>::standard(5);
  const auto a = diag({1, 1, 1, 1, 0});
  const auto b = diag({0, 0, 0, 0, 1});
  CHECK(is_chain(ctx, {a, b}).ok);
  CHECK(is_chain(ctx, {a, b, a}).ok);
  CHECK_FALSE(is_chain(ctx, {a, a}).ok);
  CHECK(chain_is_exact(ctx, {a, b, a}));
  // Complex but not exact: the middle operator misses part of the kernel.
  const auto small = diag({0, 0, 0, 0, 0});
  CHECK(is_chain(ctx, {a, small, a}).ok);
  CHECK_FALSE(chain_is_exact(ctx, {a, small, a}));
}

TEST_CASE("three-node chain on the projection fixture") {
  const auto ctx = SpaceContext<Rational>::standard(5);
  const auto rep = analyze_three_chain(ctx, self(diag({1, 1, 1, 1, 0})),
                                       self(diag({0, 0, 0, 0, 1})),
                                       self(diag({1, 1, 1, 1, 0})), 1, -1);
  CHECK(rep.theorem == "three-chain");
  CHECK(rep.all_hold());
  CHECK(rep.premise_residual == 0.0);
  CHECK(rep.exact_sequence);
  CHECK(find(rep, "R_B = 0").status == ConclusionStatus::Pass);
  CHECK(find(rep, "C = +-A").status == ConclusionStatus::Pass);
  CHECK(find(rep, "delta = -1").status == ConclusionStatus::Pass);
  // B is self-adjoint, so the invertibility conclusions stay out of scope.
  CHECK(find(rep, "A invertible").status == ConclusionStatus::NotApplicable);
}

TEST_CASE("three-node chain with a skew middle forces invertible ends") {
  const auto ctx = SpaceContext<Rational>::standard(4);
  const auto eye = Matrix<Rational>::identity(4);
  const auto rep = analyze_three_chain(ctx, self(eye), skew(Matrix<Rational>(4, 4)),
                                       self(eye), 1, -1);
  CHECK(rep.all_hold());
  CHECK(rep.exact_sequence);
  CHECK(find(rep, "A invertible").status == ConclusionStatus::Pass);
  CHECK(find(rep, "C invertible").status == ConclusionStatus::Pass);
  CHECK(find(rep, "C = +-A").status == ConclusionStatus::Pass);
}

TEST_CASE("three-node chain premise gates") {
  const auto ctx = SpaceContext<Rational>::standard(3);
  const auto eye = Matrix<Rational>::identity(3);
  CHECK_THROWS_WITH_AS(analyze_three_chain(ctx, self(eye), self(eye), self(eye), 1, -1),
                       "not_a_chain", PremiseError);
  // A chain whose signed sum does not vanish is rejected as a premise error.
  const auto a = diag({1, 1, 0});
  const auto b = diag({0, 0, 1});
  CHECK_THROWS_AS(analyze_three_chain(ctx, self(a), self(b), self(a), 1, 1), PremiseError);
  CHECK_THROWS_AS(analyze_three_chain(ctx, self(a), self(b), self(a), 2, -1), ParseError);
  const Operator<Rational> gen{a, OperatorKind::General};
  CHECK_THROWS_AS(analyze_three_chain(ctx, gen, self(b), self(a), 1, -1), HypothesisError);
}

TEST_CASE("star with a skew hub") {
  const auto ctx = SpaceContext<Rational>::standard(4);
  const auto eye = Matrix<Rational>::identity(4);
  const auto rep = analyze_star(ctx, skew(Matrix<Rational>(4, 4)),
                                {self(eye), self(eye)}, {1, -1});
  CHECK(rep.base.all_hold());
  REQUIRE(rep.legs.size() == 2);
  for (const auto& leg : rep.legs) {
    CHECK(leg.exact);
    CHECK(leg.invertible.status == ConclusionStatus::Pass);
  }
  bool saw_a_zero = false;
  for (const auto& c : rep.base.conclusions)
    if (c.name == "A = 0") {
      saw_a_zero = true;
      CHECK(c.status == ConclusionStatus::Pass);
    }
  CHECK(saw_a_zero);
}

TEST_CASE("star with a self-adjoint hub leaves skew conclusions out of scope") {
  const auto ctx = SpaceContext<Rational>::standard(4);
  // Rank-one hub: its build vanishes, and every leg kills the hub's image.
  Matrix<Rational> hub(4, 4);
  hub(0, 0) = Rational(1);
  const auto leg = diag({0, 1, 1, 1});
  const auto rep = analyze_star(ctx, self(hub), {self(leg), self(leg)}, {1, -1});
  CHECK(rep.base.all_hold());
  for (const auto& c : rep.base.conclusions)
    if (c.name == "A = 0") CHECK(c.status == ConclusionStatus::NotApplicable);
  for (const auto& l : rep.legs) CHECK(l.invertible.status == ConclusionStatus::NotApplicable);
  CHECK_THROWS_AS(analyze_star(ctx, self(hub), {self(leg)}, {1, -1}), ParseError);
  CHECK_THROWS_WITH_AS(
      analyze_star(ctx, self(diag({1, 1, 1, 1})), {self(diag({1, 1, 1, 1}))}, {1}),
      "not_a_chain", PremiseError);
}

TEST_CASE("four-node chain on the split-block fixture") {
  const auto ctx = SpaceContext<Rational>::standard(8);
  const auto top = diag({1, 1, 1, 1, 0, 0, 0, 0});
  const auto bottom = diag({0, 0, 0, 0, 1, 1, 1, 1});
  const auto rep =
      analyze_four_chain(ctx, self(top), self(bottom), self(top), self(bottom), 1, -1, -1);
  CHECK(rep.theorem == "four-chain");
  CHECK(rep.all_hold());
  CHECK(find(rep, "R_A, R_C same build").status == ConclusionStatus::Pass);
  CHECK(find(rep, "R_B, R_D same build").status == ConclusionStatus::Pass);
  CHECK(find(rep, "eps2 = -1").status == ConclusionStatus::Pass);
  CHECK(find(rep, "eps1 = -eps3").status == ConclusionStatus::Pass);
  CHECK(find(rep, "B^3 = +-BDB").status == ConclusionStatus::Pass);
  CHECK(find(rep, "C^3 = +-CAC").status == ConclusionStatus::Pass);
}

TEST_CASE("four-node chain requires interior ranks of at least four") {
  const auto ctx = SpaceContext<Rational>::standard(8);
  const auto top = diag({1, 1, 1, 1, 0, 0, 0, 0});
  const auto thin = diag({0, 0, 0, 0, 1, 1, 1, 0});
  CHECK_THROWS_AS(
      analyze_four_chain(ctx, self(top), self(thin), self(top), self(thin), 1, -1, -1),
      HypothesisError);
}

TEST_CASE("decomposition sums and residuals") {
  const auto ctx = SpaceContext<Rational>::standard(3);
  Decomposition<Rational> d;
  d.terms.push_back(CanonicalTerm<Rational>(BuildKind::Symmetric, 1, self(diag({1, 1, 0}))));
  d.terms.push_back(CanonicalTerm<Rational>(BuildKind::Symmetric, 1, self(diag({1, 1, 1}))));
  const auto sum = decomposition_sum(ctx, d);
  CHECK(tensors_near(sum,
                     build_symmetric(ctx, diag({1, 1, 0})) + build_symmetric(ctx, diag({1, 1, 1})),
                     0.0));
  d.target = sum;
  CHECK(decomposition_residual(ctx, d) == 0.0);
  d.target = sum.scaled(Rational(2));
  CHECK(decomposition_residual(ctx, d) > 0.0);
}

TEST_CASE("kernel reduction drops the pivot and transports the rest") {
  const auto ctx = SpaceContext<Rational>::standard(3);
  Decomposition<Rational> d;
  d.terms.push_back(CanonicalTerm<Rational>(BuildKind::Symmetric, 1, self(diag({1, 1, 0}))));
  d.terms.push_back(CanonicalTerm<Rational>(BuildKind::Symmetric, 1, self(diag({1, 1, 1}))));
  d.target = decomposition_sum(ctx, d);

  const auto result = reduce_by_kernel(ctx, d, 0);
  CHECK(result.reduced.terms.size() == 1);
  CHECK(result.residual == 0.0);
  // Default map: the orthogonal projection onto the pivot kernel.
  CHECK(result.map == diag({0, 0, 1}));
  const auto& moved = result.reduced.terms[0];
  CHECK(moved.op.kind == OperatorKind::SelfAdjoint);
  CHECK(moved.op.mat == diag({0, 0, 1}));
  REQUIRE(result.reduced.target.has_value());
  CHECK(tensors_near(*result.reduced.target, precompose(*d.target, result.map), 0.0));
}

TEST_CASE("kernel reduction accepts a caller-supplied map into the kernel") {
  const auto ctx = SpaceContext<Rational>::standard(3);
  Decomposition<Rational> d;
  d.terms.push_back(CanonicalTerm<Rational>(BuildKind::Symmetric, 1, self(diag({1, 1, 0}))));
  d.terms.push_back(CanonicalTerm<Rational>(BuildKind::Symmetric, 1, self(diag({1, 1, 1}))));
  const auto result = reduce_by_kernel(ctx, d, 0, diag({0, 0, 2}));
  CHECK(result.reduced.terms.size() == 1);
  CHECK(result.reduced.terms[0].op.mat == diag({0, 0, 4}));

  CHECK_THROWS_AS(reduce_by_kernel(ctx, d, 0, Matrix<Rational>::identity(3)), DomainError);
  CHECK_THROWS_AS(reduce_by_kernel(ctx, d, 1), KernelError);
  CHECK_THROWS_AS(reduce_by_kernel(ctx, d, 5), ParseError);
}

TEST_CASE("reduced terms still build curvature tensors") {
  const auto ctx = SpaceContext<Rational>::standard(4);
  Decomposition<Rational> d;
  Matrix<Rational> j12(4, 4);
  j12(0, 1) = Rational(1);
  j12(1, 0) = Rational(-1);
  d.terms.push_back(CanonicalTerm<Rational>(BuildKind::Symmetric, 1, self(diag({0, 0, 1, 1}))));
  d.terms.push_back(CanonicalTerm<Rational>(BuildKind::Alternating, -1, skew(j12)));
  const auto result = reduce_by_kernel(ctx, d, 0);
  for (const auto& t : result.reduced.terms) {
    CHECK(kind_holds(ctx, t.op.mat, t.op.kind));
    CHECK(is_act(ctx, build_term(ctx, t)).is_act);
  }
}

TEST_CASE("target-preserving reduction keeps the canonical target fixed") {
  const auto ctx = SpaceContext<Rational>::standard(4);
  Matrix<Rational> j12(4, 4);
  j12(0, 1) = Rational(1);
  j12(1, 0) = Rational(-1);
  Decomposition<Rational> d;
  d.canonical_target = CanonicalTerm<Rational>(BuildKind::Alternating, 1, skew(j12));
  d.terms.push_back(CanonicalTerm<Rational>(BuildKind::Symmetric, 1, self(diag({0, 0, 1, 1}))));
  d.terms.push_back(CanonicalTerm<Rational>(BuildKind::Alternating, 1, skew(j12)));

  const auto result = reduce_preserving_target(ctx, d, 0);
  CHECK(result.reduced.terms.size() == 1);
  CHECK(result.residual == 0.0);
  CHECK(result.map == diag({1, 1, 0, 0}));
  REQUIRE(result.reduced.canonical_target.has_value());
  CHECK(result.reduced.canonical_target->op.mat == j12);

  // A target straddling the kernel cannot be preserved.
  Matrix<Rational> jj(4, 4);
  jj(0, 1) = Rational(1);
  jj(1, 0) = Rational(-1);
  jj(2, 3) = Rational(1);
  jj(3, 2) = Rational(-1);
  Decomposition<Rational> bad = d;
  bad.canonical_target = CanonicalTerm<Rational>(BuildKind::Alternating, 1, skew(jj));
  CHECK_THROWS_AS(reduce_preserving_target(ctx, bad, 0), HypothesisError);

  Decomposition<Rational> no_target;
  no_target.terms = d.terms;
  CHECK_THROWS_AS(reduce_preserving_target(ctx, no_target, 0), HypothesisError);
}
