#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvtensor/decompose.hpp"

using namespace curv;

TEST_CASE("family and bound names round-trip") {
  CHECK(family_name(Family::SymmetricOnly) == std::string("sym"));
  CHECK(family_name(Family::SkewOnly) == std::string("skew"));
  CHECK(family_name(Family::Mixed) == std::string("mixed"));
  for (auto f : {Family::SymmetricOnly, Family::SkewOnly, Family::Mixed})
    CHECK(family_from_name(family_name(f)) == f);
  CHECK_FALSE(family_from_name("diagonal").has_value());
  CHECK(bound_kind_name(BoundKind::Exact) == std::string("exact"));
  CHECK(bound_kind_name(BoundKind::Heuristic) == std::string("heuristic"));
  CHECK(kHitThreshold == 1e-7);
}

TEST_CASE("random targets satisfy the curvature axioms") {
  for (int n : {2, 3}) {
    const auto ctx = SpaceContext<Rational>::standard(n);
    for (std::uint64_t seed : {1u, 7u, 23u}) {
      const auto r = random_act(ctx, seed);
      CHECK(is_act(ctx, r).is_act);
      CHECK(tensors_near(r, random_act(ctx, seed), 0.0));
    }
  }
}

TEST_CASE("zero target needs zero terms") {
  const auto ctx = SpaceContext<double>::standard(3);
  const CurvatureTensor<double> zero(3);
  const auto rep = minimal_search(ctx, zero, Family::SymmetricOnly, 3, 4, 1);
  CHECK(rep.k == 0);
  CHECK(rep.search_hit);
  CHECK(rep.exact_residual_zero);
  CHECK(rep.bound_kind == BoundKind::Exact);
  CHECK(rep.residual == 0.0);
  CHECK(constructive_decomposition(ctx, zero, Family::SymmetricOnly).terms.empty());
}

TEST_CASE("two-dimensional targets resolve with one certified term") {
  const auto ctx = SpaceContext<double>::standard(2);
  for (std::uint64_t seed : {2u, 9u}) {
    const auto target = random_act(ctx, seed).convert<double>();
    if (target.is_zero(1e-12)) continue;
    const auto rep = minimal_search(ctx, target, Family::SymmetricOnly, 2, 8, 31);
    CHECK(rep.search_hit);
    CHECK(rep.k == 1);
    CHECK(rep.exact_residual_zero);
    CHECK(rep.bound_kind == BoundKind::Exact);
    CHECK(rep.reference_upper_bound == 3);
    REQUIRE(rep.best.terms.size() == 1);
    auto best = rep.best;
    best.target = target;
    CHECK(decomposition_residual(ctx, best) < 1e-9);
  }
}

TEST_CASE("single symmetric builds are recovered as one term") {
  const auto ctx = SpaceContext<double>::standard(3);
  const auto b = random_operator(ctx, OperatorKind::SelfAdjoint, std::nullopt, 4);
  const auto target = build_symmetric(ctx, b.mat);
  const auto rep = minimal_search(ctx, target, Family::SymmetricOnly, 2, 8, 5);
  CHECK(rep.search_hit);
  CHECK(rep.k == 1);
  CHECK(rep.bound_kind == BoundKind::Exact);
  CHECK_FALSE(rep.constructive_fallback);
}

TEST_CASE("constructive decompositions reproduce the target exactly") {
  const auto ctx = SpaceContext<Rational>::standard(3);
  for (std::uint64_t seed : {3u, 11u}) {
    const auto target = random_act(ctx, seed);
    const auto d = constructive_decomposition(ctx, target, Family::SymmetricOnly, seed);
    CHECK(d.terms.size() <= 6);
    REQUIRE(d.target.has_value());
    CHECK(tensors_near(*d.target, decomposition_sum(ctx, d), 0.0));
    for (const auto& t : d.terms) {
      CHECK(t.build == BuildKind::Symmetric);
      CHECK(kind_holds(ctx, t.op.mat, t.op.kind));
    }
  }
}

TEST_CASE("constructive sampling honors the retry budget") {
  const auto ctx = SpaceContext<Rational>::standard(2);
  const auto target = random_act(ctx, 2);
  REQUIRE_FALSE(target.is_zero(0.0));
  CHECK_THROWS_AS(constructive_decomposition(ctx, target, Family::SymmetricOnly, 1, 0),
                  SamplingError);
}

TEST_CASE("search rejects malformed targets and parameters") {
  const auto ctx = SpaceContext<double>::standard(2);
  const auto target = random_act(ctx, 2).convert<double>();
  CHECK_THROWS_AS(minimal_search(ctx, target, Family::SymmetricOnly, -1, 4, 1), ParseError);
  CHECK_THROWS_AS(minimal_search(ctx, target, Family::SymmetricOnly, 2, 0, 1), ParseError);
  CurvatureTensor<double> broken(2);
  broken.at(0, 0, 0, 0) = 1;  // violates antisymmetry in the first slot pair
  CHECK_THROWS_AS(minimal_search(ctx, broken, Family::SymmetricOnly, 2, 4, 1), HypothesisError);
  CHECK_THROWS_AS(constructive_decomposition(ctx, broken, Family::SymmetricOnly), HypothesisError);
}

TEST_CASE("conjecture campaign compares family counts at low dimension") {
  const auto ctx = SpaceContext<double>::standard(2);
  const auto rep = conjecture_campaign(ctx, 3, 5);
  CHECK(rep.dim == 2);
  CHECK(rep.trials == 3);
  REQUIRE(rep.nu_hats.size() == 3);
  REQUIRE(rep.mu_hats.size() == 3);
  long histogram_total = 0;
  for (const auto& [gap, count] : rep.gap_histogram) histogram_total += count;
  CHECK(histogram_total == 3);
  for (size_t i = 0; i < rep.nu_hats.size(); ++i) CHECK(rep.mu_hats[i] <= rep.nu_hats[i]);
  // One canonical direction at n = 2: the mixed family cannot beat it.
  CHECK(rep.witnesses.empty());

  const auto big = SpaceContext<double>::standard(4);
  CHECK_THROWS_AS(conjecture_campaign(big, 1, 1), HypothesisError);
}
