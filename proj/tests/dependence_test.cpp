#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvtensor/dependence.hpp"
#include "direct_oracle.hpp"

using namespace curv;

namespace {

Matrix<Rational> rat(std::initializer_list<std::initializer_list<const char*>> rows) {
  const int n = static_cast<int>(rows.size());
  Matrix<Rational> out(n, static_cast<int>(rows.begin()->size()));
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (const char* cell : row) out(i, j++) = parse_rational(cell);
    ++i;
  }
  return out;
}

// The diag(2,2,1/2) / J-block triple over the standard 3-dimensional space.
struct RemarkFixture {
  SpaceContext<Rational> ctx = SpaceContext<Rational>::standard(3);
  Matrix<Rational> b = rat({{"2", "0", "0"}, {"0", "2", "0"}, {"0", "0", "1/2"}});
  Matrix<Rational> c = rat({{"0", "1", "0"}, {"-1", "0", "0"}, {"0", "0", "0"}});
  std::vector<CurvatureTensor<Rational>> tensors() const {
    return {build_symmetric(ctx, Matrix<Rational>::identity(3)), build_symmetric(ctx, b),
            build_alternating(ctx, c)};
  }
};

}  // namespace

TEST_CASE("the remark triple is properly dependent with coefficients (1,-1,1)") {
  RemarkFixture f;
  const auto verdict = dependence(f.ctx, f.tensors());
  CHECK_FALSE(verdict.independent);
  CHECK(verdict.nullity == 1);
  CHECK(verdict.exact_certificate);
  REQUIRE(verdict.proper.has_value());
  CHECK(*verdict.proper);
  REQUIRE(verdict.coefficients.has_value());
  const auto& c = *verdict.coefficients;
  REQUIRE(c.size() == 3);
  CHECK(c[0] == Rational(1));
  CHECK(c[1] == Rational(-1));
  CHECK(c[2] == Rational(1));
  // The relation really sums to zero.
  const auto ts = f.tensors();
  auto sum = ts[0].scaled(c[0]) + ts[1].scaled(c[1]) + ts[2].scaled(c[2]);
  CHECK(sum.is_zero(0));
}

TEST_CASE("stand-alone enumeration agrees with the library on the remark triple") {
  const auto direct = oracle::remark_fixture_nullspace();
  REQUIRE(direct.nullity == 1);
  RemarkFixture f;
  const auto verdict = dependence(f.ctx, f.tensors());
  REQUIRE(verdict.coefficients.has_value());
  const auto& lib = *verdict.coefficients;
  // Both vectors are normalized to leading coefficient 1.
  for (int i = 0; i < 3; ++i) CHECK(direct.coefficients[i] == lib[i]);
}

TEST_CASE("float mode reaches the same verdict through the exact referee") {
  RemarkFixture f;
  const auto fctx = SpaceContext<double>::standard(3);
  std::vector<CurvatureTensor<double>> ts;
  for (const auto& t : f.tensors()) ts.push_back(t.convert<double>());
  const auto verdict = dependence(fctx, ts);
  CHECK_FALSE(verdict.independent);
  CHECK(verdict.nullity == 1);
  REQUIRE(verdict.coefficients.has_value());
  const auto& c = *verdict.coefficients;
  CHECK(c[0] / c[2] == doctest::Approx(1.0));
  CHECK(c[1] / c[2] == doctest::Approx(-1.0));
}

TEST_CASE("independent sets are reported independent") {
  const auto ctx = SpaceContext<Rational>::standard(3);
  const auto verdict = dependence(
      ctx, {build_symmetric(ctx, Matrix<Rational>::identity(3)),
            build_symmetric(ctx, rat({{"1", "0", "0"}, {"0", "2", "0"}, {"0", "0", "3"}}))});
  CHECK(verdict.independent);
  CHECK(verdict.nullity == 0);
  CHECK_FALSE(verdict.coefficients.has_value());
}

TEST_CASE("duplicate tensors yield nullity two and an improper dependence") {
  const auto ctx = SpaceContext<Rational>::standard(3);
  const auto r = build_symmetric(ctx, rat({{"2", "1", "0"}, {"1", "1", "0"}, {"0", "0", "1"}}));
  const auto verdict = dependence(ctx, {r, r, r});
  CHECK_FALSE(verdict.independent);
  CHECK(verdict.nullity == 2);
  REQUIRE(verdict.proper.has_value());
  CHECK_FALSE(*verdict.proper);
}

TEST_CASE("primitive integer scaling of rational vectors") {
  const auto v = detail::primitive_integer_vector(
      {Rational(1, 2), Rational(-3, 4), Rational(5)});
  REQUIRE(v.size() == 3);
  CHECK(v[0] == Rational(2));
  CHECK(v[1] == Rational(-3));
  CHECK(v[2] == Rational(20));
}

TEST_CASE("operator independence as flattened vectors") {
  const auto ctx = SpaceContext<Rational>::standard(3);
  const auto eye = Matrix<Rational>::identity(3);
  RemarkFixture f;
  CHECK(operators_independent(ctx, {eye, f.b, f.c}));
  CHECK_FALSE(operators_independent(ctx, {eye, eye.scaled(Rational(2))}));
}

TEST_CASE("triple theorem statuses cover the lattice") {
  DependenceVerdict<Rational> indep;
  CHECK(detail::classify_triple(true, indep) == TheoremStatus::ConclusionHolds);
  CHECK(detail::classify_triple(false, indep) == TheoremStatus::HypothesisUnmet);
  DependenceVerdict<Rational> proper_dep;
  proper_dep.independent = false;
  proper_dep.proper = true;
  CHECK(detail::classify_triple(true, proper_dep) == TheoremStatus::Falsified);
  DependenceVerdict<Rational> subset_dep;
  subset_dep.independent = false;
  subset_dep.proper = false;
  CHECK(detail::classify_triple(true, subset_dep) == TheoremStatus::SubsetDependent);
  CHECK(status_name(TheoremStatus::ConclusionHolds) == "conclusion_holds");
  CHECK(status_name(TheoremStatus::SubsetDependent) == "subset_dependent");
}

TEST_CASE("the self/self/skew theorem holds on random instances above dim 3") {
  for (int n : {4, 5}) {
    const auto ctx = SpaceContext<Rational>::standard(n);
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const auto b = random_operator(ctx, OperatorKind::SelfAdjoint, std::nullopt, seed);
      const auto c = random_operator(ctx, OperatorKind::SkewAdjoint, std::nullopt, seed + 31);
      const auto rep = check_theorem_ssl(ctx, b, c);
      CHECK(rep.status != TheoremStatus::Falsified);
    }
  }
}

TEST_CASE("the self/self/skew theorem gates on dimension and kinds") {
  const auto ctx3 = SpaceContext<Rational>::standard(3);
  const auto b = random_operator(ctx3, OperatorKind::SelfAdjoint, std::nullopt, 1);
  const auto c = random_operator(ctx3, OperatorKind::SkewAdjoint, std::nullopt, 1);
  CHECK_THROWS_AS(check_theorem_ssl(ctx3, b, c), HypothesisError);
  const auto ctx4 = SpaceContext<Rational>::standard(4);
  const auto b4 = random_operator(ctx4, OperatorKind::SelfAdjoint, std::nullopt, 1);
  CHECK_THROWS_AS(check_theorem_ssl(ctx4, b4, b4), HypothesisError);
}

TEST_CASE("aligned block operators produce a subset dependence, not a falsification") {
  // The alternating build of 2J on the first two coordinates is three times
  // the symmetric build of diag(2,2,0,0): a dependent pair inside the triple.
  const auto ctx = SpaceContext<Rational>::standard(4);
  const Operator<Rational> b{
      rat({{"2", "0", "0", "0"}, {"0", "2", "0", "0"}, {"0", "0", "0", "0"},
           {"0", "0", "0", "0"}}),
      OperatorKind::SelfAdjoint};
  const Operator<Rational> c{
      rat({{"0", "2", "0", "0"}, {"-2", "0", "0", "0"}, {"0", "0", "0", "0"},
           {"0", "0", "0", "0"}}),
      OperatorKind::SkewAdjoint};
  const auto rep = check_theorem_ssl(ctx, b, c);
  CHECK(rep.operators_independent);
  CHECK_FALSE(rep.tensors.independent);
  CHECK(rep.status == TheoremStatus::SubsetDependent);
}

TEST_CASE("the self/skew/skew theorem holds on random instances") {
  for (int n : {3, 4, 5}) {
    const auto ctx = SpaceContext<Rational>::standard(n);
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
      const auto c = random_operator(ctx, OperatorKind::SkewAdjoint, std::nullopt, seed);
      const auto d = random_operator(ctx, OperatorKind::SkewAdjoint, std::nullopt, seed + 77);
      const auto rep = check_theorem_sll(ctx, c, d);
      CHECK(rep.status != TheoremStatus::Falsified);
    }
  }
}

TEST_CASE("necessary conditions fire on the remark triple") {
  RemarkFixture f;
  const Operator<Rational> b{f.b, OperatorKind::SelfAdjoint};
  const Operator<Rational> c{f.c, OperatorKind::SkewAdjoint};
  const auto rep = necessary_conditions_ssl(f.ctx, b, c);
  CHECK(rep.gate_triggered);
  CHECK(rep.commute);
  CHECK(rep.commutator_norm == 0.0);
  CHECK(rep.rank_c == 2);
  CHECK(rep.conclusions_hold);
}

TEST_CASE("necessary conditions are vacuous when the triple is independent") {
  const auto ctx = SpaceContext<Rational>::standard(4);
  const auto b = random_operator(ctx, OperatorKind::SelfAdjoint, std::nullopt, 5);
  const auto c = random_operator(ctx, OperatorKind::SkewAdjoint, std::nullopt, 6);
  const auto rep = necessary_conditions_ssl(ctx, b, c);
  if (!rep.gate_triggered) CHECK(rep.conclusions_hold);
}

TEST_CASE("pairwise exclusions on frozen operators") {
  const auto ctx = SpaceContext<Rational>::standard(3);
  const Operator<Rational> self{Matrix<Rational>::identity(3), OperatorKind::SelfAdjoint};
  const Operator<Rational> skew{rat({{"0", "1", "0"}, {"-1", "0", "0"}, {"0", "0", "0"}}),
                                OperatorKind::SkewAdjoint};
  const auto rep = pairwise_exclusions(ctx, self, skew);
  CHECK(rep.arm == "mixed");
  CHECK(rep.holds);
  CHECK(rep.deviation_plus > 0);
  CHECK(rep.deviation_minus > 0);

  // Gates: the self-adjoint side needs rank >= 3, the skew side must be nonzero.
  const Operator<Rational> low{rat({{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "0"}}),
                               OperatorKind::SelfAdjoint};
  CHECK_THROWS_AS(pairwise_exclusions(ctx, low, skew), HypothesisError);
  const Operator<Rational> zero{Matrix<Rational>(3, 3), OperatorKind::SkewAdjoint};
  CHECK_THROWS_AS(pairwise_exclusions(ctx, self, zero), HypothesisError);
  const Operator<Rational> gen{Matrix<Rational>::identity(3), OperatorKind::General};
  CHECK_THROWS_AS(pairwise_exclusions(ctx, gen, skew), HypothesisError);
}

TEST_CASE("same-kind exclusions on frozen operators") {
  const auto ctx = SpaceContext<Rational>::standard(4);
  const Operator<Rational> a{Matrix<Rational>::identity(4), OperatorKind::SelfAdjoint};
  const Operator<Rational> b{rat({{"1", "0", "0", "0"}, {"0", "1", "0", "0"},
                                  {"0", "0", "1", "0"}, {"0", "0", "0", "2"}}),
                             OperatorKind::SelfAdjoint};
  const auto ss = pairwise_exclusions(ctx, a, b);
  CHECK(ss.arm == "symmetric/symmetric");
  CHECK(ss.holds);

  const Operator<Rational> c{rat({{"0", "1", "0", "0"}, {"-1", "0", "0", "0"},
                                  {"0", "0", "0", "1"}, {"0", "0", "-1", "0"}}),
                             OperatorKind::SkewAdjoint};
  const Operator<Rational> d{rat({{"0", "2", "0", "0"}, {"-2", "0", "0", "0"},
                                  {"0", "0", "0", "-1"}, {"0", "0", "1", "0"}}),
                             OperatorKind::SkewAdjoint};
  const auto ll = pairwise_exclusions(ctx, c, d);
  CHECK(ll.arm == "alternating/alternating");
  CHECK(ll.holds);
}
