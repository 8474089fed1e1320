#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvtensor/structure_group.hpp"

using namespace curv;

namespace {

Matrix<Rational> rat(std::initializer_list<std::initializer_list<int>> rows) {
  const int n = static_cast<int>(rows.size());
  Matrix<Rational> out(n, static_cast<int>(rows.begin()->size()));
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (int cell : row) out(i, j++) = Rational(cell);
    ++i;
  }
  return out;
}

Matrix<Rational> jj4() {
  return rat({{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}});
}

Matrix<Rational> diag4(int a, int b, int c, int d) {
  return rat({{a, 0, 0, 0}, {0, b, 0, 0}, {0, 0, c, 0}, {0, 0, 0, d}});
}

}  // namespace

TEST_CASE("form views classify their symmetry") {
  const auto ctx = SpaceContext<Rational>::standard(4);
  const auto tau = form_from_matrix(ctx, jj4());
  CHECK(tau.anti_symmetric());
  CHECK(tau.form_matrix(ctx) == jj4());
  const auto sym = form_from_matrix(ctx, diag4(1, 2, 3, 4));
  CHECK_FALSE(sym.anti_symmetric());
  CHECK_THROWS_AS(form_from_matrix(ctx, rat({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0},
                                             {0, 0, 0, 1}})),
                  ParseError);
  const Operator<Rational> general{diag4(1, 1, 1, 2), OperatorKind::General};
  CHECK_THROWS_AS(FormView<Rational>(ctx, general), ParseError);
}

TEST_CASE("pullback evaluates the form on mapped arguments") {
  const auto ctx = SpaceContext<Rational>::standard(4);
  const auto tau = form_from_matrix(ctx, jj4());

  const auto unchanged = pullback_form(ctx, Matrix<Rational>::identity(4), tau);
  CHECK(unchanged.form_matrix(ctx) == jj4());

  const auto flipped = pullback_form(ctx, diag4(1, -1, 1, -1), tau);
  CHECK(flipped.form_matrix(ctx) == -jj4());

  const auto stretched = pullback_form(ctx, diag4(2, 1, 1, 1), tau);
  CHECK(stretched.form_matrix(ctx)(0, 1) == Rational(2));
  CHECK(stretched.form_matrix(ctx)(1, 0) == Rational(-2));
  CHECK(stretched.form_matrix(ctx)(2, 3) == Rational(1));
}

TEST_CASE("pullback is contravariant") {
  const auto ctx = SpaceContext<Rational>::standard(4);
  const auto tau = form_from_matrix(ctx, jj4());
  const auto a = rat({{1, 1, 0, 0}, {0, 1, 0, 0}, {0, 0, 2, 1}, {1, 0, 0, 1}});
  const auto b = rat({{0, 1, 0, 2}, {1, 0, 1, 0}, {0, 0, 1, 0}, {3, 0, 0, 1}});
  const auto twice = pullback_form(ctx, a, pullback_form(ctx, b, tau));
  const auto once = pullback_form(ctx, b * a, tau);
  CHECK(twice.form_matrix(ctx) == once.form_matrix(ctx));
}

TEST_CASE("membership predicates on frozen maps") {
  const auto ctx = SpaceContext<Rational>::standard(4);
  const auto tau = form_from_matrix(ctx, jj4());

  const auto eye = Matrix<Rational>::identity(4);
  CHECK(in_G_tau(ctx, eye, tau));
  CHECK(in_G_pm_tau(ctx, eye, tau) == 1);
  CHECK(in_G_R_tau(ctx, eye, tau));

  // An anti-isometry: the form flips sign, the tensor does not.
  const auto flip = diag4(1, -1, 1, -1);
  CHECK_FALSE(in_G_tau(ctx, flip, tau));
  CHECK(in_G_pm_tau(ctx, flip, tau) == -1);
  CHECK(in_G_R_tau(ctx, flip, tau));

  // Neither: a one-direction stretch.
  const auto stretch = diag4(2, 1, 1, 1);
  CHECK_FALSE(in_G_tau(ctx, stretch, tau));
  CHECK(in_G_pm_tau(ctx, stretch, tau) == std::nullopt);
  CHECK_FALSE(in_G_R_tau(ctx, stretch, tau));

  // -I preserves every bilinear form.
  CHECK(in_G_tau(ctx, -eye, tau));

  CHECK_THROWS_AS(in_G_tau(ctx, Matrix<Rational>(4, 4), tau), DomainError);
  CHECK_THROWS_AS(in_G_R_tau(ctx, diag4(1, 1, 1, 0), tau), DomainError);
}

TEST_CASE("structure theorem sampling at n=4") {
  const auto ctx = SpaceContext<double>::standard(4);
  const auto tau = form_from_matrix(ctx, jj4().convert<double>());
  const auto rep = verify_structure_theorem(ctx, tau, 60, 11);
  CHECK(rep.equivalence_holds);
  CHECK(rep.isometries.samples == 60);
  CHECK(rep.isometries.in_tensor_group == 60);
  CHECK(rep.isometries.in_pm_group == 60);
  CHECK(rep.anti_isometries.in_pm_group == 60);
  CHECK(rep.anti_isometries.in_tensor_group == 60);
  // Generic invertible maps essentially never preserve the tensor.
  CHECK(rep.generic.in_tensor_group == rep.generic.in_pm_group);
  CHECK(rep.tau_rank == 4);
}

TEST_CASE("structure theorem sampling in exact arithmetic") {
  const auto ctx = SpaceContext<Rational>::standard(4);
  const auto tau = form_from_matrix(ctx, jj4());
  const auto rep = verify_structure_theorem(ctx, tau, 8, 3);
  CHECK(rep.equivalence_holds);
  CHECK(rep.isometries.mismatches == 0);
  CHECK(rep.anti_isometries.mismatches == 0);
  CHECK(rep.generic.mismatches == 0);
}

TEST_CASE("rank-4 form inside a larger space") {
  const auto ctx = SpaceContext<double>::standard(6);
  Matrix<double> t(6, 6);
  t(0, 1) = 1; t(1, 0) = -1; t(2, 3) = 1; t(3, 2) = -1;
  const auto tau = form_from_matrix(ctx, t);
  const auto rep = verify_structure_theorem(ctx, tau, 40, 17);
  CHECK(rep.equivalence_holds);
  CHECK(rep.tau_rank == 4);
}

TEST_CASE("hypothesis gates") {
  const auto ctx = SpaceContext<Rational>::standard(4);
  Matrix<Rational> t(4, 4);
  t(0, 1) = 1; t(1, 0) = -1;  // rank 2
  const auto tau = form_from_matrix(ctx, t);
  CHECK_THROWS_AS(verify_structure_theorem(ctx, tau, 5, 1), HypothesisError);
  const auto sym = form_from_matrix(ctx, Matrix<Rational>::identity(4));
  CHECK_THROWS_AS(verify_structure_theorem(ctx, sym, 5, 1), HypothesisError);
}
