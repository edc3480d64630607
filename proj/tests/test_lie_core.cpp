#include <gtest/gtest.h>

#include <random>

#include "liebi/catalog.hpp"
#include "liebi/lie_core.hpp"

using namespace liebi;

namespace {

Vec random_vec(std::size_t n, std::mt19937_64& rng, bool complex = false) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = complex ? cplx(u(rng), u(rng)) : cplx(u(rng), 0.0);
  return v;
}

// Independent sl2 tensor from 2x2 commutators, solved by hand-coded coordinates.
Vec sl2_coords(const Mat& m) {
  Vec v(3);
  v << m(0, 0), m(0, 1), m(1, 0);
  return v;
}

}  // namespace

TEST(LieCore, Sl2BracketMatchesMatrixCommutator) {
  const auto s = catalog::sl2();
  const auto& g = *s.algebra;
  Mat h(2, 2), e(2, 2), f(2, 2);
  h << 1, 0, 0, -1;
  e << 0, 1, 0, 0;
  f << 0, 0, 1, 0;
  const std::vector<Mat> b{h, e, f};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const Vec expect = sl2_coords(b[i] * b[j] - b[j] * b[i]);
      for (std::size_t k = 0; k < 3; ++k) EXPECT_LT(std::abs(g.c(i, j, k) - expect[static_cast<Eigen::Index>(k)]), 1e-14);
    }
  const Element H = basis_element(s.algebra, 0), E = basis_element(s.algebra, 1);
  EXPECT_EQ(bracket(H, E).coords, Vec(2.0 * E.coords));
}

TEST(LieCore, BracketWithSelfVanishes) {
  std::mt19937_64 rng(7);
  for (const auto& name : {"sl2", "sl3", "su2", "heisenberg3", "m3"}) {
    const auto m = catalog::matrix_algebra_by_name(name);
    const Vec x = random_vec(m.algebra->dim(), rng, m.algebra->field() == Field::complex);
    EXPECT_LT(m.algebra->bracket(x, x).norm(), 1e-14) << name;
  }
}

TEST(LieCore, WittModesBracket) {
  // [e_1, e_-1] = 2i e_0 in the truncation with modes -1, 0, 1.
  const auto w = catalog::witt(1);
  const auto& g = *w.truncated;
  EXPECT_EQ(g.c(2, 0, 1), cplx(0.0, 2.0));
}

TEST(LieCore, AdjointMatrices) {
  const auto s = catalog::sl2();
  const Mat adH = ad(basis_element(s.algebra, 0));
  Mat expect = Mat::Zero(3, 3);
  expect(1, 1) = 2.0;
  expect(2, 2) = -2.0;
  EXPECT_EQ(adH, expect);
  EXPECT_EQ(ad(make_element(s.algebra, Vec::Zero(3))), Mat::Zero(3, 3));
  EXPECT_EQ(coad(basis_element(s.algebra, 0)), expect.transpose());
}

TEST(LieCore, AdIsHomomorphism) {
  std::mt19937_64 rng(11);
  for (const auto& name : {"sl2", "sl3", "su2", "heisenberg3", "borel2", "m3"}) {
    const auto m = catalog::matrix_algebra_by_name(name);
    const auto& g = *m.algebra;
    for (int t = 0; t < 20; ++t) {
      const Vec x = random_vec(g.dim(), rng), y = random_vec(g.dim(), rng);
      const Mat lhs = g.ad(g.bracket(x, y));
      const Mat rhs = g.ad(x) * g.ad(y) - g.ad(y) * g.ad(x);
      EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12) << name;
    }
  }
}

TEST(LieCore, CoadPairing) {
  // <coad(x) alpha, y> = alpha([x, y]).
  std::mt19937_64 rng(5);
  const auto s = catalog::sl3();
  const auto& g = *s.algebra;
  for (int t = 0; t < 20; ++t) {
    const Vec x = random_vec(g.dim(), rng), y = random_vec(g.dim(), rng), alpha = random_vec(g.dim(), rng);
    const cplx lhs = ((coad(make_element(s.algebra, x)) * alpha).transpose() * y)(0, 0);
    const cplx rhs = (alpha.transpose() * g.bracket(x, y))(0, 0);
    EXPECT_LT(std::abs(lhs - rhs), 1e-12);
  }
}

TEST(LieCore, TraceOfAdVanishesOnSemisimple) {
  std::mt19937_64 rng(3);
  for (const auto& name : {"sl2", "sl3", "su2"}) {
    const auto m = catalog::matrix_algebra_by_name(name);
    const auto& g = *m.algebra;
    EXPECT_LT(std::abs(g.ad(random_vec(g.dim(), rng)).trace()), 1e-12) << name;
  }
}

TEST(LieCore, KillingForm) {
  const auto s = catalog::sl2();
  const Mat K = killing_form(*s.algebra);
  EXPECT_LT(std::abs(K(0, 0) - 8.0), 1e-13);
  EXPECT_LT(std::abs(K(1, 2) - 4.0), 1e-13);
  EXPECT_LT(std::abs(K(0, 1)), 1e-13);
  EXPECT_EQ(killing_form(LieAlgebra::abelian(4)), Mat::Zero(4, 4));
  for (const auto& name : {"sl2", "sl3", "su2"}) {
    const auto m = catalog::matrix_algebra_by_name(name);
    const auto& g = *m.algebra;
    const auto r = check_form_invariance(g, killing_form(g), 1e-10);
    EXPECT_TRUE(r.pass) << name;
    EXPECT_LT(r.residual("invariance"), 1e-12) << name;
  }
}

TEST(LieCore, JacobiOnCatalogAndPerturbation) {
  for (const auto& name : {"sl2", "sl3", "su2", "heisenberg3", "borel2", "torus2", "m1", "m2", "m3", "m4"}) {
    const auto r = check_jacobi(*catalog::matrix_algebra_by_name(name).algebra, 1e-12);
    EXPECT_TRUE(r.pass) << name;
  }
  EXPECT_EQ(check_jacobi(*catalog::sl2().algebra).residual("jacobi"), 0.0);
  EXPECT_EQ(check_jacobi(LieAlgebra::abelian(3)).residual("jacobi"), 0.0);

  // [E, F] = H + 0.1 E breaks Jacobi on (H, E, F): the residual is 0.2.
  const auto g = LieAlgebra::from_brackets(3, Field::real, {"H", "E", "F"},
                                           {{0, 1, 1, 2.0}, {0, 2, 2, -2.0}, {1, 2, 0, 1.0}, {1, 2, 1, 0.1}});
  const auto r = check_jacobi(g);
  EXPECT_FALSE(r.pass);
  EXPECT_GE(r.residual("jacobi"), 0.1);
}

TEST(LieCore, Validation) {
  std::vector<cplx> c(27, cplx(0.0));
  c[(0 * 3 + 1) * 3 + 2] = 1.0;
  EXPECT_THROW(LieAlgebra(3, Field::real, {}, c), StructuralError);
  c[(1 * 3 + 0) * 3 + 2] = -1.0;
  EXPECT_NO_THROW(LieAlgebra(3, Field::real, {}, c));
  c[(0 * 3 + 1) * 3 + 2] = cplx(1.0, 1.0);
  c[(1 * 3 + 0) * 3 + 2] = cplx(-1.0, -1.0);
  EXPECT_THROW(LieAlgebra(3, Field::real, {}, c), StructuralError);
  EXPECT_NO_THROW(LieAlgebra(3, Field::complex, {}, c));
  c[0] = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(LieAlgebra(3, Field::complex, {}, c), StructuralError);
  EXPECT_THROW(LieAlgebra::abelian(0), StructuralError);
  Mat f = Mat::Identity(2, 2);
  f(0, 1) = 1.0;
  EXPECT_THROW(LieAlgebra(2, Field::real, {}, std::vector<cplx>(8, 0.0), f), StructuralError);
}

TEST(LieCore, ElementsFromDifferentAlgebrasRejected) {
  const auto a = catalog::sl2().algebra;
  const auto b = catalog::sl2().algebra;
  EXPECT_THROW(bracket(basis_element(a, 0), basis_element(b, 1)), StructuralError);
  EXPECT_THROW(make_element(a, Vec::Zero(2)), StructuralError);
}

TEST(LieCore, DirectSum) {
  const auto s = catalog::sl2();
  const auto d = direct_sum(*s.algebra, *s.algebra);
  EXPECT_EQ(d.dim(), 6u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 3; j < 6; ++j)
      for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(d.c(i, j, k), cplx(0.0));
  EXPECT_TRUE(check_jacobi(d).pass);
  ASSERT_TRUE(d.form().has_value());
  EXPECT_EQ(d.form()->block(3, 3, 3, 3), *s.algebra->form());
  EXPECT_THROW(direct_sum(*s.algebra, LieAlgebra::abelian(2, Field::complex)), StructuralError);
}

TEST(LieCore, MatrixRealizationRejectsWrongConstants) {
  const auto s = catalog::sl2();
  std::vector<Mat> swapped = s.realization.basis();
  std::swap(swapped[1], swapped[2]);
  EXPECT_THROW(MatrixRealization(s.algebra, swapped), StructuralError);
}
