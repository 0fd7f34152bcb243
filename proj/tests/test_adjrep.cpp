#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace quadham;
using namespace qtest;

namespace {
const cplx I(0.0, 1.0);
}

TEST(UMatrix, Examples) {
  EXPECT_EQ(max_abs(build_U(1) - rows({{0.0, I}, {-I, 0.0}})), 0.0);
  const Matrix u2 = build_U(2);
  EXPECT_EQ(u2(0, 2), I);
  EXPECT_EQ(u2(1, 3), I);
  EXPECT_EQ(u2(2, 0), -I);
  EXPECT_EQ(u2(3, 1), -I);
  EXPECT_EQ(u2.cwiseAbs().sum(), 4.0);
  for (int K = 1; K <= 3; ++K) EXPECT_EQ(max_abs(build_U(K) - build_U_from_commutators(K)), 0.0);
}

TEST(BuildAdjoint, OneD) {
  const double b = 0.3;
  const auto rep = adjoint_of(ModelSpec::oned(b));
  EXPECT_LT(max_abs(rep.H - rows({{-2.0 * b * I, 2.0 * I}, {-2.0 * I, 2.0 * b * I}})), 1e-15);
}

TEST(BuildAdjoint, CoupledXY) {
  const double a = 2.5;
  const cplx b(0.4, -1.1);
  const auto rep = adjoint_of(ModelSpec::coupled_xy(a, b));
  const Matrix expected = rows({{0.0, 0.0, 2.0 * I, b * I},
                                {0.0, 0.0, b * I, 2.0 * a * I},
                                {-2.0 * I, 0.0, 0.0, 0.0},
                                {0.0, -2.0 * I, 0.0, 0.0}});
  EXPECT_LT(max_abs(rep.H - expected), 1e-15);
}

TEST(BuildAdjoint, Angular) {
  const double a = 0.8, b = 1.7;
  const auto rep = adjoint_of(ModelSpec::angular(a, b));
  const Matrix expected = rows({{0.0, -b * I, 2.0 * I, 0.0},
                                {b * I, 0.0, 0.0, 2.0 * a * I},
                                {-2.0 * I, 0.0, 0.0, -b * I},
                                {0.0, -2.0 * I, b * I, 0.0}});
  EXPECT_LT(max_abs(rep.H - expected), 1e-15);
}

TEST(BuildAdjoint, CoupledPPFromCommutators) {
  const double a = 2.0, b = 3.0;
  const auto rep = adjoint_of(ModelSpec::coupled_pp(a, b));
  const Matrix expected = rows({{0.0, 0.0, 2.0 * I, 0.0},
                                {0.0, 0.0, 0.0, 2.0 * a * I},
                                {-2.0 * I, -b * I, 0.0, 0.0},
                                {-b * I, -2.0 * I, 0.0, 0.0}});
  EXPECT_LT(max_abs(rep.H - expected), 1e-15);
}

TEST(BuildAdjoint, ColumnsAreCommutators) {
  const auto h = random_poly(2);
  const auto hq = h - h.part_of_degree(1);
  const auto rep = build_adjoint(hq);
  for (int i = 0; i < 4; ++i) {
    OperatorPoly rhs(2);
    for (int j = 0; j < 4; ++j) rhs += rep.basis[j] * rep.H(j, i);
    EXPECT_TRUE(approx_equal(commutator(hq, rep.basis[i]), rhs, 1e-12));
  }
}

TEST(BuildAdjoint, Rejections) {
  const auto x = OperatorPoly::x(1, 0);
  EXPECT_THROW(build_adjoint(multiply(x, x) + x), InhomogeneousHamiltonian);
  EXPECT_THROW(build_adjoint(multiply(multiply(x, x), x)), NonClosure);
}

TEST(BuildAdjoint, ConstantKept) {
  // b(xp + px) = 2b xp - ib, so the ordered form already carries a constant
  const auto h = instantiate(ModelSpec::oned(0.2)).hamiltonian;
  EXPECT_LT(std::abs(build_adjoint(h).constant - cplx(0.0, -0.2)), 1e-15);
  EXPECT_LT(std::abs(build_adjoint(h + OperatorPoly::constant(1, 3.5)).constant - cplx(3.5, -0.2)), 1e-15);
}

TEST(GammaToAdjoint, Examples) {
  const double b = 0.45;
  const auto rep = gamma_to_adjoint(GammaMatrix(1, rows({{1.0, b}, {b, 1.0}})));
  EXPECT_LT(max_abs(rep.H - rows({{-2.0 * b * I, 2.0 * I}, {-2.0 * I, 2.0 * b * I}})), 1e-15);
  EXPECT_EQ(max_abs(gamma_to_adjoint(GammaMatrix(2, Matrix::Zero(4, 4))).H), 0.0);
  EXPECT_THROW(GammaMatrix(2, Matrix::Zero(3, 3)), DimensionMismatch);
}

TEST(GammaToAdjoint, AgreesWithBuildAdjoint) {
  int count = 0;
  for (int K = 1; K <= 3; ++K)
    for (int trial = 0; trial < 34; ++trial) {
      const auto g = random_gamma(K, trial % 2 == 0);
      const auto direct = gamma_to_adjoint(g);
      const auto via_poly = build_adjoint(hamiltonian_from_gamma(g));
      EXPECT_LT(max_abs(direct.H - via_poly.H), 1e-12);
      EXPECT_LT(std::abs(direct.constant - via_poly.constant), 1e-12);
      ++count;
    }
  EXPECT_GE(count, 100);
}

TEST(Structure, Examples) {
  const auto r = check_structure(adjoint_of(ModelSpec::oned(0.5)), true);
  EXPECT_TRUE(r.uh_symmetric);
  EXPECT_TRUE(*r.entries_antireal);
  EXPECT_TRUE(*r.pseudo_hermitian);

  const auto ri = check_structure(adjoint_of(ModelSpec::oned(I)), false);
  EXPECT_TRUE(ri.uh_symmetric);
  EXPECT_FALSE(ri.entries_antireal.has_value());
  EXPECT_FALSE(ri.pseudo_hermitian.has_value());

  const auto rz = check_structure(gamma_to_adjoint(GammaMatrix(1, Matrix::Zero(2, 2))), true);
  EXPECT_TRUE(rz.uh_symmetric && *rz.entries_antireal && *rz.pseudo_hermitian);
}

TEST(Structure, RandomHamiltonians) {
  for (int K = 1; K <= 3; ++K)
    for (int trial = 0; trial < 30; ++trial) {
      const bool herm = trial % 2 == 0;
      const auto h = hamiltonian_from_gamma(random_gamma(K, herm));
      ASSERT_EQ(is_hermitian(h), herm);
      const auto r = check_structure(build_adjoint(h), herm);
      EXPECT_TRUE(r.uh_symmetric) << r.uh_residual;
      if (herm) {
        EXPECT_TRUE(*r.entries_antireal);
        EXPECT_TRUE(*r.pseudo_hermitian);
      }
    }
}
