#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace quadham;
using namespace qtest;

namespace {
const cplx I(0.0, 1.0);

std::vector<cplx> schur_eigenvalues(const Matrix& h) {
  Eigen::ComplexEigenSolver<Matrix> solver(h, false);
  std::vector<cplx> out;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) out.push_back(solver.eigenvalues()(i));
  return out;
}
}  // namespace

TEST(CharPoly, Examples) {
  const auto c = char_poly(adjoint_of(ModelSpec::oned(0.5)));
  ASSERT_EQ(c.size(), 3u);
  EXPECT_LT(std::abs(c[0] - cplx(-3.0)), 1e-14);
  EXPECT_LT(std::abs(c[1]), 1e-14);
  EXPECT_EQ(c[2], cplx(1.0));

  const auto z = char_poly(gamma_to_adjoint(GammaMatrix(1, Matrix::Zero(2, 2))));
  EXPECT_EQ(z, (std::vector<cplx>{0.0, 0.0, 1.0}));
}

TEST(CharPoly, MatchesProductOfRoots) {
  for (int K = 1; K <= 3; ++K)
    for (int trial = 0; trial < 10; ++trial) {
      const auto rep = gamma_to_adjoint(random_gamma(K, trial % 2 == 0));
      const auto c = char_poly(rep);
      const auto r = poly_from_roots(schur_eigenvalues(rep.H));
      for (std::size_t k = 0; k < c.size(); ++k) EXPECT_LT(std::abs(c[k] - r[k]), 1e-9 * std::max(1.0, std::abs(c[k])));
      // odd coefficients vanish
      for (std::size_t k = 1 - c.size() % 2; k < c.size(); k += 2)
        if (k % 2 == 1) EXPECT_LT(std::abs(c[k]), 1e-11 * std::max(1.0, std::abs(c[0])));
      // Cayley-Hamilton
      EXPECT_LT(max_abs(poly_of_matrix(c, rep.H)), 1e-10 * std::pow(std::max(1.0, norm_inf(rep.H)), 2 * K));
    }
}

TEST(Eigen, Examples) {
  auto s = eigen(adjoint_of(ModelSpec::oned(0.5)));
  EXPECT_EQ(s.classification, SpectrumClass::AllReal);
  EXPECT_LT(distance(s.eigenvalues, {std::sqrt(3.0), -std::sqrt(3.0)}), 1e-14);

  s = eigen(adjoint_of(ModelSpec::coupled_xy(2.0, 1.0)));
  EXPECT_EQ(s.classification, SpectrumClass::AllReal);
  const double hi = std::sqrt(2.0 * (3.0 + std::sqrt(2.0))), lo = std::sqrt(2.0 * (3.0 - std::sqrt(2.0)));
  EXPECT_LT(distance(s.eigenvalues, {hi, -hi, lo, -lo}), 1e-13);
  EXPECT_NEAR(hi, 2.9713, 1e-4);
  EXPECT_NEAR(lo, 1.7809, 1e-4);

  s = eigen(adjoint_of(ModelSpec::oned(2.0)));
  EXPECT_EQ(s.classification, SpectrumClass::Complex);
  EXPECT_LT(distance(s.eigenvalues, {2.0 * std::sqrt(3.0) * I, -2.0 * std::sqrt(3.0) * I}), 1e-14);
}

TEST(Eigen, SortedAndPaired) {
  for (int K = 1; K <= 3; ++K)
    for (int trial = 0; trial < 20; ++trial) {
      const auto s = eigen(gamma_to_adjoint(random_gamma(K, trial % 2 == 0)));
      ASSERT_EQ(static_cast<int>(s.pairs.size()), K);
      for (const auto& [i, j] : s.pairs) EXPECT_EQ(s.eigenvalues[i], -s.eigenvalues[j]);
      for (std::size_t j = 1; j < s.eigenvalues.size(); ++j)
        EXPECT_LE(s.eigenvalues[j - 1].real(), s.eigenvalues[j].real() + 1e-8 * s.scale);
    }
}

TEST(Eigen, ResidualsAndCrossCheck) {
  for (int K = 1; K <= 3; ++K)
    for (int trial = 0; trial < 30; ++trial) {
      const auto rep = gamma_to_adjoint(random_gamma(K, trial % 2 == 0));
      const auto s = eigen(rep);
      const double bound = 1e-10 * norm_inf(rep.H);
      for (int j = 0; j < rep.dim(); ++j)
        if (s.simple(j)) EXPECT_LT(s.residuals[j], bound);
      EXPECT_LT(distance(s.eigenvalues, schur_eigenvalues(rep.H)), 1e-9 * s.scale);
      EXPECT_LT(distance(s.eigenvalues, negated(s.eigenvalues)), 1e-9);
    }
}

TEST(Eigen, ConjugationClosureForBuiltins) {
  for (const auto& spec : {ModelSpec::oned(0.4), ModelSpec::oned(1.7 * I), ModelSpec::coupled_xy(2.0, 0.8 * I),
                           ModelSpec::coupled_pp(3.0, 2.5), ModelSpec::angular(1.5, 0.3 * I)}) {
    const auto s = eigen(adjoint_of(spec));
    EXPECT_LT(distance(s.eigenvalues, conjugated(s.eigenvalues)), 1e-9) << to_string(spec.kind);
  }
}

TEST(Eigen, LeftEigenvectorRelation) {
  // H^dagger (U C*) = -lambda* (U C*) for Hermitian input
  for (const auto& spec : {ModelSpec::oned(0.4), ModelSpec::coupled_xy(2.0, 1.0), ModelSpec::angular(2.0, 0.7),
                           ModelSpec::coupled_pp(0.7, 1.2)}) {
    const auto rep = adjoint_of(spec);
    const auto s = eigen(rep);
    for (int j = 0; j < rep.dim(); ++j) {
      const Vector w = rep.U * s.eigenvectors.col(j).conjugate();
      const cplx l = s.eigenvalues[j];
      EXPECT_LT((rep.H.adjoint() * w + std::conj(l) * w).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST(Eigen, PhaseConvention) {
  const auto s = eigen(adjoint_of(ModelSpec::coupled_xy(2.0, 1.0)));
  for (int j = 0; j < 4; ++j) {
    const Vector c = s.eigenvectors.col(j);
    EXPECT_NEAR(c.norm(), 1.0, 1e-14);
    Eigen::Index k = 0;
    c.cwiseAbs().maxCoeff(&k);
    EXPECT_GT(c(k).real(), 0.0);
    EXPECT_LT(std::abs(c(k).imag()), 1e-14);
  }
}

TEST(DefectInfo, Examples) {
  EXPECT_EQ(defect_info(adjoint_of(ModelSpec::oned(1.0)), 0.0), std::make_pair(2, 1));
  EXPECT_EQ(defect_info(adjoint_of(ModelSpec::oned(-1.0)), 0.0), std::make_pair(2, 1));
  EXPECT_EQ(defect_info(adjoint_of(ModelSpec::oned(0.0)), 2.0), std::make_pair(1, 1));
  EXPECT_THROW(defect_info(adjoint_of(ModelSpec::oned(0.0)), 1.0), InvalidParam);
  // two uncoupled equal oscillators: degenerate but diagonalizable
  EXPECT_EQ(defect_info(adjoint_of(ModelSpec::coupled_xy(1.0, 0.0)), 2.0), std::make_pair(2, 2));
}

TEST(DefectInfo, SoleEigenvectorAtEP) {
  for (const double b : {1.0, -1.0}) {
    const Matrix v = eigenvectors_for(adjoint_of(ModelSpec::oned(b)), 0.0);
    ASSERT_EQ(v.cols(), 1);
    Vector expected(2);
    expected << 1.0 / std::sqrt(2.0), b / std::sqrt(2.0);
    EXPECT_LT(std::min((v.col(0) - expected).norm(), (v.col(0) + expected).norm()), 1e-8);
  }
}

TEST(Jordan, OneDimensionalEP) {
  const auto j = jordan_form(adjoint_of(ModelSpec::oned(1.0)));
  EXPECT_LT(max_abs(j.J - rows({{0.0, 1.0}, {0.0, 0.0}})), 1e-12);
  EXPECT_LT(j.residual, 1e-9);
  EXPECT_EQ(j.block_sizes, std::vector<int>{2});
}

TEST(Jordan, TwoBlocksAtEqualFrequencyEP) {
  // coupled_xy at b^2 = -(a-1)^2: xi_+ = xi_- = 2(a+1)
  const double a = 2.0;
  const auto j = jordan_form(adjoint_of(ModelSpec::coupled_xy(a, cplx(0.0, a - 1.0))));
  const double w = std::sqrt(2.0 * (a + 1.0));
  EXPECT_EQ(j.block_sizes, (std::vector<int>{2, 2}));
  EXPECT_LT(std::abs(j.J(0, 0) + w), 1e-6);
  EXPECT_LT(std::abs(j.J(2, 2) - w), 1e-6);
  EXPECT_EQ(j.J(0, 1), cplx(1.0));
  EXPECT_EQ(j.J(2, 3), cplx(1.0));
  EXPECT_LT(j.residual, 1e-9);
  const Matrix lhs = adjoint_of(ModelSpec::coupled_xy(a, cplx(0.0, a - 1.0))).H * j.P;
  EXPECT_LT(max_abs(lhs - j.P * j.J), 1e-8);
}

TEST(Jordan, DiagonalizableRejected) {
  EXPECT_THROW(jordan_form(adjoint_of(ModelSpec::oned(0.5))), NotDefective);
  EXPECT_THROW(jordan_form(adjoint_of(ModelSpec::coupled_xy(1.0, 0.0))), NotDefective);
}

TEST(Ladder, HarmonicOscillator) {
  const auto inst = instantiate(ModelSpec::oned(0.0));
  const auto L = ladder_system(build_adjoint(inst.hamiltonian), inst.hamiltonian);
  EXPECT_EQ(L.lambda[0], cplx(-2.0));
  EXPECT_EQ(L.lambda[1], cplx(2.0));
  // Z_1 is proportional to p - ix, Z_2 to p + ix
  const cplx r1 = L.Z[0].linear_coefficient(1) / L.Z[0].linear_coefficient(0);
  const cplx r2 = L.Z[1].linear_coefficient(1) / L.Z[1].linear_coefficient(0);
  EXPECT_LT(std::abs(r1 - 1.0 / cplx(0, -1)), 1e-12);
  EXPECT_LT(std::abs(r2 - 1.0 / cplx(0, 1)), 1e-12);
  EXPECT_LT(std::abs(L.sigma[0] - 1.0), 1e-12);  // unit-norm coefficient vectors
  EXPECT_LT(std::abs(L.E0 - 1.0), 1e-12);
  EXPECT_TRUE(hermitian_ladder_check(L));
}

TEST(Ladder, E0Examples) {
  const auto inst = instantiate(ModelSpec::oned(0.6));
  const auto L = ladder_system(build_adjoint(inst.hamiltonian), inst.hamiltonian);
  EXPECT_LT(std::abs(L.E0 - 0.8), 1e-12);
  EXPECT_LT(L.identity_residual, kLadderTol);
  EXPECT_TRUE(hermitian_ladder_check(L));
  for (const auto& spec : {ModelSpec::coupled_xy(1.0, 0.0), ModelSpec::coupled_pp(1.0, 0.0), ModelSpec::angular(1.0, 0.0)}) {
    const auto in2 = instantiate(spec);
    const auto L2 = ladder_system(build_adjoint(in2.hamiltonian), in2.hamiltonian);
    EXPECT_LT(std::abs(L2.E0 - 2.0), 1e-12);
  }
}

TEST(Ladder, IdentityAndCommutingLadders) {
  for (const auto& spec : {ModelSpec::oned(0.3), ModelSpec::coupled_xy(2.0, 1.0), ModelSpec::coupled_pp(3.0, 1.5),
                           ModelSpec::angular(2.0, 0.4), ModelSpec::angular(1.0, 0.5), ModelSpec::oned(0.9 * I)}) {
    const auto inst = instantiate(spec);
    const auto L = ladder_system(build_adjoint(inst.hamiltonian), inst.hamiltonian);
    EXPECT_LT(L.identity_residual, 1e-10);
    EXPECT_LT(L.eigen_residual, 1e-10);
    const int dim = static_cast<int>(L.Z.size());
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        const auto c = commutator(L.Z[i], L.Z[j]);
        EXPECT_TRUE(c.without_constant().is_zero());
        if (j != dim - 1 - i) EXPECT_LT(std::abs(c.constant_part()), 1e-10) << i << "," << j;
      }
    // E0 equals half the sum of the positive frequencies for these models
    cplx half_sum = 0.0;
    for (int j = dim / 2; j < dim; ++j) half_sum += 0.5 * L.lambda[j];
    EXPECT_LT(std::abs(L.E0 - half_sum), 1e-9) << to_string(spec.kind);
  }
}

TEST(Ladder, NotApplicable) {
  const auto complex_inst = instantiate(ModelSpec::oned(2.0));
  EXPECT_THROW(ladder_system(build_adjoint(complex_inst.hamiltonian), complex_inst.hamiltonian), NotApplicable);
  const auto ep_inst = instantiate(ModelSpec::oned(1.0));
  EXPECT_THROW(ladder_system(build_adjoint(ep_inst.hamiltonian), ep_inst.hamiltonian), NotApplicable);
}
