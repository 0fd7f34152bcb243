#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace quadham;
using namespace qtest;

namespace {
const cplx I(0.0, 1.0);

double relative_error(const std::vector<cplx>& got, const std::vector<cplx>& expected) {
  double scale = 1.0;
  for (const cplx z : expected) scale = std::max(scale, std::abs(z));
  return distance(got, expected) / scale;
}
}  // namespace

TEST(Instantiate, Examples) {
  auto cf = instantiate(ModelSpec::oned(0.5)).expected;
  ASSERT_TRUE(cf);
  EXPECT_LT(distance(cf->eigenvalues, {std::sqrt(3.0), -std::sqrt(3.0)}), 1e-15);

  cf = instantiate(ModelSpec::coupled_pp(2.0, I)).expected;
  EXPECT_LT(distance(cf->xi, {2.0 * (3.0 + I), 2.0 * (3.0 - I)}), 1e-14);
  for (const cplx l : cf->eigenvalues) EXPECT_GT(std::abs(l.imag()), 0.1);

  // isotropic angular model: lambda = +-(2 +- b)
  cf = instantiate(ModelSpec::angular(1.0, 1.0)).expected;
  EXPECT_LT(distance(cf->eigenvalues, {3.0, -3.0, 1.0, -1.0}), 1e-14);
  EXPECT_LT(relative_error(eigen(adjoint_of(ModelSpec::angular(1.0, 1.0))).eigenvalues, cf->eigenvalues), 1e-14);
}

TEST(Instantiate, Validation) {
  EXPECT_THROW(instantiate(ModelSpec::coupled_xy(0.0, 1.0)), InvalidParam);
  EXPECT_THROW(instantiate(ModelSpec::angular(-1.0, 1.0)), InvalidParam);
  ModelSpec bad = ModelSpec::custom(GammaMatrix(1, Matrix::Identity(2, 2)));
  bad.K = 2;
  EXPECT_THROW(instantiate(bad), DimensionMismatch);
  EXPECT_FALSE(instantiate(ModelSpec::custom(GammaMatrix(1, Matrix::Identity(2, 2)))).expected);
}

TEST(Instantiate, CustomAgreesWithGammaRoute) {
  for (int K = 1; K <= 3; ++K)
    for (int trial = 0; trial < 5; ++trial) {
      const auto g = random_gamma(K, trial % 2 == 1);
      const auto spec = ModelSpec::custom(g, 0.25);
      EXPECT_LT(max_abs(adjoint_of(spec).H - gamma_to_adjoint(g).H), 1e-12);
      EXPECT_LT(std::abs(adjoint_of(spec).constant - gamma_to_adjoint(g, 0.25).constant), 1e-12);
    }
}

TEST(ExceptionalPoints, Examples) {
  const auto oned = exceptional_points(ModelSpec::oned(0.0));
  ASSERT_EQ(oned.size(), 1u);
  EXPECT_EQ(*oned[0].on_axis("b_real"), 1.0);

  const auto xy = exceptional_points(ModelSpec::coupled_xy(4.0, 0.0));
  EXPECT_EQ(*xy[0].on_axis("b_real"), 4.0);

  const auto pp = exceptional_points(ModelSpec::coupled_pp(3.0, 0.0));
  EXPECT_NEAR(*pp[1].on_axis("b_imag"), 2.0 / std::sqrt(3.0), 1e-15);
  EXPECT_FALSE(pp[1].on_axis("b_real"));

  EXPECT_THROW(exceptional_points(ModelSpec::custom(GammaMatrix(1, Matrix::Identity(2, 2)))), NotAvailable);
}

TEST(ExceptionalPoints, SpectrumCoalescesOnLoci) {
  for (const double a : {0.5, 2.0, 4.0})
    for (const auto& base : {ModelSpec::coupled_xy(a, 0.0), ModelSpec::coupled_pp(a, 0.0), ModelSpec::angular(a, 0.0)})
      for (const auto& ep : exceptional_points(base)) {
        ModelSpec spec = base;
        spec.b = std::sqrt(ep.b_squared);
        const auto s = eigen(adjoint_of(spec));
        EXPECT_EQ(s.classification, SpectrumClass::ExceptionalCandidate) << to_string(spec.kind) << " " << ep.expression;
      }
}

TEST(Reality, Examples) {
  EXPECT_TRUE(closed_form_real(ModelSpec::coupled_xy(4.0, 3.9)));
  EXPECT_FALSE(closed_form_real(ModelSpec::coupled_pp(2.0, I)));
  EXPECT_TRUE(closed_form_real(ModelSpec::angular(1.0, 1.0)));
  EXPECT_TRUE(classify_reality(ModelSpec::coupled_xy(4.0, 3.9)).match);
  // angular: real again once b^2 exceeds both 4 and 4a
  EXPECT_FALSE(closed_form_real(ModelSpec::angular(2.0, 2.5)));
  EXPECT_TRUE(closed_form_real(ModelSpec::angular(2.0, 3.5)));
}

class ModelGrid : public ::testing::TestWithParam<std::tuple<ModelKind, bool>> {};

TEST_P(ModelGrid, ClosedFormsAndWindows) {
  const auto [kind, imaginary] = GetParam();
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      ModelSpec spec = ModelSpec::coupled_xy(0.5 + 3.5 * i / 19.0, 0.0);
      spec.kind = kind;
      spec.b = imaginary ? cplx(0.0, 2.0 * j / 19.0) : cplx(4.0 * j / 19.0, 0.0);
      const auto inst = instantiate(spec);
      const auto s = eigen(build_adjoint(inst.hamiltonian));
      EXPECT_LT(relative_error(s.eigenvalues, inst.expected->eigenvalues), 1e-9)
          << to_string(kind) << " a=" << spec.a << " b=" << spec.b;
      const auto r = classify_reality(spec);
      EXPECT_TRUE(r.match) << to_string(kind) << " a=" << spec.a << " b=" << spec.b;
    }
}

INSTANTIATE_TEST_SUITE_P(Builtins, ModelGrid,
                         ::testing::Combine(::testing::Values(ModelKind::CoupledXY, ModelKind::CoupledPP, ModelKind::Angular),
                                            ::testing::Bool()));

TEST(OneDGrid, ClosedForm) {
  for (int k = 0; k <= 40; ++k) {
    const double b = -2.0 + 0.1 * k;
    const auto inst = instantiate(ModelSpec::oned(b));
    EXPECT_LT(distance(eigen(build_adjoint(inst.hamiltonian)).eigenvalues, inst.expected->eigenvalues), 1e-10);
  }
}
