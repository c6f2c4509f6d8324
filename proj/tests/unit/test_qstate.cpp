#include <gtest/gtest.h>

#include "qstfid/errors.hpp"
#include "qstfid/qstate.hpp"
#include "test_util.hpp"

using namespace qstfid;

TEST(PureStateTest, NormalisesOnConstruction) {
  const PureState psi = make_pure_state({3.0, Complex(0.0, 4.0)});
  EXPECT_EQ(psi.n_qubits(), 1);
  EXPECT_NEAR(psi[0].real(), 0.6, 1e-15);
  EXPECT_NEAR(psi[1].imag(), 0.8, 1e-15);
}

TEST(PureStateTest, RejectsBadShapes) {
  EXPECT_THROW(make_pure_state({1.0, 0.0, 0.0}), ShapeError);
  EXPECT_THROW(make_pure_state({1.0}), ShapeError);
  EXPECT_THROW(make_pure_state({0.0, 0.0}), DegenerateInputError);
  EXPECT_THROW(make_pure_state({std::nan(""), 1.0}), DegenerateInputError);
  EXPECT_THROW(basis_state(2, 4), IndexError);
}

TEST(PureStateTest, DimensionCap) {
  // the environment override is read once per process; see CliBinaryTest
  EXPECT_THROW(basis_state(max_qubits() + 1, 0), ShapeError);
  EXPECT_NO_THROW(basis_state(max_qubits(), 0));
}

TEST(PureStateTest, TensorProductIsBigEndian) {
  const PureState a = basis_state(1, 1);
  const PureState b = basis_state(2, 2);
  const PureState ab = tensor_product(a, b);
  EXPECT_EQ(ab.n_qubits(), 3);
  EXPECT_NEAR(std::abs(ab[0b110]), 1.0, 1e-15);
}

TEST(DensityMatrixTest, ValidatesEntries) {
  EXPECT_THROW(DensityMatrix(1, {1.0, 0.0, 0.0}), ShapeError);
  EXPECT_THROW(DensityMatrix(1, {0.5, 0.1, 0.2, 0.5}), DomainError);  // not Hermitian
  EXPECT_THROW(DensityMatrix(1, {0.7, 0.0, 0.0, 0.7}), DomainError);  // trace
  EXPECT_THROW(DensityMatrix::from_entries(1, {1.5, 0.0, 0.0, -0.5}), DomainError);
  EXPECT_NO_THROW(DensityMatrix::from_entries(1, {0.5, 0.5, 0.5, 0.5}));
}

TEST(DensityMatrixTest, PureStateHasUnitPurity) {
  const DensityMatrix rho = density_from_pure(testutil::random_state(3, 1));
  EXPECT_NEAR(purity(rho), 1.0, 1e-13);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-13);
  const auto eig = rho.eigenvalues();
  EXPECT_NEAR(eig.back(), 1.0, 1e-12);
  EXPECT_NEAR(eig.front(), 0.0, 1e-12);
}

TEST(PartialTraceTest, BellMarginalIsMaximallyMixed) {
  const DensityMatrix rho = density_from_pure(make_pure_state({1.0, 0.0, 0.0, 1.0}));
  const DensityMatrix a = partial_trace(rho, {1});
  EXPECT_NEAR(a(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(a(0, 1)), 0.0, 1e-15);
  EXPECT_NEAR(purity(a), 0.5, 1e-15);
}

TEST(PartialTraceTest, MatchesExplicitContraction) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const PureState psi = testutil::random_state(3, 11, s);
    const DensityMatrix rho = density_from_pure(psi);
    for (int traced = 1; traced <= 3; ++traced) {
      std::vector<int> keep;
      for (int q = 1; q <= 3; ++q) {
        if (q != traced) keep.push_back(q);
      }
      const DensityMatrix got = partial_trace(rho, keep);
      const Eigen::Matrix4cd want = oracle::marginal_2of3(testutil::to_vec(psi), traced);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(got(i, j) - want(i, j)), 0.0, 1e-14);
    }
  }
}

TEST(PartialTraceTest, KeepOrderAndValidation) {
  const DensityMatrix rho = density_from_pure(basis_state(3, 0b011));
  const DensityMatrix m = partial_trace(rho, {3, 1});  // sorted internally
  EXPECT_NEAR(m(0b01, 0b01).real(), 1.0, 1e-15);
  EXPECT_THROW(partial_trace(rho, {1, 1}), IndexError);
  EXPECT_THROW(partial_trace(rho, {4}), IndexError);
  EXPECT_THROW(partial_trace(rho, std::span<const int>{}), IndexError);
}
