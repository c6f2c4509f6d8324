#include <gtest/gtest.h>

#include <numbers>

#include "qstfid/channel.hpp"
#include "qstfid/errors.hpp"
#include "test_util.hpp"

using namespace qstfid;

namespace {

Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd& a) {
  // scaling and squaring, plain Taylor
  int squarings = 0;
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.25) {
    norm /= 2.0;
    ++squarings;
  }
  const Eigen::MatrixXcd s = a / std::pow(2.0, squarings);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * s / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace

TEST(TransitionAmplitudeTest, DomainChecks) {
  EXPECT_THROW(TransitionAmplitude::polar(1.1), DomainError);
  EXPECT_THROW(TransitionAmplitude::polar(-0.1), DomainError);
  EXPECT_EQ(TransitionAmplitude::from_complex(1.0 + 1e-12).magnitude(), 1.0);
  EXPECT_THROW(TransitionAmplitude::from_complex(1.0 + 1e-9), DomainError);
  const auto f = TransitionAmplitude::from_complex(Complex(0.0, -0.5));
  EXPECT_NEAR(f.magnitude(), 0.5, 1e-15);
  EXPECT_NEAR(f.value().imag(), -0.5, 1e-15);
}

TEST(SuperoperatorTest, EntriesOnVecBasis) {
  const Complex f(0.3, 0.4);
  const SingleQubitMap m = single_qubit_superoperator(TransitionAmplitude::from_complex(f));
  const auto out = m.apply({0.2, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.8});
  EXPECT_NEAR(std::abs(out[0] - (0.2 + 0.75 * 0.8)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out[1] - f * Complex(0.1, 0.2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out[2] - std::conj(f) * Complex(0.1, -0.2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out[3] - 0.25 * 0.8), 0.0, 1e-15);
}

TEST(SuperoperatorTest, EndpointsAreIdentityAndReset) {
  const auto one = single_qubit_superoperator(TransitionAmplitude::polar(1.0));
  const auto id = SingleQubitMap::identity();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) EXPECT_NEAR(std::abs(one(r, c) - id(r, c)), 0.0, 1e-15);
  const auto zero = single_qubit_superoperator(TransitionAmplitude::polar(0.0));
  const auto out = zero.apply({0.0, 0.0, 0.0, 1.0});
  EXPECT_NEAR(out[0].real(), 1.0, 1e-15);
}

TEST(SuperoperatorTest, CptpOnGrid) {
  for (int i = 0; i <= 100; ++i) {
    for (double ph : {0.0, 1.0, std::numbers::pi}) {
      const auto m = single_qubit_superoperator(TransitionAmplitude::polar(i / 100.0, ph));
      EXPECT_TRUE(is_cptp(m));
      for (double e : choi_eigenvalues(m)) EXPECT_GE(e, -1e-10);
    }
  }
  // A map that is not positive: vec entries swapped as for a transpose.
  SingleQubitMap::Matrix t{};
  t[0] = 1.0;
  t[1 * 4 + 2] = 1.0;
  t[2 * 4 + 1] = 1.0;
  t[15] = 1.0;
  EXPECT_FALSE(is_cptp(SingleQubitMap::from_matrix(t)));
}

TEST(ParallelChannelsTest, MatchesTensorSuperoperator) {
  const auto f1 = TransitionAmplitude::polar(0.7, 0.4);
  const auto f2 = TransitionAmplitude::polar(0.35, -2.0);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const DensityMatrix rho = density_from_pure(testutil::random_state(2, 5, s));
    const std::array<TransitionAmplitude, 2> fs{f1, f2};
    const DensityMatrix got = apply_parallel_channels(rho, fs);
    const std::vector<Complex> in(rho.entries().begin(), rho.entries().end());
    const auto want = oracle::tensor_superop_2q(single_qubit_superoperator(f1).matrix(),
                                                single_qubit_superoperator(f2).matrix(), in);
    for (std::size_t k = 0; k < 16; ++k) EXPECT_NEAR(std::abs(got.entries()[k] - want[k]), 0.0, 1e-14);
  }
}

TEST(ParallelChannelsTest, MatchesKrausFidelity) {
  const auto f = TransitionAmplitude::polar(0.6, 1.1);
  for (int n = 1; n <= 4; ++n) {
    const PureState psi = testutil::random_state(n, 9, static_cast<std::uint64_t>(n));
    const DensityMatrix out = apply_parallel_channels(density_from_pure(psi), f);
    Complex fid = 0.0;
    for (std::size_t i = 0; i < psi.dimension(); ++i)
      for (std::size_t j = 0; j < psi.dimension(); ++j) fid += std::conj(psi[i]) * out(i, j) * psi[j];
    EXPECT_NEAR(fid.real(), oracle::kraus_fidelity(testutil::to_vec(psi), n, f.value()), 1e-13);
  }
}

TEST(ParallelChannelsTest, ShapeMismatchThrows) {
  const DensityMatrix rho = density_from_pure(basis_state(3, 0));
  const std::array<TransitionAmplitude, 2> fs{TransitionAmplitude::polar(0.5), TransitionAmplitude::polar(0.5)};
  EXPECT_THROW(apply_parallel_channels(rho, fs), ShapeError);
}

TEST(ParallelChannelsTest, TraceAndPositivityPreserved) {
  const DensityMatrix rho = density_from_pure(testutil::random_state(3, 21));
  const DensityMatrix out = apply_parallel_channels(rho, TransitionAmplitude::polar(0.45, 2.0));
  EXPECT_NEAR(out.trace().real(), 1.0, 1e-13);
  EXPECT_GE(out.eigenvalues().front(), -1e-12);
}

TEST(ChainTest, PerfectTransferOnEngineeredCouplings) {
  ChainSpec spec;
  spec.length = 5;
  for (int k = 1; k < 5; ++k) spec.couplings.push_back(std::sqrt(static_cast<double>(k * (5 - k))));
  spec.fields.assign(5, 0.0);
  const auto f = chain_transition_amplitude(spec, 1, 5, std::numbers::pi / 4.0);
  EXPECT_NEAR(f.magnitude(), 1.0, 1e-12);
  // with 2J hopping the excitation is back on the sender at pi/2
  EXPECT_NEAR(chain_transition_amplitude(spec, 1, 5, std::numbers::pi / 2.0).magnitude(), 0.0, 1e-12);
  EXPECT_NEAR(chain_transition_amplitude(spec, 1, 1, std::numbers::pi / 2.0).magnitude(), 1.0, 1e-12);
}

TEST(ChainTest, MatchesMatrixExponential) {
  ChainSpec spec;
  spec.length = 6;
  spec.couplings = {0.7, 1.1, 0.4, 0.9, 1.3};
  spec.fields = {0.1, -0.2, 0.0, 0.3, 0.05, -0.1};
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(6, 6);
  for (int i = 0; i < 6; ++i) h(i, i) = 2.0 * spec.fields[static_cast<std::size_t>(i)];
  for (int i = 0; i < 5; ++i) h(i, i + 1) = h(i + 1, i) = 2.0 * spec.couplings[static_cast<std::size_t>(i)];
  for (double t : {0.0, 0.3, 1.7}) {
    const Eigen::MatrixXcd u = expm_taylor(Complex(0.0, -t) * h);
    for (auto [s, r] : {std::pair{1, 6}, std::pair{2, 4}, std::pair{3, 3}}) {
      const auto f = chain_transition_amplitude(spec, s, r, t);
      EXPECT_NEAR(std::abs(f.value() - u(r - 1, s - 1)), 0.0, 1e-11);
    }
  }
}

TEST(ChainTest, SectorUnitarity) {
  ChainSpec spec;
  spec.length = 7;
  spec.couplings = {1.0, 0.8, 1.2, 0.5, 0.9, 1.1};
  spec.fields = {0.0, 0.1, -0.3, 0.2, 0.0, 0.4, -0.1};
  for (double t : {0.5, 2.0, 9.0}) {
    for (int s = 1; s <= 7; ++s) {
      double total = 0.0;
      for (int r = 1; r <= 7; ++r) total += std::norm(chain_transition_amplitude(spec, s, r, t).value());
      EXPECT_NEAR(total, 1.0, 1e-10);
    }
  }
}

TEST(ChainTest, Validation) {
  ChainSpec spec;
  spec.length = 3;
  spec.couplings = {1.0};
  spec.fields = {0.0, 0.0, 0.0};
  EXPECT_THROW(spec.validate(), ShapeError);
  spec.couplings = {1.0, 0.0};
  EXPECT_THROW(spec.validate(), DomainError);
  spec.couplings = {1.0, 1.0};
  EXPECT_THROW(chain_transition_amplitude(spec, 0, 3, 1.0), IndexError);
  EXPECT_THROW(chain_transition_amplitude(spec, 1, 3, -1.0), DomainError);
}
