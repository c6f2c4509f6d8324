#include <gtest/gtest.h>

#include "qstfid/fidelity.hpp"
#include "qstfid/montecarlo.hpp"
#include "qstfid/rng.hpp"
#include "test_util.hpp"

using namespace qstfid;

TEST(PhiloxTest, KnownAnswerVectors) {
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  EXPECT_EQ(Philox4x32::block(C{0, 0, 0, 0}, K{0, 0}), (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32::block(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}),
            (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32::block(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}),
            (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RandomStreamTest, ReproducibleAndDistinct) {
  RandomStream a(1, 2, StreamDomain::kHaarState);
  RandomStream b(1, 2, StreamDomain::kHaarState);
  RandomStream c(1, 3, StreamDomain::kHaarState);
  RandomStream d(1, 2, StreamDomain::kLocalUnitary);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
    EXPECT_NE(x, d.next_u64());
  }
}

TEST(RandomStreamTest, UniformAndNormalMoments) {
  RandomStream r(9, 0);
  double s = 0.0, s2 = 0.0, n1 = 0.0, n2 = 0.0;
  const int count = 200000;
  for (int i = 0; i < count; ++i) {
    const double u = r.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    s += u;
    s2 += u * u;
    const double g = r.normal();
    n1 += g;
    n2 += g * g;
  }
  EXPECT_NEAR(s / count, 0.5, 0.005);
  EXPECT_NEAR(s2 / count, 1.0 / 3.0, 0.005);
  EXPECT_NEAR(n1 / count, 0.0, 0.01);
  EXPECT_NEAR(n2 / count, 1.0, 0.01);
}

TEST(HaarSamplerTest, UnitaryAndUniformFirstColumn) {
  double m = 0.0;
  const int count = 20000;
  for (int i = 0; i < count; ++i) {
    RandomStream r(3, static_cast<std::uint64_t>(i), StreamDomain::kLocalUnitary);
    const kernels::Mat2 u = haar_unitary_2(r);
    const Complex d00 = std::conj(u[0]) * u[0] + std::conj(u[2]) * u[2];
    const Complex d01 = std::conj(u[0]) * u[1] + std::conj(u[2]) * u[3];
    ASSERT_NEAR(std::abs(d00 - 1.0), 0.0, 1e-13);
    ASSERT_NEAR(std::abs(d01), 0.0, 1e-13);
    m += std::norm(u[0]) * std::norm(u[0]);
  }
  // E|u00|^4 = 1/3 under Haar on U(2)
  EXPECT_NEAR(m / count, 1.0 / 3.0, 0.01);
}

TEST(EstimatorTest, PairwiseSumAndSummary) {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  EXPECT_DOUBLE_EQ(detail::pairwise_sum(v), 499500.0);
  const Estimate e = detail::summarize(std::vector<double>{1.0, 2.0, 3.0, 4.0}, 5);
  EXPECT_DOUBLE_EQ(e.mean, 2.5);
  EXPECT_NEAR(e.std_error, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
  EXPECT_EQ(e.samples, 4u);
  EXPECT_EQ(e.seed, 5u);
  EXPECT_EQ(detail::resolve_workers(8, 100), 1u);
}

TEST(EstimatorTest, BitIdenticalAcrossWorkerCounts) {
  const auto f = TransitionAmplitude::polar(0.6, 0.3);
  const PureState psi = testutil::random_state(3, 50);
  const Estimate a = mc_fidelity_local_unitary_orbit(psi, f, 20000, 11, McOptions{1});
  const Estimate b = mc_fidelity_local_unitary_orbit(psi, f, 20000, 11, McOptions{4});
  const Estimate c = mc_fidelity_local_unitary_orbit(psi, f, 20000, 11, McOptions{7});
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(a.mean, c.mean);
  const Estimate h1 = mc_fidelity_haar(2, f, 10000, 4, McOptions{1});
  const Estimate h3 = mc_fidelity_haar(2, f, 10000, 4, McOptions{3});
  EXPECT_EQ(h1.mean, h3.mean);
  EXPECT_EQ(h1.std_error, h3.std_error);
}

TEST(EstimatorTest, LocalOrbitAgreesWithExactAverage) {
  const auto f = TransitionAmplitude::polar(0.5, 0.0);
  const PureState bell = schmidt_state_2q(0.0);
  const Estimate e = mc_fidelity_local_unitary_orbit(bell, f, 40000, 1);
  EXPECT_NEAR(e.mean, avg_fidelity_2q_fixed_concurrence(f, 1.0), 5.0 * e.std_error);
}

TEST(EstimatorTest, PerQubitAmplitudes) {
  const std::array<TransitionAmplitude, 2> fs{TransitionAmplitude::polar(1.0), TransitionAmplitude::polar(1.0)};
  const Estimate e = mc_fidelity_local_unitary_orbit(schmidt_state_2q(0.3), fs, 500, 2);
  EXPECT_NEAR(e.mean, 1.0, 1e-12);
  EXPECT_NEAR(e.std_error, 0.0, 1e-12);
}
