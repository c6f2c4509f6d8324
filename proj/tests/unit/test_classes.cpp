#include <gtest/gtest.h>

#include "qstfid/classes.hpp"
#include "qstfid/errors.hpp"
#include "test_util.hpp"

using namespace qstfid;

TEST(ClassifierTest, HandBuiltInvariants) {
  InvariantSet j;
  j.j5 = 0.0;
  EXPECT_EQ(classify_3q(j).tag, ClassTag::kC1);
  j.j2 = 0.2;
  const auto c = classify_3q(j);
  EXPECT_EQ(c.tag, ClassTag::kC2a);
  EXPECT_EQ(c.variant, "J2");
  InvariantSet no5;
  EXPECT_FALSE(classify_3q(no5).classified());
}

TEST(ClassifierTest, NamedCanonicalStates) {
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_EQ(classify_3q(invariants_from_canonical(CanonicalState::make({r, 0.0, 0.0, 0.0, r}, 0.0))).tag,
            ClassTag::kC2b);
  EXPECT_EQ(classify_3q(invariants_from_canonical(CanonicalState::make({0.5, 0.5, 0.5, 0.5, 0.0}, 0.0))).tag,
            ClassTag::kC4a);
  EXPECT_EQ(classify_3q(invariants_from_canonical(CanonicalState::make({1.0, 0.0, 0.0, 0.0, 0.0}, 0.0))).tag,
            ClassTag::kC1);
}

TEST(ClassSamplerTest, RoundTripsForEveryClass) {
  for (ClassTag tag : kThreeQubitTags) {
    for (std::uint64_t s = 0; s < 200; ++s) {
      RandomStream rng(2024, s, StreamDomain::kClassSampler);
      const CanonicalState c = sample_class_state(tag, rng);
      EXPECT_EQ(classify_3q(invariants_from_canonical(c)).tag, tag) << to_string(tag) << " sample " << s;
    }
  }
}

TEST(ClassSamplerTest, DeterministicPerIndex) {
  RandomStream a(5, 3, StreamDomain::kClassSampler);
  RandomStream b(5, 3, StreamDomain::kClassSampler);
  const CanonicalState x = sample_class_state(ClassTag::kC4d, a);
  const CanonicalState y = sample_class_state(ClassTag::kC4d, b);
  EXPECT_EQ(x.lambda, y.lambda);
  EXPECT_EQ(x.phi, y.phi);
}

TEST(ClassFormulaTest, EqualsInvariantFormUnderSubstitution) {
  for (ClassTag tag : kThreeQubitTags) {
    for (std::uint64_t s = 0; s < 50; ++s) {
      RandomStream rng(77, s, StreamDomain::kClassSampler);
      const CanonicalState c = sample_class_state(tag, rng);
      const InvariantSet j = invariants_from_canonical(c);
      ClassMeasures m;
      m.c_bc_sq = 4.0 * j.j1;
      m.c_ac_sq = 4.0 * j.j2;
      m.c_ab_sq = 4.0 * j.j3;
      m.tau3_sq = 4.0 * j.j4;
      for (double f1 : {0.5, 0.66, 0.8, 0.93, 1.0}) {
        EXPECT_NEAR(class_fixed_entanglement_fidelity(tag, f1, m), avg_fidelity_3q_fixed_invariants(f1, j), 1e-12)
            << to_string(tag);
      }
    }
  }
}

TEST(ClassFormulaTest, MatchesCliffordAverageOnSampledStates) {
  const auto f = TransitionAmplitude::polar(0.6, 0.0);
  const double f1 = avg_fidelity_single(f);
  for (ClassTag tag : kThreeQubitTags) {
    RandomStream rng(99, 0, StreamDomain::kClassSampler);
    const PureState psi = canonical_to_state(sample_class_state(tag, rng));
    const ClassMeasures m = ClassMeasures::from(measures_from_state(psi));
    EXPECT_NEAR(class_fixed_entanglement_fidelity(tag, f1, m),
                oracle::clifford_average_fidelity(testutil::to_vec(psi), 3, f.value()), 1e-10)
        << to_string(tag);
  }
}

TEST(NamedFourQubitTest, StatesAndErrors) {
  EXPECT_EQ(named_four_qubit_state(ClassTag::kW4).n_qubits(), 4);
  EXPECT_NEAR(std::abs(named_four_qubit_state(ClassTag::kB2)[0b0011]), 0.5, 1e-15);
  EXPECT_THROW(named_four_qubit_state(ClassTag::kC2b), DomainError);
}
