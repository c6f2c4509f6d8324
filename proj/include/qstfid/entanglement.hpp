#pragma once

#include <array>
#include <optional>

#include "qstfid/qstate.hpp"

namespace qstfid {

/// Round-off allowance for quantities that must be non-negative (three-tangle
/// residual, Wootters spectrum). Values below -kMonotoneTolerance are bugs.
inline constexpr double kMonotoneTolerance = 1e-9;

/// Five-term standard form
///   l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>.
struct CanonicalState {
  std::array<double, 5> lambda{};
  double phi = 0.0;

  /// Throws DomainError unless every l_i >= 0, sum l_i^2 = 1 within 1e-12 and
  /// 0 <= phi <= pi.
  static CanonicalState make(const std::array<double, 5>& lambda, double phi);
};

/// Local-unitary invariant polynomials J1..J5. J5 is only known when the
/// invariants come from canonical coefficients.
struct InvariantSet {
  double j1 = 0.0;
  double j2 = 0.0;
  double j3 = 0.0;
  double j4 = 0.0;
  std::optional<double> j5;
};

struct MeasureSet {
  double c_ab = 0.0;
  double c_ac = 0.0;
  double c_bc = 0.0;
  double tau3_sq = 0.0;
  double c_gme = 0.0;
};

/// Which two-qubit concurrence each of J1, J2, J3 encodes (C_jk^2 = 4 J_i with
/// i, j, k all different and (1,2,3) = (A,B,C)). Entry i-1 holds the 1-based
/// qubit pair of J_i.
inline constexpr std::array<std::array<int, 2>, 3> kInvariantPair{{{2, 3}, {1, 3}, {1, 2}}};

/// sqrt((1+s)/2)|00> + sqrt((1-s)/2)|11>, concurrence sqrt(1-s^2).
PureState schmidt_state_2q(double s);

/// 2 |a0 a3 - a1 a2|.
double concurrence_pure_2q(const PureState& psi);

/// Wootters concurrence max(0, mu1 - mu2 - mu3 - mu4), mu_i the descending
/// square roots of the spectrum of sqrt(rho) rho~ sqrt(rho).
double concurrence_mixed_2q(const DensityMatrix& rho);

/// C^2_{cut|rest} = 4 det rho_cut for a 3-qubit pure state; cut is 1-based.
double one_tangle(const PureState& psi, int cut);

/// Residual tangle C^2_{A|BC} - C^2_AB - C^2_AC, clamped to [0, 1].
double three_tangle_sq(const PureState& psi);

InvariantSet invariants_from_canonical(const CanonicalState& c);
PureState canonical_to_state(const CanonicalState& c);

/// 4 (min{J2+J3, J1+J3, J1+J2} + J4).
double gme_concurrence(const InvariantSet& j);

/// Pair concurrences from the two-qubit marginals, tau from the monogamy
/// residual and C_GME through J_i = C_jk^2/4, J4 = tau/4.
MeasureSet measures_from_state(const PureState& psi);

/// J1..J4 recovered from measures; J5 is left empty.
InvariantSet invariants_from_state(const PureState& psi);

}  // namespace qstfid
