#pragma once

#include <optional>
#include <string>

#include "qstfid/entanglement.hpp"
#include "qstfid/fidelity.hpp"
#include "qstfid/rng.hpp"

namespace qstfid {

inline constexpr double kDefaultClassTolerance = 1e-9;

/// Outcome of classify_3q. An empty tag means "unclassified", which is a
/// legitimate answer (generic states fall outside the listed families).
struct EntanglementClass {
  std::optional<ClassTag> tag;
  /// Which sub-pattern matched, e.g. "J2" for a B-AC biseparable state.
  std::string variant;

  bool classified() const { return tag.has_value(); }
  std::string name() const;
};

/// Tests the class conditions in the order c1, c2a, c2b, c3a, c3b, c4a, c4b,
/// c4c, c4d and returns the first match. Every equality (and every "= 0") is
/// read as |lhs - rhs| <= tol. W-type classes additionally need J4 <= tol and
/// C_GME > tol; GHZ-type classes need J4 > tol. Without J5 the answer is
/// "unclassified" with variant "J5 unavailable".
EntanglementClass classify_3q(const InvariantSet& j, double tol = kDefaultClassTolerance);

/// Random canonical state of a three-qubit class. Coefficients on the class's
/// zero pattern come from the square root of a flat Dirichlet draw (c4d
/// solves for l4); the draw is kept only if it classifies back to `tag` both
/// at the default tolerance and at a 100x looser one. Throws SamplerError
/// after 1e5 rejected draws and DomainError for four-qubit tags.
CanonicalState sample_class_state(ClassTag tag, RandomStream& rng);

/// GHZ4, Cl4, X4, W4 and B2 = Phi (x) Phi with Phi = (|00> + |11>)/sqrt 2.
PureState named_four_qubit_state(ClassTag tag);

}  // namespace qstfid
