#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string_view>

#include "qstfid/channel.hpp"
#include "qstfid/entanglement.hpp"
#include "qstfid/qstate.hpp"

namespace qstfid {

/// <F1> restricted to its physical range [1/2, 1] (phase-0 amplitudes).
class SingleQubitAvgFidelity {
 public:
  /// Throws DomainError outside [1/2, 1]; values within 1e-12 of an end are
  /// snapped onto it.
  static SingleQubitAvgFidelity make(double value);
  double value() const { return value_; }

 private:
  explicit SingleQubitAvgFidelity(double v) : value_(v) {}
  double value_;
};

enum class ClassTag { kC1, kC2a, kC2b, kC3a, kC3b, kC4a, kC4b, kC4c, kC4d, kGhz4, kCl4, kX4, kB2, kW4 };

inline constexpr std::array<ClassTag, 9> kThreeQubitTags{ClassTag::kC1,  ClassTag::kC2a, ClassTag::kC2b,
                                                         ClassTag::kC3a, ClassTag::kC3b, ClassTag::kC4a,
                                                         ClassTag::kC4b, ClassTag::kC4c, ClassTag::kC4d};
inline constexpr std::array<ClassTag, 5> kFourQubitTags{ClassTag::kGhz4, ClassTag::kCl4, ClassTag::kX4,
                                                        ClassTag::kB2, ClassTag::kW4};

std::string_view to_string(ClassTag tag);
/// Accepts the names printed by to_string ("c4a", "GHZ4", ...).
std::optional<ClassTag> parse_class_tag(std::string_view name);
bool is_three_qubit(ClassTag tag);

/// <psi|rho|psi>, clamped into [0, 1]. Throws ShapeError on a size mismatch.
double fidelity(const PureState& psi, const DensityMatrix& rho);

/// 1/3 + |1+f|^2/6. For phase 0 this is (3 + 2|f| + |f|^2)/6 in [1/2, 1];
/// other phases can go down to 1/3, so the result is a plain number.
double avg_fidelity_single(TransitionAmplitude f);

/// Haar average over n-qubit pure states:
/// 1/(2^n+1) + |1+f|^(2n) / (2^n (2^n+1)). Throws DomainError for n < 1.
double avg_fidelity_haar_closed(int n, TransitionAmplitude f);

enum class ReductionKind { kR2, kR3, kR4a, kR4b };

std::string_view to_string(ReductionKind kind);
std::optional<ReductionKind> parse_reduction_kind(std::string_view name);

/// R2 = (F1-1/2)(1-F1), R3 = F1 R2, R4a = F1 R2 (1-3F1+4F1^2), R4b = F1^2 R2.
/// Throws DomainError for F1 outside [1/2, 1].
double reduction_factor(ReductionKind kind, double f1);

struct Extremum {
  double argmax = 0.0;
  double value = 0.0;
};

/// Golden-section search of `fn` on [lo, hi] (assumed unimodal).
Extremum golden_section_max(const std::function<double(double)>& fn, double lo, double hi, double tol = 1e-12);
/// Maximum of reduction_factor(kind, .) over [1/2, 1].
Extremum reduction_factor_max(ReductionKind kind);

/// F1^2 - 2 R2 C^2. Throws DomainError for C outside [0, 1] or F1 outside
/// [1/2, 1].
double avg_fidelity_2q_fixed_concurrence(double f1, double concurrence);
/// Same expression with F1 = avg_fidelity_single(f); valid for any phase.
double avg_fidelity_2q_fixed_concurrence(TransitionAmplitude f, double concurrence);

/// F1^3 - 8 R3 (J1 + J2 + J3 + 3/2 J4). Each of J1..J4 must lie in [0, 1/4]
/// (1e-12 slack).
double avg_fidelity_3q_fixed_invariants(double f1, const InvariantSet& j);

/// c in <F_class> = F1^3 - c R3. Throws DomainError for four-qubit tags.
double class_avg_coefficient(ClassTag tag);
double class_avg_fidelity(ClassTag tag, double f1);

/// Squared measures read by the per-class fixed-entanglement formulas.
struct ClassMeasures {
  double c_bc_sq = 0.0;
  double c_ac_sq = 0.0;
  double c_ab_sq = 0.0;
  double tau3_sq = 0.0;

  static ClassMeasures from(const MeasureSet& m);
};

/// w in F1^3 - w R3 for the class. Classes whose defining pattern admits
/// several non-zero pairs (c2a, c3b, c4b) sum every pair term, which equals
/// the single printed term on the class.
double entanglement_weight(ClassTag tag, const ClassMeasures& m);
/// F1^3 - R3 entanglement_weight(tag, m). Throws DomainError if any measure
/// lies outside [0, 1].
double class_fixed_entanglement_fidelity(ClassTag tag, double f1, const ClassMeasures& m);

/// How the quartic factor of the GHZ4/B2 formula is read.
///  kLocalUnitary: F1^4 - 2 (F1-1/2)(1-F1)(1-3F1+4F1^2), the exact
///                 local-unitary average of both states.
///  kPrinted:      F1^4 - 2 R4a, keeping the leading F1 of R4a.
/// Cl4, X4 and W4 do not depend on the reading.
enum class FourQubitReading { kLocalUnitary, kPrinted };

std::string_view to_string(FourQubitReading reading);

double four_qubit_avg_fidelity(ClassTag tag, double f1, FourQubitReading reading = FourQubitReading::kLocalUnitary);

/// Exact average of fidelity(U psi, channels(U psi)) over independent Haar U
/// on every qubit, for a channel whose single-qubit average is f1:
///   sum_S (1-F1)^(n-|S|) (2F1-1)^|S| Tr rho_S^2,
/// S ranging over qubit subsets (Tr rho_{} ^2 = 1). Any F1 is accepted, so
/// complex amplitudes are covered via avg_fidelity_single.
double local_unitary_avg_fidelity(const PureState& psi, double f1);

}  // namespace qstfid
