#include "qstfid/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qstfid/errors.hpp"
#include "qstfid/kernels/kernels.hpp"

namespace qstfid {
namespace {

constexpr double kEdgeSlack = 1e-12;

double checked_f1(double f1) {
  return SingleQubitAvgFidelity::make(f1).value();
}

double r2(double f1) { return (f1 - 0.5) * (1.0 - f1); }

void check_unit(double x, const char* what) {
  if (!(x >= -kEdgeSlack && x <= 1.0 + kEdgeSlack)) throw DomainError(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

SingleQubitAvgFidelity SingleQubitAvgFidelity::make(double value) {
  if (!(value >= 0.5 - kEdgeSlack && value <= 1.0 + kEdgeSlack)) {
    throw DomainError("single-qubit average fidelity " + std::to_string(value) + " is outside [1/2, 1]");
  }
  return SingleQubitAvgFidelity(std::clamp(value, 0.5, 1.0));
}

std::string_view to_string(ClassTag tag) {
  switch (tag) {
    case ClassTag::kC1: return "c1";
    case ClassTag::kC2a: return "c2a";
    case ClassTag::kC2b: return "c2b";
    case ClassTag::kC3a: return "c3a";
    case ClassTag::kC3b: return "c3b";
    case ClassTag::kC4a: return "c4a";
    case ClassTag::kC4b: return "c4b";
    case ClassTag::kC4c: return "c4c";
    case ClassTag::kC4d: return "c4d";
    case ClassTag::kGhz4: return "GHZ4";
    case ClassTag::kCl4: return "Cl4";
    case ClassTag::kX4: return "X4";
    case ClassTag::kB2: return "B2";
    case ClassTag::kW4: return "W4";
  }
  return "?";
}

std::optional<ClassTag> parse_class_tag(std::string_view name) {
  for (ClassTag t : kThreeQubitTags) {
    if (to_string(t) == name) return t;
  }
  for (ClassTag t : kFourQubitTags) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

bool is_three_qubit(ClassTag tag) {
  return std::find(kThreeQubitTags.begin(), kThreeQubitTags.end(), tag) != kThreeQubitTags.end();
}

double fidelity(const PureState& psi, const DensityMatrix& rho) {
  if (psi.dimension() != rho.dimension()) throw ShapeError("fidelity: state and density matrix sizes differ");
  return std::clamp(kernels::expectation(psi.amplitudes(), rho.entries()), 0.0, 1.0);
}

double avg_fidelity_single(TransitionAmplitude f) {
  return 1.0 / 3.0 + std::norm(1.0 + f.value()) / 6.0;
}

double avg_fidelity_haar_closed(int n, TransitionAmplitude f) {
  if (n < 1) throw DomainError("qubit count must be positive");
  const double d = std::ldexp(1.0, n);
  return 1.0 / (d + 1.0) + std::pow(std::norm(1.0 + f.value()), n) / (d * (d + 1.0));
}

std::string_view to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::kR2: return "R2";
    case ReductionKind::kR3: return "R3";
    case ReductionKind::kR4a: return "R4a";
    case ReductionKind::kR4b: return "R4b";
  }
  return "?";
}

std::optional<ReductionKind> parse_reduction_kind(std::string_view name) {
  for (ReductionKind k : {ReductionKind::kR2, ReductionKind::kR3, ReductionKind::kR4a, ReductionKind::kR4b}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

double reduction_factor(ReductionKind kind, double f1) {
  const double x = checked_f1(f1);
  switch (kind) {
    case ReductionKind::kR2: return r2(x);
    case ReductionKind::kR3: return x * r2(x);
    case ReductionKind::kR4a: return x * r2(x) * (1.0 - 3.0 * x + 4.0 * x * x);
    case ReductionKind::kR4b: return x * x * r2(x);
  }
  return 0.0;
}

Extremum golden_section_max(const std::function<double(double)>& fn, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, fn(x)};
}

Extremum reduction_factor_max(ReductionKind kind) {
  return golden_section_max([kind](double x) { return reduction_factor(kind, x); }, 0.5, 1.0);
}

double avg_fidelity_2q_fixed_concurrence(double f1, double concurrence) {
  const double x = checked_f1(f1);
  check_unit(concurrence, "concurrence");
  return x * x - 2.0 * r2(x) * concurrence * concurrence;
}

double avg_fidelity_2q_fixed_concurrence(TransitionAmplitude f, double concurrence) {
  // No range check on F1: the expression is the exact local-unitary average
  // for every phase, including those that push F1 below 1/2.
  check_unit(concurrence, "concurrence");
  const double x = avg_fidelity_single(f);
  return x * x - 2.0 * r2(x) * concurrence * concurrence;
}

double avg_fidelity_3q_fixed_invariants(double f1, const InvariantSet& j) {
  const double x = checked_f1(f1);
  for (double v : {j.j1, j.j2, j.j3, j.j4}) {
    if (!(v >= -kEdgeSlack && v <= 0.25 + kEdgeSlack)) throw DomainError("J1..J4 must lie in [0, 1/4]");
  }
  return x * x * x - 8.0 * x * r2(x) * (j.j1 + j.j2 + j.j3 + 1.5 * j.j4);
}

double class_avg_coefficient(ClassTag tag) {
  switch (tag) {
    case ClassTag::kC1: return 0.0;
    case ClassTag::kC2a: return 1.0 / 3.0;
    case ClassTag::kC2b: return 1.0;
    case ClassTag::kC3a: return 1.0;
    case ClassTag::kC3b: return 4.0 / 3.0;
    case ClassTag::kC4a: return 1.0;
    case ClassTag::kC4b: return 5.0 / 3.0;
    case ClassTag::kC4c: return 2.0;
    case ClassTag::kC4d: return 2.0;
    default: break;
  }
  throw DomainError("'" + std::string(to_string(tag)) + "' is not a three-qubit class");
}

double class_avg_fidelity(ClassTag tag, double f1) {
  const double c = class_avg_coefficient(tag);
  const double x = checked_f1(f1);
  return x * x * x - c * reduction_factor(ReductionKind::kR3, x);
}

ClassMeasures ClassMeasures::from(const MeasureSet& m) {
  return {m.c_bc * m.c_bc, m.c_ac * m.c_ac, m.c_ab * m.c_ab, m.tau3_sq};
}

double entanglement_weight(ClassTag tag, const ClassMeasures& m) {
  const double pairs = m.c_bc_sq + m.c_ac_sq + m.c_ab_sq;
  switch (tag) {
    case ClassTag::kC1: return 0.0;
    case ClassTag::kC2a: return 2.0 * pairs;
    case ClassTag::kC2b: return 3.0 * m.tau3_sq;
    case ClassTag::kC3a:
    case ClassTag::kC4a: return 2.0 * pairs;
    case ClassTag::kC3b:
    case ClassTag::kC4b:
    case ClassTag::kC4c:
    case ClassTag::kC4d: return 2.0 * pairs + 3.0 * m.tau3_sq;
    default: break;
  }
  throw DomainError("'" + std::string(to_string(tag)) + "' is not a three-qubit class");
}

double class_fixed_entanglement_fidelity(ClassTag tag, double f1, const ClassMeasures& m) {
  for (double v : {m.c_bc_sq, m.c_ac_sq, m.c_ab_sq, m.tau3_sq}) check_unit(v, "squared entanglement measure");
  const double x = checked_f1(f1);
  return x * x * x - reduction_factor(ReductionKind::kR3, x) * entanglement_weight(tag, m);
}

std::string_view to_string(FourQubitReading reading) {
  return reading == FourQubitReading::kPrinted ? "printed" : "local_unitary";
}

double four_qubit_avg_fidelity(ClassTag tag, double f1, FourQubitReading reading) {
  const double x = checked_f1(f1);
  const double x4 = x * x * x * x;
  switch (tag) {
    case ClassTag::kGhz4:
    case ClassTag::kB2:
      if (reading == FourQubitReading::kPrinted) return x4 - 2.0 * reduction_factor(ReductionKind::kR4a, x);
      return x4 - 2.0 * r2(x) * (1.0 - 3.0 * x + 4.0 * x * x);
    case ClassTag::kCl4:
    case ClassTag::kX4: return x4 - 4.0 * reduction_factor(ReductionKind::kR4b, x);
    case ClassTag::kW4: return x4 - 3.0 * reduction_factor(ReductionKind::kR4b, x);
    default: break;
  }
  throw DomainError("'" + std::string(to_string(tag)) + "' is not a four-qubit state name");
}

double local_unitary_avg_fidelity(const PureState& psi, double f1) {
  const int n = psi.n_qubits();
  const double alpha = 1.0 - f1;
  const double beta = 2.0 * f1 - 1.0;
  const DensityMatrix rho = density_from_pure(psi);
  const std::size_t subsets = std::size_t{1} << n;
  double total = 0.0;
  for (std::size_t s = 0; s < subsets; ++s) {
    std::vector<int> keep;
    for (int q = 1; q <= n; ++q) {
      if (s & (std::size_t{1} << (q - 1))) keep.push_back(q);
    }
    const auto k = static_cast<int>(keep.size());
    const double p = keep.empty() ? 1.0 : (k == n ? purity(rho) : purity(partial_trace(rho, keep)));
    total += std::pow(alpha, n - k) * std::pow(beta, k) * p;
  }
  return total;
}

}  // namespace qstfid
