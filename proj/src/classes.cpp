#include "qstfid/classes.hpp"

#include <cmath>
#include <initializer_list>
#include <numbers>
#include <vector>

#include "qstfid/errors.hpp"

namespace qstfid {
namespace {

constexpr int kMaxDraws = 100000;
constexpr double kRoundTripLoosening = 100.0;

struct Conditions {
  const InvariantSet& j;
  double j5;
  double tol;

  bool zero(double x) const { return std::abs(x) <= tol; }
  double sqrt_triple() const { return std::sqrt(std::max(0.0, j.j1 * j.j2 * j.j3)); }
  double pair_sum() const { return j.j1 * j.j2 + j.j1 * j.j3 + j.j2 * j.j3; }
};

EntanglementClass make(ClassTag tag, std::string variant = {}) { return {tag, std::move(variant)}; }

// Draws sqrt of a flat Dirichlet vector onto the listed coefficient slots.
std::array<double, 5> simplex_draw(RandomStream& rng, std::initializer_list<int> slots) {
  std::array<double, 5> lambda{};
  double total = 0.0;
  for (int s : slots) {
    const double e = -std::log(rng.uniform());
    lambda[static_cast<std::size_t>(s)] = e;
    total += e;
  }
  for (double& l : lambda) l = std::sqrt(l / total);
  return lambda;
}

double uniform_phase(RandomStream& rng) { return std::numbers::pi * rng.uniform(); }

std::size_t pick(RandomStream& rng, std::size_t count) {
  return std::min(count - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(count)));
}

CanonicalState normalised(std::array<double, 5> lambda, double phi) {
  double norm_sq = 0.0;
  for (double l : lambda) norm_sq += l * l;
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& l : lambda) l *= inv;
  return CanonicalState::make(lambda, phi);
}

// Class 4d lives on phi in {0, pi} with every coefficient positive. Its
// defining polynomial vanishes exactly when
//   l4 (l0^2 + l1^2 - l2^2 - l3^2 - l4^2) = +-2 l1 l2 l3
// (+ for phi = 0, - for phi = pi), a cubic in l4 solved here by bisection.
std::optional<CanonicalState> draw_c4d(RandomStream& rng) {
  const auto base = simplex_draw(rng, {0, 1, 2, 3});
  const bool phase_pi = rng.uniform() < 0.5;
  const double a = base[0] * base[0] + base[1] * base[1] - base[2] * base[2] - base[3] * base[3];
  const double c = 2.0 * base[1] * base[2] * base[3];
  const double target = phase_pi ? -c : c;
  auto g = [a, target](double x) { return x * (a - x * x) - target; };

  double lo = 0.0;
  double hi = 0.0;
  if (phase_pi) {
    // g(0) = c > 0 and g decreases without bound past sqrt(a/3).
    lo = std::sqrt(std::max(0.0, a / 3.0));
    hi = lo + 1.0;
    while (g(hi) > 0.0) hi *= 2.0;
  } else {
    // g(0) = -c < 0; a root below the hump exists only if the hump clears c.
    if (a <= 0.0) return std::nullopt;
    hi = std::sqrt(a / 3.0);
    if (g(hi) < 0.0) return std::nullopt;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    ((g(mid) > 0.0) == (g(lo) > 0.0) ? lo : hi) = mid;
  }
  std::array<double, 5> lambda = base;
  lambda[4] = 0.5 * (lo + hi);
  if (!(lambda[4] > 0.0)) return std::nullopt;
  return normalised(lambda, phase_pi ? std::numbers::pi : 0.0);
}

CanonicalState draw_candidate(ClassTag tag, RandomStream& rng) {
  switch (tag) {
    case ClassTag::kC1:
      if (rng.uniform() < 0.5) {
        std::array<double, 5> lambda{};
        lambda[pick(rng, 5)] = 1.0;
        return CanonicalState::make(lambda, 0.0);
      } else {
        // A (x) (BC product) with A in |1>: amplitudes on |1 bc>.
        const double a = 0.5 * std::numbers::pi * rng.uniform();
        const double b = 0.5 * std::numbers::pi * rng.uniform();
        return normalised({0.0, std::cos(a) * std::cos(b), std::cos(a) * std::sin(b), std::sin(a) * std::cos(b),
                           std::sin(a) * std::sin(b)},
                          0.0);
      }
    case ClassTag::kC2a:
      switch (pick(rng, 3)) {
        case 0: return normalised(simplex_draw(rng, {1, 2, 3, 4}), uniform_phase(rng));
        case 1: return normalised(simplex_draw(rng, {0, 2}), 0.0);
        default: return normalised(simplex_draw(rng, {0, 3}), 0.0);
      }
    case ClassTag::kC2b: return normalised(simplex_draw(rng, {0, 4}), 0.0);
    case ClassTag::kC3a: return normalised(simplex_draw(rng, {0, 2, 3}), 0.0);
    case ClassTag::kC3b:
      switch (pick(rng, 3)) {
        case 0: return normalised(simplex_draw(rng, {0, 1, 4}), uniform_phase(rng));
        case 1: return normalised(simplex_draw(rng, {0, 2, 4}), 0.0);
        default: return normalised(simplex_draw(rng, {0, 3, 4}), 0.0);
      }
    case ClassTag::kC4a: return normalised(simplex_draw(rng, {0, 1, 2, 3}), uniform_phase(rng));
    case ClassTag::kC4b:
      if (rng.uniform() < 0.5) return normalised(simplex_draw(rng, {0, 1, 2, 4}), uniform_phase(rng));
      return normalised(simplex_draw(rng, {0, 1, 3, 4}), uniform_phase(rng));
    case ClassTag::kC4c: return normalised(simplex_draw(rng, {0, 2, 3, 4}), 0.0);
    default: break;
  }
  throw DomainError("'" + std::string(to_string(tag)) + "' is not a three-qubit class");
}

}  // namespace

std::string EntanglementClass::name() const {
  return tag ? std::string(to_string(*tag)) : std::string("unclassified");
}

EntanglementClass classify_3q(const InvariantSet& j, double tol) {
  if (!(tol > 0.0)) throw DomainError("classification tolerance must be positive");
  if (!j.j5) return {std::nullopt, "J5 unavailable"};
  const Conditions k{j, *j.j5, tol};
  const bool z1 = k.zero(j.j1);
  const bool z2 = k.zero(j.j2);
  const bool z3 = k.zero(j.j3);
  const bool z4 = k.zero(j.j4);
  const bool z5 = k.zero(k.j5);
  const int nonzero_pairs = !z1 + !z2 + !z3;
  const double s = k.sqrt_triple();
  const double gme = gme_concurrence(j);

  if (z1 && z2 && z3 && z4 && z5) return make(ClassTag::kC1);
  if (z4 && z5 && nonzero_pairs == 1) return make(ClassTag::kC2a, !z1 ? "J1" : (!z2 ? "J2" : "J3"));
  if (z1 && z2 && z3 && !z4 && z5) return make(ClassTag::kC2b);

  const bool w_type = z4 && gme > tol;
  const bool ghz_type = j.j4 > tol;
  if (w_type && k.zero(k.pair_sum() - s) && k.zero(s - k.j5 / 2.0)) return make(ClassTag::kC3a);
  if (ghz_type && z5 && nonzero_pairs == 1) {
    return make(ClassTag::kC3b, z1 && z2 ? "J1=J2=J5=0" : (z1 && z3 ? "J1=J3=J5=0" : "J2=J3=J5=0"));
  }
  if (w_type && k.zero(s - k.j5 / 2.0)) return make(ClassTag::kC4a);
  if (ghz_type && z5 && (z2 || z3)) return make(ClassTag::kC4b, z2 ? "J2=J5=0" : "J3=J5=0");
  if (ghz_type && k.zero(j.j1 * j.j4 + k.pair_sum() - s) && k.zero(s - k.j5 / 2.0)) return make(ClassTag::kC4c);
  if (ghz_type && k.zero(s - std::abs(k.j5) / 2.0)) {
    const double d = (j.j4 + k.j5) * (j.j4 + k.j5) - 4.0 * (j.j1 + j.j4) * (j.j2 + j.j4) * (j.j3 + j.j4);
    if (k.zero(d)) return make(ClassTag::kC4d);
  }
  return {};
}

CanonicalState sample_class_state(ClassTag tag, RandomStream& rng) {
  if (!is_three_qubit(tag)) throw DomainError("'" + std::string(to_string(tag)) + "' is not a three-qubit class");
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    std::optional<CanonicalState> c;
    if (tag == ClassTag::kC4d) {
      c = draw_c4d(rng);
    } else {
      c = draw_candidate(tag, rng);
    }
    if (!c) continue;
    const InvariantSet j = invariants_from_canonical(*c);
    if (classify_3q(j).tag != tag) continue;
    if (classify_3q(j, kDefaultClassTolerance * kRoundTripLoosening).tag != tag) continue;
    return *c;
  }
  throw SamplerError("no state of class " + std::string(to_string(tag)) + " after " + std::to_string(kMaxDraws) +
                     " draws");
}

PureState named_four_qubit_state(ClassTag tag) {
  std::vector<Complex> a(16);
  switch (tag) {
    case ClassTag::kGhz4:
      a[0b0000] = a[0b1111] = 1.0;
      break;
    case ClassTag::kCl4:
      a[0b0000] = a[0b0111] = a[0b1011] = a[0b1100] = 1.0;
      break;
    case ClassTag::kX4:
      a[0b1111] = std::sqrt(2.0);
      a[0b0001] = a[0b0010] = a[0b0100] = a[0b1000] = 1.0;
      break;
    case ClassTag::kB2: {
      const PureState bell = make_pure_state({1.0, 0.0, 0.0, 1.0});
      return tensor_product(bell, bell);
    }
    case ClassTag::kW4:
      a[0b0001] = a[0b0010] = a[0b0100] = a[0b1000] = 1.0;
      break;
    default:
      throw DomainError("'" + std::string(to_string(tag)) + "' is not a four-qubit state name");
  }
  return make_pure_state(std::move(a));
}

}  // namespace qstfid
