#pragma once

#include <array>
#include <cstdint>

#include "qstfid/qstate.hpp"

namespace qstfid {

/// Philox4x32-10 counter-based block function.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key);
};

/// Stream tags keep different consumers of the same (seed, index) apart.
enum class StreamDomain : std::uint32_t {
  kLocalUnitary = 1,
  kHaarState = 2,
  kInvariants = 3,
  kClassSampler = 4,
  kTest = 0xfffffff0u,
};

/// Deterministic random stream for one (seed, index, domain) triple. The
/// Philox counter is (index lo, index hi, domain, block number) under
/// key = seed, so streams never overlap and any sample can be regenerated
/// on its own.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t index, StreamDomain domain = StreamDomain::kTest);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  /// Standard normal (Box-Muller; the second variate is cached).
  double normal();
  /// Re and Im independent standard normals.
  Complex complex_normal();

 private:
  void refill();

  Philox4x32::Key key_;
  Philox4x32::Counter ctr_;
  Philox4x32::Counter buf_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qstfid
