#pragma once

// Library side of the qstfidlab command-line tool. The executable only parses
// flags and maps exceptions to exit codes; everything testable lives here.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qstfid/channel.hpp"
#include "qstfid/entanglement.hpp"
#include "qstfid/fidelity.hpp"
#include "qstfid/qstate.hpp"

namespace qstfid::cli {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitIo = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// start:stop:steps, steps >= 2, endpoints included exactly.
struct Grid {
  double start = 0.5;
  double stop = 1.0;
  int steps = 501;

  static Grid parse(std::string_view text);
  double at(int k) const;
};

/// Comma-separated numbers ("0.3,0.6"). Throws UsageError.
std::vector<double> parse_number_list(std::string_view text);

// ---------------------------------------------------------------- sweep

struct SweepSpec {
  /// R2, R3, R4a, R4b, class_avg, four_qubit or haar.
  std::string quantity = "R2";
  /// Restricts class_avg / four_qubit to one column.
  std::optional<ClassTag> tag;
  /// Qubit count for haar.
  int n = 2;
  Grid f1{};
  /// |f| grid and phase for haar.
  Grid f_abs{0.0, 1.0, 101};
  double f_phase = 0.0;
};

struct SweepTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Throws UsageError for unknown quantities or grids outside the domain.
SweepTable run_sweep(const SweepSpec& spec);
/// Header row then one row per grid point; '.' decimal point, LF endings.
std::string render_csv(const SweepTable& table);
std::string render_json(const SweepTable& table);

// ---------------------------------------------------------------- verify

struct CheckRecord {
  std::string name;
  double closed_form = 0.0;
  double estimate = 0.0;
  double std_error = 0.0;
  /// |estimate - closed_form| / std_error; empty when std_error is 0.
  std::optional<double> sigma_distance;
  bool pass = false;
  /// Free-form context (which reading, which partner estimate, ...).
  std::string note;
};

struct Finding {
  std::string name;
  std::string statement;
  std::vector<CheckRecord> evidence;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  std::vector<Finding> findings;

  bool all_pass() const;
};

struct VerifyOptions {
  /// two_qubit, three_qubit, four_qubit, haar, invariants or all.
  std::string suite = "all";
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned workers = 0;
};

/// Agreement rule: |estimate - closed_form| <= 4 std_error (+1e-12 so that
/// zero-variance estimates of exact values pass).
CheckRecord make_check(std::string name, double closed_form, double estimate, double std_error);

/// Per-check seed: base seed plus the FNV-1a hash of the check name.
std::uint64_t check_seed(std::uint64_t base, std::string_view name);

/// Throws UsageError for an unknown suite or samples < 100.
VerifyReport run_verify(const VerifyOptions& opts);
/// Deterministic JSON: depends only on suite, samples and seed.
std::string report_to_json(const VerifyReport& report);

// ---------------------------------------------------------------- classify

/// {"J": [...], "class": ..., "variant": ..., "measures": {...}}.
std::string run_classify(const CanonicalState& state, double tol);

// ---------------------------------------------------------------- channel

struct ChannelResult {
  DensityMatrix rho;
  double fidelity;
};

/// fs holds one amplitude per qubit, or a single one used on every qubit.
/// Throws UsageError on any other count.
ChannelResult run_channel(const PureState& psi, const std::vector<TransitionAmplitude>& fs);
std::string channel_result_json(const PureState& psi, const std::vector<TransitionAmplitude>& fs,
                                const ChannelResult& result);

}  // namespace qstfid::cli
