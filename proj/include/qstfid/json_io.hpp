#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qstfid/channel.hpp"
#include "qstfid/entanglement.hpp"
#include "qstfid/qstate.hpp"

namespace qstfid {

/// Locale-independent rendering with 17 significant digits; parsing the text
/// gives back the same double. Non-finite values become "null".
std::string format_double(double x);

/// Streaming JSON writer with two-space indentation. Commas and nesting are
/// tracked internally; misuse (a value where a key is due) is not diagnosed.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  /// inline_items keeps the elements on one line (scalars only).
  JsonWriter& begin_array(bool inline_items = false);
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double x);
  JsonWriter& value(std::int64_t x);
  JsonWriter& value(std::uint64_t x);
  JsonWriter& value(int x) { return value(static_cast<std::int64_t>(x)); }
  JsonWriter& value(bool b);
  JsonWriter& value(std::string_view s);
  JsonWriter& value(const char* s) { return value(std::string_view(s)); }
  JsonWriter& null();
  /// [re, im] on one line.
  JsonWriter& value(Complex z);

  const std::string& str() const { return out_; }

 private:
  struct Level {
    bool is_object;
    bool empty = true;
    bool inline_items = false;
  };

  void before_value();
  void newline_indent();
  void raw(std::string_view s) { out_.append(s); }

  std::string out_;
  std::vector<Level> stack_;
  bool after_key_ = false;
};

std::string quote_json(std::string_view s);

/// {"n_qubits": k, "amplitudes": [[re, im], ...]}. Throws ParseError on
/// malformed JSON or fields; normalisation and shape rules of
/// make_pure_state still apply (ShapeError / DegenerateInputError).
PureState parse_state_json(std::string_view text);
std::string state_to_json(const PureState& psi);

/// {"N": int, "J": [...], "h": [...]}; "h" may be omitted (all zero).
ChainSpec parse_chain_json(std::string_view text);

/// {"lambda": [l0, l1, l2, l3, l4], "phi": x}; "phi" may be omitted (0).
CanonicalState parse_canonical_json(std::string_view text);

/// Row-major [[re, im], ...] rows inside {"n_qubits": k, "rho": [...]}.
void write_density_json(JsonWriter& w, const DensityMatrix& rho);

/// Throw IoError when the file cannot be read or written.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace qstfid
