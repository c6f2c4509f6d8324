#include "qstfid/json_io.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qstfid/errors.hpp"

namespace qstfid {

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) return std::signbit(x) ? "-0.0" : "0.0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  std::string s(buf, res.ptr);
  // Keep a decimal point or exponent so readers treat the token as a float.
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string quote_json(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char esc[8];
          std::snprintf(esc, sizeof esc, "\\u%04x", static_cast<unsigned>(ch));
          out += esc;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
  return out;
}

void JsonWriter::newline_indent() {
  out_ += '\n';
  out_.append(2 * stack_.size(), ' ');
}

void JsonWriter::before_value() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (stack_.empty()) return;
  Level& top = stack_.back();
  if (!top.empty) raw(",");
  if (top.inline_items) {
    if (!top.empty) raw(" ");
  } else {
    newline_indent();
  }
  top.empty = false;
}

JsonWriter& JsonWriter::begin_object() {
  before_value();
  raw("{");
  stack_.push_back({true});
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  const bool empty = stack_.back().empty;
  stack_.pop_back();
  if (!empty) newline_indent();
  raw("}");
  return *this;
}

JsonWriter& JsonWriter::begin_array(bool inline_items) {
  before_value();
  raw("[");
  stack_.push_back({false, true, inline_items});
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  const Level top = stack_.back();
  stack_.pop_back();
  if (!top.empty && !top.inline_items) newline_indent();
  raw("]");
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
  Level& top = stack_.back();
  if (!top.empty) raw(",");
  newline_indent();
  top.empty = false;
  raw(quote_json(k));
  raw(": ");
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double x) {
  before_value();
  raw(format_double(x));
  return *this;
}

JsonWriter& JsonWriter::value(std::int64_t x) {
  before_value();
  raw(std::to_string(x));
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t x) {
  before_value();
  raw(std::to_string(x));
  return *this;
}

JsonWriter& JsonWriter::value(bool b) {
  before_value();
  raw(b ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view s) {
  before_value();
  raw(quote_json(s));
  return *this;
}

JsonWriter& JsonWriter::null() {
  before_value();
  raw("null");
  return *this;
}

JsonWriter& JsonWriter::value(Complex z) {
  before_value();
  raw("[" + format_double(z.real()) + ", " + format_double(z.imag()) + "]");
  return *this;
}

namespace {

nlohmann::json parse_document(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

double number_field(const nlohmann::json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string(what) + " must be a number");
  return v.get<double>();
}

std::vector<double> number_list(const nlohmann::json& doc, const char* field) {
  if (!doc.contains(field) || !doc[field].is_array()) {
    throw ParseError(std::string("field \"") + field + "\" must be an array");
  }
  std::vector<double> out;
  for (const auto& v : doc[field]) out.push_back(number_field(v, field));
  return out;
}

}  // namespace

PureState parse_state_json(std::string_view text) {
  const nlohmann::json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("state file must hold a JSON object");
  if (!doc.contains("amplitudes") || !doc["amplitudes"].is_array()) {
    throw ParseError("field \"amplitudes\" must be an array of [re, im] pairs");
  }
  std::vector<Complex> amps;
  for (const auto& pair : doc["amplitudes"]) {
    if (pair.is_number()) {
      amps.emplace_back(pair.get<double>(), 0.0);
      continue;
    }
    if (!pair.is_array() || pair.size() != 2) throw ParseError("each amplitude must be [re, im]");
    amps.emplace_back(number_field(pair[0], "amplitude"), number_field(pair[1], "amplitude"));
  }
  PureState psi = make_pure_state(std::move(amps));
  if (doc.contains("n_qubits")) {
    const auto& n = doc["n_qubits"];
    if (!n.is_number_integer() || n.get<int>() != psi.n_qubits()) {
      throw ShapeError("\"n_qubits\" does not match the number of amplitudes");
    }
  }
  return psi;
}

std::string state_to_json(const PureState& psi) {
  JsonWriter w;
  w.begin_object().key("n_qubits").value(psi.n_qubits()).key("amplitudes").begin_array();
  for (const Complex& a : psi.amplitudes()) w.value(a);
  w.end_array().end_object();
  return w.str() + "\n";
}

ChainSpec parse_chain_json(std::string_view text) {
  const nlohmann::json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("chain file must hold a JSON object");
  if (!doc.contains("N") || !doc["N"].is_number_integer()) throw ParseError("field \"N\" must be an integer");
  ChainSpec spec;
  spec.length = doc["N"].get<int>();
  spec.couplings = number_list(doc, "J");
  if (doc.contains("h")) {
    spec.fields = number_list(doc, "h");
  } else {
    spec.fields.assign(static_cast<std::size_t>(std::max(spec.length, 0)), 0.0);
  }
  spec.validate();
  return spec;
}

CanonicalState parse_canonical_json(std::string_view text) {
  const nlohmann::json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("canonical file must hold a JSON object");
  const std::vector<double> lambda = number_list(doc, "lambda");
  if (lambda.size() != 5) throw ParseError("\"lambda\" needs exactly five entries");
  const double phi = doc.contains("phi") ? number_field(doc["phi"], "phi") : 0.0;
  return CanonicalState::make({lambda[0], lambda[1], lambda[2], lambda[3], lambda[4]}, phi);
}

void write_density_json(JsonWriter& w, const DensityMatrix& rho) {
  const std::size_t d = rho.dimension();
  w.begin_object().key("n_qubits").value(rho.n_qubits()).key("rho").begin_array();
  for (std::size_t i = 0; i < d; ++i) {
    w.begin_array(true);
    for (std::size_t j = 0; j < d; ++j) w.value(rho(i, j));
    w.end_array();
  }
  w.end_array().end_object();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace qstfid
