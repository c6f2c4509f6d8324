#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <string>

#include "qstfid/cli.hpp"
#include "qstfid/errors.hpp"
#include "qstfid/json_io.hpp"

namespace qstfid::cli {
namespace {

double parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw UsageError("'" + std::string(text) + "' is not a number");
  }
  return v;
}

void check_grid_range(const Grid& g, double lo, double hi, const char* what) {
  constexpr double slack = 1e-12;
  for (double x : {g.start, g.stop}) {
    if (!(x >= lo - slack && x <= hi + slack)) {
      throw UsageError(std::string(what) + " grid must stay inside [" + format_double(lo) + ", " +
                       format_double(hi) + "]");
    }
  }
}

}  // namespace

Grid Grid::parse(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw UsageError("grid must look like start:stop:steps");
  Grid g;
  g.start = parse_number(text.substr(0, c1));
  g.stop = parse_number(text.substr(c1 + 1, c2 - c1 - 1));
  const double steps = parse_number(text.substr(c2 + 1));
  if (steps != static_cast<double>(static_cast<int>(steps)) || steps < 2) {
    throw UsageError("grid steps must be an integer >= 2");
  }
  g.steps = static_cast<int>(steps);
  if (!(g.stop > g.start)) throw UsageError("grid stop must exceed start");
  return g;
}

double Grid::at(int k) const {
  if (k == steps - 1) return stop;
  return start + (stop - start) * static_cast<double>(k) / static_cast<double>(steps - 1);
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    out.push_back(parse_number(text.substr(pos, comma == std::string_view::npos ? comma : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

SweepTable run_sweep(const SweepSpec& spec) {
  SweepTable table;
  if (spec.f1.steps < 2 || spec.f_abs.steps < 2) throw UsageError("grid steps must be >= 2");

  if (spec.quantity == "haar") {
    if (spec.n < 1 || spec.n > max_qubits()) throw UsageError("--n must lie in [1, " + std::to_string(max_qubits()) + "]");
    check_grid_range(spec.f_abs, 0.0, 1.0, "|f|");
    table.columns = {"f_abs", "f_phase", "F1", "haar", "F1_pow_n"};
    for (int k = 0; k < spec.f_abs.steps; ++k) {
      const auto f = TransitionAmplitude::polar(std::min(1.0, spec.f_abs.at(k)), spec.f_phase);
      const double f1 = avg_fidelity_single(f);
      table.rows.push_back({f.magnitude(), f.phase(), f1, avg_fidelity_haar_closed(spec.n, f), std::pow(f1, spec.n)});
    }
    return table;
  }

  check_grid_range(spec.f1, 0.5, 1.0, "F1");
  std::vector<std::function<double(double)>> columns;
  table.columns = {"F1"};
  if (const auto kind = parse_reduction_kind(spec.quantity)) {
    table.columns.emplace_back(spec.quantity);
    columns.emplace_back([k = *kind](double x) { return reduction_factor(k, x); });
  } else if (spec.quantity == "class_avg") {
    for (ClassTag t : kThreeQubitTags) {
      if (spec.tag && *spec.tag != t) continue;
      table.columns.emplace_back(to_string(t));
      columns.emplace_back([t](double x) { return class_avg_fidelity(t, x); });
    }
    if (columns.empty()) throw UsageError("--tag must name a three-qubit class for class_avg");
  } else if (spec.quantity == "four_qubit") {
    for (ClassTag t : kFourQubitTags) {
      if (spec.tag && *spec.tag != t) continue;
      table.columns.emplace_back(to_string(t));
      columns.emplace_back([t](double x) { return four_qubit_avg_fidelity(t, x); });
    }
    if (columns.empty()) throw UsageError("--tag must name a four-qubit state for four_qubit");
    if (!spec.tag || *spec.tag == ClassTag::kGhz4 || *spec.tag == ClassTag::kB2) {
      table.columns.emplace_back("GHZ4_B2_printed");
      columns.emplace_back(
          [](double x) { return four_qubit_avg_fidelity(ClassTag::kGhz4, x, FourQubitReading::kPrinted); });
    }
  } else {
    throw UsageError("unknown quantity '" + spec.quantity + "' (R2, R3, R4a, R4b, class_avg, four_qubit, haar)");
  }

  for (int k = 0; k < spec.f1.steps; ++k) {
    const double x = std::clamp(spec.f1.at(k), 0.5, 1.0);
    std::vector<double> row{x};
    for (const auto& fn : columns) row.push_back(fn(x));
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string render_csv(const SweepTable& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_double(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const SweepTable& table) {
  JsonWriter w;
  w.begin_object().key("columns").begin_array();
  for (const auto& c : table.columns) w.value(c);
  w.end_array().key("rows").begin_array();
  for (const auto& row : table.rows) {
    w.begin_array(true);
    for (double v : row) w.value(v);
    w.end_array();
  }
  w.end_array().end_object();
  return w.str() + "\n";
}

}  // namespace qstfid::cli
