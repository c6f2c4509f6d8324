// qstfidlab: sweep / verify / classify / channel front end.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "qstfid/classes.hpp"
#include "qstfid/cli.hpp"
#include "qstfid/errors.hpp"
#include "qstfid/json_io.hpp"

namespace {

using namespace qstfid;
using namespace qstfid::cli;

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

struct SweepArgs {
  std::string quantity = "R2";
  std::string f1 = "0.5:1.0:501";
  std::string f_abs = "0:1:101";
  double f_phase = 0.0;
  int n = 2;
  std::string tag;
  std::string format = "csv";
  std::string out;
};

int do_sweep(const SweepArgs& a) {
  SweepSpec spec;
  spec.quantity = a.quantity;
  spec.f1 = Grid::parse(a.f1);
  spec.f_abs = Grid::parse(a.f_abs);
  spec.f_phase = a.f_phase;
  spec.n = a.n;
  if (!a.tag.empty()) {
    spec.tag = parse_class_tag(a.tag);
    if (!spec.tag) throw UsageError("unknown tag '" + a.tag + "'");
  }
  const SweepTable table = run_sweep(spec);
  emit(a.format == "json" ? render_json(table) : render_csv(table), a.out);
  return kExitOk;
}

struct VerifyArgs {
  VerifyOptions opts;
  std::string out;
};

int do_verify(const VerifyArgs& a) {
  const VerifyReport report = run_verify(a.opts);
  emit(report_to_json(report), a.out);
  std::size_t failed = 0;
  for (const auto& c : report.checks) failed += c.pass ? 0 : 1;
  std::cerr << "verify " << report.suite << ": " << report.checks.size() - failed << "/" << report.checks.size()
            << " checks pass\n";
  return report.all_pass() ? kExitOk : kExitCheckFailed;
}

struct ClassifyArgs {
  std::string state;
  double tol = kDefaultClassTolerance;
};

int do_classify(const ClassifyArgs& a) {
  const CanonicalState c = parse_canonical_json(read_text_file(a.state));
  std::cout << run_classify(c, a.tol);
  return kExitOk;
}

struct ChannelArgs {
  std::string state;
  std::string f_abs;
  std::string f_phase;
  std::string chain;
  double time = 0.0;
  int sender = 1;
  int receiver = 1;
  std::string out;
};

int do_channel(const ChannelArgs& a) {
  const PureState psi = parse_state_json(read_text_file(a.state));
  std::vector<TransitionAmplitude> fs;
  if (!a.chain.empty()) {
    if (!a.f_abs.empty()) throw UsageError("give either --chain or --f-abs, not both");
    const ChainSpec spec = parse_chain_json(read_text_file(a.chain));
    fs.push_back(chain_transition_amplitude(spec, a.sender, a.receiver, a.time));
  } else {
    if (a.f_abs.empty()) throw UsageError("--f-abs (or --chain) is required");
    const std::vector<double> mags = parse_number_list(a.f_abs);
    std::vector<double> phases = a.f_phase.empty() ? std::vector<double>{0.0} : parse_number_list(a.f_phase);
    if (phases.size() != 1 && phases.size() != mags.size()) {
      throw UsageError("--f-phase needs one value or as many as --f-abs");
    }
    for (std::size_t k = 0; k < mags.size(); ++k) {
      fs.push_back(TransitionAmplitude::polar(mags[k], phases.size() == 1 ? phases[0] : phases[k]));
    }
  }
  const ChannelResult result = run_channel(psi, fs);
  const std::string json = channel_result_json(psi, fs, result);
  if (a.out.empty()) {
    std::cout << json;
  } else {
    write_text_file(a.out, json);
    std::cout << "{\"fidelity\": " << format_double(result.fidelity) << "}\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Average-fidelity laboratory for parallel amplitude-damping state transfer"};
  app.require_subcommand(1);

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "Tabulate closed-form curves on an F1 (or |f|) grid");
  s->add_option("--quantity", sweep.quantity, "R2, R3, R4a, R4b, class_avg, four_qubit or haar")->capture_default_str();
  s->add_option("--f1", sweep.f1, "F1 grid start:stop:steps")->capture_default_str();
  s->add_option("--f-abs", sweep.f_abs, "|f| grid start:stop:steps (haar)")->capture_default_str();
  s->add_option("--f-phase", sweep.f_phase, "phase of f (haar)")->capture_default_str();
  s->add_option("--n", sweep.n, "qubit count (haar)")->capture_default_str();
  s->add_option("--tag", sweep.tag, "single class/state column (class_avg, four_qubit)");
  s->add_option("--format", sweep.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  s->add_option("--out", sweep.out, "output file (default stdout)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Compare closed forms with seeded Monte Carlo estimates");
  v->add_option("--suite", verify.opts.suite, "two_qubit, three_qubit, four_qubit, haar, invariants or all")
      ->capture_default_str();
  v->add_option("--samples", verify.opts.samples, "samples per check (>= 100)")->capture_default_str();
  v->add_option("--seed", verify.opts.seed, "base seed")->capture_default_str();
  v->add_option("--workers", verify.opts.workers, "threads (0 = all cores); results do not depend on it")
      ->capture_default_str();
  v->add_option("--out", verify.out, "report file (default stdout)");

  ClassifyArgs classify;
  auto* c = app.add_subcommand("classify", "Invariants, measures and class of a canonical three-qubit state");
  c->add_option("--state,state", classify.state, "JSON file {\"lambda\": [5 values], \"phi\": x}")->required();
  c->add_option("--tol", classify.tol, "absolute tolerance on each class condition")->capture_default_str();

  ChannelArgs channel;
  auto* ch = app.add_subcommand("channel", "Send a pure state through parallel damping channels");
  ch->add_option("--state", channel.state, "JSON file {\"n_qubits\": k, \"amplitudes\": [[re, im], ...]}")
      ->required();
  ch->add_option("--f-abs", channel.f_abs, "comma-separated |f| per qubit (one value applies to all)");
  ch->add_option("--f-phase", channel.f_phase, "comma-separated phases (default 0)");
  ch->add_option("--chain", channel.chain, "chain file {\"N\": n, \"J\": [...], \"h\": [...]} instead of --f-abs");
  ch->add_option("--time", channel.time, "evolution time for --chain")->capture_default_str();
  ch->add_option("--sender", channel.sender, "sender site for --chain")->capture_default_str();
  ch->add_option("--receiver", channel.receiver, "receiver site for --chain")->capture_default_str();
  ch->add_option("--out", channel.out, "write the output JSON here and print only the fidelity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*s) return do_sweep(sweep);
    if (*v) return do_verify(verify);
    if (*c) return do_classify(classify);
    if (*ch) return do_channel(channel);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    // Bad flags, malformed files and out-of-domain inputs are all usage errors.
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
