#include <string>

#include "qstfid/classes.hpp"
#include "qstfid/cli.hpp"
#include "qstfid/json_io.hpp"

namespace qstfid::cli {

std::string run_classify(const CanonicalState& state, double tol) {
  const InvariantSet j = invariants_from_canonical(state);
  const EntanglementClass cls = classify_3q(j, tol);
  const MeasureSet m = measures_from_state(canonical_to_state(state));

  JsonWriter w;
  w.begin_object();
  w.key("J").begin_array(true).value(j.j1).value(j.j2).value(j.j3).value(j.j4).value(j.j5.value_or(0.0)).end_array();
  w.key("class").value(cls.name());
  w.key("variant").value(cls.variant);
  w.key("measures").begin_object();
  w.key("C_AB").value(m.c_ab);
  w.key("C_AC").value(m.c_ac);
  w.key("C_BC").value(m.c_bc);
  w.key("tau3_sq").value(m.tau3_sq);
  w.key("C_GME").value(std::min(1.0, gme_concurrence(j)));
  w.end_object();
  w.end_object();
  return w.str() + "\n";
}

ChannelResult run_channel(const PureState& psi, const std::vector<TransitionAmplitude>& fs) {
  const auto n = static_cast<std::size_t>(psi.n_qubits());
  if (fs.size() != 1 && fs.size() != n) {
    throw UsageError("got " + std::to_string(fs.size()) + " transition amplitudes for a " + std::to_string(n) +
                     "-qubit state (give 1 or " + std::to_string(n) + ")");
  }
  const std::vector<TransitionAmplitude> all = fs.size() == n ? fs : std::vector<TransitionAmplitude>(n, fs.front());
  DensityMatrix rho = apply_parallel_channels(density_from_pure(psi), all);
  const double fid = fidelity(psi, rho);
  return {std::move(rho), fid};
}

std::string channel_result_json(const PureState& psi, const std::vector<TransitionAmplitude>& fs,
                                const ChannelResult& result) {
  JsonWriter w;
  w.begin_object();
  w.key("n_qubits").value(psi.n_qubits());
  w.key("f").begin_array(true);
  for (const auto& f : fs) w.value(f.value());
  w.end_array();
  w.key("fidelity").value(result.fidelity);
  w.key("rho");
  write_density_json(w, result.rho);
  w.end_object();
  return w.str() + "\n";
}

}  // namespace qstfid::cli
