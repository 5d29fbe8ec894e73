#include "bqc/gadget.hpp"

namespace bqc {

PureState AncillaSpec::prepared() const {
  PureState st = prepare_a_state(angle);
  if (keys.z) st.apply(GateId::z(0));
  if (keys.x) st.apply(GateId::x(0));
  return st;
}

TeleportResult teleport_a(PureState& state, int data_wire, const AncillaSpec& anc,
                          int data_x_key, Outcomes& out) {
  require(data_wire >= 0 && data_wire < state.num_wires(), Errc::precondition,
          "teleport data wire out of range");
  const int anc_wire = state.num_wires();
  state = state.tensor(anc.prepared());
  state.apply(GateId::cnot(anc_wire, data_wire));
  MeasureResult mr = out.take(state, data_wire);

  TeleportResult r;
  r.outcome = mr.bit;
  r.desired = ((anc.keys.x ^ mr.bit ^ data_x_key) & 1) == 0;
  r.logical_wire = mr.old_to_new[anc_wire];
  r.prob_one = mr.prob_one;
  r.old_to_new = std::move(mr.old_to_new);
  return r;
}

CascadeOutcome run_cascade(PureState& state, int data_wire, Angle8 n,
                           const AncillaSpec& primary, const AncillaSpec& correction,
                           int data_x_key, Outcomes& out, CascadeMode mode, int dummy_wire,
                           std::optional<int> reply_override) {
  require(primary.angle == n, Errc::precondition, "primary ancilla angle mismatch");
  require(correction.angle == n.doubled(), Errc::precondition,
          "correction ancilla angle mismatch");
  require(!reply_override || n.n() == 0, Errc::precondition,
          "reply override is only sound for zero-angle slots");

  const int entry_wires = state.num_wires();
  std::vector<int> wire_map(entry_wires);
  for (int w = 0; w < entry_wires; ++w) wire_map[w] = w;
  auto remap = [&](const std::vector<int>& m) {
    for (int& w : wire_map)
      if (w >= 0) w = m[w];
    if (dummy_wire >= 0) dummy_wire = m[dummy_wire];
  };

  CascadeOutcome co;

  TeleportResult r1 = teleport_a(state, data_wire, primary, data_x_key, out);
  remap(r1.old_to_new);
  co.round1_bit = r1.outcome;
  co.round1_desired = r1.desired;
  co.probs.push_back(r1.prob_one);
  co.frame_delta.x ^= r1.outcome;
  co.frame_delta.z ^= primary.keys.z;
  int logical = r1.logical_wire;
  int x_now = data_x_key ^ r1.outcome;

  const int needed = reply_override ? *reply_override : (r1.desired ? 0 : 1);

  if (needed) {
    TeleportResult r2 = teleport_a(state, logical, correction, x_now, out);
    remap(r2.old_to_new);
    co.round2_bit = r2.outcome;
    co.probs.push_back(r2.prob_one);
    co.frame_delta.x ^= r2.outcome;
    co.frame_delta.z ^= correction.keys.z;
    logical = r2.logical_wire;
    if (!r2.desired) {
      // leftover A(4 theta): Z for odd n, I for even
      co.final_z_needed = n.n() & 1;
      if (mode == CascadeMode::always_consume) {
        co.frame_delta.z ^= co.final_z_needed;
      } else if (co.final_z_needed) {
        // faithful mode: the server is told to run its Z gate
        state.apply(GateId::z(logical));
        co.fold_final_z = false;
      }
    }
  } else if (mode == CascadeMode::always_consume) {
    if (dummy_wire >= 0) {
      // spend the correction ancilla on the dummy qubit; the logical wire is untouched
      TeleportResult rd = teleport_a(state, dummy_wire, correction, 0, out);
      const int spent_dummy = rd.logical_wire;
      remap(rd.old_to_new);
      logical = rd.old_to_new[logical];
      dummy_wire = spent_dummy;
      co.consumed_bit = rd.outcome;
      co.probs.push_back(rd.prob_one);
    } else {
      // no dummy available: consume the ancilla by measuring it directly
      const int anc_wire = state.num_wires();
      state = state.tensor(correction.prepared());
      MeasureResult mr = out.take(state, anc_wire);
      co.consumed_bit = mr.bit;
      co.probs.push_back(mr.prob_one);
    }
  }

  co.logical_wire = logical;
  co.dummy_wire = dummy_wire;
  co.fold_final_z = (mode == CascadeMode::always_consume);
  return co;
}

void discharge_s_correction(PureState& state, KeyFrame& frame, int wire, Outcomes& out,
                            Rng& key_rng, CascadeMode mode) {
  const int s = frame.s_pending(wire);
  const Angle8 n(2 * s);
  const AncillaSpec primary = AncillaSpec::primary(n, key_rng);
  const AncillaSpec correction = AncillaSpec::correction(n, key_rng);

  const int entry_wires = state.num_wires();
  CascadeOutcome co =
      run_cascade(state, wire, n, primary, correction, frame.key(wire).x, out, mode);
  require(state.num_wires() == entry_wires, Errc::precondition,
          "cascade should conserve the wire count here");

  // Keys follow the relocated wires: the untouched originals keep their
  // relative order at the lowest indices, the logical qubit lands on
  // co.logical_wire.
  KeyFrame next(entry_wires);
  int pos = 0;
  for (int w = 0; w < entry_wires; ++w) {
    if (w == wire) continue;
    next.key(pos) = frame.key(w);
    next.s_pending(pos) = frame.s_pending(w);
    ++pos;
  }
  KeyBits k = frame.key(wire);
  k.x ^= co.frame_delta.x;
  k.z ^= co.frame_delta.z;
  k.z ^= s;  // S * S = Z settles the pending correction
  next.key(co.logical_wire) = k;
  next.s_pending(co.logical_wire) = 0;
  frame = next;
}

}  // namespace bqc
