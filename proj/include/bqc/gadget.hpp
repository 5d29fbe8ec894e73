#pragma once

#include <optional>
#include <vector>

#include "bqc/angle.hpp"
#include "bqc/frame.hpp"
#include "bqc/rng.hpp"
#include "bqc/state.hpp"

namespace bqc {

// One prepared resource qubit for a teleportation round: X^a Z^b |A_theta>.
// The primary ancilla carries the gate's angle, the correction ancilla twice
// that angle.
struct AncillaSpec {
  enum class Purpose { primary, correction };

  Angle8 angle;
  KeyBits keys;
  Purpose purpose = Purpose::primary;

  static AncillaSpec primary(Angle8 n, Rng& rng) {
    return {n, {rng.bit(), rng.bit()}, Purpose::primary};
  }
  static AncillaSpec correction(Angle8 n, Rng& rng) {
    return {n.doubled(), {rng.bit(), rng.bit()}, Purpose::correction};
  }

  PureState prepared() const;
};

// Measurement outcome source: either sampled from a party's rng, or a forced
// sequence (tests walk every branch by post-selection).
class Outcomes {
 public:
  explicit Outcomes(Rng& rng) : rng_(&rng) {}
  explicit Outcomes(std::vector<int> forced) : forced_(std::move(forced)) {}

  MeasureResult take(PureState& state, int wire) {
    if (rng_) return state.measure(wire, *rng_);
    require(pos_ < forced_.size(), Errc::precondition, "forced outcome sequence exhausted");
    return state.project(wire, forced_[pos_++]);
  }

 private:
  Rng* rng_ = nullptr;
  std::vector<int> forced_;
  size_t pos_ = 0;
};

struct TeleportResult {
  int outcome = 0;        // measured bit c
  bool desired = false;   // a ^ c ^ x == 0: applied angle kept its sign
  int logical_wire = -1;  // post-measurement index of the wire now holding the qubit
  double prob_one = 0.5;  // analytic Born probability of the measured bit
  std::vector<int> old_to_new;
};

// Appends the ancilla, entangles it with the data wire (CNOT ancilla->data),
// measures the data wire. Up to global phase the surviving qubit carries
// X^c Z^b A_{(-1)^(a^c^x) theta} applied to its former content, so the frame
// owner toggles x by c and z by b.
TeleportResult teleport_a(PureState& state, int data_wire, const AncillaSpec& anc,
                          int data_x_key, Outcomes& out);

enum class CascadeMode {
  always_consume,  // a desired first round still spends the correction ancilla
  faithful_skip,   // a desired first round leaves the correction ancilla untouched
};

struct CascadeOutcome {
  int round1_bit = 0;
  bool round1_desired = false;
  std::optional<int> round2_bit;    // correction round acting on the logical wire
  std::optional<int> consumed_bit;  // dummy round spending the correction ancilla
  int final_z_needed = 0;           // leftover A(4 theta) == Z (odd angles only)
  bool fold_final_z = true;         // whether final_z_needed was folded into frame_delta
  KeyBits frame_delta;              // XOR into the logical wire's pad keys
  int logical_wire = -1;
  int dummy_wire = -1;              // updated position of the dummy qubit, if one was given
  std::vector<double> probs;        // analytic p(1) of each measurement, in order
};

// Full gadget for one A(n) gate on an encrypted wire. data_keys are the pad
// keys of the data wire at entry; the returned frame_delta is XORed onto them
// by the caller. In always_consume mode a desired first round redirects the
// correction teleportation at the dummy wire (dummy_wire >= 0), or consumes
// the correction ancilla by direct measurement when no dummy is available.
// reply_override substitutes Alice's round-1 decision (trap slots sample it).
CascadeOutcome run_cascade(PureState& state, int data_wire, Angle8 n,
                           const AncillaSpec& primary, const AncillaSpec& correction,
                           int data_x_key, Outcomes& out, CascadeMode mode,
                           int dummy_wire = -1, std::optional<int> reply_override = {});

// Discharges a pending S correction left by a phase-gate key rule: runs the
// cascade with angle 2*s_bit (angle 0 keeps the transcript shape when nothing
// is owed) and settles the frame via S*S = Z.
void discharge_s_correction(PureState& state, KeyFrame& frame, int wire, Outcomes& out,
                            Rng& key_rng, CascadeMode mode = CascadeMode::always_consume);

}  // namespace bqc
