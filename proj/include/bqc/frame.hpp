#pragma once

#include <vector>

#include "bqc/gate.hpp"
#include "bqc/rng.hpp"
#include "bqc/state.hpp"

namespace bqc {

struct KeyBits {
  int x = 0;
  int z = 0;
  bool operator==(const KeyBits&) const = default;
};

// Classical record of the pad on each wire: the state held remotely is
// X^x Z^z |psi> per wire, with an optional pending S correction sitting
// between the pad and the logical state (from phase-gate rules).
class KeyFrame {
 public:
  explicit KeyFrame(int num_wires) : keys_(num_wires), s_pending_(num_wires, 0) {}

  static KeyFrame random(int num_wires, Rng& rng) {
    KeyFrame f(num_wires);
    for (auto& k : f.keys_) k = {rng.bit(), rng.bit()};
    return f;
  }

  int num_wires() const { return static_cast<int>(keys_.size()); }
  KeyBits& key(int w) { return keys_.at(w); }
  const KeyBits& key(int w) const { return keys_.at(w); }
  int& s_pending(int w) { return s_pending_.at(w); }
  int s_pending(int w) const { return s_pending_.at(w); }
  bool any_s_pending() const {
    for (int s : s_pending_)
      if (s) return true;
    return false;
  }

 private:
  std::vector<KeyBits> keys_;
  std::vector<int> s_pending_;
};

// Apply the pad: X^x Z^z per wire (Z acts on the ket first).
void encrypt(PureState& state, const KeyFrame& frame);

// Remove the pad: Z^z X^x per wire. Requires every pending S discharged.
void decrypt(PureState& state, const KeyFrame& frame);

// Push one gate through the pad, updating keys in place.
//   X,Z : keys unchanged (anticommutation is a global phase)
//   H   : (x, z) -> (z, x)
//   CNOT: control (a,b), target (c,d) -> (a, b^d), (a^c, d)
//   CZ  : control (a,b), target (c,d) -> (a, b^c), (c, d^a)
//   A(n), S, T: x unchanged; for x=1 the commutation residue A(-2n)
//   splits into Z^{z'} S^{s'} with -2n = 4z' + 2s' (mod 8); z' folds into
//   the z key and s' into the pending-S bit.
void update_for_gate(KeyFrame& frame, const GateId& gate);

struct RuleReport {
  GateKind gate;
  int total = 0;
  int passed = 0;
  std::vector<std::string> failures;
  bool ok() const { return passed == total && total > 0; }
};

// Brute-force check of the key-update rule for one gate kind: for every key
// combination, verifies U * X^aZ^b == X^a'Z^b' * S^s * U up to global phase
// against explicit matrix products.
RuleReport exhaustive_rule_check(const GateId& gate);

}  // namespace bqc
