#include "bqc/frame.hpp"

#include "bqc/mat.hpp"

namespace bqc {

void encrypt(PureState& state, const KeyFrame& frame) {
  require(frame.num_wires() == state.num_wires(), Errc::precondition,
          "frame does not cover the state");
  for (int w = 0; w < state.num_wires(); ++w) {
    if (frame.key(w).z) state.apply(GateId::z(w));
    if (frame.key(w).x) state.apply(GateId::x(w));
  }
}

void decrypt(PureState& state, const KeyFrame& frame) {
  require(frame.num_wires() == state.num_wires(), Errc::precondition,
          "frame does not cover the state");
  require(!frame.any_s_pending(), Errc::precondition,
          "undischarged S correction; sequencing bug upstream");
  for (int w = 0; w < state.num_wires(); ++w) {
    if (frame.key(w).x) state.apply(GateId::x(w));
    if (frame.key(w).z) state.apply(GateId::z(w));
  }
}

namespace {

// residue of pushing A(n) past X: A(n) X = X A(-n) up to phase, and
// A(-n) = A(-2n) A(n); decompose A(-2n) = Z^z' S^s'.
void phase_gate_rule(KeyFrame& frame, int wire, Angle8 n) {
  const KeyBits k = frame.key(wire);
  if (!k.x) return;
  const int m = (-2 * n.n() % 8 + 8) % 8;
  const int zp = (m >> 2) & 1;
  const int sp = (m >> 1) & 1;
  frame.key(wire).z ^= zp;
  // compose with an already-pending S: S*S = Z
  frame.key(wire).z ^= (frame.s_pending(wire) & sp);
  frame.s_pending(wire) ^= sp;
}

}  // namespace

void update_for_gate(KeyFrame& frame, const GateId& gate) {
  gate.check(frame.num_wires());
  switch (gate.kind) {
    case GateKind::X:
      // X S = i Z S X, so a pending S leaves a Z behind
      frame.key(gate.w0).z ^= frame.s_pending(gate.w0);
      break;
    case GateKind::Z:
      break;
    case GateKind::H: {
      require(frame.s_pending(gate.w0) == 0, Errc::precondition,
              "H rule with pending S correction");
      auto& k = frame.key(gate.w0);
      std::swap(k.x, k.z);
      break;
    }
    case GateKind::S:
      phase_gate_rule(frame, gate.w0, Angle8(2));
      break;
    case GateKind::A:
      phase_gate_rule(frame, gate.w0, gate.angle);
      break;
    case GateKind::Cnot: {
      require(frame.s_pending(gate.w0) == 0 && frame.s_pending(gate.w1) == 0, Errc::precondition,
              "CNOT rule with pending S correction");
      auto& kc = frame.key(gate.w0);
      auto& kt = frame.key(gate.w1);
      const int a = kc.x, b = kc.z, c = kt.x, d = kt.z;
      kc = {a, b ^ d};
      kt = {a ^ c, d};
      break;
    }
    case GateKind::Cz: {
      require(frame.s_pending(gate.w0) == 0 && frame.s_pending(gate.w1) == 0, Errc::precondition,
              "CZ rule with pending S correction");
      auto& k1 = frame.key(gate.w0);
      auto& k2 = frame.key(gate.w1);
      const int a = k1.x, b = k1.z, c = k2.x, d = k2.z;
      k1 = {a, b ^ c};
      k2 = {c, d ^ a};
      break;
    }
  }
}

namespace {

Mat pauli_word(KeyBits k) {
  Mat m = Mat::identity(2);
  if (k.z) m = mat_z() * m;
  if (k.x) m = mat_x() * m;
  return m;
}

}  // namespace

RuleReport exhaustive_rule_check(const GateId& gate) {
  RuleReport rep;
  rep.gate = gate.kind;
  const bool two = is_two_wire(gate.kind);
  const int wires = two ? 2 : 1;
  const GateId local = two ? GateId{gate.kind, 0, 1, gate.angle} : GateId{gate.kind, 0, -1, gate.angle};
  const Mat u = gate_matrix(local);

  const int combos = two ? 16 : 4;
  for (int bits = 0; bits < combos; ++bits) {
    KeyFrame frame(wires);
    frame.key(0) = {(bits >> 0) & 1, (bits >> 1) & 1};
    if (two) frame.key(1) = {(bits >> 2) & 1, (bits >> 3) & 1};

    Mat before = pauli_word(frame.key(0));
    if (two) before = before.kron(pauli_word(frame.key(1)));

    update_for_gate(frame, local);

    Mat after = pauli_word(frame.key(0));
    if (two) after = after.kron(pauli_word(frame.key(1)));

    Mat corr = Mat::identity(two ? 4 : 2);
    if (!two && frame.s_pending(0)) corr = mat_s();

    const Mat lhs = u * before;
    const Mat rhs = after * corr * u;
    ++rep.total;
    if (equal_up_to_phase(lhs, rhs, kAlgebraTol)) {
      ++rep.passed;
    } else {
      rep.failures.push_back(to_string(gate.kind) + " keys=" + std::to_string(bits));
    }
  }
  return rep;
}

}  // namespace bqc
