#pragma once

#include <string>

#include "bqc/angle.hpp"
#include "bqc/common.hpp"

namespace bqc {

enum class GateKind { X, Z, H, S, A, Cnot, Cz };

inline bool is_two_wire(GateKind k) { return k == GateKind::Cnot || k == GateKind::Cz; }

// One gate instance bound to wires. A carries its Angle8; for Cnot w0 is the
// control and w1 the target.
struct GateId {
  GateKind kind;
  int w0 = 0;
  int w1 = -1;
  Angle8 angle;

  static GateId x(int w) { return {GateKind::X, w, -1, Angle8()}; }
  static GateId z(int w) { return {GateKind::Z, w, -1, Angle8()}; }
  static GateId h(int w) { return {GateKind::H, w, -1, Angle8()}; }
  static GateId s(int w) { return {GateKind::S, w, -1, Angle8()}; }
  static GateId t(int w) { return {GateKind::A, w, -1, Angle8(1)}; }
  static GateId a(Angle8 n, int w) { return {GateKind::A, w, -1, n}; }
  static GateId cnot(int c, int t) { return {GateKind::Cnot, c, t, Angle8()}; }
  static GateId cz(int a, int b) { return {GateKind::Cz, a, b, Angle8()}; }

  void check(int num_wires) const {
    require(w0 >= 0 && w0 < num_wires, Errc::precondition, "gate wire out of range");
    if (is_two_wire(kind)) {
      require(w1 >= 0 && w1 < num_wires, Errc::precondition, "gate wire out of range");
      require(w0 != w1, Errc::precondition, "two-wire gate on coincident wires");
    }
  }
};

inline std::string to_string(GateKind k) {
  switch (k) {
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::A: return "A";
    case GateKind::Cnot: return "CNOT";
    case GateKind::Cz: return "CZ";
  }
  return "?";
}

}  // namespace bqc
