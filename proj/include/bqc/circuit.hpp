#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bqc/gate.hpp"
#include "bqc/rng.hpp"
#include "bqc/state.hpp"

namespace bqc {

// Gate-level program in the user alphabet {X, Z, H, S, T=A(1), A(n), CNOT}.
struct Circuit {
  int num_wires = 0;
  std::vector<GateId> gates;

  void check() const;
  bool operator==(const Circuit&) const = default;
};

// Line-oriented text format, one instruction per line:
//   H 0
//   CNOT 0 1
//   A 3 2        # A(3 pi/4) on wire 2
// '#' starts a comment. Wires are 0-indexed; the wire count is inferred.
Circuit parse_circuit(std::istream& in);
Circuit parse_circuit_text(const std::string& text);
Circuit parse_circuit_file(const std::string& path);
std::string format_circuit(const Circuit& c);

// Direct reference simulation on |bits> (Plus entries start as |+>).
enum class InputKind { zero, one, plus };
PureState simulate(const Circuit& c, const std::vector<InputKind>& inputs);
PureState simulate(const Circuit& c);  // all-|0> input

// Uniform random circuit in the user alphabet. Used by the randomized suites.
Circuit random_circuit(int num_wires, int num_gates, Rng& rng);

}  // namespace bqc
