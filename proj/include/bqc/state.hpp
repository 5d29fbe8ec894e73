#pragma once

#include <span>
#include <vector>

#include "bqc/angle.hpp"
#include "bqc/common.hpp"
#include "bqc/gate.hpp"
#include "bqc/mat.hpp"
#include "bqc/rng.hpp"

namespace bqc {

struct MeasureResult {
  int bit = 0;
  double prob_one = 0.0;          // Born probability of outcome 1, pre-collapse
  std::vector<int> old_to_new;    // wire remap after deletion; removed wire -> -1
};

// Normalized pure state over num_wires qubits, dense amplitudes.
// Wire 0 is the most significant index bit: |w0 w1 ... w_{n-1}>.
class PureState {
 public:
  explicit PureState(int num_wires);  // |0...0>
  static PureState basis(int num_wires, const std::vector<int>& bits);
  static PureState single_qubit(cd a0, cd a1, double norm_tol = 1e-9);
  static PureState from_amplitudes(int num_wires, std::vector<cd> amps, double norm_tol = 1e-9);

  int num_wires() const { return num_wires_; }
  size_t dim() const { return amps_.size(); }
  std::span<const cd> amplitudes() const { return amps_; }
  cd amp(size_t i) const { return amps_[i]; }

  void apply(const GateId& g);

  // Born probability of measuring 1 on a wire; deterministic serial sum.
  double prob_one(int wire) const;

  double norm_sq() const;

  // Sample a Z-measurement, collapse, delete the wire. Surviving wires keep
  // relative order and shift down; the result carries the old->new map.
  MeasureResult measure(int wire, Rng& rng);

  // Force an outcome (post-selection); precondition: outcome has prob > 0.
  MeasureResult project(int wire, int bit);

  PureState tensor(const PureState& other) const;

  // Reorder wires: new wire i is old wire new_from_old_order[i].
  PureState reordered(const std::vector<int>& order) const;

  static double fidelity_up_to_phase(const PureState& a, const PureState& b);

  Mat density() const;  // |psi><psi|

 private:
  MeasureResult collapse(int wire, int bit, double p1);

  int num_wires_;
  std::vector<cd> amps_;
};

// Computational basis state |bits>.
PureState new_state(int num_wires, const std::vector<int>& basis_bits);

// (|0> + e^{i n pi/4} |1>)/sqrt(2)
PureState prepare_a_state(Angle8 n);

// Sum of w_i |psi_i><psi_i|; weights must be nonnegative and sum to 1.
Mat density_from_ensemble(const std::vector<std::pair<double, PureState>>& members);

}  // namespace bqc
