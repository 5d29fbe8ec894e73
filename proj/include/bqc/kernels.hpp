#pragma once

#include <cstddef>
#include <span>

#include "bqc/common.hpp"

namespace bqc::kernels {

// Amplitude-array kernels. Each exists in a serial reference form and an
// OpenMP form; the parallel forms touch disjoint index pairs, so for the
// update kernels both paths produce bit-identical amplitudes. Probability
// sums stay on the serial path wherever determinism matters (measurement),
// since reduction order is scheduler-dependent.
enum class Policy { serial, parallel };

// process-wide default for the update kernels
Policy default_policy();
void set_default_policy(Policy p);

// u = row-major 2x2
void apply_1q_serial(std::span<cd> amps, int num_wires, int wire, const cd u[4]);
void apply_1q_parallel(std::span<cd> amps, int num_wires, int wire, const cd u[4]);

// phase on |1> of a wire (diagonal fast path)
void apply_phase1_serial(std::span<cd> amps, int num_wires, int wire, cd phase);
void apply_phase1_parallel(std::span<cd> amps, int num_wires, int wire, cd phase);

void apply_cnot_serial(std::span<cd> amps, int num_wires, int control, int target);
void apply_cnot_parallel(std::span<cd> amps, int num_wires, int control, int target);

void apply_cz_serial(std::span<cd> amps, int num_wires, int a, int b);
void apply_cz_parallel(std::span<cd> amps, int num_wires, int a, int b);

double prob_one_serial(std::span<const cd> amps, int num_wires, int wire);
double prob_one_parallel(std::span<const cd> amps, int num_wires, int wire);

double norm_sq_serial(std::span<const cd> amps);
double norm_sq_parallel(std::span<const cd> amps);

// dispatchers honoring the default policy
void apply_1q(std::span<cd> amps, int num_wires, int wire, const cd u[4]);
void apply_phase1(std::span<cd> amps, int num_wires, int wire, cd phase);
void apply_cnot(std::span<cd> amps, int num_wires, int control, int target);
void apply_cz(std::span<cd> amps, int num_wires, int a, int b);

}  // namespace bqc::kernels
