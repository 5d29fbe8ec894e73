#include "bqc/kernels.hpp"

#include <atomic>

namespace bqc::kernels {

namespace {
std::atomic<Policy> g_policy{Policy::parallel};
}

Policy default_policy() { return g_policy.load(std::memory_order_relaxed); }
void set_default_policy(Policy p) { g_policy.store(p, std::memory_order_relaxed); }

void apply_1q(std::span<cd> amps, int num_wires, int wire, const cd u[4]) {
  if (default_policy() == Policy::serial)
    apply_1q_serial(amps, num_wires, wire, u);
  else
    apply_1q_parallel(amps, num_wires, wire, u);
}

void apply_phase1(std::span<cd> amps, int num_wires, int wire, cd phase) {
  if (default_policy() == Policy::serial)
    apply_phase1_serial(amps, num_wires, wire, phase);
  else
    apply_phase1_parallel(amps, num_wires, wire, phase);
}

void apply_cnot(std::span<cd> amps, int num_wires, int control, int target) {
  if (default_policy() == Policy::serial)
    apply_cnot_serial(amps, num_wires, control, target);
  else
    apply_cnot_parallel(amps, num_wires, control, target);
}

void apply_cz(std::span<cd> amps, int num_wires, int a, int b) {
  if (default_policy() == Policy::serial)
    apply_cz_serial(amps, num_wires, a, b);
  else
    apply_cz_parallel(amps, num_wires, a, b);
}

}  // namespace bqc::kernels
