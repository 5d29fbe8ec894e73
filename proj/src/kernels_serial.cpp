#include "bqc/kernels.hpp"

namespace bqc::kernels {

namespace {

inline size_t stride_of(int num_wires, int wire) {
  // wire 0 is the most significant index bit
  return size_t{1} << (num_wires - 1 - wire);
}

inline size_t pair_base(size_t k, size_t stride) {
  return ((k & ~(stride - 1)) << 1) | (k & (stride - 1));
}

}  // namespace

void apply_1q_serial(std::span<cd> amps, int num_wires, int wire, const cd u[4]) {
  const size_t stride = stride_of(num_wires, wire);
  const size_t half = amps.size() >> 1;
  for (size_t k = 0; k < half; ++k) {
    const size_t i0 = pair_base(k, stride);
    const size_t i1 = i0 | stride;
    const cd a0 = amps[i0], a1 = amps[i1];
    amps[i0] = u[0] * a0 + u[1] * a1;
    amps[i1] = u[2] * a0 + u[3] * a1;
  }
}

void apply_phase1_serial(std::span<cd> amps, int num_wires, int wire, cd phase) {
  const size_t stride = stride_of(num_wires, wire);
  const size_t half = amps.size() >> 1;
  for (size_t k = 0; k < half; ++k) {
    amps[pair_base(k, stride) | stride] *= phase;
  }
}

void apply_cnot_serial(std::span<cd> amps, int num_wires, int control, int target) {
  const size_t cm = stride_of(num_wires, control);
  const size_t tm = stride_of(num_wires, target);
  const size_t dim = amps.size();
  for (size_t i = 0; i < dim; ++i) {
    if ((i & cm) && !(i & tm)) std::swap(amps[i], amps[i | tm]);
  }
}

void apply_cz_serial(std::span<cd> amps, int num_wires, int a, int b) {
  const size_t am = stride_of(num_wires, a);
  const size_t bm = stride_of(num_wires, b);
  const size_t dim = amps.size();
  for (size_t i = 0; i < dim; ++i) {
    if ((i & am) && (i & bm)) amps[i] = -amps[i];
  }
}

double prob_one_serial(std::span<const cd> amps, int num_wires, int wire) {
  const size_t m = stride_of(num_wires, wire);
  double p = 0.0;
  for (size_t i = 0; i < amps.size(); ++i) {
    if (i & m) p += std::norm(amps[i]);
  }
  return p;
}

double norm_sq_serial(std::span<const cd> amps) {
  double s = 0.0;
  for (const cd& a : amps) s += std::norm(a);
  return s;
}

}  // namespace bqc::kernels
