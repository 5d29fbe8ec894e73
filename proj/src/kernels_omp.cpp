#include "bqc/kernels.hpp"

namespace bqc::kernels {

namespace {

inline size_t stride_of(int num_wires, int wire) {
  return size_t{1} << (num_wires - 1 - wire);
}

inline size_t pair_base(size_t k, size_t stride) {
  return ((k & ~(stride - 1)) << 1) | (k & (stride - 1));
}

// Below this the fork/join cost dominates for these tiny kernels.
constexpr long kParCutoff = 1 << 11;

}  // namespace

void apply_1q_parallel(std::span<cd> amps, int num_wires, int wire, const cd u[4]) {
  const size_t stride = stride_of(num_wires, wire);
  const long half = static_cast<long>(amps.size() >> 1);
  const cd u0 = u[0], u1 = u[1], u2 = u[2], u3 = u[3];
  cd* p = amps.data();
#pragma omp parallel for schedule(static) if (half >= kParCutoff)
  for (long k = 0; k < half; ++k) {
    const size_t i0 = pair_base(static_cast<size_t>(k), stride);
    const size_t i1 = i0 | stride;
    const cd a0 = p[i0], a1 = p[i1];
    p[i0] = u0 * a0 + u1 * a1;
    p[i1] = u2 * a0 + u3 * a1;
  }
}

void apply_phase1_parallel(std::span<cd> amps, int num_wires, int wire, cd phase) {
  const size_t stride = stride_of(num_wires, wire);
  const long half = static_cast<long>(amps.size() >> 1);
  cd* p = amps.data();
#pragma omp parallel for schedule(static) if (half >= kParCutoff)
  for (long k = 0; k < half; ++k) {
    p[pair_base(static_cast<size_t>(k), stride) | stride] *= phase;
  }
}

void apply_cnot_parallel(std::span<cd> amps, int num_wires, int control, int target) {
  const size_t cm = stride_of(num_wires, control);
  const size_t tm = stride_of(num_wires, target);
  const long dim = static_cast<long>(amps.size());
  cd* p = amps.data();
#pragma omp parallel for schedule(static) if (dim >= 2 * kParCutoff)
  for (long i = 0; i < dim; ++i) {
    const size_t u = static_cast<size_t>(i);
    if ((u & cm) && !(u & tm)) std::swap(p[u], p[u | tm]);
  }
}

void apply_cz_parallel(std::span<cd> amps, int num_wires, int a, int b) {
  const size_t am = stride_of(num_wires, a);
  const size_t bm = stride_of(num_wires, b);
  const long dim = static_cast<long>(amps.size());
  cd* p = amps.data();
#pragma omp parallel for schedule(static) if (dim >= 2 * kParCutoff)
  for (long i = 0; i < dim; ++i) {
    const size_t u = static_cast<size_t>(i);
    if ((u & am) && (u & bm)) p[u] = -p[u];
  }
}

double prob_one_parallel(std::span<const cd> amps, int num_wires, int wire) {
  const size_t m = stride_of(num_wires, wire);
  const long dim = static_cast<long>(amps.size());
  const cd* p = amps.data();
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s) if (dim >= 2 * kParCutoff)
  for (long i = 0; i < dim; ++i) {
    const size_t u = static_cast<size_t>(i);
    if (u & m) s += std::norm(p[u]);
  }
  return s;
}

double norm_sq_parallel(std::span<const cd> amps) {
  const long dim = static_cast<long>(amps.size());
  const cd* p = amps.data();
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s) if (dim >= 2 * kParCutoff)
  for (long i = 0; i < dim; ++i) s += std::norm(p[i]);
  return s;
}

}  // namespace bqc::kernels
