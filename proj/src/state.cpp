#include "bqc/state.hpp"

#include <cmath>

#include "bqc/kernels.hpp"

namespace bqc {

PureState::PureState(int num_wires) : num_wires_(num_wires) {
  require(num_wires >= 1, Errc::precondition, "state needs at least one wire");
  require(num_wires <= kMaxWires, Errc::caps, "state exceeds the wire cap");
  amps_.assign(size_t{1} << num_wires, cd{});
  amps_[0] = 1.0;
}

PureState PureState::basis(int num_wires, const std::vector<int>& bits) {
  require(static_cast<int>(bits.size()) == num_wires, Errc::precondition,
          "basis bit count must match wire count");
  PureState st(num_wires);
  size_t idx = 0;
  for (int w = 0; w < num_wires; ++w) {
    require(bits[w] == 0 || bits[w] == 1, Errc::precondition, "basis bits must be 0/1");
    idx = (idx << 1) | static_cast<size_t>(bits[w]);
  }
  st.amps_[0] = 0.0;
  st.amps_[idx] = 1.0;
  return st;
}

PureState PureState::single_qubit(cd a0, cd a1, double norm_tol) {
  return from_amplitudes(1, {a0, a1}, norm_tol);
}

PureState PureState::from_amplitudes(int num_wires, std::vector<cd> amps, double norm_tol) {
  require(amps.size() == (size_t{1} << num_wires), Errc::precondition,
          "amplitude count must be 2^wires");
  PureState st(num_wires);
  st.amps_ = std::move(amps);
  require(std::abs(st.norm_sq() - 1.0) <= norm_tol, Errc::precondition,
          "amplitudes are not normalized");
  return st;
}

void PureState::apply(const GateId& g) {
  g.check(num_wires_);
  switch (g.kind) {
    case GateKind::X: {
      const cd u[4] = {0, 1, 1, 0};
      kernels::apply_1q(amps_, num_wires_, g.w0, u);
      break;
    }
    case GateKind::Z:
      kernels::apply_phase1(amps_, num_wires_, g.w0, cd{-1, 0});
      break;
    case GateKind::H: {
      const double h = M_SQRT1_2;
      const cd u[4] = {h, h, h, -h};
      kernels::apply_1q(amps_, num_wires_, g.w0, u);
      break;
    }
    case GateKind::S:
      kernels::apply_phase1(amps_, num_wires_, g.w0, Angle8(2).phase());
      break;
    case GateKind::A:
      kernels::apply_phase1(amps_, num_wires_, g.w0, g.angle.phase());
      break;
    case GateKind::Cnot:
      kernels::apply_cnot(amps_, num_wires_, g.w0, g.w1);
      break;
    case GateKind::Cz:
      kernels::apply_cz(amps_, num_wires_, g.w0, g.w1);
      break;
  }
}

double PureState::prob_one(int wire) const {
  require(wire >= 0 && wire < num_wires_, Errc::precondition, "wire out of range");
  return kernels::prob_one_serial(amps_, num_wires_, wire);
}

double PureState::norm_sq() const { return kernels::norm_sq_serial(amps_); }

MeasureResult PureState::measure(int wire, Rng& rng) {
  const double p1 = prob_one(wire);
  const int bit = rng.uniform() < p1 ? 1 : 0;
  return collapse(wire, bit, p1);
}

MeasureResult PureState::project(int wire, int bit) {
  const double p1 = prob_one(wire);
  const double p = bit ? p1 : 1.0 - p1;
  require(p > 1e-300, Errc::precondition, "projecting onto a zero-probability outcome");
  return collapse(wire, bit, p1);
}

MeasureResult PureState::collapse(int wire, int bit, double p1) {
  require(num_wires_ >= 2, Errc::precondition, "measuring the last wire empties the state");
  const size_t stride = size_t{1} << (num_wires_ - 1 - wire);
  const double p = bit ? p1 : 1.0 - p1;
  const double scale = 1.0 / std::sqrt(p);

  std::vector<cd> next(amps_.size() >> 1);
  for (size_t k = 0; k < next.size(); ++k) {
    size_t src = ((k & ~(stride - 1)) << 1) | (k & (stride - 1));
    if (bit) src |= stride;
    next[k] = amps_[src] * scale;
  }

  MeasureResult res;
  res.bit = bit;
  res.prob_one = p1;
  res.old_to_new.assign(num_wires_, -1);
  for (int w = 0, nw = 0; w < num_wires_; ++w) {
    if (w == wire) continue;
    res.old_to_new[w] = nw++;
  }

  amps_ = std::move(next);
  --num_wires_;
  return res;
}

PureState PureState::tensor(const PureState& other) const {
  require(num_wires_ + other.num_wires_ <= kMaxWires, Errc::caps,
          "tensor product exceeds the wire cap");
  PureState r(num_wires_ + other.num_wires_);
  for (size_t i = 0; i < amps_.size(); ++i) {
    for (size_t j = 0; j < other.amps_.size(); ++j) {
      r.amps_[i * other.amps_.size() + j] = amps_[i] * other.amps_[j];
    }
  }
  return r;
}

PureState PureState::reordered(const std::vector<int>& order) const {
  require(static_cast<int>(order.size()) == num_wires_, Errc::precondition,
          "wire order must name every wire");
  PureState r(num_wires_);
  const int n = num_wires_;
  for (size_t i = 0; i < amps_.size(); ++i) {
    size_t j = 0;
    for (int w = 0; w < n; ++w) {
      const size_t bit = (i >> (n - 1 - order[w])) & 1u;
      j |= bit << (n - 1 - w);
    }
    r.amps_[j] = amps_[i];
  }
  return r;
}

double PureState::fidelity_up_to_phase(const PureState& a, const PureState& b) {
  require(a.num_wires_ == b.num_wires_, Errc::precondition, "fidelity needs equal wire counts");
  cd ip{};
  for (size_t i = 0; i < a.amps_.size(); ++i) ip += std::conj(a.amps_[i]) * b.amps_[i];
  return std::norm(ip);
}

PureState new_state(int num_wires, const std::vector<int>& basis_bits) {
  return PureState::basis(num_wires, basis_bits);
}

PureState prepare_a_state(Angle8 n) {
  PureState st(1);
  st.apply(GateId::h(0));
  st.apply(GateId::a(n, 0));
  return st;
}

Mat PureState::density() const {
  Mat rho(static_cast<int>(dim()), static_cast<int>(dim()));
  for (size_t i = 0; i < amps_.size(); ++i)
    for (size_t j = 0; j < amps_.size(); ++j)
      rho.at(static_cast<int>(i), static_cast<int>(j)) = amps_[i] * std::conj(amps_[j]);
  return rho;
}

Mat density_from_ensemble(const std::vector<std::pair<double, PureState>>& members) {
  require(!members.empty(), Errc::precondition, "empty ensemble");
  const size_t d = members.front().second.dim();
  double wsum = 0.0;
  Mat rho(static_cast<int>(d), static_cast<int>(d));
  for (const auto& [w, st] : members) {
    require(w >= 0.0, Errc::precondition, "ensemble weights must be nonnegative");
    require(st.dim() == d, Errc::precondition, "ensemble dimension mismatch");
    wsum += w;
    auto amps = st.amplitudes();
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j)
        rho.at(static_cast<int>(i), static_cast<int>(j)) += w * amps[i] * std::conj(amps[j]);
  }
  require(std::abs(wsum - 1.0) <= kAlgebraTol, Errc::precondition,
          "ensemble weights must sum to 1");
  return rho;
}

}  // namespace bqc
