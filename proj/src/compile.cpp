#include "bqc/compile.hpp"

#include <algorithm>
#include <cmath>

namespace bqc {

// ---------------------------------------------------------------------------
// T-like words

Mat tlike_matrix(TLike g) {
  switch (g) {
    case TLike::T: return mat_a(Angle8(1));
    case TLike::Tdag: return mat_a(Angle8(7));
    case TLike::T3: return mat_a(Angle8(3));
    case TLike::T3dag: return mat_a(Angle8(5));
    case TLike::H: return mat_h();
  }
  fail(Errc::precondition, "unknown word letter");
}

Angle8 tlike_angle(TLike g) {
  switch (g) {
    case TLike::T: return Angle8(1);
    case TLike::Tdag: return Angle8(7);
    case TLike::T3: return Angle8(3);
    case TLike::T3dag: return Angle8(5);
    case TLike::H: fail(Errc::precondition, "H carries no phase angle");
  }
  fail(Errc::precondition, "unknown word letter");
}

Mat word_matrix(const TLikeWord& word) {
  Mat u = Mat::identity(2);
  for (TLike g : word) u = u * tlike_matrix(g);
  return u;
}

AxisAngle table1_axis(const TLikeWord& word) {
  require(word.size() == 4, Errc::precondition, "axis extraction expects length-4 words");
  const Mat u = word_matrix(word);

  // strip the determinant phase to land in SU(2)
  const cd det = u.at(0, 0) * u.at(1, 1) - u.at(0, 1) * u.at(1, 0);
  const cd phase = std::sqrt(det);
  Mat v = u.scaled(cd{1, 0} / phase);

  double c = std::real(v.at(0, 0) + v.at(1, 1)) / 2.0;
  c = std::clamp(c, -1.0, 1.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  require(s > 1e-9, Errc::precondition, "word is not a proper rotation");

  // V = cos(phi/2) I - i sin(phi/2) (n . sigma)
  Mat w = v - Mat::identity(2).scaled(c);
  for (auto& x : w.a) x *= cd{0, 1} / s;  // now w = n . sigma
  AxisAngle out;
  out.axis[0] = std::real(w.at(0, 1) + w.at(1, 0)) / 2.0;
  out.axis[1] = std::imag(w.at(1, 0) - w.at(0, 1)) / 2.0;
  out.axis[2] = std::real(w.at(0, 0) - w.at(1, 1)) / 2.0;
  out.angle = 2.0 * std::acos(c);
  return out;
}

const std::vector<TableRow>& table1_rows() {
  static const std::vector<TableRow> rows = [] {
    const double c8 = std::cos(M_PI / 8), s8 = std::sin(M_PI / 8);
    const double c38 = std::cos(3 * M_PI / 8), s38 = std::sin(3 * M_PI / 8);
    using L = TLike;
    std::vector<TableRow> r;
    r.push_back({{L::T, L::H, L::T, L::H}, {c8, s8, c8}});
    r.push_back({{L::T, L::H, L::Tdag, L::H}, {-c8, -s8, c8}});
    r.push_back({{L::Tdag, L::H, L::T, L::H}, {c8, -s8, -c8}});
    r.push_back({{L::Tdag, L::H, L::Tdag, L::H}, {-c8, s8, -c8}});
    r.push_back({{L::T3, L::H, L::T3, L::H}, {c38, s38, c38}});
    r.push_back({{L::T3, L::H, L::T3dag, L::H}, {-c38, -s38, c38}});
    r.push_back({{L::T3dag, L::H, L::T3, L::H}, {c38, -s38, -c38}});
    r.push_back({{L::T3dag, L::H, L::T3dag, L::H}, {-c38, s38, -c38}});
    return r;
  }();
  return rows;
}

double direction_match(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  double dot = 0, na = 0, nb = 0;
  for (int i = 0; i < 3; ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return std::abs(dot) / std::sqrt(na * nb);
}

// ---------------------------------------------------------------------------
// Bounded synthesis

namespace {

struct SearchState {
  const Mat* target;
  int budget;
  TLikeWord best_word;
  double best_dist;
  TLikeWord cur;

  void consider(const Mat& u) {
    const double d = op_dist_up_to_phase(u, *target);
    if (d < best_dist - 1e-15) {
      best_dist = d;
      best_word = cur;
    }
  }

  // canonical form: no H H, no runs of three phase letters, no length-2 run
  // summing to zero
  void dfs(const Mat& u, int last_kind /*0 none, 1 H, 2 one A, 3 two As*/, Angle8 run_sum) {
    consider(u);
    if (static_cast<int>(cur.size()) >= budget) return;
    if (last_kind != 1) {
      cur.push_back(TLike::H);
      dfs(u * mat_h(), 1, Angle8(0));
      cur.pop_back();
    }
    if (last_kind != 3) {
      for (TLike g : {TLike::T, TLike::T3, TLike::T3dag, TLike::Tdag}) {
        const Angle8 n = tlike_angle(g);
        if (last_kind == 2 && (run_sum + n).n() == 0) continue;
        cur.push_back(g);
        dfs(u * mat_a(n), last_kind == 2 ? 3 : 2, run_sum + n);
        cur.pop_back();
      }
    }
  }
};

}  // namespace

ApproxResult approximate_single_qubit(const Mat& target, int depth_budget) {
  require(target.rows == 2 && target.cols == 2, Errc::precondition, "target must be 2x2");
  require(depth_budget >= 0 && depth_budget <= kApproxDepthCap, Errc::precondition,
          "depth budget over cap");
  SearchState s;
  s.target = &target;
  s.budget = depth_budget;
  s.best_dist = 1e100;
  s.dfs(Mat::identity(2), 0, Angle8(0));
  return {s.best_word, s.best_dist};
}

// ---------------------------------------------------------------------------
// Slots and bricks

Mat slot_matrix(const SlotFill& f) {
  return mat_a(f.last) * mat_h() * mat_a(f.mid) * mat_h() * mat_a(f.first);
}

std::vector<SlotFill> slot_fills_for(const Mat& target, double tol) {
  std::vector<SlotFill> out;
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      for (int c = 0; c < 8; ++c) {
        SlotFill f{Angle8(a), Angle8(b), Angle8(c)};
        if (dist_up_to_phase(slot_matrix(f), target) <= tol) out.push_back(f);
      }
  return out;
}

namespace {
constexpr SlotFill kIdFill{Angle8(), Angle8(), Angle8()};
SlotFill fill(int a, int b, int c) { return {Angle8(a), Angle8(b), Angle8(c)}; }
}  // namespace

BrickSpec make_brick(BrickRole role) {
  BrickSpec b;
  b.role = role;
  for (int l = 0; l < 3; ++l) b.fill[l][0] = b.fill[l][1] = kIdFill;
  if (role == BrickRole::identity) return b;

  // CNOT filling, control on the first pair wire:
  //   L1 = S (x) S, L2 = I (x) H, L3 = I (x) S^dag H
  // The CZ (I x H) CZ sandwich is H-conditioned-on-control; the S pair and
  // the S^dag H slot rotate it into CNOT exactly (up to global phase).
  const int ctl = role == BrickRole::cnot ? 0 : 1;
  const int tgt = 1 - ctl;
  b.fill[0][ctl] = fill(2, 0, 0);
  b.fill[0][tgt] = fill(2, 0, 0);
  b.fill[1][tgt] = fill(2, 2, 2);
  b.fill[2][tgt] = fill(2, 2, 0);
  return b;
}

Mat brick_matrix(const BrickSpec& b) {
  auto layer = [&](int l) { return slot_matrix(b.fill[l][0]).kron(slot_matrix(b.fill[l][1])); };
  return layer(2) * mat_cz() * layer(1) * mat_cz() * layer(0);
}

// ---------------------------------------------------------------------------
// Shared compile helpers

namespace {

int anc1_label(const PublicCircuit& pub, int gadget_id) {
  return pub.num_logical + 1 + 2 * gadget_id;
}

std::vector<InputKind> resolve_inputs(const Circuit& c, const CompileOptions& opt) {
  if (opt.inputs.empty()) return std::vector<InputKind>(c.num_wires, InputKind::zero);
  require(static_cast<int>(opt.inputs.size()) == c.num_wires, Errc::precondition,
          "input spec must cover every wire");
  return opt.inputs;
}

void finish_transfers(CompiledCircuit& cc, Rng& rng, bool encrypt) {
  auto& pub = cc.pub;
  const int gadgets = static_cast<int>(cc.priv.gadgets.size());
  pub.num_transfers = pub.num_logical + 1 + 2 * gadgets;
  pub.dummy_transfer = pub.num_logical;

  cc.priv.transfer_keys.assign(pub.num_transfers, KeyBits{});
  for (int t = 0; t <= pub.num_logical; ++t) {
    cc.priv.transfer_keys[t] = encrypt ? KeyBits{rng.bit(), rng.bit()} : KeyBits{};
  }
  for (int g = 0; g < gadgets; ++g) {
    cc.priv.transfer_keys[anc1_label(pub, g)] = cc.priv.gadgets[g].anc1_keys;
    cc.priv.transfer_keys[anc1_label(pub, g) + 1] = cc.priv.gadgets[g].anc2_keys;
  }

  pub.outputs.resize(pub.num_logical);
  for (int v = 0; v < pub.num_logical; ++v) pub.outputs[v] = v;
}

void add_gadget(CompiledCircuit& cc, int v, Angle8 angle, Rng& rng, bool encrypt) {
  const int gid = static_cast<int>(cc.priv.gadgets.size());
  GadgetSecret sec;
  sec.angle = angle;
  sec.anc1_keys = encrypt ? KeyBits{rng.bit(), rng.bit()} : KeyBits{};
  sec.anc2_keys = encrypt ? KeyBits{rng.bit(), rng.bit()} : KeyBits{};
  sec.sample_reply = (angle.n() == 0);
  cc.priv.gadgets.push_back(sec);

  PublicSlot slot;
  slot.kind = SlotKind::gadget;
  slot.v0 = v;
  slot.gadget_id = gid;
  slot.anc1 = anc1_label(cc.pub, gid);
  slot.anc2 = slot.anc1 + 1;
  cc.pub.slots.push_back(slot);
  cc.priv.steps.push_back({PrivStep::Kind::pub_slot, static_cast<int>(cc.pub.slots.size()) - 1});
}

void add_bob_gate(CompiledCircuit& cc, SlotKind kind, int v0, int v1 = -1) {
  PublicSlot slot;
  slot.kind = kind;
  slot.v0 = v0;
  slot.v1 = v1;
  cc.pub.slots.push_back(slot);
  cc.priv.steps.push_back({PrivStep::Kind::pub_slot, static_cast<int>(cc.pub.slots.size()) - 1});
}

}  // namespace

std::vector<GateId> adjacentize_cnot(int control, int target) {
  if (std::abs(control - target) == 1) return {GateId::cnot(control, target)};
  const int mid = target > control ? target - 1 : target + 1;
  std::vector<GateId> inner = adjacentize_cnot(control, mid);
  std::vector<GateId> out = inner;
  out.push_back(GateId::cnot(mid, target));
  out.insert(out.end(), inner.begin(), inner.end());
  out.push_back(GateId::cnot(mid, target));
  return out;
}

// ---------------------------------------------------------------------------
// Protocol 1

CompiledCircuit compile_weak_blind(const Circuit& c, Rng& rng, const CompileOptions& opt) {
  c.check();
  require(c.num_wires <= opt.max_logical, Errc::caps, "too many wires for the session caps");

  CompiledCircuit cc;
  cc.pub.protocol = 1;
  cc.pub.cascade_mode = opt.mode == CascadeMode::always_consume ? 0 : 1;
  cc.pub.num_logical = c.num_wires;
  cc.priv.inputs = resolve_inputs(c, opt);

  for (const GateId& g : c.gates) {
    switch (g.kind) {
      case GateKind::X:
        cc.priv.steps.push_back({PrivStep::Kind::flip_x, g.w0});
        break;
      case GateKind::Z:
        cc.priv.steps.push_back({PrivStep::Kind::flip_z, g.w0});
        break;
      case GateKind::H:
        add_bob_gate(cc, SlotKind::bob_h, g.w0);
        break;
      case GateKind::Cnot:
        add_bob_gate(cc, SlotKind::bob_cnot, g.w0, g.w1);
        break;
      case GateKind::S:
      case GateKind::A: {
        Angle8 n = g.kind == GateKind::S ? Angle8(2) : g.angle;
        // representation freedom: A(n) == A(n+4) Z, the Z folding into the pad
        if (n.n() != 0 && rng.bit()) {
          cc.priv.steps.push_back({PrivStep::Kind::flip_z, g.w0});
          n = n + Angle8(4);
        }
        add_gadget(cc, g.w0, n, rng, opt.encrypt);
        break;
      }
      case GateKind::Cz:
        fail(Errc::precondition, "CZ is not in the user alphabet");
    }
  }

  finish_transfers(cc, rng, opt.encrypt);
  return cc;
}

// ---------------------------------------------------------------------------
// Protocol 2: staggered brickwork

namespace {

struct CellPos {
  int col = 0;
  int layer = 0;  // user slots sit at layers 0 and 2
};

struct RoutedGrid {
  int wires = 0;
  int cols = 0;
  std::vector<std::vector<std::array<std::optional<SlotFill>, 3>>> fills;  // [col][wire][layer]
  std::vector<std::vector<int>> cnot_cell;  // [col][wire] reserved by a brick

  void ensure(int col) {
    while (static_cast<int>(fills.size()) <= col) {
      fills.emplace_back(wires);
      cnot_cell.emplace_back(wires, 0);
    }
    cols = std::max(cols, col + 1);
  }
};

// even columns pair (0,1),(2,3)...; odd columns pair (1,2),(3,4)...
bool pair_in_column(int col, int upper_wire, int num_wires) {
  if (upper_wire + 1 >= num_wires) return false;
  return (upper_wire % 2) == (col % 2);
}

using FlipList = std::vector<std::pair<char, int>>;  // ('x'|'z', virtual wire)

}  // namespace

CompiledCircuit compile_blind(const Circuit& c, Rng& rng, const CompileOptions& opt) {
  c.check();
  require(c.num_wires <= opt.max_logical, Errc::caps, "too many wires for the session caps");

  // expand distant CNOTs into adjacent chains
  std::vector<GateId> gates;
  for (const GateId& g : c.gates) {
    if (g.kind == GateKind::Cnot && std::abs(g.w0 - g.w1) != 1) {
      auto chain = adjacentize_cnot(g.w0, g.w1);
      gates.insert(gates.end(), chain.begin(), chain.end());
    } else {
      gates.push_back(g);
    }
  }

  const int W = c.num_wires;
  RoutedGrid grid;
  grid.wires = W;
  grid.ensure(0);

  std::vector<CellPos> cursor(W);
  std::vector<FlipList> pending(W);
  // pad flips scheduled before a specific slot: key = (col, wire, layer)
  std::map<std::tuple<int, int, int>, FlipList> flips_before;
  FlipList trailing_flips;

  auto attach_flips = [&](int w, int col, int layer) {
    if (pending[w].empty()) return;
    auto& dst = flips_before[{col, w, layer}];
    dst.insert(dst.end(), pending[w].begin(), pending[w].end());
    pending[w].clear();
  };

  auto place_1q = [&](int w, const SlotFill& f) {
    grid.ensure(cursor[w].col);
    while (grid.cnot_cell[cursor[w].col][w]) {
      cursor[w] = {cursor[w].col + 1, 0};
      grid.ensure(cursor[w].col);
    }
    const CellPos pos = cursor[w];
    grid.fills[pos.col][w][pos.layer] = f;
    attach_flips(w, pos.col, pos.layer);
    cursor[w] = pos.layer == 0 ? CellPos{pos.col, 2} : CellPos{pos.col + 1, 0};
  };

  auto ceil_col = [&](int w) { return cursor[w].layer == 0 ? cursor[w].col : cursor[w].col + 1; };

  auto place_cnot = [&](int control, int target) {
    const int a = std::min(control, target);
    int col = std::max(ceil_col(control), ceil_col(target));
    for (;; ++col) {
      if (!pair_in_column(col, a, W)) continue;
      grid.ensure(col);
      bool free = !grid.cnot_cell[col][a] && !grid.cnot_cell[col][a + 1];
      for (int l = 0; l < 3 && free; ++l)
        free = !grid.fills[col][a][l] && !grid.fills[col][a + 1][l];
      if (free) break;
    }
    grid.ensure(col);
    const BrickSpec brick =
        make_brick(control < target ? BrickRole::cnot : BrickRole::cnot_reversed);
    for (int l = 0; l < 3; ++l) {
      grid.fills[col][a][l] = brick.fill[l][0];
      grid.fills[col][a + 1][l] = brick.fill[l][1];
    }
    grid.cnot_cell[col][a] = grid.cnot_cell[col][a + 1] = 1;
    attach_flips(control, col, 0);
    attach_flips(target, col, 0);
    cursor[control] = cursor[target] = {col + 1, 0};
  };

  for (const GateId& g : gates) {
    switch (g.kind) {
      case GateKind::X:
        pending[g.w0].push_back({'x', g.w0});
        break;
      case GateKind::Z:
        pending[g.w0].push_back({'z', g.w0});
        break;
      case GateKind::H:
      case GateKind::S:
      case GateKind::A: {
        const Mat target = gate_matrix(GateId{g.kind, 0, -1, g.angle});
        auto fills = slot_fills_for(target);
        require(!fills.empty(), Errc::precondition, "gate outside the slot vocabulary");
        place_1q(g.w0, fills[rng.below(static_cast<int>(fills.size()))]);
        break;
      }
      case GateKind::Cnot:
        place_cnot(g.w0, g.w1);
        break;
      case GateKind::Cz:
        fail(Errc::precondition, "CZ is not in the user alphabet");
    }
  }

  for (int w = 0; w < W; ++w)
    trailing_flips.insert(trailing_flips.end(), pending[w].begin(), pending[w].end());

  int used_cols = 1;
  for (int w = 0; w < W; ++w) used_cols = std::max(used_cols, ceil_col(w));
  for (int col = 0; col < grid.cols; ++col)
    for (int w = 0; w < W; ++w)
      for (int l = 0; l < 3; ++l)
        if (grid.fills[col][w][l]) used_cols = std::max(used_cols, col + 1);

  int cols = used_cols;
  if (opt.pad_cols > 0) {
    require(opt.pad_cols >= used_cols, Errc::caps, "forced grid depth too small");
    cols = opt.pad_cols;
  } else if (opt.pad_cols_multiple > 1) {
    cols =
        ((used_cols + opt.pad_cols_multiple - 1) / opt.pad_cols_multiple) * opt.pad_cols_multiple;
  }
  grid.ensure(cols - 1);

  CompiledCircuit cc;
  cc.pub.protocol = 2;
  cc.pub.cascade_mode = opt.mode == CascadeMode::always_consume ? 0 : 1;
  cc.pub.num_logical = W;
  cc.pub.grid_cols = cols;
  cc.priv.inputs = resolve_inputs(c, opt);

  auto emit_flips = [&](int col, int w, int layer) {
    auto it = flips_before.find({col, w, layer});
    if (it == flips_before.end()) return;
    for (auto& [axis, wire] : it->second)
      cc.priv.steps.push_back(
          {axis == 'x' ? PrivStep::Kind::flip_x : PrivStep::Kind::flip_z, wire});
  };

  auto emit_slot = [&](int col, int w, int layer) {
    emit_flips(col, w, layer);
    const SlotFill f = grid.fills[col][w][layer].value_or(kIdFill);
    add_gadget(cc, w, f.first, rng, opt.encrypt);
    add_bob_gate(cc, SlotKind::bob_h, w);
    add_gadget(cc, w, f.mid, rng, opt.encrypt);
    add_bob_gate(cc, SlotKind::bob_h, w);
    add_gadget(cc, w, f.last, rng, opt.encrypt);
  };

  auto emit_cz_wall = [&](int col) {
    for (int a = 0; a + 1 < W; ++a)
      if (pair_in_column(col, a, W)) add_bob_gate(cc, SlotKind::bob_cz, a, a + 1);
  };

  for (int col = 0; col < cols; ++col) {
    for (int w = 0; w < W; ++w) emit_slot(col, w, 0);
    emit_cz_wall(col);
    for (int w = 0; w < W; ++w) emit_slot(col, w, 1);
    emit_cz_wall(col);
    for (int w = 0; w < W; ++w) emit_slot(col, w, 2);
  }
  for (auto& [axis, wire] : trailing_flips)
    cc.priv.steps.push_back({axis == 'x' ? PrivStep::Kind::flip_x : PrivStep::Kind::flip_z, wire});

  finish_transfers(cc, rng, opt.encrypt);
  return cc;
}

LeakageDescriptor leakage_of(const PublicCircuit& pub) {
  LeakageDescriptor d;
  d.protocol = pub.protocol;
  d.size = static_cast<int>(pub.slots.size());
  if (pub.protocol == 1) {
    d.cnot_positions.emplace();
    for (int i = 0; i < d.size; ++i) {
      const PublicSlot& s = pub.slots[i];
      if (s.kind == SlotKind::bob_cnot) d.cnot_positions->push_back({i, s.v0, s.v1});
      if (s.kind == SlotKind::bob_h) d.h_positions.push_back({i, s.v0});
    }
  } else {
    d.grid_wires = pub.num_logical;
    d.grid_cols = pub.grid_cols;
  }
  return d;
}

}  // namespace bqc
