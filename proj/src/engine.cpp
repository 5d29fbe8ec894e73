#include "bqc/engine.hpp"

#include <algorithm>

namespace bqc {

std::string to_string(MsgType t) {
  switch (t) {
    case MsgType::qubit: return "qubit";
    case MsgType::announce: return "circuit";
    case MsgType::measured: return "measured";
    case MsgType::decision: return "decision";
    case MsgType::apply_z: return "apply_z";
    case MsgType::result: return "result";
    case MsgType::done: return "done";
  }
  return "?";
}

bool same_transcript(const Transcript& a, const Transcript& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].to_bob != b.entries[i].to_bob) return false;
    if (!(a.entries[i].msg == b.entries[i].msg)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// QuantumRegister

void QuantumRegister::add(int label, cd a0, cd a1) {
  require(!has(label), Errc::protocol, "duplicate qubit label");
  Factor f;
  f.state = PureState::single_qubit(a0, a1);
  f.labels = {label};
  where_[label] = {static_cast<int>(factors_.size()), 0};
  factors_.push_back(std::move(f));
}

bool QuantumRegister::has(int label) const { return where_.contains(label); }

int QuantumRegister::live() const { return static_cast<int>(where_.size()); }

void QuantumRegister::apply1(GateKind kind, Angle8 angle, int label) {
  require(has(label), Errc::protocol, "gate on unknown label");
  auto [f, w] = where_.at(label);
  factors_[f].state.apply(GateId{kind, w, -1, angle});
}

int QuantumRegister::merge(int fa, int fb) {
  if (fa == fb) return fa;
  Factor& a = factors_[fa];
  Factor& b = factors_[fb];
  a.state = a.state.tensor(b.state);
  const int offset = static_cast<int>(a.labels.size());
  for (size_t i = 0; i < b.labels.size(); ++i) {
    a.labels.push_back(b.labels[i]);
    where_[b.labels[i]] = {fa, offset + static_cast<int>(i)};
  }
  b.labels.clear();
  b.state = PureState(1);
  return fa;
}

void QuantumRegister::apply2(GateKind kind, int label_a, int label_b) {
  require(has(label_a) && has(label_b), Errc::protocol, "gate on unknown label");
  const int f = merge(where_.at(label_a).first, where_.at(label_b).first);
  factors_[f].state.apply(
      GateId{kind, where_.at(label_a).second, where_.at(label_b).second, Angle8()});
}

void QuantumRegister::drop_wire(int factor, const std::vector<int>& old_to_new) {
  Factor& f = factors_[factor];
  std::vector<int> labels;
  labels.reserve(f.labels.size());
  for (size_t w = 0; w < f.labels.size(); ++w) {
    if (old_to_new[w] < 0) {
      where_.erase(f.labels[w]);
    } else {
      where_[f.labels[w]] = {factor, old_to_new[w]};
    }
  }
  std::vector<int> next(f.labels.size() - 1, -1);
  for (size_t w = 0; w < f.labels.size(); ++w)
    if (old_to_new[w] >= 0) next[old_to_new[w]] = f.labels[w];
  f.labels = std::move(next);
}

MeasureResult QuantumRegister::measure(int label, Rng& rng) {
  require(has(label), Errc::protocol, "measurement on unknown label");
  auto [fi, w] = where_.at(label);
  Factor& f = factors_[fi];
  if (f.labels.size() == 1) {
    MeasureResult mr;
    mr.prob_one = f.state.prob_one(0);
    mr.bit = rng.uniform() < mr.prob_one ? 1 : 0;
    mr.old_to_new = {-1};
    where_.erase(label);
    f.labels.clear();
    f.state = PureState(1);
    return mr;
  }
  MeasureResult mr = f.state.measure(w, rng);
  drop_wire(fi, mr.old_to_new);
  return mr;
}

double QuantumRegister::prob_one(int label) const {
  require(has(label), Errc::protocol, "probe on unknown label");
  auto [f, w] = where_.at(label);
  return factors_[f].state.prob_one(w);
}

PureState QuantumRegister::joint(const std::vector<int>& labels, Rng& rng) {
  require(!labels.empty(), Errc::precondition, "empty joint request");
  // measure out entangled stragglers so the involved factors carry exactly
  // the requested labels
  std::vector<int> involved;
  for (int l : labels) {
    require(has(l), Errc::protocol, "joint over unknown label");
    const int f = where_.at(l).first;
    if (std::find(involved.begin(), involved.end(), f) == involved.end()) involved.push_back(f);
  }
  for (int f : involved) {
    std::vector<int> extras;
    for (int l : factors_[f].labels)
      if (std::find(labels.begin(), labels.end(), l) == labels.end()) extras.push_back(l);
    for (int l : extras) measure(l, rng);
  }

  involved.clear();
  for (int l : labels) {
    const int f = where_.at(l).first;
    if (std::find(involved.begin(), involved.end(), f) == involved.end()) involved.push_back(f);
  }
  PureState joint = factors_[involved[0]].state;
  std::vector<int> joint_labels = factors_[involved[0]].labels;
  for (size_t i = 1; i < involved.size(); ++i) {
    joint = joint.tensor(factors_[involved[i]].state);
    for (int l : factors_[involved[i]].labels) joint_labels.push_back(l);
  }
  std::vector<int> order(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find(joint_labels.begin(), joint_labels.end(), labels[i]);
    order[i] = static_cast<int>(it - joint_labels.begin());
  }
  return joint.reordered(order);
}

// ---------------------------------------------------------------------------
// BobSession

BobSession::BobSession(uint64_t seed, AdversaryPolicy policy)
    : rng_(seed), policy_(policy), adv_rng_(policy.seed) {}

int BobSession::gadget_measure(int label, std::vector<Message>& out, int gadget_id) {
  MeasureResult mr = reg_.measure(label, rng_);
  measured_probs_.push_back(mr.prob_one);
  int reported = mr.bit;
  if (policy_.kind == AdversaryPolicy::Kind::wrong_report && policy_.slot == gadget_id)
    reported ^= 1;
  Message m;
  m.type = MsgType::measured;
  m.slot = gadget_id;
  m.bit = reported;
  out.push_back(m);
  return mr.bit;
}

void BobSession::apply_deviation_after_slot(int slot_index) {
  const PublicSlot& s = circ_.slots[slot_index];
  if (policy_.kind == AdversaryPolicy::Kind::extra_gate && s.kind == SlotKind::gadget &&
      s.gadget_id == policy_.slot) {
    const GateId& g = policy_.gate;
    if (is_two_wire(g.kind)) {
      reg_.apply2(g.kind, vbind_.at(g.w0), vbind_.at(g.w1));
    } else {
      reg_.apply1(g.kind, g.angle, vbind_.at(g.w0));
    }
    executed_.push_back(g.kind);
  }
  if (policy_.kind == AdversaryPolicy::Kind::random_pauli && adv_rng_.uniform() < policy_.rate) {
    const int v = adv_rng_.below(circ_.num_logical);
    const int which = adv_rng_.below(3);
    if (which != 1) reg_.apply1(GateKind::X, Angle8(), vbind_[v]);  // X or Y
    if (which != 0) reg_.apply1(GateKind::Z, Angle8(), vbind_[v]);  // Z or Y
  }
}

std::vector<Message> BobSession::on_message(const Message& m) {
  std::vector<Message> out;
  switch (phase_) {
    case Phase::receiving: {
      if (m.type == MsgType::qubit) {
        require(m.label >= 0, Errc::protocol, "bad qubit label");
        reg_.add(m.label, cd{m.amp[0], m.amp[1]}, cd{m.amp[2], m.amp[3]});
        break;
      }
      if (m.type == MsgType::announce) {
        circ_ = m.circuit;
        require(reg_.live() == circ_.num_transfers, Errc::protocol,
                "announced circuit does not match the transferred qubits");
        vbind_.resize(circ_.num_logical);
        for (int v = 0; v < circ_.num_logical; ++v) vbind_[v] = v;
        dummy_label_ = circ_.dummy_transfer;
        phase_ = Phase::executing;
        execute_until_blocked(out);
        break;
      }
      fail(Errc::protocol, "unexpected " + to_string(m.type) + " before the circuit");
    }
    case Phase::awaiting_decision: {
      if (m.type == MsgType::decision) {
        require(m.slot == pending_gadget_, Errc::protocol, "decision for the wrong slot");
        require(!awaiting_z_, Errc::protocol, "expected apply_z");
        run_gadget_round2(m.bit, out);
        if (!awaiting_z_) {
          phase_ = Phase::executing;
          apply_deviation_after_slot(static_cast<int>(cursor_));
          ++cursor_;
          pending_gadget_ = -1;
          execute_until_blocked(out);
        }
        break;
      }
      if (m.type == MsgType::apply_z) {
        require(awaiting_z_, Errc::protocol, "unsolicited apply_z");
        if (m.bit) {
          reg_.apply1(GateKind::Z, Angle8(), vbind_.at(m.wire));
          executed_.push_back(GateKind::Z);
        }
        awaiting_z_ = false;
        phase_ = Phase::executing;
        apply_deviation_after_slot(static_cast<int>(cursor_));
        ++cursor_;
        pending_gadget_ = -1;
        execute_until_blocked(out);
        break;
      }
      fail(Errc::protocol, "unexpected " + to_string(m.type) + " during a gadget");
    }
    case Phase::executing:
      fail(Errc::protocol, "unexpected " + to_string(m.type) + " while executing");
    case Phase::done: {
      require(m.type == MsgType::done, Errc::protocol, "session already finished");
      break;
    }
  }
  return out;
}

void BobSession::execute_until_blocked(std::vector<Message>& out) {
  while (cursor_ < circ_.slots.size()) {
    const PublicSlot& s = circ_.slots[cursor_];
    switch (s.kind) {
      case SlotKind::bob_h:
        reg_.apply1(GateKind::H, Angle8(), vbind_.at(s.v0));
        executed_.push_back(GateKind::H);
        break;
      case SlotKind::bob_cnot:
        require(circ_.protocol == 1, Errc::protocol, "CNOT slot outside protocol 1");
        reg_.apply2(GateKind::Cnot, vbind_.at(s.v0), vbind_.at(s.v1));
        executed_.push_back(GateKind::Cnot);
        break;
      case SlotKind::bob_cz:
        require(circ_.protocol == 2, Errc::protocol, "CZ slot outside protocol 2");
        reg_.apply2(GateKind::Cz, vbind_.at(s.v0), vbind_.at(s.v1));
        executed_.push_back(GateKind::Cz);
        break;
      case SlotKind::gadget: {
        pending_gadget_ = s.gadget_id;
        if (policy_.kind == AdversaryPolicy::Kind::skip_slot && policy_.slot == s.gadget_id) {
          measured_probs_.push_back(-1.0);
          Message fake;
          fake.type = MsgType::measured;
          fake.slot = s.gadget_id;
          fake.bit = adv_rng_.bit();
          out.push_back(fake);
        } else {
          reg_.apply2(GateKind::Cnot, s.anc1, vbind_.at(s.v0));
          executed_.push_back(GateKind::Cnot);
          gadget_measure(vbind_.at(s.v0), out, s.gadget_id);
        }
        phase_ = Phase::awaiting_decision;
        return;
      }
    }
    apply_deviation_after_slot(static_cast<int>(cursor_));
    ++cursor_;
  }
  finish(out);
}

void BobSession::run_gadget_round2(int needed, std::vector<Message>& out) {
  const PublicSlot& s = circ_.slots[cursor_];
  const bool skipped =
      policy_.kind == AdversaryPolicy::Kind::skip_slot && policy_.slot == s.gadget_id;
  const bool faithful = circ_.cascade_mode == 1;

  if (needed) {
    if (skipped) {
      measured_probs_.push_back(-1.0);
      Message fake;
      fake.type = MsgType::measured;
      fake.slot = s.gadget_id;
      fake.bit = adv_rng_.bit();
      out.push_back(fake);
    } else {
      reg_.apply2(GateKind::Cnot, s.anc2, s.anc1);
      executed_.push_back(GateKind::Cnot);
      gadget_measure(s.anc1, out, s.gadget_id);
    }
    vbind_.at(s.v0) = s.anc2;
    if (faithful) awaiting_z_ = true;
    return;
  }

  // round 1 was fine; the logical qubit stays on the first ancilla
  vbind_.at(s.v0) = s.anc1;
  if (faithful) return;  // correction ancilla left unused
  if (skipped) {
    measured_probs_.push_back(-1.0);
    Message fake;
    fake.type = MsgType::measured;
    fake.slot = s.gadget_id;
    fake.bit = adv_rng_.bit();
    out.push_back(fake);
  } else {
    // spend the correction ancilla against the dummy qubit
    reg_.apply2(GateKind::Cnot, s.anc2, dummy_label_);
    executed_.push_back(GateKind::Cnot);
    gadget_measure(dummy_label_, out, s.gadget_id);
  }
  dummy_label_ = s.anc2;
}

void BobSession::finish(std::vector<Message>& out) {
  if (policy_.kind == AdversaryPolicy::Kind::tamper_one_wire) {
    const int v = adv_rng_.below(circ_.num_logical);
    reg_.apply1(GateKind::X, Angle8(), vbind_[v]);
    reg_.apply1(GateKind::Z, Angle8(), vbind_[v]);
  }
  if (policy_.kind == AdversaryPolicy::Kind::extra_gate && policy_.slot < 0) {
    const GateId& g = policy_.gate;
    if (is_two_wire(g.kind)) {
      reg_.apply2(g.kind, vbind_.at(g.w0), vbind_.at(g.w1));
    } else {
      reg_.apply1(g.kind, g.angle, vbind_.at(g.w0));
    }
  }
  Message m;
  m.type = MsgType::result;
  m.wires = circ_.outputs;
  std::vector<int> labels;
  labels.reserve(m.wires.size());
  for (int v : m.wires) labels.push_back(vbind_.at(v));
  PureState joint = reg_.joint(labels, rng_);
  m.amps.assign(joint.amplitudes().begin(), joint.amplitudes().end());
  out.push_back(m);
  phase_ = Phase::done;
}

// ---------------------------------------------------------------------------
// InProcessChannel

InProcessChannel::InProcessChannel(uint64_t bob_seed, AdversaryPolicy policy)
    : bob_(std::make_unique<BobSession>(bob_seed, policy)) {}

void InProcessChannel::send(const Message& m) {
  auto replies = bob_->on_message(m);
  queue_.insert(queue_.end(), replies.begin(), replies.end());
}

Message InProcessChannel::recv() {
  require(head_ < queue_.size(), Errc::protocol, "server produced no reply");
  return queue_[head_++];
}

// ---------------------------------------------------------------------------
// Alice

CompileOptions to_compile_options(const SessionConfig& cfg) {
  CompileOptions opt;
  opt.mode = cfg.mode;
  opt.encrypt = cfg.encrypt;
  opt.inputs = cfg.inputs;
  opt.pad_cols = cfg.pad_cols;
  opt.pad_cols_multiple = cfg.pad_cols_multiple;
  return opt;
}

namespace {

PureState transfer_state(const CompiledCircuit& cc, int label) {
  PureState st(1);
  if (label < cc.pub.num_logical) {
    switch (cc.priv.inputs[label]) {
      case InputKind::zero: break;
      case InputKind::one: st.apply(GateId::x(0)); break;
      case InputKind::plus: st.apply(GateId::h(0)); break;
    }
  } else if (label == cc.pub.dummy_transfer) {
    // |0> filler qubit
  } else {
    const int g = (label - cc.pub.num_logical - 1) / 2;
    const bool second = ((label - cc.pub.num_logical - 1) % 2) == 1;
    const Angle8 angle = second ? cc.priv.gadgets[g].angle.doubled() : cc.priv.gadgets[g].angle;
    st = prepare_a_state(angle);
  }
  const KeyBits k = cc.priv.transfer_keys[label];
  if (k.z) st.apply(GateId::z(0));
  if (k.x) st.apply(GateId::x(0));
  return st;
}

void check_alphabet(const PublicCircuit& pub) {
  for (const PublicSlot& s : pub.slots) {
    const bool ok = s.kind == SlotKind::gadget || s.kind == SlotKind::bob_h ||
                    (pub.protocol == 1 && s.kind == SlotKind::bob_cnot) ||
                    (pub.protocol == 2 && s.kind == SlotKind::bob_cz);
    require(ok, Errc::protocol, "instruction outside the server alphabet");
  }
}

}  // namespace

SessionResult run_session(const Circuit& c, const SessionConfig& cfg, Channel& ch) {
  c.check();
  require(cfg.protocol == 1 || cfg.protocol == 2, Errc::precondition, "protocol must be 1 or 2");
  Rng arng(cfg.alice_seed);
  CompiledCircuit cc = cfg.protocol == 1 ? compile_weak_blind(c, arng, to_compile_options(cfg))
                                         : compile_blind(c, arng, to_compile_options(cfg));
  check_alphabet(cc.pub);

  SessionResult res;
  auto send = [&](const Message& m, double p = -1.0, int fresh = -1) {
    res.transcript.entries.push_back({true, m, p, fresh});
    ch.send(m);
  };
  auto recv_typed = [&](MsgType t) {
    Message m = ch.recv();
    require(m.type == t, Errc::protocol,
            "expected " + to_string(t) + ", got " + to_string(m.type));
    res.transcript.entries.push_back({false, m, m.type == MsgType::measured ? 0.5 : -1.0, -1});
    return m;
  };

  for (int label = 0; label < cc.pub.num_transfers; ++label) {
    PureState st = transfer_state(cc, label);
    send(Message::qubit_msg(label, st.amp(0), st.amp(1)));
  }
  {
    Message m;
    m.type = MsgType::announce;
    m.circuit = cc.pub;
    send(m);
  }

  KeyFrame frame(cc.pub.num_logical);
  for (int v = 0; v < cc.pub.num_logical; ++v) frame.key(v) = cc.priv.transfer_keys[v];

  for (const PrivStep& step : cc.priv.steps) {
    if (step.kind == PrivStep::Kind::flip_x) {
      frame.key(step.arg).x ^= 1;
      continue;
    }
    if (step.kind == PrivStep::Kind::flip_z) {
      frame.key(step.arg).z ^= 1;
      continue;
    }
    const PublicSlot& s = cc.pub.slots[step.arg];
    switch (s.kind) {
      case SlotKind::bob_h:
        update_for_gate(frame, GateId::h(s.v0));
        break;
      case SlotKind::bob_cnot:
        update_for_gate(frame, GateId::cnot(s.v0, s.v1));
        break;
      case SlotKind::bob_cz:
        update_for_gate(frame, GateId::cz(s.v0, s.v1));
        break;
      case SlotKind::gadget: {
        const GadgetSecret& sec = cc.priv.gadgets[s.gadget_id];
        const int v = s.v0;
        Message m1 = recv_typed(MsgType::measured);
        require(m1.slot == s.gadget_id, Errc::protocol, "report for the wrong slot");
        const int c1 = m1.bit;
        const int flipped1 = sec.anc1_keys.x ^ c1 ^ frame.key(v).x;
        const int needed = sec.sample_reply ? arng.bit() : flipped1;
        {
          Message d;
          d.type = MsgType::decision;
          d.slot = s.gadget_id;
          d.bit = needed;
          send(d, 0.5, sec.sample_reply ? -2 : s.gadget_id);
        }
        frame.key(v).x ^= c1;
        frame.key(v).z ^= sec.anc1_keys.z;
        if (needed) {
          Message m2 = recv_typed(MsgType::measured);
          require(m2.slot == s.gadget_id, Errc::protocol, "report for the wrong slot");
          const int c2 = m2.bit;
          const int flipped2 = sec.anc2_keys.x ^ c2 ^ frame.key(v).x;
          frame.key(v).x ^= c2;
          frame.key(v).z ^= sec.anc2_keys.z;
          const int z_extra = flipped2 & sec.angle.n() & 1;
          if (cfg.mode == CascadeMode::always_consume) {
            frame.key(v).z ^= z_extra;
          } else {
            Message az;
            az.type = MsgType::apply_z;
            az.slot = s.gadget_id;
            az.wire = v;
            az.bit = z_extra;
            send(az, (sec.angle.n() & 1) ? 0.5 : 0.0);
          }
        } else if (cfg.mode == CascadeMode::always_consume) {
          Message m2 = recv_typed(MsgType::measured);
          require(m2.slot == s.gadget_id, Errc::protocol, "report for the wrong slot");
          // dummy-consumption bit; carries no frame information
        }
        break;
      }
    }
  }

  Message result = recv_typed(MsgType::result);
  require(result.wires == cc.pub.outputs, Errc::protocol, "result covers the wrong wires");
  PureState out =
      PureState::from_amplitudes(static_cast<int>(result.wires.size()), result.amps, 1e-9);
  for (size_t i = 0; i < result.wires.size(); ++i) {
    const KeyBits k = frame.key(result.wires[i]);
    if (k.x) out.apply(GateId::x(static_cast<int>(i)));
    if (k.z) out.apply(GateId::z(static_cast<int>(i)));
  }
  {
    Message d;
    d.type = MsgType::done;
    send(d);
  }

  res.output = out;
  res.compiled = std::move(cc);
  PureState direct = simulate(c, res.compiled.priv.inputs);
  res.fidelity = PureState::fidelity_up_to_phase(res.output, direct);
  return res;
}

LocalSessionResult run_session_local(const Circuit& c, const SessionConfig& cfg,
                                     AdversaryPolicy policy) {
  InProcessChannel ch(cfg.bob_seed, policy);
  LocalSessionResult res;
  static_cast<SessionResult&>(res) = run_session(c, cfg, ch);
  res.bob_executed = ch.bob().executed_gates();

  // every honest report bit sits at exactly 1/2
  if (policy.kind == AdversaryPolicy::Kind::none) {
    for (double p : ch.bob().measured_probs()) {
      require(std::abs(p - 0.5) <= kAlgebraTol, Errc::precondition,
              "teleport report bit drifted from 1/2");
    }
  }
  return res;
}

AdversaryPolicy parse_policy(const std::string& name, uint64_t seed) {
  AdversaryPolicy p;
  p.seed = seed;
  if (name == "none") {
    p.kind = AdversaryPolicy::Kind::none;
  } else if (name == "tamper_one_wire") {
    p.kind = AdversaryPolicy::Kind::tamper_one_wire;
  } else if (name == "wrong_report") {
    p.kind = AdversaryPolicy::Kind::wrong_report;
    p.slot = 0;
  } else if (name == "skip_slot") {
    p.kind = AdversaryPolicy::Kind::skip_slot;
    p.slot = 0;
  } else if (name == "random_pauli") {
    p.kind = AdversaryPolicy::Kind::random_pauli;
    p.rate = 0.05;
  } else if (name == "extra_x") {
    p.kind = AdversaryPolicy::Kind::extra_gate;
    p.gate = GateId::x(0);
    p.slot = -1;
  } else if (name == "extra_z") {
    p.kind = AdversaryPolicy::Kind::extra_gate;
    p.gate = GateId::z(0);
    p.slot = -1;
  } else {
    fail(Errc::parse, "unknown adversary policy '" + name + "'");
  }
  return p;
}

}  // namespace bqc
