#pragma once

#include <array>
#include <memory>
#include <unordered_map>
#include <vector>

#include "bqc/compile.hpp"

namespace bqc {

// ---------------------------------------------------------------------------
// Messages

enum class MsgType { qubit, announce, measured, decision, apply_z, result, done };

struct Message {
  MsgType type = MsgType::done;
  // qubit
  int label = -1;
  std::array<double, 4> amp{};  // re0, im0, re1, im1
  // announce
  PublicCircuit circuit;
  // measured / decision / apply_z
  int slot = -1;  // gadget id
  int bit = -1;
  int wire = -1;  // apply_z: virtual wire
  // result
  std::vector<int> wires;  // virtual wires in transfer order
  std::vector<cd> amps;

  bool operator==(const Message&) const = default;

  static Message qubit_msg(int label, cd a0, cd a1) {
    Message m;
    m.type = MsgType::qubit;
    m.label = label;
    m.amp = {a0.real(), a0.imag(), a1.real(), a1.imag()};
    return m;
  }
};

std::string to_string(MsgType t);

// Every message crossing the channel, annotated for the audits. For bits the
// analytic Bernoulli parameter is recorded: measurement bits carry the exact
// Born probability, decision bits 0.5 when masked by a fresh pad bit or drawn
// from Alice's sampler.
struct TranscriptEntry {
  bool to_bob = false;
  Message msg;
  double analytic_p = -1.0;
  int fresh_secret = -1;  // id of the fresh key bit masking a decision
};

struct Transcript {
  std::vector<TranscriptEntry> entries;
};

// true when both sides saw the identical message sequence
bool same_transcript(const Transcript& a, const Transcript& b);

// ---------------------------------------------------------------------------
// The server's quantum memory: transferred qubits stay independent factors
// until a two-wire gate merges them, so hundreds of pending ancillas cost
// nothing. Labels are transfer indices; a measured label disappears.

class QuantumRegister {
 public:
  void add(int label, cd a0, cd a1);
  void apply1(GateKind kind, Angle8 angle, int label);
  void apply2(GateKind kind, int label_a, int label_b);
  MeasureResult measure(int label, Rng& rng);
  double prob_one(int label) const;
  bool has(int label) const;
  int live() const;
  // joint state of the requested labels, in the requested wire order;
  // entangled stragglers not in the list are measured out first
  PureState joint(const std::vector<int>& labels, Rng& rng);

 private:
  struct Factor {
    PureState state;
    std::vector<int> labels;  // labels[i] owns wire i
    Factor() : state(1) {}
  };
  int merge(int fa, int fb);
  void drop_wire(int factor, const std::vector<int>& old_to_new);

  std::vector<Factor> factors_;
  std::unordered_map<int, std::pair<int, int>> where_;  // label -> (factor, wire)
};

// ---------------------------------------------------------------------------
// Adversary hooks (verification experiments)

struct AdversaryPolicy {
  enum class Kind {
    none,
    extra_gate,        // apply `gate` on virtual wires after gadget `slot`
    wrong_report,      // flip the reported bit of round 1 of gadget `slot`
    skip_slot,         // skip gadget `slot`'s quantum ops, fabricate bits
    random_pauli,      // after each slot, with prob `rate`, random Pauli somewhere
    tamper_one_wire,   // X,Z on one uniformly random logical wire before returning
  };
  Kind kind = Kind::none;
  GateId gate = GateId::x(0);
  int slot = -1;
  double rate = 0.0;
  uint64_t seed = 0;
};

AdversaryPolicy parse_policy(const std::string& name, uint64_t seed);

// ---------------------------------------------------------------------------
// Server session: a state machine fed one message at a time

class BobSession {
 public:
  explicit BobSession(uint64_t seed, AdversaryPolicy policy = {});

  // feed a message from the client, collect replies
  std::vector<Message> on_message(const Message& m);
  bool finished() const { return phase_ == Phase::done; }

  const std::vector<GateKind>& executed_gates() const { return executed_; }
  const std::vector<double>& measured_probs() const { return measured_probs_; }

 private:
  enum class Phase { receiving, executing, awaiting_decision, done };

  void execute_until_blocked(std::vector<Message>& out);
  void run_gadget_round2(int needed, std::vector<Message>& out);
  void finish(std::vector<Message>& out);
  int gadget_measure(int label, std::vector<Message>& out, int gadget_id);
  void apply_deviation_after_slot(int slot_index);

  Rng rng_;
  AdversaryPolicy policy_;
  Rng adv_rng_;
  QuantumRegister reg_;
  PublicCircuit circ_;
  Phase phase_ = Phase::receiving;
  size_t cursor_ = 0;  // next public slot
  std::vector<int> vbind_;  // virtual wire -> label
  int dummy_label_ = -1;
  int pending_gadget_ = -1;
  bool awaiting_z_ = false;  // faithful mode: apply_z instruction outstanding
  std::vector<GateKind> executed_;
  std::vector<double> measured_probs_;
};

// ---------------------------------------------------------------------------
// Channel between the parties (client endpoint)

class Channel {
 public:
  virtual ~Channel() = default;
  virtual void send(const Message& m) = 0;
  virtual Message recv() = 0;
};

// Synchronous in-process channel wrapping a BobSession.
class InProcessChannel : public Channel {
 public:
  explicit InProcessChannel(uint64_t bob_seed, AdversaryPolicy policy = {});
  void send(const Message& m) override;
  Message recv() override;
  BobSession& bob() { return *bob_; }

 private:
  std::unique_ptr<BobSession> bob_;
  std::vector<Message> queue_;
  size_t head_ = 0;
};

// ---------------------------------------------------------------------------
// Client driver

struct SessionConfig {
  int protocol = 2;
  uint64_t alice_seed = 1;
  uint64_t bob_seed = 2;
  CascadeMode mode = CascadeMode::always_consume;
  bool encrypt = true;
  std::vector<InputKind> inputs;  // default all-|0>
  int pad_cols = 0;
  int pad_cols_multiple = 2;
};

struct SessionResult {
  PureState output;      // decrypted joint state over the logical wires
  double fidelity = -1;  // vs the direct reference simulation
  Transcript transcript;
  CompiledCircuit compiled;
};

CompileOptions to_compile_options(const SessionConfig& cfg);

// Drive a full session as the client over an arbitrary channel.
SessionResult run_session(const Circuit& c, const SessionConfig& cfg, Channel& ch);

// Convenience: both parties in-process; also surfaces the server's gate log.
struct LocalSessionResult : SessionResult {
  std::vector<GateKind> bob_executed;
};
LocalSessionResult run_session_local(const Circuit& c, const SessionConfig& cfg,
                                     AdversaryPolicy policy = {});

}  // namespace bqc
