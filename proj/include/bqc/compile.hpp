#pragma once

#include <array>
#include <optional>
#include <vector>

#include "bqc/circuit.hpp"
#include "bqc/frame.hpp"
#include "bqc/gadget.hpp"
#include "bqc/mat.hpp"

namespace bqc {

// ---------------------------------------------------------------------------
// T-like words and the eight rotation axes

enum class TLike { T, Tdag, T3, T3dag, H };

// Matrix-product order: word[0] * word[1] * ... (the rightmost letter acts
// on the state first).
using TLikeWord = std::vector<TLike>;

Mat tlike_matrix(TLike g);
Mat word_matrix(const TLikeWord& word);
Angle8 tlike_angle(TLike g);  // phase-gate letters only

struct AxisAngle {
  std::array<double, 3> axis;  // unit Bloch vector, sign per extractor convention
  double angle;                // rotation angle in (0, 2 pi)
};

// Extracts the rotation axis of a length-4 word from the traceless part of
// its SU(2) representative. Errors when the word is not a proper rotation.
AxisAngle table1_axis(const TLikeWord& word);

struct TableRow {
  TLikeWord word;
  std::array<double, 3> reference_axis;  // unnormalized, as tabulated
};
const std::vector<TableRow>& table1_rows();  // the eight canonical rows

// |cos| of the angle between two directions (sign- and scale-insensitive)
double direction_match(const std::array<double, 3>& a, const std::array<double, 3>& b);

// ---------------------------------------------------------------------------
// Bounded synthesis over {H, A(1), A(3), A(5), A(7)}

inline constexpr int kApproxDepthCap = 12;

struct ApproxResult {
  TLikeWord word;
  double distance;  // Frobenius distance min over global phase
};

ApproxResult approximate_single_qubit(const Mat& target, int depth_budget);

// ---------------------------------------------------------------------------
// Hidden single-qubit slots and bricks

// A fixed-shape rotation unit: the server executes
//   [gadget, H, gadget, H, gadget]
// and only the hidden angles differ between fillings. The realized gate is
// A(last) * H * A(mid) * H * A(first), i.e. a Z-X-Z Euler rotation in
// quarter-pi steps (the X factor is the H-conjugated phase gate).
struct SlotFill {
  Angle8 first, mid, last;
  bool operator==(const SlotFill&) const = default;
};

Mat slot_matrix(const SlotFill& f);

// All 8^3 fillings whose slot matrix equals the target up to phase.
std::vector<SlotFill> slot_fills_for(const Mat& target, double tol = 1e-9);

enum class BrickRole { identity, cnot, cnot_reversed };

// Two-wire block [1q layer, CZ, 1q layer, CZ, 1q layer] with one slot per
// wire per layer. Identity and CNOT fillings have identical shape.
struct BrickSpec {
  BrickRole role;
  SlotFill fill[3][2];  // [layer][wire in pair]
};

BrickSpec make_brick(BrickRole role);
Mat brick_matrix(const BrickSpec& b);  // composed 4x4, oracle for tests

// ---------------------------------------------------------------------------
// Compiled circuits

enum class SlotKind { bob_h, bob_cnot, bob_cz, gadget };

struct PublicSlot {
  SlotKind kind;
  int v0 = -1, v1 = -1;  // virtual wires
  int gadget_id = -1;    // dense id for gadget slots
  int anc1 = -1, anc2 = -1;  // transfer labels of the two ancillas
  bool operator==(const PublicSlot&) const = default;
};

// Everything the server is shown. Transfer labels are positional: labels
// 0..num_logical-1 are the inputs bound to virtual wires, then the dummy,
// then two ancillas per gadget in gadget order.
struct PublicCircuit {
  int protocol = 1;
  int cascade_mode = 0;  // 0: always consume, 1: faithful skip
  int num_logical = 0;
  int num_transfers = 0;
  int dummy_transfer = -1;
  int grid_cols = 0;  // protocol 2 padded depth (0 for protocol 1)
  std::vector<PublicSlot> slots;
  std::vector<int> outputs;
  bool operator==(const PublicCircuit&) const = default;
};

struct GadgetSecret {
  Angle8 angle;        // primary ancilla angle; correction is doubled
  KeyBits anc1_keys;
  KeyBits anc2_keys;
  bool sample_reply = false;  // zero-angle slots: Alice samples the decision
};

struct PrivStep {
  enum class Kind { pub_slot, flip_x, flip_z };
  Kind kind;
  int arg;  // pub_slot: slot index; flips: virtual wire
};

struct PrivateProgram {
  std::vector<PrivStep> steps;
  std::vector<GadgetSecret> gadgets;     // by gadget id
  std::vector<KeyBits> transfer_keys;    // pad per transfer label
  std::vector<InputKind> inputs;         // initial state per logical wire
};

struct CompiledCircuit {
  PublicCircuit pub;
  PrivateProgram priv;
};

struct LeakageDescriptor {
  int protocol = 0;
  int size = 0;  // public slot count
  // protocol 1: the visible Clifford skeleton
  std::optional<std::vector<std::array<int, 3>>> cnot_positions;  // (slot, v0, v1)
  std::vector<std::array<int, 2>> h_positions;                    // (slot, v)
  // protocol 2: the padded grid is all that shows
  int grid_wires = 0, grid_cols = 0;
  bool operator==(const LeakageDescriptor&) const = default;
};

LeakageDescriptor leakage_of(const PublicCircuit& pub);

struct CompileOptions {
  CascadeMode mode = CascadeMode::always_consume;
  bool encrypt = true;          // diagnostics may zero every pad
  std::vector<InputKind> inputs;  // per user wire; default all |0>
  int pad_cols = 0;             // protocol 2: force a grid depth (0 = derive)
  int pad_cols_multiple = 2;    // protocol 2: round derived depth up
  int max_logical = kMaxWires - 3;  // leave room for dummy + 2 live ancillas
};

// Protocol 1: phase gates hide behind teleport gadgets; H and CNOT run at the
// server and their positions leak.
CompiledCircuit compile_weak_blind(const Circuit& c, Rng& rng, const CompileOptions& opt = {});

// Protocol 2: staggered CZ brickwork of fixed-shape slots; only the padded
// grid size leaks.
CompiledCircuit compile_blind(const Circuit& c, Rng& rng, const CompileOptions& opt = {});

// CNOT between distant wires as a chain of adjacent ones.
std::vector<GateId> adjacentize_cnot(int control, int target);

}  // namespace bqc
