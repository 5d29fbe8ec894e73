#include "bqc/gadget.hpp"

#include "bqc/circuit.hpp"
#include "doctest.h"

using namespace bqc;

namespace {

PureState random_state(int wires, Rng& rng) {
  PureState st(wires);
  for (int i = 0; i < 3 * wires; ++i) {
    st.apply(GateId::h(rng.below(wires)));
    st.apply(GateId::a(Angle8(rng.below(8)), rng.below(wires)));
    if (wires > 1) {
      int c = rng.below(wires), t = rng.below(wires - 1);
      if (t >= c) ++t;
      st.apply(GateId::cnot(c, t));
    }
  }
  return st;
}

}  // namespace

TEST_CASE("teleport_a applies the signed angle and reports the desired bit") {
  Rng rng(3);
  for (int n = 0; n < 8; ++n) {
    for (int bits = 0; bits < 16; ++bits) {
      const int a = bits & 1, b = (bits >> 1) & 1, x = (bits >> 2) & 1, c = (bits >> 3) & 1;
      PureState psi = random_state(1, rng);
      PureState enc = psi;
      if (x) enc.apply(GateId::x(0));

      AncillaSpec anc{Angle8(n), {a, b}, AncillaSpec::Purpose::primary};
      Outcomes out(std::vector<int>{c});
      TeleportResult r = teleport_a(enc, 0, anc, x, out);

      CHECK(r.outcome == c);
      CHECK(r.desired == ((a ^ c ^ x) == 0));
      CHECK(std::abs(r.prob_one - 0.5) <= kAlgebraTol);
      CHECK(r.logical_wire == 0);

      // applied operator on the logical content: X^(x^c) Z^b A_{(-1)^(a^c^x) n}
      PureState want = psi;
      const int flip = a ^ c ^ x;
      want.apply(GateId::a(Angle8(flip ? 8 - n : n), 0));
      if (b) want.apply(GateId::z(0));
      if (x ^ c) want.apply(GateId::x(0));
      CHECK(PureState::fidelity_up_to_phase(enc, want) >= 1.0 - kCircuitTol);
    }
  }
}

TEST_CASE("trap angle teleports the identity regardless of outcomes") {
  Rng rng(5);
  for (int c : {0, 1}) {
    PureState psi = random_state(1, rng);
    PureState enc = psi;
    AncillaSpec anc = AncillaSpec::primary(Angle8(0), rng);
    Outcomes out(std::vector<int>{c});
    TeleportResult r = teleport_a(enc, 0, anc, 0, out);
    // undo the reported pad toggles
    if (anc.keys.z) enc.apply(GateId::z(0));
    if (r.outcome) enc.apply(GateId::x(0));
    CHECK(PureState::fidelity_up_to_phase(enc, psi) >= 1.0 - kCircuitTol);
  }
}

TEST_CASE("cascade realizes A(n) on every branch, every key, both modes") {
  Rng rng(7);
  for (CascadeMode mode : {CascadeMode::always_consume, CascadeMode::faithful_skip}) {
    for (int n = 0; n < 8; ++n) {
      for (int keys = 0; keys < 64; ++keys) {
        const int x = keys & 1, z = (keys >> 1) & 1;
        const int a1 = (keys >> 2) & 1, b1 = (keys >> 3) & 1;
        const int a2 = (keys >> 4) & 1, b2 = (keys >> 5) & 1;
        for (int c1 : {0, 1}) {
          for (int c2 : {0, 1}) {
            PureState psi = random_state(1, rng);
            KeyFrame f(1);
            f.key(0) = {x, z};
            PureState enc = psi;
            encrypt(enc, f);

            AncillaSpec p{Angle8(n), {a1, b1}, AncillaSpec::Purpose::primary};
            AncillaSpec c{Angle8(n).doubled(), {a2, b2}, AncillaSpec::Purpose::correction};
            Outcomes out(std::vector<int>{c1, c2});
            CascadeOutcome co = run_cascade(enc, 0, Angle8(n), p, c, x, out, mode);

            CHECK(co.round1_bit == c1);
            CHECK(co.round1_desired == ((a1 ^ c1 ^ x) == 0));
            CHECK(co.round2_bit.has_value() == !co.round1_desired);
            if (mode == CascadeMode::always_consume)
              CHECK(co.consumed_bit.has_value() == co.round1_desired);
            for (double pr : co.probs) CHECK(std::abs(pr - 0.5) <= kAlgebraTol);

            KeyFrame g(1);
            g.key(0) = {x ^ co.frame_delta.x, z ^ co.frame_delta.z};
            decrypt(enc, g);
            PureState want = psi;
            want.apply(GateId::a(Angle8(n), 0));
            CHECK(PureState::fidelity_up_to_phase(enc, want) >= 1.0 - kCircuitTol);
          }
        }
      }
    }
  }
}

TEST_CASE("cascade shape: two ancillas spent, two bits emitted, on every branch") {
  Rng rng(11);
  for (int c1 : {0, 1}) {
    for (int c2 : {0, 1}) {
      PureState enc = random_state(1, rng);
      const int wires_before = enc.num_wires();
      AncillaSpec p = AncillaSpec::primary(Angle8(1), rng);
      AncillaSpec c = AncillaSpec::correction(Angle8(1), rng);
      Outcomes out(std::vector<int>{c1, c2});
      CascadeOutcome co =
          run_cascade(enc, 0, Angle8(1), p, c, 0, out, CascadeMode::always_consume);
      CHECK(enc.num_wires() == wires_before);  // +2 ancillas, -2 measurements
      CHECK(co.probs.size() == 2);
      CHECK((co.round2_bit.has_value() || co.consumed_bit.has_value()));
    }
  }
}

TEST_CASE("cascade with a dummy wire keeps the logical wire untouched on consume") {
  Rng rng(13);
  for (int c1c2 = 0; c1c2 < 4; ++c1c2) {
    PureState psi = random_state(1, rng);
    // wire 0: logical (unencrypted for clarity), wire 1: dummy |0> padded
    PureState st = psi.tensor(PureState(1));
    AncillaSpec p{Angle8(2), {0, 0}, AncillaSpec::Purpose::primary};
    AncillaSpec c{Angle8(4), {0, 0}, AncillaSpec::Purpose::correction};
    Outcomes out(std::vector<int>{c1c2 & 1, (c1c2 >> 1) & 1});
    CascadeOutcome co = run_cascade(st, 0, Angle8(2), p, c, 0, out,
                                    CascadeMode::always_consume, 1);
    CHECK(st.num_wires() == 2);
    CHECK(co.dummy_wire >= 0);
    CHECK(co.dummy_wire != co.logical_wire);

    KeyFrame g(2);
    g.key(co.logical_wire) = {co.frame_delta.x, co.frame_delta.z};
    decrypt(st, g);
    // project out the dummy and compare the logical wire
    st.project(co.dummy_wire, st.prob_one(co.dummy_wire) > 0.5 ? 1 : 0);
    PureState want = psi;
    want.apply(GateId::s(0));
    CHECK(PureState::fidelity_up_to_phase(st, want) >= 1.0 - kCircuitTol);
  }
}

TEST_CASE("cascade on a wire entangled with a bystander") {
  Rng rng(17);
  for (int c1 : {0, 1}) {
    for (int c2 : {0, 1}) {
      PureState psi = random_state(2, rng);  // entangled pair
      KeyFrame f = KeyFrame::random(2, rng);
      PureState enc = psi;
      encrypt(enc, f);

      const Angle8 n(3);
      AncillaSpec p = AncillaSpec::primary(n, rng);
      AncillaSpec c = AncillaSpec::correction(n, rng);
      Outcomes out(std::vector<int>{c1, c2});
      CascadeOutcome co =
          run_cascade(enc, 1, n, p, c, f.key(1).x, out, CascadeMode::always_consume);

      // bystander keeps index 0; the logical qubit lands back on index 1
      CHECK(co.logical_wire == 1);
      KeyFrame g(2);
      g.key(0) = f.key(0);
      g.key(1) = {f.key(1).x ^ co.frame_delta.x, f.key(1).z ^ co.frame_delta.z};
      decrypt(enc, g);
      PureState want = psi;
      want.apply(GateId::a(n, 1));
      CHECK(PureState::fidelity_up_to_phase(enc, want) >= 1.0 - kCircuitTol);
    }
  }
}

TEST_CASE("desired bit is a ^ c ^ x over all eight combinations") {
  Rng rng(19);
  for (int bits = 0; bits < 8; ++bits) {
    const int a = bits & 1, c = (bits >> 1) & 1, x = (bits >> 2) & 1;
    PureState enc = random_state(1, rng);
    if (x) enc.apply(GateId::x(0));
    AncillaSpec anc{Angle8(5), {a, rng.bit()}, AncillaSpec::Purpose::primary};
    Outcomes out(std::vector<int>{c});
    TeleportResult r = teleport_a(enc, 0, anc, x, out);
    CHECK(r.desired == ((a ^ c ^ x) == 0));
  }
}

TEST_CASE("discharge of a pending S correction") {
  Rng rng(23);

  // s_bit = 0: state unchanged up to frame
  {
    PureState psi = random_state(1, rng);
    PureState st = psi;
    KeyFrame f(1);
    Outcomes out(rng);
    discharge_s_correction(st, f, 0, out, rng);
    decrypt(st, f);
    CHECK(PureState::fidelity_up_to_phase(st, psi) >= 1.0 - kCircuitTol);
  }

  // s_bit = 1 on |+>: S|+> = (|0> + i|1>)/sqrt(2)
  {
    PureState plus(1);
    plus.apply(GateId::h(0));
    PureState st = plus;
    st.apply(GateId::s(0));  // the pending S physically present on the state
    KeyFrame f(1);
    f.s_pending(0) = 1;
    Outcomes out(rng);
    discharge_s_correction(st, f, 0, out, rng);
    CHECK(f.any_s_pending() == false);
    decrypt(st, f);
    CHECK(PureState::fidelity_up_to_phase(st, plus) >= 1.0 - kCircuitTol);
  }

  // exhaustive outcome pairs: net operator is S times the tracked pad
  for (int c1 : {0, 1}) {
    for (int c2 : {0, 1}) {
      PureState psi = random_state(1, rng);
      PureState st = psi;
      st.apply(GateId::s(0));
      KeyFrame f = KeyFrame::random(1, rng);
      f.s_pending(0) = 1;
      encrypt(st, f);
      Outcomes out(std::vector<int>{c1, c2});
      discharge_s_correction(st, f, 0, out, rng);
      decrypt(st, f);
      CHECK(PureState::fidelity_up_to_phase(st, psi) >= 1.0 - kCircuitTol);
    }
  }
}
