#include "bqc/circuit.hpp"

#include <fstream>
#include <sstream>

namespace bqc {

void Circuit::check() const {
  require(num_wires >= 1, Errc::precondition, "circuit needs at least one wire");
  for (const GateId& g : gates) {
    require(g.kind != GateKind::Cz, Errc::precondition, "CZ is not in the user alphabet");
    g.check(num_wires);
  }
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  fail(Errc::parse, "line " + std::to_string(line) + ": " + what);
}

int parse_int(const std::string& tok, int line, const char* what) {
  try {
    size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    parse_fail(line, std::string("bad ") + what + " '" + tok + "'");
  }
}

}  // namespace

Circuit parse_circuit(std::istream& in) {
  Circuit c;
  std::string line;
  int lineno = 0;
  int max_wire = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;

    std::vector<std::string> args;
    for (std::string tok; ls >> tok;) args.push_back(tok);

    auto need = [&](size_t n) {
      if (args.size() != n)
        parse_fail(lineno, op + " expects " + std::to_string(n) + " argument(s), got " +
                               std::to_string(args.size()));
    };

    GateId g{};
    if (op == "X" || op == "Z" || op == "H" || op == "S" || op == "T") {
      need(1);
      const int w = parse_int(args[0], lineno, "wire");
      if (op == "X") g = GateId::x(w);
      else if (op == "Z") g = GateId::z(w);
      else if (op == "H") g = GateId::h(w);
      else if (op == "S") g = GateId::s(w);
      else g = GateId::t(w);
    } else if (op == "A") {
      need(2);
      const int n = parse_int(args[0], lineno, "angle index");
      if (n < 0 || n > 7) parse_fail(lineno, "angle index must be 0..7");
      g = GateId::a(Angle8(n), parse_int(args[1], lineno, "wire"));
    } else if (op == "CNOT") {
      need(2);
      const int a = parse_int(args[0], lineno, "wire");
      const int b = parse_int(args[1], lineno, "wire");
      if (a == b) parse_fail(lineno, "CNOT needs two distinct wires");
      g = GateId::cnot(a, b);
    } else {
      parse_fail(lineno, "unknown instruction '" + op + "'");
    }

    if (g.w0 < 0 || (is_two_wire(g.kind) && g.w1 < 0)) parse_fail(lineno, "negative wire index");
    max_wire = std::max({max_wire, g.w0, g.w1});
    c.gates.push_back(g);
  }
  c.num_wires = max_wire + 1;
  if (c.num_wires == 0) c.num_wires = 1;
  c.check();
  return c;
}

Circuit parse_circuit_text(const std::string& text) {
  std::istringstream in(text);
  return parse_circuit(in);
}

Circuit parse_circuit_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::parse, "cannot open circuit file " + path);
  return parse_circuit(in);
}

std::string format_circuit(const Circuit& c) {
  std::ostringstream os;
  for (const GateId& g : c.gates) {
    switch (g.kind) {
      case GateKind::A:
        if (g.angle == Angle8(1)) os << "T " << g.w0;
        else os << "A " << g.angle.n() << ' ' << g.w0;
        break;
      case GateKind::Cnot:
        os << "CNOT " << g.w0 << ' ' << g.w1;
        break;
      default:
        os << to_string(g.kind) << ' ' << g.w0;
        break;
    }
    os << '\n';
  }
  return os.str();
}

PureState simulate(const Circuit& c, const std::vector<InputKind>& inputs) {
  require(static_cast<int>(inputs.size()) == c.num_wires, Errc::precondition,
          "input spec must cover every wire");
  std::vector<int> bits(c.num_wires, 0);
  for (int w = 0; w < c.num_wires; ++w)
    if (inputs[w] == InputKind::one) bits[w] = 1;
  PureState st = PureState::basis(c.num_wires, bits);
  for (int w = 0; w < c.num_wires; ++w)
    if (inputs[w] == InputKind::plus) st.apply(GateId::h(w));
  for (const GateId& g : c.gates) st.apply(g);
  return st;
}

PureState simulate(const Circuit& c) {
  return simulate(c, std::vector<InputKind>(c.num_wires, InputKind::zero));
}

Circuit random_circuit(int num_wires, int num_gates, Rng& rng) {
  Circuit c;
  c.num_wires = num_wires;
  for (int i = 0; i < num_gates; ++i) {
    const int pick = rng.below(num_wires >= 2 ? 7 : 6);
    const int w = rng.below(num_wires);
    switch (pick) {
      case 0: c.gates.push_back(GateId::x(w)); break;
      case 1: c.gates.push_back(GateId::z(w)); break;
      case 2: c.gates.push_back(GateId::h(w)); break;
      case 3: c.gates.push_back(GateId::s(w)); break;
      case 4: c.gates.push_back(GateId::t(w)); break;
      case 5: c.gates.push_back(GateId::a(Angle8(rng.below(8)), w)); break;
      case 6: {
        int t = rng.below(num_wires - 1);
        if (t >= w) ++t;
        c.gates.push_back(GateId::cnot(w, t));
        break;
      }
    }
  }
  return c;
}

}  // namespace bqc
