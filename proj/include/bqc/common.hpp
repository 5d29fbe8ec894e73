#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace bqc {

using cd = std::complex<double>;

// Dense state vectors only; beyond this the desk-scale budget is gone.
inline constexpr int kMaxWires = 14;

inline constexpr double kAlgebraTol = 1e-12;   // algebraic identities
inline constexpr double kCircuitTol = 1e-10;   // composed-circuit fidelities

enum class Errc {
  precondition,
  parse,
  protocol,
  transport,
  caps,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool ok, Errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace bqc
