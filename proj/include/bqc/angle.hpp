#pragma once

#include <cmath>

#include "bqc/common.hpp"

namespace bqc {

// Discrete phase angle n: theta = n*pi/4, arithmetic mod 8.
// n=0 is the identity phase, n=2 the S phase, n=4 the Z phase, n=1 the T phase.
class Angle8 {
 public:
  constexpr Angle8() : n_(0) {}
  constexpr explicit Angle8(int n) : n_(((n % 8) + 8) % 8) {}

  constexpr int n() const { return n_; }
  double radians() const { return n_ * M_PI / 4.0; }

  constexpr Angle8 operator-() const { return Angle8(8 - n_); }
  constexpr Angle8 doubled() const { return Angle8(2 * n_); }
  constexpr Angle8 operator+(Angle8 o) const { return Angle8(n_ + o.n_); }

  constexpr bool operator==(const Angle8&) const = default;

  // exp(i*n*pi/4), built from exact component values
  cd phase() const {
    static const double h = M_SQRT1_2;
    static const cd table[8] = {
        {1, 0}, {h, h}, {0, 1}, {-h, h}, {-1, 0}, {-h, -h}, {0, -1}, {h, -h}};
    return table[n_];
  }

 private:
  int n_;
};

}  // namespace bqc
