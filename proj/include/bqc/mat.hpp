#pragma once

#include <vector>

#include "bqc/angle.hpp"
#include "bqc/common.hpp"
#include "bqc/gate.hpp"

namespace bqc {

// Small dense complex matrix. Everything in this project that needs matrix
// algebra is 2x2, 4x4 or a <=16-dim density matrix, so no linear-algebra
// dependency is warranted.
struct Mat {
  int rows = 0, cols = 0;
  std::vector<cd> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  cd& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const cd& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static Mat identity(int n);
  static Mat from_rows(int r, int c, std::initializer_list<cd> vals);

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat scaled(cd s) const;
  Mat adjoint() const;
  Mat kron(const Mat& o) const;
  cd trace() const;
  double max_abs() const;
};

// max-entry distance after aligning the Frobenius-optimal global phase
double dist_up_to_phase(const Mat& u, const Mat& v);
bool equal_up_to_phase(const Mat& u, const Mat& v, double tol);

// Frobenius operator distance min over global phase, 0 for an exact match.
double op_dist_up_to_phase(const Mat& u, const Mat& v);

// Elementary gate matrices.
Mat mat_x();
Mat mat_z();
Mat mat_h();
Mat mat_s();
Mat mat_a(Angle8 n);
Mat mat_cnot();  // wire 0 = control, wire 1 = target
Mat mat_cz();
Mat mat_i(int dim = 2);

// Matrix of a GateId on its own wires (2x2 or 4x4, wire w0 first).
Mat gate_matrix(const GateId& g);

}  // namespace bqc
