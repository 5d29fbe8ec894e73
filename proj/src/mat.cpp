#include "bqc/mat.hpp"

#include <algorithm>
#include <cmath>

namespace bqc {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Mat Mat::from_rows(int r, int c, std::initializer_list<cd> vals) {
  Mat m(r, c);
  m.a.assign(vals);
  require(static_cast<int>(m.a.size()) == r * c, Errc::precondition, "matrix literal size");
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  require(cols == o.rows, Errc::precondition, "matrix product shape");
  Mat r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      cd v = at(i, k);
      if (v == cd{}) continue;
      for (int j = 0; j < o.cols; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  Mat r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  Mat r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
  return r;
}

Mat Mat::scaled(cd s) const {
  Mat r = *this;
  for (auto& v : r.a) v *= s;
  return r;
}

Mat Mat::adjoint() const {
  Mat r(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r.at(j, i) = std::conj(at(i, j));
  return r;
}

Mat Mat::kron(const Mat& o) const {
  Mat r(rows * o.rows, cols * o.cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      for (int k = 0; k < o.rows; ++k)
        for (int l = 0; l < o.cols; ++l)
          r.at(i * o.rows + k, j * o.cols + l) = at(i, j) * o.at(k, l);
  return r;
}

cd Mat::trace() const {
  cd t = 0;
  for (int i = 0; i < std::min(rows, cols); ++i) t += at(i, i);
  return t;
}

double Mat::max_abs() const {
  double m = 0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

double dist_up_to_phase(const Mat& u, const Mat& v) {
  cd t = (v.adjoint() * u).trace();
  cd phase = std::abs(t) > 1e-300 ? t / std::abs(t) : cd{1, 0};
  return (u - v.scaled(phase)).max_abs();
}

bool equal_up_to_phase(const Mat& u, const Mat& v, double tol) {
  return dist_up_to_phase(u, v) <= tol;
}

double op_dist_up_to_phase(const Mat& u, const Mat& v) {
  // ||u - e^{i phi} v||_F minimized at phi = arg tr(v^dag u)
  double uu = 0, vv = 0;
  for (const auto& x : u.a) uu += std::norm(x);
  for (const auto& x : v.a) vv += std::norm(x);
  double cross = std::abs((v.adjoint() * u).trace());
  double d2 = uu + vv - 2.0 * cross;
  return std::sqrt(std::max(0.0, d2));
}

Mat mat_x() { return Mat::from_rows(2, 2, {0, 1, 1, 0}); }
Mat mat_z() { return Mat::from_rows(2, 2, {1, 0, 0, -1}); }

Mat mat_h() {
  const double h = M_SQRT1_2;
  return Mat::from_rows(2, 2, {h, h, h, -h});
}

Mat mat_s() { return mat_a(Angle8(2)); }

Mat mat_a(Angle8 n) { return Mat::from_rows(2, 2, {1, 0, 0, n.phase()}); }

Mat mat_cnot() {
  return Mat::from_rows(4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
}

Mat mat_cz() {
  return Mat::from_rows(4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1});
}

Mat mat_i(int dim) { return Mat::identity(dim); }

Mat gate_matrix(const GateId& g) {
  switch (g.kind) {
    case GateKind::X: return mat_x();
    case GateKind::Z: return mat_z();
    case GateKind::H: return mat_h();
    case GateKind::S: return mat_s();
    case GateKind::A: return mat_a(g.angle);
    case GateKind::Cnot: return mat_cnot();
    case GateKind::Cz: return mat_cz();
  }
  fail(Errc::precondition, "unknown gate kind");
}

}  // namespace bqc
