#include "cedfv/char_matrices.hpp"

namespace cedfv {

namespace {

Mat3 cross_matrix(int axis) {
  Vec3 e = Vec3::Zero();
  e[axis] = 1.0;
  Mat3 x;
  x << 0.0, -e.z(), e.y(),
       e.z(), 0.0, -e.x(),
      -e.y(), e.x(), 0.0;
  return x;
}

// Flux Jacobian along one axis.  The D rows advect -(e x H) and the B rows
// advect +(e x E), which reproduces the curl structure of the two
// evolutionary Maxwell equations.
Mat6 flux_jacobian(int axis, const MaterialTensors& mat) {
  const Mat3 x = cross_matrix(axis);
  Mat6 m = Mat6::Zero();
  m.topRightCorner<3, 3>() = -x * mat.mu_inv;
  m.bottomLeftCorner<3, 3>() = x * mat.eps_inv;
  return m;
}

}  // namespace

CharMatrices build_characteristic_matrices(const MaterialTensors& mat) {
  mat.validate();
  CharMatrices cm;
  cm.A = flux_jacobian(0, mat);
  cm.B = flux_jacobian(1, mat);
  cm.C = flux_jacobian(2, mat);
  cm.Sigma = Mat6::Zero();
  cm.Sigma.topLeftCorner<3, 3>() = mat.sigma * mat.eps_inv;
  cm.Sigma.bottomRightCorner<3, 3>() = mat.sigma_star * mat.mu_inv;
  return cm;
}

FieldVectors fields_from_state(const State& u, const MaterialTensors& mat) {
  FieldVectors f;
  f.E = mat.eps_inv * u.head<3>();
  f.H = mat.mu_inv * u.tail<3>();
  f.J = mat.sigma * f.E;
  f.M = mat.sigma_star * f.H;
  return f;
}

}  // namespace cedfv
