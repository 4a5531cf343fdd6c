#include "cedfv/eigensystem.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "cedfv/errors.hpp"

namespace cedfv {

namespace {

struct Wave {
  double lambda;
  State right;
  State left;
};

AxisEigensystem assemble(std::vector<Wave> waves, double scale) {
  std::stable_sort(waves.begin(), waves.end(),
                   [](const Wave& a, const Wave& b) { return a.lambda < b.lambda; });
  AxisEigensystem es;
  es.zero_tol = 1e-9 * scale;
  for (int i = 0; i < 6; ++i) {
    es.lambda[i] = waves[i].lambda;
    es.right[i] = waves[i].right;
    es.left[i] = waves[i].left;
    if (waves[i].lambda < -es.zero_tol) ++es.m_split;
  }
  return es;
}

State unit(int comp) {
  State u = State::Zero();
  u[comp] = 1.0;
  return u;
}

// One coupled (D_i, B_j) pair with off-diagonal coefficients
//   d D_i / dt + cmu * d B_j / dx = 0,  d B_j / dt + ceps * d D_i / dx = 0
// where cmu*ceps > 0.  Speeds are +-sqrt(cmu*ceps) and the right
// eigenvectors are (s*w, 1) with w = sqrt(cmu/ceps), s = sign(lambda*cmu).
void add_pair(std::vector<Wave>& waves, int di, int bj, double cmu, double ceps) {
  const double a = std::sqrt(cmu * ceps);
  const double w = std::sqrt(cmu / ceps) * (cmu > 0 ? 1.0 : -1.0);
  Wave plus, minus;
  plus.lambda = a;
  plus.right = State::Zero();
  plus.right[di] = w;
  plus.right[bj] = 1.0;
  plus.left = State::Zero();
  plus.left[di] = 0.5 / w;
  plus.left[bj] = 0.5;
  minus.lambda = -a;
  minus.right = State::Zero();
  minus.right[di] = -w;
  minus.right[bj] = 1.0;
  minus.left = State::Zero();
  minus.left[di] = -0.5 / w;
  minus.left[bj] = 0.5;
  waves.push_back(plus);
  waves.push_back(minus);
}

// For diagonal materials the characteristic matrix decays into two 2x2
// blocks plus two zero (constraint) waves; read the coefficients straight
// off the matrix.
bool diagonal_pattern(const Mat6& m, int di1, int bj1, int di2, int bj2) {
  const double scale = m.cwiseAbs().maxCoeff();
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const bool expected = (i == di1 && j == bj1) || (i == bj1 && j == di1) ||
                            (i == di2 && j == bj2) || (i == bj2 && j == di2);
      if (!expected && std::abs(m(i, j)) > 1e-13 * scale) return false;
    }
  }
  return true;
}

Mat3 spd_sqrt(const Mat3& m) {
  Eigen::SelfAdjointEigenSolver<Mat3> es(m);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
    throw EigensystemError("material tensor is not positive definite");
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
         es.eigenvectors().transpose();
}

// The axis matrices are similar to symmetric matrices under the material
// energy metric W = blockdiag(eps_inv^1/2, mu_inv^1/2):  W A W^-1 is
// symmetric, so a self-adjoint solve handles the repeated constraint
// eigenvalues cleanly and left = W^T W right gives exact biorthonormality.
AxisEigensystem decompose_numeric(const CharMatrices& matrices, const Mat6& m) {
  const double scale = m.cwiseAbs().maxCoeff();

  // recover the inverse material tensors from the curl-block structure of
  // the x- and y-flux Jacobians
  Mat3 mu_inv, eps_inv;
  mu_inv.row(0) = matrices.B.topRightCorner<3, 3>().row(2);
  mu_inv.row(1) = -matrices.A.topRightCorner<3, 3>().row(2);
  mu_inv.row(2) = matrices.A.topRightCorner<3, 3>().row(1);
  eps_inv.row(0) = -matrices.B.bottomLeftCorner<3, 3>().row(2);
  eps_inv.row(1) = matrices.A.bottomLeftCorner<3, 3>().row(2);
  eps_inv.row(2) = matrices.B.bottomLeftCorner<3, 3>().row(0);

  Mat6 w = Mat6::Zero(), winv = Mat6::Zero();
  const Mat3 se = spd_sqrt(eps_inv), sm = spd_sqrt(mu_inv);
  w.topLeftCorner<3, 3>() = se;
  w.bottomRightCorner<3, 3>() = sm;
  winv.topLeftCorner<3, 3>() = se.inverse();
  winv.bottomRightCorner<3, 3>() = sm.inverse();

  const Mat6 sym = w * m * winv;
  if ((sym - sym.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw EigensystemError("axis matrix failed metric symmetrization");
  Eigen::SelfAdjointEigenSolver<Mat6> solver(0.5 * (sym + sym.transpose()));
  if (solver.info() != Eigen::Success)
    throw EigensystemError("eigensolver failed to converge");

  std::vector<Wave> waves(6);
  for (int i = 0; i < 6; ++i) {
    waves[i].lambda = solver.eigenvalues()[i];
    waves[i].right = winv * solver.eigenvectors().col(i);
    waves[i].left = w * solver.eigenvectors().col(i);
  }
  return assemble(std::move(waves), scale);
}

}  // namespace

AxisEigensystem eigendecompose_axis(const CharMatrices& matrices, Axis axis) {
  if (axis == Axis::X) {
    const Mat6& a = matrices.A;
    // couples (Dy, Bz) and (Dz, By); Dx and Bx are the constraint waves
    if (diagonal_pattern(a, kDy, kBz, kDz, kBy)) {
      std::vector<Wave> waves;
      add_pair(waves, kDy, kBz, a(kDy, kBz), a(kBz, kDy));
      add_pair(waves, kDz, kBy, a(kDz, kBy), a(kBy, kDz));
      waves.push_back({0.0, unit(kDx), unit(kDx)});
      waves.push_back({0.0, unit(kBx), unit(kBx)});
      return assemble(std::move(waves), a.cwiseAbs().maxCoeff());
    }
    return decompose_numeric(matrices, a);
  }
  const Mat6& b = matrices.B;
  // couples (Dx, Bz) and (Dz, Bx); Dy and By are the constraint waves
  if (diagonal_pattern(b, kDx, kBz, kDz, kBx)) {
    std::vector<Wave> waves;
    add_pair(waves, kDx, kBz, b(kDx, kBz), b(kBz, kDx));
    add_pair(waves, kDz, kBx, b(kDz, kBx), b(kBx, kDz));
    waves.push_back({0.0, unit(kDy), unit(kDy)});
    waves.push_back({0.0, unit(kBy), unit(kBy)});
    return assemble(std::move(waves), b.cwiseAbs().maxCoeff());
  }
  return decompose_numeric(matrices, b);
}

}  // namespace cedfv
