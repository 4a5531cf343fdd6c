#pragma once

#include <Eigen/Dense>

namespace cedfv {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

//! Conserved state (Dx, Dy, Dz, Bx, By, Bz).
//! D in C/m^2, B in T.
using State = Eigen::Matrix<double, 6, 1>;

enum Comp : int { kDx = 0, kDy = 1, kDz = 2, kBx = 3, kBy = 4, kBz = 5 };

//! Spatial gradients of a State, one per axis, in state units per metre.
struct GradientSet {
  State dx = State::Zero();
  State dy = State::Zero();
  State dz = State::Zero();
};

inline bool all_finite(const State& u) { return u.allFinite(); }

inline bool all_finite(const GradientSet& g) {
  return g.dx.allFinite() && g.dy.allFinite() && g.dz.allFinite();
}

}  // namespace cedfv
