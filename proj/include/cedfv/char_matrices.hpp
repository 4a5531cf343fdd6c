#pragma once

#include "cedfv/materials.hpp"
#include "cedfv/state.hpp"

namespace cedfv {

//! Constant characteristic matrices of the linear system
//!   dU/dt + A dU/dx + B dU/dy + C dU/dz = -Sigma U.
//! A, B, C carry units of speed; Sigma units of 1/s.
struct CharMatrices {
  Mat6 A;
  Mat6 B;
  Mat6 C;
  Mat6 Sigma;
};

//! Flux Jacobians and source Jacobian for the given material.
//! The axis flux never transports its own normal components, so rows
//! (Dx,Bx) of A, (Dy,By) of B and (Dz,Bz) of C are identically zero.
CharMatrices build_characteristic_matrices(const MaterialTensors& mat);

//! Derived point fields: E = eps_inv*D, H = mu_inv*B, J = sigma*E, M = sigma_star*H.
struct FieldVectors {
  Vec3 E;  //!< electric field (V/m)
  Vec3 H;  //!< magnetic field (A/m)
  Vec3 J;  //!< electric current density (A/m^2)
  Vec3 M;  //!< magnetic current density (V/m^2)
};

FieldVectors fields_from_state(const State& u, const MaterialTensors& mat);

}  // namespace cedfv
