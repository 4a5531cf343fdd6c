#pragma once

#include "cedfv/constants.hpp"
#include "cedfv/state.hpp"

namespace cedfv {

//! Per-zone material description.  The solver works with the inverse
//! tensors throughout; conversions from (eps, mu) happen at construction.
struct MaterialTensors {
  Mat3 eps_inv = Mat3::Identity();  //!< inverse permittivity (m/F)
  Mat3 mu_inv = Mat3::Identity();   //!< inverse permeability (m/H)
  double sigma = 0.0;               //!< electric conductivity (S/m)
  double sigma_star = 0.0;          //!< magnetic loss (Ohm/m)

  static MaterialTensors vacuum(const PhysicalConstants& pc);

  //! Isotropic material given eps and mu directly (not their inverses).
  static MaterialTensors isotropic(double eps, double mu, double sigma = 0.0,
                                   double sigma_star = 0.0);

  //! Diagonal anisotropic material given the diagonals of eps and mu.
  static MaterialTensors diagonal(const Vec3& eps_diag, const Vec3& mu_diag,
                                  double sigma = 0.0, double sigma_star = 0.0);

  bool is_diagonal(double rtol = 1e-13) const;

  //! Throws InvalidMaterialError unless both tensors are symmetric positive
  //! definite and the loss coefficients are non-negative.
  void validate() const;
};

//! Entrywise arithmetic average used where abutting zones disagree.
MaterialTensors average(const MaterialTensors& a, const MaterialTensors& b,
                        const MaterialTensors& c, const MaterialTensors& d);

}  // namespace cedfv
