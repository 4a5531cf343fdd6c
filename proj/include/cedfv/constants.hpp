#pragma once

namespace cedfv {

//! Vacuum constants bundled per unit system (SI or normalized).
struct PhysicalConstants {
  double mu0;   //!< vacuum permeability (H/m)
  double eps0;  //!< vacuum permittivity (F/m)
  double c;     //!< speed of light (m/s)

  static PhysicalConstants si() {
    PhysicalConstants pc;
    pc.c = 299792458.0;
    pc.mu0 = 1.25663706212e-6;
    // derived so that c*c*eps0*mu0 == 1 to round-off
    pc.eps0 = 1.0 / (pc.mu0 * pc.c * pc.c);
    return pc;
  }

  static PhysicalConstants normalized() { return {1.0, 1.0, 1.0}; }
};

}  // namespace cedfv
