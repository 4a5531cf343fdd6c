#pragma once

#include <functional>
#include <string>

#include "cedfv/mesh.hpp"

namespace cedfv {

enum class ProblemKind {
  PlaneWave,
  GaussianPulseDisk,
  BeamRefraction,
  BeamTir,
  BeamConductor,
  SkinDepth1d
};

const char* to_string(ProblemKind kind);

//! Attenuation of a time-harmonic wave in a lossy medium,
//!   alpha = omega sqrt(mu eps / 2) [ sqrt(1 + (sigma/(eps omega))^2) - 1 ]^(1/2),
//! which reduces to sqrt(mu sigma omega / 2) for good conductors.
struct AnalyticEnvelope {
  double alpha;  //!< attenuation constant (1/m)
  double delta;  //!< skin depth 1/alpha (m)
  double omega;  //!< angular frequency (rad/s)
  double beta;   //!< propagation constant (1/m)
};

AnalyticEnvelope lossy_envelope(double sigma, double eps, double mu, double frequency);

//! Full problem description; every field has a per-kind default that the
//! config file may override.
struct ProblemSpec {
  ProblemKind kind = ProblemKind::PlaneWave;
  PhysicalConstants constants = PhysicalConstants::si();

  std::array<int, 3> dims{16, 16, 1};
  std::array<double, 3> lo{-0.5, -0.5, -0.5};
  std::array<double, 3> hi{0.5, 0.5, 0.5};
  std::array<BoundaryKind, 3> boundary{BoundaryKind::Periodic, BoundaryKind::Periodic,
                                       BoundaryKind::Periodic};
  Limiter limiter = Limiter::Minmod;

  double amplitude = 1.0;          //!< B_z carrier amplitude (T)
  double wavelength = 0.0;         //!< carrier wavelength in the launch medium's vacuum (m)
  double beam_width = 0.0;         //!< transverse gaussian width (m)
  double beam_length = 0.0;        //!< longitudinal gaussian width (m)
  double truncation_sigmas = 4.0;  //!< envelope support cut-off
  Vec3 center{0, 0, 0};            //!< pulse/beam launch center
  double direction_deg = 0.0;      //!< propagation angle from +x (degrees)

  double disk_radius = 0.75;       //!< refractive disk radius (m)
  double refractive_index = 3.0;   //!< disk index (pulse problem)
  double slab_epsr = 2.25;         //!< relative permittivity of the slab / medium
  double sigma = 0.0;              //!< conductivity of the conducting region (S/m)
  double frequency = 0.0;          //!< drive frequency (Hz), skin-depth problem
  std::string material_name;       //!< skin-depth preset ("carbon" or "copper")

  double probe_margin = 0.0;            //!< centroid region starts this far past the interface
  double flux_probe_wavelengths = 3.0;  //!< flux plane, vacuum wavelengths past the interface
  double fit_min_delta = 0.5;           //!< envelope fit window (units of delta)
  double fit_max_delta = 6.0;
};

//! Per-kind defaults (geometry, boundaries, materials, carrier parameters).
ProblemSpec default_spec(ProblemKind kind);

//! Paper-quoted defaults for the time integration of each problem.
struct TimeDefaults {
  double cfl;
  double final_time;
};
TimeDefaults time_defaults(const ProblemSpec& spec);

//! Initialized mesh plus whatever oracles the problem admits.
struct ProblemSetup {
  StaggeredMesh mesh;
  //! Exact solution, null when the problem has none.
  std::function<State(const Vec3&, double)> oracle;
  //! Skin-depth envelope amplitude at radius r, null elsewhere.
  std::function<double(double)> envelope_oracle;
  AnalyticEnvelope envelope{0, 0, 0, 0};
  double interface_x = 0.0;  //!< material interface location for beam problems
};

ProblemSetup build_problem(const ProblemSpec& spec);

//! Face-averaged exact value for one component's face family via 2-point
//! Gauss quadrature per face axis.
double face_average_oracle(const StaggeredMesh& mesh,
                           const std::function<State(const Vec3&, double)>& oracle,
                           int comp, int i, int j, int k, double t);

//! (L1, Linf) of one component against the oracle at mesh.time.  L1 is the
//! mean over the component's face family; faces duplicated by periodic
//! identification are counted once.  Serial, fixed accumulation order.
std::pair<double, double> error_norms(const StaggeredMesh& mesh,
                                      const std::function<State(const Vec3&, double)>& oracle,
                                      int comp);

//! Same norms against a refined reference mesh (factor-2^k refinement);
//! the reference is restricted by exact face-average coarsening.
std::pair<double, double> error_norms_vs_reference(const StaggeredMesh& coarse,
                                                   const StaggeredMesh& reference, int comp);

//! One line of a convergence table.
struct ConvergenceRow {
  int n = 0;
  double l1_dy = 0, ord_l1_dy = 0, linf_dy = 0, ord_linf_dy = 0;
  double l1_bz = 0, ord_l1_bz = 0, linf_bz = 0, ord_linf_bz = 0;
  bool has_order = false;
};

//! Orders from successive error pairs: log2(E_coarse / E_fine).
void fill_orders(std::vector<ConvergenceRow>& rows);

}  // namespace cedfv
