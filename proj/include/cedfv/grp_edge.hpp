#pragma once

#include "cedfv/char_matrices.hpp"
#include "cedfv/eigensystem.hpp"
#include "cedfv/riemann1d.hpp"
#include "cedfv/state.hpp"
#include "cedfv/stiff_source.hpp"

namespace cedfv {

//! Extremal fan speeds of the two in-plane axes of an edge solve.
//! (s_l, s_r) bound the solver-x fan and (s_d, s_u) the solver-y fan.
struct EdgeSpeeds {
  double s_l;
  double s_r;
  double s_d;
  double s_u;

  WavePair x() const { return {s_l, s_r}; }
  WavePair y() const { return {s_d, s_u}; }
};

//! Largest signal speed of the characteristic matrix along `axis`.
//! Diagonal materials use the closed form; otherwise the extremal
//! eigenvalue is computed numerically.
double axis_extremal_speed(const MaterialTensors& mat, int axis);

//! Fan speeds for an edge along `edge_axis` (0=x, 1=y, 2=z), expressed in
//! the solver frame of that edge.  CED speeds are symmetric, so
//! s_l = -s_r and s_d = -s_u.
EdgeSpeeds extremal_speeds(const MaterialTensors& mat, int edge_axis);

//! Four corner states and full gradient sets entering an edge solve,
//! already expressed in the solver frame (edge along solver z, fans in
//! the solver xy-plane).  `matrices` and `mat` describe the single
//! constant-coefficient system of the edge (quadrant-averaged at material
//! interfaces).  Eigensystems are required only for non-diagonal
//! materials; leave null to use the diagonal closed forms.
struct EdgeGrpInput {
  State u_ru, u_lu, u_ld, u_rd;
  GradientSet g_ru, g_lu, g_ld, g_rd;
  EdgeSpeeds speeds;
  const CharMatrices* matrices = nullptr;
  const MaterialTensors* mat = nullptr;
  const AxisEigensystem* eig_x = nullptr;
  const AxisEigensystem* eig_y = nullptr;
};

//! Strongly-interacting state, its gradients, its fluxes, and its
//! time-centered value at the edge.
struct EdgeGrpOutput {
  State u_star;
  GradientSet grad_star;
  State fx_star;
  State fy_star;
  State u_star_half;
};

//! One-dimensional resolved state between a left/right pair plus the
//! resolved transverse gradients that survive into the edge solve.
struct ResolvedPair {
  State u;
  State d_t1;  //!< first retained gradient (y for an x-pair, x for a y-pair)
  State d_t2;  //!< z gradient
};

//! x-directional Riemann problem between (u_r, u_l) = (RU, LU) or (RD, LD);
//! returns the resolved state plus its y- and z-gradients.
ResolvedPair resolved_state_x_pair(const State& u_r, const State& u_l,
                                   const GradientSet& g_r, const GradientSet& g_l,
                                   const CharMatrices& matrices, const EdgeSpeeds& speeds);

//! y-directional Riemann problem between (u_u, u_d) = (RU, RD) or (LU, LD);
//! returns the resolved state plus its x- and z-gradients.
ResolvedPair resolved_state_y_pair(const State& u_u, const State& u_d,
                                   const GradientSet& g_u, const GradientSet& g_d,
                                   const CharMatrices& matrices, const EdgeSpeeds& speeds);

//! State where the four one-dimensional fans overlap:
//!   u* = -1/2 [ ((A - s_r I)u_r* - (A - s_l I)u_l*)/(s_r - s_l)
//!             + ((B - s_u I)u_u* - (B - s_d I)u_d*)/(s_u - s_d) ]
State strongly_interacting_state(const State& u_r, const State& u_l, const State& u_u,
                                 const State& u_d, const CharMatrices& matrices,
                                 const EdgeSpeeds& speeds);

//! Same linear form applied to the z-gradients of the four resolved states.
State z_gradient_star(const State& dz_r, const State& dz_l, const State& dz_u,
                      const State& dz_d, const CharMatrices& matrices,
                      const EdgeSpeeds& speeds);

//! Longitudinal gradient of the strongly-interacting state by
//! characteristic upwinding of the gradient Riemann problem
//! (subsonic branch, which CED always takes):
//!   1/2 (g- + g+) + 1/2 sum_{lambda<0} a_m r_m - 1/2 sum_{lambda>0} a_m r_m,
//! a_m = l_m . (g+ - g-).  Zero-speed constraint waves contribute through
//! the mean only.
State longitudinal_gradient_upwind(const State& g_minus, const State& g_plus,
                                   const AxisEigensystem& eig);

//! Supersonic dispatch around the subsonic formula; only the subsonic
//! branch is reachable with CED's symmetric speeds.
State longitudinal_gradient_three_branch(const State& g_minus, const State& g_plus,
                                         const AxisEigensystem& eig, double s_minus,
                                         double s_plus);

//! Component-wise specialization of the upwinding for diagonal materials.
//! `axis` selects the x- or y-form.  Throws UnsupportedMaterialError for
//! non-diagonal tensors.
State longitudinal_gradient_closed_form(const State& g_minus, const State& g_plus,
                                        const MaterialTensors& mat, Axis axis);

//! Source handling of the edge solve.
struct SourceOptions {
  bool enabled = false;
  SourceOperatorKind kind = SourceOperatorKind::LStableAverage;
  static SourceOptions none() { return {false, SourceOperatorKind::LStableAverage}; }
  static SourceOptions stiff(SourceOperatorKind k = SourceOperatorKind::LStableAverage) {
    return {true, k};
  }
};

//! Path used for the longitudinal gradients.
enum class GradientMethod { Auto, ClosedForm, Eigenvectors };

//! Full edge solve: the four one-dimensional fans, the strongly-interacting
//! state with all three gradients, its fluxes, and the time-centered value
//!   u*^(1/2) = g(dt Sigma) [u* - dt/2 (A dx u* + B dy u* + C dz u*)],
//! with g = identity when the source is disabled.
EdgeGrpOutput solve_edge_grp(const EdgeGrpInput& input, double dt,
                             const SourceOptions& source,
                             GradientMethod method = GradientMethod::Auto);

// ---------------------------------------------------------------------------
// Solver-frame mapping.  Edge solves along x and y reuse the z-edge kernel
// through a cyclic relabeling of axes and state components: solver axis i
// is physical axis perm[i] with perm = (1,2,0) for an x-edge, (2,0,1) for a
// y-edge and identity for a z-edge.
// ---------------------------------------------------------------------------

struct AxisPermutation {
  int perm[3];  //!< physical axis of each solver axis

  static AxisPermutation for_edge_axis(int edge_axis) {
    switch (edge_axis) {
      case 0: return {{1, 2, 0}};
      case 1: return {{2, 0, 1}};
      default: return {{0, 1, 2}};
    }
  }
};

State to_solver_frame(const State& u, const AxisPermutation& p);
State from_solver_frame(const State& u, const AxisPermutation& p);
Vec3 vec_from_solver_frame(const Vec3& v, const AxisPermutation& p);
GradientSet to_solver_frame(const GradientSet& g, const AxisPermutation& p);
MaterialTensors to_solver_frame(const MaterialTensors& mat, const AxisPermutation& p);

}  // namespace cedfv
