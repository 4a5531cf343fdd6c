#pragma once

#include <iosfwd>

#include "cedfv/state.hpp"

namespace cedfv {

//! Candidate operators g(chi) approximating exp(-chi/2) in the
//! time-centered source treatment.  Only the averaged form yields an
//! L-stable overall update; the other two are retained for analysis
//! and regression contrast.
enum class SourceOperatorKind {
  Exact,          //!< g = exp(-chi/2)
  BackwardEuler,  //!< g = 1 / (1 + chi/2)
  LStableAverage  //!< g = (exp(-chi/2) + 1/(1 + chi/2)) / 2
};

//! Scalar g(chi).  chi = dt * sigma-eigenvalue must be non-negative.
double g_factor(double chi, SourceOperatorKind kind);

//! Matrix g(chi) for chi = dt*Sigma with Sigma = blockdiag(sigma*eps_inv,
//! sigma_star*mu_inv).  Evaluated per eigenvalue on the two symmetric
//! 3x3 blocks; diagonal blocks reduce to per-component scalars.
Mat6 g_factor(const Mat6& chi, SourceOperatorKind kind);

//! Overall per-step amplification G(chi) = 1 - chi*g(chi) of the
//! source-only update.  L-stability means G -> 0 as chi -> infinity.
double amplification(double chi, SourceOperatorKind kind);

//! Applies g(dt*Sigma) to the bracketed Lax-Wendroff term.
State apply_time_centering(const State& u_evolved, double dt, const Mat6& sigma,
                           SourceOperatorKind kind);

//! CSV table of (chi, G_exact, G_backward_euler, G_l_stable_average).
void write_amplification_table(std::ostream& out, double chi_max, int samples);

}  // namespace cedfv
