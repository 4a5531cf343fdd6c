#pragma once

#include "cedfv/state.hpp"

namespace cedfv {

//! Extremal signal speeds of a one-dimensional fan.
struct WavePair {
  double s_minus;  //!< leftmost signal speed (m/s)
  double s_plus;   //!< rightmost signal speed (m/s)
};

//! HLL resolved state between two input states for a linear system with
//! characteristic matrix `mat` along the solve axis:
//!   u* = -[(mat - s_plus I) u_r - (mat - s_minus I) u_l] / (s_plus - s_minus)
//! Throws DegenerateFanError when the fan has zero width.
State hll_resolved(const State& u_l, const State& u_r, const Mat6& mat, const WavePair& w);

//! Gradient of the resolved state.  For constant speeds the gradients obey
//! the identical linear form, so this is the same kernel applied to the
//! two input gradients (bit-identical by construction).
State hll_resolved_gradient(const State& g_l, const State& g_r, const Mat6& mat,
                            const WavePair& w);

}  // namespace cedfv
