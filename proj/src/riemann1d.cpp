#include "cedfv/riemann1d.hpp"

#include "cedfv/errors.hpp"

namespace cedfv {

State hll_resolved(const State& u_l, const State& u_r, const Mat6& mat, const WavePair& w) {
  if (!(w.s_minus < w.s_plus))
    throw DegenerateFanError("fan speeds must satisfy s_minus < s_plus");
  const double inv_width = 1.0 / (w.s_plus - w.s_minus);
  return inv_width * (w.s_plus * u_r - w.s_minus * u_l - mat * (u_r - u_l));
}

State hll_resolved_gradient(const State& g_l, const State& g_r, const Mat6& mat,
                            const WavePair& w) {
  return hll_resolved(g_l, g_r, mat, w);
}

}  // namespace cedfv
