#include "cedfv/grp_edge.hpp"

#include <cmath>

#include "cedfv/errors.hpp"

namespace cedfv {

namespace {

// Pair couplings of the characteristic matrix along `axis` for diagonal
// materials: (D_{axis+1}, B_{axis+2}) and (D_{axis+2}, B_{axis+1}).
void diagonal_axis_speeds(const MaterialTensors& mat, int axis, double& s1, double& s2) {
  const int n1 = (axis + 1) % 3;
  const int n2 = (axis + 2) % 3;
  s1 = std::sqrt(mat.mu_inv(n2, n2) * mat.eps_inv(n1, n1));
  s2 = std::sqrt(mat.mu_inv(n1, n1) * mat.eps_inv(n2, n2));
}

}  // namespace

double axis_extremal_speed(const MaterialTensors& mat, int axis) {
  if (mat.is_diagonal()) {
    double s1, s2;
    diagonal_axis_speeds(mat, axis, s1, s2);
    return std::max(s1, s2);
  }
  // axis becomes solver-y of the ((axis+1) mod 3)-edge frame
  const AxisPermutation p = AxisPermutation::for_edge_axis((axis + 1) % 3);
  const CharMatrices cms = build_characteristic_matrices(to_solver_frame(mat, p));
  const AxisEigensystem es = eigendecompose_axis(cms, Axis::Y);
  return std::max(std::abs(es.lambda.front()), std::abs(es.lambda.back()));
}

EdgeSpeeds extremal_speeds(const MaterialTensors& mat, int edge_axis) {
  const AxisPermutation p = AxisPermutation::for_edge_axis(edge_axis);
  const double sx = axis_extremal_speed(mat, p.perm[0]);
  const double sy = axis_extremal_speed(mat, p.perm[1]);
  return {-sx, sx, -sy, sy};
}

ResolvedPair resolved_state_x_pair(const State& u_r, const State& u_l,
                                   const GradientSet& g_r, const GradientSet& g_l,
                                   const CharMatrices& matrices, const EdgeSpeeds& speeds) {
  const WavePair w = speeds.x();
  ResolvedPair out;
  out.u = hll_resolved(u_l, u_r, matrices.A, w);
  out.d_t1 = hll_resolved_gradient(g_l.dy, g_r.dy, matrices.A, w);
  out.d_t2 = hll_resolved_gradient(g_l.dz, g_r.dz, matrices.A, w);
  return out;
}

ResolvedPair resolved_state_y_pair(const State& u_u, const State& u_d,
                                   const GradientSet& g_u, const GradientSet& g_d,
                                   const CharMatrices& matrices, const EdgeSpeeds& speeds) {
  const WavePair w = speeds.y();
  ResolvedPair out;
  out.u = hll_resolved(u_d, u_u, matrices.B, w);
  out.d_t1 = hll_resolved_gradient(g_d.dx, g_u.dx, matrices.B, w);
  out.d_t2 = hll_resolved_gradient(g_d.dz, g_u.dz, matrices.B, w);
  return out;
}

State strongly_interacting_state(const State& u_r, const State& u_l, const State& u_u,
                                 const State& u_d, const CharMatrices& matrices,
                                 const EdgeSpeeds& speeds) {
  return 0.5 * (hll_resolved(u_l, u_r, matrices.A, speeds.x()) +
                hll_resolved(u_d, u_u, matrices.B, speeds.y()));
}

State z_gradient_star(const State& dz_r, const State& dz_l, const State& dz_u,
                      const State& dz_d, const CharMatrices& matrices,
                      const EdgeSpeeds& speeds) {
  return strongly_interacting_state(dz_r, dz_l, dz_u, dz_d, matrices, speeds);
}

State longitudinal_gradient_upwind(const State& g_minus, const State& g_plus,
                                   const AxisEigensystem& eig) {
  const State delta = g_plus - g_minus;
  State out = 0.5 * (g_minus + g_plus);
  for (int m = 0; m < 6; ++m) {
    if (std::abs(eig.lambda[m]) <= eig.zero_tol) continue;  // constraint waves cancel
    const double alpha = eig.left[m].dot(delta);
    out += (eig.lambda[m] < 0.0 ? 0.5 : -0.5) * alpha * eig.right[m];
  }
  return out;
}

State longitudinal_gradient_three_branch(const State& g_minus, const State& g_plus,
                                         const AxisEigensystem& eig, double s_minus,
                                         double s_plus) {
  if (s_minus >= 0.0) return g_minus;
  if (s_plus <= 0.0) return g_plus;
  return longitudinal_gradient_upwind(g_minus, g_plus, eig);
}

State longitudinal_gradient_closed_form(const State& g_minus, const State& g_plus,
                                        const MaterialTensors& mat, Axis axis) {
  if (!mat.is_diagonal())
    throw UnsupportedMaterialError("closed-form gradients require diagonal tensors");
  const State delta = g_plus - g_minus;
  State out = 0.5 * (g_minus + g_plus);
  if (axis == Axis::X) {
    const double w = std::sqrt(mat.mu_inv(2, 2) / mat.eps_inv(1, 1));
    const double u = std::sqrt(mat.mu_inv(1, 1) / mat.eps_inv(2, 2));
    out[kDy] += 0.5 * (-w * delta[kBz]);
    out[kDz] += 0.5 * (u * delta[kBy]);
    out[kBy] += 0.5 * (delta[kDz] / u);
    out[kBz] += 0.5 * (-delta[kDy] / w);
  } else {
    const double q = std::sqrt(mat.mu_inv(2, 2) / mat.eps_inv(0, 0));
    const double p = std::sqrt(mat.mu_inv(0, 0) / mat.eps_inv(2, 2));
    out[kDx] += 0.5 * (q * delta[kBz]);
    out[kDz] += 0.5 * (-p * delta[kBx]);
    out[kBx] += 0.5 * (-delta[kDz] / p);
    out[kBz] += 0.5 * (delta[kDx] / q);
  }
  return out;
}

EdgeGrpOutput solve_edge_grp(const EdgeGrpInput& input, double dt,
                             const SourceOptions& source, GradientMethod method) {
  const CharMatrices& cm = *input.matrices;

  //--- one-dimensional fans: up/down along x, right/left along y
  const ResolvedPair up = resolved_state_x_pair(input.u_ru, input.u_lu, input.g_ru,
                                                input.g_lu, cm, input.speeds);
  const ResolvedPair down = resolved_state_x_pair(input.u_rd, input.u_ld, input.g_rd,
                                                  input.g_ld, cm, input.speeds);
  const ResolvedPair right = resolved_state_y_pair(input.u_ru, input.u_rd, input.g_ru,
                                                   input.g_rd, cm, input.speeds);
  const ResolvedPair left = resolved_state_y_pair(input.u_lu, input.u_ld, input.g_lu,
                                                  input.g_ld, cm, input.speeds);

  //--- strongly-interacting state and its gradients
  EdgeGrpOutput out;
  out.u_star =
      strongly_interacting_state(right.u, left.u, up.u, down.u, cm, input.speeds);
  out.grad_star.dz = z_gradient_star(right.d_t2, left.d_t2, up.d_t2, down.d_t2, cm,
                                     input.speeds);

  bool closed = (method == GradientMethod::ClosedForm);
  if (method == GradientMethod::Auto) closed = input.mat->is_diagonal();
  if (closed) {
    out.grad_star.dx =
        longitudinal_gradient_closed_form(left.d_t1, right.d_t1, *input.mat, Axis::X);
    out.grad_star.dy =
        longitudinal_gradient_closed_form(down.d_t1, up.d_t1, *input.mat, Axis::Y);
  } else {
    AxisEigensystem local_x, local_y;
    const AxisEigensystem* ex = input.eig_x;
    const AxisEigensystem* ey = input.eig_y;
    if (!ex) {
      local_x = eigendecompose_axis(cm, Axis::X);
      ex = &local_x;
    }
    if (!ey) {
      local_y = eigendecompose_axis(cm, Axis::Y);
      ey = &local_y;
    }
    out.grad_star.dx = longitudinal_gradient_upwind(left.d_t1, right.d_t1, *ex);
    out.grad_star.dy = longitudinal_gradient_upwind(down.d_t1, up.d_t1, *ey);
  }

  out.fx_star = cm.A * out.u_star;
  out.fy_star = cm.B * out.u_star;

  //--- Lax-Wendroff time centering, with the source operator folded in
  const State bracket = out.u_star - 0.5 * dt *
                            (cm.A * out.grad_star.dx + cm.B * out.grad_star.dy +
                             cm.C * out.grad_star.dz);
  out.u_star_half =
      source.enabled ? apply_time_centering(bracket, dt, cm.Sigma, source.kind) : bracket;
  return out;
}

State to_solver_frame(const State& u, const AxisPermutation& p) {
  State s;
  for (int i = 0; i < 3; ++i) {
    s[i] = u[p.perm[i]];
    s[3 + i] = u[3 + p.perm[i]];
  }
  return s;
}

State from_solver_frame(const State& u, const AxisPermutation& p) {
  State s;
  for (int i = 0; i < 3; ++i) {
    s[p.perm[i]] = u[i];
    s[3 + p.perm[i]] = u[3 + i];
  }
  return s;
}

Vec3 vec_from_solver_frame(const Vec3& v, const AxisPermutation& p) {
  Vec3 out;
  for (int i = 0; i < 3; ++i) out[p.perm[i]] = v[i];
  return out;
}

GradientSet to_solver_frame(const GradientSet& g, const AxisPermutation& p) {
  const State* in[3] = {&g.dx, &g.dy, &g.dz};
  GradientSet out;
  out.dx = to_solver_frame(*in[p.perm[0]], p);
  out.dy = to_solver_frame(*in[p.perm[1]], p);
  out.dz = to_solver_frame(*in[p.perm[2]], p);
  return out;
}

MaterialTensors to_solver_frame(const MaterialTensors& mat, const AxisPermutation& p) {
  MaterialTensors out = mat;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      out.eps_inv(i, j) = mat.eps_inv(p.perm[i], p.perm[j]);
      out.mu_inv(i, j) = mat.mu_inv(p.perm[i], p.perm[j]);
    }
  return out;
}

}  // namespace cedfv
