#include <doctest.h>

#include <cmath>
#include <random>

#include "cedfv/errors.hpp"
#include "cedfv/mesh.hpp"
#include "cedfv/problems.hpp"

using namespace cedfv;

namespace {

StaggeredMesh normalized_mesh(std::array<int, 3> dims, std::array<BoundaryKind, 3> bc,
                              std::array<double, 3> lo = {0, 0, 0},
                              std::array<double, 3> hi = {1, 1, 1}) {
  StaggeredMesh m = StaggeredMesh::create(dims, lo, hi, bc);
  m.palette = {MaterialTensors::vacuum(PhysicalConstants::normalized())};
  return m;
}

constexpr std::array<BoundaryKind, 3> kPeriodic{BoundaryKind::Periodic,
                                                BoundaryKind::Periodic,
                                                BoundaryKind::Periodic};
constexpr std::array<BoundaryKind, 3> kContinuative{BoundaryKind::Continuative,
                                                    BoundaryKind::Continuative,
                                                    BoundaryKind::Periodic};

void fill_uniform(StaggeredMesh& m, const State& u) {
  for (int f = 0; f < 3; ++f) {
    std::fill(m.d_faces[f].v.begin(), m.d_faces[f].v.end(), u[f]);
    std::fill(m.b_faces[f].v.begin(), m.b_faces[f].v.end(), u[3 + f]);
  }
}

// Discretely divergence-free random data: face fields as the discrete curl
// of smooth random edge potentials, mirroring the update's own circulation
// structure.
void fill_constraint_clean(StaggeredMesh& m, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  struct Mode {
    double ax, ay, px, py;
  };
  auto random_field = [&](std::array<Mode, 3>& modes) {
    for (Mode& md : modes)
      md = {2.0 * M_PI * (1 + rng() % 3), 2.0 * M_PI * (1 + rng() % 3),
            dist(rng) * M_PI, dist(rng) * M_PI};
  };
  std::array<Mode, 3> am, dm;
  random_field(am);
  random_field(dm);
  auto eval = [](const Mode& md, double x, double y) {
    return std::sin(md.ax * x + md.px) * std::cos(md.ay * y + md.py);
  };
  // edge potential for one family evaluated at the edge midpoint
  auto edge_value = [&](const std::array<Mode, 3>& modes, int family, int i, int j,
                        int k) {
    double p[3] = {m.origin[0] + i * m.spacing[0], m.origin[1] + j * m.spacing[1],
                   m.origin[2] + k * m.spacing[2]};
    p[family] += 0.5 * m.spacing[family];
    (void)k;
    return eval(modes[family], p[0], p[1]);
  };
  auto fill_from_potential = [&](std::array<FaceArray, 3>& faces,
                                 const std::array<Mode, 3>& modes) {
    for (int f = 0; f < 3; ++f) {
      const int t1 = (f + 1) % 3;
      const int t2 = (f + 2) % 3;
      FaceArray& arr = faces[f];
      for (int i = 0; i < arr.n0; ++i)
        for (int j = 0; j < arr.n1; ++j)
          for (int k = 0; k < arr.n2; ++k) {
            int idx[3] = {i, j, k};
            int p1[3] = {i, j, k};
            p1[t1] += 1;
            int p2[3] = {i, j, k};
            p2[t2] += 1;
            const double curl =
                (edge_value(modes, t2, p1[0], p1[1], p1[2]) -
                 edge_value(modes, t2, idx[0], idx[1], idx[2])) /
                    m.spacing[t1] -
                (edge_value(modes, t1, p2[0], p2[1], p2[2]) -
                 edge_value(modes, t1, idx[0], idx[1], idx[2])) /
                    m.spacing[t2];
            arr(i, j, k) = curl;
          }
    }
  };
  fill_from_potential(m.b_faces, am);
  fill_from_potential(m.d_faces, dm);
}

double field_scale(const StaggeredMesh& m) {
  double s = 0.0;
  for (int f = 0; f < 3; ++f) {
    for (double v : m.d_faces[f].v) s = std::max(s, std::abs(v));
    for (double v : m.b_faces[f].v) s = std::max(s, std::abs(v));
  }
  return s;
}

}  // namespace

TEST_SUITE("mesh") {

TEST_CASE("boundary view: periodic wrap and continuative clamp") {
  StaggeredMesh mp = normalized_mesh({8, 8, 1}, kPeriodic);
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j < 8; ++j) mp.d_faces[0](i, j, 0) = std::sin(0.7 * i + 0.3 * j);
  const BoundaryView bv = apply_boundaries(mp);
  CHECK(bv.face_d(0, -1, 3, 0) == mp.d_faces[0](7, 3, 0));
  CHECK(bv.face_d(0, 9, 3, 0) == mp.d_faces[0](1, 3, 0));
  CHECK(bv.face_d(0, 2, -1, 0) == mp.d_faces[0](2, 7, 0));
  CHECK(bv.face_d(0, 2, 9, 0) == mp.d_faces[0](2, 1, 0));

  StaggeredMesh mc = normalized_mesh({8, 8, 1}, kContinuative);
  SUBCASE("uniform field: ghosts equal edge values") {
    fill_uniform(mc, State::Ones());
    const BoundaryView bc = apply_boundaries(mc);
    CHECK(bc.face_d(0, -2, 3, 0) == 1.0);
    CHECK(bc.face_d(0, 11, 3, 0) == 1.0);
  }
  SUBCASE("linear ramp: ghosts clamp to the outermost value") {
    for (int i = 0; i <= 8; ++i)
      for (int j = 0; j < 8; ++j) mc.d_faces[0](i, j, 0) = 2.0 + 3.0 * i;
    const BoundaryView bc = apply_boundaries(mc);
    CHECK(bc.face_d(0, -1, 2, 0) == mc.d_faces[0](0, 2, 0));   // not the extrapolation
    CHECK(bc.face_d(0, 10, 2, 0) == mc.d_faces[0](8, 2, 0));
  }
}

TEST_CASE("reconstruction") {
  SUBCASE("uniform field has zero slopes") {
    StaggeredMesh m = normalized_mesh({6, 6, 1}, kPeriodic);
    State u;
    u << 1, -2, 3, -4, 5, -6;
    fill_uniform(m, u);
    ReconArray recon;
    reconstruct(m, recon);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) {
        const ZoneRecon& z = recon.at(i, j, 0);
        CHECK((z.value - u).cwiseAbs().maxCoeff() == 0.0);
        CHECK(z.sx.cwiseAbs().maxCoeff() == 0.0);
        CHECK(z.sy.cwiseAbs().maxCoeff() == 0.0);
        CHECK(z.sz.cwiseAbs().maxCoeff() == 0.0);
      }
  }
  SUBCASE("linear field is reconstructed exactly") {
    StaggeredMesh m = normalized_mesh({6, 6, 1}, kContinuative);
    // Dx = 2 + 3x + 5y as exact face averages
    for (int i = 0; i <= 6; ++i)
      for (int j = 0; j < 6; ++j) {
        const double x = i * m.spacing[0];
        const double y = (j + 0.5) * m.spacing[1];
        m.d_faces[0](i, j, 0) = 2.0 + 3.0 * x + 5.0 * y;
      }
    ReconArray recon;
    reconstruct(m, recon);
    for (int i = 1; i < 5; ++i)
      for (int j = 1; j < 5; ++j) {
        const ZoneRecon& z = recon.at(i, j, 0);
        const double xc = (i + 0.5) * m.spacing[0];
        const double yc = (j + 0.5) * m.spacing[1];
        CHECK(z.value[kDx] == doctest::Approx(2.0 + 3.0 * xc + 5.0 * yc).epsilon(1e-13));
        CHECK(z.sx[kDx] == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(z.sy[kDx] == doctest::Approx(5.0).epsilon(1e-12));
      }
  }
  SUBCASE("face traces reproduce stored face averages") {
    std::mt19937 rng(21);
    StaggeredMesh m = normalized_mesh({8, 8, 1}, kPeriodic);
    fill_constraint_clean(m, rng);
    ReconArray recon;
    reconstruct(m, recon);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        const ZoneRecon& z = recon.at(i, j, 0);
        const double left = z.value[kDx] - 0.5 * m.spacing[0] * z.sx[kDx];
        const double right = z.value[kDx] + 0.5 * m.spacing[0] * z.sx[kDx];
        CHECK(left == doctest::Approx(m.d_faces[0](i, j, 0)).epsilon(1e-13));
        CHECK(right == doctest::Approx(m.d_faces[0](i + 1, j, 0)).epsilon(1e-13));
      }
  }
  SUBCASE("smooth field: zone-center error is second order") {
    auto run = [&](int n) {
      ProblemSpec spec = default_spec(ProblemKind::PlaneWave);
      spec.constants = PhysicalConstants::normalized();
      spec.dims = {n, n, 1};
      ProblemSetup setup = build_problem(spec);
      ReconArray recon;
      reconstruct(setup.mesh, recon);
      double err = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const State exact = setup.oracle(setup.mesh.zone_center(i, j, 0), 0.0);
          err = std::max(
              err, (recon.at(i, j, 0).value - exact).cwiseAbs().maxCoeff());
        }
      return err;
    };
    const double e1 = run(16), e2 = run(32);
    CHECK(std::log2(e1 / e2) >= 1.95);
  }
}

TEST_CASE("gather_edge_inputs") {
  SUBCASE("uniform mesh gives four equal states and zero gradients") {
    StaggeredMesh m = normalized_mesh({4, 4, 1}, kPeriodic);
    State u;
    u << 1, 2, 3, 4, 5, 6;
    fill_uniform(m, u);
    ReconArray recon;
    reconstruct(m, recon);
    const GatheredEdge ge = gather_edge_inputs(m, recon, {2, 2, 2, 0});
    CHECK((ge.u_ru - u).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ge.u_lu - u).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ge.u_ld - u).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ge.u_rd - u).cwiseAbs().maxCoeff() == 0.0);
    CHECK(ge.g_ru.dx.cwiseAbs().maxCoeff() == 0.0);
    const EdgeGrpOutput out = solve_edge_grp(ge.input(), 0.01, SourceOptions::none());
    CHECK((out.u_star - u).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("material jump: traces keep per-zone one-sided limits") {
    StaggeredMesh m = normalized_mesh({2, 2, 1}, kContinuative);
    m.palette.push_back(MaterialTensors::isotropic(4.0, 1.0));
    m.paint_material(1, [&](const Vec3& p) { return p[0] > m.spacing[0]; });
    // Dy jumps across x: left zones 1, right zones 2
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j <= 2; ++j) m.d_faces[1](i, j, 0) = i == 0 ? 1.0 : 2.0;
    ReconArray recon;
    reconstruct(m, recon);
    const GatheredEdge ge = gather_edge_inputs(m, recon, {2, 1, 1, 0});
    CHECK(ge.u_lu[kDy] == doctest::Approx(1.0));
    CHECK(ge.u_ld[kDy] == doctest::Approx(1.0));
    CHECK(ge.u_ru[kDy] == doctest::Approx(2.0));
    CHECK(ge.u_rd[kDy] == doctest::Approx(2.0));
    // averaged material and widened fan
    CHECK(ge.mat_physical.eps_inv(0, 0) == doctest::Approx(0.5 * (1.0 + 0.25)));
    CHECK(ge.speeds.s_r == doctest::Approx(1.0));  // vacuum side dominates
  }
}

TEST_CASE("cfl timestep") {
  SUBCASE("2D square zones, unit speed") {
    StaggeredMesh m = normalized_mesh({10, 10, 1}, kPeriodic);
    CHECK(cfl_timestep(m, 0.45) == doctest::Approx(0.45 * m.spacing[0] / 2.0));
  }
  SUBCASE("1D single-term denominator") {
    StaggeredMesh m = normalized_mesh({10, 1, 1}, kPeriodic);
    CHECK(cfl_timestep(m, 0.9) == doctest::Approx(0.9 * m.spacing[0]));
  }
  SUBCASE("fastest zone governs") {
    StaggeredMesh m = normalized_mesh({10, 10, 1}, kPeriodic);
    m.palette.push_back(MaterialTensors::isotropic(0.25, 1.0));  // speed 2
    m.zone_mat[0] = 1;
    CHECK(cfl_timestep(m, 0.45) == doctest::Approx(0.45 * m.spacing[0] / 4.0));
  }
}

TEST_CASE("update_step: uniform field is an exact fixed point") {
  StaggeredMesh m = normalized_mesh({8, 8, 1}, kPeriodic);
  State u;
  u << 1, -2, 3, -4, 5, -6;
  fill_uniform(m, u);
  StaggeredMesh before = m;
  update_step(m, cfl_timestep(m, 0.45));
  for (int f = 0; f < 3; ++f) {
    CHECK(m.d_faces[f].v == before.d_faces[f].v);
    CHECK(m.b_faces[f].v == before.b_faces[f].v);
  }
}

TEST_CASE("update_step: one-step error against the analytic plane wave") {
  auto one_step_error = [&](int n) {
    ProblemSpec spec = default_spec(ProblemKind::PlaneWave);
    spec.constants = PhysicalConstants::normalized();
    spec.dims = {n, n, 1};
    spec.limiter = Limiter::None;
    ProblemSetup setup = build_problem(spec);
    const double dt = cfl_timestep(setup.mesh, 0.45);
    update_step(setup.mesh, dt);
    auto [l1, linf] = error_norms(setup.mesh, setup.oracle, kBz);
    (void)linf;
    return l1;
  };
  const double e1 = one_step_error(16);
  const double e2 = one_step_error(32);
  CHECK(std::log2(e1 / e2) >= 2.9);  // local truncation: dt*(h^2 + dt^2)
}

TEST_CASE("update_step: divergence preservation on random constraint-clean data") {
  std::mt19937 rng(31);
  for (auto bc : {kPeriodic, kContinuative}) {
    StaggeredMesh m = normalized_mesh({32, 32, 1}, bc);
    fill_constraint_clean(m, rng);
    const double scale = field_scale(m) / m.spacing[0];
    const DivergenceDiagnostics d0 = divergence_diagnostics(m);
    REQUIRE(d0.max_div_b < 1e-12 * scale);
    REQUIRE(d0.max_div_d_minus_rho < 1e-12 * scale);
    const double dt = cfl_timestep(m, 0.45);
    UpdateWorkspace ws;
    for (int s = 0; s < 200; ++s) update_step(m, dt, ws);
    const DivergenceDiagnostics d1 = divergence_diagnostics(m);
    CHECK(d1.max_div_b < 1e-12 * scale);
    CHECK(d1.max_div_d_minus_rho < 1e-12 * scale);
  }
}

TEST_CASE("update_step: linearity in the mesh state") {
  std::mt19937 rng(33);
  StaggeredMesh a = normalized_mesh({12, 12, 1}, kPeriodic);
  a.limiter = Limiter::None;  // minmod is deliberately nonlinear
  StaggeredMesh b = a;
  fill_constraint_clean(a, rng);
  fill_constraint_clean(b, rng);
  StaggeredMesh mix = a;
  const double al = 0.7, be = -1.3;
  for (int f = 0; f < 3; ++f) {
    for (std::size_t n = 0; n < mix.d_faces[f].size(); ++n) {
      mix.d_faces[f].v[n] = al * a.d_faces[f].v[n] + be * b.d_faces[f].v[n];
      mix.b_faces[f].v[n] = al * a.b_faces[f].v[n] + be * b.b_faces[f].v[n];
    }
  }
  const double dt = cfl_timestep(a, 0.4);
  update_step(a, dt);
  update_step(b, dt);
  update_step(mix, dt);
  double max_rel = 0.0;
  for (int f = 0; f < 3; ++f)
    for (std::size_t n = 0; n < mix.d_faces[f].size(); ++n) {
      const double expect_d = al * a.d_faces[f].v[n] + be * b.d_faces[f].v[n];
      const double expect_b = al * a.b_faces[f].v[n] + be * b.b_faces[f].v[n];
      max_rel = std::max(max_rel, std::abs(mix.d_faces[f].v[n] - expect_d));
      max_rel = std::max(max_rel, std::abs(mix.b_faces[f].v[n] - expect_b));
    }
  CHECK(max_rel < 1e-12 * field_scale(mix));
}

TEST_CASE("update_step: bit-identical across thread counts") {
  std::mt19937 rng(35);
  StaggeredMesh m1 = normalized_mesh({16, 16, 1}, kPeriodic);
  fill_constraint_clean(m1, rng);
  StaggeredMesh m4 = m1;
  StepOptions o1, o4;
  o1.threads = 1;
  o4.threads = 4;
  const double dt = cfl_timestep(m1, 0.45);
  for (int s = 0; s < 3; ++s) {
    update_step(m1, dt, o1);
    update_step(m4, dt, o4);
  }
  for (int f = 0; f < 3; ++f) {
    CHECK(m1.d_faces[f].v == m4.d_faces[f].v);
    CHECK(m1.b_faces[f].v == m4.b_faces[f].v);
  }
}

TEST_CASE("update_step: non-finite data is reported with its face") {
  StaggeredMesh m = normalized_mesh({4, 4, 1}, kPeriodic);
  m.d_faces[0](2, 1, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(update_step(m, 0.01), NumericalFailureError);
}

TEST_CASE("update_step: conductive run keeps divD - rho_e conserved") {
  std::mt19937 rng(37);
  StaggeredMesh m = normalized_mesh({16, 16, 1}, kPeriodic);
  m.palette[0].sigma = 3.0;  // uniformly lossy, chi = O(dt sigma)
  fill_constraint_clean(m, rng);
  // add a non-solenoidal D component so rho_e is nontrivial
  m.d_faces[0](5, 5, 0) += 0.25;
  initialize_charge_from_divergence(m);
  const double scale = field_scale(m) / m.spacing[0];
  const double dt = cfl_timestep(m, 0.45);
  UpdateWorkspace ws;
  for (int s = 0; s < 100; ++s) update_step(m, dt, ws);
  const DivergenceDiagnostics d = divergence_diagnostics(m);
  CHECK(d.max_div_d_minus_rho < 1e-12 * scale);
  CHECK(d.max_div_b < 1e-12 * scale);
}

TEST_CASE("divergence diagnostics") {
  StaggeredMesh m = normalized_mesh({4, 4, 1}, kPeriodic);
  SUBCASE("uniform field has zero divergence") {
    fill_uniform(m, State::Ones());
    const DivergenceDiagnostics d = divergence_diagnostics(m);
    CHECK(d.max_div_b == 0.0);
    CHECK(d.max_div_d_minus_rho == 0.0);
  }
  SUBCASE("single-face perturbation lands in the two abutting zones") {
    const double eps = 0.5;
    m.b_faces[0](2, 1, 0) = eps;
    const DivergenceDiagnostics d = divergence_diagnostics(m);
    const double expect = eps / m.spacing[0];
    // face (2,1) is the right face of zone (1,1) and the left face of (2,1)
    CHECK(d.div_b[m.zone_index(1, 1, 0)] == doctest::Approx(expect));
    CHECK(d.div_b[m.zone_index(2, 1, 0)] == doctest::Approx(-expect));
    CHECK(d.div_b[m.zone_index(0, 0, 0)] == 0.0);
    CHECK(d.max_div_b == doctest::Approx(expect));
  }
}

}  // TEST_SUITE
