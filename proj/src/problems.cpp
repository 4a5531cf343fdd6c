#include "cedfv/problems.hpp"

#include <cmath>
#include <complex>

#include "cedfv/errors.hpp"

namespace cedfv {

const char* to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::PlaneWave: return "plane_wave";
    case ProblemKind::GaussianPulseDisk: return "gaussian_pulse_disk";
    case ProblemKind::BeamRefraction: return "beam_refraction";
    case ProblemKind::BeamTir: return "beam_tir";
    case ProblemKind::BeamConductor: return "beam_conductor";
    case ProblemKind::SkinDepth1d: return "skin_depth_1d";
  }
  return "?";
}

AnalyticEnvelope lossy_envelope(double sigma, double eps, double mu, double frequency) {
  AnalyticEnvelope env;
  env.omega = 2.0 * M_PI * frequency;
  const double loss_tangent = sigma / (eps * env.omega);
  const double base = env.omega * std::sqrt(0.5 * mu * eps);
  const double root = std::sqrt(1.0 + loss_tangent * loss_tangent);
  env.alpha = base * std::sqrt(root - 1.0);
  env.beta = base * std::sqrt(root + 1.0);
  env.delta = env.alpha > 0.0 ? 1.0 / env.alpha : std::numeric_limits<double>::infinity();
  return env;
}

ProblemSpec default_spec(ProblemKind kind) {
  ProblemSpec s;
  s.kind = kind;
  const BoundaryKind P = BoundaryKind::Periodic;
  const BoundaryKind C = BoundaryKind::Continuative;
  switch (kind) {
    case ProblemKind::PlaneWave:
      s.dims = {16, 16, 1};
      s.lo = {-0.5, -0.5, 0.0};
      s.hi = {0.5, 0.5, 0.0};
      s.boundary = {P, P, P};
      break;
    case ProblemKind::GaussianPulseDisk:
      s.dims = {120, 120, 1};
      s.lo = {-7.0, -7.0, 0.0};
      s.hi = {7.0, 7.0, 0.0};
      s.boundary = {C, C, P};
      s.wavelength = 0.5;
      s.beam_width = 0.6;
      s.beam_length = 0.6;
      s.truncation_sigmas = 12.0;
      s.center = {-4.0, 0.0, 0.0};
      s.direction_deg = 0.0;
      s.disk_radius = 0.75;
      s.refractive_index = 3.0;
      break;
    case ProblemKind::BeamRefraction:
      s.dims = {325, 238, 1};
      s.lo = {-5.0e-6, -2.5e-6, 0.0};
      s.hi = {8.0e-6, 7.0e-6, 0.0};
      s.boundary = {C, C, P};
      s.wavelength = 1.0e-6;
      s.beam_width = 0.7e-6;
      s.beam_length = 0.7e-6;
      s.truncation_sigmas = 12.0;
      s.center = {-2.6e-6, -0.6e-6, 0.0};
      s.direction_deg = 45.0;
      s.slab_epsr = 2.25;
      s.probe_margin = 1.0e-6;
      break;
    case ProblemKind::BeamTir:
      s.dims = {350, 425, 1};
      s.lo = {-3.5e-6, -4.25e-6, 0.0};
      s.hi = {3.5e-6, 4.25e-6, 0.0};
      s.boundary = {C, C, P};
      s.wavelength = 1.0e-6;
      s.beam_width = 0.5e-6;
      s.beam_length = 0.5e-6;
      s.truncation_sigmas = 12.0;
      s.center = {-1.7e-6, -2.2e-6, 0.0};
      s.direction_deg = 45.0;
      s.slab_epsr = 4.0;
      s.flux_probe_wavelengths = 3.0;
      break;
    case ProblemKind::BeamConductor:
      s.dims = {200, 400, 1};
      s.lo = {-6.0e-6, -4.0e-6, 0.0};
      s.hi = {2.0e-6, 12.0e-6, 0.0};
      s.boundary = {C, C, P};
      s.wavelength = 1.0e-6;
      s.beam_width = 0.8e-6;
      s.beam_length = 0.8e-6;
      s.truncation_sigmas = 12.0;
      s.center = {-3.0e-6, 0.0, 0.0};
      s.direction_deg = 45.0;
      s.sigma = 5.9e7;
      break;
    case ProblemKind::SkinDepth1d:
      s.dims = {100, 1, 1};
      s.boundary = {C, P, P};
      s.material_name = "carbon";
      s.sigma = 2.0e3;
      s.frequency = 1.679e13;
      break;
  }
  return s;
}

TimeDefaults time_defaults(const ProblemSpec& spec) {
  switch (spec.kind) {
    case ProblemKind::PlaneWave: return {0.45, 3.5e-9};
    case ProblemKind::GaussianPulseDisk: return {0.45, 2.33e-8};
    case ProblemKind::BeamRefraction: return {0.45, 4.0e-14};
    case ProblemKind::BeamTir: return {0.45, 4.0e-14};
    case ProblemKind::BeamConductor: return {0.40, 4.0e-14};
    case ProblemKind::SkinDepth1d:
      return spec.material_name == "copper" ? TimeDefaults{0.75, 4.0e-13}
                                            : TimeDefaults{0.90, 4.76e-13};
  }
  return {0.45, 0.0};
}

namespace {

StaggeredMesh make_mesh(const ProblemSpec& spec) {
  std::array<double, 3> lo = spec.lo;
  std::array<double, 3> hi = spec.hi;
  if (hi[2] <= lo[2]) {
    // collapsed z: one zone as thick as an x zone
    const double dz = (hi[0] - lo[0]) / spec.dims[0];
    hi[2] = lo[2] + dz * spec.dims[2];
  }
  StaggeredMesh mesh = StaggeredMesh::create(spec.dims, lo, hi, spec.boundary);
  mesh.limiter = spec.limiter;
  mesh.palette = {MaterialTensors::vacuum(spec.constants)};
  return mesh;
}

// Fill every face family with exact face averages of the oracle at t = 0.
void init_faces_from_oracle(StaggeredMesh& mesh,
                            const std::function<State(const Vec3&, double)>& oracle) {
  for (int f = 0; f < 3; ++f) {
    FaceArray& dd = mesh.d_faces[f];
    FaceArray& bb = mesh.b_faces[f];
    for (int i = 0; i < dd.n0; ++i)
      for (int j = 0; j < dd.n1; ++j)
        for (int k = 0; k < dd.n2; ++k) {
          dd(i, j, k) = face_average_oracle(mesh, oracle, f, i, j, k, 0.0);
          bb(i, j, k) = face_average_oracle(mesh, oracle, 3 + f, i, j, k, 0.0);
        }
  }
}

// ---------------------------------------------------------------------------
// 2D transverse-magnetic initial data (Bz plus in-plane D) built from a
// scalar potential so the discrete divergence of D telescopes to zero:
//   D = curl(psi zhat),  Dx = d(psi)/dy,  Dy = -d(psi)/dx
// Face averages of D are exact corner differences of psi.
// ---------------------------------------------------------------------------

struct TmWavePacket {
  Vec3 r0;
  double kx, ky;            // unit propagation direction
  double kappa;             // carrier wavenumber in the launch medium
  double amp;               // Bz amplitude
  double impedance_factor;  // D amplitude = impedance_factor * Bz amplitude
  double w_perp, w_par;     // gaussian widths
  double cut2;              // support radius^2 in scaled sigma units

  double envelope(double x, double y) const {
    const double rx = x - r0[0], ry = y - r0[1];
    const double s_par = kx * rx + ky * ry;
    const double s_perp = -ky * rx + kx * ry;
    const double q = s_par * s_par / (w_par * w_par) + s_perp * s_perp / (w_perp * w_perp);
    if (q > cut2) return 0.0;
    return std::exp(-0.5 * q);
  }
  double s_parallel(double x, double y) const {
    return kx * (x - r0[0]) + ky * (y - r0[1]);
  }
  double bz(double x, double y) const {
    return amp * envelope(x, y) * std::cos(kappa * s_parallel(x, y));
  }
  double psi(double x, double y) const {
    return -(amp * impedance_factor / kappa) * envelope(x, y) *
           std::sin(kappa * s_parallel(x, y));
  }
};

void init_tm_packet(StaggeredMesh& mesh, const TmWavePacket& pk) {
  const double dx = mesh.spacing[0], dy = mesh.spacing[1];
  const double x0 = mesh.origin[0], y0 = mesh.origin[1];
  const double g = 0.5 / std::sqrt(3.0);

  // Dx on x-faces: exact average of d(psi)/dy along the face
  FaceArray& dxf = mesh.d_faces[0];
  for (int i = 0; i < dxf.n0; ++i)
    for (int j = 0; j < dxf.n1; ++j) {
      const double x = x0 + i * dx;
      const double v = (pk.psi(x, y0 + (j + 1) * dy) - pk.psi(x, y0 + j * dy)) / dy;
      for (int k = 0; k < dxf.n2; ++k) dxf(i, j, k) = v;
    }
  // Dy on y-faces: exact average of -d(psi)/dx along the face
  FaceArray& dyf = mesh.d_faces[1];
  for (int i = 0; i < dyf.n0; ++i)
    for (int j = 0; j < dyf.n1; ++j) {
      const double y = y0 + j * dy;
      const double v = -(pk.psi(x0 + (i + 1) * dx, y) - pk.psi(x0 + i * dx, y)) / dx;
      for (int k = 0; k < dyf.n2; ++k) dyf(i, j, k) = v;
    }
  // Bz on z-faces: 2x2 Gauss average over the zone cross-section
  FaceArray& bzf = mesh.b_faces[2];
  for (int i = 0; i < bzf.n0; ++i)
    for (int j = 0; j < bzf.n1; ++j) {
      const double xc = x0 + (i + 0.5) * dx;
      const double yc = y0 + (j + 0.5) * dy;
      double sum = 0.0;
      for (int a = -1; a <= 1; a += 2)
        for (int b = -1; b <= 1; b += 2)
          sum += pk.bz(xc + a * g * dx, yc + b * g * dy);
      for (int k = 0; k < bzf.n2; ++k) bzf(i, j, k) = 0.25 * sum;
    }
}

ProblemSetup build_plane_wave(const ProblemSpec& spec) {
  for (int a = 0; a < 3; ++a)
    if (spec.boundary[a] != BoundaryKind::Periodic)
      throw ConfigError(0, "plane_wave requires periodic boundaries");

  ProblemSetup setup;
  setup.mesh = make_mesh(spec);
  const PhysicalConstants pc = spec.constants;
  const double lx = setup.mesh.spacing[0] * spec.dims[0];
  const double ly = setup.mesh.spacing[1] * spec.dims[1];
  const Vec3 kvec{2.0 * M_PI / lx, 2.0 * M_PI / ly, 0.0};
  const double kn = kvec.norm();
  const double omega = pc.c * kn;
  const Vec3 khat = kvec / kn;
  const Vec3 zhat{0, 0, 1};
  const Vec3 d_dir = zhat.cross(khat);
  const double b0 = spec.amplitude;
  const double d0 = pc.eps0 * pc.c * b0;

  setup.oracle = [=](const Vec3& x, double t) -> State {
    const double phase = kvec.dot(x) - omega * t;
    const double c = std::cos(phase);
    State u = State::Zero();
    u[kDx] = d0 * d_dir[0] * c;
    u[kDy] = d0 * d_dir[1] * c;
    u[kBz] = b0 * c;
    return u;
  };
  init_faces_from_oracle(setup.mesh, setup.oracle);
  return setup;
}

ProblemSetup build_pulse_or_beam(const ProblemSpec& spec) {
  ProblemSetup setup;
  setup.mesh = make_mesh(spec);
  StaggeredMesh& mesh = setup.mesh;
  const PhysicalConstants pc = spec.constants;
  if (spec.dims[2] != 1)
    throw ConfigError(0, "beam and pulse problems are two-dimensional (nz = 1)");

  //--- material regions
  double launch_eps = pc.eps0;
  setup.interface_x = 0.0;
  switch (spec.kind) {
    case ProblemKind::GaussianPulseDisk: {
      const double n2 = spec.refractive_index * spec.refractive_index;
      mesh.palette.push_back(MaterialTensors::isotropic(n2 * pc.eps0, pc.mu0));
      const double r2 = spec.disk_radius * spec.disk_radius;
      mesh.paint_material(1, [&](const Vec3& p) {
        return p[0] * p[0] + p[1] * p[1] < r2;
      });
      break;
    }
    case ProblemKind::BeamRefraction:
      mesh.palette.push_back(MaterialTensors::isotropic(spec.slab_epsr * pc.eps0, pc.mu0));
      mesh.paint_material(1, [](const Vec3& p) { return p[0] > 0.0; });
      break;
    case ProblemKind::BeamTir:
      // the beam is launched inside the dense medium on the left
      mesh.palette.push_back(MaterialTensors::isotropic(spec.slab_epsr * pc.eps0, pc.mu0));
      mesh.paint_material(1, [](const Vec3& p) { return p[0] < 0.0; });
      launch_eps = spec.slab_epsr * pc.eps0;
      break;
    case ProblemKind::BeamConductor:
      mesh.palette.push_back(
          MaterialTensors::isotropic(pc.eps0, pc.mu0, spec.sigma, 0.0));
      mesh.paint_material(1, [](const Vec3& p) { return p[0] > 0.0; });
      break;
    default:
      break;
  }

  //--- wave packet in the launch medium
  const double n_launch = std::sqrt(launch_eps / pc.eps0);
  const double v_launch = pc.c / n_launch;
  TmWavePacket pk;
  pk.r0 = spec.center;
  const double theta = spec.direction_deg * M_PI / 180.0;
  pk.kx = std::cos(theta);
  pk.ky = std::sin(theta);
  pk.kappa = 2.0 * M_PI / (spec.wavelength / n_launch);
  pk.amp = spec.amplitude;
  pk.impedance_factor = launch_eps * v_launch;
  pk.w_perp = spec.beam_width;
  pk.w_par = spec.beam_length;
  pk.cut2 = spec.truncation_sigmas * spec.truncation_sigmas;
  init_tm_packet(mesh, pk);
  return setup;
}

ProblemSetup build_skin_depth(const ProblemSpec& spec) {
  ProblemSpec s = spec;
  if (s.dims[1] != 1 || s.dims[2] != 1)
    throw ConfigError(0, "skin_depth_1d requires ny = nz = 1");
  const PhysicalConstants pc = s.constants;
  const AnalyticEnvelope env = lossy_envelope(s.sigma, pc.eps0, pc.mu0, s.frequency);

  // domain [0, 10 delta] unless explicitly overridden
  if (s.hi[0] <= s.lo[0]) {
    s.lo[0] = 0.0;
    s.hi[0] = 10.0 * env.delta;
    const double dx = (s.hi[0] - s.lo[0]) / s.dims[0];
    s.lo[1] = 0.0;
    s.hi[1] = dx;
    s.lo[2] = 0.0;
    s.hi[2] = dx;
  }

  ProblemSetup setup;
  setup.mesh = make_mesh(s);
  setup.envelope = env;
  StaggeredMesh& mesh = setup.mesh;
  mesh.palette = {MaterialTensors::isotropic(pc.eps0, pc.mu0, s.sigma, 0.0)};

  // exact lossy traveling wave: complex wavenumber k = beta + i alpha,
  // D_y = Re[(omega eps / k) Bz_hat e^{i(kx - omega t)}]
  const std::complex<double> kc{env.beta, env.alpha};
  const std::complex<double> dfac = s.amplitude * env.omega * pc.eps0 / kc;
  const double amp = s.amplitude;
  const double omega = env.omega;

  auto oracle = [=](const Vec3& x, double t) -> State {
    const std::complex<double> ph =
        std::exp(std::complex<double>(0.0, 1.0) * (kc * x[0] - omega * t));
    State u = State::Zero();
    u[kBz] = amp * std::real(ph);
    u[kDy] = std::real(dfac * ph);
    return u;
  };
  setup.oracle = oracle;
  init_faces_from_oracle(mesh, oracle);

  // time-harmonic drive: ghost zones left of x = 0 carry the exact solution
  mesh.xmin_drive = [=](const Vec3& pos, double t, State& u, GradientSet& g) {
    const std::complex<double> ikc = std::complex<double>(0.0, 1.0) * kc;
    const std::complex<double> ph =
        std::exp(std::complex<double>(0.0, 1.0) * (kc * pos[0] - omega * t));
    u = State::Zero();
    u[kBz] = amp * std::real(ph);
    u[kDy] = std::real(dfac * ph);
    g = GradientSet{};
    g.dx[kBz] = amp * std::real(ikc * ph);
    g.dx[kDy] = std::real(dfac * ikc * ph);
  };

  const double a0 = s.amplitude;
  const double alpha = env.alpha;
  setup.envelope_oracle = [a0, alpha](double r) { return a0 * std::exp(-alpha * r); };
  return setup;
}

}  // namespace

ProblemSetup build_problem(const ProblemSpec& spec) {
  ProblemSetup setup = [&] {
    switch (spec.kind) {
      case ProblemKind::PlaneWave:
        return build_plane_wave(spec);
      case ProblemKind::GaussianPulseDisk:
      case ProblemKind::BeamRefraction:
      case ProblemKind::BeamTir:
      case ProblemKind::BeamConductor:
        return build_pulse_or_beam(spec);
      case ProblemKind::SkinDepth1d:
        return build_skin_depth(spec);
    }
    throw ConfigError(0, "unknown problem kind");
  }();
  enforce_periodic_faces(setup.mesh);
  initialize_charge_from_divergence(setup.mesh);
  return setup;
}

double face_average_oracle(const StaggeredMesh& mesh,
                           const std::function<State(const Vec3&, double)>& oracle,
                           int comp, int i, int j, int k, double t) {
  const int family = comp % 3;
  const int idx[3] = {i, j, k};
  Vec3 base;
  for (int a = 0; a < 3; ++a)
    base[a] = (a == family) ? mesh.origin[a] + idx[a] * mesh.spacing[a]
                            : mesh.origin[a] + (idx[a] + 0.5) * mesh.spacing[a];
  const int t1 = (family + 1) % 3;
  const int t2 = (family + 2) % 3;
  const double g1 = 0.5 / std::sqrt(3.0) * mesh.spacing[t1];
  const double g2 = 0.5 / std::sqrt(3.0) * mesh.spacing[t2];
  double sum = 0.0;
  for (int a = -1; a <= 1; a += 2)
    for (int b = -1; b <= 1; b += 2) {
      Vec3 p = base;
      p[t1] += a * g1;
      p[t2] += b * g2;
      sum += oracle(p, t)[comp];
    }
  return 0.25 * sum;
}

std::pair<double, double> error_norms(const StaggeredMesh& mesh,
                                      const std::function<State(const Vec3&, double)>& oracle,
                                      int comp) {
  const int family = comp % 3;
  const bool electric = comp < 3;
  const FaceArray& arr = electric ? mesh.d_faces[family] : mesh.b_faces[family];
  // periodic axes store the wrap face twice; count it once
  int n[3] = {mesh.dims[0], mesh.dims[1], mesh.dims[2]};
  n[family] = mesh.boundary[family] == BoundaryKind::Periodic ? mesh.dims[family]
                                                              : mesh.dims[family] + 1;
  double l1 = 0.0, linf = 0.0;
  std::size_t count = 0;
  for (int i = 0; i < n[0]; ++i)
    for (int j = 0; j < n[1]; ++j)
      for (int k = 0; k < n[2]; ++k) {
        const double exact = face_average_oracle(mesh, oracle, comp, i, j, k, mesh.time);
        const double err = std::abs(arr(i, j, k) - exact);
        l1 += err;
        linf = std::max(linf, err);
        ++count;
      }
  return {l1 / static_cast<double>(count), linf};
}

std::pair<double, double> error_norms_vs_reference(const StaggeredMesh& coarse,
                                                   const StaggeredMesh& reference,
                                                   int comp) {
  const int family = comp % 3;
  const bool electric = comp < 3;
  const FaceArray& ca = electric ? coarse.d_faces[family] : coarse.b_faces[family];
  const FaceArray& ra = electric ? reference.d_faces[family] : reference.b_faces[family];
  int ratio[3];
  for (int a = 0; a < 3; ++a) ratio[a] = reference.dims[a] / coarse.dims[a];
  int n[3] = {coarse.dims[0], coarse.dims[1], coarse.dims[2]};
  n[family] = coarse.boundary[family] == BoundaryKind::Periodic ? coarse.dims[family]
                                                                : coarse.dims[family] + 1;
  const int t1 = (family + 1) % 3;
  const int t2 = (family + 2) % 3;
  double l1 = 0.0, linf = 0.0;
  std::size_t count = 0;
  for (int i = 0; i < n[0]; ++i)
    for (int j = 0; j < n[1]; ++j)
      for (int k = 0; k < n[2]; ++k) {
        int fine[3] = {i * ratio[0], j * ratio[1], k * ratio[2]};
        // the coarse face is the union of ratio^2 fine faces
        double ref = 0.0;
        for (int a = 0; a < ratio[t1]; ++a)
          for (int b = 0; b < ratio[t2]; ++b) {
            int idx[3] = {fine[0], fine[1], fine[2]};
            idx[t1] += a;
            idx[t2] += b;
            ref += ra(idx[0], idx[1], idx[2]);
          }
        ref /= static_cast<double>(ratio[t1] * ratio[t2]);
        const double err = std::abs(ca(i, j, k) - ref);
        l1 += err;
        linf = std::max(linf, err);
        ++count;
      }
  return {l1 / static_cast<double>(count), linf};
}

void fill_orders(std::vector<ConvergenceRow>& rows) {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    rows[r].has_order = r > 0;
    if (r == 0) continue;
    const ConvergenceRow& prev = rows[r - 1];
    ConvergenceRow& cur = rows[r];
    cur.ord_l1_dy = std::log2(prev.l1_dy / cur.l1_dy);
    cur.ord_linf_dy = std::log2(prev.linf_dy / cur.linf_dy);
    cur.ord_l1_bz = std::log2(prev.l1_bz / cur.l1_bz);
    cur.ord_linf_bz = std::log2(prev.linf_bz / cur.linf_bz);
  }
}

}  // namespace cedfv
