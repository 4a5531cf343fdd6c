#include "cedfv/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cedfv/errors.hpp"
#include "cedfv/parallel.hpp"

namespace cedfv {

namespace {

constexpr const char* kAxisName[3] = {"x", "y", "z"};

inline int wrap_periodic(int i, int n) {
  int r = i % n;
  return r < 0 ? r + n : r;
}

inline double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

}  // namespace

StaggeredMesh StaggeredMesh::create(std::array<int, 3> dims, std::array<double, 3> lo,
                                    std::array<double, 3> hi,
                                    std::array<BoundaryKind, 3> bc) {
  StaggeredMesh m;
  m.dims = dims;
  m.origin = lo;
  m.boundary = bc;
  for (int a = 0; a < 3; ++a) m.spacing[a] = (hi[a] - lo[a]) / dims[a];
  for (int f = 0; f < 3; ++f) {
    int n[3] = {dims[0], dims[1], dims[2]};
    n[f] += 1;
    m.d_faces[f].resize(n[0], n[1], n[2]);
    m.b_faces[f].resize(n[0], n[1], n[2]);
  }
  const std::size_t nzones =
      static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
  m.palette = {MaterialTensors::vacuum(PhysicalConstants::si())};
  m.zone_mat.assign(nzones, 0);
  m.rho_e.assign(nzones, 0.0);
  return m;
}

State StaggeredMesh::zone_average_state(int i, int j, int k) const {
  State u;
  const int idx[3] = {i, j, k};
  for (int f = 0; f < 3; ++f) {
    int ip[3] = {i, j, k};
    ip[f] += 1;
    u[f] = 0.5 * (d_faces[f](idx[0], idx[1], idx[2]) + d_faces[f](ip[0], ip[1], ip[2]));
    u[3 + f] =
        0.5 * (b_faces[f](idx[0], idx[1], idx[2]) + b_faces[f](ip[0], ip[1], ip[2]));
  }
  return u;
}

void StaggeredMesh::paint_material(std::uint16_t id,
                                   const std::function<bool(const Vec3&)>& inside) {
  for (int i = 0; i < dims[0]; ++i)
    for (int j = 0; j < dims[1]; ++j)
      for (int k = 0; k < dims[2]; ++k)
        if (inside(zone_center(i, j, k))) zone_mat[zone_index(i, j, k)] = id;
}

int BoundaryView::resolve_zone(int axis, int i) const {
  const int n = mesh->dims[axis];
  if (i >= 0 && i < n) return i;
  if (mesh->boundary[axis] == BoundaryKind::Periodic) return wrap_periodic(i, n);
  return std::clamp(i, 0, n - 1);
}

int BoundaryView::resolve_node(int axis, int i) const {
  const int n = mesh->dims[axis];
  if (i >= 0 && i <= n) return i;
  if (mesh->boundary[axis] == BoundaryKind::Periodic) return wrap_periodic(i, n);
  return std::clamp(i, 0, n);
}

double BoundaryView::face_d(int family, int i, int j, int k) const {
  int idx[3] = {i, j, k};
  idx[family] = resolve_node(family, idx[family]);
  for (int a = 0; a < 3; ++a)
    if (a != family) idx[a] = resolve_zone(a, idx[a]);
  return mesh->d_faces[family](idx[0], idx[1], idx[2]);
}

double BoundaryView::face_b(int family, int i, int j, int k) const {
  int idx[3] = {i, j, k};
  idx[family] = resolve_node(family, idx[family]);
  for (int a = 0; a < 3; ++a)
    if (a != family) idx[a] = resolve_zone(a, idx[a]);
  return mesh->b_faces[family](idx[0], idx[1], idx[2]);
}

const MaterialTensors& BoundaryView::zone_material(int i, int j, int k) const {
  return mesh->palette[zone_material_id(i, j, k)];
}

std::uint16_t BoundaryView::zone_material_id(int i, int j, int k) const {
  return mesh->zone_mat[mesh->zone_index(resolve_zone(0, i), resolve_zone(1, j),
                                         resolve_zone(2, k))];
}

BoundaryView apply_boundaries(const StaggeredMesh& mesh) { return BoundaryView{&mesh}; }

void ReconArray::resize(const std::array<int, 3>& zone_dims) {
  dims = zone_dims;
  std::size_t n = 1;
  for (int a = 0; a < 3; ++a) n *= (dims[a] == 1 ? 1 : dims[a] + 2);
  v.assign(n, ZoneRecon{});
}

std::size_t ReconArray::index(int i, int j, int k) const {
  // axes of size 1 fold every index onto the single stored layer
  const int idx[3] = {i, j, k};
  std::size_t flat = 0;
  for (int a = 0; a < 3; ++a) {
    const int span = dims[a] == 1 ? 1 : dims[a] + 2;
    const int local = dims[a] == 1 ? 0 : idx[a] + 1;
    flat = flat * span + local;
  }
  return flat;
}

namespace {

}  // namespace

double g_weno_eps = 1e-6;

namespace {

double limited_slope(double sl, double sr, Limiter limiter) {
  switch (limiter) {
    case Limiter::Minmod:
      return minmod(sl, sr);
    case Limiter::VanLeer:
      return sl * sr > 0.0 ? 2.0 * sl * sr / (sl + sr) : 0.0;
    case Limiter::Weno: {
      // scale-free smoothness weights; reduces to the central difference on
      // smooth data and leans on the smoother side across a discontinuity
      const double bl = sl * sl, br = sr * sr;
      const double scale = bl + br;
      if (scale == 0.0) return 0.0;
      const double eps = g_weno_eps;
      const double wl = 1.0 / ((bl / scale + eps) * (bl / scale + eps));
      const double wr = 1.0 / ((br / scale + eps) * (br / scale + eps));
      return (wl * sl + wr * sr) / (wl + wr);
    }
    case Limiter::None:
      break;
  }
  return 0.5 * (sl + sr);
}

// Limited transverse slope of a face value along axis t.
double face_slope(const BoundaryView& bv, bool electric, int family, int i, int j, int k,
                  int t, Limiter limiter) {
  int p[3] = {i, j, k};
  int m[3] = {i, j, k};
  p[t] += 1;
  m[t] -= 1;
  const double inv_h = 1.0 / bv.mesh->spacing[t];
  const double fp = electric ? bv.face_d(family, p[0], p[1], p[2])
                             : bv.face_b(family, p[0], p[1], p[2]);
  const double f0 =
      electric ? bv.face_d(family, i, j, k) : bv.face_b(family, i, j, k);
  const double fm = electric ? bv.face_d(family, m[0], m[1], m[2])
                             : bv.face_b(family, m[0], m[1], m[2]);
  return limited_slope((f0 - fm) * inv_h, (fp - f0) * inv_h, limiter);
}

void reconstruct_zone(const StaggeredMesh& mesh, const BoundaryView& bv, int i, int j,
                      int k, ZoneRecon& out) {
  out = ZoneRecon{};
  // drive-supplied ghost zones replace the clamped reconstruction wholesale
  if (mesh.xmin_drive && i < 0) {
    State u;
    GradientSet g;
    mesh.xmin_drive(mesh.zone_center(i, j, k), mesh.time, u, g);
    out.value = u;
    out.sx = g.dx;
    out.sy = g.dy;
    out.sz = g.dz;
    return;
  }
  State* slope[3] = {&out.sx, &out.sy, &out.sz};
  // cross-term slot for each axis pair
  State* cross[3][3] = {{nullptr, &out.cxy, &out.czx},
                        {&out.cxy, nullptr, &out.cyz},
                        {&out.czx, &out.cyz, nullptr}};
  for (int f = 0; f < 3; ++f) {
    int lo[3] = {i, j, k};
    int hi[3] = {i, j, k};
    hi[f] += 1;
    for (int electric = 0; electric < 2; ++electric) {
      const int comp = electric ? f : 3 + f;
      const bool is_d = electric;
      const double fl = is_d ? bv.face_d(f, lo[0], lo[1], lo[2])
                             : bv.face_b(f, lo[0], lo[1], lo[2]);
      const double fr = is_d ? bv.face_d(f, hi[0], hi[1], hi[2])
                             : bv.face_b(f, hi[0], hi[1], hi[2]);
      out.value[comp] = 0.5 * (fl + fr);
      // longitudinal slope pinned to the face difference (constraint-compatible)
      (*slope[f])[comp] = (fr - fl) / mesh.spacing[f];
      for (int t = 0; t < 3; ++t) {
        if (t == f) continue;
        if (mesh.dims[t] == 1) {
          (*slope[t])[comp] = 0.0;
          continue;
        }
        const double sl = face_slope(bv, is_d, f, lo[0], lo[1], lo[2], t, mesh.limiter);
        const double sr = face_slope(bv, is_d, f, hi[0], hi[1], hi[2], t, mesh.limiter);
        (*slope[t])[comp] = 0.5 * (sl + sr);
        // bilinear interpolation between the two face profiles
        (*cross[f][t])[comp] = (sr - sl) / mesh.spacing[f];
      }
    }
  }
}

}  // namespace

void reconstruct(const StaggeredMesh& mesh, ReconArray& out) {
  out.resize(mesh.dims);
  const BoundaryView bv = apply_boundaries(mesh);
  const int lo[3] = {mesh.dims[0] == 1 ? 0 : -1, mesh.dims[1] == 1 ? 0 : -1,
                     mesh.dims[2] == 1 ? 0 : -1};
  const int hi[3] = {mesh.dims[0] == 1 ? 0 : mesh.dims[0],
                     mesh.dims[1] == 1 ? 0 : mesh.dims[1],
                     mesh.dims[2] == 1 ? 0 : mesh.dims[2]};
  for (int i = lo[0]; i <= hi[0]; ++i)
    for (int j = lo[1]; j <= hi[1]; ++j)
      for (int k = lo[2]; k <= hi[2]; ++k)
        reconstruct_zone(mesh, bv, i, j, k, out.at(i, j, k));
}

namespace {

// Offset of the edge midpoint from a quadrant zone's center: -h/2 on the
// positive-side quadrant, +h/2 on the negative side, along both node axes.
Vec3 corner_offset(const StaggeredMesh& mesh, int t1, int t2, double off1, double off2) {
  Vec3 o = Vec3::Zero();
  o[t1] = off1 * mesh.spacing[t1];
  o[t2] = off2 * mesh.spacing[t2];
  return o;
}

}  // namespace

GatheredEdge gather_edge_inputs(const StaggeredMesh& mesh, const ReconArray& recon,
                                const EdgeId& edge) {
  const BoundaryView bv = apply_boundaries(mesh);
  const int e = edge.family;
  const int t1 = (e + 1) % 3;
  const int t2 = (e + 2) % 3;

  GatheredEdge out;
  out.perm = AxisPermutation::for_edge_axis(e);

  int zr[3] = {edge.i, edge.j, edge.k};  // quadrant zone triple, varies below
  const int n1 = zr[t1];
  const int n2 = zr[t2];

  const MaterialTensors* mats[4];
  std::uint16_t ids[4];
  State trace[4];
  GradientSet grads[4];
  // quadrants in (t1, t2) offsets: RU=(0,0), LU=(-1,0), LD=(-1,-1), RD=(0,-1)
  const int qoff[4][2] = {{0, 0}, {-1, 0}, {-1, -1}, {0, -1}};
  for (int q = 0; q < 4; ++q) {
    zr[t1] = n1 + qoff[q][0];
    zr[t2] = n2 + qoff[q][1];
    const ZoneRecon& z = recon.at(zr[0], zr[1], zr[2]);
    const double off1 = qoff[q][0] == 0 ? -0.5 : 0.5;
    const double off2 = qoff[q][1] == 0 ? -0.5 : 0.5;
    const Vec3 off = corner_offset(mesh, t1, t2, off1, off2);
    trace[q] = z.trace(off);
    grads[q] = z.gradients(off);
    ids[q] = bv.zone_material_id(zr[0], zr[1], zr[2]);
    mats[q] = &mesh.palette[ids[q]];
  }

  if (ids[0] == ids[1] && ids[0] == ids[2] && ids[0] == ids[3]) {
    out.mat_physical = *mats[0];
    out.speeds = extremal_speeds(out.mat_physical, e);
  } else {
    out.mat_physical = average(*mats[0], *mats[1], *mats[2], *mats[3]);
    // the fan must contain every quadrant's signals
    EdgeSpeeds s = extremal_speeds(*mats[0], e);
    for (int q = 1; q < 4; ++q) {
      const EdgeSpeeds sq = extremal_speeds(*mats[q], e);
      s.s_r = std::max(s.s_r, sq.s_r);
      s.s_u = std::max(s.s_u, sq.s_u);
    }
    s.s_l = -s.s_r;
    s.s_d = -s.s_u;
    out.speeds = s;
  }
  out.mat_solver = to_solver_frame(out.mat_physical, out.perm);
  out.cm_solver = build_characteristic_matrices(out.mat_solver);

  out.u_ru = to_solver_frame(trace[0], out.perm);
  out.u_lu = to_solver_frame(trace[1], out.perm);
  out.u_ld = to_solver_frame(trace[2], out.perm);
  out.u_rd = to_solver_frame(trace[3], out.perm);
  out.g_ru = to_solver_frame(grads[0], out.perm);
  out.g_lu = to_solver_frame(grads[1], out.perm);
  out.g_ld = to_solver_frame(grads[2], out.perm);
  out.g_rd = to_solver_frame(grads[3], out.perm);
  return out;
}

double cfl_timestep(const StaggeredMesh& mesh, double cfl) {
  std::vector<double> palette_rate(mesh.palette.size());
  for (std::size_t p = 0; p < mesh.palette.size(); ++p) {
    double rate = 0.0;
    for (int a = 0; a < 3; ++a) {
      if (mesh.dims[a] == 1) continue;
      rate += axis_extremal_speed(mesh.palette[p], a) / mesh.spacing[a];
    }
    palette_rate[p] = rate;
  }
  double max_rate = 0.0;
  for (const std::uint16_t id : mesh.zone_mat)
    max_rate = std::max(max_rate, palette_rate[id]);
  return cfl / max_rate;
}

namespace {

// --- edge lattice ----------------------------------------------------------

struct EdgeLattice {
  int size[3];  // index extent per axis: zone count along the family axis,
                // node count (dims+1) along the two others
  std::size_t total;

  static EdgeLattice of(const StaggeredMesh& mesh, int family) {
    EdgeLattice lat;
    for (int a = 0; a < 3; ++a)
      lat.size[a] = (a == family) ? mesh.dims[a] : mesh.dims[a] + 1;
    lat.total =
        static_cast<std::size_t>(lat.size[0]) * lat.size[1] * lat.size[2];
    return lat;
  }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * size[1] + j) * size[2] + k;
  }
  void unflatten(std::size_t flat, int& i, int& j, int& k) const {
    k = static_cast<int>(flat % size[2]);
    flat /= size[2];
    j = static_cast<int>(flat % size[1]);
    i = static_cast<int>(flat / size[1]);
  }
};

// Solver-frame data cached per palette entry and edge family.
struct EdgeAxisCache {
  MaterialTensors mat_solver;
  CharMatrices cm_solver;
  EdgeSpeeds speeds;
  MaterialTensors mat_physical;
};

EdgeRecord solve_one_edge(const StaggeredMesh& mesh, const ReconArray& recon,
                          const BoundaryView& bv, int family, int i, int j, int k,
                          const std::vector<EdgeAxisCache>& cache, double dt,
                          const SourceOptions& source) {
  const int t1 = (family + 1) % 3;
  const int t2 = (family + 2) % 3;
  const AxisPermutation perm = AxisPermutation::for_edge_axis(family);

  int zr[3] = {i, j, k};
  const int n1 = zr[t1];
  const int n2 = zr[t2];

  State trace[4];
  GradientSet grads[4];
  std::uint16_t ids[4];
  const int qoff[4][2] = {{0, 0}, {-1, 0}, {-1, -1}, {0, -1}};
  for (int q = 0; q < 4; ++q) {
    zr[t1] = n1 + qoff[q][0];
    zr[t2] = n2 + qoff[q][1];
    const ZoneRecon& z = recon.at(zr[0], zr[1], zr[2]);
    const double off1 = qoff[q][0] == 0 ? -0.5 : 0.5;
    const double off2 = qoff[q][1] == 0 ? -0.5 : 0.5;
    const Vec3 off = corner_offset(mesh, t1, t2, off1, off2);
    trace[q] = z.trace(off);
    grads[q] = z.gradients(off);
    ids[q] = bv.zone_material_id(zr[0], zr[1], zr[2]);
  }

  EdgeGrpInput in;
  in.u_ru = to_solver_frame(trace[0], perm);
  in.u_lu = to_solver_frame(trace[1], perm);
  in.u_ld = to_solver_frame(trace[2], perm);
  in.u_rd = to_solver_frame(trace[3], perm);
  in.g_ru = to_solver_frame(grads[0], perm);
  in.g_lu = to_solver_frame(grads[1], perm);
  in.g_ld = to_solver_frame(grads[2], perm);
  in.g_rd = to_solver_frame(grads[3], perm);

  MaterialTensors local_mat_phys, local_mat_solver;
  CharMatrices local_cm;
  const MaterialTensors* mat_physical;
  if (ids[0] == ids[1] && ids[0] == ids[2] && ids[0] == ids[3]) {
    const EdgeAxisCache& c = cache[ids[0]];
    in.speeds = c.speeds;
    in.matrices = &c.cm_solver;
    in.mat = &c.mat_solver;
    mat_physical = &c.mat_physical;
  } else {
    local_mat_phys = average(mesh.palette[ids[0]], mesh.palette[ids[1]],
                             mesh.palette[ids[2]], mesh.palette[ids[3]]);
    EdgeSpeeds s = extremal_speeds(mesh.palette[ids[0]], family);
    for (int q = 1; q < 4; ++q) {
      const EdgeSpeeds sq = extremal_speeds(mesh.palette[ids[q]], family);
      s.s_r = std::max(s.s_r, sq.s_r);
      s.s_u = std::max(s.s_u, sq.s_u);
    }
    s.s_l = -s.s_r;
    s.s_d = -s.s_u;
    in.speeds = s;
    local_mat_solver = to_solver_frame(local_mat_phys, perm);
    local_cm = build_characteristic_matrices(local_mat_solver);
    in.matrices = &local_cm;
    in.mat = &local_mat_solver;
    mat_physical = &local_mat_phys;
  }

  const EdgeGrpOutput sol = solve_edge_grp(in, dt, source);
  const State u_half = from_solver_frame(sol.u_star_half, perm);
  const FieldVectors f = fields_from_state(u_half, *mat_physical);

  EdgeRecord rec;
  rec.e_par = f.E[family];
  rec.h_par = f.H[family];
  rec.j_t1 = f.J[t1];
  rec.j_t2 = f.J[t2];
  rec.m_t1 = f.M[t1];
  rec.m_t2 = f.M[t2];
  return rec;
}

}  // namespace

void update_step(StaggeredMesh& mesh, double dt, UpdateWorkspace& ws,
                 const StepOptions& opts) {
  const BoundaryView bv = apply_boundaries(mesh);
  reconstruct(mesh, ws.recon);

  //--- per-palette solver-frame data, one bundle per edge family
  std::array<std::vector<EdgeAxisCache>, 3> cache;
  for (int e = 0; e < 3; ++e) {
    cache[e].resize(mesh.palette.size());
    const AxisPermutation perm = AxisPermutation::for_edge_axis(e);
    for (std::size_t p = 0; p < mesh.palette.size(); ++p) {
      EdgeAxisCache& c = cache[e][p];
      c.mat_physical = mesh.palette[p];
      c.mat_solver = to_solver_frame(c.mat_physical, perm);
      c.cm_solver = build_characteristic_matrices(c.mat_solver);
      c.speeds = extremal_speeds(c.mat_physical, e);
    }
  }

  //--- phase 1: every edge, all three families
  for (int e = 0; e < 3; ++e) {
    const EdgeLattice lat = EdgeLattice::of(mesh, e);
    ws.edges[e].resize(lat.total);
    EdgeRecord* recs = ws.edges[e].data();
    const int t1 = (e + 1) % 3;
    const int t2 = (e + 2) % 3;
    // collapsed axes: node layer 1 duplicates node layer 0
    const bool dup1 = mesh.dims[t1] == 1;
    const bool dup2 = mesh.dims[t2] == 1;
    parallel_for(static_cast<std::int64_t>(lat.total), opts.threads,
                 [&](std::int64_t b, std::int64_t en) {
                   for (std::int64_t flat = b; flat < en; ++flat) {
                     int i, j, k;
                     lat.unflatten(static_cast<std::size_t>(flat), i, j, k);
                     int idx[3] = {i, j, k};
                     if ((dup1 && idx[t1] == 1) || (dup2 && idx[t2] == 1)) continue;
                     recs[flat] = solve_one_edge(mesh, ws.recon, bv, e, i, j, k,
                                                 cache[e], dt, opts.source);
                   }
                 });
    if (dup1 || dup2) {
      for (std::size_t flat = 0; flat < lat.total; ++flat) {
        int i, j, k;
        lat.unflatten(flat, i, j, k);
        int idx[3] = {i, j, k};
        if ((dup1 && idx[t1] == 1) || (dup2 && idx[t2] == 1)) {
          if (dup1) idx[t1] = 0;
          if (dup2) idx[t2] = 0;
          recs[flat] = recs[lat.index(idx[0], idx[1], idx[2])];
        }
      }
    }
  }

  //--- phase 2: face circulation plus averaged facial currents
  const bool lossy = opts.source.enabled &&
                     std::any_of(mesh.palette.begin(), mesh.palette.end(),
                                 [](const MaterialTensors& m) {
                                   return m.sigma > 0.0 || m.sigma_star > 0.0;
                                 });
  for (int f = 0; f < 3; ++f) {
    const int t1 = (f + 1) % 3;
    const int t2 = (f + 2) % 3;
    const EdgeLattice lat1 = EdgeLattice::of(mesh, t1);
    const EdgeLattice lat2 = EdgeLattice::of(mesh, t2);
    const EdgeRecord* rec1 = ws.edges[t1].data();
    const EdgeRecord* rec2 = ws.edges[t2].data();
    FaceArray& dd = mesh.d_faces[f];
    FaceArray& bb = mesh.b_faces[f];
    if (lossy) ws.face_j[f].resize(dd.n0, dd.n1, dd.n2);
    FaceArray* jf = lossy ? &ws.face_j[f] : nullptr;
    const double inv_h1 = 1.0 / mesh.spacing[t1];
    const double inv_h2 = 1.0 / mesh.spacing[t2];
    const std::int64_t nfaces = static_cast<std::int64_t>(dd.size());
    const int nn1 = dd.n1, nn2 = dd.n2;
    parallel_for(nfaces, opts.threads, [&, nn1, nn2](std::int64_t b, std::int64_t en) {
      for (std::int64_t flat = b; flat < en; ++flat) {
        const int k = static_cast<int>(flat % nn2);
        const int j = static_cast<int>((flat / nn2) % nn1);
        const int i = static_cast<int>(flat / (static_cast<std::int64_t>(nn1) * nn2));
        int p1[3] = {i, j, k};
        p1[t1] += 1;  // +1 along t1: second t2-family edge
        int p2[3] = {i, j, k};
        p2[t2] += 1;  // +1 along t2: second t1-family edge
        const EdgeRecord& e2m = rec2[lat2.index(i, j, k)];
        const EdgeRecord& e2p = rec2[lat2.index(p1[0], p1[1], p1[2])];
        const EdgeRecord& e1m = rec1[lat1.index(i, j, k)];
        const EdgeRecord& e1p = rec1[lat1.index(p2[0], p2[1], p2[2])];
        // t2-family edges expose component (t2+1)%3 == f as j_t1;
        // t1-family edges expose component (t1+2)%3 == f as j_t2.
        const double jbar =
            0.25 * (e2m.j_t1 + e2p.j_t1 + e1m.j_t2 + e1p.j_t2);
        const double mbar =
            0.25 * (e2m.m_t1 + e2p.m_t1 + e1m.m_t2 + e1p.m_t2);
        const double curl_h =
            (e2p.h_par - e2m.h_par) * inv_h1 - (e1p.h_par - e1m.h_par) * inv_h2;
        const double curl_e =
            (e2p.e_par - e2m.e_par) * inv_h1 - (e1p.e_par - e1m.e_par) * inv_h2;
        dd.v[flat] += dt * (curl_h - jbar);
        bb.v[flat] += dt * (-curl_e - mbar);
        if (jf) jf->v[flat] = jbar;
      }
    });
  }

  //--- charge bookkeeping shares the face currents with the update above
  if (lossy) {
    for (int i = 0; i < mesh.dims[0]; ++i)
      for (int j = 0; j < mesh.dims[1]; ++j)
        for (int k = 0; k < mesh.dims[2]; ++k) {
          double div_j = 0.0;
          for (int f = 0; f < 3; ++f) {
            int p[3] = {i, j, k};
            p[f] += 1;
            div_j += (ws.face_j[f](p[0], p[1], p[2]) - ws.face_j[f](i, j, k)) /
                     mesh.spacing[f];
          }
          mesh.rho_e[mesh.zone_index(i, j, k)] -= dt * div_j;
        }
  }

  //--- fail loudly on the first non-finite face
  for (int f = 0; f < 3; ++f) {
    const FaceArray& dd = mesh.d_faces[f];
    const FaceArray& bb = mesh.b_faces[f];
    for (std::size_t n = 0; n < dd.size(); ++n) {
      if (std::isfinite(dd.v[n]) && std::isfinite(bb.v[n])) continue;
      const int k = static_cast<int>(n % dd.n2);
      const int j = static_cast<int>((n / dd.n2) % dd.n1);
      const int i = static_cast<int>(n / (static_cast<std::size_t>(dd.n1) * dd.n2));
      throw NumericalFailureError(std::string("non-finite value on ") + kAxisName[f] +
                                  "-face (" + std::to_string(i) + "," +
                                  std::to_string(j) + "," + std::to_string(k) +
                                  ") at t=" + std::to_string(mesh.time));
    }
  }

  mesh.time += dt;
}

void update_step(StaggeredMesh& mesh, double dt, const StepOptions& opts) {
  UpdateWorkspace ws;
  update_step(mesh, dt, ws, opts);
}

DivergenceDiagnostics divergence_diagnostics(const StaggeredMesh& mesh) {
  DivergenceDiagnostics diag;
  const std::size_t nzones =
      static_cast<std::size_t>(mesh.dims[0]) * mesh.dims[1] * mesh.dims[2];
  diag.div_b.assign(nzones, 0.0);
  diag.div_d.assign(nzones, 0.0);
  for (int i = 0; i < mesh.dims[0]; ++i)
    for (int j = 0; j < mesh.dims[1]; ++j)
      for (int k = 0; k < mesh.dims[2]; ++k) {
        double div_b = 0.0, div_d = 0.0;
        for (int f = 0; f < 3; ++f) {
          int p[3] = {i, j, k};
          p[f] += 1;
          const double inv_h = 1.0 / mesh.spacing[f];
          div_d += (mesh.d_faces[f](p[0], p[1], p[2]) - mesh.d_faces[f](i, j, k)) * inv_h;
          div_b += (mesh.b_faces[f](p[0], p[1], p[2]) - mesh.b_faces[f](i, j, k)) * inv_h;
        }
        const std::size_t z = mesh.zone_index(i, j, k);
        diag.div_b[z] = div_b;
        diag.div_d[z] = div_d;
        diag.max_div_b = std::max(diag.max_div_b, std::abs(div_b));
        diag.max_div_d_minus_rho =
            std::max(diag.max_div_d_minus_rho, std::abs(div_d - mesh.rho_e[z]));
      }
  return diag;
}

void enforce_periodic_faces(StaggeredMesh& mesh) {
  for (int f = 0; f < 3; ++f) {
    if (mesh.boundary[f] != BoundaryKind::Periodic) continue;
    const int n = mesh.dims[f];
    for (FaceArray* arr : {&mesh.d_faces[f], &mesh.b_faces[f]}) {
      int idx[3], last[3];
      for (idx[0] = 0; idx[0] < (f == 0 ? 1 : arr->n0); ++idx[0])
        for (idx[1] = 0; idx[1] < (f == 1 ? 1 : arr->n1); ++idx[1])
          for (idx[2] = 0; idx[2] < (f == 2 ? 1 : arr->n2); ++idx[2]) {
            last[0] = idx[0];
            last[1] = idx[1];
            last[2] = idx[2];
            last[f] = n;
            (*arr)(last[0], last[1], last[2]) = (*arr)(idx[0], idx[1], idx[2]);
          }
    }
  }
}

void initialize_charge_from_divergence(StaggeredMesh& mesh) {
  const DivergenceDiagnostics d = divergence_diagnostics(mesh);
  mesh.rho_e = d.div_d;
}

double total_energy(const StaggeredMesh& mesh) {
  double sum = 0.0;
  for (int i = 0; i < mesh.dims[0]; ++i)
    for (int j = 0; j < mesh.dims[1]; ++j)
      for (int k = 0; k < mesh.dims[2]; ++k) {
        const State u = mesh.zone_average_state(i, j, k);
        const MaterialTensors& m = mesh.material(i, j, k);
        const Vec3 d = u.head<3>(), b = u.tail<3>();
        sum += 0.5 * (d.dot(m.eps_inv * d) + b.dot(m.mu_inv * b));
      }
  return sum * mesh.zone_volume();
}

}  // namespace cedfv
