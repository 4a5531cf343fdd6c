#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "cedfv/face_array.hpp"
#include "cedfv/grp_edge.hpp"
#include "cedfv/materials.hpp"
#include "cedfv/state.hpp"

namespace cedfv {

enum class BoundaryKind { Periodic, Continuative };

//! Transverse slope selection for the reconstruction.  None is the plain
//! central difference; Minmod and VanLeer are the classical limited forms;
//! Weno blends the one-sided differences with scale-free smoothness
//! weights (no clipping at smooth extrema).
enum class Limiter { None, Minmod, VanLeer, Weno };

//! Staggered primal data: face-averaged normal components of D and B on
//! the three face families, plus per-zone materials.  Family f holds the
//! components normal to axis f; its array has dims[f]+1 entries along f.
//! For periodic axes the first and last face of a family are the same
//! physical face and are kept equal.
struct StaggeredMesh {
  std::array<int, 3> dims{1, 1, 1};          //!< zones per axis
  std::array<double, 3> spacing{1, 1, 1};    //!< zone size (m)
  std::array<double, 3> origin{0, 0, 0};     //!< domain lower corner (m)
  std::array<BoundaryKind, 3> boundary{BoundaryKind::Periodic, BoundaryKind::Periodic,
                                       BoundaryKind::Periodic};
  Limiter limiter = Limiter::Minmod;

  std::array<FaceArray, 3> d_faces;
  std::array<FaceArray, 3> b_faces;

  std::vector<MaterialTensors> palette;  //!< distinct materials in use
  std::vector<std::uint16_t> zone_mat;   //!< palette id per zone
  std::vector<double> rho_e;             //!< electric charge density per zone

  double time = 0.0;

  //! Optional exact-state override for ghost zones beyond the x-min
  //! boundary (time-harmonic drives); takes the ghost zone center and the
  //! current time.
  std::function<void(const Vec3&, double, State&, GradientSet&)> xmin_drive;

  static StaggeredMesh create(std::array<int, 3> dims, std::array<double, 3> lo,
                              std::array<double, 3> hi, std::array<BoundaryKind, 3> bc);

  std::size_t zone_index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * dims[1] + j) * dims[2] + k;
  }
  const MaterialTensors& material(int i, int j, int k) const {
    return palette[zone_mat[zone_index(i, j, k)]];
  }
  Vec3 zone_center(int i, int j, int k) const {
    return {origin[0] + (i + 0.5) * spacing[0], origin[1] + (j + 0.5) * spacing[1],
            origin[2] + (k + 0.5) * spacing[2]};
  }
  double zone_volume() const { return spacing[0] * spacing[1] * spacing[2]; }

  //! Zone-averaged state assembled from the bounding face averages.
  State zone_average_state(int i, int j, int k) const;

  //! Set every zone to palette id `id` where `inside(center)` is true.
  void paint_material(std::uint16_t id, const std::function<bool(const Vec3&)>& inside);
};

//! Ghost-resolving accessor.  Out-of-range indices wrap for periodic axes
//! and clamp (zero-gradient) for continuative axes.
struct BoundaryView {
  const StaggeredMesh* mesh;

  int resolve_zone(int axis, int i) const;
  int resolve_node(int axis, int i) const;

  double face_d(int family, int i, int j, int k) const;
  double face_b(int family, int i, int j, int k) const;
  const MaterialTensors& zone_material(int i, int j, int k) const;
  std::uint16_t zone_material_id(int i, int j, int k) const;
};

BoundaryView apply_boundaries(const StaggeredMesh& mesh);

//! Per-zone profiles: value at the zone center, one slope per axis (per
//! metre), and the bilinear cross coefficients (per metre^2) that
//! interpolate each component between the transverse profiles of its two
//! bounding faces.  The slope of a normal component along its own axis is
//! exactly the face difference and the cross terms average to zero on
//! every face, so face traces reproduce the stored face averages and the
//! zone-integrated divergence matches the face divergence.
struct ZoneRecon {
  State value;
  State sx, sy, sz;
  State cxy, cyz, czx;  //!< coefficients of the xy, yz, zx cross terms

  State trace(const Vec3& offset) const {
    return value + offset[0] * sx + offset[1] * sy + offset[2] * sz +
           offset[0] * offset[1] * cxy + offset[1] * offset[2] * cyz +
           offset[2] * offset[0] * czx;
  }
  GradientSet gradients(const Vec3& offset) const {
    GradientSet g;
    g.dx = sx + offset[1] * cxy + offset[2] * czx;
    g.dy = sy + offset[0] * cxy + offset[2] * cyz;
    g.dz = sz + offset[1] * cyz + offset[0] * czx;
    return g;
  }
};

//! Zone reconstructions over the padded range [-1, dims] per axis
//! (axes of size 1 store a single folded layer).
struct ReconArray {
  std::array<int, 3> dims{0, 0, 0};
  std::vector<ZoneRecon> v;

  void resize(const std::array<int, 3>& zone_dims);
  ZoneRecon& at(int i, int j, int k) { return v[index(i, j, k)]; }
  const ZoneRecon& at(int i, int j, int k) const { return v[index(i, j, k)]; }
  std::size_t index(int i, int j, int k) const;
};

//! Second-order constraint-compatible reconstruction of all six components.
void reconstruct(const StaggeredMesh& mesh, ReconArray& out);

//! Identifies one edge: `family` is the axis the edge runs along; the
//! triple holds the zone index on that axis and node indices on the others.
struct EdgeId {
  int family;
  int i, j, k;
};

//! Everything gathered for one edge solve, in the solver frame of the
//! edge.  Owns its storage; input() wires up an EdgeGrpInput view.
struct GatheredEdge {
  State u_ru, u_lu, u_ld, u_rd;
  GradientSet g_ru, g_lu, g_ld, g_rd;
  EdgeSpeeds speeds;
  MaterialTensors mat_solver;
  CharMatrices cm_solver;
  MaterialTensors mat_physical;  //!< quadrant-averaged, physical frame
  AxisPermutation perm;

  EdgeGrpInput input() const {
    EdgeGrpInput in;
    in.u_ru = u_ru;
    in.u_lu = u_lu;
    in.u_ld = u_ld;
    in.u_rd = u_rd;
    in.g_ru = g_ru;
    in.g_lu = g_lu;
    in.g_ld = g_ld;
    in.g_rd = g_rd;
    in.speeds = speeds;
    in.matrices = &cm_solver;
    in.mat = &mat_solver;
    return in;
  }
};

//! Four abutting zone traces and slopes for `edge`, ghost-resolved and
//! rotated into the solver frame.
GatheredEdge gather_edge_inputs(const StaggeredMesh& mesh, const ReconArray& recon,
                                const EdgeId& edge);

//! dt = cfl / max_zones( sum_axis S_axis / spacing_axis ); axes of size 1
//! contribute nothing.
double cfl_timestep(const StaggeredMesh& mesh, double cfl);

//! Quantities consumed from one edge by the abutting face updates:
//! edge-parallel E and H plus the transverse J and M components.
struct EdgeRecord {
  double e_par, h_par;
  double j_t1, j_t2;
  double m_t1, m_t2;
};

//! Scratch buffers reused across steps.
struct UpdateWorkspace {
  ReconArray recon;
  std::array<std::vector<EdgeRecord>, 3> edges;
  std::array<FaceArray, 3> face_j;
  std::array<FaceArray, 3> face_m;
};

struct StepOptions {
  SourceOptions source = SourceOptions::stiff();
  int threads = 1;
};

//! One single-step update to t + dt: reconstruct, solve the GRP at every
//! edge, and apply the discrete circulation of the time-centered edge
//! fields to every face together with the averaged facial currents.
//! Advances mesh.time.  Throws NumericalFailureError naming the first
//! non-finite face.
void update_step(StaggeredMesh& mesh, double dt, UpdateWorkspace& ws,
                 const StepOptions& opts = {});

//! Convenience overload with a private workspace.
void update_step(StaggeredMesh& mesh, double dt, const StepOptions& opts = {});

struct DivergenceDiagnostics {
  double max_div_b = 0.0;
  double max_div_d_minus_rho = 0.0;
  std::vector<double> div_b;  //!< per zone
  std::vector<double> div_d;  //!< per zone
};

//! Discrete divergence per zone (outward face-average fluxes over volume)
//! and the constraint residual divD - rho_e.
DivergenceDiagnostics divergence_diagnostics(const StaggeredMesh& mesh);

//! Total electromagnetic energy, 1/2 (E.D + H.B) summed over zones.
double total_energy(const StaggeredMesh& mesh);

//! Copies the first face of every periodic family onto its wrap duplicate
//! so the identification holds bit-exactly.  Initialization helper; the
//! update preserves the identification on its own.
void enforce_periodic_faces(StaggeredMesh& mesh);

//! rho_e := discrete divD, making the divD constraint self-consistent at
//! t = 0.  Call once after initializing face data.
void initialize_charge_from_divergence(StaggeredMesh& mesh);

}  // namespace cedfv
