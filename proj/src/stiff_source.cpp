#include "cedfv/stiff_source.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <ostream>

#include "cedfv/errors.hpp"

namespace cedfv {

double g_factor(double chi, SourceOperatorKind kind) {
  if (!(chi >= 0.0)) throw InvalidSourceError("chi must be non-negative");
  switch (kind) {
    case SourceOperatorKind::Exact:
      return std::exp(-0.5 * chi);
    case SourceOperatorKind::BackwardEuler:
      return 1.0 / (1.0 + 0.5 * chi);
    case SourceOperatorKind::LStableAverage:
      return 0.5 * (std::exp(-0.5 * chi) + 1.0 / (1.0 + 0.5 * chi));
  }
  return 0.0;
}

namespace {

bool block_diagonal(const Mat3& m, double atol) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && std::abs(m(i, j)) > atol) return false;
  return true;
}

Mat3 g_block(const Mat3& chi, SourceOperatorKind kind) {
  const double scale = chi.cwiseAbs().maxCoeff();
  if (scale == 0.0) return Mat3::Identity();
  if (block_diagonal(chi, 1e-14 * scale)) {
    Mat3 g = Mat3::Zero();
    for (int i = 0; i < 3; ++i) g(i, i) = g_factor(chi(i, i), kind);
    return g;
  }
  Eigen::SelfAdjointEigenSolver<Mat3> es(chi);
  if (es.info() != Eigen::Success) throw InvalidSourceError("source block eigensolve failed");
  Vec3 gvals;
  for (int i = 0; i < 3; ++i) {
    double lam = es.eigenvalues()[i];
    if (lam < -1e-12 * scale) throw InvalidSourceError("chi has a negative eigenvalue");
    gvals[i] = g_factor(std::max(lam, 0.0), kind);
  }
  return es.eigenvectors() * gvals.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

Mat6 g_factor(const Mat6& chi, SourceOperatorKind kind) {
  Mat6 g = Mat6::Zero();
  g.topLeftCorner<3, 3>() = g_block(chi.topLeftCorner<3, 3>(), kind);
  g.bottomRightCorner<3, 3>() = g_block(chi.bottomRightCorner<3, 3>(), kind);
  return g;
}

double amplification(double chi, SourceOperatorKind kind) {
  return 1.0 - chi * g_factor(chi, kind);
}

State apply_time_centering(const State& u_evolved, double dt, const Mat6& sigma,
                           SourceOperatorKind kind) {
  if (sigma.cwiseAbs().maxCoeff() * dt == 0.0) return u_evolved;
  return g_factor(Mat6(dt * sigma), kind) * u_evolved;
}

void write_amplification_table(std::ostream& out, double chi_max, int samples) {
  out << "# cedfv amplification v1\n";
  out << "chi,G_exact,G_backward_euler,G_l_stable_average\n";
  char line[160];
  for (int i = 0; i < samples; ++i) {
    const double chi = chi_max * static_cast<double>(i) / (samples - 1);
    std::snprintf(line, sizeof line, "%.9e,%.9e,%.9e,%.9e\n", chi,
                  amplification(chi, SourceOperatorKind::Exact),
                  amplification(chi, SourceOperatorKind::BackwardEuler),
                  amplification(chi, SourceOperatorKind::LStableAverage));
    out << line;
  }
}

}  // namespace cedfv
