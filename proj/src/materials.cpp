#include "cedfv/materials.hpp"

#include <Eigen/Eigenvalues>

#include "cedfv/errors.hpp"

namespace cedfv {

MaterialTensors MaterialTensors::vacuum(const PhysicalConstants& pc) {
  return isotropic(pc.eps0, pc.mu0);
}

MaterialTensors MaterialTensors::isotropic(double eps, double mu, double sigma,
                                           double sigma_star) {
  MaterialTensors m;
  m.eps_inv = Mat3::Identity() / eps;
  m.mu_inv = Mat3::Identity() / mu;
  m.sigma = sigma;
  m.sigma_star = sigma_star;
  return m;
}

MaterialTensors MaterialTensors::diagonal(const Vec3& eps_diag, const Vec3& mu_diag,
                                          double sigma, double sigma_star) {
  MaterialTensors m;
  m.eps_inv = eps_diag.cwiseInverse().asDiagonal();
  m.mu_inv = mu_diag.cwiseInverse().asDiagonal();
  m.sigma = sigma;
  m.sigma_star = sigma_star;
  return m;
}

namespace {

bool diagonal_tensor(const Mat3& t, double rtol) {
  const double scale = t.diagonal().cwiseAbs().maxCoeff();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && std::abs(t(i, j)) > rtol * scale) return false;
  return true;
}

void check_spd(const Mat3& t, const char* name) {
  const double scale = t.cwiseAbs().maxCoeff();
  if (!t.allFinite() || scale == 0.0)
    throw InvalidMaterialError(std::string(name) + " tensor is zero or non-finite");
  if ((t - t.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw InvalidMaterialError(std::string(name) + " tensor is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat3> es(t, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw InvalidMaterialError(std::string(name) + " tensor is not positive definite");
}

}  // namespace

bool MaterialTensors::is_diagonal(double rtol) const {
  return diagonal_tensor(eps_inv, rtol) && diagonal_tensor(mu_inv, rtol);
}

void MaterialTensors::validate() const {
  check_spd(eps_inv, "inverse permittivity");
  check_spd(mu_inv, "inverse permeability");
  if (!(sigma >= 0.0)) throw InvalidMaterialError("sigma must be non-negative");
  if (!(sigma_star >= 0.0)) throw InvalidMaterialError("sigma_star must be non-negative");
}

MaterialTensors average(const MaterialTensors& a, const MaterialTensors& b,
                        const MaterialTensors& c, const MaterialTensors& d) {
  MaterialTensors m;
  m.eps_inv = 0.25 * (a.eps_inv + b.eps_inv + c.eps_inv + d.eps_inv);
  m.mu_inv = 0.25 * (a.mu_inv + b.mu_inv + c.mu_inv + d.mu_inv);
  m.sigma = 0.25 * (a.sigma + b.sigma + c.sigma + d.sigma);
  m.sigma_star = 0.25 * (a.sigma_star + b.sigma_star + c.sigma_star + d.sigma_star);
  return m;
}

}  // namespace cedfv
