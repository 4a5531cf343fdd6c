#include <doctest.h>

#include <random>

#include "cedfv/char_matrices.hpp"
#include "cedfv/errors.hpp"
#include "cedfv/riemann1d.hpp"

using namespace cedfv;

namespace {

State random_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  State u;
  for (int i = 0; i < 6; ++i) u[i] = dist(rng);
  return u;
}

}  // namespace

TEST_SUITE("riemann1d") {

TEST_CASE("consistency: equal states pass through") {
  std::mt19937 rng(1);
  const CharMatrices cm =
      build_characteristic_matrices(MaterialTensors::vacuum(PhysicalConstants::normalized()));
  for (int t = 0; t < 100; ++t) {
    const State u = random_state(rng);
    const State r = hll_resolved(u, u, cm.A, {-1.0, 1.0});
    CHECK((r - u).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("vacuum Bz jump splits into resolved state") {
  const CharMatrices cm =
      build_characteristic_matrices(MaterialTensors::vacuum(PhysicalConstants::normalized()));
  State u_l = State::Zero();
  u_l[kBz] = 1.0;
  const State u_r = State::Zero();
  const State r = hll_resolved(u_l, u_r, cm.A, {-1.0, 1.0});
  CHECK(r[kDy] == doctest::Approx(0.5));
  CHECK(r[kBz] == doctest::Approx(0.5));
  CHECK(std::abs(r[kDx]) + std::abs(r[kDz]) + std::abs(r[kBx]) + std::abs(r[kBy]) < 1e-15);
}

TEST_CASE("zero matrix reduces to the arithmetic mean") {
  std::mt19937 rng(2);
  const Mat6 zero = Mat6::Zero();
  const State u_l = random_state(rng), u_r = random_state(rng);
  const State r = hll_resolved(u_l, u_r, zero, {-1.0, 1.0});
  CHECK((r - 0.5 * (u_l + u_r)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("gradient solver is the identical kernel") {
  std::mt19937 rng(3);
  const CharMatrices cm =
      build_characteristic_matrices(MaterialTensors::vacuum(PhysicalConstants::normalized()));
  for (int t = 0; t < 100; ++t) {
    const State a = random_state(rng), b = random_state(rng);
    const WavePair w{-1.3, 0.8};
    const State s = hll_resolved(a, b, cm.A, w);
    const State g = hll_resolved_gradient(a, b, cm.A, w);
    CHECK((s - g).cwiseAbs().maxCoeff() == 0.0);  // bit-identical
  }
}

TEST_CASE("linearity") {
  std::mt19937 rng(4);
  const CharMatrices cm =
      build_characteristic_matrices(MaterialTensors::vacuum(PhysicalConstants::normalized()));
  for (int t = 0; t < 100; ++t) {
    const State u1 = random_state(rng), u2 = random_state(rng);
    const State v1 = random_state(rng), v2 = random_state(rng);
    const double a = 0.7, b = -1.9;
    const WavePair w{-1.0, 1.0};
    const State lhs = hll_resolved(a * u1 + b * u2, a * v1 + b * v2, cm.A, w);
    const State rhs =
        a * hll_resolved(u1, v1, cm.A, w) + b * hll_resolved(u2, v2, cm.A, w);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13 * (1.0 + rhs.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("degenerate fan is rejected") {
  const Mat6 zero = Mat6::Zero();
  CHECK_THROWS_AS(hll_resolved(State::Zero(), State::Zero(), zero, {1.0, 1.0}),
                  DegenerateFanError);
  CHECK_THROWS_AS(hll_resolved(State::Zero(), State::Zero(), zero, {1.0, 0.5}),
                  DegenerateFanError);
}

TEST_CASE("continuity of the resolved state as s_minus approaches zero") {
  std::mt19937 rng(5);
  const CharMatrices cm =
      build_characteristic_matrices(MaterialTensors::vacuum(PhysicalConstants::normalized()));
  const State u_l = random_state(rng), u_r = random_state(rng);
  // sweep s_minus -> 0^- ; the resolved state converges to its s_minus = 0 limit
  const State limit = (u_r - cm.A * (u_r - u_l));  // formula at s_minus = 0, s_plus = 1
  State prev;
  double prev_dist = 1e300;
  for (double s = -0.5; s < -1e-9; s *= 0.25) {
    const State r = hll_resolved(u_l, u_r, cm.A, {s, 1.0});
    const double dist = (r - limit).cwiseAbs().maxCoeff();
    CHECK(dist <= prev_dist + 1e-12);
    prev_dist = dist;
    prev = r;
  }
  CHECK(prev_dist < 1e-8);
}

}  // TEST_SUITE
