#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bintrack/metrics.hpp"

using namespace bintrack;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("rho: squared Euclidean distance on counts") {
  CHECK(rho({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(rho({0, 1, 2}, {1, 1, 0}) == 5.0);
  CHECK(rho({0, 1, 2}, {1, 1, 0}) == rho({1, 1, 0}, {0, 1, 2}));
  CHECK_THROWS(rho({1, 2}, {1, 2, 3}));
}

TEST_CASE("rho: zero iff equal, invariant under joint permutation") {
  Rng rng(17);
  std::uniform_int_distribution<int> d(0, 4);
  for (int k = 0; k < 100; ++k) {
    CountVector a(8), b(8);
    for (int i = 0; i < 8; ++i) { a[i] = d(rng); b[i] = d(rng); }
    CHECK((rho(a, b) == 0.0) == (a == b));
    CountVector ap = a, bp = b;
    std::vector<int> idx = {5, 2, 7, 0, 3, 6, 1, 4};
    for (int i = 0; i < 8; ++i) { ap[i] = a[idx[i]]; bp[i] = b[idx[i]]; }
    CHECK(rho(ap, bp) == rho(a, b));
  }
}

TEST_CASE("tune_epsilon: heuristic formula with the noiseless floor") {
  CHECK(tune_epsilon(64, 2, 0.05) == doctest::Approx(0.64));
  CHECK(tune_epsilon(16, 4, 0.1) == doctest::Approx(2.56));
  CHECK(tune_epsilon(64, 2, 0.0) == 1.0);
  CHECK(tune_epsilon(7, 5, 0.0) == 1.0);
}

TEST_CASE("tune_epsilon: monotone in each argument for p_e > 0") {
  for (int ns = 1; ns < 100; ns += 7)
    CHECK(tune_epsilon(ns, 3, 0.1) <= tune_epsilon(ns + 1, 3, 0.1));
  for (int nt = 1; nt < 10; ++nt)
    CHECK(tune_epsilon(16, nt, 0.1) <= tune_epsilon(16, nt + 1, 0.1));
  for (double p = 0.01; p < 0.4; p += 0.05)
    CHECK(tune_epsilon(16, 3, p) <= tune_epsilon(16, 3, p + 0.01));
}

TEST_CASE("pseudo_likelihood: 1 at zero deviation, closed-form turn penalty") {
  PseudoLikelihoodParams params;  // pi/8, 0.5
  TargetState prev;
  prev.positions = {{0, 0}};
  prev.velocities = {{2, 0}};

  CHECK(pseudo_likelihood(prev, prev, params) == doctest::Approx(1.0));

  // 90-degree turn, same speed: exp(-(pi/2)^2 / (2 (pi/8)^2)) = exp(-8).
  TargetState turned = prev;
  turned.velocities = {{0, 2}};
  CHECK(pseudo_likelihood(turned, prev, params) ==
        doctest::Approx(std::exp(-8.0)).epsilon(1e-12));
}

TEST_CASE("pseudo_likelihood: bounded by 1, decreasing in deviation") {
  PseudoLikelihoodParams params;
  TargetState prev;
  prev.positions = {{0, 0}};
  prev.velocities = {{1.5, 0}};
  double last = 2.0;
  for (double a = 0.0; a < kPi; a += 0.1) {
    TargetState s = prev;
    s.velocities = {{1.5 * std::cos(a), 1.5 * std::sin(a)}};
    const double f = pseudo_likelihood(s, prev, params);
    CHECK(f <= 1.0);
    CHECK(f > 0.0);
    CHECK(f < last);
    last = f;
  }
  last = 2.0;
  for (double ds = 0.0; ds < 3.0; ds += 0.25) {
    TargetState s = prev;
    s.velocities = {{1.5 + ds, 0}};
    const double f = pseudo_likelihood(s, prev, params);
    CHECK(f <= 1.0);
    CHECK(f < last);
    last = f;
  }
}

TEST_CASE("pseudo_likelihood: invariant under global rotation") {
  PseudoLikelihoodParams params;
  Rng rng(23);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 50; ++k) {
    TargetState prev, next;
    for (int j = 0; j < 3; ++j) {
      prev.positions.emplace_back(u(rng), u(rng));
      prev.velocities.emplace_back(u(rng), u(rng));
      next.positions.emplace_back(u(rng), u(rng));
      next.velocities.emplace_back(u(rng), u(rng));
    }
    const double base = pseudo_likelihood(next, prev, params);
    const double a = 1.1;
    auto rot = [&](TargetState s) {
      for (auto& v : s.velocities)
        v = Vec2{v.x * std::cos(a) - v.y * std::sin(a), v.x * std::sin(a) + v.y * std::cos(a)};
      return s;
    };
    CHECK(pseudo_likelihood(rot(next), rot(prev), params) == doctest::Approx(base));
  }
}

TEST_CASE("pseudo_likelihood: zero velocity drops the bearing factor only") {
  PseudoLikelihoodParams params;
  TargetState prev;
  prev.positions = {{0, 0}};
  prev.velocities = {{0, 0}};
  TargetState next = prev;
  next.velocities = {{0.5, 0}};
  // Only the speed kernel remains: exp(-0.25 / (2 * 0.25)) = exp(-0.5).
  CHECK(pseudo_likelihood(next, prev, params) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("turn_angle wraps to (-pi, pi]") {
  CHECK(turn_angle({1, 0}, {0, 1}) == doctest::Approx(kPi / 2));
  CHECK(turn_angle({1, 0}, {0, -1}) == doctest::Approx(-kPi / 2));
  CHECK(std::abs(turn_angle({1, 0}, {-1, 1e-9})) <= kPi);
}
