#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ntorus/designs.hpp"
#include "ntorus/immersion.hpp"
#include "ntorus/rng.hpp"

namespace ntorus::testing {

inline Eigen::VectorXd random_theta(int n, std::uint64_t seed, std::uint64_t index) {
  const CounterRng rng(seed, index);
  Eigen::VectorXd t(n);
  for (int i = 0; i < n; ++i) t[i] = 2.0 * 3.141592653589793 * rng.uniform(static_cast<std::uint64_t>(i));
  return t;
}

inline Eigen::VectorXd random_unit(int n, std::uint64_t seed, std::uint64_t index) {
  const CounterRng rng(seed ^ 0xABCDEFULL, index);
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u[i] = rng.normal(static_cast<std::uint64_t>(i));
  return u.normalized();
}

inline Eigen::MatrixXd random_rotation(int q, std::uint64_t seed) {
  const CounterRng rng(seed, 77);
  Eigen::MatrixXd A(q, q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) A(i, j) = rng.normal(static_cast<std::uint64_t>(i * q + j));
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
  return qr.householderQ() * Eigen::MatrixXd::Identity(q, q);
}

inline FourierImmersion hexagonal() { return subtorus_immersion(builtin_design("hex2")); }
inline FourierImmersion d4_torus() { return subtorus_immersion(builtin_design("d4")); }
inline FourierImmersion unit_circle() { return clifford(1); }

inline FourierImmersion scaled(const FourierImmersion& imm, double lambda,
                               Eigen::VectorXd shift = {}) {
  if (shift.size() == 0) shift = Eigen::VectorXd::Zero(imm.q());
  return transform(imm, Eigen::MatrixXd::Identity(imm.q(), imm.q()), shift, lambda);
}

// Clifford T² with one extra high-frequency term of amplitude eps in the
// coordinates, rescaled so that the result stays inside the unit ball.
inline FourierImmersion perturbed_clifford2(double eps) {
  const FourierImmersion base = clifford(2);
  std::vector<FourierTerm> terms;
  const double r = 1.0 / std::sqrt(2.0);
  for (const auto& t : base.terms()) terms.push_back({t.k, r * t.a, r * t.b});
  Eigen::VectorXd a(4), b(4);
  a << 0.3, -0.2, 0.5, 0.1;
  b << -0.1, 0.4, 0.2, -0.3;
  terms.push_back({{3, 2}, eps * a, eps * b});
  return FourierImmersion(Signature(2, 4), std::move(terms), 1.0 / (1.0 + eps * 1.2));
}

// Random immersion contained in the ball of radius 0.9.
inline FourierImmersion ball_immersion(int n, int q, int terms, std::uint64_t seed, int max_frequency = 2) {
  RandomImmersionOptions opt;
  opt.n = n;
  opt.q = q;
  opt.terms = terms;
  opt.max_frequency = max_frequency;
  opt.target_radius = 0.9;
  opt.translate_radius = 0.1;
  opt.seed = seed;
  return random_immersion(opt);
}

}  // namespace ntorus::testing
