#include <cmath>

#include "doctest.h"
#include "ntorus/parallel.hpp"
#include "ntorus/pointwise.hpp"
#include "ntorus/quadrature.hpp"
#include "support.hpp"

using namespace ntorus;
using namespace ntorus::testing;

namespace {

TorusField zh_field(const FourierImmersion& imm) {
  return [&imm](const Eigen::VectorXd& theta) {
    const Jet jet = evaluate_jet(imm, theta, 2);
    return zh_at(second_form_at(jet, metric_at(jet)));
  };
}

TorusField H_dot_x_field(const FourierImmersion& imm) {
  return [&imm](const Eigen::VectorXd& theta) {
    const Jet jet = evaluate_jet(imm, theta, 2);
    return mean_curvature(second_form_at(jet, metric_at(jet))).dot(jet.value);
  };
}

}  // namespace

TEST_CASE("grid layout") {
  const TorusGrid g({4, 6});
  CHECK(g.size() == 24);
  CHECK(g.point(0).norm() == 0.0);
  CHECK(g.point(1)[1] == doctest::Approx(2 * 3.141592653589793 / 6));
  CHECK(g.point(6)[0] == doctest::Approx(2 * 3.141592653589793 / 4));
  CHECK(g.doubled().sizes() == std::vector<int>{8, 12});
  CHECK_THROWS(TorusGrid({3, 8}));
  CHECK(TorusGrid::default_for(3).sizes() == std::vector<int>{32, 32, 32});
}

TEST_CASE("torus averages") {
  const FourierImmersion c2 = clifford(2);
  const TorusGrid grid({32, 32});
  CHECK(average_over_torus([](const Eigen::VectorXd&) { return 1.0; }, perturbed_clifford2(0.1), grid) == 1.0);
  CHECK(average_over_torus(zh_field(c2), c2, grid) == doctest::Approx(1.5).epsilon(1e-12));

  CHECK(average_over_torus(H_dot_x_field(c2), c2, grid) == doctest::Approx(-2.0).epsilon(1e-12));
  const FourierImmersion hex = hexagonal();
  CHECK(average_over_torus(H_dot_x_field(hex), hex, grid) == doctest::Approx(-2.0).epsilon(1e-12));
  const FourierImmersion pert = perturbed_clifford2(0.05);
  CHECK(std::abs(average_over_torus(H_dot_x_field(pert), pert, TorusGrid({64, 64})) + 2.0) < 1e-8);
  const FourierImmersion rnd = ball_immersion(2, 5, 6, 3);
  CHECK(std::abs(average_over_torus(H_dot_x_field(rnd), rnd, TorusGrid({256, 256})) + 2.0) < 1e-6);
}

TEST_CASE("trapezoid rule is exact for resolved trigonometric polynomials") {
  const FourierImmersion c2 = clifford(2);  // constant volume density
  for (std::uint64_t s = 0; s < 20; ++s) {
    const CounterRng rng(s, 0);
    const int k1 = static_cast<int>(rng.uniform(0) * 15), k2 = static_cast<int>(rng.uniform(1) * 15);
    const double a = rng.normal(2), b = rng.normal(3), c0 = rng.normal(4);
    auto field = [&](const Eigen::VectorXd& t) {
      return c0 + a * std::cos(k1 * t[0] + k2 * t[1] + 0.3) + b * std::sin(k2 * t[0] - k1 * t[1]);
    };
    const double expected = (k1 == 0 && k2 == 0) ? c0 + a * std::cos(0.3) : c0;
    CHECK(std::abs(average_over_torus(field, c2, TorusGrid({32, 32})) - expected) < 1e-13);
  }
}

TEST_CASE("grid refinement report") {
  const FourierImmersion c2 = clifford(2);
  auto resolved = [](const Eigen::VectorXd& t) { return std::pow(std::cos(t[0]), 2) * std::sin(t[1] + 1); };
  CHECK(grid_refinement_report(resolved, c2, TorusGrid({16, 16})).delta < 1e-13);

  const FourierImmersion pert = perturbed_clifford2(0.05);
  const auto report = grid_refinement_report(zh_field(pert), pert, TorusGrid({32, 32}));
  CHECK(report.delta < 1e-8);

  auto aliased = [](const Eigen::VectorXd& t) { return std::cos(48 * t[0]); };
  CHECK(grid_refinement_report(aliased, c2, TorusGrid({16, 16})).delta > 1e-3);
}

TEST_CASE("sphere sampler") {
  const SphereSampler s(3, 100, 5);
  for (std::size_t i = 0; i < 100; ++i) CHECK(std::abs(s.direction(i).norm() - 1.0) < 1e-12);
  CHECK(s.direction(7) == SphereSampler(3, 10, 5).direction(7));
}

TEST_CASE("Monte-Carlo sphere moments") {
  const auto one = sphere_average_mc([](const Eigen::VectorXd&) { return 1.0; }, SphereSampler(3, 5000, 1));
  CHECK(one.mean == 1.0);
  CHECK(one.standard_error == 0.0);

  const auto x4 = sphere_average_mc([](const Eigen::VectorXd& u) { return std::pow(u[0], 4); },
                                    SphereSampler(2, 1000000, 2));
  CHECK(std::abs(x4.mean - 3.0 / 8.0) < 4 * x4.standard_error);

  const auto x2y2 = sphere_average_mc([](const Eigen::VectorXd& u) { return u[0] * u[0] * u[1] * u[1]; },
                                      SphereSampler(3, 1000000, 3));
  CHECK(std::abs(x2y2.mean - 1.0 / 15.0) < 4 * x2y2.standard_error);
}

TEST_CASE("monomial self-test") {
  const auto r2 = monomial_selftest(2, 1000000, 7);
  CHECK(r2.max_deviation < 0.01);
  CHECK(r2.max_z < 5.0);
  const auto r4 = monomial_selftest(4, 1000000, 7);
  CHECK(r4.max_deviation < 0.01);
  CHECK(r4.max_z < 5.0);
  const auto r1 = monomial_selftest(1, 100000, 7);
  CHECK(r1.max_deviation == 0.0);
}

TEST_CASE("Monte-Carlo results do not depend on the thread count") {
  auto fn = [](const Eigen::VectorXd& u) { return std::pow(u[1], 4) + u[0]; };
  set_worker_threads(1);
  const auto a = sphere_average_mc(fn, SphereSampler(4, 300000, 9));
  const auto ma = monomial_selftest(3, 200000, 9);
  set_worker_threads(4);
  const auto b = sphere_average_mc(fn, SphereSampler(4, 300000, 9));
  const auto mb = monomial_selftest(3, 200000, 9);
  set_worker_threads(1);
  CHECK(a.mean == b.mean);
  CHECK(a.standard_error == b.standard_error);
  CHECK(ma.max_deviation == mb.max_deviation);
}
