#include <cmath>

#include "doctest.h"
#include "ntorus/error.hpp"
#include "ntorus/verify.hpp"
#include "support.hpp"

using namespace ntorus;
using namespace ntorus::testing;

namespace {

TorusGrid grid_for(int n) {
  const int per_axis = n <= 2 ? 32 : n == 3 ? 12 : 8;
  return TorusGrid(std::vector<int>(static_cast<std::size_t>(n), per_axis));
}

TorusGrid grid_for(const FourierImmersion& imm) { return grid_for(imm.n()); }

Eigen::VectorXd shift4(double x) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(4);
  c[0] = x;
  return c;
}

void check_passes(const CheckReport& r) {
  INFO(r.name, ": ", r.reason);
  CHECK(r.status == CheckStatus::Pass);
  CHECK(r.pass);
  REQUIRE(r.margin);
  CHECK(*r.margin >= -r.tolerance);
}

void check_skipped(const CheckReport& r) {
  INFO(r.name, ": ", r.reason);
  CHECK(r.status == CheckStatus::Inapplicable);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.margin);
}

}  // namespace

TEST_CASE("ball containment") {
  const FourierImmersion c2 = clifford(2);
  CheckReport r = check_ball_containment(c2, grid_for(2));
  check_passes(r);
  CHECK(std::abs(*r.margin) < 1e-12);

  r = check_ball_containment(scaled(c2, 0.5), grid_for(2));
  check_passes(r);
  CHECK(*r.margin == doctest::Approx(0.5).epsilon(1e-12));

  r = check_ball_containment(scaled(c2, 1.0, shift4(0.5)), grid_for(2));
  CHECK(r.status == CheckStatus::Fail);
  CHECK_FALSE(r.pass);
  REQUIRE(r.margin);
  CHECK(*r.margin < 0.0);
}

TEST_CASE("average mean curvature") {
  CheckReport r = check_avg_H(clifford(2), grid_for(2));
  check_passes(r);
  CHECK(std::abs(*r.margin) < 1e-12);
  CHECK(r.diagnostics.at("average_H") == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.diagnostics.at("divergence_deviation") < 1e-12);

  r = check_avg_H(scaled(clifford(2), 0.5), grid_for(2));
  check_passes(r);
  CHECK(*r.margin == doctest::Approx(2.0).epsilon(1e-12));

  r = check_avg_H(hexagonal(), grid_for(2));
  check_passes(r);
  CHECK(std::abs(*r.margin) < 1e-9);

  check_skipped(check_avg_H(scaled(clifford(2), 1.0, shift4(0.5)), grid_for(2)));
}

TEST_CASE("surface average of zh") {
  CheckReport r = check_2d(clifford(2), grid_for(2));
  check_passes(r);
  CHECK(std::abs(*r.margin) < 1e-12);

  r = check_2d(perturbed_clifford2(0.05), TorusGrid({64, 64}));
  check_passes(r);
  CHECK(*r.margin > 0.0);
  CHECK(std::abs(r.diagnostics.at("average_sc")) < 1e-6);

  r = check_2d(scaled(clifford(2), 0.5), grid_for(2));
  check_passes(r);
  CHECK(r.diagnostics.at("average_zh") == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(*r.margin == doctest::Approx(4.5).epsilon(1e-12));

  check_skipped(check_2d(clifford(3), grid_for(3)));
}

TEST_CASE("flat tori") {
  CheckReport r = check_flat(hexagonal(), grid_for(2));
  check_passes(r);
  CHECK(std::abs(*r.margin) < 1e-9);

  r = check_flat(d4_torus(), grid_for(4));
  check_passes(r);
  CHECK(r.diagnostics.at("average_zh") == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::abs(*r.margin) < 1e-9);

  r = check_flat(subtorus_immersion(builtin_design("axdiag3")), grid_for(3));
  check_passes(r);
  CHECK(r.diagnostics.at("average_zh") == doctest::Approx(7.0 / 3.0).epsilon(1e-10));
  CHECK(*r.margin == doctest::Approx(8.0 / 15.0).epsilon(1e-10));

  check_skipped(check_flat(perturbed_clifford2(0.05), grid_for(2)));
}

TEST_CASE("tori on the sphere") {
  CheckReport r = check_sphere(clifford(3), grid_for(3));
  check_passes(r);
  CHECK(std::abs(*r.margin) < 1e-9);
  REQUIRE(r.witness);
  CHECK(r.witness->theta.size() == 3);

  r = check_sphere(hexagonal(), grid_for(2));
  check_passes(r);
  CHECK(std::abs(*r.margin) < 1e-9);

  check_skipped(check_sphere(scaled(clifford(2), 0.9), grid_for(2)));
}

TEST_CASE("pointwise bound with proof trace") {
  CheckReport r = check_main(clifford(3), grid_for(3));
  check_passes(r);
  CHECK(std::abs(*r.margin) < 1e-9);
  CHECK(std::abs(r.diagnostics.at("conformal_min")) < 1e-9);
  CHECK(r.diagnostics.at("lap_identity_residual") < 1e-8);
  CHECK(r.diagnostics.at("grad_identity_residual") < 1e-8);
  CHECK(r.diagnostics.at("cos2_alpha_plus_sin2_beta_excess") <= 1e-8);

  r = check_main(scaled(clifford(4), 0.999), grid_for(4));
  check_passes(r);
  CHECK(*r.margin == doctest::Approx(2.0 / (0.999 * 0.999) - 2.0).epsilon(1e-8));

  r = check_main(hexagonal(), grid_for(2));
  check_passes(r);
  CHECK(std::abs(*r.margin) < 1e-9);
  CHECK(r.diagnostics.at("delegated_to_2d") == 1.0);

  r = check_main(d4_torus(), grid_for(4));
  check_passes(r);
  CHECK(std::abs(*r.margin) < 1e-9);
  CHECK(r.diagnostics.at("trace_lhs") - r.diagnostics.at("trace_rhs") >= -1e-8);

  check_skipped(check_main(unit_circle(), TorusGrid({32})));
}

TEST_CASE("bow inequality") {
  CheckReport r = check_bow(clifford(2), grid_for(2));
  check_passes(r);
  CHECK(std::abs(*r.margin) < 1e-12);

  r = check_bow(clifford(4), grid_for(4));
  check_passes(r);
  CHECK(std::abs(*r.margin) < 1e-8);
  CHECK(r.diagnostics.at("K_max") == doctest::Approx(2.0).epsilon(1e-9));

  check_skipped(check_bow(scaled(clifford(2), 0.5), grid_for(2)));
}

TEST_CASE("constant normal curvature") {
  CheckReport r = check_constant_K(hexagonal(), 128, 3, std::sqrt(1.5));
  CHECK(r.pass);
  CHECK(-*r.margin < 1e-10);
  CHECK(r.diagnostics.at("K_mean") == doctest::Approx(std::sqrt(1.5)).epsilon(1e-10));

  r = check_constant_K(clifford(2), 128, 3);
  CHECK_FALSE(r.pass);
  CHECK(r.kind == CheckKind::Property);
  CHECK(-*r.margin <= std::sqrt(2.0) - 1.0 + 1e-9);
  CHECK(-*r.margin > 0.3);

  r = check_constant_K(unit_circle(), 16, 3, 1.0);
  CHECK(r.pass);
  CHECK(r.diagnostics.at("K_mean") == doctest::Approx(1.0).epsilon(1e-12));

  r = check_constant_K(hexagonal(), 32, 3, 1.3);
  CHECK_FALSE(r.pass);
}

TEST_CASE("search probe on fixtures") {
  for (const FourierImmersion& imm : {clifford(2), clifford(3), hexagonal(), d4_torus(), perturbed_clifford2(0.05)}) {
    const CheckReport r = open_question_probe(imm, grid_for(imm));
    INFO(r.reason);
    CHECK(r.kind == CheckKind::Probe);
    CHECK(r.pass);
    CHECK(*r.margin >= -1e-9);
  }
  CHECK(std::abs(*open_question_probe(hexagonal(), grid_for(2)).margin) < 1e-9);
  const CheckReport r = open_question_probe(ball_immersion(2, 5, 6, 11), TorusGrid({64, 64}));
  CHECK(r.pass);
  CHECK(*r.margin > 0.0);
}

TEST_CASE("run_checks order, filtering and exit code") {
  VerifyOptions o;
  const std::vector<CheckReport> all = run_checks(hexagonal(), grid_for(2), o);
  REQUIRE(all.size() == check_names().size());
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i].name == check_names()[i]);
  CHECK(verify_exit_code(all) == 0);

  o.checks = {"bow", "ball"};
  const std::vector<CheckReport> two = run_checks(hexagonal(), grid_for(2), o);
  REQUIRE(two.size() == 2);
  CHECK(two[0].name == "ball");
  CHECK(two[1].name == "bow");

  o.checks = {"ball"};
  CHECK(verify_exit_code(run_checks(scaled(clifford(2), 1.0, shift4(0.5)), grid_for(2), o)) == 1);

  o.checks = {"bow"};
  CHECK(verify_exit_code(run_checks(scaled(clifford(2), 0.5), grid_for(2), o)) == 0);

  o.checks = {"nope"};
  CHECK_THROWS_AS(run_checks(hexagonal(), grid_for(2), o), Error);

  CheckReport probe;
  probe.kind = CheckKind::Probe;
  probe.status = CheckStatus::CounterexampleCandidate;
  CHECK(verify_exit_code({all[0], probe}) == 3);
  CheckReport broken;
  broken.status = CheckStatus::Fail;
  CHECK(verify_exit_code({broken, probe}) == 1);
  CheckReport unresolved;
  unresolved.status = CheckStatus::Unresolved;
  CHECK(verify_exit_code({unresolved}) == 1);
}

TEST_CASE("reports are reproducible") {
  VerifyOptions o;
  o.seed = 5;
  const auto a = run_checks(perturbed_clifford2(0.05), grid_for(2), o);
  const auto b = run_checks(perturbed_clifford2(0.05), grid_for(2), o);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].status == b[i].status);
    CHECK(a[i].margin == b[i].margin);
    CHECK(a[i].diagnostics == b[i].diagnostics);
  }
}

TEST_CASE("margin sign agrees with pass") {
  for (const FourierImmersion& imm : {clifford(2), scaled(clifford(2), 0.5), hexagonal(), perturbed_clifford2(0.05)})
    for (const CheckReport& r : run_checks(imm, grid_for(imm), {})) {
      INFO(r.name);
      if (r.status == CheckStatus::Pass) CHECK(*r.margin >= -r.tolerance);
      if (r.status == CheckStatus::Fail && r.margin) CHECK(*r.margin < -r.tolerance);
    }
}
