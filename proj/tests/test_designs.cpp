#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ntorus/designs.hpp"
#include "ntorus/error.hpp"
#include "ntorus/intrinsic.hpp"
#include "ntorus/pointwise.hpp"
#include "support.hpp"

using namespace ntorus;
using namespace ntorus::testing;

namespace {

using Rows = std::vector<std::vector<long>>;

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("frame matrix basics") {
  const FrameMatrix one(Rows{{1}});
  CHECK(one.rows() == 1);
  CHECK(one.cols() == 1);
  CHECK(one(0, 0) == 1);
  CHECK(FrameMatrix(Rows{{1, 2}, {2, 4}}).rank() == 1);
  CHECK(FrameMatrix(Rows{{1, 0}, {0, 1}, {1, 1}}).rank() == 2);
  CHECK(kind_of([] { FrameMatrix(Rows{{1, 2}, {3}}); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { FrameMatrix(Rows{}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("hexagonal certificate") {
  const DesignReport r = validate_design(builtin_design("hex2"));
  CHECK(r.m == 3);
  CHECK(r.n == 2);
  CHECK(r.gram == std::vector<std::vector<Integer>>{{2, 1}, {1, 2}});
  CHECK(r.is_constant_curvature);
  CHECK(*r.c == Rational(1, 2));
  CHECK(*r.K2 == Rational(3, 2));
  CHECK(*r.K2 == optimal_K2(2));
  CHECK(r.is_optimal);
  for (const auto& w : r.row_weights) CHECK(w == Rational(2, 3));
}

TEST_CASE("d4 certificate") {
  const DesignReport r = validate_design(builtin_design("d4"));
  CHECK(r.m == 12);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(r.gram[a][b] == (a == b ? 6 : 0));
  CHECK(*r.c == Rational(1, 6));
  CHECK(*r.K2 == Rational(2));
  CHECK(*r.K2 == optimal_K2(4));
  CHECK(r.is_optimal);
}

TEST_CASE("axis plus diagonal design has constant curvature but is not optimal") {
  const DesignReport r = validate_design(builtin_design("axdiag3"));
  CHECK(r.m == 28);
  CHECK(r.is_constant_curvature);
  CHECK(*r.c == Rational(1, 12));
  CHECK(*r.K2 == Rational(7, 3));
  CHECK(*r.K2 > optimal_K2(3));
  CHECK_FALSE(r.is_optimal);
  CHECK(r.row_weights.front() == Rational(1, 12));
  CHECK(r.row_weights.back() == Rational(3, 12));
}

TEST_CASE("circle certificate") {
  const DesignReport r = validate_design(builtin_design("circle1"));
  CHECK(*r.K2 == Rational(1));
  CHECK(r.is_optimal);
  CHECK(*r.K2 == optimal_K2(1));
}

TEST_CASE("non-constant curvature frame") {
  const DesignReport r = validate_design(FrameMatrix(Rows{{1, 0}, {2, 0}, {0, 1}}));
  CHECK_FALSE(r.is_constant_curvature);
  CHECK_FALSE(r.c.has_value());
  CHECK_FALSE(r.K2.has_value());
  CHECK_FALSE(r.is_optimal);
}

TEST_CASE("design errors") {
  CHECK(kind_of([] { validate_design(FrameMatrix(Rows{{1, 2}, {2, 4}})); }) == ErrorKind::RankDeficient);
  CHECK(kind_of([] { subtorus_immersion(FrameMatrix(Rows{{1, 1}})); }) == ErrorKind::RankDeficient);
  CHECK(kind_of([] { builtin_design("e8"); }) == ErrorKind::UnknownDesign);
  CHECK(builtin_design_names().size() == 4);
}

TEST_CASE("identity frame gives the clifford torus") {
  const FourierImmersion a = subtorus_immersion(FrameMatrix(Rows{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  const FourierImmersion b = clifford(3);
  for (std::uint64_t p = 0; p < 5; ++p) {
    const auto theta = random_theta(3, 11, p);
    CHECK(evaluate_jet(a, theta, 2).d2 == evaluate_jet(b, theta, 2).d2);
  }
  const DesignReport r = validate_design(FrameMatrix(Rows{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  CHECK_FALSE(r.is_constant_curvature);
}

TEST_CASE("numerical normal curvature matches the certificate") {
  for (const auto& name : builtin_design_names()) {
    const FrameMatrix B = builtin_design(name);
    const DesignReport r = validate_design(B);
    const FourierImmersion imm = subtorus_immersion(B);
    const int n = imm.n();
    for (std::uint64_t p = 0; p < 4; ++p) {
      const Jet jet = evaluate_jet(imm, random_theta(n, 12, p), 2);
      const SecondForm form = second_form_at(jet, metric_at(jet));
      for (std::uint64_t d = 0; d < 64; ++d)
        CHECK(std::abs(normal_curvature(form, random_unit(n, 13, p * 64 + d)) - r.K) < 1e-10);
      CHECK(std::abs(zh_at(form) - r.K * r.K) < 1e-10);
    }
  }
}

TEST_CASE("optimal bound and identity across designs") {
  const std::vector<Rows> frames{{{1, 0}, {0, 1}},
                                 {{1, 0}, {0, 1}, {1, 1}},
                                 {{1, 0}, {0, 1}, {1, 1}, {1, -1}},
                                 {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (const auto& rows : frames) {
    const DesignReport r = validate_design(FrameMatrix(rows));
    if (!r.is_constant_curvature) continue;
    CHECK(*r.K2 >= optimal_K2(r.n));
    CHECK(r.is_optimal == (*r.K2 == optimal_K2(r.n)));
  }
}

TEST_CASE("subtori are flat and lie on the unit sphere") {
  for (const auto& name : builtin_design_names()) {
    const FourierImmersion imm = subtorus_immersion(builtin_design(name));
    const auto theta = random_theta(imm.n(), 14, 0);
    CHECK(std::abs(evaluate_jet(imm, theta, 0).value.norm() - 1.0) < 1e-14);
    if (imm.n() >= 2) CHECK(std::abs(scalar_curvature_intrinsic(metric_jets(imm, theta))) < 1e-9);
  }
}

TEST_CASE("fraction rendering") {
  CHECK(to_fraction(Rational(3, 2)) == "3/2");
  CHECK(to_fraction(Rational(2)) == "2/1");
  CHECK(to_fraction(Rational(-4, 6)) == "-2/3");
}
