#include "ntorus/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ntorus/designs.hpp"
#include "ntorus/intrinsic.hpp"
#include "ntorus/quadrature.hpp"
#include "ntorus/rng.hpp"
#include "ntorus/verify.hpp"

namespace ntorus {

namespace {

TorusGrid fixture_grid(int n) {
  const int per_axis = n <= 2 ? 32 : n == 3 ? 12 : 8;
  return TorusGrid(std::vector<int>(static_cast<std::size_t>(n), per_axis));
}

void add(SelftestReport& report, std::string name, double value, double tolerance) {
  report.items.push_back({std::move(name), value, tolerance, std::isfinite(value) && value <= tolerance});
}

}  // namespace

bool SelftestReport::pass() const {
  return std::all_of(items.begin(), items.end(), [](const SelftestItem& i) { return i.pass; });
}

SelftestReport run_selftest(const SelftestOptions& options) {
  SelftestReport report;
  const double s = options.tolerance_scale;

  for (int n = 1; n <= 4; ++n) {
    const MonomialReport m = monomial_selftest(n, options.samples, options.seed + static_cast<std::uint64_t>(n));
    add(report, "monomial_n" + std::to_string(n), m.max_z, 5.0 * s);
  }

  const int dims[] = {2, 3, 2};
  for (int i = 0; i < 3; ++i) {
    RandomImmersionOptions ro;
    ro.n = dims[i];
    ro.q = dims[i] + 3;
    ro.terms = 4;
    ro.seed = options.seed * 7919 + static_cast<std::uint64_t>(i);
    const FourierImmersion imm = random_immersion(ro);
    const CounterRng rng(ro.seed, 0x6a55);
    double worst = 0.0;
    for (int p = 0; p < options.gauss_points; ++p) {
      Eigen::VectorXd theta(ro.n);
      for (int a = 0; a < ro.n; ++a)
        theta[a] = 2.0 * M_PI * rng.uniform(static_cast<std::uint64_t>(p * ro.n + a));
      worst = std::max(worst, std::abs(gauss_residual(imm, theta)));
    }
    add(report, "gauss_random" + std::to_string(i), worst, 1e-6 * s);
  }

  std::vector<std::pair<std::string, FourierImmersion>> fixtures;
  for (int m = 2; m <= 4; ++m) fixtures.emplace_back("clifford" + std::to_string(m), clifford(m));
  fixtures.emplace_back("hex2", subtorus_immersion(builtin_design("hex2")));
  fixtures.emplace_back("d4", subtorus_immersion(builtin_design("d4")));
  for (const auto& [label, imm] : fixtures) {
    VerifyOptions vo;
    vo.seed = options.seed;
    vo.checks = {"ball", "avg_H", "2d", "flat", "sphere", "main", "bow"};
    for (const CheckReport& r : run_checks(imm, fixture_grid(imm.n()), vo)) {
      if (r.status == CheckStatus::Inapplicable) continue;
      const double value = r.pass && r.margin ? std::abs(*r.margin) : std::numeric_limits<double>::infinity();
      add(report, label + "_" + r.name, value, 1e-8 * s);
    }
  }
  return report;
}

}  // namespace ntorus
