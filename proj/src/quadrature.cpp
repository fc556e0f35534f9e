#include "ntorus/quadrature.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ntorus/error.hpp"
#include "ntorus/parallel.hpp"
#include "ntorus/pointwise.hpp"
#include "ntorus/rng.hpp"

namespace ntorus {

namespace {

std::string format_theta(const Eigen::VectorXd& theta) {
  std::ostringstream os;
  os.precision(17);
  os << "θ = (";
  for (int i = 0; i < theta.size(); ++i) os << (i ? ", " : "") << theta[i];
  os << ")";
  return os.str();
}

}  // namespace

double average_over_torus(const TorusField& field, const FourierImmersion& imm, const TorusGrid& grid) {
  if (grid.dim() != imm.n()) throw Error(ErrorKind::InvalidArgument, "grid dimension differs from n");
  std::vector<double> weighted(grid.size()), volume(grid.size());
  parallel_for(grid.size(), [&](std::size_t p) {
    const Eigen::VectorXd theta = grid.point(p);
    double w = 0.0;
    try {
      w = metric_at(evaluate_jet(imm, theta, 1)).sqrt_det;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateMetric) throw;
      throw Error(ErrorKind::DegenerateMetric, "degenerate metric at " + format_theta(theta));
    }
    volume[p] = w;
    weighted[p] = w * field(theta);
  });
  return pairwise_sum(weighted) / pairwise_sum(volume);
}

RefinementReport grid_refinement_report(const TorusField& field, const FourierImmersion& imm,
                                        const TorusGrid& grid) {
  RefinementReport report;
  report.value = average_over_torus(field, imm, grid);
  report.delta = std::abs(average_over_torus(field, imm, grid.doubled()) - report.value);
  return report;
}

SphereSampler::SphereSampler(int n, std::size_t count, std::uint64_t seed) : n_(n), count_(count), seed_(seed) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "sphere dimension must be at least 1");
  if (count < 1) throw Error(ErrorKind::InvalidArgument, "sample count must be positive");
}

Eigen::VectorXd SphereSampler::direction(std::size_t index) const {
  const CounterRng rng(seed_, index);
  Eigen::VectorXd u(n_);
  if (n_ == 1) {
    u[0] = rng.normal(0) < 0.0 ? -1.0 : 1.0;
    return u;
  }
  for (;;) {
    for (int i = 0; i < n_; ++i) u[i] = rng.normal(static_cast<std::uint64_t>(i));
    const double norm = u.norm();
    if (norm > 0.0) return u / norm;
  }
}

McEstimate sphere_average_mc(const DirectionFunction& fn, const SphereSampler& sampler) {
  const std::size_t count = sampler.count();
  const auto sums = block_reduce(count, 1, [&](std::size_t i, std::span<double> acc) {
    acc[0] = fn(sampler.direction(i));
  });
  McEstimate est;
  est.mean = sums[0] / double(count);
  if (count > 1) {
    const auto sq = block_reduce(count, 1, [&](std::size_t i, std::span<double> acc) {
      const double d = fn(sampler.direction(i)) - est.mean;
      acc[0] = d * d;
    });
    est.standard_error = std::sqrt(sq[0] / double(count - 1) / double(count));
  }
  return est;
}

MonomialReport monomial_selftest(int n, std::size_t count, std::uint64_t seed) {
  const SphereSampler sampler(n, count, seed);
  const double nn = double(n * (n + 2));
  struct Monomial {
    int i, j;
  };
  std::vector<Monomial> monomials;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) monomials.push_back({i, j});
  auto eval = [&](const Monomial& m, const Eigen::VectorXd& u) {
    if (m.i == m.j) return nn / 3.0 * std::pow(u[m.i], 4);
    return nn * u[m.i] * u[m.i] * u[m.j] * u[m.j];
  };
  const std::size_t width = monomials.size();
  // Accumulate Σv and Σv² per monomial in one pass.
  const auto sums = block_reduce(count, 2 * width, [&](std::size_t s, std::span<double> acc) {
    const Eigen::VectorXd u = sampler.direction(s);
    for (std::size_t m = 0; m < width; ++m) {
      const double v = eval(monomials[m], u);
      acc[2 * m] = v;
      acc[2 * m + 1] = v * v;
    }
  });
  MonomialReport report;
  for (std::size_t m = 0; m < width; ++m) {
    const double mean = sums[2 * m] / double(count);
    const double var = std::max(0.0, (sums[2 * m + 1] - double(count) * mean * mean) / double(count - 1));
    const double se = std::sqrt(var / double(count));
    const double dev = std::abs(mean - 1.0);
    const double z = dev == 0.0 ? 0.0 : (se > 0.0 ? dev / se : std::numeric_limits<double>::infinity());
    std::ostringstream label;
    if (monomials[m].i == monomials[m].j)
      label << "x" << monomials[m].i + 1 << "^4";
    else
      label << "x" << monomials[m].i + 1 << "^2 x" << monomials[m].j + 1 << "^2";
    if (dev > report.max_deviation || report.worst.empty()) {
      report.max_deviation = std::max(report.max_deviation, dev);
      report.worst = label.str();
    }
    report.max_z = std::max(report.max_z, z);
  }
  return report;
}

}  // namespace ntorus
