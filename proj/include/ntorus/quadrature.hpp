#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include "ntorus/grid.hpp"
#include "ntorus/immersion.hpp"

namespace ntorus {

using TorusField = std::function<double(const Eigen::VectorXd& theta)>;
using DirectionFunction = std::function<double(const Eigen::VectorXd& u)>;

// Volume-weighted average Σ field·√det g / Σ √det g on the grid. A
// degenerate metric aborts with the offending θ in the message.
double average_over_torus(const TorusField& field, const FourierImmersion& imm, const TorusGrid& grid);

struct RefinementReport {
  double value = 0.0;  // average on the base grid
  double delta = 0.0;  // |average on doubled grid − value|
};

RefinementReport grid_refinement_report(const TorusField& field, const FourierImmersion& imm,
                                        const TorusGrid& grid);

// Uniform directions on S^{n−1} from normalized Gaussian draws keyed by
// (seed, sample index).
class SphereSampler {
 public:
  SphereSampler(int n, std::size_t count, std::uint64_t seed);

  int dim() const { return n_; }
  std::size_t count() const { return count_; }
  std::uint64_t seed() const { return seed_; }

  Eigen::VectorXd direction(std::size_t index) const;

 private:
  int n_;
  std::size_t count_;
  std::uint64_t seed_;
};

struct McEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

McEstimate sphere_average_mc(const DirectionFunction& fn, const SphereSampler& sampler);

struct MonomialReport {
  double max_deviation = 0.0;  // worst |average − 1|
  double max_z = 0.0;          // worst deviation in standard errors
  std::string worst;           // label of the worst monomial
};

// Averages of (1/3)·n(n+2)·x_i⁴ and n(n+2)·x_i²x_j² (i ≠ j) over the sphere,
// each of which should be 1.
MonomialReport monomial_selftest(int n, std::size_t count, std::uint64_t seed);

}  // namespace ntorus
