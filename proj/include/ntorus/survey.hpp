#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ntorus/grid.hpp"
#include "ntorus/immersion.hpp"
#include "ntorus/pointwise.hpp"

namespace ntorus {

// Pointwise scalars on one grid node. Angles and the conformal value are NaN
// where they are undefined (x = 0, H = 0, n < 3).
struct SurveyPoint {
  double r = 0.0;
  double sqrt_det = 0.0;
  double H_norm = 0.0;
  double H_dot_x = 0.0;
  double zh = 0.0;
  double sc = 0.0;      // intrinsic
  double sc_ext = 0.0;  // (3/2)|H|² − (n(n+2)/2)ж
  double lap_f = 0.0;
  double grad_f_norm = 0.0;
  double beta = 0.0;
  double alpha = 0.0;
  double u = 0.0;
  double lap_u = 0.0;
  double conformal = 0.0;
};

class Survey {
 public:
  // k is the rate of the radial test function; by default the conformal
  // rate for n ≥ 3 and 1 otherwise. Throws DegenerateMetric.
  Survey(const FourierImmersion& imm, const TorusGrid& grid, std::optional<double> k = {});

  const TorusGrid& grid() const { return grid_; }
  double k() const { return k_; }
  const std::vector<SurveyPoint>& points() const { return points_; }

  // Volume-weighted mean with pairwise summation.
  double average(const std::function<double(const SurveyPoint&)>& value) const;

  // Index of the largest value over points accepted by the filter; the
  // lowest index wins ties. Empty when no point qualifies.
  std::optional<std::size_t> argmax(const std::function<double(const SurveyPoint&)>& value,
                                    const std::function<bool(const SurveyPoint&)>& filter = {}) const;

 private:
  TorusGrid grid_;
  double k_;
  std::vector<SurveyPoint> points_;
};

// Extremal normal curvatures at every grid node, seeded per node.
std::vector<ExtremalCurvature> survey_extremes(const FourierImmersion& imm, const TorusGrid& grid,
                                               std::uint64_t seed);

}  // namespace ntorus
