#include "ntorus/survey.hpp"

#include <cmath>
#include <limits>

#include "ntorus/error.hpp"
#include "ntorus/intrinsic.hpp"
#include "ntorus/parallel.hpp"
#include "ntorus/rng.hpp"

namespace ntorus {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SurveyPoint survey_point(const Jet& jet, double k) {
  const int n = jet.n;
  SurveyPoint p;
  p.r = jet.value.norm();
  if (p.r >= 1e-12) {
    const ProofTracePoint pt = proof_trace(jet, k);
    p.sqrt_det = metric_at(jet).sqrt_det;
    p.H_norm = pt.H_norm;
    p.H_dot_x = pt.H_dot_x;
    p.zh = pt.zh;
    p.sc = pt.sc;
    p.lap_f = pt.lap_f;
    p.grad_f_norm = pt.grad_f_norm;
    p.beta = pt.beta;
    p.alpha = pt.alpha.value_or(kNaN);
    p.u = pt.u;
    p.lap_u = pt.lap_u;
    p.conformal = pt.conformal_value.value_or(kNaN);
  } else {
    const MetricPoint metric = metric_at(jet);
    const SecondForm form = second_form_at(jet, metric);
    p.sqrt_det = metric.sqrt_det;
    p.H_norm = mean_curvature(form).norm();
    p.zh = zh_at(form);
    p.sc = scalar_curvature_intrinsic(metric_jets(jet));
    p.lap_f = n;
    p.beta = kNaN;
    p.alpha = kNaN;
    p.u = 1.0;
    p.lap_u = -k * n;
    p.conformal = n >= 3 ? p.sc - 4.0 * (n - 1.0) / (n - 2.0) * p.lap_u : kNaN;
  }
  p.sc_ext = 1.5 * p.H_norm * p.H_norm - 0.5 * n * (n + 2) * p.zh;
  return p;
}

}  // namespace

Survey::Survey(const FourierImmersion& imm, const TorusGrid& grid, std::optional<double> k)
    : grid_(grid), k_(k.value_or(imm.n() >= 3 ? test_function_rate(imm.n()) : 1.0)) {
  if (grid.dim() != imm.n()) throw Error(ErrorKind::InvalidArgument, "grid dimension differs from n");
  points_.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    points_[i] = survey_point(evaluate_jet(imm, grid.point(i), 3), k_);
  });
}

double Survey::average(const std::function<double(const SurveyPoint&)>& value) const {
  std::vector<double> weighted(points_.size()), volume(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    volume[i] = points_[i].sqrt_det;
    weighted[i] = points_[i].sqrt_det * value(points_[i]);
  }
  return pairwise_sum(weighted) / pairwise_sum(volume);
}

std::optional<std::size_t> Survey::argmax(const std::function<double(const SurveyPoint&)>& value,
                                          const std::function<bool(const SurveyPoint&)>& filter) const {
  std::optional<std::size_t> best;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (filter && !filter(points_[i])) continue;
    const double v = value(points_[i]);
    if (!best || v > best_value) {
      best = i;
      best_value = v;
    }
  }
  return best;
}

std::vector<ExtremalCurvature> survey_extremes(const FourierImmersion& imm, const TorusGrid& grid,
                                               std::uint64_t seed) {
  std::vector<ExtremalCurvature> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const Jet jet = evaluate_jet(imm, grid.point(i), 2);
    ExtremalOptions options;
    options.seed = CounterRng(seed, i).bits(0);
    out[i] = extremal_normal_curvature(second_form_at(jet, metric_at(jet)), options);
  });
  return out;
}

}  // namespace ntorus
