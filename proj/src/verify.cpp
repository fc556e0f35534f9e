#include "ntorus/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ntorus/error.hpp"
#include "ntorus/intrinsic.hpp"
#include "ntorus/pointwise.hpp"
#include "ntorus/rng.hpp"

namespace ntorus {

namespace {

constexpr double kBallTol = 1e-9;
constexpr double kRefineTol = 1e-6;
constexpr double kKmaxBound = 2.0;
constexpr double kKmaxSlack = 1e-9;

double optimal_zh(int n) { return 3.0 * n / (n + 2.0); }

CheckReport make(std::string name, CheckKind kind, double tolerance) {
  CheckReport r;
  r.name = std::move(name);
  r.kind = kind;
  r.tolerance = tolerance;
  return r;
}

CheckReport inapplicable(CheckReport r, std::string reason) {
  r.status = CheckStatus::Inapplicable;
  r.pass = false;
  r.margin.reset();
  r.reason = std::move(reason);
  return r;
}

void decide(CheckReport& r, double margin, bool extra_ok = true, std::string failure = {}) {
  r.margin = margin;
  const bool ok = margin >= -r.tolerance && extra_ok;
  r.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  r.pass = ok;
  if (!ok) r.reason = margin < -r.tolerance ? "margin below tolerance" : std::move(failure);
}

// Averages must agree between the base and the doubled grid.
void require_refined_average(CheckReport& r, double base, double refined) {
  const double delta = std::abs(refined - base);
  r.diagnostics["refinement_delta"] = delta;
  if (delta >= kRefineTol) {
    r.status = CheckStatus::Unresolved;
    r.pass = false;
    r.reason = "grid refinement changed the average by more than 1e-6";
  }
}

// Grid extrema only need a stable verdict.
void require_refined_extremum(CheckReport& r, double base_margin, double refined_margin) {
  const double delta = std::abs(refined_margin - base_margin);
  r.diagnostics["refinement_delta"] = delta;
  const bool base_ok = base_margin >= -r.tolerance;
  const bool refined_ok = refined_margin >= -r.tolerance;
  if (delta >= kRefineTol && base_ok != refined_ok) {
    r.status = CheckStatus::Unresolved;
    r.pass = false;
    r.reason = "verdict changed under grid refinement";
  }
}

Witness witness_at(const Survey& s, std::size_t index) {
  const SurveyPoint& p = s.points()[index];
  Witness w;
  w.theta = s.grid().point(index);
  w.values = {{"r", p.r},   {"zh", p.zh},       {"sc", p.sc},     {"H_norm", p.H_norm},
              {"beta", p.beta}, {"alpha", p.alpha}, {"conformal", p.conformal}};
  return w;
}

bool in_ball(CheckContext& ctx) { return 1.0 - ctx.max_norm_refined() >= -kBallTol; }

double max_zh_margin(const Survey& s, int n) {
  const auto best = s.argmax([](const SurveyPoint& p) { return p.zh; });
  return s.points()[*best].zh - optimal_zh(n);
}

}  // namespace

std::string_view to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::Theorem: return "theorem";
    case CheckKind::Property: return "property";
    case CheckKind::Probe: return "probe";
  }
  return "unknown";
}

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inapplicable: return "skipped";
    case CheckStatus::Unresolved: return "unresolved";
    case CheckStatus::CounterexampleCandidate: return "counterexample-candidate";
  }
  return "unknown";
}

CheckContext::CheckContext(FourierImmersion imm, TorusGrid grid, std::uint64_t seed)
    : imm_(std::move(imm)), grid_(std::move(grid)), seed_(seed) {
  if (grid_.dim() != imm_.n()) throw Error(ErrorKind::InvalidArgument, "grid dimension differs from n");
}

const Survey& CheckContext::base() {
  if (!base_) base_ = std::make_unique<Survey>(imm_, grid_);
  return *base_;
}

const Survey& CheckContext::refined() {
  if (!refined_) refined_ = std::make_unique<Survey>(imm_, grid_.doubled());
  return *refined_;
}

const std::vector<ExtremalCurvature>& CheckContext::extremes() {
  if (!extremes_) extremes_ = survey_extremes(imm_, grid_, seed_);
  return *extremes_;
}

double CheckContext::K_max() {
  double k = 0.0;
  for (const auto& e : extremes()) k = std::max(k, e.K_max);
  return k;
}

double CheckContext::max_norm_refined() { return max_norm_on_grid(imm_, grid_.doubled()); }

CheckReport check_ball_containment(CheckContext& ctx) {
  CheckReport r = make("ball", CheckKind::Theorem, kBallTol);
  const double base = max_norm_on_grid(ctx.immersion(), ctx.grid());
  const double refined = ctx.max_norm_refined();
  r.diagnostics["max_norm"] = refined;
  r.diagnostics["max_norm_base"] = base;
  decide(r, 1.0 - refined);
  require_refined_extremum(r, 1.0 - base, 1.0 - refined);
  return r;
}

CheckReport check_avg_H(CheckContext& ctx) {
  CheckReport r = make("avg_H", CheckKind::Theorem, 1e-7);
  if (!in_ball(ctx)) return inapplicable(r, "image leaves the unit ball");
  const int n = ctx.immersion().n();
  auto H = [](const SurveyPoint& p) { return p.H_norm; };
  const double base = ctx.base().average(H);
  const double avg = ctx.refined().average(H);
  const double avg_dot = ctx.refined().average([](const SurveyPoint& p) { return p.H_dot_x; });
  const double deviation = std::abs(avg_dot + n);
  r.diagnostics["average_H"] = avg;
  r.diagnostics["average_H_base"] = base;
  r.diagnostics["average_H_dot_x"] = avg_dot;
  r.diagnostics["divergence_deviation"] = deviation;
  decide(r, avg - n, deviation < 1e-7, "average of <H,x> differs from -n by more than 1e-7");
  require_refined_average(r, base, avg);
  return r;
}

CheckReport check_2d(CheckContext& ctx) {
  CheckReport r = make("2d", CheckKind::Theorem, 1e-7);
  if (ctx.immersion().n() != 2) return inapplicable(r, "requires n = 2");
  if (!in_ball(ctx)) return inapplicable(r, "image leaves the unit ball");
  auto zh = [](const SurveyPoint& p) { return p.zh; };
  const double base = ctx.base().average(zh);
  const double avg = ctx.refined().average(zh);
  const double avg_sc = ctx.refined().average([](const SurveyPoint& p) { return p.sc; });
  r.diagnostics["average_zh"] = avg;
  r.diagnostics["average_zh_base"] = base;
  r.diagnostics["average_sc"] = avg_sc;
  decide(r, avg - 1.5, std::abs(avg_sc) < 1e-6, "average scalar curvature exceeds 1e-6");
  require_refined_average(r, base, avg);
  return r;
}

CheckReport check_flat(CheckContext& ctx) {
  CheckReport r = make("flat", CheckKind::Theorem, 1e-8);
  if (!in_ball(ctx)) return inapplicable(r, "image leaves the unit ball");
  double max_sc = 0.0;
  for (const auto& p : ctx.base().points()) max_sc = std::max(max_sc, std::abs(p.sc));
  r.diagnostics["max_abs_sc"] = max_sc;
  if (max_sc >= 1e-7) return inapplicable(r, "metric is not flat");
  const int n = ctx.immersion().n();
  auto zh = [](const SurveyPoint& p) { return p.zh; };
  const double base = ctx.base().average(zh);
  const double avg = ctx.refined().average(zh);
  r.diagnostics["average_zh"] = avg;
  r.diagnostics["average_zh_base"] = base;
  r.diagnostics["bound"] = optimal_zh(n);
  decide(r, avg - optimal_zh(n));
  require_refined_average(r, base, avg);
  return r;
}

CheckReport check_sphere(CheckContext& ctx) {
  CheckReport r = make("sphere", CheckKind::Theorem, 1e-8);
  double off_sphere = 0.0;
  for (const auto& p : ctx.base().points()) off_sphere = std::max(off_sphere, std::abs(p.r - 1.0));
  r.diagnostics["max_sphere_deviation"] = off_sphere;
  if (off_sphere >= 1e-9) return inapplicable(r, "image is not on the unit sphere");
  const int n = ctx.immersion().n();
  auto zh = [](const SurveyPoint& p) { return p.zh; };
  auto nonpositive = [](const SurveyPoint& p) { return p.sc <= 1e-7; };
  const auto base_best = ctx.base().argmax(zh, nonpositive);
  const auto best = ctx.refined().argmax(zh, nonpositive);
  if (!best || !base_best) {
    r.status = CheckStatus::Unresolved;
    r.pass = false;
    r.reason = "no grid point with scalar curvature at most 1e-7";
    return r;
  }
  const double base_margin = ctx.base().points()[*base_best].zh - optimal_zh(n);
  const double margin = ctx.refined().points()[*best].zh - optimal_zh(n);
  r.witness = witness_at(ctx.refined(), *best);
  r.diagnostics["bound"] = optimal_zh(n);
  decide(r, margin);
  require_refined_extremum(r, base_margin, margin);
  return r;
}

CheckReport check_main(CheckContext& ctx) {
  const int n = ctx.immersion().n();
  if (n == 2) {
    CheckReport r = check_2d(ctx);
    r.name = "main";
    r.diagnostics["delegated_to_2d"] = 1.0;
    return r;
  }
  CheckReport r = make("main", CheckKind::Theorem, 1e-8);
  if (n < 2) return inapplicable(r, "requires n >= 2");
  if (!in_ball(ctx)) return inapplicable(r, "image leaves the unit ball");
  if (n >= 5) {
    const double kmax = ctx.K_max();
    r.diagnostics["K_max"] = kmax;
    if (kmax > kKmaxBound + kKmaxSlack) return inapplicable(r, "normal curvature exceeds 2");
  }

  const Survey& s = ctx.refined();
  const double margin = max_zh_margin(s, n);
  const double base_margin = max_zh_margin(ctx.base(), n);

  double lap_residual = 0.0, grad_residual = 0.0, sandwich = 0.0, unit_sum = 0.0;
  for (const auto& p : s.points()) {
    lap_residual = std::max(lap_residual, std::abs(p.lap_f - (n + p.H_dot_x)));
    if (std::isnan(p.beta)) continue;
    grad_residual = std::max(grad_residual, std::abs(p.grad_f_norm - p.r * std::sin(p.beta)));
    if (std::isnan(p.alpha)) continue;
    sandwich = std::max({sandwich, p.beta - p.alpha, p.alpha - (std::numbers::pi - p.beta)});
    unit_sum = std::max(unit_sum, std::pow(std::cos(p.alpha), 2) + std::pow(std::sin(p.beta), 2) - 1.0);
  }
  r.diagnostics["lap_identity_residual"] = lap_residual;
  r.diagnostics["grad_identity_residual"] = grad_residual;
  r.diagnostics["angle_sandwich_violation"] = sandwich;
  r.diagnostics["cos2_alpha_plus_sin2_beta_excess"] = unit_sum;
  r.diagnostics["bound"] = optimal_zh(n);

  // Trace the inequality chain at the grid minimizer of the conformal value.
  const auto at = s.argmax([](const SurveyPoint& p) { return -p.conformal; },
                           [](const SurveyPoint& p) { return !std::isnan(p.conformal) && !std::isnan(p.beta); });
  bool trace_ok = true;
  double conformal_min = 0.0;
  if (at) {
    const SurveyPoint& p = s.points()[*at];
    conformal_min = p.conformal;
    const double cos_a = std::isnan(p.alpha) ? 0.0 : std::cos(p.alpha);
    const double sin_b = std::sin(p.beta);
    const double nr = n * p.r;
    const double term_square = 1.5 * std::pow(p.H_norm + nr * cos_a, 2);
    const double term_cos = -1.5 * nr * nr * cos_a * cos_a;
    const double term_const = 3.0 * n * n;
    const double term_sin = -2.25 * (n - 2.0) / (n - 1.0) * nr * nr * sin_b * sin_b;
    const double lhs = 0.5 * n * (n + 2) * p.zh;
    r.diagnostics["conformal_min"] = conformal_min;
    r.diagnostics["trace_term_square"] = term_square;
    r.diagnostics["trace_term_cos"] = term_cos;
    r.diagnostics["trace_term_const"] = term_const;
    r.diagnostics["trace_term_sin"] = term_sin;
    r.diagnostics["trace_lhs"] = lhs;
    r.diagnostics["trace_rhs"] = term_square + term_cos + term_const + term_sin;
    r.diagnostics["trace_floor"] = 1.5 * n * n;
    r.diagnostics["trace_cos2_alpha_plus_sin2_beta"] = cos_a * cos_a + sin_b * sin_b;
    r.diagnostics["trace_r2_plus_sin2_beta"] = p.r * p.r + sin_b * sin_b;
    r.witness = witness_at(s, *at);
    if (n >= 5) trace_ok = p.r * p.r + sin_b * sin_b <= 1.0 + 1e-8;
  }

  const bool identities_ok = lap_residual <= 1e-8 && grad_residual <= 1e-8 && sandwich <= 1e-8 && unit_sum <= 1e-8;
  decide(r, margin, identities_ok && trace_ok, "proof-trace identity violated");
  require_refined_extremum(r, base_margin, margin);
  if (r.status == CheckStatus::Pass && at && conformal_min > 1e-7) {
    r.status = CheckStatus::Unresolved;
    r.pass = false;
    r.reason = "conformal value is positive on the whole grid";
  }
  return r;
}

CheckReport check_bow(CheckContext& ctx) {
  CheckReport r = make("bow", CheckKind::Theorem, 1e-8);
  if (!in_ball(ctx)) return inapplicable(r, "image leaves the unit ball");
  const double kmax = ctx.K_max();
  r.diagnostics["K_max"] = kmax;
  if (kmax > kKmaxBound + kKmaxSlack) return inapplicable(r, "normal curvature exceeds 2");
  auto slack = [](const SurveyPoint& p) { return p.r - std::cos(p.beta); };
  auto defined = [](const SurveyPoint& p) { return !std::isnan(p.beta); };
  const auto base_worst = ctx.base().argmax(slack, defined);
  const auto worst = ctx.refined().argmax(slack, defined);
  if (!worst || !base_worst) {
    decide(r, 0.0);
    return r;
  }
  const double base_margin = -slack(ctx.base().points()[*base_worst]);
  const double margin = -slack(ctx.refined().points()[*worst]);
  r.witness = witness_at(ctx.refined(), *worst);
  decide(r, margin);
  require_refined_extremum(r, base_margin, margin);
  return r;
}

CheckReport check_constant_K(const FourierImmersion& imm, int directions, std::uint64_t seed,
                             std::optional<double> certified_K) {
  CheckReport r = make("constant_K", CheckKind::Property, 1e-10);
  if (directions < 1) throw Error(ErrorKind::InvalidArgument, "directions must be positive");
  const int n = imm.n();
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0, sum = 0.0;
  Eigen::VectorXd lo_theta, hi_theta;
  for (int i = 0; i < directions; ++i) {
    const CounterRng rng(seed, 0xC0057A47ULL + static_cast<std::uint64_t>(i));
    Eigen::VectorXd theta(n), u(n);
    for (int a = 0; a < n; ++a) theta[a] = 2.0 * std::numbers::pi * rng.uniform(static_cast<std::uint64_t>(a));
    for (int a = 0; a < n; ++a) u[a] = rng.normal(static_cast<std::uint64_t>(n + a));
    u.normalize();
    const Jet jet = evaluate_jet(imm, theta, 2);
    const double K = normal_curvature(second_form_at(jet, metric_at(jet)), u);
    sum += K;
    if (K < lo) {
      lo = K;
      lo_theta = theta;
    }
    if (K > hi) {
      hi = K;
      hi_theta = theta;
    }
  }
  const double mean = sum / directions;
  r.diagnostics["K_min"] = lo;
  r.diagnostics["K_max"] = hi;
  r.diagnostics["K_mean"] = mean;
  r.diagnostics["directions"] = directions;
  bool certificate_ok = true;
  if (certified_K) {
    const double deviation = std::abs(mean - *certified_K);
    r.diagnostics["certified_K"] = *certified_K;
    r.diagnostics["certificate_deviation"] = deviation;
    certificate_ok = deviation < 1e-10;
  }
  r.witness = Witness{hi_theta, {{"K_max", hi}}};
  decide(r, -(hi - lo), certificate_ok, "mean curvature differs from the certificate");
  return r;
}

CheckReport open_question_probe(CheckContext& ctx) {
  CheckReport r = make("open_question", CheckKind::Probe, 1e-8);
  if (!in_ball(ctx)) return inapplicable(r, "image leaves the unit ball");
  const int n = ctx.immersion().n();
  const Survey& s = ctx.refined();
  const auto best = s.argmax([](const SurveyPoint& p) { return p.zh; });
  const double margin = s.points()[*best].zh - optimal_zh(n);
  r.witness = witness_at(s, *best);
  r.diagnostics["max_zh"] = s.points()[*best].zh;
  r.diagnostics["bound"] = optimal_zh(n);
  decide(r, margin);
  require_refined_extremum(r, max_zh_margin(ctx.base(), n), margin);
  if (r.status == CheckStatus::Fail) {
    r.status = CheckStatus::CounterexampleCandidate;
    r.reason = "maximum of zh stays below 3n/(n+2)";
  }
  return r;
}

#define NTORUS_FRESH_CONTEXT(fn)                                        \
  CheckReport fn(const FourierImmersion& imm, const TorusGrid& grid) { \
    CheckContext ctx(imm, grid);                                        \
    return fn(ctx);                                                     \
  }
NTORUS_FRESH_CONTEXT(check_ball_containment)
NTORUS_FRESH_CONTEXT(check_avg_H)
NTORUS_FRESH_CONTEXT(check_2d)
NTORUS_FRESH_CONTEXT(check_flat)
NTORUS_FRESH_CONTEXT(check_sphere)
NTORUS_FRESH_CONTEXT(check_main)
NTORUS_FRESH_CONTEXT(check_bow)
NTORUS_FRESH_CONTEXT(open_question_probe)
#undef NTORUS_FRESH_CONTEXT

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"ball", "avg_H", "2d",         "flat",         "sphere",
                                              "main", "bow",   "constant_K", "open_question"};
  return names;
}

std::vector<CheckReport> run_checks(const FourierImmersion& imm, const TorusGrid& grid,
                                    const VerifyOptions& options) {
  const auto& names = check_names();
  for (const auto& c : options.checks)
    if (std::find(names.begin(), names.end(), c) == names.end())
      throw Error(ErrorKind::InvalidArgument, "unknown check '" + c + "'");
  auto selected = [&](const std::string& name) {
    return options.checks.empty() ||
           std::find(options.checks.begin(), options.checks.end(), name) != options.checks.end();
  };

  CheckContext ctx(imm, grid, options.seed);
  std::vector<CheckReport> out;
  for (const auto& name : names) {
    if (!selected(name)) continue;
    if (name == "ball") out.push_back(check_ball_containment(ctx));
    else if (name == "avg_H") out.push_back(check_avg_H(ctx));
    else if (name == "2d") out.push_back(check_2d(ctx));
    else if (name == "flat") out.push_back(check_flat(ctx));
    else if (name == "sphere") out.push_back(check_sphere(ctx));
    else if (name == "main") out.push_back(check_main(ctx));
    else if (name == "bow") out.push_back(check_bow(ctx));
    else if (name == "constant_K") out.push_back(check_constant_K(imm, options.directions, options.seed, options.certified_K));
    else out.push_back(open_question_probe(ctx));
  }
  return out;
}

int verify_exit_code(const std::vector<CheckReport>& reports) {
  bool candidate = false;
  for (const auto& r : reports) {
    if (r.kind == CheckKind::Theorem && (r.status == CheckStatus::Fail || r.status == CheckStatus::Unresolved))
      return 1;
    if (r.kind == CheckKind::Probe && r.status == CheckStatus::CounterexampleCandidate) candidate = true;
  }
  return candidate ? 3 : 0;
}

}  // namespace ntorus
