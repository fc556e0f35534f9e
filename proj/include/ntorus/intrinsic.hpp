#pragma once

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Dense>

#include "ntorus/immersion.hpp"

namespace ntorus {

// Metric with its first and second coordinate derivatives.
// dg[k](i,j) = ∂_k g_ij and ddg[l·n+k](i,j) = ∂_l∂_k g_ij.
struct MetricJets {
  int n = 0;
  Eigen::MatrixXd g;
  std::vector<Eigen::MatrixXd> dg;
  std::vector<Eigen::MatrixXd> ddg;
};

// Requires a jet of order 3.
MetricJets metric_jets(const Jet& jet);
MetricJets metric_jets(const FourierImmersion& imm, const Eigen::VectorXd& theta);

struct Curvature {
  double scalar = 0.0;
  Eigen::MatrixXd ricci;
  double riemann_max_abs = 0.0;
  // Christoffel symbols Γ^k_ij at index (k·n+i)·n+j.
  std::vector<double> christoffel;
};

// Levi-Civita curvature of the metric, normalised so that the unit round
// 2-sphere has scalar curvature 2.
Curvature curvature(const MetricJets& mj);
double scalar_curvature_intrinsic(const MetricJets& mj);

// Sc − [(3/2)|H|² − (n(n+2)/2)·ж], intrinsic against extrinsic.
double gauss_residual(const FourierImmersion& imm, const Eigen::VectorXd& theta);

// Quantities along the conformal-test-function argument at one point, for
// u = exp(−(k/2)|x|²) and f = |x|²/2.
struct ProofTracePoint {
  double r = 0.0;
  std::optional<double> alpha;  // ∠(H, x); undefined where H = 0
  double beta = 0.0;            // angle between x and the normal space
  double H_norm = 0.0;
  double H_dot_x = 0.0;
  double zh = 0.0;
  double u = 0.0;
  double lap_f = 0.0;        // Laplace–Beltrami of f from the metric jets
  double grad_f_norm = 0.0;  // |∇f| from the metric
  double lap_u = 0.0;
  double sc = 0.0;
  std::optional<double> conformal_value;  // n ≥ 3 only

  // Throws DimensionTooLow when the conformal operator is undefined.
  double conformal() const;
};

// Throws OriginPoint when |f(θ)| < 1e−12.
ProofTracePoint proof_trace(const Jet& jet3, double k);
ProofTracePoint proof_trace(const FourierImmersion& imm, const Eigen::VectorXd& theta, double k);

using Rational = boost::multiprecision::cpp_rational;

// k = (3/4)·((n−2)/(n−1))·n for the conformal test function; n ≥ 3.
Rational test_function_rate_exact(int n);
double test_function_rate(int n);

}  // namespace ntorus
