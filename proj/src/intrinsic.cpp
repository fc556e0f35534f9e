#include "ntorus/intrinsic.hpp"

#include <cmath>
#include <string>

#include "ntorus/error.hpp"
#include "ntorus/pointwise.hpp"

namespace ntorus {

MetricJets metric_jets(const Jet& jet) {
  if (jet.order < 3) throw Error(ErrorKind::InvalidArgument, "metric jets need an order-3 immersion jet");
  const int n = jet.n;
  MetricJets mj;
  mj.n = n;
  mj.g = jet.d1 * jet.d1.transpose();
  mj.dg.assign(n, Eigen::MatrixXd::Zero(n, n));
  mj.ddg.assign(n * n, Eigen::MatrixXd::Zero(n, n));

  // ∂_k g_ij = ⟨f_ik, f_j⟩ + ⟨f_i, f_jk⟩
  // ∂_l∂_k g_ij = ⟨f_ikl, f_j⟩ + ⟨f_ik, f_jl⟩ + ⟨f_il, f_jk⟩ + ⟨f_i, f_jkl⟩
  const Eigen::MatrixXd d2d1 = jet.d1 * jet.d2;  // (j, i·n+k) = ⟨f_j, f_ik⟩
  const Eigen::MatrixXd d2d2 = jet.d2.transpose() * jet.d2;
  const Eigen::MatrixXd d3d1 = jet.d1 * jet.d3;  // (j, (i·n+k)·n+l) = ⟨f_j, f_ikl⟩
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mj.dg[k](i, j) = d2d1(j, i * n + k) + d2d1(i, j * n + k);
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          mj.ddg[l * n + k](i, j) = d3d1(j, (i * n + k) * n + l) + d2d2(i * n + k, j * n + l) +
                                    d2d2(i * n + l, j * n + k) + d3d1(i, (j * n + k) * n + l);
  return mj;
}

MetricJets metric_jets(const FourierImmersion& imm, const Eigen::VectorXd& theta) {
  return metric_jets(evaluate_jet(imm, theta, 3));
}

Curvature curvature(const MetricJets& mj) {
  const int n = mj.n;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(mj.g);
  const double smallest = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(mj.g, Eigen::EigenvaluesOnly).eigenvalues()[0];
  if (!(smallest >= 1e-12))
    throw Error(ErrorKind::DegenerateMetric, "smallest metric eigenvalue " + std::to_string(smallest));
  const Eigen::MatrixXd ginv = ldlt.solve(Eigen::MatrixXd::Identity(n, n));

  auto idx = [n](int k, int i, int j) { return (k * n + i) * n + j; };
  const std::size_t n3 = static_cast<std::size_t>(n * n * n);

  // First-kind symbols Γ_{m,ij} and their derivatives.
  std::vector<double> first(n3), gamma(n3, 0.0);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) first[idx(m, i, j)] = 0.5 * (mj.dg[i](j, m) + mj.dg[j](i, m) - mj.dg[m](i, j));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int m = 0; m < n; ++m) s += ginv(k, m) * first[idx(m, i, j)];
        gamma[idx(k, i, j)] = s;
      }

  // dgamma[l][k,i,j] = ∂_l Γ^k_ij = (∂_l g^{km}) Γ_{m,ij} + g^{km} ∂_l Γ_{m,ij}.
  std::vector<std::vector<double>> dgamma(n, std::vector<double>(n3, 0.0));
  for (int l = 0; l < n; ++l) {
    const Eigen::MatrixXd dginv = -ginv * mj.dg[l] * ginv;
    auto dd = [&](int a, int b, int i, int j) { return mj.ddg[a * n + b](i, j); };
    std::vector<double> dfirst(n3);
    for (int m = 0; m < n; ++m)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dfirst[idx(m, i, j)] = 0.5 * (dd(l, i, j, m) + dd(l, j, i, m) - dd(l, m, i, j));
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) s += dginv(k, m) * first[idx(m, i, j)] + ginv(k, m) * dfirst[idx(m, i, j)];
          dgamma[l][idx(k, i, j)] = s;
        }
  }

  // R^ρ_{σμν} = ∂_μ Γ^ρ_{νσ} − ∂_ν Γ^ρ_{μσ} + Γ^ρ_{μλ}Γ^λ_{νσ} − Γ^ρ_{νλ}Γ^λ_{μσ}
  auto riemann_up = [&](int rho, int sigma, int mu, int nu) {
    double s = dgamma[mu][idx(rho, nu, sigma)] - dgamma[nu][idx(rho, mu, sigma)];
    for (int lam = 0; lam < n; ++lam)
      s += gamma[idx(rho, mu, lam)] * gamma[idx(lam, nu, sigma)] - gamma[idx(rho, nu, lam)] * gamma[idx(lam, mu, sigma)];
    return s;
  };
  std::vector<double> R(static_cast<std::size_t>(n) * n3);
  for (int rho = 0; rho < n; ++rho)
    for (int sigma = 0; sigma < n; ++sigma)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) R[((rho * n + sigma) * n + mu) * n + nu] = riemann_up(rho, sigma, mu, nu);

  Curvature out;
  out.ricci = Eigen::MatrixXd::Zero(n, n);
  for (int sigma = 0; sigma < n; ++sigma)
    for (int nu = 0; nu < n; ++nu)
      for (int rho = 0; rho < n; ++rho) out.ricci(sigma, nu) += R[((rho * n + sigma) * n + rho) * n + nu];
  out.scalar = (ginv.cwiseProduct(out.ricci)).sum();
  for (int a = 0; a < n; ++a)
    for (int sigma = 0; sigma < n; ++sigma)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu) {
          double s = 0.0;
          for (int rho = 0; rho < n; ++rho) s += mj.g(a, rho) * R[((rho * n + sigma) * n + mu) * n + nu];
          out.riemann_max_abs = std::max(out.riemann_max_abs, std::abs(s));
        }
  out.christoffel = std::move(gamma);
  return out;
}

double scalar_curvature_intrinsic(const MetricJets& mj) { return curvature(mj).scalar; }

double gauss_residual(const FourierImmersion& imm, const Eigen::VectorXd& theta) {
  const Jet jet = evaluate_jet(imm, theta, 3);
  const int n = jet.n;
  const SecondForm form = second_form_at(jet, metric_at(jet));
  const double H2 = mean_curvature(form).squaredNorm();
  const double zh = zh_at(form);
  return scalar_curvature_intrinsic(metric_jets(jet)) - (1.5 * H2 - 0.5 * n * (n + 2) * zh);
}

double ProofTracePoint::conformal() const {
  if (!conformal_value) throw Error(ErrorKind::DimensionTooLow, "conformal operator needs n ≥ 3");
  return *conformal_value;
}

ProofTracePoint proof_trace(const Jet& jet, double k) {
  const int n = jet.n;
  const Eigen::VectorXd& x = jet.value;
  ProofTracePoint pt;
  pt.r = x.norm();
  if (pt.r < 1e-12) throw Error(ErrorKind::OriginPoint, "|x| = " + std::to_string(pt.r));

  const MetricPoint metric = metric_at(jet);
  const SecondForm form = second_form_at(jet, metric);
  const Eigen::VectorXd H = mean_curvature(form);
  pt.H_norm = H.norm();
  pt.H_dot_x = H.dot(x);
  pt.zh = zh_at(form);

  const Eigen::VectorXd x_tan = form.frame.tangential(x);
  const Eigen::VectorXd x_nor = x - x_tan;
  pt.beta = std::atan2(x_tan.norm(), x_nor.norm());
  if (pt.H_norm > 1e-12) {
    const Eigen::VectorXd H_perp = H - (pt.H_dot_x / (pt.r * pt.r)) * x;
    pt.alpha = std::atan2(H_perp.norm() * pt.r, pt.H_dot_x);
  }

  // Laplace–Beltrami and gradient of f = |x|²/2 in coordinates:
  // Δf = g^{ij}(∂_i∂_j f − Γ^k_ij ∂_k f), |∇f|² = g^{ij} ∂_i f ∂_j f.
  const MetricJets mj = metric_jets(jet);
  const Curvature curv = curvature(mj);
  pt.sc = curv.scalar;
  const Eigen::VectorXd df = jet.d1 * x;
  Eigen::MatrixXd ddf = metric.g;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ddf(i, j) += x.dot(jet.second(i, j));
  double lap = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double hess = ddf(i, j);
      for (int c = 0; c < n; ++c) hess -= curv.christoffel[(c * n + i) * n + j] * df[c];
      lap += metric.g_inv(i, j) * hess;
    }
  pt.lap_f = lap;
  pt.grad_f_norm = std::sqrt(std::max(0.0, df.dot(metric.g_inv * df)));

  const double sin_beta = std::sin(pt.beta);
  pt.u = std::exp(-0.5 * k * pt.r * pt.r);
  pt.lap_u = pt.u * (-k * pt.H_dot_x - k * n + k * k * pt.r * pt.r * sin_beta * sin_beta);
  if (n >= 3) pt.conformal_value = pt.sc * pt.u - 4.0 * (n - 1.0) / (n - 2.0) * pt.lap_u;
  return pt;
}

ProofTracePoint proof_trace(const FourierImmersion& imm, const Eigen::VectorXd& theta, double k) {
  return proof_trace(evaluate_jet(imm, theta, 3), k);
}

Rational test_function_rate_exact(int n) {
  if (n < 3) throw Error(ErrorKind::DimensionTooLow, "the test function rate needs n ≥ 3");
  return Rational(3, 4) * Rational(n - 2, n - 1) * n;
}

double test_function_rate(int n) { return static_cast<double>(test_function_rate_exact(n)); }

}  // namespace ntorus
