#include "ntorus/pointwise.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ntorus/error.hpp"
#include "ntorus/rng.hpp"

namespace ntorus {

MetricPoint metric_at(const Jet& jet) {
  if (jet.order < 1) throw Error(ErrorKind::InvalidArgument, "metric needs a jet of order ≥ 1");
  const int n = jet.n;
  MetricPoint m;
  m.g = jet.d1 * jet.d1.transpose();
  const double smallest = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m.g, Eigen::EigenvaluesOnly).eigenvalues()[0];
  if (!(smallest >= 1e-12))
    throw Error(ErrorKind::DegenerateMetric, "smallest metric eigenvalue " + std::to_string(smallest));
  Eigen::LLT<Eigen::MatrixXd> llt(m.g);
  const Eigen::MatrixXd C = llt.matrixL();
  m.L = C.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(n, n));
  m.g_inv = m.L.transpose() * m.L;
  m.sqrt_det = C.diagonal().prod();
  return m;
}

TangentFrame frame_at(const Jet& jet, const MetricPoint& metric) { return {metric.L * jet.d1}; }

Eigen::VectorXd SecondForm::apply(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  Eigen::VectorXd w(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[i * n + j] = x[i] * y[j];
  return S * w;
}

SecondForm second_form_at(const Jet& jet, const MetricPoint& metric) {
  if (jet.order < 2) throw Error(ErrorKind::InvalidArgument, "second form needs a jet of order ≥ 2");
  const int n = jet.n;
  SecondForm form;
  form.n = n;
  form.frame = frame_at(jet, metric);

  // S_ij = Σ_ab L_ia L_jb ∂_a∂_b f, then projected onto the normal space.
  Eigen::MatrixXd LL(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) LL(i * n + j, a * n + b) = metric.L(i, a) * metric.L(j, b);
  form.S = jet.d2 * LL.transpose();
  const Eigen::MatrixXd& E = form.frame.E;
  form.S -= E.transpose() * (E * form.S);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Eigen::VectorXd avg = 0.5 * (form.S.col(i * n + j) + form.S.col(j * n + i));
      form.S.col(i * n + j) = avg;
      form.S.col(j * n + i) = avg;
    }
  return form;
}

Eigen::VectorXd mean_curvature(const SecondForm& form) {
  Eigen::VectorXd H = Eigen::VectorXd::Zero(form.S.rows());
  for (int i = 0; i < form.n; ++i) H += form.at(i, i);
  return H;
}

double zh_at(const SecondForm& form) {
  const int n = form.n;
  return (2.0 * form.S.squaredNorm() + mean_curvature(form).squaredNorm()) / double(n * (n + 2));
}

double normal_curvature(const SecondForm& form, const Eigen::VectorXd& u) {
  if (u.size() != form.n) throw Error(ErrorKind::InvalidArgument, "direction must have n entries");
  if (std::abs(u.norm() - 1.0) > 1e-10) throw Error(ErrorKind::NotUnit, "|u| = " + std::to_string(u.norm()));
  return form.apply(u, u).norm();
}

namespace {

// F(u) = |II(u,u)|² = wᵀΦw with w = u⊗u and Φ the Gram matrix of the columns of S.
class QuarticOnSphere {
 public:
  explicit QuarticOnSphere(const SecondForm& form) : n_(form.n), gram_(form.S.transpose() * form.S) {}

  double value(const Eigen::VectorXd& u, Eigen::VectorXd* grad) const {
    Eigen::VectorXd w(n_ * n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) w[i * n_ + j] = u[i] * u[j];
    const Eigen::VectorXd y = gram_ * w;
    if (grad) {
      grad->resize(n_);
      for (int a = 0; a < n_; ++a) {
        double s = 0.0;
        for (int j = 0; j < n_; ++j) s += y[a * n_ + j] * u[j];
        (*grad)[a] = 4.0 * s;
      }
    }
    return w.dot(y);
  }

 private:
  int n_;
  Eigen::MatrixXd gram_;
};

struct Climb {
  double value;
  Eigen::VectorXd u;
  int iterations;
  bool converged;
};

// Projected-gradient ascent of sign·F with Armijo backtracking and
// normalization as the retraction.
Climb climb(const QuarticOnSphere& F, Eigen::VectorXd u, double sign, int max_iterations) {
  u.normalize();
  Eigen::VectorXd grad;
  double f = sign * F.value(u, &grad);
  grad *= sign;
  double step = 0.25 / std::max(std::abs(f), 1e-300);
  int it = 0;
  bool converged = false;
  for (; it < max_iterations; ++it) {
    const Eigen::VectorXd tangent = grad - grad.dot(u) * u;
    const double t2 = tangent.squaredNorm();
    if (std::sqrt(t2) <= 1e-11 * std::max(std::abs(f), 1e-300)) {
      converged = true;
      break;
    }
    bool moved = false;
    while (step * std::sqrt(t2) > 1e-18) {
      const Eigen::VectorXd trial = (u + step * tangent).normalized();
      Eigen::VectorXd trial_grad;
      const double ft = sign * F.value(trial, &trial_grad);
      if (ft > f && ft >= f + 0.25 * step * t2) {
        u = trial;
        f = ft;
        grad = sign * trial_grad;
        step *= 1.5;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) {
      converged = true;  // no representable ascent remains
      break;
    }
  }
  return {sign * f, u, it, converged};
}

// Gauss-Newton on the residual II(u,u) restricted to the tangent space of
// the sphere. Resolves near-zero minima well below √ε.
Eigen::VectorXd polish_minimum(const SecondForm& form, Eigen::VectorXd u) {
  const int n = form.n;
  double best = form.apply(u, u).norm();
  for (int it = 0; it < 8 && best > 0.0; ++it) {
    const Eigen::VectorXd r = form.apply(u, u);
    Eigen::MatrixXd J(r.size(), n);
    for (int a = 0; a < n; ++a) J.col(a) = 2.0 * form.apply(Eigen::VectorXd::Unit(n, a), u);
    const Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n, n) - u * u.transpose();
    const Eigen::VectorXd d = P * (J * P).completeOrthogonalDecomposition().solve(-r);
    const Eigen::VectorXd trial = (u + d).normalized();
    const double k = form.apply(trial, trial).norm();
    if (!(k < best)) break;
    u = trial;
    best = k;
  }
  return u;
}

}  // namespace

ExtremalCurvature extremal_normal_curvature(const SecondForm& form, const ExtremalOptions& options) {
  const int n = form.n;
  const QuarticOnSphere F(form);
  ExtremalCurvature out;

  double best_max = -1.0, best_min = std::numeric_limits<double>::infinity();
  Eigen::VectorXd arg_max, arg_min;
  auto consider = [&](const Climb& c, bool maximize) {
    out.iterations += c.iterations;
    if (!c.converged) ++out.unconverged;
    if (maximize && c.value > best_max) {
      best_max = c.value;
      arg_max = c.u;
    }
    if (!maximize && c.value < best_min) {
      best_min = c.value;
      arg_min = c.u;
    }
  };

  if (n == 1) {
    Eigen::VectorXd u = Eigen::VectorXd::Ones(1);
    const double f = F.value(u, nullptr);
    out.K_min = out.K_max = std::sqrt(f);
    out.argmin = out.argmax = u;
    out.starts = 1;
    return out;
  }

  std::vector<Eigen::VectorXd> starts;
  if (n == 2 && options.scan_angles > 0) {
    // F(u) = F(−u), so half a turn covers every direction.
    Eigen::VectorXd u(2), scan_max, scan_min;
    double fmax = -1.0, fmin = std::numeric_limits<double>::infinity();
    for (int a = 0; a < options.scan_angles; ++a) {
      const double t = std::numbers::pi * a / options.scan_angles;
      u << std::cos(t), std::sin(t);
      const double f = F.value(u, nullptr);
      if (f > fmax) {
        fmax = f;
        scan_max = u;
      }
      if (f < fmin) {
        fmin = f;
        scan_min = u;
      }
    }
    best_max = fmax;
    arg_max = scan_max;
    best_min = fmin;
    arg_min = scan_min;
    starts.push_back(scan_max);
    starts.push_back(scan_min);
  }
  for (int i = 0; i < n; ++i) starts.push_back(Eigen::VectorXd::Unit(n, i));
  starts.push_back(Eigen::VectorXd::Ones(n) / std::sqrt(double(n)));
  const int random_starts = options.starts > 0 ? options.starts : 16 * n;
  for (int s = 0; s < random_starts; ++s) {
    const CounterRng rng(options.seed, static_cast<std::uint64_t>(s));
    Eigen::VectorXd u(n);
    for (int i = 0; i < n; ++i) u[i] = rng.normal(static_cast<std::uint64_t>(i));
    starts.push_back(u.normalized());
  }

  for (const auto& u0 : starts) {
    consider(climb(F, u0, +1.0, options.max_iterations), true);
    consider(climb(F, u0, -1.0, options.max_iterations), false);
  }
  out.starts = static_cast<int>(starts.size());
  out.argmax = arg_max;
  out.argmin = polish_minimum(form, arg_min);
  out.K_max = form.apply(out.argmax, out.argmax).norm();
  out.K_min = form.apply(out.argmin, out.argmin).norm();
  return out;
}

Eigen::VectorXd principal_values(const SecondForm& form, const Eigen::VectorXd& nu) {
  if (nu.size() != form.S.rows()) throw Error(ErrorKind::InvalidArgument, "normal must have q entries");
  if (std::abs(nu.norm() - 1.0) > 1e-8) throw Error(ErrorKind::NotUnit, "|ν| = " + std::to_string(nu.norm()));
  const double tangential = (form.frame.E * nu).cwiseAbs().maxCoeff();
  if (tangential > 1e-8)
    throw Error(ErrorKind::NotNormal, "tangential component " + std::to_string(tangential));
  const int n = form.n;
  Eigen::MatrixXd shape(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) shape(i, j) = form.at(i, j).dot(nu);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(shape, Eigen::EigenvaluesOnly).eigenvalues();
}

double phi(const SecondForm& form, const Eigen::VectorXd& x, const Eigen::VectorXd& y, const Eigen::VectorXd& v,
           const Eigen::VectorXd& w) {
  return form.apply(x, y).dot(form.apply(v, w));
}

PointInvariants invariants_at(const Jet& jet, const ExtremalOptions& options) {
  const int n = jet.n;
  const MetricPoint metric = metric_at(jet);
  const SecondForm form = second_form_at(jet, metric);
  PointInvariants inv;
  inv.H = mean_curvature(form);
  inv.H2 = inv.H.squaredNorm();
  inv.II2 = form.S.squaredNorm();
  inv.zh = (2.0 * inv.II2 + inv.H2) / double(n * (n + 2));
  inv.sc_ext = 1.5 * inv.H2 - 0.5 * n * (n + 2) * inv.zh;
  inv.sc_difference = inv.H2 - inv.II2;
  const ExtremalCurvature ext = extremal_normal_curvature(form, options);
  inv.K_min = ext.K_min;
  inv.K_max = ext.K_max;
  inv.r = jet.value.norm();
  return inv;
}

}  // namespace ntorus
