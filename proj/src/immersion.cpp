#include "ntorus/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ntorus/error.hpp"
#include "ntorus/parallel.hpp"
#include "ntorus/rng.hpp"

namespace ntorus {

Signature::Signature(int n_, int q_) : n(n_), q(q_) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be at least 1");
  if (q <= n) throw Error(ErrorKind::InvalidArgument, "q must exceed n");
}

FourierImmersion::FourierImmersion(Signature sig, std::vector<FourierTerm> terms, double scale,
                                   Eigen::VectorXd translate)
    : sig_(sig), terms_(std::move(terms)), scale_(scale), translate_(std::move(translate)) {
  if (!(scale_ > 0.0) || !std::isfinite(scale_))
    throw Error(ErrorKind::InvalidArgument, "scale must be positive");
  if (translate_.size() == 0) translate_ = Eigen::VectorXd::Zero(sig_.q);
  if (translate_.size() != sig_.q) throw Error(ErrorKind::InvalidArgument, "translate must have q entries");
  for (std::size_t t = 0; t < terms_.size(); ++t) {
    const auto& term = terms_[t];
    if (static_cast<int>(term.k.size()) != sig_.n || term.a.size() != sig_.q || term.b.size() != sig_.q)
      throw Error(ErrorKind::InvalidArgument, "term " + std::to_string(t) + " has wrong dimensions");
  }
}

Jet evaluate_jet(const FourierImmersion& imm, const Eigen::VectorXd& theta, int order) {
  const int n = imm.n();
  const int q = imm.q();
  if (order < 0 || order > 3) throw Error(ErrorKind::InvalidArgument, "jet order must be in 0..3");
  if (theta.size() != n) throw Error(ErrorKind::InvalidArgument, "theta must have n entries");

  Jet jet;
  jet.n = n;
  jet.q = q;
  jet.order = order;
  Eigen::VectorXd value = Eigen::VectorXd::Zero(q);
  if (order >= 1) jet.d1 = Eigen::MatrixXd::Zero(n, q);
  if (order >= 2) jet.d2 = Eigen::MatrixXd::Zero(q, n * n);
  if (order >= 3) jet.d3 = Eigen::MatrixXd::Zero(q, n * n * n);

  Eigen::VectorXd even(q), odd(q);
  for (const auto& term : imm.terms()) {
    double phase = 0.0;
    for (int i = 0; i < n; ++i) phase += term.k[i] * theta[i];
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    even.noalias() = c * term.a + s * term.b;
    value += even;
    if (order < 1) continue;
    odd.noalias() = c * term.b - s * term.a;
    for (int i = 0; i < n; ++i) {
      if (term.k[i] != 0) jet.d1.row(i) += term.k[i] * odd.transpose();
    }
    if (order < 2) continue;
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const double kk = double(term.k[i]) * term.k[j];
        if (kk != 0.0) jet.d2.col(i * n + j) -= kk * even;
        if (order < 3) continue;
        for (int l = j; l < n; ++l) {
          const double kkk = kk * term.k[l];
          if (kkk != 0.0) jet.d3.col((i * n + j) * n + l) -= kkk * odd;
        }
      }
    }
  }

  const double lambda = imm.scale();
  jet.value = lambda * value + imm.translate();
  if (order >= 1) jet.d1 *= lambda;
  if (order >= 2) {
    jet.d2 *= lambda;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) jet.d2.col(j * n + i) = jet.d2.col(i * n + j);
  }
  if (order >= 3) {
    jet.d3 *= lambda;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        for (int l = j; l < n; ++l) {
          const int src = (i * n + j) * n + l;
          const int perms[6][3] = {{i, j, l}, {i, l, j}, {j, i, l}, {j, l, i}, {l, i, j}, {l, j, i}};
          for (const auto& p : perms) {
            const int dst = (p[0] * n + p[1]) * n + p[2];
            if (dst != src) jet.d3.col(dst) = jet.d3.col(src);
          }
        }
  }
  return jet;
}

FourierImmersion transform(const FourierImmersion& imm, const Eigen::MatrixXd& rotation,
                           const Eigen::VectorXd& shift, double lambda) {
  const int q = imm.q();
  if (rotation.rows() != q || rotation.cols() != q)
    throw Error(ErrorKind::InvalidArgument, "rotation must be q × q");
  if (shift.size() != q) throw Error(ErrorKind::InvalidArgument, "shift must have q entries");
  const double defect = (rotation.transpose() * rotation - Eigen::MatrixXd::Identity(q, q)).norm();
  if (defect > 1e-12)
    throw Error(ErrorKind::NonOrthogonal, "‖QᵀQ − I‖ = " + std::to_string(defect));
  if (!(lambda > 0.0)) throw Error(ErrorKind::InvalidArgument, "lambda must be positive");

  std::vector<FourierTerm> terms;
  terms.reserve(imm.terms().size());
  for (const auto& term : imm.terms()) terms.push_back({term.k, rotation * term.a, rotation * term.b});
  return FourierImmersion(imm.signature(), std::move(terms), lambda * imm.scale(),
                          lambda * (rotation * imm.translate()) + shift);
}

double immersion_rank_check(const FourierImmersion& imm, const TorusGrid& grid) {
  if (grid.dim() != imm.n()) throw Error(ErrorKind::InvalidArgument, "grid dimension differs from n");
  std::vector<double> smallest(grid.size());
  parallel_for(grid.size(), [&](std::size_t p) {
    const Jet jet = evaluate_jet(imm, grid.point(p), 1);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jet.d1);
    smallest[p] = svd.singularValues().minCoeff();
  });
  return *std::min_element(smallest.begin(), smallest.end());
}

double max_norm_on_grid(const FourierImmersion& imm, const TorusGrid& grid) {
  std::vector<double> norms(grid.size());
  parallel_for(grid.size(), [&](std::size_t p) { norms[p] = evaluate_jet(imm, grid.point(p), 0).value.norm(); });
  return *std::max_element(norms.begin(), norms.end());
}

FourierImmersion random_immersion(const RandomImmersionOptions& opt) {
  const Signature sig(opt.n, opt.q);
  if (opt.terms < 1 || opt.max_frequency < 1)
    throw Error(ErrorKind::InvalidArgument, "random immersion needs terms ≥ 1 and max_frequency ≥ 1");
  const int per_axis = std::max(16, 8 * opt.max_frequency);
  const TorusGrid check(std::vector<int>(static_cast<std::size_t>(opt.n), opt.n <= 2 ? 2 * per_axis : per_axis));

  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    const CounterRng rng(opt.seed, attempt);
    std::uint64_t counter = 0;
    std::vector<FourierTerm> terms;
    for (int t = 0; t < opt.terms; ++t) {
      FourierTerm term;
      term.k.resize(static_cast<std::size_t>(opt.n));
      bool nonzero = false;
      while (!nonzero) {
        for (int i = 0; i < opt.n; ++i) {
          const double u = rng.uniform(counter++);
          term.k[i] = static_cast<int>(std::floor(u * (2 * opt.max_frequency + 1))) - opt.max_frequency;
          nonzero = nonzero || term.k[i] != 0;
        }
      }
      double k2 = 0.0;
      for (int k : term.k) k2 += double(k) * k;
      const double amplitude = 1.0 / std::sqrt(k2);
      term.a.resize(opt.q);
      term.b.resize(opt.q);
      for (int d = 0; d < opt.q; ++d) term.a[d] = amplitude * rng.normal(counter++);
      for (int d = 0; d < opt.q; ++d) term.b[d] = amplitude * rng.normal(counter++);
      terms.push_back(std::move(term));
    }
    Eigen::VectorXd shift = Eigen::VectorXd::Zero(opt.q);
    if (opt.translate_radius > 0.0) {
      for (int d = 0; d < opt.q; ++d) shift[d] = rng.normal(counter++);
      shift *= opt.translate_radius * rng.uniform(counter++) / shift.norm();
    }

    FourierImmersion raw(sig, terms, 1.0, Eigen::VectorXd::Zero(opt.q));
    if (immersion_rank_check(raw, check) < 1e-3) continue;
    double scale = 1.0;
    if (opt.target_radius > 0.0) {
      const double reach = max_norm_on_grid(raw, check.doubled());
      if (opt.target_radius <= shift.norm())
        throw Error(ErrorKind::InvalidArgument, "translate radius must be below the target radius");
      scale = (opt.target_radius - shift.norm()) / reach;
    }
    return FourierImmersion(sig, std::move(terms), scale, shift);
  }
  throw Error(ErrorKind::DegenerateImmersion, "no immersive random candidate found");
}

}  // namespace ntorus
