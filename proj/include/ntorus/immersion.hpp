#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "ntorus/grid.hpp"

namespace ntorus {

// Intrinsic dimension n of the torus and dimension q of the ambient space.
struct Signature {
  int n = 1;
  int q = 2;

  Signature() = default;
  Signature(int n_, int q_);
};

// One summand a·cos(k·θ) + b·sin(k·θ).
struct FourierTerm {
  std::vector<int> k;
  Eigen::VectorXd a;
  Eigen::VectorXd b;
};

// f(θ) = scale · Σ terms + translate, a 2π-periodic map T^n → R^q.
class FourierImmersion {
 public:
  FourierImmersion(Signature sig, std::vector<FourierTerm> terms, double scale = 1.0,
                   Eigen::VectorXd translate = {});

  const Signature& signature() const { return sig_; }
  int n() const { return sig_.n; }
  int q() const { return sig_.q; }
  const std::vector<FourierTerm>& terms() const { return terms_; }
  double scale() const { return scale_; }
  const Eigen::VectorXd& translate() const { return translate_; }

 private:
  Signature sig_;
  std::vector<FourierTerm> terms_;
  double scale_;
  Eigen::VectorXd translate_;
};

// Value and partial derivatives of f at one parameter point. Derivative
// blocks are stored column-wise: d2 is q × n² with column i·n+j holding
// ∂_i∂_j f, d3 is q × n³ with column (i·n+j)·n+k.
struct Jet {
  int n = 0;
  int q = 0;
  int order = 0;
  Eigen::VectorXd value;
  Eigen::MatrixXd d1;  // n × q, row i is ∂_i f
  Eigen::MatrixXd d2;
  Eigen::MatrixXd d3;

  auto second(int i, int j) const { return d2.col(i * n + j); }
  auto third(int i, int j, int k) const { return d3.col((i * n + j) * n + k); }
};

// Exact analytic jet up to `order` (0..3). Value carries scale and
// translation; derivatives carry the scale only.
Jet evaluate_jet(const FourierImmersion& imm, const Eigen::VectorXd& theta, int order);

// x ↦ λ·Q·f(x) + c. Throws NonOrthogonal when ‖QᵀQ − I‖_F > 1e−12.
FourierImmersion transform(const FourierImmersion& imm, const Eigen::MatrixXd& rotation,
                           const Eigen::VectorXd& shift, double lambda);

// Smallest singular value of the differential over all grid points.
double immersion_rank_check(const FourierImmersion& imm, const TorusGrid& grid);

struct RandomImmersionOptions {
  int n = 2;
  int q = 4;
  int terms = 5;
  int max_frequency = 2;
  // Target for max |f| over a fine grid; zero means no rescaling.
  double target_radius = 0.0;
  double translate_radius = 0.0;
  std::uint64_t seed = 0;
};

// Seeded random trigonometric immersion. Candidates whose differential
// degenerates on the check grid are redrawn from the next sub-stream.
FourierImmersion random_immersion(const RandomImmersionOptions& options);

// Maximum of |f| over the grid.
double max_norm_on_grid(const FourierImmersion& imm, const TorusGrid& grid);

}  // namespace ntorus
