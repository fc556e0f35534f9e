#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "ntorus/immersion.hpp"

namespace ntorus {

// Induced metric g_ij = ⟨∂_i f, ∂_j f⟩ with its inverse and the lower
// triangular factor L satisfying L g Lᵀ = I.
struct MetricPoint {
  Eigen::MatrixXd g;
  Eigen::MatrixXd g_inv;
  Eigen::MatrixXd L;
  double sqrt_det = 0.0;
};

// Throws DegenerateMetric when the smallest eigenvalue of g is below 1e−12.
MetricPoint metric_at(const Jet& jet);

// Orthonormal tangent frame, rows e_i = Σ_a L_ia ∂_a f. The normal
// projector is applied implicitly.
struct TangentFrame {
  Eigen::MatrixXd E;  // n × q

  Eigen::VectorXd tangential(const Eigen::VectorXd& v) const { return E.transpose() * (E * v); }
  Eigen::VectorXd normal(const Eigen::VectorXd& v) const { return v - tangential(v); }
};

TangentFrame frame_at(const Jet& jet, const MetricPoint& metric);

// Second fundamental form in the orthonormal frame: column i·n+j of S holds
// the normal vector II(e_i, e_j). Columns (i,j) and (j,i) are identical.
struct SecondForm {
  int n = 0;
  Eigen::MatrixXd S;  // q × n²
  TangentFrame frame;

  auto at(int i, int j) const { return S.col(i * n + j); }
  // II(x, y) for frame coordinates x, y.
  Eigen::VectorXd apply(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
};

SecondForm second_form_at(const Jet& jet, const MetricPoint& metric);

// Unnormalized trace Σ_i II(e_i, e_i).
Eigen::VectorXd mean_curvature(const SecondForm& form);

// Sphere average of |II(u,u)|², in closed form (2‖II‖² + |H|²)/(n(n+2)).
double zh_at(const SecondForm& form);

// |II(u,u)| for a unit frame vector u. Throws NotUnit if ||u| − 1| > 1e−10.
double normal_curvature(const SecondForm& form, const Eigen::VectorXd& u);

struct ExtremalOptions {
  int starts = 0;  // zero selects 16·n
  std::uint64_t seed = 0;
  int max_iterations = 2000;
  int scan_angles = 4096;  // exhaustive reference for n = 2
};

struct ExtremalCurvature {
  double K_min = 0.0;
  double K_max = 0.0;
  Eigen::VectorXd argmin;
  Eigen::VectorXd argmax;
  int starts = 0;
  int iterations = 0;
  int unconverged = 0;
};

// Multi-start projected-gradient extremization of |II(u,u)|² on the unit
// sphere of the tangent space.
ExtremalCurvature extremal_normal_curvature(const SecondForm& form, const ExtremalOptions& options = {});

// Eigenvalues (ascending) of the shape operator ⟨II(·,·), ν⟩ for a unit
// normal ν. Throws NotNormal if ν has a tangential component above 1e−8.
Eigen::VectorXd principal_values(const SecondForm& form, const Eigen::VectorXd& nu);

// Extrinsic curvature tensor ⟨II(x,y), II(v,w)⟩.
double phi(const SecondForm& form, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
           const Eigen::VectorXd& v, const Eigen::VectorXd& w);

struct PointInvariants {
  Eigen::VectorXd H;
  double H2 = 0.0;
  double II2 = 0.0;
  double zh = 0.0;
  double sc_ext = 0.0;        // (3/2)|H|² − (n(n+2)/2)·ж
  double sc_difference = 0.0;  // |H|² − ‖II‖², the same quantity
  double K_min = 0.0;
  double K_max = 0.0;
  double r = 0.0;
};

PointInvariants invariants_at(const Jet& jet, const ExtremalOptions& options = {});

}  // namespace ntorus
