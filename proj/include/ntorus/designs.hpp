#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ntorus/immersion.hpp"

namespace ntorus {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Integer m × n matrix whose rows are the lattice frequencies of a geodesic
// subtorus of the Clifford torus in R^{2m}.
class FrameMatrix {
 public:
  explicit FrameMatrix(std::vector<std::vector<long>> rows);

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  long operator()(int j, int i) const { return rows_[j][i]; }
  const std::vector<std::vector<long>>& data() const { return rows_; }

  // Rank over the rationals.
  int rank() const;

 private:
  std::vector<std::vector<long>> rows_;
  int cols_ = 0;
};

struct DesignReport {
  int m = 0;
  int n = 0;
  std::vector<std::vector<Integer>> gram;  // BᵀB
  bool is_constant_curvature = false;
  std::optional<Rational> c;   // Σ_j (b_j·v)⁴ = c·(vᵀGv)²
  std::optional<Rational> K2;  // c·m
  double K = 0.0;
  bool is_optimal = false;
  std::vector<Rational> row_weights;  // b_jᵀ G⁻¹ b_j
};

// Product of m circles of radius 1/√m in R^{2m}.
FourierImmersion clifford(int m);

// φ ↦ (1/√m)(cos(b_j·φ), sin(b_j·φ))_j. Throws RankDeficient.
FourierImmersion subtorus_immersion(const FrameMatrix& B);

// Exact certificate for constant normal curvature and optimality.
DesignReport validate_design(const FrameMatrix& B);

// circle1, hex2, d4, axdiag3. Throws UnknownDesign.
FrameMatrix builtin_design(std::string_view name);
std::vector<std::string> builtin_design_names();

// 3n/(n+2) as an exact rational.
Rational optimal_K2(int n);

// "p/q" rendering.
std::string to_fraction(const Rational& value);

}  // namespace ntorus
