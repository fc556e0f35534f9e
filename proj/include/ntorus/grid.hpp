#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace ntorus {

// Equispaced tensor grid on [0, 2π)^n; the last coordinate varies fastest.
class TorusGrid {
 public:
  explicit TorusGrid(std::vector<int> sizes);

  // Default resolution for an n-torus: 64², 32³, 16⁴, 8^n beyond.
  static TorusGrid default_for(int n);

  int dim() const { return static_cast<int>(sizes_.size()); }
  const std::vector<int>& sizes() const { return sizes_; }
  std::size_t size() const { return total_; }

  Eigen::VectorXd point(std::size_t index) const;
  TorusGrid doubled() const;

 private:
  std::vector<int> sizes_;
  std::size_t total_;
};

}  // namespace ntorus
