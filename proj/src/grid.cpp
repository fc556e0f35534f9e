#include "ntorus/grid.hpp"

#include <numbers>

#include "ntorus/error.hpp"

namespace ntorus {

TorusGrid::TorusGrid(std::vector<int> sizes) : sizes_(std::move(sizes)), total_(1) {
  if (sizes_.empty()) throw Error(ErrorKind::InvalidArgument, "grid needs at least one dimension");
  for (int s : sizes_) {
    if (s < 4) throw Error(ErrorKind::InvalidArgument, "grid sizes must be at least 4");
    total_ *= static_cast<std::size_t>(s);
  }
}

TorusGrid TorusGrid::default_for(int n) {
  int per_axis = 8;
  if (n <= 2) per_axis = 64;
  else if (n == 3) per_axis = 32;
  else if (n == 4) per_axis = 16;
  return TorusGrid(std::vector<int>(static_cast<std::size_t>(n), per_axis));
}

Eigen::VectorXd TorusGrid::point(std::size_t index) const {
  Eigen::VectorXd theta(dim());
  for (int i = dim() - 1; i >= 0; --i) {
    const auto s = static_cast<std::size_t>(sizes_[i]);
    theta[i] = 2.0 * std::numbers::pi * static_cast<double>(index % s) / static_cast<double>(s);
    index /= s;
  }
  return theta;
}

TorusGrid TorusGrid::doubled() const {
  std::vector<int> sizes = sizes_;
  for (int& s : sizes) s *= 2;
  return TorusGrid(std::move(sizes));
}

}  // namespace ntorus
