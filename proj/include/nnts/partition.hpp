#pragma once

#include "nnts/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace nnts {

/// Partition of (0, 2 pi] into cells (t_{k-1}, t_k] with
/// 0 = t_0 < t_1 < ... < t_Q = 2 pi.
class Partition {
 public:
  /// Throws InvalidArgument unless bounds start at 0, end at 2 pi (within
  /// 1e-12; the last bound is then snapped to 2 pi) and strictly increase.
  static Partition from_bounds(std::vector<double> bounds);

  std::size_t cells() const noexcept { return bounds_.size() - 1; }
  double lower(std::size_t cell) const { return bounds_[cell]; }
  double upper(std::size_t cell) const { return bounds_[cell + 1]; }
  double midpoint(std::size_t cell) const {
    return 0.5 * (bounds_[cell] + bounds_[cell + 1]);
  }
  std::span<const double> bounds() const noexcept { return bounds_; }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  explicit Partition(std::vector<double> bounds) : bounds_(std::move(bounds)) {}
  std::vector<double> bounds_;
};

}  // namespace nnts
