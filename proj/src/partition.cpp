#include "nnts/partition.hpp"

#include <cmath>
#include <string>

namespace nnts {

Partition Partition::from_bounds(std::vector<double> bounds) {
  if (bounds.size() < 2) {
    throw InvalidArgument("a partition needs at least two bounds");
  }
  if (bounds.front() != 0.0) {
    throw InvalidArgument("first partition bound must be 0");
  }
  if (!(std::abs(bounds.back() - kTwoPi) <= 1e-12)) {
    throw InvalidArgument("last partition bound must be 2 pi");
  }
  bounds.back() = kTwoPi;
  for (std::size_t k = 1; k < bounds.size(); ++k) {
    if (!(bounds[k] > bounds[k - 1])) {
      throw InvalidArgument("partition bounds must strictly increase (bound " +
                            std::to_string(k) + ")");
    }
  }
  return Partition(std::move(bounds));
}

}  // namespace nnts
