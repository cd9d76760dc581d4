#pragma once

#include <vector>

namespace specest {

/// Gauss-Legendre rule on the reference interval [-1, 1]; exact for
/// polynomials of degree <= 2 * count - 1.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t count() const { return nodes.size(); }
};

GaussLegendre gauss_legendre(int count);

}  // namespace specest
