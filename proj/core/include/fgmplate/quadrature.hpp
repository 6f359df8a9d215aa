#pragma once

#include <array>
#include <vector>

namespace fgmplate {

struct GaussPoint1d {
  double x;  // abscissa on [-1, 1]
  double w;
};

/// Gauss-Legendre nodes/weights on [-1, 1]. Computed once per order, cached.
const std::vector<GaussPoint1d>& gauss_legendre(int order);

struct TriPoint {
  double l1, l2, l3;  // barycentric
  double w;           // weights sum to 1
};

/// Degree-5, 7-point symmetric triangle rule (all weights positive).
const std::array<TriPoint, 7>& tri_rule_7();

/// Degree-7, 13-point symmetric triangle rule.
const std::array<TriPoint, 13>& tri_rule_13();

}  // namespace fgmplate
