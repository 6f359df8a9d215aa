#include "fgmplate/mesh.hpp"

#include <cmath>

#include "fgmplate/errors.hpp"

namespace fgmplate {

Mesh generate_mesh(double a, double b, int nx, int ny) {
  if (a <= 0.0 || b <= 0.0) throw ConfigError("plate dimensions must be positive");
  if (nx < 2 || ny < 2) throw ConfigError("mesh divisions must be >= 2");
  return Mesh{a, b, nx, ny};
}

std::pair<int, int> default_divisions(double a, double b) {
  constexpr int kBase = 34;
  if (a <= b) {
    return {kBase, std::max(kBase, (int)std::lround(kBase * b / a))};
  }
  return {std::max(kBase, (int)std::lround(kBase * a / b)), kBase};
}

}  // namespace fgmplate
