#include "fgmplate/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "fgmplate/errors.hpp"

namespace fgmplate {

namespace {

// Newton iteration on P_n with the standard cosine initial guess.
std::vector<GaussPoint1d> compute_gauss(int n) {
  std::vector<GaussPoint1d> pts(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    pts[i] = {-x, w};
    pts[n - 1 - i] = {x, w};
  }
  return pts;
}

}  // namespace

const std::vector<GaussPoint1d>& gauss_legendre(int order) {
  if (order < 1 || order > 512) throw ConfigError("gauss order out of range: " + std::to_string(order));
  static std::map<int, std::vector<GaussPoint1d>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_gauss(order)).first;
  return it->second;
}

const std::array<TriPoint, 7>& tri_rule_7() {
  static const std::array<TriPoint, 7> rule = [] {
    std::array<TriPoint, 7> r{};
    r[0] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.225};
    const double a1 = 0.059715871789770, b1 = 0.470142064105115, w1 = 0.132394152788506;
    r[1] = {a1, b1, b1, w1};
    r[2] = {b1, a1, b1, w1};
    r[3] = {b1, b1, a1, w1};
    const double a2 = 0.797426985353087, b2 = 0.101286507323456, w2 = 0.125939180544827;
    r[4] = {a2, b2, b2, w2};
    r[5] = {b2, a2, b2, w2};
    r[6] = {b2, b2, a2, w2};
    return r;
  }();
  return rule;
}

const std::array<TriPoint, 13>& tri_rule_13() {
  static const std::array<TriPoint, 13> rule = [] {
    std::array<TriPoint, 13> r{};
    int k = 0;
    r[k++] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, -0.149570044467670};
    const double a1 = 0.479308067841923, b1 = 0.260345966079038, w1 = 0.175615257433204;
    r[k++] = {a1, b1, b1, w1};
    r[k++] = {b1, a1, b1, w1};
    r[k++] = {b1, b1, a1, w1};
    const double a2 = 0.869739794195568, b2 = 0.065130102902216, w2 = 0.053347235608839;
    r[k++] = {a2, b2, b2, w2};
    r[k++] = {b2, a2, b2, w2};
    r[k++] = {b2, b2, a2, w2};
    const double a3 = 0.638444188569809, b3 = 0.312865496004875, c3 = 0.048690315425316;
    const double w3 = 0.077113760890257;
    r[k++] = {a3, b3, c3, w3};
    r[k++] = {a3, c3, b3, w3};
    r[k++] = {b3, a3, c3, w3};
    r[k++] = {b3, c3, a3, w3};
    r[k++] = {c3, a3, b3, w3};
    r[k++] = {c3, b3, a3, w3};
    return r;
  }();
  return rule;
}

}  // namespace fgmplate
