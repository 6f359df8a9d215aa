#include "fgmplate/section.hpp"

#include <cmath>
#include <ostream>

#include "fgmplate/errors.hpp"
#include "fgmplate/quadrature.hpp"

namespace fgmplate {

QbarCoeffs stiffness_coeffs(double E, double nu) {
  const double c = E / (1.0 - nu * nu);
  const double g = E / (2.0 * (1.0 + nu));
  return {c, nu * c, c, 0.0, 0.0, g, g, g};
}

namespace {

struct RawSection {
  Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d B = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d D = Eigen::Matrix3d::Zero();
  double intG = 0.0;
  double I0 = 0.0;
  double I1 = 0.0;
};

// Gauss-Legendre in the transformed coordinate xi = u^3: the fractional-power
// volume-fraction law has an endpoint-singular derivative at the metal face
// for non-integer n, which raw Gauss resolves only algebraically; the power
// map restores fast convergence for every n >= 0.
template <typename F>
void integrate_thickness(double h, int order, F&& accumulate) {
  for (const auto& gp : gauss_legendre(order)) {
    const double u = 0.5 * (gp.x + 1.0);  // [0, 1]
    const double xi = u * u * u;          // xi = u^3
    const double z = h * (xi - 0.5);
    const double w = 0.5 * gp.w * h * 3.0 * u * u;  // dz = h * 3 u^2 du
    accumulate(z, w);
  }
}

RawSection integrate_raw(const FgmComposition& comp, double h, int order) {
  RawSection s;
  integrate_thickness(h, order, [&](double z, double w) {
    const PointProperties p = properties_at(comp, z, h);
    const QbarCoeffs q = stiffness_coeffs(p.E, p.nu);
    Eigen::Matrix3d Q;
    Q << q.Q11, q.Q12, q.Q16, q.Q12, q.Q22, q.Q26, q.Q16, q.Q26, q.Q66;
    s.A += w * Q;
    s.B += (w * z) * Q;
    s.D += (w * z * z) * Q;
    s.intG += w * p.G;
    s.I0 += w * p.rho;
    s.I1 += w * z * z * p.rho;
  });
  return s;
}

double rel_change(double a, double b, double scale) {
  return std::abs(a - b) / std::max(scale, 1e-300);
}

double max_rel_change(const RawSection& a, const RawSection& b) {
  double m = 0.0;
  const double sA = a.A.norm(), sB = std::max(a.B.norm(), a.A.norm() * 1e-6), sD = a.D.norm();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      m = std::max(m, rel_change(a.A(i, j), b.A(i, j), sA));
      m = std::max(m, rel_change(a.B(i, j), b.B(i, j), sB));
      m = std::max(m, rel_change(a.D(i, j), b.D(i, j), sD));
    }
  m = std::max(m, rel_change(a.intG, b.intG, a.intG));
  m = std::max(m, rel_change(a.I0, b.I0, a.I0));
  m = std::max(m, rel_change(a.I1, b.I1, a.I1));
  return m;
}

}  // namespace

double energy_equivalence_kappa(const FgmComposition& comp, double h) {
  // Neutral-surface offset z_n = int z Q11 / int Q11, equilibrium shear shape
  // g(z) = -int_{-h/2}^{z} Q11(z')(z' - z_n) dz', then
  // kappa = [int g]^2 / (int G * int g^2/G).
  const int order = 48;
  auto Q11_at = [&](double z) {
    const PointProperties p = properties_at(comp, z, h);
    return stiffness_coeffs(p.E, p.nu).Q11;
  };
  double iQ = 0.0, izQ = 0.0;
  integrate_thickness(h, order, [&](double z, double w) {
    const double q = Q11_at(z);
    iQ += w * q;
    izQ += w * z * q;
  });
  const double zn = izQ / iQ;
  auto g_at = [&](double z) {
    // inner integral over [-h/2, z]; its lower end carries the fractional
    // power, so apply the same transformed rule scaled to the subinterval
    double acc = 0.0;
    const double len = z + 0.5 * h;
    for (const auto& g : gauss_legendre(order)) {
      const double u = 0.5 * (g.x + 1.0);
      const double t = -0.5 * h + len * u * u * u;
      const double w = 0.5 * g.w * len * 3.0 * u * u;
      acc += w * Q11_at(t) * (t - zn);
    }
    return -acc;
  };
  double ig = 0.0, ig2G = 0.0, iG = 0.0;
  integrate_thickness(h, order, [&](double z, double w) {
    const double gv = g_at(z);
    const PointProperties p = properties_at(comp, z, h);
    ig += w * gv;
    ig2G += w * gv * gv / p.G;
    iG += w * p.G;
  });
  return ig * ig / (iG * ig2G);
}

SectionMatrices integrate_section(const FgmComposition& comp, double h, const SectionOptions& opts) {
  if (h <= 0.0) throw ConfigError("thickness must be positive");
  if (opts.gauss_order < 20) throw ConfigError("through-thickness quadrature order must be >= 20");
  comp.validate();

  const RawSection s = integrate_raw(comp, h, opts.gauss_order);
  const RawSection s4 = integrate_raw(comp, h, opts.gauss_order + 4);
  const double change = max_rel_change(s, s4);
  if (change > 1e-8) {
    throw NumericalError("section quadrature not converged: relative change " +
                         std::to_string(change) + " between orders " +
                         std::to_string(opts.gauss_order) + " and " +
                         std::to_string(opts.gauss_order + 4));
  }

  SectionMatrices out;
  out.A = s4.A;
  out.B = s4.B;
  out.Db = s4.D;
  out.I0 = s4.I0;
  out.I1 = s4.I1;
  out.kappa = opts.kappa_mode == KappaMode::Constant ? 5.0 / 6.0 : energy_equivalence_kappa(comp, h);
  out.Es = out.kappa * s4.intG * Eigen::Matrix2d::Identity();
  return out;
}

void write_section_csv(const SectionMatrices& sec, std::ostream& out) {
  out << "entry,value\n";
  const char* ij[3] = {"1", "2", "6"};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      out << "A" << ij[i] << ij[j] << "," << sec.A(i, j) << "\n";
      out << "B" << ij[i] << ij[j] << "," << sec.B(i, j) << "\n";
      out << "D" << ij[i] << ij[j] << "," << sec.Db(i, j) << "\n";
    }
  out << "E44," << sec.Es(0, 0) << "\n";
  out << "E55," << sec.Es(1, 1) << "\n";
  out << "I0," << sec.I0 << "\n";
  out << "I1," << sec.I1 << "\n";
  out << "kappa," << sec.kappa << "\n";
}

}  // namespace fgmplate
