#pragma once

#include <Eigen/Dense>
#include <iosfwd>

#include "fgmplate/materials.hpp"

namespace fgmplate {

/// Plane-stress reduced stiffness coefficients.
struct QbarCoeffs {
  double Q11, Q12, Q22, Q16, Q26, Q44, Q55, Q66;
};
QbarCoeffs stiffness_coeffs(double E, double nu);

/// Through-thickness integrated section stiffness and inertia.
struct SectionMatrices {
  Eigen::Matrix3d A;   // extensional [N/m]
  Eigen::Matrix3d B;   // membrane-bending coupling [N]
  Eigen::Matrix3d Db;  // bending [N m]
  Eigen::Matrix2d Es;  // transverse shear [N/m]
  double I0 = 0.0;     // translational inertia [kg/m^2]
  double I1 = 0.0;     // rotary inertia [kg]
  double kappa = 0.0;  // shear correction actually applied
};

enum class KappaMode {
  Constant,           // kappa = 5/6
  EnergyEquivalence,  // kappa from the equilibrium shear-stress shape
};

struct SectionOptions {
  int gauss_order = 30;  // through-thickness Gauss-Legendre order (>= 20)
  KappaMode kappa_mode = KappaMode::Constant;
};

/// Integrates A, B, Db, Es, I0, I1 over [-h/2, h/2]. Verifies quadrature
/// convergence against order+4 (relative change <= 1e-8) and throws
/// NumericalError otherwise.
SectionMatrices integrate_section(const FgmComposition& comp, double h,
                                  const SectionOptions& opts = {});

/// Energy-equivalence shear correction factor for the given section.
double energy_equivalence_kappa(const FgmComposition& comp, double h);

/// Debug dump, one labeled CSV row per matrix entry.
void write_section_csv(const SectionMatrices& sec, std::ostream& out);

}  // namespace fgmplate
