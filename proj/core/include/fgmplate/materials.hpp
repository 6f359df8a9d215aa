#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fgmplate {

/// Temperature polynomial P(T) = P0 * (P_-1/T + 1 + P1*T + P2*T^2 + P3*T^3).
struct TempPoly {
  double P0 = 0.0;
  double Pm1 = 0.0;
  double P1 = 0.0;
  double P2 = 0.0;
  double P3 = 0.0;

  double eval(double T) const;
  bool is_constant() const { return Pm1 == 0.0 && P1 == 0.0 && P2 == 0.0 && P3 == 0.0; }
};

/// One constituent of the graded section (ceramic or metal).
struct MaterialPhase {
  std::string name;
  TempPoly E;            // Young's modulus [Pa]
  double nu = 0.0;       // Poisson's ratio
  double rho = 0.0;      // density [kg/m^3]
  double k_thermal = 0.0;  // thermal conductivity [W/(m K)], carried as data only
  TempPoly alpha;          // thermal expansion [1/K], parsed but unused

  /// Throws ConfigError on violated invariants (P0 > 0, rho > 0, 0 < nu < 0.5,
  /// E(T) > 0 over [250, 1200] K).
  void validate() const;
};

/// E(T) for a phase. T must be positive (the P_-1/T term).
double property_at_temperature(const MaterialPhase& phase, double T);

/// Effective-medium law used through the thickness.
enum class Homogenization {
  MoriTanaka,         // metal matrix, ceramic inclusions
  MoriTanakaCeramic,  // ceramic matrix, metal inclusions
  Voigt,              // rule of mixtures on E
};

enum class NuMode {
  Constant,    // hold nu at the ceramic value
  MoriTanaka,  // nu from the effective K, G
};

struct FgmComposition {
  MaterialPhase ceramic;
  MaterialPhase metal;
  double n = 0.0;       // gradient index, >= 0
  double T_ref = 300.0;  // evaluation temperature [K]
  Homogenization homogenization = Homogenization::MoriTanaka;
  NuMode nu_mode = NuMode::Constant;

  void validate() const;
};

/// Supported temperature range of the property polynomials. Outside it the
/// evaluation is an extrapolation; callers warn but proceed.
inline constexpr double kTemperatureRangeMin = 250.0;
inline constexpr double kTemperatureRangeMax = 1200.0;

/// Ceramic volume fraction ((2z+h)/(2h))^n for z in [-h/2, h/2].
double volume_fraction_ceramic(const FgmComposition& comp, double z, double h);

/// Effective (K, G) of the mixture at ceramic fraction Vc, metal matrix form.
std::pair<double, double> mori_tanaka_moduli(const FgmComposition& comp, double Vc, double T);

/// (E, nu) back from effective bulk and shear moduli.
std::pair<double, double> young_poisson_from_KG(double K, double G);

/// Rule-of-mixtures density at height z.
double density_at(const FgmComposition& comp, double z, double h);

/// Pointwise effective properties at height z, honoring the composition's
/// homogenization and nu handling.
struct PointProperties {
  double E;
  double nu;
  double G;    // transverse shear modulus consistent with (E, nu)
  double rho;
};
PointProperties properties_at(const FgmComposition& comp, double z, double h);

/// Built-in phases: Al, Al2O3, ZrO2, SUS304, Si3N4.
const std::vector<MaterialPhase>& builtin_phases();
const MaterialPhase* find_phase(const std::vector<MaterialPhase>& library, const std::string& name);

/// Parses a material library file ([phase NAME] sections with E0/E_-1/E1/E2/E3,
/// nu, rho, k_thermal, alpha0/alpha1/... keys). Throws ConfigError.
std::vector<MaterialPhase> load_material_library(const std::string& path);

}  // namespace fgmplate
