#include "fgmplate/materials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fgmplate/errors.hpp"

namespace fgmplate {

double TempPoly::eval(double T) const {
  return P0 * (Pm1 / T + 1.0 + P1 * T + P2 * T * T + P3 * T * T * T);
}

void MaterialPhase::validate() const {
  if (E.P0 <= 0.0) throw ConfigError("phase '" + name + "': P0 must be positive");
  if (rho <= 0.0) throw ConfigError("phase '" + name + "': rho must be positive");
  if (!(nu > 0.0 && nu < 0.5)) throw ConfigError("phase '" + name + "': nu must be in (0, 0.5)");
  for (double T = kTemperatureRangeMin; T <= kTemperatureRangeMax; T += 25.0) {
    if (E.eval(T) <= 0.0) {
      throw ConfigError("phase '" + name + "': E(T) non-positive at T=" + std::to_string(T));
    }
  }
}

double property_at_temperature(const MaterialPhase& phase, double T) {
  if (T <= 0.0) throw ConfigError("temperature must be positive, got " + std::to_string(T));
  return phase.E.eval(T);
}

void FgmComposition::validate() const {
  ceramic.validate();
  metal.validate();
  if (n < 0.0) throw ConfigError("gradient index n must be >= 0, got " + std::to_string(n));
  if (T_ref <= 0.0) throw ConfigError("T_ref must be positive");
}

double volume_fraction_ceramic(const FgmComposition& comp, double z, double h) {
  const double half = 0.5 * h;
  if (z < -half - 1e-12 * h || z > half + 1e-12 * h) {
    throw ConfigError("z outside section: z=" + std::to_string(z) + ", h=" + std::to_string(h));
  }
  const double xi = std::clamp((2.0 * z + h) / (2.0 * h), 0.0, 1.0);
  if (comp.n == 0.0) return 1.0;
  return std::pow(xi, comp.n);
}

namespace {

struct KG {
  double K, G;
};

KG kg_from_enu(double E, double nu) {
  return {E / (3.0 * (1.0 - 2.0 * nu)), E / (2.0 * (1.0 + nu))};
}

// Matrix phase 0, inclusion phase 1.
KG mori_tanaka(const KG& mat, const KG& inc, double v_inc) {
  const double K = mat.K + (inc.K - mat.K) * v_inc /
                           (1.0 + (1.0 - v_inc) * 3.0 * (inc.K - mat.K) / (3.0 * mat.K + 4.0 * mat.G));
  const double f1 = mat.G * (9.0 * mat.K + 8.0 * mat.G) / (6.0 * (mat.K + 2.0 * mat.G));
  const double G = mat.G + (inc.G - mat.G) * v_inc /
                           (1.0 + (1.0 - v_inc) * (inc.G - mat.G) / (mat.G + f1));
  return {K, G};
}

}  // namespace

std::pair<double, double> mori_tanaka_moduli(const FgmComposition& comp, double Vc, double T) {
  if (Vc < -1e-14 || Vc > 1.0 + 1e-14) {
    throw ConfigError("volume fraction outside [0,1]: " + std::to_string(Vc));
  }
  Vc = std::clamp(Vc, 0.0, 1.0);
  const KG c = kg_from_enu(property_at_temperature(comp.ceramic, T), comp.ceramic.nu);
  const KG m = kg_from_enu(property_at_temperature(comp.metal, T), comp.metal.nu);
  const KG eff = mori_tanaka(m, c, Vc);
  return {eff.K, eff.G};
}

std::pair<double, double> young_poisson_from_KG(double K, double G) {
  const double E = 9.0 * K * G / (3.0 * K + G);
  const double nu = (3.0 * K - 2.0 * G) / (2.0 * (3.0 * K + G));
  return {E, nu};
}

double density_at(const FgmComposition& comp, double z, double h) {
  const double Vc = volume_fraction_ceramic(comp, z, h);
  return comp.ceramic.rho * Vc + comp.metal.rho * (1.0 - Vc);
}

PointProperties properties_at(const FgmComposition& comp, double z, double h) {
  const double Vc = volume_fraction_ceramic(comp, z, h);
  const double T = comp.T_ref;
  double E, nu;
  switch (comp.homogenization) {
    case Homogenization::Voigt: {
      const double Ec = property_at_temperature(comp.ceramic, T);
      const double Em = property_at_temperature(comp.metal, T);
      E = Em + (Ec - Em) * Vc;
      nu = comp.ceramic.nu;
      break;
    }
    case Homogenization::MoriTanakaCeramic: {
      const KG c = kg_from_enu(property_at_temperature(comp.ceramic, T), comp.ceramic.nu);
      const KG m = kg_from_enu(property_at_temperature(comp.metal, T), comp.metal.nu);
      const KG eff = mori_tanaka(c, m, 1.0 - Vc);
      std::tie(E, nu) = young_poisson_from_KG(eff.K, eff.G);
      break;
    }
    case Homogenization::MoriTanaka:
    default: {
      const auto [K, G] = mori_tanaka_moduli(comp, Vc, T);
      std::tie(E, nu) = young_poisson_from_KG(K, G);
      break;
    }
  }
  if (comp.nu_mode == NuMode::Constant) nu = comp.ceramic.nu;
  const double rho = comp.ceramic.rho * Vc + comp.metal.rho * (1.0 - Vc);
  return {E, nu, E / (2.0 * (1.0 + nu)), rho};
}

const std::vector<MaterialPhase>& builtin_phases() {
  static const std::vector<MaterialPhase> presets = [] {
    std::vector<MaterialPhase> v;
    v.push_back({"Al", {70.0e9}, 0.30, 2702.0, 0.0, {}});
    v.push_back({"Al2O3", {380.0e9}, 0.30, 3800.0, 0.0, {}});
    v.push_back({"ZrO2", {200.0e9}, 0.30, 5700.0, 0.0, {}});
    v.push_back({"SUS304",
                 {201.04e9, 0.0, 3.079e-4, -6.534e-7, 0.0},
                 0.28,
                 8166.0,
                 12.04,
                 {12.330e-6, 0.0, 8.086e-4, 0.0, 0.0}});
    v.push_back({"Si3N4",
                 {348.43e9, 0.0, -3.070e-4, 2.160e-7, -8.946e-11},
                 0.28,
                 2370.0,
                 9.19,
                 {5.8723e-6, 0.0, 9.095e-4, 0.0, 0.0}});
    return v;
  }();
  return presets;
}

const MaterialPhase* find_phase(const std::vector<MaterialPhase>& library, const std::string& name) {
  for (const auto& p : library) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<MaterialPhase> load_material_library(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open material library: " + path);
  std::vector<MaterialPhase> phases;
  MaterialPhase* cur = nullptr;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(path + ":" + std::to_string(lineno) + ": unterminated section");
      std::string head = trim(line.substr(1, line.size() - 2));
      if (head.rfind("phase ", 0) != 0) {
        throw ConfigError(path + ":" + std::to_string(lineno) + ": expected [phase NAME]");
      }
      phases.emplace_back();
      cur = &phases.back();
      cur->name = trim(head.substr(6));
      if (cur->name.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty phase name");
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos || cur == nullptr) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value inside [phase ...]");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    double x = 0.0;
    try {
      size_t used = 0;
      x = std::stod(val, &used);
      if (trim(val.substr(used)).size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": bad number '" + val + "'");
    }
    if (key == "E0") cur->E.P0 = x;
    else if (key == "E_-1") cur->E.Pm1 = x;
    else if (key == "E1") cur->E.P1 = x;
    else if (key == "E2") cur->E.P2 = x;
    else if (key == "E3") cur->E.P3 = x;
    else if (key == "nu") cur->nu = x;
    else if (key == "rho") cur->rho = x;
    else if (key == "k_thermal") cur->k_thermal = x;
    else if (key == "alpha0") cur->alpha.P0 = x;
    else if (key == "alpha_-1") cur->alpha.Pm1 = x;
    else if (key == "alpha1") cur->alpha.P1 = x;
    else if (key == "alpha2") cur->alpha.P2 = x;
    else if (key == "alpha3") cur->alpha.P3 = x;
    else throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  for (const auto& p : phases) p.validate();
  return phases;
}

}  // namespace fgmplate
