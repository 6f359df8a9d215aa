#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fgmplate/assembly.hpp"
#include "fgmplate/materials.hpp"

namespace fgmplate {

/// Normalization convention for the ceramic E in Omega.
enum class NormalizationE { P0, AtT };

/// Crack as written in a config file; lengths are fractions of the plate.
struct CrackSpec {
  std::string anchor = "center";  // center | left | right | bottom | top
  double cx_over_a = 0.5;
  double cy_over_b = 0.5;
  double d_over_a = 0.5;
  double theta_deg = 0.0;
};

struct SweepAxes {
  std::map<std::string, std::vector<std::string>> axes;  // insertion order kept separately
  std::vector<std::string> order;
  bool empty() const { return order.empty(); }
};

struct RunConfig {
  // geometry
  double a = 1.0;
  std::optional<double> b, h;
  double b_over_a = 1.0;
  double a_over_h = 10.0;
  // material
  std::string ceramic = "Si3N4";
  std::string metal = "SUS304";
  double n = 0.0;
  double T_ref = 300.0;
  NuMode nu_mode = NuMode::Constant;
  Homogenization homogenization = Homogenization::MoriTanaka;
  NormalizationE normalization_E = NormalizationE::P0;
  std::string library_path;                 // optional extra phases
  std::vector<MaterialPhase> inline_phases; // [phase NAME] sections
  // mesh
  std::optional<int> nx, ny;
  // bc
  BcType bc = BcType::SS;
  // solver
  int k_modes = 5;
  KappaMode kappa_mode = KappaMode::Constant;
  int quadrature_order = 30;
  int workers = 0;  // 0 = hardware concurrency
  // cracks
  std::vector<CrackSpec> cracks;
  // sweep axes
  SweepAxes sweep;
  // output
  std::string csv_path, vtk_path;
  int verbosity = 1;
};

RunConfig parse_config_text(const std::string& text, const std::string& origin = "<config>");
RunConfig parse_config_file(const std::string& path);

/// Resolved absolute geometry.
struct ResolvedGeometry {
  double a, b, h;
  int nx, ny;
};
ResolvedGeometry resolve_geometry(const RunConfig& cfg);

/// Composition with phases looked up from presets, library file and inline
/// sections (in that order of growing precedence).
FgmComposition resolve_composition(const RunConfig& cfg);

/// Ceramic (rho, E) used in the Omega normalization.
std::pair<double, double> normalization_constants(const RunConfig& cfg);

/// Crack specs to absolute segments.
CrackSet resolve_cracks(const RunConfig& cfg, const ResolvedGeometry& g);

/// Canonical config text with every default resolved; parsing it again
/// reproduces the same runs.
std::string effective_config(const RunConfig& cfg);

}  // namespace fgmplate
