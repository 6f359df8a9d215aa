#include "fgmplate/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fgmplate/errors.hpp"

namespace fgmplate {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v, const std::string& where) {
  try {
    size_t used = 0;
    const double x = std::stod(v, &used);
    if (!trim(v.substr(used)).empty()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError(where + ": bad number '" + v + "'");
  }
}

int to_int(const std::string& v, const std::string& where) {
  const double x = to_double(v, where);
  const int i = static_cast<int>(std::lround(x));
  if (std::abs(x - i) > 1e-9) throw ConfigError(where + ": expected an integer, got '" + v + "'");
  return i;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct Section {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;
  int line = 0;
};

std::vector<Section> parse_sections(const std::string& text, const std::string& origin) {
  std::vector<Section> sections;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  Section* cur = nullptr;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(origin + ":" + std::to_string(lineno) + ": unterminated section header");
      sections.push_back({trim(line.substr(1, line.size() - 2)), {}, lineno});
      cur = &sections.back();
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos || cur == nullptr) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value' inside a [section]");
    }
    cur->entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return sections;
}

const std::vector<std::string> kSweepKeys = {
    "n", "d_over_a", "theta_deg", "theta1_deg", "theta2_deg",
    "a_over_h", "b_over_a", "bc", "cx_over_a", "cy_over_b"};

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  for (const Section& sec : parse_sections(text, origin)) {
    const std::string where = origin + ": [" + sec.name + "]";
    if (sec.name == "geometry") {
      for (const auto& [k, v] : sec.entries) {
        if (k == "a") cfg.a = to_double(v, where);
        else if (k == "b") cfg.b = to_double(v, where);
        else if (k == "h") cfg.h = to_double(v, where);
        else if (k == "b_over_a") cfg.b_over_a = to_double(v, where);
        else if (k == "a_over_h") cfg.a_over_h = to_double(v, where);
        else throw ConfigError(where + ": unknown key '" + k + "'");
      }
    } else if (sec.name == "material") {
      for (const auto& [k, v] : sec.entries) {
        if (k == "ceramic") cfg.ceramic = v;
        else if (k == "metal") cfg.metal = v;
        else if (k == "n") cfg.n = to_double(v, where);
        else if (k == "T_ref") cfg.T_ref = to_double(v, where);
        else if (k == "library") cfg.library_path = v;
        else if (k == "nu_mode") {
          if (v == "constant") cfg.nu_mode = NuMode::Constant;
          else if (v == "mori_tanaka") cfg.nu_mode = NuMode::MoriTanaka;
          else throw ConfigError(where + ": nu_mode must be constant or mori_tanaka");
        } else if (k == "homogenization") {
          if (v == "mori_tanaka") cfg.homogenization = Homogenization::MoriTanaka;
          else if (v == "mori_tanaka_ceramic") cfg.homogenization = Homogenization::MoriTanakaCeramic;
          else if (v == "voigt") cfg.homogenization = Homogenization::Voigt;
          else throw ConfigError(where + ": homogenization must be mori_tanaka, mori_tanaka_ceramic or voigt");
        } else if (k == "normalization_E") {
          if (v == "p0") cfg.normalization_E = NormalizationE::P0;
          else if (v == "at_T") cfg.normalization_E = NormalizationE::AtT;
          else throw ConfigError(where + ": normalization_E must be p0 or at_T");
        } else throw ConfigError(where + ": unknown key '" + k + "'");
      }
    } else if (sec.name.rfind("phase ", 0) == 0) {
      MaterialPhase ph;
      ph.name = trim(sec.name.substr(6));
      if (ph.name.empty()) throw ConfigError(where + ": empty phase name");
      for (const auto& [k, v] : sec.entries) {
        const double x = to_double(v, where);
        if (k == "E0") ph.E.P0 = x;
        else if (k == "E_-1") ph.E.Pm1 = x;
        else if (k == "E1") ph.E.P1 = x;
        else if (k == "E2") ph.E.P2 = x;
        else if (k == "E3") ph.E.P3 = x;
        else if (k == "nu") ph.nu = x;
        else if (k == "rho") ph.rho = x;
        else if (k == "k_thermal") ph.k_thermal = x;
        else if (k == "alpha0") ph.alpha.P0 = x;
        else if (k == "alpha1") ph.alpha.P1 = x;
        else if (k == "alpha2") ph.alpha.P2 = x;
        else if (k == "alpha3") ph.alpha.P3 = x;
        else if (k == "alpha_-1") ph.alpha.Pm1 = x;
        else throw ConfigError(where + ": unknown key '" + k + "'");
      }
      cfg.inline_phases.push_back(ph);
    } else if (sec.name == "mesh") {
      for (const auto& [k, v] : sec.entries) {
        if (k == "nx") cfg.nx = to_int(v, where);
        else if (k == "ny") cfg.ny = to_int(v, where);
        else throw ConfigError(where + ": unknown key '" + k + "'");
      }
    } else if (sec.name == "bc") {
      for (const auto& [k, v] : sec.entries) {
        if (k == "type") cfg.bc = parse_bc(v);
        else throw ConfigError(where + ": unknown key '" + k + "'");
      }
    } else if (sec.name == "solver") {
      for (const auto& [k, v] : sec.entries) {
        if (k == "k_modes") cfg.k_modes = to_int(v, where);
        else if (k == "quadrature_order") cfg.quadrature_order = to_int(v, where);
        else if (k == "workers") cfg.workers = to_int(v, where);
        else if (k == "kappa_mode") {
          if (v == "constant") cfg.kappa_mode = KappaMode::Constant;
          else if (v == "energy") cfg.kappa_mode = KappaMode::EnergyEquivalence;
          else throw ConfigError(where + ": kappa_mode must be constant or energy");
        } else throw ConfigError(where + ": unknown key '" + k + "'");
      }
    } else if (sec.name == "crack") {
      CrackSpec cs;
      for (const auto& [k, v] : sec.entries) {
        if (k == "anchor") cs.anchor = v;
        else if (k == "cx_over_a") cs.cx_over_a = to_double(v, where);
        else if (k == "cy_over_b") cs.cy_over_b = to_double(v, where);
        else if (k == "d_over_a") cs.d_over_a = to_double(v, where);
        else if (k == "theta_deg") cs.theta_deg = to_double(v, where);
        else throw ConfigError(where + ": unknown key '" + k + "'");
      }
      if (cs.anchor != "center" && cs.anchor != "left" && cs.anchor != "right" &&
          cs.anchor != "bottom" && cs.anchor != "top") {
        throw ConfigError(where + ": anchor must be center, left, right, bottom or top");
      }
      cfg.cracks.push_back(cs);
    } else if (sec.name == "sweep") {
      for (const auto& [k, v] : sec.entries) {
        if (std::find(kSweepKeys.begin(), kSweepKeys.end(), k) == kSweepKeys.end()) {
          throw ConfigError(where + ": unknown sweep axis '" + k + "'");
        }
        cfg.sweep.axes[k] = split_list(v);
        cfg.sweep.order.push_back(k);
      }
    } else if (sec.name == "output") {
      for (const auto& [k, v] : sec.entries) {
        if (k == "csv") cfg.csv_path = v;
        else if (k == "vtk") cfg.vtk_path = v;
        else if (k == "verbosity") cfg.verbosity = to_int(v, where);
        else throw ConfigError(where + ": unknown key '" + k + "'");
      }
    } else {
      throw ConfigError(origin + ":" + std::to_string(sec.line) + ": unknown section [" + sec.name + "]");
    }
  }
  if (cfg.k_modes < 1 || cfg.k_modes > 20) {
    throw ConfigError("[solver] k_modes: must be between 1 and 20");
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

ResolvedGeometry resolve_geometry(const RunConfig& cfg) {
  ResolvedGeometry g;
  g.a = cfg.a;
  if (g.a <= 0.0) throw ConfigError("[geometry] a: must be positive");
  g.b = cfg.b ? *cfg.b : cfg.b_over_a * g.a;
  g.h = cfg.h ? *cfg.h : g.a / cfg.a_over_h;
  if (g.b <= 0.0 || g.h <= 0.0) throw ConfigError("[geometry]: resolved b and h must be positive");
  const auto [dx, dy] = default_divisions(g.a, g.b);
  g.nx = cfg.nx ? *cfg.nx : dx;
  g.ny = cfg.ny ? *cfg.ny : dy;
  return g;
}

FgmComposition resolve_composition(const RunConfig& cfg) {
  std::vector<MaterialPhase> library = builtin_phases();
  if (!cfg.library_path.empty()) {
    for (const auto& p : load_material_library(cfg.library_path)) library.push_back(p);
  }
  for (const auto& p : cfg.inline_phases) library.push_back(p);
  auto lookup = [&](const std::string& name) -> MaterialPhase {
    // later additions take precedence
    for (auto it = library.rbegin(); it != library.rend(); ++it) {
      if (it->name == name) return *it;
    }
    throw ConfigError("[material]: unknown phase '" + name + "'");
  };
  FgmComposition comp;
  comp.ceramic = lookup(cfg.ceramic);
  comp.metal = lookup(cfg.metal);
  comp.n = cfg.n;
  comp.T_ref = cfg.T_ref;
  comp.nu_mode = cfg.nu_mode;
  comp.homogenization = cfg.homogenization;
  comp.validate();
  return comp;
}

std::pair<double, double> normalization_constants(const RunConfig& cfg) {
  const FgmComposition comp = resolve_composition(cfg);
  const double E_c = cfg.normalization_E == NormalizationE::P0
                         ? comp.ceramic.E.P0
                         : property_at_temperature(comp.ceramic, cfg.T_ref);
  return {comp.ceramic.rho, E_c};
}

CrackSet resolve_cracks(const RunConfig& cfg, const ResolvedGeometry& g) {
  CrackSet set;
  for (const auto& cs : cfg.cracks) {
    CrackSegment seg;
    seg.length = cs.d_over_a * g.a;
    seg.theta = cs.theta_deg * M_PI / 180.0;
    const Eigen::Vector2d dir(std::cos(seg.theta), std::sin(seg.theta));
    if (cs.anchor == "center") {
      seg.center = {cs.cx_over_a * g.a, cs.cy_over_b * g.b};
    } else if (cs.anchor == "left" || cs.anchor == "bottom") {
      const Eigen::Vector2d mouth = cs.anchor == "left"
                                        ? Eigen::Vector2d(0.0, cs.cy_over_b * g.b)
                                        : Eigen::Vector2d(cs.cx_over_a * g.a, 0.0);
      seg.center = mouth + 0.5 * seg.length * dir;
      seg.tip_a_interior = false;
    } else {  // right | top
      const Eigen::Vector2d mouth = cs.anchor == "right"
                                        ? Eigen::Vector2d(g.a, cs.cy_over_b * g.b)
                                        : Eigen::Vector2d(cs.cx_over_a * g.a, g.b);
      seg.center = mouth - 0.5 * seg.length * dir;
      seg.tip_b_interior = false;
    }
    seg.validate();
    set.cracks.push_back(seg);
  }
  return set;
}

std::string effective_config(const RunConfig& cfg) {
  const ResolvedGeometry g = resolve_geometry(cfg);
  std::ostringstream out;
  out.precision(17);
  out << "[geometry]\na = " << g.a << "\nb = " << g.b << "\nh = " << g.h << "\n\n";
  out << "[material]\nceramic = " << cfg.ceramic << "\nmetal = " << cfg.metal << "\nn = " << cfg.n
      << "\nT_ref = " << cfg.T_ref
      << "\nnu_mode = " << (cfg.nu_mode == NuMode::Constant ? "constant" : "mori_tanaka")
      << "\nhomogenization = "
      << (cfg.homogenization == Homogenization::MoriTanaka          ? "mori_tanaka"
          : cfg.homogenization == Homogenization::MoriTanakaCeramic ? "mori_tanaka_ceramic"
                                                                    : "voigt")
      << "\nnormalization_E = " << (cfg.normalization_E == NormalizationE::P0 ? "p0" : "at_T")
      << "\n";
  if (!cfg.library_path.empty()) out << "library = " << cfg.library_path << "\n";
  out << "\n";
  for (const auto& ph : cfg.inline_phases) {
    out << "[phase " << ph.name << "]\nE0 = " << ph.E.P0 << "\nE_-1 = " << ph.E.Pm1
        << "\nE1 = " << ph.E.P1 << "\nE2 = " << ph.E.P2 << "\nE3 = " << ph.E.P3
        << "\nnu = " << ph.nu << "\nrho = " << ph.rho << "\nk_thermal = " << ph.k_thermal
        << "\n\n";
  }
  out << "[mesh]\nnx = " << g.nx << "\nny = " << g.ny << "\n\n";
  out << "[bc]\ntype = " << bc_label(cfg.bc) << "\n\n";
  out << "[solver]\nk_modes = " << cfg.k_modes
      << "\nkappa_mode = " << (cfg.kappa_mode == KappaMode::Constant ? "constant" : "energy")
      << "\nquadrature_order = " << cfg.quadrature_order << "\nworkers = " << cfg.workers
      << "\n\n";
  for (const auto& cs : cfg.cracks) {
    out << "[crack]\nanchor = " << cs.anchor << "\ncx_over_a = " << cs.cx_over_a
        << "\ncy_over_b = " << cs.cy_over_b << "\nd_over_a = " << cs.d_over_a
        << "\ntheta_deg = " << cs.theta_deg << "\n\n";
  }
  if (!cfg.sweep.empty()) {
    out << "[sweep]\n";
    for (const auto& k : cfg.sweep.order) {
      out << k << " =";
      for (const auto& v : cfg.sweep.axes.at(k)) out << " " << v;
      out << "\n";
    }
    out << "\n";
  }
  out << "[output]\n";
  if (!cfg.csv_path.empty()) out << "csv = " << cfg.csv_path << "\n";
  if (!cfg.vtk_path.empty()) out << "vtk = " << cfg.vtk_path << "\n";
  out << "verbosity = " << cfg.verbosity << "\n";
  return out.str();
}

}  // namespace fgmplate
