// Reference-solution tables for the `validate` command. Values are published
// nondimensional frequencies Omega = omega (b^2/h) sqrt(rho_c/E_c) for the
// configurations described per table.

#include <cmath>

#include "fgmplate/errors.hpp"
#include "fgmplate/validate.hpp"

namespace fgmplate {

namespace {

RunConfig isotropic_rect_base() {
  RunConfig cfg;
  cfg.a = 2.0;
  cfg.b_over_a = 0.5;
  cfg.h = 0.01;  // b/h = 100
  cfg.ceramic = "Al2O3";
  cfg.metal = "Al2O3";
  cfg.n = 0.0;
  cfg.k_modes = 5;
  CrackSpec crack;
  crack.anchor = "left";
  crack.cy_over_b = 0.5;
  crack.d_over_a = 0.5;
  crack.theta_deg = 0.0;
  cfg.cracks = {crack};
  return cfg;
}

RunConfig ss_side_crack_base(double n) {
  RunConfig cfg;
  cfg.ceramic = "Al2O3";
  cfg.metal = "Al";
  cfg.homogenization = Homogenization::MoriTanakaCeramic;
  cfg.n = n;
  cfg.a_over_h = 10.0;
  cfg.k_modes = 3;
  CrackSpec crack;
  crack.anchor = "left";
  crack.cy_over_b = 0.5;
  crack.d_over_a = 0.5;
  cfg.cracks = {crack};
  return cfg;
}

RunConfig cantilever_base(double n, double theta_deg) {
  RunConfig cfg;
  cfg.ceramic = "ZrO2";
  cfg.metal = "Al";
  cfg.homogenization = Homogenization::Voigt;
  cfg.n = n;
  cfg.a_over_h = 10.0;  // square plate, so b/h = 10
  cfg.bc = BcType::CFFF;
  cfg.k_modes = 3;
  CrackSpec crack;
  crack.anchor = "right";  // the free edge opposite the clamp
  crack.cy_over_b = 0.5;
  crack.d_over_a = 0.5;
  crack.theta_deg = theta_deg;
  cfg.cracks = {crack};
  return cfg;
}

RunConfig center_crack_base(double n, double d_over_a, double theta_deg) {
  RunConfig cfg;
  cfg.ceramic = "Si3N4";
  cfg.metal = "SUS304";
  cfg.n = n;
  cfg.a_over_h = 10.0;
  cfg.k_modes = 1;
  if (d_over_a > 0.0) {
    CrackSpec crack;
    crack.anchor = "center";
    crack.d_over_a = d_over_a;
    crack.theta_deg = theta_deg;
    cfg.cracks = {crack};
  }
  return cfg;
}

RunConfig aspect_base(double a_over_h, BcType bc) {
  RunConfig cfg = center_crack_base(5.0, 0.5, 0.0);
  cfg.a_over_h = a_over_h;
  cfg.bc = bc;
  cfg.k_modes = 2;
  return cfg;
}

RunConfig cantilever_orientation_base(double n, double theta_deg) {
  RunConfig cfg = cantilever_base(n, theta_deg);
  cfg.ceramic = "Si3N4";
  cfg.metal = "SUS304";
  cfg.homogenization = Homogenization::MoriTanaka;
  cfg.k_modes = 1;
  return cfg;
}

std::string n_label(double n) {
  std::string s = std::to_string(n);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return "n=" + s;
}

}  // namespace

const std::vector<std::string>& validation_table_ids() {
  static const std::vector<std::string> ids = {
      "rect-isotropic",   "ss-side-crack",    "cantilever-side-crack",
      "ss-center-crack",  "aspect-thickness", "cantilever-orientation"};
  return ids;
}

ValidationTable validation_table(const std::string& id) {
  ValidationTable t;
  t.id = id;
  if (id == "rect-isotropic") {
    t.description =
        "Simply supported isotropic rectangular thin plate (a/b=2, b/h=100, nu=0.3) with a "
        "horizontal mid-height side crack, d/a=0.5; published reference, modes 1-5";
    t.tolerance = 0.02;
    t.runs.push_back({"modes 1-5", isotropic_rect_base(), {3.055, 5.508, 5.665, 9.382, 12.861}});
  } else if (id == "ss-side-crack") {
    t.description =
        "Simply supported square Al/Al2O3 graded plate (a/h=10) with a horizontal mid-height "
        "side crack, d/a=0.5; published reference, modes 1-3 per gradient index";
    t.tolerance = 0.03;
    const double refs[5][4] = {{0.0, 5.387, 11.419, 13.359},
                               {0.2, 5.028, 10.659, 12.437},
                               {1.0, 4.122, 8.526, 10.285},
                               {5.0, 3.626, 7.415, 8.566},
                               {10.0, 3.409, 7.059, 8.221}};
    for (const auto& r : refs) {
      t.runs.push_back({n_label(r[0]), ss_side_crack_base(r[0]), {r[1], r[2], r[3]}});
    }
  } else if (id == "cantilever-side-crack") {
    t.description =
        "Cantilevered square Al/ZrO2 graded plate (b/h=10) with a horizontal side crack from "
        "the free edge, c_y/b=0.5, d/a=0.5; published reference, modes 1-3 per gradient index";
    t.tolerance = 0.02;
    const double refs[5][4] = {{0.0, 1.0380, 1.7329, 4.8231},
                               {0.2, 1.0075, 1.6834, 4.6890},
                               {1.0, 0.9546, 1.5964, 4.4410},
                               {5.0, 0.9748, 1.6242, 4.4955},
                               {10.0, 0.9722, 1.6194, 4.4845}};
    for (const auto& r : refs) {
      t.runs.push_back({n_label(r[0]), cantilever_base(r[0], 0.0), {r[1], r[2], r[3]}});
    }
  } else if (id == "ss-center-crack") {
    t.description =
        "Simply supported square Si3N4/SUS304 graded plate (a/h=10) with a center crack; "
        "published fundamental frequencies over crack length and orientation";
    t.tolerance = 0.01;
    struct Row {
      double n, d, th, ref;
    };
    const Row rows[] = {{0, 0.0, 0, 5.5346}, {0, 0.4, 0, 5.0502},  {0, 0.4, 45, 5.0173},
                        {0, 0.6, 0, 4.7526}, {0, 0.6, 45, 4.6342}, {0, 0.8, 0, 4.5636},
                        {0, 0.8, 45, 4.2754}, {0, 0.8, 90, 4.5636}, {1, 0.0, 0, 3.3376},
                        {1, 0.8, 45, 2.5767}};
    for (const auto& r : rows) {
      std::string label = n_label(r.n) + " d/a=" + std::to_string(r.d).substr(0, 3) +
                          " theta=" + std::to_string((int)r.th);
      t.runs.push_back({label, center_crack_base(r.n, r.d, r.th), {r.ref}});
    }
  } else if (id == "aspect-thickness") {
    t.description =
        "Square Si3N4/SUS304 graded plate (n=5) with a horizontal center crack d/a=0.5: effect "
        "of thickness and boundary condition; published reference, modes 1-2";
    t.tolerance = 0.015;
    t.runs.push_back({"a/h=10 SS", aspect_base(10.0, BcType::SS), {2.4051, 5.2792}});
    t.runs.push_back({"a/h=10 CC", aspect_base(10.0, BcType::CC), {4.1624, 6.6286}});
    t.runs.push_back({"a/h=20 SS", aspect_base(20.0, BcType::SS), {2.4831, 5.8338}});
    t.runs.push_back({"a/h=20 CC", aspect_base(20.0, BcType::CC), {4.4592, 7.6464}});
  } else if (id == "cantilever-orientation") {
    t.description =
        "Cantilevered square Si3N4/SUS304 graded plate (a/h=10) with a side crack from the free "
        "edge, d/a=0.5: fundamental frequency vs crack angle; published reference";
    t.tolerance = 0.01;
    const double refs0[][2] = {{-60, 0.9859}, {-40, 0.9838}, {-20, 0.9900}, {0, 0.9951},
                               {20, 0.9900},  {40, 0.9838},  {60, 0.9859}};
    for (const auto& r : refs0) {
      t.runs.push_back({"n=0 theta=" + std::to_string((int)r[0]),
                        cantilever_orientation_base(0.0, r[0]),
                        {r[1]}});
    }
    t.runs.push_back({"n=5 theta=0", cantilever_orientation_base(5.0, 0.0), {0.4884}});
    t.runs.push_back({"n=5 theta=-40", cantilever_orientation_base(5.0, -40.0), {0.4828}});
  } else {
    throw ConfigError("unknown validation table '" + id + "'");
  }
  return t;
}

}  // namespace fgmplate
