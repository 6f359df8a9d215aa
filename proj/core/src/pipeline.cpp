#include "fgmplate/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <thread>

#include "fgmplate/errors.hpp"

namespace fgmplate {

namespace {

int hardware_workers() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(12);
  ss << v;
  return ss.str();
}

}  // namespace

RunOutcome run_single(const RunConfig& cfg, bool want_vectors, int solver_threads) {
  const auto t0 = std::chrono::steady_clock::now();
  RunOutcome out;
  out.geometry = resolve_geometry(cfg);
  std::tie(out.rho_c, out.E_c) = normalization_constants(cfg);

  ModelInputs in;
  in.a = out.geometry.a;
  in.b = out.geometry.b;
  in.h = out.geometry.h;
  in.nx = out.geometry.nx;
  in.ny = out.geometry.ny;
  in.comp = resolve_composition(cfg);
  if (in.comp.T_ref < kTemperatureRangeMin || in.comp.T_ref > kTemperatureRangeMax) {
    std::cerr << "warning: T_ref=" << in.comp.T_ref
              << " K outside the supported range [250, 1200] K; extrapolating\n";
  }
  in.section_opts.gauss_order = cfg.quadrature_order;
  in.section_opts.kappa_mode = cfg.kappa_mode;
  in.cracks = resolve_cracks(cfg, out.geometry);
  in.bc = cfg.bc;

  auto model = std::make_shared<EnrichedModel>(build_model(in));

  EigenOptions opts;
  opts.k_modes = cfg.k_modes;
  opts.want_vectors = want_vectors;
  opts.threads = solver_threads > 0 ? solver_threads : hardware_workers();
  const EnrichedModel& m = *model;
  opts.dof_name = [&m](int reduced) {
    const int full = reduced >= 0 && reduced < (int)m.free_dofs.size() ? m.free_dofs[reduced] : -1;
    return full >= 0 ? m.dofs.dof_name(full, m.mesh) : ("reduced dof " + std::to_string(reduced));
  };

  const auto Kf = reduce(model->K, model->free_dofs);
  const auto Mf = reduce(model->M, model->free_dofs);
  out.modal = solve_generalized(Kf, Mf, opts);
  out.modal.Omegas.resize(out.modal.omegas.size());
  for (size_t i = 0; i < out.modal.omegas.size(); ++i) {
    out.modal.Omegas[i] =
        nondimensionalize(out.modal.omegas[i], out.geometry.b, out.geometry.h, out.rho_c, out.E_c);
  }
  if (want_vectors) out.model = model;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::vector<std::pair<std::string, std::string>> describe_inputs(const RunConfig& cfg) {
  const ResolvedGeometry g = resolve_geometry(cfg);
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("a", fmt(g.a));
  out.emplace_back("b", fmt(g.b));
  out.emplace_back("h", fmt(g.h));
  out.emplace_back("nx", std::to_string(g.nx));
  out.emplace_back("ny", std::to_string(g.ny));
  out.emplace_back("bc", bc_label(cfg.bc));
  out.emplace_back("ceramic", cfg.ceramic);
  out.emplace_back("metal", cfg.metal);
  out.emplace_back("n", fmt(cfg.n));
  out.emplace_back("T_ref", fmt(cfg.T_ref));
  out.emplace_back("n_cracks", std::to_string(cfg.cracks.size()));
  for (size_t i = 0; i < cfg.cracks.size(); ++i) {
    const auto& c = cfg.cracks[i];
    const std::string p = "crack" + std::to_string(i + 1) + "_";
    out.emplace_back(p + "anchor", c.anchor);
    out.emplace_back(p + "cx_over_a", fmt(c.cx_over_a));
    out.emplace_back(p + "cy_over_b", fmt(c.cy_over_b));
    out.emplace_back(p + "d_over_a", fmt(c.d_over_a));
    out.emplace_back(p + "theta_deg", fmt(c.theta_deg));
  }
  return out;
}

namespace {

// Applies one axis value to a copy of the base config.
void apply_axis(RunConfig& cfg, const std::string& axis, const std::string& value) {
  auto num = [&] {
    try {
      return std::stod(value);
    } catch (const std::exception&) {
      throw ConfigError("sweep axis " + axis + ": bad number '" + value + "'");
    }
  };
  if (axis == "n") cfg.n = num();
  else if (axis == "a_over_h") { cfg.a_over_h = num(); cfg.h.reset(); }
  else if (axis == "b_over_a") { cfg.b_over_a = num(); cfg.b.reset(); }
  else if (axis == "bc") cfg.bc = parse_bc(value);
  else if (axis == "d_over_a") {
    for (auto& c : cfg.cracks) c.d_over_a = num();
  } else if (axis == "theta_deg") {
    for (auto& c : cfg.cracks) c.theta_deg = num();
  } else if (axis == "theta1_deg" || axis == "theta2_deg") {
    const size_t i = axis == "theta1_deg" ? 0 : 1;
    if (cfg.cracks.size() <= i) {
      throw ConfigError("sweep axis " + axis + " needs at least " + std::to_string(i + 1) +
                        " [crack] sections");
    }
    cfg.cracks[i].theta_deg = num();
  } else if (axis == "cx_over_a") {
    for (auto& c : cfg.cracks) c.cx_over_a = num();
  } else if (axis == "cy_over_b") {
    for (auto& c : cfg.cracks) c.cy_over_b = num();
  }
}

}  // namespace

namespace {

// Orientation axes spanning [0, 90] degrees are enumerated so that the
// symmetric pairs (theta, 90 - theta) land on adjacent rows.
std::vector<std::string> order_axis_values(const std::string& axis,
                                           std::vector<std::string> values) {
  if (axis != "theta_deg") return values;
  std::vector<double> nums;
  for (const auto& v : values) {
    try {
      nums.push_back(std::stod(v));
    } catch (const std::exception&) {
      return values;
    }
  }
  for (double v : nums) {
    if (v < 0.0 || v > 90.0) return values;
  }
  std::vector<size_t> idx(values.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    const double ka = std::min(nums[a], 90.0 - nums[a]);
    const double kb = std::min(nums[b], 90.0 - nums[b]);
    if (ka != kb) return ka < kb;
    return nums[a] < nums[b];
  });
  std::vector<std::string> out;
  out.reserve(values.size());
  for (size_t i : idx) out.push_back(values[i]);
  return out;
}

}  // namespace

ResultTable run_sweep(const RunConfig& base, int workers) {
  // enumerate the Cartesian product in axis-declaration order, last axis fastest
  std::vector<std::string> axes = base.sweep.order;
  std::vector<std::vector<std::string>> axis_values;
  std::vector<size_t> sizes;
  size_t total = 1;
  for (const auto& a : axes) {
    auto vals = order_axis_values(a, base.sweep.axes.at(a));
    if (vals.empty()) throw ConfigError("sweep axis " + a + " has no values");
    sizes.push_back(vals.size());
    total *= vals.size();
    axis_values.push_back(std::move(vals));
  }

  std::vector<RunConfig> cells(total, base);
  for (size_t idx = 0; idx < total; ++idx) {
    size_t rem = idx;
    for (size_t ax = axes.size(); ax-- > 0;) {
      const size_t v = rem % sizes[ax];
      rem /= sizes[ax];
      apply_axis(cells[idx], axes[ax], axis_values[ax][v]);
    }
    cells[idx].sweep = {};
  }

  ResultTable table;
  table.n_modes = base.k_modes;
  if (!cells.empty()) {
    for (const auto& [name, value] : describe_inputs(cells.front())) {
      (void)value;
      table.input_columns.push_back(name);
    }
  }
  table.rows.resize(total);

  const int nw = workers > 0 ? workers : (base.workers > 0 ? base.workers : hardware_workers());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      const size_t idx = next.fetch_add(1);
      if (idx >= total) break;
      TableRow& row = table.rows[idx];
      row.inputs = describe_inputs(cells[idx]);
      try {
        const RunOutcome r = run_single(cells[idx], false, 1);
        row.omegas = r.modal.Omegas;
      } catch (const std::exception& ex) {
        row.error = ex.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < nw; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return table;
}

}  // namespace fgmplate
