// Command-line front end: single runs, parametric sweeps, reference-table
// validation and mode-shape export for cracked graded Mindlin plates.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "fgmplate/errors.hpp"
#include "fgmplate/pipeline.hpp"
#include "fgmplate/validate.hpp"

namespace fs = std::filesystem;
using namespace fgmplate;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitModel = 3;
constexpr int kExitNumerical = 4;
constexpr int kExitValidation = 5;

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  int workers = 0;
  int modes = 0;
};

fs::path out_file(const CommonArgs& args, const std::string& name) {
  if (args.out_dir.empty()) return name;
  fs::create_directories(args.out_dir);
  return fs::path(args.out_dir) / name;
}

RunConfig load_config(const CommonArgs& args) {
  RunConfig cfg = parse_config_file(args.config_path);
  if (args.modes > 0) cfg.k_modes = args.modes;
  if (args.workers > 0) cfg.workers = args.workers;
  return cfg;
}

void write_effective(const RunConfig& cfg, const CommonArgs& args) {
  std::ofstream f(out_file(args, "effective.ini"));
  f << effective_config(cfg);
}

void print_frequencies(const RunOutcome& r) {
  std::cout << std::fixed << std::setprecision(4);
  std::cout << "plate " << r.geometry.a << " x " << r.geometry.b << " x " << r.geometry.h
            << ", mesh " << r.geometry.nx << "x" << r.geometry.ny << "\n";
  for (size_t i = 0; i < r.modal.omegas.size(); ++i) {
    std::cout << "mode " << i + 1 << ":  Omega = " << r.modal.Omegas[i]
              << "   omega = " << std::setprecision(6) << std::scientific << r.modal.omegas[i]
              << std::fixed << std::setprecision(4) << " rad/s\n";
  }
  std::cout << "solve time: " << std::setprecision(1) << r.seconds << " s\n";
}

int cmd_run(const CommonArgs& args, bool dump_matrices) {
  const RunConfig cfg = load_config(args);
  const RunOutcome r = run_single(cfg, dump_matrices, cfg.workers);
  print_frequencies(r);
  write_effective(cfg, args);
  ResultTable table;
  table.n_modes = cfg.k_modes;
  for (const auto& [name, value] : describe_inputs(cfg)) {
    (void)value;
    table.input_columns.push_back(name);
  }
  TableRow row;
  row.inputs = describe_inputs(cfg);
  row.omegas = r.modal.Omegas;
  table.rows.push_back(row);
  const std::string csv = cfg.csv_path.empty() ? "run.csv" : cfg.csv_path;
  std::ofstream f(out_file(args, csv));
  write_csv(table, f);
  if (dump_matrices && r.model) {
    std::ofstream fk(out_file(args, "K.txt"));
    write_coordinate_matrix(r.model->K, fk);
    std::ofstream fm(out_file(args, "M.txt"));
    write_coordinate_matrix(r.model->M, fm);
  }
  return kExitOk;
}

int cmd_sweep(const CommonArgs& args) {
  const RunConfig cfg = load_config(args);
  const ResultTable table = run_sweep(cfg, cfg.workers);
  const std::string csv = cfg.csv_path.empty() ? "sweep.csv" : cfg.csv_path;
  std::ofstream f(out_file(args, csv));
  write_csv(table, f);
  write_effective(cfg, args);
  int failed = 0;
  for (const auto& row : table.rows) {
    if (!row.error.empty()) ++failed;
  }
  std::cout << "sweep: " << table.rows.size() << " cells, " << failed << " failed, results in "
            << out_file(args, csv).string() << "\n";
  if (failed > 0) {
    for (const auto& row : table.rows) {
      if (!row.error.empty()) std::cout << "  cell error: " << row.error << "\n";
    }
  }
  return kExitOk;
}

int cmd_validate(const std::string& table_id, const CommonArgs& args) {
  bool all_pass = true;
  std::vector<std::string> ids;
  if (table_id == "all") {
    ids = validation_table_ids();
  } else {
    ids.push_back(table_id);
  }
  for (const auto& id : ids) {
    const ValidationReport report = run_validation(id, args.workers);
    print_report(report, std::cout);
    all_pass = all_pass && report.pass;
  }
  return all_pass ? kExitOk : kExitValidation;
}

int cmd_modes(const CommonArgs& args) {
  RunConfig cfg = load_config(args);
  const RunOutcome r = run_single(cfg, true, cfg.workers);
  print_frequencies(r);
  for (size_t m = 0; m < r.modal.omegas.size(); ++m) {
    const Eigen::VectorXd full = expand(*r.model, r.modal.vectors.col(m));
    const ModeShapeField field = sample_mode(*r.model, full);
    const std::string base = cfg.vtk_path.empty() ? "mode" : cfg.vtk_path;
    std::ofstream f(out_file(args, base + "_" + std::to_string(m + 1) + ".vtk"));
    write_vtk(field, "mode " + std::to_string(m + 1), f);
  }
  write_effective(cfg, args);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Natural frequencies and mode shapes of cracked functionally graded Mindlin plates"};
  app.require_subcommand(1);

  CommonArgs args;
  bool dump_matrices = false;
  std::string table_id = "all";

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config) {
      cmd->add_option("--config", args.config_path, "configuration file")->required();
    }
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--workers", args.workers, "worker threads (0 = all cores)");
    cmd->add_option("--modes", args.modes, "number of modes (overrides config)");
  };

  CLI::App* run = app.add_subcommand("run", "single analysis");
  add_common(run, true);
  run->add_flag("--dump-matrices", dump_matrices, "write K and M in coordinate text format");
  CLI::App* sweep = app.add_subcommand("sweep", "parametric sweep over the [sweep] axes");
  add_common(sweep, true);
  CLI::App* validate = app.add_subcommand("validate", "compare against reference tables");
  validate->add_option("--table", table_id,
                       "table id (rect-isotropic, ss-side-crack, cantilever-side-crack, "
                       "ss-center-crack, aspect-thickness, cantilever-orientation, all)");
  validate->add_option("--workers", args.workers, "worker threads");
  CLI::App* modes = app.add_subcommand("modes", "export mode shapes as legacy VTK");
  add_common(modes, true);

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(args, dump_matrices);
    if (sweep->parsed()) return cmd_sweep(args);
    if (validate->parsed()) return cmd_validate(table_id, args);
    if (modes->parsed()) return cmd_modes(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitModel;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
