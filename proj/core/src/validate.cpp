#include "fgmplate/validate.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <thread>
#include <vector>

#include "fgmplate/pipeline.hpp"

namespace fgmplate {

ValidationReport run_validation(const std::string& id, int workers) {
  const auto t0 = std::chrono::steady_clock::now();
  const ValidationTable table = validation_table(id);
  ValidationReport report;
  report.id = table.id;
  report.description = table.description;
  report.tolerance = table.tolerance;
  {
    const ResolvedGeometry g = resolve_geometry(table.runs.front().config);
    report.mesh_note = "mesh " + std::to_string(g.nx) + "x" + std::to_string(g.ny);
  }

  struct RunResult {
    std::vector<double> omegas;
    std::string error;
  };
  std::vector<RunResult> results(table.runs.size());
  const int nw = workers > 0 ? workers
                             : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<size_t> next{0};
  auto work = [&] {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= table.runs.size()) break;
      try {
        results[i].omegas = run_single(table.runs[i].config, false, 1).modal.Omegas;
      } catch (const std::exception& ex) {
        results[i].error = ex.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < nw; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  for (size_t i = 0; i < table.runs.size(); ++i) {
    const auto& run = table.runs[i];
    for (size_t m = 0; m < run.reference.size(); ++m) {
      ValidationReport::Cell cell;
      cell.label = run.label + (run.reference.size() > 1 ? " mode " + std::to_string(m + 1) : "");
      cell.reference = run.reference[m];
      if (!results[i].error.empty()) {
        cell.error = results[i].error;
        cell.pass = false;
      } else if (m < results[i].omegas.size()) {
        cell.computed = results[i].omegas[m];
        cell.rel_err = std::abs(cell.computed - cell.reference) / std::abs(cell.reference);
        cell.pass = cell.rel_err <= table.tolerance;
      }
      report.pass = report.pass && cell.pass;
      report.cells.push_back(cell);
    }
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

void print_report(const ValidationReport& report, std::ostream& out) {
  out << "validation table: " << report.id << "\n";
  out << "  " << report.description << "\n";
  out << "  " << report.mesh_note << ", tolerance " << 100.0 * report.tolerance << "%\n";
  out << std::fixed;
  for (const auto& c : report.cells) {
    out << "  " << (c.pass ? "PASS" : "FAIL") << "  " << std::setw(28) << std::left << c.label
        << std::right;
    if (!c.error.empty()) {
      out << "  error: " << c.error << "\n";
      continue;
    }
    out << "  computed " << std::setprecision(4) << std::setw(9) << c.computed << "  reference "
        << std::setw(9) << c.reference << "  rel.err " << std::setprecision(2) << std::setw(6)
        << 100.0 * c.rel_err << "%\n";
  }
  out << (report.pass ? "RESULT: PASS" : "RESULT: FAIL") << "  ("
      << std::setprecision(1) << report.seconds << " s)\n";
}

}  // namespace fgmplate
