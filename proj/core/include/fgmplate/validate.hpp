#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fgmplate/config.hpp"

namespace fgmplate {

/// One validation run: a config plus the expected leading frequencies.
struct ValidationRun {
  std::string label;
  RunConfig config;
  std::vector<double> reference;
};

struct ValidationTable {
  std::string id;
  std::string description;
  double tolerance;  // relative, applied per cell
  std::vector<ValidationRun> runs;
};

const std::vector<std::string>& validation_table_ids();
ValidationTable validation_table(const std::string& id);  // throws ConfigError on unknown id

struct ValidationReport {
  std::string id;
  std::string description;
  std::string mesh_note;
  double tolerance = 0.0;
  struct Cell {
    std::string label;
    double computed = 0.0;
    double reference = 0.0;
    double rel_err = 0.0;
    bool pass = false;
    std::string error;
  };
  std::vector<Cell> cells;
  bool pass = true;
  double seconds = 0.0;
};

ValidationReport run_validation(const std::string& id, int workers = 0);
void print_report(const ValidationReport& report, std::ostream& out);

}  // namespace fgmplate
