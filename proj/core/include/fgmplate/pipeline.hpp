#pragma once

#include <memory>

#include "fgmplate/config.hpp"
#include "fgmplate/eigensolver.hpp"
#include "fgmplate/post.hpp"

namespace fgmplate {

struct RunOutcome {
  ResolvedGeometry geometry;
  double rho_c = 0.0, E_c = 0.0;  // normalization constants
  ModalResult modal;              // Omegas filled
  std::shared_ptr<EnrichedModel> model;  // kept when vectors were requested
  double seconds = 0.0;
};

/// materials -> section -> crack -> assembly -> solve -> nondimensionalize.
RunOutcome run_single(const RunConfig& cfg, bool want_vectors = false, int solver_threads = 0);

/// Cartesian product of the sweep axes; cells run concurrently (each cell a
/// single-threaded solve), failed cells keep their row with the error text.
ResultTable run_sweep(const RunConfig& cfg, int workers = 0);

/// Resolved-input columns for one config, in the fixed CSV order.
std::vector<std::pair<std::string, std::string>> describe_inputs(const RunConfig& cfg);

}  // namespace fgmplate
