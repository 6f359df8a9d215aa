#pragma once

#include <stdexcept>
#include <string>

namespace fgmplate {

/// Bad user input: unparsable config, out-of-range parameter, unknown name.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally invalid model: crack outside the domain, degenerate element,
/// singular mass after constraints.
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical breakdown: quadrature non-convergence, eigeniteration failure,
/// non-finite element matrices.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fgmplate
