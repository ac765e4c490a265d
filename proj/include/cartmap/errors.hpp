#pragma once

#include <stdexcept>
#include <string>

namespace cartmap {

// Invalid user input: malformed grids, stencils, node configurations,
// mappings. The CLI reports these with exit code 2.
class validation_error : public std::runtime_error {
public:
  explicit validation_error(const std::string &msg) : std::runtime_error(msg) {}
};

// The nodecart decomposition does not exist for the given grid and node
// size. Callers may fall back to a blocked mapping.
class infeasible_error : public std::runtime_error {
public:
  explicit infeasible_error(const std::string &msg) : std::runtime_error(msg) {}
};

// The exact solver refuses instances above its size limit. CLI exit code 3.
class refusal_error : public std::runtime_error {
public:
  explicit refusal_error(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace cartmap
