#pragma once

// Invariant suites run by `verify`. Every case yields one record; records are
// sorted by id so reports do not depend on scheduling.

#include <string>
#include <vector>

#include "lphodge/config.hpp"
#include "lphodge/json_io.hpp"

namespace lphodge::suites {

/// exterior, roots, pinching, monotonicity (including the ODE factor), limits, bochner, decay, discrete.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite name.
std::vector<io::Record> run_suite(const std::string& name, const Config& config);

/// All suites in order, records sorted by id.
std::vector<io::Record> run_all(const Config& config);

}  // namespace lphodge::suites
