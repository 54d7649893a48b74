#pragma once

// Run configuration read from a TOML-style file of key = value lines
// (optionally grouped under [section] headers). Flags override file values.

#include <cstdint>
#include <string>

#include "lphodge/model.hpp"

namespace lphodge {

struct Config {
  std::size_t n_mc = 200000;              // quadrature.n_mc
  std::uint64_t seed = 20240611;          // quadrature.seed
  model::LaplacianConvention convention = model::LaplacianConvention::Positive;  // bochner.convention
  bool parallel = true;                   // run.parallel

  /// Applies one dotted key. Throws std::invalid_argument for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  /// Canonical key = value text, one per line, in a fixed order.
  std::string canonical() const;
  /// 64-bit FNV-1a of canonical(), as 16 hex digits.
  std::string hash() const;
  /// Sphere rule settings for dimension n.
  model::QuadratureSpec quadrature(int n) const;
};

Config parse_config(const std::string& text);
Config load_config(const std::string& path);

}  // namespace lphodge
