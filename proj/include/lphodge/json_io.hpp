#pragma once

// JSON encodings for complexes, cochains, solver results, threshold reports and
// the versioned report envelope.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lphodge/discrete.hpp"
#include "lphodge/pinching.hpp"
#include "lphodge/rational.hpp"
#include "lphodge/roots.hpp"

namespace lphodge::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "lp-hodge-report/1";

/// {"num", "den", "value"}, or the string "inf".
json to_json(const Rational& r);
/// Finite doubles as numbers, infinities as "inf" / "-inf".
json number(double x);

json to_json(const roots::SymmetricVerdict& v);
json to_json(const pinching::ThresholdReport& r);
json to_json(const discrete::HodgeResult& r);

/// Complex JSON: {"dims":[...], "d":[{"k","rows","cols","vals"}], "weights":[[...]]}.
/// Omitted differentials are zero maps; omitted weights default to 1.
discrete::CochainComplex complex_from_json(const json& j);
json to_json(const discrete::CochainComplex& c);

/// Cochain JSON: {"k": int, "coeffs": [...]}.
discrete::Cochain cochain_from_json(const json& j);
json to_json(const discrete::Cochain& c);

struct Record {
  std::string id;
  json inputs = json::object();
  json outputs = json::object();
  std::optional<double> residual;
  std::optional<double> tolerance;
  std::optional<bool> pass;
};

json to_json(const Record& r);

struct Report {
  std::string command;
  std::string config_hash;
  std::vector<Record> records;

  int passed() const;
  int failed() const;
  /// Records sorted by id, summary appended.
  json to_json() const;
};

}  // namespace lphodge::io
