#include "lphodge/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lphodge::io {

json to_json(const Rational& r) {
  if (r.is_infinite()) return "inf";
  return json{{"num", r.num()}, {"den", r.den()}, {"value", r.to_double()}};
}

json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  return x;
}

json to_json(const roots::SymmetricVerdict& v) {
  json t;
  t["split"] = v.split ? to_json(*v.split) : json(nullptr);
  t["simplified"] = to_json(v.simplified);
  t["sharp"] = to_json(v.sharp);
  t["exact"] = to_json(v.exact);
  t["torsion_literal"] = to_json(v.torsion.literal);
  t["torsion_shifted"] = to_json(v.torsion.shifted);
  json j;
  j["group"] = v.group;
  j["rank"] = v.rank;
  j["k"] = v.k;
  j["p"] = number(v.p);
  j["dim_x"] = v.dim_x;
  j["gromov_range"] = v.gromov_range;
  j["thresholds"] = t;
  j["verdict"] = std::string(roots::to_string(v.verdict));
  j["criterion"] = v.criterion;
  return j;
}

json to_json(const pinching::ThresholdReport& r) {
  json j;
  j["n"] = r.spec.n;
  j["k"] = r.spec.k;
  j["delta"] = r.spec.delta;
  j["p"] = number(r.spec.p);
  j["q"] = r.spec.q ? number(*r.spec.q) : json(nullptr);
  j["low_threshold"] = number(r.low_threshold);
  j["high_threshold"] = number(r.high_threshold);
  j["torsion_threshold"] = number(r.torsion_threshold);
  j["decay_rate_low"] = number(r.decay_rate_low);
  j["decay_rate_high"] = number(r.decay_rate_high);
  j["reduced"] = pinching::to_string(r.reduced);
  j["torsion_side_condition"] = r.torsion_side_condition;
  j["torsion_vanishes"] = r.torsion_vanishes;
  if (r.injectivity) {
    const auto& in = *r.injectivity;
    j["injectivity"] = json{{"injective", in.injective},
                            {"epsilon", number(in.epsilon)},
                            {"torsion_bound", number(in.torsion_bound)},
                            {"rhs", number(in.rhs)},
                            {"gap", number(in.gap)}};
  } else {
    j["injectivity"] = nullptr;
  }
  return j;
}

json to_json(const discrete::Cochain& c) {
  return json{{"k", c.k}, {"coeffs", std::vector<double>(c.coeffs.data(), c.coeffs.data() + c.coeffs.size())}};
}

json to_json(const discrete::HodgeResult& r) {
  json j;
  j["h"] = to_json(r.h);
  j["primitive"] = r.primitive ? to_json(*r.primitive) : json(nullptr);
  j["energy"] = number(r.energy);
  j["el_residual"] = number(r.el_residual);
  j["dstar_residual"] = number(r.dstar_residual);
  j["constraint_residual"] = number(r.constraint_residual);
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["energy_monotone"] = r.energy_monotone;
  j["stage_gap"] = number(r.stage_gap);
  return j;
}

namespace {

template <class T>
std::vector<T> array_of(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw std::invalid_argument(std::string("missing array '") + key + "'");
  return j[key].get<std::vector<T>>();
}

}  // namespace

discrete::CochainComplex complex_from_json(const json& j) {
  using discrete::ComplexError;
  if (!j.is_object()) throw ComplexError("complex JSON must be an object");
  discrete::CochainComplex c;
  c.dims = array_of<int>(j, "dims");
  const int N = c.top_degree();
  if (N < 0) throw ComplexError("'dims' is empty");
  for (int k = 0; k <= N; ++k)
    if (c.dims[k] < 0) throw ComplexError("negative dimension in degree " + std::to_string(k));
  for (int k = 0; k < N; ++k) c.d.emplace_back(c.dims[k + 1], c.dims[k]);
  if (j.contains("d")) {
    for (const auto& e : j.at("d")) {
      const int k = e.at("k").get<int>();
      if (k < 0 || k >= N) throw ComplexError("differential degree " + std::to_string(k) + " out of range");
      const auto rows = array_of<int>(e, "rows");
      const auto cols = array_of<int>(e, "cols");
      const auto vals = array_of<double>(e, "vals");
      if (rows.size() != cols.size() || rows.size() != vals.size())
        throw ComplexError("d_" + std::to_string(k) + ": rows, cols and vals differ in length");
      std::vector<Eigen::Triplet<double>> t;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] < 0 || rows[i] >= c.dims[k + 1] || cols[i] < 0 || cols[i] >= c.dims[k])
          throw ComplexError("d_" + std::to_string(k) + ": entry (" + std::to_string(rows[i]) + ", " +
                             std::to_string(cols[i]) + ") out of range");
        t.emplace_back(rows[i], cols[i], vals[i]);
      }
      c.d[k].setFromTriplets(t.begin(), t.end());
    }
  }
  if (j.contains("weights")) {
    const auto w = j.at("weights").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(w.size()) != N + 1)
      throw ComplexError("'weights' needs one vector per degree");
    for (const auto& v : w) c.weights.push_back(Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()));
  } else {
    for (int k = 0; k <= N; ++k) c.weights.push_back(Eigen::VectorXd::Ones(c.dims[k]));
  }
  discrete::validate(c);
  return c;
}

json to_json(const discrete::CochainComplex& c) {
  json j;
  j["dims"] = c.dims;
  json ds = json::array();
  for (int k = 0; k < static_cast<int>(c.d.size()); ++k) {
    std::vector<int> rows, cols;
    std::vector<double> vals;
    for (int col = 0; col < c.d[k].outerSize(); ++col)
      for (discrete::SparseMatrix::InnerIterator it(c.d[k], col); it; ++it) {
        rows.push_back(static_cast<int>(it.row()));
        cols.push_back(static_cast<int>(it.col()));
        vals.push_back(it.value());
      }
    ds.push_back(json{{"k", k}, {"rows", rows}, {"cols", cols}, {"vals", vals}});
  }
  j["d"] = ds;
  json ws = json::array();
  for (const auto& w : c.weights) ws.push_back(std::vector<double>(w.data(), w.data() + w.size()));
  j["weights"] = ws;
  return j;
}

discrete::Cochain cochain_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("cochain JSON must be an object");
  discrete::Cochain c;
  c.k = j.at("k").get<int>();
  const auto v = array_of<double>(j, "coeffs");
  c.coeffs = Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
  return c;
}

json to_json(const Record& r) {
  json j;
  j["case"] = r.id;
  j["inputs"] = r.inputs;
  j["outputs"] = r.outputs;
  if (r.residual) j["residual"] = number(*r.residual);
  if (r.tolerance) j["tolerance"] = number(*r.tolerance);
  if (r.pass) j["pass"] = *r.pass;
  return j;
}

int Report::passed() const {
  return static_cast<int>(std::count_if(records.begin(), records.end(), [](const Record& r) { return r.pass && *r.pass; }));
}

int Report::failed() const {
  return static_cast<int>(std::count_if(records.begin(), records.end(), [](const Record& r) { return r.pass && !*r.pass; }));
}

json Report::to_json() const {
  std::vector<const Record*> sorted;
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const Record* a, const Record* b) { return a->id < b->id; });
  json j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  j["config_hash"] = config_hash;
  json recs = json::array();
  for (const Record* r : sorted) recs.push_back(io::to_json(*r));
  j["records"] = recs;
  j["summary"] = json{{"total", records.size()}, {"passed", passed()}, {"failed", failed()}};
  return j;
}

}  // namespace lphodge::io
