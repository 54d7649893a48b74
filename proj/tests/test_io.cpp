#include <doctest.h>

#include "lphodge/config.hpp"
#include "lphodge/json_io.hpp"

using namespace lphodge;
using io::json;

TEST_CASE("rational and number encodings") {
  const json r = io::to_json(Rational(29, 2));
  CHECK(r["num"] == 29);
  CHECK(r["den"] == 2);
  CHECK(r["value"] == 14.5);
  CHECK(io::to_json(Rational::infinity()) == "inf");
  CHECK(io::number(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("complex round trip") {
  const json j = json::parse(R"({"dims":[3,2],"d":[{"k":0,"rows":[0,0,1,1],"cols":[0,1,1,2],"vals":[-1,1,-1,1]}],
                                 "weights":[[1,1,1],[2,0.5]]})");
  const auto cx = io::complex_from_json(j);
  CHECK(cx.dim(0) == 3);
  CHECK(cx.weight(1)(1) == 0.5);
  const auto back = io::complex_from_json(io::to_json(cx));
  CHECK(Eigen::MatrixXd(back.differential(0)) == Eigen::MatrixXd(cx.differential(0)));
  const auto no_weights = io::complex_from_json(json::parse(R"({"dims":[2,1]})"));
  CHECK(no_weights.weight(0).sum() == 2.0);
  CHECK(no_weights.differential(0).nonZeros() == 0);
  CHECK_THROWS(io::complex_from_json(json::parse(R"({"dims":[1,1,1],"d":[{"k":0,"rows":[0],"cols":[0],"vals":[1]},{"k":1,"rows":[0],"cols":[0],"vals":[1]}]})")));
  CHECK_THROWS(io::complex_from_json(json::parse(R"({"dims":[2,1],"d":[{"k":0,"rows":[3],"cols":[0],"vals":[1]}]})")));
  const auto z = io::cochain_from_json(json::parse(R"({"k":1,"coeffs":[4,0]})"));
  CHECK(z.coeffs.size() == 2);
  CHECK(io::to_json(z)["coeffs"][0] == 4.0);
}

TEST_CASE("report envelope sorts and counts") {
  io::Report rep;
  rep.command = "x";
  rep.config_hash = "0";
  rep.records.push_back({"b", {}, {}, 1.0, 2.0, true});
  rep.records.push_back({"a", {}, {}, std::nullopt, std::nullopt, false});
  const json j = rep.to_json();
  CHECK(j["schema"] == io::kReportSchema);
  CHECK(j["records"][0]["case"] == "a");
  CHECK(j["summary"]["total"] == 2);
  CHECK(j["summary"]["failed"] == 1);
  CHECK(rep.passed() == 1);
}

TEST_CASE("config parsing and hashing") {
  const Config c = parse_config("# comment\n[quadrature]\nn_mc = 1000\nseed = \"5\"\n[bochner]\nconvention = analyst\n");
  CHECK(c.n_mc == 1000);
  CHECK(c.seed == 5);
  CHECK(c.convention == model::LaplacianConvention::Analyst);
  CHECK(c.hash() != Config{}.hash());
  CHECK(c.hash() == parse_config(c.canonical()).hash());
  CHECK(c.hash().size() == 16);
  CHECK_THROWS_AS(parse_config("quadrature.bogus = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("[quadrature]\nn_mc = -3\n"), std::invalid_argument);
  CHECK(c.quadrature(7).sphere.mc_samples == 1000);
}
