#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "finsler/cli.hpp"
#include "finsler/config.hpp"
#include "finsler/errors.hpp"
#include "finsler/report.hpp"
#include "finsler/zoo.hpp"

using namespace finsler;
using nlohmann::json;

namespace {

const std::string kData = FINSLER_TEST_DATA;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = std::string(FINSLER_TEST_TMP) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("eval prints 15 significant digits") {
  auto r = run({"eval", "--config", kData + "/example11.json", "--point", "1,0,1,0,1,1,1,1"});
  CHECK(r.code == 0);
  CHECK(r.out == "F = 4.0\n");
  r = run({"eval", "--config", kData + "/klein3.json", "--point", "0,0,0,3,4,0"});
  CHECK(r.out == "F = 5.0\n");
  r = run({"eval", "--config", kData + "/klein3.json", "--point", "0.5,0,0,1,0,0"});
  CHECK(r.out == "F = 1.33333333333333\n");
}

TEST_CASE("eval with gradient") {
  const auto r = run({"eval", "--config", kData + "/klein3.json", "--point", "0,0,0,3,4,0",
                      "--gradient", "--format", "machine"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["F"].get<double>() == 5.0);
  CHECK(j["gradient"][0].get<double>() == doctest::Approx(0.6));
  CHECK(j["gradient"][1].get<double>() == doctest::Approx(0.8));
}

TEST_CASE("domain and input errors exit with 2") {
  auto r = run({"eval", "--config", kData + "/klein3.json", "--point", "1,0,0,3,4,0"});
  CHECK(r.code == 2);
  CHECK(r.err.find("domain violation") != std::string::npos);
  CHECK(r.out.empty());

  CHECK(run({"eval", "--config", kData + "/klein3.json", "--point", "0,0,3,4"}).code == 2);
  CHECK(run({"eval", "--config", kData + "/klein3.json", "--point", "0,0,0,a,4,0"}).code == 2);
  CHECK(run({"eval", "--config", kData + "/nonexistent.json", "--point", "0,0"}).code == 2);
  CHECK(run({"eval", "--config", kData + "/randers_bad.json", "--point", "0,0,1,0"}).code == 2);
  CHECK(run({"check", "--config", kData + "/missing_seed.json"}).code == 2);
  CHECK(run({"classify", "--config", kData + "/missing_seed.json"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"tensor", "--config", kData + "/klein3.json", "--point", "0,0,0,1,0,0",
             "--compare-block"}).code == 2);
  CHECK(run({"check", "--config", kData + "/euclidean3.json", "--tol", "bogus=1"}).code == 2);
  CHECK(run({"check", "--config", kData + "/euclidean3.json", "--format", "xml"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("tensor dumps") {
  auto r = run({"tensor", "--config", kData + "/euclidean2.json", "--point", "0.3,0.1,1,2",
                "--format", "machine"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["g"] == json::parse("[[1.0,0.0],[0.0,1.0]]"));

  r = run({"tensor", "--config", kData + "/minkowski_const.json", "--point",
           "0.3,0.1,0.2,0.4,1,2,0.5,-1", "--compare-block", "--format", "machine"});
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  for (const auto& row : j["block"]["tr"]) {
    for (const auto& v : row) CHECK(v.get<double>() == 0.0);
  }
  for (const auto& row : j["block"]["bl"]) {
    for (const auto& v : row) CHECK(v.get<double>() == 0.0);
  }

  r = run({"tensor", "--config", kData + "/klein_klein_exp.json", "--point",
           "0.1,0.2,-0.1,0.3,1,0.5,-0.2,0.7", "--compare-block", "--format", "table"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("max |sym(Block) - g|") != std::string::npos);
  CHECK(r.out.find("block BL (zero)") != std::string::npos);
}

TEST_CASE("check exit codes and witnesses") {
  auto r = run({"check", "--config", kData + "/euclidean3.json"});
  CHECK(r.code == 0);
  const auto rep = report::check_from_json(json::parse(r.out));
  CHECK(rep.passed());
  CHECK(rep.samples == 1000);

  r = run({"check", "--config", kData + "/broken_homogeneity.json", "--format", "machine"});
  CHECK(r.code == 1);
  const auto bad = report::check_from_json(json::parse(r.out));
  bool found = false;
  for (const auto& p : bad.properties) {
    if (p.name == "homogeneity") {
      found = true;
      CHECK_FALSE(p.passed);
      CHECK_FALSE(p.witnesses.empty());
      CHECK(p.witnesses.size() <= 5);
    }
  }
  CHECK(found);

  r = run({"check", "--config", kData + "/adversarial.json", "--format", "machine"});
  CHECK(r.code == 1);
  const auto adv = report::check_from_json(json::parse(r.out));
  CHECK(adv.properties.front().name == "positive_F_squared");
  CHECK_FALSE(adv.properties.front().passed);
  CHECK_FALSE(adv.properties.front().witnesses.empty());
}

TEST_CASE("check on a convolution includes the positivity condition") {
  const auto r = run({"check", "--config", kData + "/klein_klein_exp.json", "--samples", "200"});
  CHECK(r.code == 0);
  const auto rep = report::check_from_json(json::parse(r.out));
  CHECK(rep.samples == 200);
  CHECK(rep.properties.back().name == "positivity_condition");
  CHECK(rep.properties.back().passed);
}

TEST_CASE("classify renders reports and exits 0") {
  auto r = run({"classify", "--config", kData + "/euclidean4.json", "--format", "machine"});
  REQUIRE(r.code == 0);
  const auto rep = report::classification_from_json(json::parse(r.out));
  CHECK(rep.euclidean.positive());
  CHECK(rep.riemannian.positive());

  r = run({"classify", "--config", kData + "/klein2.json"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Riemannian") != std::string::npos);

  r = run({"classify", "--config", kData + "/minkowski_const.json", "--format", "machine"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(report::classification_from_json(j).minkowskian.positive());
  CHECK(j["convolution_diagnosis"]["branch"] == "ConstantFactor");
}

TEST_CASE("machine output is deterministic") {
  const std::vector<std::string> args{"classify", "--config", kData + "/klein_klein_exp.json",
                                      "--seed", "99"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> chk{"check", "--config", kData + "/klein_klein_exp.json"};
  CHECK(run(chk).out == run(chk).out);
  // a different seed gives a different sample set
  auto other = args;
  other.back() = "100";
  CHECK(run(args).out != run(other).out);
}

TEST_CASE("reports round-trip through JSON") {
  for (const std::string cfg : {"klein_klein_exp.json", "broken_homogeneity.json"}) {
    const auto r = run({"check", "--config", kData + "/" + cfg, "--format", "machine"});
    const auto rep = report::check_from_json(json::parse(r.out));
    CHECK(report::dump(report::to_json(rep)) == r.out);
  }
  const auto r = run({"classify", "--config", kData + "/klein2.json", "--format", "machine"});
  const auto rep = report::classification_from_json(json::parse(r.out));
  CHECK(report::classification_from_json(report::to_json(rep)) == rep);
  CHECK(report::dump(report::to_json(rep)) == r.out);

  // awkward doubles survive exactly
  classify::ProbeResult p;
  p.max_deviation = 0.1 + 0.2;
  p.tolerance = 1.0 / 3.0;
  p.stats["tiny"] = 4.9e-324;
  p.witness = TangentSample{{1e-17, -2.5e300}, {0.7, 1.0 / 7.0}};
  CHECK(report::probe_from_json(json::parse(report::dump(report::to_json(p)))) == p);
}

TEST_CASE("config parsing") {
  const auto rc = cli::parse_config(json::parse(R"({
    "metric": {"family": "convolution",
               "factor1": {"family": "const_riemann", "matrix": [[2, 0.5], [0.5, 1]]},
               "factor2": {"family": "randers", "alpha": {"family": "klein", "n": 2},
                           "b": [0.1, 0.2], "b_linear": [[0.1, 0], [0, 0.1]]},
               "f1": {"kind": "monomial", "index": 0, "power": 2, "c": 1},
               "f2": {"kind": "norm_squared_plus", "c": 0.5}},
    "sampling": {"x": [[0.5, 1], [0.5, 1], [-0.5, 0.5], [-0.5, 0.5]],
                 "y": [[-1, 1], [-1, 1], [-1, 1], [-1, 1]], "count": 10, "seed": 3},
    "tolerances": {"euler": 1e-8},
    "format": "machine"})"));
  CHECK(rc.metric.metric->dim() == 4);
  CHECK(rc.metric.convolution.has_value());
  CHECK(rc.sampling.seed == 3u);
  CHECK(rc.sampling.count == 10);
  CHECK(rc.tolerances.euler == 1e-8);
  CHECK(rc.format == cli::OutputFormat::Machine);
  CHECK(rc.box().x[0].lo == 0.5);

  const auto zoo_rc = cli::parse_config(json::parse(
      R"({"metric": {"family": "example43", "n": 5, "epsilon": 0.25}})"));
  CHECK(zoo_rc.metric.metric->dim() == 5);
  CHECK_FALSE(zoo_rc.metric.convolution.has_value());
  CHECK_FALSE(zoo_rc.sampling.seed.has_value());

  auto bad = [](const char* text) { return cli::parse_config(json::parse(text)); };
  CHECK_THROWS_AS(bad(R"({"metric": {"family": "hyperbolic"}})"), cli::ConfigError);
  CHECK_THROWS_AS(bad(R"({"metric": {"family": "knorm_minkowski", "lambda": 3, "k": 2.5}})"),
                  cli::ConfigError);
  CHECK_THROWS_AS(bad(R"({"metric": {"family": "knorm_minkowski", "lambda": 5, "k": 2}})"),
                  InvalidParameter);
  CHECK_THROWS_AS(bad(R"({"metric": {"family": "euclidean", "n": 2}, "format": "yaml"})"),
                  cli::ConfigError);
  CHECK_THROWS_AS(bad(R"({"metric": {"family": "euclidean", "n": 2},
                          "sampling": {"x": [[0, 1]], "y": [[0, 1]]}})"),
                  cli::ConfigError);
  CHECK_THROWS_AS(bad(R"({"metric": {"family": "euclidean", "n": 2},
                          "sampling": {"seed": -4}})"),
                  cli::ConfigError);
  CHECK_THROWS_AS(bad(R"({"metric": {"family": "randers", "alpha": {"family": "euclidean", "n": 2},
                          "b": [0.2, 0], "b_linear": [[1, 0], [0, 0]]},
                          "validity_points": [[0.5, 0], [0.9, 0]]})"),
                  RandersInvalid);
}

TEST_CASE("nesting depth is limited to 4") {
  auto leaf = json{{"family", "euclidean"}, {"n", 1}};
  auto wrap = [](json inner, std::size_t dim) {
    return json{{"family", "convolution"},
                {"factor1", inner},
                {"factor2", {{"family", "euclidean"}, {"n", 1}}},
                {"f1", {{"kind", "constant"}, {"c", 1.0}}},
                {"f2", {{"kind", "constant"}, {"c", 2.0}}}};
    (void)dim;
  };
  json depth4 = wrap(wrap(wrap(leaf, 1), 2), 3);  // leaf sits at depth 4
  CHECK_NOTHROW(cli::parse_metric(depth4));
  CHECK(cli::parse_metric(depth4).metric->dim() == 4);
  json depth5 = wrap(depth4, 4);
  CHECK_THROWS_AS(cli::parse_metric(depth5), cli::ConfigError);
}

TEST_CASE("tolerance override precedence: config < environment < --tol") {
  const auto cfg = write_temp("tol.json", R"({"metric": {"family": "euclidean", "n": 2},
      "sampling": {"seed": 1, "count": 20}, "tolerances": {"euler": 1e-3, "homogeneity": 1e-3}})");
  auto tol_of = [](const Result& r) {
    return report::check_from_json(json::parse(r.out)).tolerances;
  };
  auto t = tol_of(run({"check", "--config", cfg, "--format", "machine"}));
  CHECK(t.euler == 1e-3);

  setenv("FINSLER_TOL_OVERRIDE", "euler=1e-4,homogeneity=1e-5", 1);
  t = tol_of(run({"check", "--config", cfg, "--format", "machine"}));
  CHECK(t.euler == 1e-4);
  CHECK(t.homogeneity == 1e-5);
  t = tol_of(run({"check", "--config", cfg, "--format", "machine", "--tol", "euler=2e-6"}));
  CHECK(t.euler == 2e-6);
  CHECK(t.homogeneity == 1e-5);
  unsetenv("FINSLER_TOL_OVERRIDE");

  Tolerances direct;
  cli::apply_tolerance_overrides(direct, "riemannian=1e-4,ratio=1e-7");
  CHECK(direct.riemannian == 1e-4);
  CHECK(direct.ratio == 1e-7);
  CHECK_THROWS_AS(cli::apply_tolerance_overrides(direct, "riemannian"), cli::ConfigError);
  CHECK_THROWS_AS(cli::apply_tolerance_overrides(direct, "riemannian=abc"), cli::ConfigError);
}
