#include "finsler/config.hpp"

#include <fstream>
#include <sstream>

#include "finsler/zoo.hpp"

namespace finsler::cli {
namespace {

using nlohmann::json;

const json& require(const json& node, const char* key) {
  if (!node.is_object() || !node.contains(key)) {
    throw ConfigError(std::string("config: missing key '") + key + "'");
  }
  return node.at(key);
}

double number(const json& node, const char* key) {
  const auto& v = require(node, key);
  if (!v.is_number()) throw ConfigError(std::string("config: '") + key + "' must be a number");
  return v.get<double>();
}

int integer_of(const json& node, const char* key) {
  const auto& v = require(node, key);
  if (!v.is_number_integer()) {
    throw ConfigError(std::string("config: '") + key + "' must be an integer");
  }
  return v.get<int>();
}

std::size_t index_of(const json& node) {
  const int i = integer_of(node, "index");
  if (i < 0) throw ConfigError("config: 'index' must be non-negative");
  return static_cast<std::size_t>(i);
}

std::size_t count_of(const json& node, const char* key) {
  const auto& v = require(node, key);
  if (!v.is_number_integer() || v.get<long long>() <= 0) {
    throw ConfigError(std::string("config: '") + key + "' must be a positive integer");
  }
  return v.get<std::size_t>();
}

Vec vector_of(const json& v, const char* what) {
  if (!v.is_array()) throw ConfigError(std::string("config: ") + what + " must be an array");
  Vec out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError(std::string("config: ") + what + " must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

num::SymMatrix matrix_of(const json& v) {
  if (!v.is_array() || v.empty()) throw ConfigError("config: matrix must be a non-empty array");
  const std::size_t n = v.size();
  num::Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec row = vector_of(v[i], "matrix row");
    if (row.size() != n) throw ConfigError("config: matrix must be square");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = row[j];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j) != m(j, i)) throw ConfigError("config: matrix must be symmetric");
    }
  }
  return num::SymMatrix::symmetrize(m);
}

std::vector<Interval> intervals_of(const json& v, const char* what) {
  if (!v.is_array()) throw ConfigError(std::string("config: ") + what + " must be an array");
  std::vector<Interval> out;
  for (const auto& e : v) {
    const Vec pair = vector_of(e, what);
    if (pair.size() != 2 || !(pair[0] <= pair[1])) {
      throw ConfigError(std::string("config: ") + what + " entries must be [lo, hi]");
    }
    out.push_back({pair[0], pair[1]});
  }
  return out;
}

zoo::RiemannAlpha parse_alpha(const json& node) {
  const std::string family = require(node, "family").get<std::string>();
  if (family == "euclidean") return zoo::Euclidean{count_of(node, "n")};
  if (family == "klein") return zoo::Klein{count_of(node, "n")};
  if (family == "const_riemann") return zoo::ConstRiemann{matrix_of(require(node, "matrix"))};
  throw ConfigError("config: Randers alpha must be euclidean, klein or const_riemann");
}

zoo::ZooSpec parse_zoo(const json& node, const std::string& family) {
  if (family == "euclidean") return zoo::Euclidean{count_of(node, "n")};
  if (family == "klein") return zoo::Klein{count_of(node, "n")};
  if (family == "const_riemann") return zoo::ConstRiemann{matrix_of(require(node, "matrix"))};
  if (family == "quartic_minkowski") return zoo::QuarticMinkowski{number(node, "lambda")};
  if (family == "knorm_minkowski") {
    return zoo::KNormMinkowski{number(node, "lambda"),
                               integer_of(node, "k")};
  }
  if (family == "example11") {
    return zoo::Example11{number(node, "lambda"), integer_of(node, "k")};
  }
  if (family == "example43") {
    return zoo::Example43{count_of(node, "n"), number(node, "epsilon")};
  }
  if (family == "randers") {
    zoo::Randers r;
    r.alpha = parse_alpha(require(node, "alpha"));
    r.b0 = vector_of(require(node, "b"), "b");
    if (node.contains("b_linear")) {
      for (const auto& row : node.at("b_linear")) r.b_linear.push_back(vector_of(row, "b_linear"));
    }
    return r;
  }
  throw ConfigError("config: unknown metric family '" + family + "'");
}

}  // namespace

ScalarField parse_field(const json& node, std::size_t dim) {
  const std::string kind = require(node, "kind").get<std::string>();
  if (kind == "constant") return ScalarField::constant(dim, number(node, "c"));
  if (kind == "exp_linear") {
    Vec a = vector_of(require(node, "a"), "a");
    if (a.size() != dim) throw ConfigError("config: exp_linear 'a' has wrong length");
    return ScalarField::exp_linear(std::move(a));
  }
  if (kind == "monomial") {
    return ScalarField::monomial(dim, index_of(node),
                                 number(node, "power"), number(node, "c"));
  }
  if (kind == "norm_squared_plus") return ScalarField::norm_squared_plus(dim, number(node, "c"));
  throw ConfigError("config: unknown field kind '" + kind + "'");
}

ParsedMetric parse_metric(const json& node, const std::vector<Vec>& validity_points,
                          int depth) {
  if (depth > kMaxSpecDepth) throw ConfigError("config: metric nesting deeper than 4");
  if (!node.is_object()) throw ConfigError("config: metric node must be an object");
  const auto& fam = require(node, "family");
  if (!fam.is_string()) throw ConfigError("config: 'family' must be a string");
  const std::string family = fam.get<std::string>();

  ParsedMetric out;
  if (family == "convolution") {
    auto m1 = parse_metric(require(node, "factor1"), {}, depth + 1).metric;
    auto m2 = parse_metric(require(node, "factor2"), {}, depth + 1).metric;
    conv::ConvolutionSpec spec{m1, m2, parse_field(require(node, "f1"), m1->dim()),
                               parse_field(require(node, "f2"), m2->dim())};
    out.metric = conv::convolve(spec);
    out.convolution = std::move(spec);
  } else {
    out.metric = zoo::build(parse_zoo(node, family), validity_points);
  }
  if (node.contains("offset")) {
    out.metric = zoo::make_offset_fixture(out.metric, number(node, "offset"));
    out.convolution.reset();
  }
  return out;
}

SampleBox RunConfig::box() const {
  return sampling.box ? *sampling.box : metric.metric->default_box();
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  RunConfig rc;
  std::vector<Vec> validity;
  if (doc.contains("validity_points")) {
    for (const auto& p : doc.at("validity_points")) validity.push_back(vector_of(p, "validity_points"));
  }
  rc.metric = parse_metric(require(doc, "metric"), validity);

  if (doc.contains("sampling")) {
    const auto& s = doc.at("sampling");
    if (s.contains("x") || s.contains("y")) {
      SampleBox box{intervals_of(require(s, "x"), "sampling.x"),
                    intervals_of(require(s, "y"), "sampling.y")};
      const std::size_t n = rc.metric.metric->dim();
      if (box.x.size() != n || box.y.size() != n) {
        throw ConfigError("config: sampling box must have " + std::to_string(n) +
                          " intervals for x and y");
      }
      rc.sampling.box = std::move(box);
    }
    if (s.contains("count")) rc.sampling.count = count_of(s, "count");
    if (s.contains("seed")) {
      if (!s.at("seed").is_number_unsigned()) throw ConfigError("config: seed must be a u64");
      rc.sampling.seed = s.at("seed").get<std::uint64_t>();
    }
    if (s.contains("base_points")) rc.sampling.base_points = count_of(s, "base_points");
    if (s.contains("directions")) rc.sampling.directions = count_of(s, "directions");
  }
  if (doc.contains("tolerances")) {
    for (const auto& [name, value] : doc.at("tolerances").items()) {
      if (!value.is_number() || !rc.tolerances.set(name, value.get<double>())) {
        throw ConfigError("config: bad tolerance '" + name + "'");
      }
    }
  }
  if (doc.contains("format")) {
    const std::string f = doc.at("format").get<std::string>();
    if (f == "table") rc.format = OutputFormat::Table;
    else if (f == "machine") rc.format = OutputFormat::Machine;
    else throw ConfigError("config: format must be table or machine");
  }
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: parse error: ") + e.what());
  }
  try {
    return parse_config(doc);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

void apply_tolerance_overrides(Tolerances& tol, const std::string& spec) {
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("tolerance override '" + item + "' lacks '='");
    const std::string name = item.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError("tolerance override '" + item + "' has a bad value");
    }
    if (!tol.set(name, value)) throw ConfigError("unknown tolerance '" + name + "'");
  }
}

}  // namespace finsler::cli
