#include "finsler/report.hpp"

#include <algorithm>

#include "finsler/errors.hpp"

namespace finsler::report {

using nlohmann::json;

bool CheckReport::passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.passed; });
}

json to_json(const TangentSample& s) { return json{{"x", s.x}, {"y", s.y}}; }

TangentSample sample_from_json(const json& j) {
  return {j.at("x").get<Vec>(), j.at("y").get<Vec>()};
}

json to_json(const Tolerances& t) {
  json j = json::object();
  for (const auto& [name, value] : t.entries()) j[name] = value;
  return j;
}

Tolerances tolerances_from_json(const json& j) {
  Tolerances t;
  for (const auto& [name, value] : j.items()) {
    if (!t.set(name, value.get<double>())) {
      throw InvalidParameter("report: unknown tolerance '" + name + "'");
    }
  }
  return t;
}

json to_json(const classify::ProbeResult& p) {
  json j{{"verdict", classify::to_string(p.verdict)},
         {"max_deviation", p.max_deviation},
         {"tolerance", p.tolerance},
         {"evaluated", p.evaluated},
         {"skipped", p.skipped},
         {"stats", p.stats},
         {"note", p.note}};
  j["witness"] = p.witness ? to_json(*p.witness) : json(nullptr);
  return j;
}

classify::ProbeResult probe_from_json(const json& j) {
  classify::ProbeResult p;
  const auto v = classify::verdict_from_string(j.at("verdict").get<std::string>());
  if (!v) throw InvalidParameter("report: bad verdict");
  p.verdict = *v;
  p.max_deviation = j.at("max_deviation").get<double>();
  p.tolerance = j.at("tolerance").get<double>();
  p.evaluated = j.at("evaluated").get<std::size_t>();
  p.skipped = j.at("skipped").get<std::size_t>();
  p.stats = j.at("stats").get<std::map<std::string, double>>();
  p.note = j.at("note").get<std::string>();
  if (!j.at("witness").is_null()) p.witness = sample_from_json(j.at("witness"));
  return p;
}

json to_json(const classify::ClassificationReport& r) {
  return json{{"command", "classify"},
              {"metric", r.metric},
              {"seed", r.seed},
              {"sample_count", r.sample_count},
              {"tolerances", to_json(r.tolerances)},
              {"classes", r.classes()},
              {"riemannian", to_json(r.riemannian)},
              {"minkowskian", to_json(r.minkowskian)},
              {"randers", to_json(r.randers)},
              {"euclidean", to_json(r.euclidean)},
              {"homogeneity", to_json(r.homogeneity)},
              {"strong_convexity", to_json(r.strong_convexity)},
              {"convention", r.convention}};
}

classify::ClassificationReport classification_from_json(const json& j) {
  classify::ClassificationReport r;
  r.metric = j.at("metric").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.sample_count = j.at("sample_count").get<std::size_t>();
  r.tolerances = tolerances_from_json(j.at("tolerances"));
  r.riemannian = probe_from_json(j.at("riemannian"));
  r.minkowskian = probe_from_json(j.at("minkowskian"));
  r.randers = probe_from_json(j.at("randers"));
  r.euclidean = probe_from_json(j.at("euclidean"));
  r.homogeneity = probe_from_json(j.at("homogeneity"));
  r.strong_convexity = probe_from_json(j.at("strong_convexity"));
  r.convention = j.at("convention").get<std::string>();
  return r;
}

json to_json(const CheckReport& r) {
  json props = json::array();
  for (const auto& p : r.properties) {
    json w = json::array();
    for (const auto& s : p.witnesses) w.push_back(to_json(s));
    props.push_back(json{{"name", p.name},
                         {"passed", p.passed},
                         {"max_deviation", p.max_deviation},
                         {"tolerance", p.tolerance},
                         {"evaluated", p.evaluated},
                         {"violations", p.violations},
                         {"witnesses", w},
                         {"note", p.note}});
  }
  return json{{"command", "check"},
              {"metric", r.metric},
              {"seed", r.seed},
              {"samples", r.samples},
              {"tolerances", to_json(r.tolerances)},
              {"passed", r.passed()},
              {"properties", props}};
}

CheckReport check_from_json(const json& j) {
  CheckReport r;
  r.metric = j.at("metric").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.samples = j.at("samples").get<std::size_t>();
  r.tolerances = tolerances_from_json(j.at("tolerances"));
  for (const auto& pj : j.at("properties")) {
    PropertyResult p;
    p.name = pj.at("name").get<std::string>();
    p.passed = pj.at("passed").get<bool>();
    p.max_deviation = pj.at("max_deviation").get<double>();
    p.tolerance = pj.at("tolerance").get<double>();
    p.evaluated = pj.at("evaluated").get<std::size_t>();
    p.violations = pj.at("violations").get<std::size_t>();
    for (const auto& w : pj.at("witnesses")) p.witnesses.push_back(sample_from_json(w));
    p.note = pj.at("note").get<std::string>();
    r.properties.push_back(std::move(p));
  }
  return r;
}

json to_json(const num::SymMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const num::Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

std::string dump(const json& j) { return j.dump() + "\n"; }

}  // namespace finsler::report
