#include "finsler/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "finsler/classify.hpp"
#include "finsler/convolution.hpp"
#include "finsler/errors.hpp"
#include "finsler/sampling.hpp"

namespace finsler::cli {
namespace {

using nlohmann::json;

constexpr std::size_t kMaxWitnesses = 5;
constexpr std::size_t kVectorsPerSample = 4;
constexpr std::array<double, 3> kScales{0.5, 2.0, 10.0};

std::string fmt15(double v) {
  std::string s = fmt::format("{:.15g}", v);
  if (s.find_first_of(".eni") == std::string::npos) s += ".0";
  return s;
}

std::string fmt_vec(std::span<const double> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt::format("{:.6g}", v[i]);
  return s + "]";
}

TangentSample parse_point(const std::string& text, std::size_t n) {
  Vec values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError("--point: '" + item + "' is not a number");
    }
  }
  if (values.size() != 2 * n) {
    throw ConfigError("--point needs " + std::to_string(2 * n) +
                      " numbers (x then y), got " + std::to_string(values.size()));
  }
  return {Vec(values.begin(), values.begin() + n), Vec(values.begin() + n, values.end())};
}

/// Collects per-sample deviations and keeps the worst witnesses.
class PropertyAccumulator {
 public:
  PropertyAccumulator(std::string name, double tol, std::string note)
      : result_{std::move(name), true, 0.0, tol, 0, 0, {}, std::move(note)} {}

  /// `violated` decides failure; `deviation` orders witnesses.
  void add(const TangentSample& s, double deviation, bool violated) {
    ++result_.evaluated;
    if (violated) {
      ++result_.violations;
      bad_.emplace_back(deviation, s);
    }
    if (!worst_ || deviation > worst_->first) worst_.emplace(deviation, s);
    result_.max_deviation = std::max(result_.max_deviation, deviation);
  }

  report::PropertyResult finish() {
    result_.passed = result_.violations == 0;
    if (!bad_.empty()) {
      std::stable_sort(bad_.begin(), bad_.end(),
                       [](const auto& a, const auto& b) { return a.first > b.first; });
      for (std::size_t i = 0; i < std::min(kMaxWitnesses, bad_.size()); ++i) {
        result_.witnesses.push_back(bad_[i].second);
      }
    } else if (worst_) {
      result_.witnesses.push_back(worst_->second);
    }
    return result_;
  }

 private:
  report::PropertyResult result_;
  std::vector<std::pair<double, TangentSample>> bad_;
  std::optional<std::pair<double, TangentSample>> worst_;
};

void print_matrix(std::ostream& out, const num::Matrix& m, const std::string& indent) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << indent;
    for (std::size_t j = 0; j < m.cols(); ++j) out << fmt::format("{:>24.15g}", m(i, j));
    out << "\n";
  }
}

void print_check(std::ostream& out, const report::CheckReport& r) {
  out << "check: " << r.metric << "\n";
  out << fmt::format("  samples={} seed={}\n", r.samples, r.seed);
  for (const auto& p : r.properties) {
    out << fmt::format("  {:<4} {:<22} max={:<12.4g} tol={:<10.3g} violations={}/{}\n",
                       p.passed ? "PASS" : "FAIL", p.name, p.max_deviation, p.tolerance,
                       p.violations, p.evaluated);
    if (!p.passed) {
      for (const auto& w : p.witnesses) {
        out << "       witness x=" << fmt_vec(w.x) << " y=" << fmt_vec(w.y) << "\n";
      }
    }
  }
  out << "result: " << (r.passed() ? "PASS" : "FAIL") << "\n";
}

void print_probe(std::ostream& out, const char* name, const classify::ProbeResult& p) {
  out << fmt::format("  {:<18} {:<15} max_dev={:<12.4g} tol={:<10.3g} n={} skipped={}\n",
                     name, classify::to_string(p.verdict), p.max_deviation, p.tolerance,
                     p.evaluated, p.skipped);
  for (const auto& [k, v] : p.stats) out << fmt::format("      {} = {:.6g}\n", k, v);
  if (p.witness) {
    out << "      witness x=" << fmt_vec(p.witness->x) << " y=" << fmt_vec(p.witness->y) << "\n";
  }
  if (!p.note.empty()) out << "      (" << p.note << ")\n";
}

void print_classification(std::ostream& out, const classify::ClassificationReport& r) {
  out << "classify: " << r.metric << "\n";
  out << fmt::format("  samples={} seed={}\n", r.sample_count, r.seed);
  print_probe(out, "Riemannian", r.riemannian);
  print_probe(out, "LocallyMinkowskian", r.minkowskian);
  print_probe(out, "Randers", r.randers);
  print_probe(out, "Euclidean", r.euclidean);
  print_probe(out, "homogeneity", r.homogeneity);
  print_probe(out, "strong_convexity", r.strong_convexity);
  out << "  classes:";
  for (const auto& c : r.classes()) out << " " << c;
  out << "\n  convention: " << r.convention << "\n";
}

json diagnosis_json(const conv::WarpedDiagnosis& d) {
  json j{{"branch", conv::to_string(d.branch)},
         {"max_grad_f1", d.max_grad1},
         {"max_grad_f2", d.max_grad2},
         {"max_cross", d.max_cross},
         {"note", d.note}};
  j["witness"] = d.witness ? report::to_json(*d.witness) : json(nullptr);
  return j;
}

struct Options {
  std::string config;
  std::string point;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::vector<std::string> tol;
  std::optional<std::string> format;
  bool compare_block = false;
  bool gradient = false;
};

RunConfig resolve(const Options& o) {
  RunConfig rc = load_config(o.config);
  if (const char* env = std::getenv("FINSLER_TOL_OVERRIDE"); env && *env) {
    apply_tolerance_overrides(rc.tolerances, env);
  }
  for (const auto& t : o.tol) apply_tolerance_overrides(rc.tolerances, t);
  if (o.seed) rc.sampling.seed = *o.seed;
  if (o.format) rc.format = *o.format == "machine" ? OutputFormat::Machine : OutputFormat::Table;
  return rc;
}

std::uint64_t require_seed(const RunConfig& rc) {
  if (!rc.sampling.seed) throw ConfigError("a seed is required (sampling.seed or --seed)");
  return *rc.sampling.seed;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const RunConfig rc = resolve(o);
  const auto& m = *rc.metric.metric;
  const TangentSample s = parse_point(o.point, m.dim());
  m.check_domain(s.x, s.y, rc.tolerances.domain_margin);
  Vec grad;
  double f = 0.0;
  if (o.gradient) {
    const auto t = fundamental_tensor(m, s, rc.tolerances.domain_margin);
    f = t.F;
    grad = t.dF;
  } else {
    f = m.value(s.x, s.y);
  }
  if (rc.format == OutputFormat::Machine) {
    json j{{"command", "eval"}, {"metric", m.describe()}, {"point", report::to_json(s)}, {"F", f}};
    if (o.gradient) j["gradient"] = grad;
    out << report::dump(j);
  } else {
    out << "F = " << fmt15(f) << "\n";
    if (o.gradient) {
      out << "dF/dy =";
      for (double g : grad) out << " " << fmt15(g);
      out << "\n";
    }
  }
  return kExitOk;
}

int cmd_tensor(const Options& o, std::ostream& out) {
  const RunConfig rc = resolve(o);
  const auto& m = *rc.metric.metric;
  const TangentSample s = parse_point(o.point, m.dim());
  const auto t = fundamental_tensor(m, s, rc.tolerances.domain_margin);
  std::optional<conv::BlockTensor> block;
  double bridge = 0.0;
  if (o.compare_block) {
    if (!rc.metric.convolution) throw ConfigError("--compare-block needs a convolution metric");
    block = conv::block_tensor(*rc.metric.convolution, s);
    bridge = num::max_abs_diff(block->symmetrized(), t.g);
  }
  if (rc.format == OutputFormat::Machine) {
    json j{{"command", "tensor"},  {"metric", m.describe()}, {"point", report::to_json(s)},
           {"F", t.F},             {"g", report::to_json(t.g)}, {"min_eigenvalue", t.min_eig},
           {"strongly_convex", t.strongly_convex}, {"provenance", to_string(t.provenance)}};
    if (block) {
      j["block"] = json{{"tl", report::to_json(block->tl)},
                        {"tr", report::to_json(block->tr)},
                        {"bl", report::to_json(block->bl)},
                        {"br", report::to_json(block->br)}};
      j["bridge_max_abs_diff"] = bridge;
    }
    out << report::dump(j);
    return kExitOk;
  }
  out << "metric: " << m.describe() << "\n";
  out << "F = " << fmt15(t.F) << "\n";
  out << "g (" << to_string(t.provenance) << "):\n";
  print_matrix(out, t.g.to_matrix(), "  ");
  out << "min eigenvalue = " << fmt15(t.min_eig)
      << (t.strongly_convex ? " (positive-definite)" : " (NOT positive-definite)") << "\n";
  if (block) {
    out << "block TL = f2^2 g1:\n";
    print_matrix(out, block->tl, "  ");
    out << "block TR = 2 f1 f2 df1 df2:\n";
    print_matrix(out, block->tr, "  ");
    out << "block BL (zero):\n";
    print_matrix(out, block->bl, "  ");
    out << "block BR = f1^2 g2:\n";
    print_matrix(out, block->br, "  ");
    out << "max |sym(Block) - g| = " << fmt::format("{:.6g}", bridge) << "\n";
  }
  return kExitOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  RunConfig rc = resolve(o);
  if (o.samples) rc.sampling.count = *o.samples;
  const std::uint64_t seed = require_seed(rc);
  const auto rep = run_check(rc, seed, rc.sampling.count);
  if (rc.format == OutputFormat::Machine) {
    out << report::dump(report::to_json(rep));
  } else {
    print_check(out, rep);
  }
  return rep.passed() ? kExitOk : kExitViolation;
}

int cmd_classify(const Options& o, std::ostream& out) {
  RunConfig rc = resolve(o);
  if (o.samples) rc.sampling.base_points = *o.samples;
  const std::uint64_t seed = require_seed(rc);
  const auto& m = *rc.metric.metric;
  const auto rep = classify::classify(
      m, rc.box(), {rc.sampling.base_points, rc.sampling.directions, seed}, rc.tolerances);
  std::optional<conv::WarpedDiagnosis> diag;
  if (rc.metric.convolution) {
    const auto samples = draw_grid(m, rc.box(), std::max<std::size_t>(rc.sampling.base_points, 10),
                                   std::max(rc.sampling.directions, m.dim() + 1), seed,
                                   rc.tolerances.domain_margin)
                             .pairs();
    diag = conv::diagnose_warped(*rc.metric.convolution, samples, rc.tolerances.zero_gradient);
  }
  if (rc.format == OutputFormat::Machine) {
    json j = report::to_json(rep);
    if (diag) j["convolution_diagnosis"] = diagnosis_json(*diag);
    out << report::dump(j);
  } else {
    print_classification(out, rep);
    if (diag) {
      out << "  convolution branch: " << conv::to_string(diag->branch) << " (" << diag->note
          << ")\n";
    }
  }
  return kExitOk;
}

}  // namespace

report::CheckReport run_check(const RunConfig& config, std::uint64_t seed,
                              std::size_t count) {
  const auto& m = *config.metric.metric;
  const Tolerances& tol = config.tolerances;
  const auto samples = draw_samples(m, config.box(), count, seed, tol.domain_margin);

  PropertyAccumulator evaluation("positive_F_squared", 0.0,
                                 "F^2 > 0 and the fundamental tensor evaluates");
  PropertyAccumulator homogeneity("homogeneity", tol.homogeneity,
                                  "|F(x,cy) - cF(x,y)| / cF(x,y), c in {0.5, 2, 10}");
  PropertyAccumulator euler("euler", tol.euler, "|g(y,y) - F^2| / F^2");
  PropertyAccumulator convexity("strong_convexity", 0.0,
                                "-min eigenvalue of g; violated when >= 0");
  std::optional<PropertyAccumulator> positivity;
  if (config.metric.convolution) {
    positivity.emplace("positivity_condition", 0.0,
                       "sign disagreements between the sufficient condition and v^T B v");
  }
  SampleRng vrng(seed ^ 0x5851f42d4c957f2dULL);

  for (const auto& s : samples) {
    FundamentalTensor t;
    try {
      t = fundamental_tensor(m, s, tol.domain_margin);
    } catch (const NonPositive& e) {
      evaluation.add(s, -e.squared_value(), true);
      continue;
    } catch (const DomainError&) {
      evaluation.add(s, 0.0, true);
      continue;
    }
    evaluation.add(s, 0.0, false);

    const double f2 = t.F * t.F;
    euler.add(s, std::abs(t.g.quadratic_form(s.y, s.y) - f2) / f2,
              !(std::abs(t.g.quadratic_form(s.y, s.y) - f2) / f2 <= tol.euler));

    try {
      const auto h = check_homogeneity(m, s, kScales, false);
      homogeneity.add(s, h.max_rel_error, !(h.max_rel_error <= tol.homogeneity));
    } catch (const DomainError&) {
      homogeneity.add(s, 1.0, true);
    }

    convexity.add(s, -t.min_eig, !(t.min_eig > 0.0));

    if (positivity) {
      const std::vector<Interval> vbox(m.dim(), Interval{-1.0, 1.0});
      std::size_t disagreements = 0;
      double worst = 0.0;
      for (std::size_t k = 0; k < kVectorsPerSample; ++k) {
        const Vec v = vrng.draw(vbox);
        const auto r = conv::check_positivity_condition(*config.metric.convolution, s, v);
        if (r.condition_holds != (r.quadratic_form > 0.0)) {
          ++disagreements;
          worst = std::max(worst, std::abs(r.quadratic_form));
        }
      }
      positivity->add(s, static_cast<double>(disagreements), disagreements > 0);
    }
  }

  report::CheckReport rep;
  rep.metric = m.describe();
  rep.seed = seed;
  rep.samples = samples.size();
  rep.tolerances = tol;
  rep.properties.push_back(evaluation.finish());
  rep.properties.push_back(homogeneity.finish());
  rep.properties.push_back(euler.finish());
  rep.properties.push_back(convexity.finish());
  if (positivity) rep.properties.push_back(positivity->finish());
  return rep;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finsler convolution metrics: evaluate, inspect, check and classify"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON run configuration")->required();
    sub->add_option("--tol", o.tol, "tolerance override name=value")->take_all();
    sub->add_option("--format", o.format, "table or machine")
        ->check(CLI::IsMember({"table", "machine"}));
  };
  auto* eval = app.add_subcommand("eval", "evaluate F(x, y)");
  add_common(eval);
  eval->add_option("--point", o.point, "x then y, comma separated")->required();
  eval->add_flag("--gradient", o.gradient, "also print dF/dy");

  auto* tensor = app.add_subcommand("tensor", "dump the fundamental tensor");
  add_common(tensor);
  tensor->add_option("--point", o.point, "x then y, comma separated")->required();
  tensor->add_flag("--compare-block", o.compare_block,
                   "dump the block form and compare its symmetric part");

  auto* check = app.add_subcommand("check", "run the property suite over samples");
  add_common(check);
  check->add_option("--seed", o.seed, "sampling seed");
  check->add_option("--samples", o.samples, "sample count");

  auto* cls = app.add_subcommand("classify", "run the classification probes");
  add_common(cls);
  cls->add_option("--seed", o.seed, "sampling seed");
  cls->add_option("--samples", o.samples, "number of base points");

  std::vector<std::string> argv_store{"finsler"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    if (*eval) return cmd_eval(o, out);
    if (*tensor) return cmd_tensor(o, out);
    if (*check) return cmd_check(o, out);
    if (*cls) return cmd_classify(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const nlohmann::json::exception& e) {
    err << "error: config: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace finsler::cli
