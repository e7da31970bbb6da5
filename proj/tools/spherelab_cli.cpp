// Scenario runner: each subcommand runs one experiment, prints its assertions and writes
// its artifacts; exit status 0 iff every assertion passed.

#include <cstdio>
#include <future>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spherelab/error.hpp"
#include "spherelab/scenario.hpp"

using namespace spherelab;

namespace {

struct Options {
  std::optional<double> eps;
  std::optional<double> delta;
  std::optional<int> n;
  std::optional<int> n_max;
  std::string out = "out";
  bool mesh = false;
  std::vector<double> pole{0.0, 0.0, 0.0, 1.0};
  bool parallel = false;
  bool single = false;
};

Scenario make(const std::string& name, ScenarioKind kind, const Options& o) {
  Scenario s;
  s.name = name;
  s.kind = kind;
  s.output_dir = o.out;
  s.mesh = o.mesh;
  s.stereo_pole = normalized(Quaternion(o.pole[0], o.pole[1], o.pole[2], o.pole[3]));
  auto set = [&](const char* key, const auto& v) {
    if (v) s.parameters[key] = static_cast<double>(*v);
  };
  switch (kind) {
    case ScenarioKind::FlowCounterexample:
      set("eps", o.eps);
      set("delta", o.delta);
      set("n", o.n);
      break;
    case ScenarioKind::FlowSingleCircle: set("n", o.n); break;
    case ScenarioKind::CatalogScan: set("n_max", o.n_max); break;
    case ScenarioKind::SecondVariationSuite: break;
    case ScenarioKind::HopfThresholds:
      set("delta", o.delta);
      set("n", o.n);
      break;
  }
  return s;
}

struct Outcome {
  std::string text;
  bool ok = false;
};

Outcome run(const Scenario& s) {
  Outcome o;
  try {
    RunReport r = execute_scenario(s);
    emit_outputs(s, r);
    for (const auto& a : r.assertions)
      o.text += std::string(a.pass ? "PASS " : "FAIL ") + s.name + "/" + a.name + ": " + a.detail + "\n";
    for (const auto& f : r.artifacts) o.text += "wrote " + f.string() + "\n";
    o.ok = r.passed();
  } catch (const Error& e) {
    o.text = "FAIL " + s.name + ": " + e.what() + "\n";
  }
  return o;
}

int run_all(const std::vector<Scenario>& list, bool parallel) {
  std::vector<Outcome> results(list.size());
  if (parallel) {
    std::vector<std::future<Outcome>> jobs;
    for (const auto& s : list) jobs.push_back(std::async(std::launch::async, run, s));
    for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < list.size(); ++i) results[i] = run(list[i]);
  }
  bool ok = true;
  for (const auto& r : results) {
    std::fputs(r.text.c_str(), stdout);
    ok = ok && r.ok;
  }
  std::printf("%s\n", ok ? "all assertions passed" : "some assertions failed");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic curves on S^2: flows, elastica catalog, second variation, Hopf tori"};
  app.set_config("--config", "", "TOML file mirroring the command-line flags");
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    sub->add_flag("--parallel", o.parallel, "run independent scenarios concurrently");
  };

  auto* flow = app.add_subcommand("flow", "elastic energy flow from gamma^eps (or a wobbly circle with --single)");
  flow->add_option("--eps", o.eps, "perturbation size of gamma^eps");
  flow->add_option("--delta", o.delta, "energy window above 4 pi");
  flow->add_option("--n", o.n, "vertex count");
  flow->add_flag("--single", o.single, "start from a perturbed single great circle");
  common(flow);

  auto* catalog = app.add_subcommand("catalog", "closed elastica catalog and critical-value gap scan");
  catalog->add_option("--n-max", o.n_max, "largest lobe count");
  common(catalog);

  auto* variation = app.add_subcommand("variation", "second variation at the doubly covered great circle");
  common(variation);

  auto* hopf = app.add_subcommand("hopf", "Willmore energy of Hopf tori and thresholds");
  hopf->add_option("--delta", o.delta, "energy window above 4 pi for the counterexample lift");
  hopf->add_option("--n", o.n, "vertex count of the counterexample curve");
  hopf->add_flag("--mesh", o.mesh, "write an OBJ mesh of the counterexample torus");
  hopf->add_option("--stereo-pole", o.pole, "projection pole in S^3 (4 numbers)")->expected(4);
  common(hopf);

  auto* report = app.add_subcommand("report", "all scenarios");
  report->add_option("--eps", o.eps, "perturbation size of gamma^eps");
  report->add_option("--delta", o.delta, "energy window above 4 pi");
  report->add_option("--n", o.n, "vertex count for the flows");
  report->add_option("--n-max", o.n_max, "largest lobe count");
  report->add_flag("--mesh", o.mesh, "write an OBJ mesh of the counterexample torus");
  report->add_option("--stereo-pole", o.pole, "projection pole in S^3 (4 numbers)")->expected(4);
  common(report);

  CLI11_PARSE(app, argc, argv);

  std::vector<Scenario> list;
  if (flow->parsed())
    list.push_back(o.single ? make("flow_single_circle", ScenarioKind::FlowSingleCircle, o)
                            : make("flow_counterexample", ScenarioKind::FlowCounterexample, o));
  if (catalog->parsed()) list.push_back(make("catalog_scan", ScenarioKind::CatalogScan, o));
  if (variation->parsed()) list.push_back(make("second_variation_suite", ScenarioKind::SecondVariationSuite, o));
  if (hopf->parsed()) list.push_back(make("hopf_thresholds", ScenarioKind::HopfThresholds, o));
  if (report->parsed())
    for (auto k : {ScenarioKind::FlowCounterexample, ScenarioKind::FlowSingleCircle, ScenarioKind::CatalogScan,
                   ScenarioKind::SecondVariationSuite, ScenarioKind::HopfThresholds})
      list.push_back(make(to_string(k), k, o));
  return run_all(list, o.parallel);
}
