#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spherelab/elastica_catalog.hpp"
#include "spherelab/flow_engine.hpp"
#include "spherelab/hopf_lift.hpp"

namespace spherelab {

enum class ScenarioKind { FlowCounterexample, FlowSingleCircle, CatalogScan, SecondVariationSuite, HopfThresholds };

const char* to_string(ScenarioKind kind);
/// Accepts the snake_case names (flow_counterexample, ...); throws ScenarioFailure.
ScenarioKind scenario_kind_from_string(const std::string& name);

/// Parameters not set fall back to per-kind defaults:
///   flow_counterexample  delta 0.1, n 512, eps_max 0.15, eps (bisected from delta if absent)
///   flow_single_circle   amplitude 0.2, n 512
///   catalog_scan         n_max 12, n_synth 6, per_lobe 2048
///   second_variation_suite  m 1024, random_count 50, seed 1, taylor_n 1024
///   hopf_thresholds      ns 256, nf 64, delta 0.1, n 512
/// Flow kinds also read velocity_tol, energy_tol, max_steps.
struct Scenario {
  std::string name;
  ScenarioKind kind = ScenarioKind::FlowCounterexample;
  std::map<std::string, double> parameters;
  std::filesystem::path output_dir = ".";
  bool mesh = false;
  Quaternion stereo_pole{0.0, 0.0, 0.0, 1.0};
};

/// Canonical text of the scenario (name, kind, sorted parameters, mesh flags) and its
/// 64-bit FNV-1a hash; output files are named <name>-<hash>.<ext>.
std::string canonical_config(const Scenario& s);
std::string config_hash(const Scenario& s);

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunReport {
  std::string scenario;
  ScenarioKind kind = ScenarioKind::FlowCounterexample;
  std::vector<Assertion> assertions;
  std::map<std::string, double> metrics;
  std::vector<std::filesystem::path> artifacts;

  // Payloads for emit_outputs.
  std::optional<FlowTrace> trace;
  std::vector<ClosedElastica> catalog;
  std::optional<HopfTorusSample> mesh;

  bool passed() const;
  /// nullptr when everything passed.
  const Assertion* first_failure() const;
};

/// Runs the pipeline and records every assertion. Throws ScenarioFailure for invalid
/// parameters (before any computation) or when the pipeline itself throws.
RunReport execute_scenario(const Scenario& s);

/// execute_scenario, then throws ScenarioFailure naming the first failed assertion.
RunReport run_scenario(const Scenario& s);

/// Writes the report JSON, trace CSV and snapshot JSONs, catalog CSV and the optional OBJ
/// into s.output_dir; appends the paths to r.artifacts and returns them. Throws IoFailure.
std::vector<std::filesystem::path> emit_outputs(const Scenario& s, RunReport& r);

std::string report_to_json(const RunReport& r);

}  // namespace spherelab
