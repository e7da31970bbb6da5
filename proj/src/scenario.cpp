#include "spherelab/scenario.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "spherelab/curve_io.hpp"
#include "spherelab/discrete_elastic.hpp"
#include "spherelab/elliptic.hpp"
#include "spherelab/error.hpp"
#include "spherelab/homotopy_ind2.hpp"
#include "spherelab/second_variation.hpp"

namespace spherelab {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ScenarioFailure, what); }

class Params {
 public:
  explicit Params(const Scenario& s) : p_(s.parameters) {}
  double get(const std::string& key, double fallback) const {
    auto it = p_.find(key);
    return it == p_.end() ? fallback : it->second;
  }
  bool has(const std::string& key) const { return p_.count(key) != 0; }
  std::size_t count(const std::string& key, double fallback, double min) const {
    const double v = get(key, fallback);
    if (!(v >= min) || v != std::floor(v)) invalid(key + " must be an integer >= " + fmt(min));
    return static_cast<std::size_t>(v);
  }
  double positive(const std::string& key, double fallback) const {
    const double v = get(key, fallback);
    if (!(v > 0.0) || !std::isfinite(v)) invalid(key + " must be positive");
    return v;
  }

 private:
  const std::map<std::string, double>& p_;
};

struct Recorder {
  RunReport& r;
  void check(const std::string& name, bool pass, const std::string& detail) { r.assertions.push_back({name, pass, detail}); }
};

FlowConfig flow_config(const Params& p, std::size_t n) {
  FlowConfig cfg;
  cfg.n = n;
  cfg.velocity_tol = p.positive("velocity_tol", cfg.velocity_tol);
  cfg.energy_tol = p.positive("energy_tol", cfg.energy_tol);
  cfg.max_steps = p.count("max_steps", static_cast<double>(cfg.max_steps), 1);
  return cfg;
}

bool monotone(const FlowTrace& t) {
  for (std::size_t i = 1; i < t.samples.size(); ++i)
    if (t.samples[i].energy > t.samples[i - 1].energy) return false;
  return true;
}

bool ind2_constant(const FlowTrace& t, int value) {
  for (const auto& s : t.samples)
    if (s.ind2 != value) return false;
  return true;
}

void record_flow(Recorder& rec, RunReport& r, const FlowTrace& trace, const LimitClass& lc, char expected) {
  r.metrics["initial_energy"] = trace.samples.front().energy;
  r.metrics["final_energy"] = trace.samples.back().energy;
  r.metrics["final_t"] = trace.samples.back().t;
  r.metrics["accepted_steps"] = static_cast<double>(trace.samples.size() - 1);
  r.metrics["final_residual"] = lc.residual;
  r.metrics["final_max_curvature"] = lc.max_curvature;
  rec.check("energy_monotone", monotone(trace), "energy non-increasing on every accepted step");
  try {
    const auto d = verify_dichotomy(trace);
    rec.check("dichotomy", d.alternative == expected, std::string("alternative ") + d.alternative);
  } catch (const Error& e) {
    rec.check("dichotomy", false, e.what());
  }
}

void run_flow_counterexample(const Scenario& s, RunReport& r) {
  const Params p(s);
  const std::size_t n = p.count("n", 512, 256);
  const double delta = p.positive("delta", 0.1);
  const double eps_max = p.positive("eps_max", kDefaultEpsMax);
  if (p.has("eps")) {
    const double e = p.get("eps", 0.0);
    if (!(e > 0.0 && e <= eps_max)) invalid("eps must lie in (0, eps_max]");
  }
  const FlowConfig cfg = flow_config(p, n);

  const double eps = p.has("eps") ? p.get("eps", 0.0) : eps_for_energy_window(delta, n, eps_max);
  const DiscreteCurve c0 = perturbed_double_circle(eps, n, eps_max);
  auto [trace, lc] = run_to_convergence(c0, cfg);
  Recorder rec{r};
  const double e0 = trace.samples.front().energy;
  const double e1 = trace.samples.back().energy;
  r.metrics["eps"] = eps;
  r.metrics["delta"] = delta;
  rec.check("initial_energy_window", e0 > 4.0 * kPi && e0 < 4.0 * kPi + delta,
            "Wil(gamma^eps) - 4 pi = " + fmt(e0 - 4.0 * kPi));
  record_flow(rec, r, trace, lc, 'B');
  rec.check("final_energy", std::abs(e1 - 4.0 * kPi) < 1e-3, "E_final - 4 pi = " + fmt(e1 - 4.0 * kPi));
  rec.check("limit_double_circle", lc.tag == LimitTag::DoubleCircle,
            std::string(to_string(lc.tag)) + " after " + to_string(lc.stop));
  rec.check("ind2_zero", ind2_constant(trace, 0), "ind2 = 0 on every sample");
  rec.check("initial_self_intersections", trace.samples.front().self_intersections == 1,
            std::to_string(trace.samples.front().self_intersections) + " self-intersection(s)");
  r.trace = std::move(trace);
}

void run_flow_single_circle(const Scenario& s, RunReport& r) {
  const Params p(s);
  const std::size_t n = p.count("n", 512, 64);
  const double amp = p.positive("amplitude", 0.2);
  if (amp > 0.5) invalid("amplitude must not exceed 0.5");
  const FlowConfig cfg = flow_config(p, n);

  auto [trace, lc] = run_to_convergence(wobbly_circle(amp, n), cfg);
  Recorder rec{r};
  const double e1 = trace.samples.back().energy;
  r.metrics["amplitude"] = amp;
  record_flow(rec, r, trace, lc, 'A');
  rec.check("final_energy", std::abs(e1 - 2.0 * kPi) < 1e-3, "E_final - 2 pi = " + fmt(e1 - 2.0 * kPi));
  rec.check("limit_single_circle", lc.tag == LimitTag::SingleCircle,
            std::string(to_string(lc.tag)) + " after " + to_string(lc.stop));
  rec.check("ind2_one", ind2_constant(trace, 1), "ind2 = 1 on every sample");
  r.trace = std::move(trace);
}

void run_catalog_scan(const Scenario& s, RunReport& r) {
  const Params p(s);
  const int n_max = static_cast<int>(p.count("n_max", 12, 2));
  const int n_synth = static_cast<int>(p.count("n_synth", 6, 2));
  const std::size_t per_lobe = p.count("per_lobe", 2048, 64);
  if (n_synth > n_max) invalid("n_synth must not exceed n_max");

  Recorder rec{r};
  const auto scan = critical_gap_scan(n_max);
  const double lower = 6.0 * kPi / std::numbers::sqrt2;
  bool above_lower = true;
  for (const auto& e : scan.entries) above_lower = above_lower && e.energy > lower;
  r.metrics["pairs"] = static_cast<double>(scan.entries.size());
  r.metrics["min_energy"] = scan.min_energy;
  rec.check("gap_scan", scan.pass,
            "min non-geodesic energy " + fmt(scan.min_energy) + ", geodesic values in window: " +
                std::to_string(scan.geodesic_values.size()));
  rec.check("lower_bound_6pi_over_sqrt2", above_lower, "every catalog energy > 6 pi / sqrt 2");

  double worst_rel = 0.0;
  double worst_gap = 0.0;
  for (const auto& idx : admissible_indices(n_synth)) {
    auto row = synthesize(idx, per_lobe * static_cast<std::size_t>(idx.n()));
    worst_rel = std::max(worst_rel, std::abs(row.energy_closed_form - row.energy_quadrature) / row.energy_closed_form);
    worst_gap = std::max(worst_gap, row.closure_gap);
    r.catalog.push_back(std::move(row));
  }
  r.metrics["worst_relative_energy_gap"] = worst_rel;
  r.metrics["worst_closure_gap"] = worst_gap;
  rec.check("closed_form_vs_quadrature", worst_rel < 1e-4, "worst relative difference " + fmt(worst_rel));
  rec.check("closure", worst_gap < 1e-6, "worst closure gap " + fmt(worst_gap));

  bool increasing = true;
  double prev = f_of_p(Modulus(0.0));
  for (int i = 1; i <= 70; ++i) {
    const double f = f_of_p(Modulus(0.01 * i));
    increasing = increasing && f > prev;
    prev = f;
  }
  rec.check("f_increasing", increasing, "f strictly increasing on 71 points of [0, 0.70]");
  const double f0 = f_of_p(Modulus(0.0));
  rec.check("f_at_zero", std::abs(f0 - kPi / 2.0) <= 1e-12, "f(0) - pi/2 = " + fmt(f0 - kPi / 2.0));
}

void run_second_variation_suite(const Scenario& s, RunReport& r) {
  const Params p(s);
  const std::size_t m = p.count("m", 1024, NormalPerturbation::kMinSamples);
  const std::size_t count = p.count("random_count", 50, 1);
  const auto seed = static_cast<std::uint64_t>(p.count("seed", 1, 0));
  const std::size_t taylor_n = p.count("taylor_n", 1024, 256);
  const double h = p.positive("taylor_h", 1e-2);

  Recorder rec{r};
  double min_form = std::numeric_limits<double>::infinity();
  double worst_split = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto pert = random_smooth_perturbation(seed + i, m);
    const double q = second_variation_form(pert);
    const auto [a, b] = split_form(pert);
    min_form = std::min(min_form, q);
    worst_split = std::max(worst_split, std::abs(a + b - q) / std::max(std::abs(q), 1e-300));
  }
  const auto bump = bump_pair(m);
  const double q = second_variation_form(bump);
  const auto [a, b] = split_form(bump);
  worst_split = std::max(worst_split, std::abs(a + b - q) / q);
  r.metrics["min_random_form"] = min_form;
  r.metrics["bump_form"] = q;
  r.metrics["bump_split_first"] = a;
  r.metrics["bump_split_second"] = b;
  rec.check("form_nonnegative", min_form >= -1e-8, "minimum over random perturbations " + fmt(min_form));
  rec.check("splitting_identity", worst_split <= 1e-8, "worst relative defect " + fmt(worst_split));
  rec.check("bump_split_positive", a > 0.0 && b > 0.0, "split values " + fmt(a) + ", " + fmt(b));

  const auto w = variation_displacement(bump, taylor_n);
  const double e0 = elastic_energy(displaced_double_circle(w, 0.0));
  const double ep = elastic_energy(displaced_double_circle(w, h));
  const double em = elastic_energy(displaced_double_circle(w, -h));
  const double fd = (ep - 2.0 * e0 + em) / (h * h);
  r.metrics["taylor_second_difference"] = fd;
  rec.check("taylor_consistency", std::abs(fd - q) / std::abs(q) < 0.05,
            "second difference " + fmt(fd) + " vs form " + fmt(q));

  bool window = true;
  double prev = 4.0 * kPi;
  for (double eps : {0.01, 0.03, 0.05, 0.1}) {
    const double e = elastic_energy(perturbed_double_circle(eps, 512));
    window = window && e > prev && e < 13.0;
    r.metrics["energy_eps_" + fmt(eps)] = e;
    prev = e;
  }
  rec.check("energy_window", window, "4 pi < Wil(gamma^eps) < 13, increasing in eps");
}

void run_hopf_thresholds(const Scenario& s, RunReport& r) {
  const Params p(s);
  const std::size_t ns = p.count("ns", 256, 64);
  const std::size_t nf = p.count("nf", 64, 64);
  const double delta = p.positive("delta", 0.1);
  const std::size_t n = p.count("n", 512, 256);

  Recorder rec{r};
  const double pi2 = kPi * kPi;
  const double clifford = willmore_energy(lift_curve(great_circle(ns), nf));
  const double twice = willmore_energy(lift_curve(great_circle(2 * ns, 2), nf));
  r.metrics["clifford"] = clifford;
  r.metrics["double_clifford"] = twice;
  rec.check("clifford", std::abs(clifford - 2.0 * pi2) / (2.0 * pi2) < 1e-2, "Will = " + fmt(clifford));
  rec.check("double_clifford", std::abs(twice - 4.0 * pi2) / (4.0 * pi2) < 1e-2, "Will = " + fmt(twice));

  const DiscreteCurve corpus[] = {great_circle(512),
                                  latitude_circle(1.0, 512),
                                  latitude_circle(0.6, 512),
                                  wobbly_circle(0.2, 512),
                                  perturbed_double_circle(0.05, 512),
                                  synthesize(WaveIndex(1, 2), 2048).curve,
                                  synthesize(WaveIndex(1, 3), 3072).curve};
  double worst = 0.0;
  for (const auto& c : corpus) worst = std::max(worst, threshold_report(c, ns, nf).pi_factor_defect);
  r.metrics["worst_pi_factor_defect"] = worst;
  rec.check("pi_factor", worst < 2e-2, "worst |Will - pi Wil| / Will = " + fmt(worst));

  const double eps = eps_for_energy_window(delta, n);
  const DiscreteCurve ce = perturbed_double_circle(eps, n);
  const DiscreteCurve base = resample_uniform(ce, ns);
  HopfTorusSample torus = lift_curve(base, nf);
  const double will = willmore_energy(torus);
  r.metrics["counterexample_willmore"] = will;
  r.metrics["counterexample_base_energy"] = elastic_energy(ce);
  rec.check("counterexample_window", will > 4.0 * pi2 && will < 4.0 * pi2 + kPi * delta,
            "Will - 4 pi^2 = " + fmt(will - 4.0 * pi2));

  const auto e12 = threshold_report(synthesize(WaveIndex(1, 2), 2048).curve, ns, nf);
  r.metrics["elastica_1_2_willmore"] = e12.willmore;
  rec.check("elastica_above_8pi2_over_sqrt2", !e12.below_8pi2_over_sqrt2, "Will = " + fmt(e12.willmore));
  if (s.mesh) r.mesh = std::move(torus);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

}  // namespace

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::FlowCounterexample: return "flow_counterexample";
    case ScenarioKind::FlowSingleCircle: return "flow_single_circle";
    case ScenarioKind::CatalogScan: return "catalog_scan";
    case ScenarioKind::SecondVariationSuite: return "second_variation_suite";
    case ScenarioKind::HopfThresholds: return "hopf_thresholds";
  }
  return "unknown";
}

ScenarioKind scenario_kind_from_string(const std::string& name) {
  for (auto k : {ScenarioKind::FlowCounterexample, ScenarioKind::FlowSingleCircle, ScenarioKind::CatalogScan,
                 ScenarioKind::SecondVariationSuite, ScenarioKind::HopfThresholds})
    if (name == to_string(k)) return k;
  invalid("unknown scenario kind '" + name + "'");
}

std::string canonical_config(const Scenario& s) {
  std::string out = "name=" + s.name + "\nkind=" + to_string(s.kind) + "\n";
  for (const auto& [k, v] : s.parameters) out += k + "=" + fmt(v) + "\n";
  out += "mesh=" + std::to_string(s.mesh) + "\n";
  if (s.mesh) {
    const auto& q = s.stereo_pole;
    out += "pole=" + fmt(q.w) + "," + fmt(q.x) + "," + fmt(q.y) + "," + fmt(q.z) + "\n";
  }
  return out;
}

std::string config_hash(const Scenario& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical_config(s)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

bool RunReport::passed() const { return first_failure() == nullptr; }

const Assertion* RunReport::first_failure() const {
  for (const auto& a : assertions)
    if (!a.pass) return &a;
  return nullptr;
}

RunReport execute_scenario(const Scenario& s) {
  if (s.name.empty()) invalid("scenario needs a name");
  RunReport r;
  r.scenario = s.name;
  r.kind = s.kind;
  try {
    switch (s.kind) {
      case ScenarioKind::FlowCounterexample: run_flow_counterexample(s, r); break;
      case ScenarioKind::FlowSingleCircle: run_flow_single_circle(s, r); break;
      case ScenarioKind::CatalogScan: run_catalog_scan(s, r); break;
      case ScenarioKind::SecondVariationSuite: run_second_variation_suite(s, r); break;
      case ScenarioKind::HopfThresholds: run_hopf_thresholds(s, r); break;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ScenarioFailure) throw;
    invalid(s.name + ": " + e.what());
  }
  return r;
}

RunReport run_scenario(const Scenario& s) {
  RunReport r = execute_scenario(s);
  if (const Assertion* a = r.first_failure()) invalid(s.name + ": assertion " + a->name + " failed (" + a->detail + ")");
  return r;
}

std::string report_to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["scenario"] = r.scenario;
  j["kind"] = to_string(r.kind);
  j["passed"] = r.passed();
  auto& arr = j["assertions"] = nlohmann::ordered_json::array();
  for (const auto& a : r.assertions) arr.push_back({{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
  auto& m = j["metrics"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.metrics) m[k] = v;
  auto& files = j["artifacts"] = nlohmann::ordered_json::array();
  for (const auto& f : r.artifacts) files.push_back(f.filename().string());
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> emit_outputs(const Scenario& s, RunReport& r) {
  std::error_code ec;
  std::filesystem::create_directories(s.output_dir, ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + s.output_dir.string() + ": " + ec.message());
  const std::string stem = s.name + "-" + config_hash(s);
  std::vector<std::filesystem::path> written;

  if (r.trace) {
    const auto path = s.output_dir / (stem + ".csv");
    write_trace_csv(*r.trace, path);
    written.push_back(path);
    for (std::size_t i = 0; i < r.trace->samples.size(); ++i) {
      const auto& smp = r.trace->samples[i];
      if (!smp.snapshot) continue;
      const auto snap = s.output_dir / (stem + "-snap" + std::to_string(i) + ".json");
      save_curve(*smp.snapshot, snap);
      written.push_back(snap);
    }
  }
  if (!r.catalog.empty()) {
    const auto path = s.output_dir / (stem + ".csv");
    write_catalog_csv(r.catalog, path);
    written.push_back(path);
  }
  if (r.mesh) {
    const auto path = s.output_dir / (stem + ".obj");
    write_torus_obj(*r.mesh, s.stereo_pole, path);
    written.push_back(path);
  }
  const auto json_path = s.output_dir / (stem + ".json");
  r.artifacts.insert(r.artifacts.end(), written.begin(), written.end());
  r.artifacts.push_back(json_path);
  write_text(json_path, report_to_json(r));
  written.push_back(json_path);
  return written;
}

}  // namespace spherelab
