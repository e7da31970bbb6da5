// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the number of failures.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "spherelab/homotopy_ind2.hpp"
#include "spherelab/scenario.hpp"
#include "spherelab/second_variation.hpp"

using namespace spherelab;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

// pinned tolerances
constexpr double kFlowEnergyTol = 1e-3;
constexpr double kWindowDelta = 0.1;
constexpr double kClosedFormTol = 1e-4;
constexpr double kLowerBound = 13.32865;
constexpr double kGapBound = 17.7715;
constexpr double kFormFloor = -1e-8;
constexpr double kSplitTol = 1e-8;
constexpr double kTaylorTol = 0.05;
constexpr double kCliffordTol = 1e-2;
constexpr double kPiFactorTol = 2e-2;

struct Line {
  bool pass;
  std::string detail;
};

Line from_assertions(const RunReport& r, const std::vector<std::string>& names) {
  std::string detail;
  bool pass = true;
  for (const auto& n : names) {
    bool found = false;
    for (const auto& a : r.assertions)
      if (a.name == n) {
        found = true;
        pass = pass && a.pass;
        if (!a.pass) detail += n + " [" + a.detail + "] ";
      }
    if (!found) {
      pass = false;
      detail += n + " [missing] ";
    }
  }
  return {pass, detail};
}

std::string fmt(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.6g", v);
  return b;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scenario make(const std::string& name, ScenarioKind k) {
  Scenario s;
  s.name = name;
  s.kind = k;
  return s;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const std::string& title, const std::function<Line()>& body) {
    Line l;
    try {
      l = body();
    } catch (const std::exception& e) {
      l = {false, std::string("threw: ") + e.what()};
    }
    if (!l.pass) ++failures;
    std::printf("%s criterion %d: %s%s%s\n", l.pass ? "PASS" : "FAIL", id, title.c_str(), l.detail.empty() ? "" : " | ",
                l.detail.c_str());
    std::fflush(stdout);
  };

  Scenario ce = make("counterexample", ScenarioKind::FlowCounterexample);
  ce.parameters = {{"delta", kWindowDelta}, {"n", 512}};
  Scenario single = make("single", ScenarioKind::FlowSingleCircle);
  single.parameters = {{"n", 512}};
  Scenario cat = make("catalog", ScenarioKind::CatalogScan);
  cat.parameters = {{"n_max", 12}, {"n_synth", 6}, {"per_lobe", 2048}};
  Scenario sv = make("variation", ScenarioKind::SecondVariationSuite);
  Scenario hopf = make("hopf", ScenarioKind::HopfThresholds);
  hopf.parameters = {{"ns", 256}, {"nf", 64}, {"delta", kWindowDelta}};

  RunReport r_ce, r_cat, r_sv;

  report(1, "counterexample flow converges to the double circle", [&] {
    r_ce = execute_scenario(ce);
    Line l = from_assertions(r_ce, {"initial_energy_window", "energy_monotone", "dichotomy", "final_energy",
                                    "limit_double_circle", "ind2_zero", "initial_self_intersections"});
    const double gap = std::abs(r_ce.metrics.at("final_energy") - 4.0 * kPi);
    l.pass = l.pass && gap < kFlowEnergyTol;
    l.detail += "E_final - 4pi = " + fmt(gap);
    return l;
  });

  report(2, "perturbed single circle flows to the great circle", [&] {
    const RunReport r = execute_scenario(single);
    Line l = from_assertions(r, {"energy_monotone", "dichotomy", "final_energy", "limit_single_circle", "ind2_one"});
    const double gap = std::abs(r.metrics.at("final_energy") - 2.0 * kPi);
    l.pass = l.pass && gap < kFlowEnergyTol;
    l.detail += "E_final - 2pi = " + fmt(gap);
    return l;
  });

  report(3, "energy window of the perturbed double circle", [&] {
    double prev = 4.0 * kPi;
    bool ok = true;
    std::string d;
    for (double eps : {0.01, 0.03, 0.05, 0.1}) {
      const double e = elastic_energy(perturbed_double_circle(eps, 512));
      ok = ok && e > prev && e < 13.0;
      prev = e;
      d += fmt(e) + " ";
    }
    return Line{ok, d};
  });

  report(4, "closed-form elastica energy matches quadrature", [&] {
    r_cat = execute_scenario(cat);
    Line l = from_assertions(r_cat, {"closed_form_vs_quadrature", "closure"});
    const double w = r_cat.metrics.at("worst_relative_energy_gap");
    l.pass = l.pass && w < kClosedFormTol;
    l.detail += "worst relative gap " + fmt(w);
    return l;
  });

  report(5, "catalog energies respect the lower bound and the gap", [&] {
    Line l = from_assertions(r_cat, {"gap_scan", "lower_bound_6pi_over_sqrt2"});
    const double m = r_cat.metrics.at("min_energy");
    l.pass = l.pass && m > kLowerBound && m > kGapBound;
    l.detail += "min energy " + fmt(m);
    return l;
  });

  report(6, "f strictly increasing with f(0) = pi/2", [&] { return from_assertions(r_cat, {"f_increasing", "f_at_zero"}); });

  report(7, "second variation nonnegative and splits", [&] {
    r_sv = execute_scenario(sv);
    Line l = from_assertions(r_sv, {"form_nonnegative", "splitting_identity", "bump_split_positive", "taylor_consistency"});
    const double mn = r_sv.metrics.at("min_random_form");
    const double q = r_sv.metrics.at("bump_form");
    const double a = r_sv.metrics.at("bump_split_first"), b = r_sv.metrics.at("bump_split_second");
    const double fd = r_sv.metrics.at("taylor_second_difference");
    l.pass = l.pass && mn >= kFormFloor && std::abs(a + b - q) <= kSplitTol * q && a > 0 && b > 0 &&
             std::abs(fd - q) / q < kTaylorTol;
    l.detail += "Q(bump) = " + fmt(q) + ", finite difference " + fmt(fd);
    return l;
  });

  report(8, "ind2 table and invariance", [&] {
    bool ok = to_int(ind2(great_circle(256))) == 1 && to_int(ind2(great_circle(512, 2))) == 0 &&
              to_int(ind2(great_circle(768, 3))) == 1;
    const auto g = perturbed_double_circle(0.05, 512);
    ok = ok && to_int(ind2(g)) == 0;
    const Mat3 rot = rotation_about(Vec3{0.6, 0.0, 0.8}, 2.1);
    for (const auto& c : {great_circle(256), great_circle(512, 2), g}) {
      const int v = to_int(ind2(c));
      ok = ok && to_int(ind2(resample_uniform(c, 2 * c.size()))) == v && to_int(ind2(rotated(c, rot))) == v;
    }
    return Line{ok, ""};
  });

  report(9, "Hopf tori: Clifford energy, pi-factor law, counterexample window", [&] {
    const RunReport r = execute_scenario(hopf);
    Line l = from_assertions(r, {"clifford", "pi_factor", "counterexample_window"});
    const double c = r.metrics.at("clifford");
    const double w = r.metrics.at("counterexample_willmore");
    const double pf = r.metrics.at("worst_pi_factor_defect");
    const double pi2 = kPi * kPi;
    l.pass = l.pass && std::abs(c - 2 * pi2) / (2 * pi2) < kCliffordTol && pf < kPiFactorTol && w > 4 * pi2 &&
             w < 4 * pi2 + kPi * kWindowDelta;
    l.detail += "Clifford " + fmt(c) + ", counterexample " + fmt(w) + ", worst pi-factor defect " + fmt(pf);
    return l;
  });

  report(10, "repeated runs give bit-identical CSVs", [&] {
    const fs::path root = fs::temp_directory_path() / "spherelab-acceptance";
    fs::remove_all(root);
    bool ok = true;
    std::string d;
    for (Scenario s : {ce, cat}) {
      std::string first;
      for (int rep = 0; rep < 2; ++rep) {
        s.output_dir = root / std::to_string(rep);
        RunReport r = execute_scenario(s);
        const auto files = emit_outputs(s, r);
        const std::string csv = slurp(files.front());
        if (rep == 0) first = csv;
        else if (csv != first || csv.empty()) {
          ok = false;
          d += s.name + " differs ";
        }
      }
    }
    fs::remove_all(root);
    return Line{ok, d};
  });

  return failures;
}
