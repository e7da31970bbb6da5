#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spherelab/discrete_elastic.hpp"
#include "spherelab/homotopy_ind2.hpp"
#include "spherelab/sphere_geom.hpp"

namespace spherelab {

struct FlowConfig {
  std::size_t n = 512;            // vertex count the flow runs at
  double dt_init = 1e-3;
  double dt_min = 1e-12;
  double dt_max = 5e-2;
  double energy_tol = 1e-13;      // relative energy change over 200 steps that counts as a plateau
  double velocity_tol = 1e-6;     // sup-norm of the velocity that counts as stationary
  std::size_t max_steps = 20000;
  std::size_t resample_every = 25;
  std::size_t snapshot_every = 100;
  /// Weight of the implicit 2 D^4 term in the stabilized step; 0 gives explicit Euler.
  double stabilization = 1.0;
  /// A trial step is rejected when the energy rises by more than energy_slack * energy.
  double energy_slack = 1e-9;

  /// Throws std::invalid_argument when the fields are inconsistent.
  void validate() const;
};

struct FlowState {
  double t = 0.0;
  DiscreteCurve curve;
  double energy = 0.0;
  std::size_t step_count = 0;
  double dt = 0.0;               // step size the next trial starts from
  std::size_t accepted_streak = 0;

  FlowState() = default;
  FlowState(DiscreteCurve c, double dt_start);
};

/// One accepted step. Trial steps move every vertex by the exponential map of the
/// stabilized displacement (I + 2 sigma dt D^4)^-1 dt V and reproject; a trial that raises the
/// energy beyond the slack halves dt and retries. After 5 accepted steps in a row dt grows by
/// 1.2 up to dt_max. Every resample_every steps the curve is resampled uniformly, provided
/// that keeps the energy within the slack of the previous state.
/// Throws StepSizeUnderflow or BlowUp.
FlowState step(const FlowState& s, const FlowConfig& cfg);

struct FlowSample {
  double t = 0.0;
  double energy = 0.0;
  double dt = 0.0;
  int ind2 = -1;
  std::size_t self_intersections = 0;
  std::optional<DiscreteCurve> snapshot;
};

struct FlowTrace {
  std::vector<FlowSample> samples;
};

enum class LimitTag { SingleCircle, DoubleCircle, NonGeodesicElastica, Unresolved };
enum class StopReason { Stationary, Plateau, MaxSteps };

const char* to_string(LimitTag tag);
const char* to_string(StopReason reason);

struct LimitClass {
  LimitTag tag = LimitTag::Unresolved;
  double residual = 0.0;        // sup-norm of the final velocity
  double max_curvature = 0.0;
  int winding = 0;              // round(length / 2 pi)
  StopReason stop = StopReason::MaxSteps;
};

/// Runs the flow until it is stationary, the energy plateaus or max_steps is reached, and
/// classifies the final curve intrinsically by curvature and winding.
std::pair<FlowTrace, LimitClass> run_to_convergence(const DiscreteCurve& c0, const FlowConfig& cfg);

/// Classification rule used by run_to_convergence.
LimitClass classify_limit(const DiscreteCurve& c, const FlowConfig& cfg);

struct DichotomyReport {
  char alternative = '?';     // 'A': single great circle, 'B': doubly covered great circle
  bool energy_monotone = false;
  double initial_energy = 0.0;
  double final_energy = 0.0;
  int ind2 = -1;              // common value over all samples
};

/// Checks that the trace ends in exactly one of the two alternatives: energy non-increasing,
/// final energy within 1e-3 of 2 pi with ind2 = 1 throughout, or of 4 pi with ind2 = 0
/// throughout. Throws InconsistentTrace otherwise.
DichotomyReport verify_dichotomy(const FlowTrace& trace);

/// CSV with header t,energy,dt,ind2,self_intersections; values printed with %.17g.
std::string trace_to_csv(const FlowTrace& trace);
void write_trace_csv(const FlowTrace& trace, const std::filesystem::path& path);

}  // namespace spherelab
