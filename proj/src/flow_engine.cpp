#include "spherelab/flow_engine.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "spherelab/spectral.hpp"

namespace spherelab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kPlateauWindow = 200;
constexpr std::size_t kGrowAfter = 5;
constexpr double kGrowFactor = 1.2;

const Fft& cached_fft(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<Fft>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Fft>(n);
  return *slot;
}

bool finite(const Vec3& v) { return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z); }

// (I + 2 sigma dt D^4)^-1 applied componentwise; D^4 is the periodic fourth difference on a
// uniform grid of spacing h.
std::vector<Vec3> stabilized_displacement(const std::vector<Vec3>& v, double dt, double sigma, double h) {
  const std::size_t n = v.size();
  std::vector<Vec3> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = dt * v[i];
  if (sigma <= 0.0) return out;
  const Fft& fft = cached_fft(n);
  std::vector<double> symbol(n);
  const double h4 = h * h * h * h;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = 2.0 - 2.0 * std::cos(kTwoPi * static_cast<double>(k) / static_cast<double>(n));
    symbol[k] = 1.0 / (1.0 + 2.0 * sigma * dt * s * s / h4);
  }
  std::vector<double> comp(n);
  for (int d = 0; d < 3; ++d) {
    for (std::size_t i = 0; i < n; ++i) comp[i] = out[i][d];
    auto c = fft.forward_real(comp);
    for (std::size_t k = 0; k < n; ++k) c[k] *= symbol[k];
    const auto back = fft.backward_real(c);
    for (std::size_t i = 0; i < n; ++i) {
      if (d == 0) out[i].x = back[i];
      if (d == 1) out[i].y = back[i];
      if (d == 2) out[i].z = back[i];
    }
  }
  return out;
}

std::optional<DiscreteCurve> trial_curve(const DiscreteCurve& c, const std::vector<Vec3>& disp) {
  std::vector<UnitVec3> out;
  out.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec3& x = c[i];
    Vec3 w = disp[i];
    w -= dot(w, x) * x;
    if (!finite(w)) throw Error(ErrorCode::BlowUp, "non-finite displacement at vertex " + std::to_string(i));
    const UnitVec3 moved = exp_map(c[i], w);
    if (!finite(moved.vec())) throw Error(ErrorCode::BlowUp, "non-finite vertex " + std::to_string(i));
    out.push_back(moved);
  }
  try {
    return DiscreteCurve(std::move(out));
  } catch (const Error&) {
    return std::nullopt;  // collapsed edge: treat like an energy increase
  }
}

FlowSample make_sample(const FlowState& s, bool with_snapshot) {
  FlowSample smp;
  smp.t = s.t;
  smp.energy = s.energy;
  smp.dt = s.dt;
  smp.ind2 = to_int(ind2(s.curve));
  smp.self_intersections = self_intersection_count(s.curve);
  if (with_snapshot) smp.snapshot = s.curve;
  return smp;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void FlowConfig::validate() const {
  if (n < 32) throw std::invalid_argument("flow needs at least 32 vertices");
  if (!(dt_min > 0.0 && dt_min <= dt_init && dt_init <= dt_max))
    throw std::invalid_argument("need 0 < dt_min <= dt_init <= dt_max");
  if (!(energy_tol > 0.0 && velocity_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
  if (stabilization < 0.0) throw std::invalid_argument("stabilization must be non-negative");
}

FlowState::FlowState(DiscreteCurve c, double dt_start)
    : curve(std::move(c)), energy(elastic_energy(curve)), dt(dt_start) {}

const char* to_string(LimitTag tag) {
  switch (tag) {
    case LimitTag::SingleCircle: return "SingleCircle";
    case LimitTag::DoubleCircle: return "DoubleCircle";
    case LimitTag::NonGeodesicElastica: return "NonGeodesicElastica";
    case LimitTag::Unresolved: return "Unresolved";
  }
  return "Unresolved";
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Stationary: return "stationary";
    case StopReason::Plateau: return "plateau";
    case StopReason::MaxSteps: return "max_steps";
  }
  return "max_steps";
}

FlowState step(const FlowState& s, const FlowConfig& cfg) {
  const auto velocity = flow_velocity(s.curve);
  for (const auto& v : velocity.vectors)
    if (!finite(v)) throw Error(ErrorCode::BlowUp, "non-finite flow velocity");
  const double h = curve_length(s.curve) / static_cast<double>(s.curve.size());
  const double limit = s.energy + cfg.energy_slack * s.energy;

  double dt = s.dt;
  while (true) {
    const auto disp = stabilized_displacement(velocity.vectors, dt, cfg.stabilization, h);
    auto trial = trial_curve(s.curve, disp);
    const double e = trial ? elastic_energy(*trial) : std::numeric_limits<double>::infinity();
    if (!std::isfinite(e) && trial) throw Error(ErrorCode::BlowUp, "energy is not finite");
    if (e > limit) {
      dt *= 0.5;
      if (dt < cfg.dt_min)
        throw Error(ErrorCode::StepSizeUnderflow,
                    "dt fell below dt_min at t = " + fmt(s.t) + " with the energy still increasing");
      continue;
    }
    FlowState next;
    next.t = s.t + dt;
    next.step_count = s.step_count + 1;
    next.curve = std::move(*trial);
    next.energy = e;
    next.accepted_streak = s.accepted_streak + 1;
    next.dt = dt;
    if (next.accepted_streak >= kGrowAfter) {
      next.dt = std::min(dt * kGrowFactor, cfg.dt_max);
      next.accepted_streak = 0;
    }
    if (cfg.resample_every > 0 && next.step_count % cfg.resample_every == 0) {
      auto resampled = resample_uniform(next.curve, cfg.n);
      const double er = elastic_energy(resampled);
      if (er <= limit) {
        next.curve = std::move(resampled);
        next.energy = er;
      }
    }
    return next;
  }
}

LimitClass classify_limit(const DiscreteCurve& c, const FlowConfig& cfg) {
  LimitClass lc;
  lc.residual = sup_norm(flow_velocity(c));
  for (double k : geodesic_curvature(c).values) lc.max_curvature = std::max(lc.max_curvature, std::abs(k));
  lc.winding = static_cast<int>(std::lround(curve_length(c) / kTwoPi));
  if (lc.residual >= cfg.velocity_tol) {
    lc.tag = LimitTag::Unresolved;
  } else if (lc.max_curvature < 10.0 * cfg.velocity_tol) {
    lc.tag = lc.winding == 1 ? LimitTag::SingleCircle
             : lc.winding == 2 ? LimitTag::DoubleCircle
                               : LimitTag::Unresolved;
  } else {
    lc.tag = LimitTag::NonGeodesicElastica;
  }
  return lc;
}

std::pair<FlowTrace, LimitClass> run_to_convergence(const DiscreteCurve& c0, const FlowConfig& cfg) {
  cfg.validate();
  FlowState state(c0.size() == cfg.n ? c0 : resample_uniform(c0, cfg.n), cfg.dt_init);
  FlowTrace trace;
  trace.samples.push_back(make_sample(state, cfg.snapshot_every > 0));
  std::deque<double> window{state.energy};

  StopReason stop = StopReason::MaxSteps;
  while (state.step_count < cfg.max_steps) {
    if (sup_norm(flow_velocity(state.curve)) < cfg.velocity_tol) {
      stop = StopReason::Stationary;
      break;
    }
    if (window.size() > kPlateauWindow && window.front() - window.back() < cfg.energy_tol * window.back()) {
      stop = StopReason::Plateau;
      break;
    }
    state = step(state, cfg);
    const bool snap = cfg.snapshot_every > 0 && state.step_count % cfg.snapshot_every == 0;
    trace.samples.push_back(make_sample(state, snap));
    window.push_back(state.energy);
    if (window.size() > kPlateauWindow + 1) window.pop_front();
  }
  if (cfg.snapshot_every > 0 && !trace.samples.back().snapshot) trace.samples.back().snapshot = state.curve;

  LimitClass lc = classify_limit(state.curve, cfg);
  lc.stop = stop;
  return {std::move(trace), lc};
}

DichotomyReport verify_dichotomy(const FlowTrace& trace) {
  if (trace.samples.empty()) throw Error(ErrorCode::InconsistentTrace, "empty trace");
  DichotomyReport r;
  r.initial_energy = trace.samples.front().energy;
  r.final_energy = trace.samples.back().energy;
  r.energy_monotone = true;
  for (std::size_t i = 1; i < trace.samples.size(); ++i) {
    const double prev = trace.samples[i - 1].energy;
    if (trace.samples[i].energy > prev + 1e-9 * prev) r.energy_monotone = false;
  }
  if (!r.energy_monotone) throw Error(ErrorCode::InconsistentTrace, "energy increases along the trace");
  r.ind2 = trace.samples.front().ind2;
  for (const auto& s : trace.samples)
    if (s.ind2 != r.ind2) throw Error(ErrorCode::InconsistentTrace, "ind2 changes along the trace");

  if (std::abs(r.final_energy - kTwoPi) < 1e-3 && r.ind2 == 1) {
    r.alternative = 'A';
  } else if (std::abs(r.final_energy - 2.0 * kTwoPi) < 1e-3 && r.ind2 == 0) {
    r.alternative = 'B';
  } else {
    throw Error(ErrorCode::InconsistentTrace,
                "final energy " + fmt(r.final_energy) + " with ind2 = " + std::to_string(r.ind2) +
                    " matches neither a single nor a double great circle");
  }
  return r;
}

std::string trace_to_csv(const FlowTrace& trace) {
  std::string out = "t,energy,dt,ind2,self_intersections\n";
  for (const auto& s : trace.samples) {
    out += fmt(s.t) + ',' + fmt(s.energy) + ',' + fmt(s.dt) + ',' + std::to_string(s.ind2) + ',' +
           std::to_string(s.self_intersections) + '\n';
  }
  return out;
}

void write_trace_csv(const FlowTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  out << trace_to_csv(trace);
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

}  // namespace spherelab
