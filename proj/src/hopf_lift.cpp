#include "spherelab/hopf_lift.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "spherelab/discrete_elastic.hpp"
#include "spherelab/error.hpp"
#include "spherelab/kernels.hpp"

namespace spherelab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
constexpr Vec3 kFiberBase{1.0, 0.0, 0.0};

// Rotation quaternion along the geodesic from a to b.
Quaternion geodesic_rotation(const Vec3& a, const Vec3& b) {
  const Vec3 ax = cross(a, b);
  const double s = norm(ax);
  const double c = dot(a, b);
  if (s < 1e-15) {
    if (c > 0.0) return {};
    // antipodal: any axis orthogonal to a
    Vec3 perp = std::abs(a.x) < 0.9 ? cross(a, Vec3{1.0, 0.0, 0.0}) : cross(a, Vec3{0.0, 1.0, 0.0});
    return axis_angle(perp / norm(perp), kPi);
  }
  return axis_angle(ax / s, std::atan2(s, c));
}

Quaternion fiber(double theta) { return {std::cos(theta), std::sin(theta), 0.0, 0.0}; }

}  // namespace

UnitVec3 hopf_projection(const Quaternion& q) { return UnitVec3(rotate(q, kFiberBase)); }

HopfTorusSample::HopfTorusSample(std::size_t ns, std::size_t nf) : ns_(ns), nf_(nf) {
  for (auto& c : comp_) c.assign(ns * (nf + 2), 0.0);
}

Quaternion HopfTorusSample::at(std::size_t i, std::size_t j) const {
  const std::size_t o = i * (nf_ + 2) + j + 1;
  return {comp_[0][o], comp_[1][o], comp_[2][o], comp_[3][o]};
}

void HopfTorusSample::set(std::size_t i, std::size_t j, const Quaternion& q) {
  const std::size_t o = i * (nf_ + 2) + j + 1;
  comp_[0][o] = q.w;
  comp_[1][o] = q.x;
  comp_[2][o] = q.y;
  comp_[3][o] = q.z;
}

void HopfTorusSample::close_rows() {
  for (auto& c : comp_)
    for (std::size_t i = 0; i < ns_; ++i) {
      double* r = &c[i * (nf_ + 2)];
      r[0] = r[nf_];
      r[nf_ + 1] = r[1];
    }
}

HopfTorusSample lift_curve(const DiscreteCurve& c, std::size_t nf, double phase) {
  if (nf < 32) throw Error(ErrorCode::DegenerateGrid, "fiber needs at least 32 samples");
  const std::size_t ns = c.size();
  std::vector<Quaternion> q(ns + 1);
  q[0] = geodesic_rotation(kFiberBase, c[0]);
  for (std::size_t j = 0; j < ns; ++j) q[j + 1] = normalized(geodesic_rotation(c.at(j), c.at(j + 1)) * q[j]);

  // q_N = q_0 e^{i psi}; spread the phase so the lift closes.
  const Quaternion hol = q[0].conj() * q[ns];
  const double psi = std::atan2(hol.x, hol.w);

  HopfTorusSample t(ns, nf);
  double drift = 0.0;
  for (std::size_t i = 0; i < ns; ++i) {
    const Quaternion qi = q[i] * fiber(-psi * static_cast<double>(i) / static_cast<double>(ns));
    for (std::size_t j = 0; j < nf; ++j) {
      const Quaternion x = qi * fiber(phase + kTwoPi * static_cast<double>(j) / static_cast<double>(nf));
      t.set(i, j, x);
      drift = std::max(drift, norm(rotate(x, kFiberBase) - c[i].vec()));
    }
  }
  if (!(drift <= 1e-5)) throw Error(ErrorCode::LiftDrift, "lift drifted from the base curve by " + std::to_string(drift));
  t.close_rows();
  return t;
}

double willmore_energy(const HopfTorusSample& t) {
  if (t.ns() < 64 || t.nf() < 64) throw Error(ErrorCode::DegenerateGrid, "grid needs at least 64 x 64 samples");
  const auto& k = kernels::active();
  kernels::WillmoreRowArgs a;
  a.nf = t.nf();
  a.du = kTwoPi / static_cast<double>(t.ns());
  a.dv = kTwoPi / static_cast<double>(t.nf());
  auto fill = [&](kernels::PaddedRow& r, std::size_t i) {
    for (int c = 0; c < 4; ++c) r.c[c] = t.row(i, c);
  };
  double total = 0.0;
  for (std::size_t i = 0; i < t.ns(); ++i) {
    fill(a.prev, (i + t.ns() - 1) % t.ns());
    fill(a.cur, i);
    fill(a.next, (i + 1) % t.ns());
    const double row = k.willmore_row(a);
    if (!std::isfinite(row)) throw Error(ErrorCode::DegenerateGrid, "degenerate metric in row " + std::to_string(i));
    total += row;
  }
  return total;
}

ThresholdReport threshold_report(const DiscreteCurve& c, std::size_t ns, std::size_t nf) {
  const DiscreteCurve base = c.size() == ns ? c : resample_uniform(c, ns);
  ThresholdReport r;
  r.willmore = willmore_energy(lift_curve(base, nf));
  r.base_energy = elastic_energy(c);
  r.pi_factor_defect = std::abs(r.willmore - kPi * r.base_energy) / r.willmore;
  r.below_4pi2 = r.willmore < 4.0 * kPi * kPi;
  r.below_8pi2_over_sqrt2 = r.willmore < 8.0 * kPi * kPi / std::numbers::sqrt2;
  r.below_li_yau = r.willmore < 8.0 * kPi;
  r.base_below_4pi = r.base_energy < 4.0 * kPi;
  r.base_below_8pi_over_sqrt2 = r.base_energy < 8.0 * kPi / std::numbers::sqrt2;
  return r;
}

std::array<double, 3> stereographic(const Quaternion& x, const Quaternion& pole) {
  // orthonormal basis of the complement of the pole
  const Quaternion e[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  Quaternion basis[3];
  int found = 0;
  for (const auto& cand : e) {
    if (found == 3) break;
    Quaternion v = cand - pole * dot(cand, pole);
    for (int b = 0; b < found; ++b) v = v - basis[b] * dot(v, basis[b]);
    if (norm(v) > 1e-6) basis[found++] = normalized(v);
  }
  const double denom = 1.0 - dot(x, pole);
  return {dot(x, basis[0]) / denom, dot(x, basis[1]) / denom, dot(x, basis[2]) / denom};
}

std::string torus_to_obj(const HopfTorusSample& t, const Quaternion& pole) {
  std::string out = "# Hopf torus, stereographic projection\n";
  char buf[96];
  for (std::size_t i = 0; i < t.ns(); ++i)
    for (std::size_t j = 0; j < t.nf(); ++j) {
      const Quaternion x = t.at(i, j);
      if (1.0 - dot(x, pole) < 1e-9) throw Error(ErrorCode::DegenerateGrid, "torus passes through the projection pole");
      const auto p = stereographic(x, pole);
      std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", p[0], p[1], p[2]);
      out += buf;
    }
  auto id = [&](std::size_t i, std::size_t j) { return (i % t.ns()) * t.nf() + (j % t.nf()) + 1; };
  for (std::size_t i = 0; i < t.ns(); ++i)
    for (std::size_t j = 0; j < t.nf(); ++j) {
      std::snprintf(buf, sizeof buf, "f %zu %zu %zu %zu\n", id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
      out += buf;
    }
  return out;
}

void write_torus_obj(const HopfTorusSample& t, const Quaternion& pole, const std::filesystem::path& path) {
  const std::string text = torus_to_obj(t, pole);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

}  // namespace spherelab
