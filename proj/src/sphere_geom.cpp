#include "spherelab/sphere_geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace spherelab {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

}  // namespace

UnitVec3::UnitVec3(const Vec3& v) {
  const double n = norm(v);
  if (!(n > 1e-14)) throw Error(ErrorCode::NearZeroVector, "cannot project a vector of norm <= 1e-14");
  v_ = v / n;
}

DiscreteCurve::DiscreteCurve(std::vector<UnitVec3> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < kMinVertices)
    throw Error(ErrorCode::TooFewVertices,
                "a discrete curve needs at least 16 vertices, got " + std::to_string(vertices_.size()));
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Vec3& a = vertices_[i];
    if (!std::isfinite(a.x) || !std::isfinite(a.y) || !std::isfinite(a.z))
      throw Error(ErrorCode::InvalidCurve, "non-finite vertex " + std::to_string(i));
    if (edge_length(i) <= 1e-10)
      throw Error(ErrorCode::InvalidCurve, "consecutive vertices coincide at index " + std::to_string(i));
  }
}

DiscreteCurve DiscreteCurve::from_points(std::span<const Vec3> points) {
  std::vector<UnitVec3> v;
  v.reserve(points.size());
  for (const auto& p : points) v.emplace_back(p);
  return DiscreteCurve(std::move(v));
}

const UnitVec3& DiscreteCurve::at(std::ptrdiff_t i) const { return vertices_[wrap(i, vertices_.size())]; }

double DiscreteCurve::edge_length(std::size_t i) const {
  return angle_between(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
}

std::vector<double> DiscreteCurve::edge_lengths() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = edge_length(i);
  return out;
}

TangentFrame make_frame(const UnitVec3& point, const Vec3& direction) {
  const Vec3& p = point;
  const UnitVec3 t(direction - dot(direction, p) * p);
  return {point, t, UnitVec3(cross(p, t))};
}

UnitVec3 project_to_sphere(const Vec3& v) { return UnitVec3(v); }

UnitVec3 exp_map(const UnitVec3& base, const Vec3& w) {
  const double len = norm(w);
  if (std::abs(dot(w, base.vec())) > 1e-10 * std::max(1.0, len))
    throw Error(ErrorCode::NotTangent, "displacement is not tangent to the sphere at the base point");
  if (len < 1e-14) return base;
  return UnitVec3(std::cos(len) * base.vec() + (std::sin(len) / len) * w);
}

Vec3 parallel_transport(const Vec3& v, const UnitVec3& from, const UnitVec3& to) {
  if (std::abs(dot(v, from.vec())) > 1e-10 * std::max(1.0, norm(v)))
    throw Error(ErrorCode::NotTangent, "transported vector is not tangent at the start point");
  const Vec3 axis = cross(from, to);
  const double s = norm(axis);
  const double c = dot(from.vec(), to.vec());
  if (c < 0.0 && s < std::sin(1e-8))
    throw Error(ErrorCode::AntipodalPoints, "geodesic between antipodal points is not unique");
  if (s < 1e-300) return v;
  return rotation_about(axis / s, std::atan2(s, c)) * v;
}

double curve_length(const DiscreteCurve& c) {
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) sum += c.edge_length(i);
  return sum;
}

double edge_length_spread(const DiscreteCurve& c) {
  const auto l = c.edge_lengths();
  const auto [lo, hi] = std::minmax_element(l.begin(), l.end());
  const double mean = std::accumulate(l.begin(), l.end(), 0.0) / static_cast<double>(l.size());
  return (*hi - *lo) / mean;
}

DiscreteCurve resample_uniform(const DiscreteCurve& c, std::size_t n) {
  if (n < DiscreteCurve::kMinVertices)
    throw Error(ErrorCode::TooFewVertices, "resampling needs at least 16 vertices");
  const std::size_t m = c.size();
  std::vector<double> s(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) s[i + 1] = s[i] + c.edge_length(i);
  const double total = s[m];

  // Arclength coordinate of any (wrapped) node index, continued periodically.
  auto node_s = [&](std::ptrdiff_t i) {
    const auto mm = static_cast<std::ptrdiff_t>(m);
    const std::ptrdiff_t q = (i >= 0 ? i / mm : -((-i + mm - 1) / mm));
    return s[static_cast<std::size_t>(i - q * mm)] + static_cast<double>(q) * total;
  };

  auto eval = [&](double target) {
    const auto seg = static_cast<std::size_t>(std::upper_bound(s.begin(), s.end() - 1, target) - s.begin()) - 1;
    const auto i0 = static_cast<std::ptrdiff_t>(seg);
    double xs[4];
    Vec3 ps[4];
    for (int k = 0; k < 4; ++k) {
      xs[k] = node_s(i0 - 1 + k);
      ps[k] = c.at(i0 - 1 + k).vec();
    }
    Vec3 p{};
    for (int k = 0; k < 4; ++k) {
      double w = 1.0;
      for (int l = 0; l < 4; ++l)
        if (l != k) w *= (target - xs[l]) / (xs[k] - xs[l]);
      p += w * ps[k];
    }
    return UnitVec3(p);
  };

  // Targets start uniform in input arclength, then get nudged until the output's own
  // geodesic edges are equal.
  std::vector<double> t(n);
  for (std::size_t j = 0; j < n; ++j) t[j] = total * static_cast<double>(j) / static_cast<double>(n);
  std::vector<UnitVec3> out(n);
  std::vector<double> cum(n + 1);
  for (int iter = 0; iter < 60; ++iter) {
    for (std::size_t j = 0; j < n; ++j) out[j] = eval(t[j]);
    cum[0] = 0.0;
    for (std::size_t j = 0; j < n; ++j) cum[j + 1] = cum[j] + angle_between(out[j], out[(j + 1) % n]);
    const double ratio = total / cum[n];
    double worst = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
      const double miss = cum[n] * static_cast<double>(j) / static_cast<double>(n) - cum[j];
      worst = std::max(worst, std::abs(miss));
      t[j] = std::clamp(t[j] + miss * ratio, 0.0, std::nextafter(total, 0.0));
    }
    if (worst < 1e-14 * cum[n]) break;
  }
  return DiscreteCurve(std::move(out));
}

namespace {

struct Crossing {
  std::size_t i, j;  // i < j
  Vec3 point;
};

// Intersection point(s) of two short great-circle arcs; appends at most one record.
bool arc_intersection(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1, Vec3& out) {
  constexpr double tol = 1e-12;
  const Vec3 na_raw = cross(a0, a1), nb_raw = cross(b0, b1);
  const double la = norm(na_raw), lb = norm(nb_raw);
  const Vec3 na = na_raw / la, nb = nb_raw / lb;
  const Vec3 d = cross(na, nb);
  const double dn = norm(d);
  if (dn < 1e-10 && std::abs(dot(b0, na)) < 1e-10 && std::abs(dot(b1, na)) < 1e-10) {
    // Same great circle: intervals measured from a0 toward a1.
    const Vec3 e2 = cross(na, a0);
    auto ang = [&](const Vec3& p) { return std::atan2(dot(p, e2), dot(p, a0)); };
    const double alen = ang(a1);
    const double t0 = ang(b0), t1 = ang(b1);
    const double lo = std::max(0.0, std::min(t0, t1));
    const double hi = std::min(alen, std::max(t0, t1));
    if (lo > hi + tol) return false;
    const double mid = 0.5 * (lo + hi);
    out = std::cos(mid) * a0 + std::sin(mid) * e2;
    return true;
  }
  if (dn < 1e-300) return false;
  Vec3 p = d / dn;
  if (dot(p, a0 + a1) < 0.0) p = -p;
  if (dot(p, b0 + b1) <= 0.0) return false;
  auto inside = [&](const Vec3& q0, const Vec3& q1, const Vec3& n) {
    return dot(cross(q0, p), n) >= -tol && dot(cross(p, q1), n) >= -tol;
  };
  if (!inside(a0, a1, na) || !inside(b0, b1, nb)) return false;
  out = p;
  return true;
}

struct DisjointSet {
  std::vector<std::size_t> parent;
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::size_t self_intersection_count(const DiscreteCurve& c) {
  const std::size_t n = c.size();
  std::vector<Vec3> mid(n);
  std::vector<double> half(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double len = c.edge_length(i);
    if (len >= kPi / 8.0 || len < 1e-12)
      throw Error(ErrorCode::DegenerateSegment, "arc " + std::to_string(i) + " has length " + std::to_string(len));
    half[i] = 0.5 * len;
    mid[i] = (c[i].vec() + c.at(static_cast<std::ptrdiff_t>(i) + 1).vec());
    mid[i] /= norm(mid[i]);
  }

  std::vector<Crossing> found;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // cyclic neighbours
      if (dot(mid[i], mid[j]) < std::cos(half[i] + half[j] + 1e-9)) continue;
      Vec3 p;
      if (arc_intersection(c[i], c.at(static_cast<std::ptrdiff_t>(i) + 1), c[j],
                           c.at(static_cast<std::ptrdiff_t>(j) + 1), p))
        found.push_back({i, j, p});
    }
  }

  auto cyclic_close = [n](std::size_t a, std::size_t b) {
    const std::size_t d = a > b ? a - b : b - a;
    return std::min(d, n - d) <= 1;
  };
  DisjointSet sets(found.size());
  for (std::size_t a = 0; a < found.size(); ++a)
    for (std::size_t b = a + 1; b < found.size(); ++b) {
      const bool near = angle_between(found[a].point, found[b].point) < 1e-6;
      const bool continued = cyclic_close(found[a].i, found[b].i) && cyclic_close(found[a].j, found[b].j);
      if (near || continued) sets.unite(a, b);
    }
  std::size_t clusters = 0;
  for (std::size_t a = 0; a < found.size(); ++a)
    if (sets.find(a) == a) ++clusters;
  return clusters;
}

DiscreteCurve rotated(const DiscreteCurve& c, const Mat3& rotation) {
  std::vector<UnitVec3> v;
  v.reserve(c.size());
  for (const auto& p : c.vertices()) v.emplace_back(rotation * p.vec());
  return DiscreteCurve(std::move(v));
}

DiscreteCurve reversed(const DiscreteCurve& c) {
  std::vector<UnitVec3> v;
  v.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) v.push_back(c.at(-static_cast<std::ptrdiff_t>(i)));
  return DiscreteCurve(std::move(v));
}

DiscreteCurve great_circle(std::size_t n, int covers) {
  std::vector<UnitVec3> v;
  v.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = 2.0 * kPi * covers * static_cast<double>(j) / static_cast<double>(n);
    v.emplace_back(std::cos(s), std::sin(s), 0.0);
  }
  return DiscreteCurve(std::move(v));
}

DiscreteCurve latitude_circle(double theta, std::size_t n) {
  std::vector<UnitVec3> v;
  v.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double phi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    v.emplace_back(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
  }
  return DiscreteCurve(std::move(v));
}

DiscreteCurve wobbly_circle(double amplitude, std::size_t n) {
  std::vector<UnitVec3> v;
  v.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    v.emplace_back(std::cos(s), std::sin(s), amplitude * (std::sin(2.0 * s) + 0.5 * std::cos(3.0 * s)));
  }
  return DiscreteCurve(std::move(v));
}

DiscreteCurve figure_eight(double rho, std::size_t n) {
  const Vec3 touch{1.0, 0.0, 0.0};
  const std::size_t half_n = n / 2;
  std::vector<UnitVec3> v;
  v.reserve(2 * half_n);
  for (int loop = 0; loop < 2; ++loop) {
    const double sgn = loop == 0 ? 1.0 : -1.0;
    const Vec3 centre{std::cos(rho), 0.0, sgn * std::sin(rho)};
    const Vec3 u = (touch - std::cos(rho) * centre) / std::sin(rho);
    const Vec3 w = sgn * cross(centre, u);  // both loops leave the touching point along +y
    v.emplace_back(touch);
    for (std::size_t j = 1; j < half_n; ++j) {
      const double phi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(half_n);
      v.emplace_back(std::cos(rho) * centre + std::sin(rho) * (std::cos(phi) * u + std::sin(phi) * w));
    }
  }
  return DiscreteCurve(std::move(v));
}

}  // namespace spherelab
