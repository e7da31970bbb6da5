#include "spherelab/discrete_elastic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "spherelab/kernels.hpp"

namespace spherelab {

namespace {

// Unit direction at p of the geodesic toward q.
Vec3 direction_toward(const Vec3& p, const Vec3& q) {
  const Vec3 t = q - dot(q, p) * p;
  const double n = norm(t);
  if (n < 1e-13) throw Error(ErrorCode::DegenerateEdge, "arc too short or antipodal to define a direction");
  return t / n;
}

}  // namespace

std::vector<VertexGeometry> vertex_geometry(const DiscreteCurve& c) {
  const std::size_t n = c.size();
  std::vector<double> len(n);
  for (std::size_t i = 0; i < n; ++i) {
    len[i] = c.edge_length(i);
    if (len[i] < 1e-12) throw Error(ErrorCode::DegenerateEdge, "zero-length arc at " + std::to_string(i));
  }
  std::vector<VertexGeometry> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<std::ptrdiff_t>(i);
    const Vec3& x = c[i];
    const Vec3 incoming = -direction_toward(x, c.at(ii - 1));
    const Vec3 outgoing = direction_toward(x, c.at(ii + 1));
    VertexGeometry& v = g[i];
    v.len_prev = len[(i + n - 1) % n];
    v.len_next = len[i];
    v.dual = 0.5 * (v.len_prev + v.len_next);
    v.turning = std::atan2(dot(cross(incoming, outgoing), x), dot(incoming, outgoing));
    v.curvature = v.turning / v.dual;
    Vec3 t = incoming + outgoing;
    const double tn = norm(t);
    if (tn < 1e-12) throw Error(ErrorCode::DegenerateEdge, "curve reverses direction at " + std::to_string(i));
    v.tangent = t / tn;
    v.normal = cross(x, v.tangent);
  }
  return g;
}

CurvatureField geodesic_curvature(const DiscreteCurve& c) {
  const auto g = vertex_geometry(c);
  CurvatureField k;
  k.values.reserve(g.size());
  for (const auto& v : g) k.values.push_back(v.curvature);
  return k;
}

double elastic_energy(const DiscreteCurve& c) {
  const auto g = vertex_geometry(c);
  std::vector<double> k(g.size()), w(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    k[i] = g[i].curvature;
    w[i] = g[i].dual;
  }
  return kernels::active().energy_sum(k.data(), w.data(), k.size());
}

VelocityField flow_velocity(const DiscreteCurve& c) {
  const std::size_t n = c.size();
  if (n < 32) throw Error(ErrorCode::TooFewVertices, "flow velocity needs at least 32 vertices");
  const auto g = vertex_geometry(c);
  VelocityField v;
  v.vectors.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double km = g[(i + n - 1) % n].curvature, k = g[i].curvature, kp = g[(i + 1) % n].curvature;
    const double lm = g[i].len_prev, lp = g[i].len_next;
    const double kss = 2.0 * ((kp - k) / lp - (k - km) / lm) / (lp + lm);
    v.vectors[i] = -(2.0 * kss + k * k * k + k) * g[i].normal;
  }
  return v;
}

double l2_norm_sq(const DiscreteCurve& c, const VelocityField& v) {
  const auto g = vertex_geometry(c);
  const std::size_t n = g.size();
  std::vector<double> x(n), y(n), z(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = v.vectors[i].x;
    y[i] = v.vectors[i].y;
    z[i] = v.vectors[i].z;
    w[i] = g[i].dual;
  }
  return kernels::active().weighted_sq_sum(x.data(), y.data(), z.data(), w.data(), n);
}

double sup_norm(const VelocityField& v) {
  double m = 0.0;
  for (const auto& x : v.vectors) m = std::max(m, norm(x));
  return m;
}

DiscreteCurve displaced(const DiscreteCurve& c, const VelocityField& v, double t) {
  std::vector<UnitVec3> out;
  out.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec3& x = c[i];
    Vec3 w = t * v.vectors[i];
    w -= dot(w, x) * x;
    out.push_back(exp_map(c[i], w));
  }
  return DiscreteCurve(std::move(out));
}

GradientCheck gradient_consistency_check(const DiscreteCurve& c, const VelocityField& field, double h) {
  if (!(h >= 1e-6 && h <= 1e-3)) throw std::invalid_argument("finite-difference step must lie in [1e-6, 1e-3]");
  GradientCheck r;
  r.field_norm_sq = l2_norm_sq(c, field);
  r.energy_rate = (elastic_energy(displaced(c, field, h)) - elastic_energy(displaced(c, field, -h))) / (2.0 * h);
  if (r.field_norm_sq < 1e-6) {
    r.near_critical = true;
    return r;
  }
  r.defect = std::abs(r.energy_rate + r.field_norm_sq) / r.field_norm_sq;
  return r;
}

}  // namespace spherelab
