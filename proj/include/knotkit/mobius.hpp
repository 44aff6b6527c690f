#pragma once

#include <cmath>
#include <variant>
#include <vector>

#include "knotkit/curve.hpp"
#include "knotkit/errors.hpp"
#include "knotkit/vec3.hpp"

namespace knotkit {

struct SphereInversion {
  Vec3 center;
  double radius = 1.0;
};

struct Similarity {
  Mat3 rotation;  // orthogonal, det +1
  double scale = 1.0;
  Vec3 translation;
};

using MobiusStep = std::variant<SphereInversion, Similarity>;

// Composition of sphere inversions and similarities acting on R^3 u {inf};
// steps apply left to right.
struct MobiusTransform {
  std::vector<MobiusStep> steps;

  void validate() const {
    for (const auto& step : steps) {
      if (const auto* inv = std::get_if<SphereInversion>(&step)) {
        if (!(inv->radius > 0)) throw ValidationError("inversion radius must be positive");
      } else {
        const auto& sim = std::get<Similarity>(step);
        if (!(sim.scale > 0)) throw ValidationError("similarity scale must be positive");
        const Mat3 rtr = sim.rotation.transposed() * sim.rotation;
        double dev = 0;
        for (int i = 0; i < 9; ++i)
          dev = std::max(dev, std::abs(rtr.m[i] - (i % 4 == 0 ? 1.0 : 0.0)));
        if (dev > 1e-9 || std::abs(sim.rotation.det() - 1.0) > 1e-9)
          throw ValidationError("similarity rotation must be orthogonal with det +1");
      }
    }
  }
};

inline Vec3 apply_step(const MobiusStep& step, const Vec3& p) {
  if (const auto* inv = std::get_if<SphereInversion>(&step)) {
    const Vec3 d = p - inv->center;
    const double n2 = d.norm2();
    if (n2 < 1e-300) throw PoleError("point hits an inversion center");
    return inv->center + d * (inv->radius * inv->radius / n2);
  }
  const auto& sim = std::get<Similarity>(step);
  return sim.rotation * p * sim.scale + sim.translation;
}

inline Vec3 apply_transform(const MobiusTransform& t, Vec3 p) {
  for (const auto& step : t.steps) p = apply_step(step, p);
  return p;
}

// Image direction of a unit tangent under the transform's differential at p.
inline Vec3 apply_differential(const MobiusTransform& t, Vec3 p, Vec3 dir) {
  for (const auto& step : t.steps) {
    if (const auto* inv = std::get_if<SphereInversion>(&step)) {
      const Vec3 d = p - inv->center;
      const double n2 = d.norm2();
      if (n2 < 1e-300) throw PoleError("differential evaluated at an inversion center");
      // dI(v) = (r^2/|d|^2) (v - 2 (v.d) d / |d|^2)
      dir = (dir - d * (2.0 * dir.dot(d) / n2)) * (inv->radius * inv->radius / n2);
    } else {
      const auto& sim = std::get<Similarity>(step);
      dir = sim.rotation * dir * sim.scale;
    }
    p = apply_step(step, p);
  }
  return dir.normalized();
}

// Pointwise image of the curve, re-validated and resampled to uniform
// arclength. Every inversion center must stay off the polygon by a margin.
inline KnotCurve transform_curve(const MobiusTransform& t, const KnotCurve& curve,
                                 const CurveValidation& val = {}) {
  t.validate();
  const int n = curve.size();
  // Safety margin check against the piecewise-linear curve, step by step.
  std::vector<Vec3> pts = curve.points();
  for (const auto& step : t.steps) {
    if (const auto* inv = std::get_if<SphereInversion>(&step)) {
      double min_d = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i)
        min_d = std::min(min_d, detail::segment_distance(pts[i], pts[(i + 1) % n], inv->center,
                                                         inv->center));
      double scale = 0;
      for (const auto& p : pts) scale = std::max(scale, (p - inv->center).norm());
      if (min_d < 1e-9 * scale)
        throw PoleError("inversion center too close to the curve");
    }
    for (auto& p : pts) p = apply_step(step, p);
  }
  const KnotCurve image = KnotCurve::from_points(std::move(pts), val);
  return resample_arclength(image, n, val);
}

// Conformal angle between the two round circles through (p1, p2) tangent to
// t1 at p1 and t2 at p2. Computed by reflecting t1 across the chord:
// u' = 2 (u.w) w - u, alpha = angle(u', t2). cos(alpha) = 2 (u.w)(v.w) - u.v,
// manifestly symmetric in the two points. Range [0, pi], orientation-blind.
inline double conformal_angle(const Vec3& p1, const Vec3& t1, const Vec3& p2, const Vec3& t2) {
  const Vec3 d = p2 - p1;
  const double n2 = d.norm2();
  if (n2 < 1e-300) throw ValidationError("conformal angle needs distinct points");
  const double inv = 1.0 / std::sqrt(n2);
  const Vec3 w = d * inv;
  const double c = 2.0 * t1.dot(w) * t2.dot(w) - t1.dot(t2);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

// cos / (1 - cos) / sin of the conformal angle without the acos round trip.
inline double conformal_cos(const Vec3& p1, const Vec3& t1, const Vec3& p2, const Vec3& t2) {
  const Vec3 d = p2 - p1;
  const double n2 = d.norm2();
  const Vec3 w = d / std::sqrt(n2);
  return std::clamp(2.0 * t1.dot(w) * t2.dot(w) - t1.dot(t2), -1.0, 1.0);
}

// Open polyline with a fixed asymptotic direction; the image of a closed
// curve under inversion about one of its points.
struct OpenCurve {
  std::vector<Vec3> points;
  Vec3 asymptotic_dir{1, 0, 0};

  void validate() const {
    if (points.size() < 2) throw ValidationError("open curve needs at least two points");
    if (std::abs(asymptotic_dir.norm() - 1.0) > 1e-9)
      throw ValidationError("asymptotic direction must be unit");
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
      if ((points[i + 1] - points[i]).norm2() < 1e-300)
        throw ValidationError("open curve has coincident consecutive points");
  }
};

// Move vertex i to the origin, rotate its tangent onto +x, drop `window`
// vertices on each side of i, and invert x -> x/|x|^2. The image is an
// asymptotically horizontal curve whose direction is +x.
inline OpenCurve invert_at_curve_point(const KnotCurve& curve, int i, int window = 2) {
  const int n = curve.size();
  if (window < 1 || 2 * window + 1 >= n)
    throw ValidationError("inversion window leaves too few points");
  const Vec3 origin = curve.point(i);
  const Mat3 rot = Mat3::rotation_between(curve.tangent(i), Vec3{1, 0, 0});

  OpenCurve out;
  out.asymptotic_dir = {1, 0, 0};
  out.points.reserve(n - 2 * window - 1);
  for (int k = i + window + 1; k <= i + n - window - 1; ++k) {
    const Vec3 q = rot * (curve.point(k) - origin);
    const double n2 = q.norm2();
    if (n2 < 1e-300) throw PoleError("curve point coincides with the inversion point");
    out.points.push_back(q / n2);
  }
  out.validate();
  return out;
}

// Polygonal sum of (1 - cos theta) ds against the asymptotic direction;
// finite and non-negative, zero exactly for a straight run along it.
inline double horizontal_excess_length(const OpenCurve& c) {
  c.validate();
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < c.points.size(); ++k) {
    const Vec3 seg = c.points[k + 1] - c.points[k];
    const double len = seg.norm();
    total += len - seg.dot(c.asymptotic_dir);
  }
  return total;
}

}  // namespace knotkit
