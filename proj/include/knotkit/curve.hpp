#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "knotkit/errors.hpp"
#include "knotkit/rng.hpp"
#include "knotkit/vec3.hpp"

namespace knotkit {

struct CurveValidation {
  // Reject curves whose non-adjacent segment gap is below this fraction of
  // total length; energy integrands blow up near self-contact.
  double embed_tol_factor = 1e-6;
  bool check_embedded = true;
};

namespace detail {

// Closest distance between segments [p1,p2] and [q1,q2] (clamped).
inline double segment_distance(const Vec3& p1, const Vec3& p2, const Vec3& q1, const Vec3& q2) {
  const Vec3 d1 = p2 - p1, d2 = q2 - q1, r = p1 - q1;
  const double a = d1.norm2(), e = d2.norm2(), f = d2.dot(r);
  double s = 0, t = 0;
  if (a <= 1e-30 && e <= 1e-30) return r.norm();
  if (a <= 1e-30) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= 1e-30) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 1e-30 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0) {
        t = 0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1) {
        t = 1;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return (p1 + d1 * s - (q1 + d2 * t)).norm();
}

// Discrete curvature at b from the circumradius through (a, b, c).
inline double circum_curvature(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double ab = (b - a).norm(), bc = (c - b).norm(), ca = (a - c).norm();
  const double area2 = (b - a).cross(c - a).norm();
  const double denom = ab * bc * ca;
  if (denom < 1e-300) return 0.0;
  return 2.0 * area2 / denom;
}

}  // namespace detail

// Closed, oriented, embedded polygonal space curve with cached tangents and
// an arclength table. Immutable after construction; all operations on it are
// pure functions, safe to share across workers.
//
// Segment lengths carry a small curvature-based correction (chord-to-arc,
// factor 1 + (kappa * len)^2 / 24) so that cumlen approximates the arc length
// of the smooth curve the samples came from rather than the inscribed
// polygon; this is what makes the inverse-square energy quadratures land on
// the smooth-curve values at moderate N.
class KnotCurve {
 public:
  static constexpr int kMinPoints = 16;

  static KnotCurve from_points(std::vector<Vec3> pts, const CurveValidation& val = {}) {
    return KnotCurve(std::move(pts), val);
  }

  int size() const { return static_cast<int>(points_.size()); }
  const Vec3& point(int i) const { return points_[wrap(i)]; }
  const Vec3& tangent(int i) const { return tangents_[wrap(i)]; }
  const std::vector<Vec3>& points() const { return points_; }

  // Length of segment (i, i+1), corrected toward the smooth arc.
  double segment_length(int i) const { return seglen_[wrap(i)]; }
  double raw_segment_length(int i) const { return raw_seglen_[wrap(i)]; }
  // Quadrature weight of vertex i: half the two adjacent segments.
  double ds(int i) const { return ds_[wrap(i)]; }
  // Arclength position of vertex i in [0, total_length).
  double cumlen(int i) const { return cumlen_[wrap_pos(i)]; }
  double total_length() const { return total_length_; }
  double diameter() const { return diameter_; }
  double min_segment_gap() const { return min_gap_; }
  Vec3 centroid() const { return centroid_; }

  // Arclength position of the point at parameter t in segment i.
  double param_at(int i, double t) const { return cumlen_[wrap(i)] + t * seglen_[wrap(i)]; }

  // Intrinsic arc distance D: min over the two sub-arcs between vertices.
  double arc_distance(int i, int j) const {
    double fwd = cumlen_[wrap(j)] - cumlen_[wrap(i)];
    if (fwd < 0) fwd += total_length_;
    return std::min(fwd, total_length_ - fwd);
  }

  // Arc distance between two arclength positions.
  double arc_distance_s(double s1, double s2) const {
    double fwd = std::fmod(s2 - s1, total_length_);
    if (fwd < 0) fwd += total_length_;
    return std::min(fwd, total_length_ - fwd);
  }

  // Cyclic index offset |i-j|.
  int cyclic_offset(int i, int j) const {
    const int n = size();
    int d = std::abs(wrap(i) - wrap(j));
    return std::min(d, n - d);
  }

  // Catmull-Rom interpolated position at arclength s (wraps around).
  // Accurate for near-uniform vertex spacing, which resampling produces.
  Vec3 eval_at(double s) const {
    const auto [k, lam] = locate(s);
    const Vec3 &p0 = point(k - 1), &p1 = point(k), &p2 = point(k + 1), &p3 = point(k + 2);
    const double l2 = lam * lam, l3 = l2 * lam;
    return (p1 * 2.0 + (p2 - p0) * lam + (p0 * 2.0 - p1 * 5.0 + p2 * 4.0 - p3) * l2 +
            (p1 * 3.0 - p0 - p2 * 3.0 + p3) * l3) *
           0.5;
  }

  Vec3 tangent_at(double s) const {
    const auto [k, lam] = locate(s);
    const Vec3 &p0 = point(k - 1), &p1 = point(k), &p2 = point(k + 1), &p3 = point(k + 2);
    const double l2 = lam * lam;
    const Vec3 d = ((p2 - p0) + (p0 * 2.0 - p1 * 5.0 + p2 * 4.0 - p3) * (2.0 * lam) +
                    (p1 * 3.0 - p0 - p2 * 3.0 + p3) * (3.0 * l2)) *
                   0.5;
    return d.normalized();
  }

 private:
  KnotCurve(std::vector<Vec3> pts, const CurveValidation& val) : points_(std::move(pts)) {
    const int n = size();
    if (n < kMinPoints)
      throw ValidationError("curve needs at least " + std::to_string(kMinPoints) + " points, got " +
                            std::to_string(n));

    raw_seglen_.resize(n);
    double raw_total = 0.0;
    for (int i = 0; i < n; ++i) {
      raw_seglen_[i] = (points_[(i + 1) % n] - points_[i]).norm();
      raw_total += raw_seglen_[i];
    }
    if (raw_total <= 0) throw ValidationError("degenerate curve: zero length");
    for (int i = 0; i < n; ++i)
      if (raw_seglen_[i] <= 1e-12 * raw_total)
        throw ValidationError("consecutive points coincide at index " + std::to_string(i));

    // Chord-to-arc correction, clamped for corner vertices where the
    // circumradius estimate is meaningless.
    std::vector<double> kappa(n);
    for (int i = 0; i < n; ++i)
      kappa[i] = detail::circum_curvature(points_[(i + n - 1) % n], points_[i], points_[(i + 1) % n]);
    seglen_.resize(n);
    for (int i = 0; i < n; ++i) {
      const double kb = 0.5 * (kappa[i] + kappa[(i + 1) % n]);
      const double corr = std::min(kb * kb * raw_seglen_[i] * raw_seglen_[i] / 24.0, 0.05);
      seglen_[i] = raw_seglen_[i] * (1.0 + corr);
    }

    cumlen_.resize(n + 1);
    cumlen_[0] = 0.0;
    for (int i = 0; i < n; ++i) cumlen_[i + 1] = cumlen_[i] + seglen_[i];
    total_length_ = cumlen_[n];

    ds_.resize(n);
    for (int i = 0; i < n; ++i) ds_[i] = 0.5 * (seglen_[(i + n - 1) % n] + seglen_[i]);

    tangents_.resize(n);
    for (int i = 0; i < n; ++i) {
      const Vec3 d = points_[(i + 1) % n] - points_[(i + n - 1) % n];
      const double dn = d.norm();
      if (dn <= 1e-300) throw ValidationError("degenerate tangent at index " + std::to_string(i));
      tangents_[i] = d / dn;
    }

    centroid_ = {0, 0, 0};
    for (const auto& p : points_) centroid_ += p;
    centroid_ = centroid_ / n;

    diameter_ = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        diameter_ = std::max(diameter_, (points_[i] - points_[j]).norm2());
    diameter_ = std::sqrt(diameter_);

    min_gap_ = std::numeric_limits<double>::infinity();
    if (val.check_embedded) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 2; j < n; ++j) {
          if (i == 0 && j == n - 1) continue;  // adjacent across the seam
          const double d = detail::segment_distance(points_[i], points_[(i + 1) % n], points_[j],
                                                    points_[(j + 1) % n]);
          min_gap_ = std::min(min_gap_, d);
        }
      }
      if (!(min_gap_ > val.embed_tol_factor * total_length_))
        throw ValidationError("curve is not embedded: non-adjacent segment gap " +
                              std::to_string(min_gap_) + " below threshold");
    }
  }

  int wrap(int i) const {
    const int n = size();
    i %= n;
    return i < 0 ? i + n : i;
  }
  int wrap_pos(int i) const { return i == size() ? i : wrap(i); }

  std::pair<int, double> locate(double s) const {
    s = std::fmod(s, total_length_);
    if (s < 0) s += total_length_;
    const auto it = std::upper_bound(cumlen_.begin(), cumlen_.end(), s);
    int k = static_cast<int>(it - cumlen_.begin()) - 1;
    k = std::clamp(k, 0, size() - 1);
    return {k, (s - cumlen_[k]) / seglen_[k]};
  }

  std::vector<Vec3> points_;
  std::vector<Vec3> tangents_;
  std::vector<double> raw_seglen_, seglen_, ds_;
  std::vector<double> cumlen_;
  double total_length_ = 0, diameter_ = 0, min_gap_ = 0;
  Vec3 centroid_;
};

inline double arc_distance(const KnotCurve& c, int i, int j) { return c.arc_distance(i, j); }

// n points equally spaced in (corrected) arclength, interpolated with the
// cubic kernel; total length is preserved to the interpolation error.
inline KnotCurve resample_arclength(const KnotCurve& curve, int n,
                                    const CurveValidation& val = {}) {
  if (n < KnotCurve::kMinPoints)
    throw ValidationError("resample target below minimum point count");
  std::vector<Vec3> pts(static_cast<std::size_t>(n));
  const double h = curve.total_length() / n;
  for (int m = 0; m < n; ++m) pts[m] = curve.eval_at(m * h);
  return KnotCurve::from_points(std::move(pts), val);
}

// ---------------------------------------------------------------------------
// Zoo of generator families.

enum class ZooFamily { Circle, Ellipse, Torus2q, Twist, Fourier, PerturbedCircle };

struct FourierTerm {
  int axis = 0;      // 0=x 1=y 2=z
  int harmonic = 1;  // multiplies t
  double cos_coeff = 0;
  double sin_coeff = 0;
};

struct ZooSpec {
  ZooFamily family = ZooFamily::Circle;
  int samples = 256;
  double r = 1.0;           // circle radius / torus tube radius
  double a = 2.0, b = 1.0;  // ellipse semi-axes
  int q = 3;                // torus2q winding (odd >= 3)
  double R = 2.0;           // torus major radius
  int k = 1;                // twist count
  double amplitude = 0.05;  // perturbed circle
  int mode = 7;
  std::uint64_t seed = 1;
  std::vector<FourierTerm> fourier;

  static ZooSpec parse(const std::string& text);
  void validate() const;
};

// Fourier coefficients of the standard figure-eight parameterization
//   ((2+cos 2t) cos 3t, (2+cos 2t) sin 3t, sin 4t).
inline std::vector<FourierTerm> figure_eight_fourier() {
  return {{0, 3, 2.0, 0.0}, {0, 1, 0.5, 0.0}, {0, 5, 0.5, 0.0},
          {1, 3, 0.0, 2.0}, {1, 1, 0.0, 0.5}, {1, 5, 0.0, 0.5},
          {2, 4, 0.0, 1.0}};
}

namespace detail {

inline Vec3 eval_fourier(const std::vector<FourierTerm>& terms, double t) {
  Vec3 p{0, 0, 0};
  for (const auto& term : terms) {
    const double v = term.cos_coeff * std::cos(term.harmonic * t) +
                     term.sin_coeff * std::sin(term.harmonic * t);
    if (term.axis == 0)
      p.x += v;
    else if (term.axis == 1)
      p.y += v;
    else
      p.z += v;
  }
  return p;
}

// Dense parametric sampling followed by arclength resampling.
template <typename F>
KnotCurve sample_parametric(F&& gamma, int n, const CurveValidation& val = {}) {
  const int dense = std::clamp(4 * n, 1024, 8192);
  std::vector<Vec3> pts(static_cast<std::size_t>(dense));
  for (int i = 0; i < dense; ++i) pts[i] = gamma(2.0 * M_PI * i / dense);
  const KnotCurve raw = KnotCurve::from_points(std::move(pts), val);
  return resample_arclength(raw, n, val);
}

KnotCurve sample_twist_knot(int k, int n, const CurveValidation& val);

}  // namespace detail

inline void ZooSpec::validate() const {
  if (samples < KnotCurve::kMinPoints) throw ValidationError("zoo spec: n must be >= 16");
  switch (family) {
    case ZooFamily::Circle:
      if (r <= 0) throw ValidationError("circle: r must be positive");
      break;
    case ZooFamily::Ellipse:
      if (a <= 0 || b <= 0) throw ValidationError("ellipse: axes must be positive");
      break;
    case ZooFamily::Torus2q:
      if (q < 3 || q % 2 == 0) throw ValidationError("torus2q: q must be odd and >= 3");
      if (R <= 0 || r <= 0 || R <= r) throw ValidationError("torus2q: need R > r > 0");
      break;
    case ZooFamily::Twist:
      if (k < 1 || k > 12) throw ValidationError("twist: k must be in 1..12");
      break;
    case ZooFamily::Fourier:
      if (fourier.empty()) throw ValidationError("fourier: empty coefficient list");
      break;
    case ZooFamily::PerturbedCircle:
      if (amplitude <= 0 || amplitude >= 0.5)
        throw ValidationError("perturbed_circle: amplitude must be in (0, 0.5)");
      if (mode < 1) throw ValidationError("perturbed_circle: mode must be >= 1");
      break;
  }
}

// Deterministic in the spec (including the seed).
inline KnotCurve sample_zoo(const ZooSpec& spec, const CurveValidation& val = {}) {
  spec.validate();
  const int n = spec.samples;
  switch (spec.family) {
    case ZooFamily::Circle: {
      // Uniform parameter is uniform arclength; place vertices exactly on it.
      std::vector<Vec3> pts(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        const double t = 2.0 * M_PI * i / n;
        pts[i] = {spec.r * std::cos(t), spec.r * std::sin(t), 0.0};
      }
      return KnotCurve::from_points(std::move(pts), val);
    }
    case ZooFamily::Ellipse:
      return detail::sample_parametric(
          [&](double t) { return Vec3{spec.a * std::cos(t), spec.b * std::sin(t), 0.0}; }, n, val);
    case ZooFamily::Torus2q:
      return detail::sample_parametric(
          [&](double t) {
            const double rho = spec.R + spec.r * std::cos(spec.q * t);
            return Vec3{rho * std::cos(2 * t), rho * std::sin(2 * t), spec.r * std::sin(spec.q * t)};
          },
          n, val);
    case ZooFamily::Fourier:
      return detail::sample_parametric([&](double t) { return detail::eval_fourier(spec.fourier, t); },
                                       n, val);
    case ZooFamily::PerturbedCircle: {
      Rng rng(spec.seed);
      const double phi1 = rng.uniform(0, 2 * M_PI);
      const double phi2 = rng.uniform(0, 2 * M_PI);
      return detail::sample_parametric(
          [&](double t) {
            const double rad = 1.0 + spec.amplitude * std::cos(spec.mode * t + phi1);
            return Vec3{rad * std::cos(t), rad * std::sin(t),
                        spec.amplitude * std::sin(spec.mode * t + phi2)};
          },
          n, val);
    }
    case ZooFamily::Twist:
      return detail::sample_twist_knot(spec.k, n, val);
  }
  throw ValidationError("unknown zoo family");
}

}  // namespace knotkit

#include "knotkit/detail/twist_knot.hpp"
#include "knotkit/detail/zoo_parse.hpp"
