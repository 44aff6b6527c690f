#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "knotkit/curve.hpp"
#include "knotkit/diagrams.hpp"
#include "knotkit/errors.hpp"
#include "knotkit/parallel.hpp"
#include "knotkit/report.hpp"
#include "knotkit/rng.hpp"

namespace knotkit {

// Explicit rejection rules standing in for "full measure" genericity.
struct ProjectionTolerances {
  double param_eps = 1e-9;         // intersection parameters must lie in (eps, 1-eps)
  double angle_min = 1e-4;         // minimum crossing angle, radians
  double triple_sep_factor = 1e-6; // crossing point separation, fraction of diameter
  double depth_factor = 1e-9;      // over/under depth separation, fraction of diameter
  double touch_factor = 1e-9;      // near-touch distance, fraction of diameter
};

struct Crossing {
  int seg_i = 0, seg_j = 0;      // non-adjacent segment indices, i < j
  double param_i = 0, param_j = 0;  // intersection parameters in (0, 1)
  int sign = +1;
  bool i_over = false;
};

struct CrossingSet {
  Vec3 direction;
  std::vector<Crossing> crossings;
  bool regular = true;

  int count() const { return static_cast<int>(crossings.size()); }
  int writhe_sum() const {
    int w = 0;
    for (const auto& c : crossings) w += c.sign;
    return w;
  }
};

namespace detail {

inline double cross2(double ax, double ay, double bx, double by) { return ax * by - ay * bx; }

inline double segdist2d(double ax, double ay, double bx, double by, double cx, double cy,
                        double dx, double dy) {
  // min distance between 2D segments AB and CD via endpoint-to-segment checks
  auto pt_seg = [](double px, double py, double sx, double sy, double ex, double ey) {
    const double vx = ex - sx, vy = ey - sy;
    const double len2 = vx * vx + vy * vy;
    double t = len2 > 0 ? ((px - sx) * vx + (py - sy) * vy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double qx = sx + t * vx - px, qy = sy + t * vy - py;
    return std::sqrt(qx * qx + qy * qy);
  };
  return std::min(std::min(pt_seg(ax, ay, cx, cy, dx, dy), pt_seg(bx, by, cx, cy, dx, dy)),
                  std::min(pt_seg(cx, cy, ax, ay, bx, by), pt_seg(dx, dy, ax, ay, bx, by)));
}

}  // namespace detail

// All transverse intersections of projected non-adjacent segments along unit
// direction v. Signs follow the Gauss-integral convention
// sign = sgn(<v, t_under, t_over>), so direction-averaged signed counts
// reproduce the writhe. Degenerate events (near-tangency, near-triple-point,
// endpoint hits, cusps, ambiguous depth) flag the set irregular.
inline CrossingSet project_crossings(const KnotCurve& curve, const Vec3& v_in,
                                     const ProjectionTolerances& tol = {}) {
  const Vec3 v = v_in.normalized();
  const Vec3 e1 = any_orthogonal(v);
  const Vec3 e2 = v.cross(e1);  // (e1, e2, v) right-handed
  const int n = curve.size();
  const double diam = curve.diameter();
  const double touch = tol.touch_factor * diam;

  std::vector<double> px(n), py(n), depth(n);
  for (int i = 0; i < n; ++i) {
    px[i] = curve.point(i).dot(e1);
    py[i] = curve.point(i).dot(e2);
    depth[i] = curve.point(i).dot(v);
  }

  CrossingSet out;
  out.direction = v;

  // Cusps: projected corner folding back on itself.
  for (int i = 0; i < n; ++i) {
    const int ip = (i + n - 1) % n, in2 = (i + 1) % n;
    const double ax = px[i] - px[ip], ay = py[i] - py[ip];
    const double bx = px[in2] - px[i], by = py[in2] - py[i];
    const double na = std::hypot(ax, ay), nb = std::hypot(bx, by);
    if (na < 1e-300 || nb < 1e-300) {
      out.regular = false;
      continue;
    }
    if (ax * bx + ay * by < 0 && std::abs(detail::cross2(ax, ay, bx, by)) < tol.angle_min * na * nb)
      out.regular = false;
  }

  for (int i = 0; i < n; ++i) {
    const int i1 = (i + 1) % n;
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent across the seam
      const int j1 = (j + 1) % n;
      const double rx = px[i1] - px[i], ry = py[i1] - py[i];
      const double qx = px[j1] - px[j], qy = py[j1] - py[j];
      const double nr = std::hypot(rx, ry), nq = std::hypot(qx, qy);
      const double denom = detail::cross2(rx, ry, qx, qy);
      if (std::abs(denom) < 1e-12 * nr * nq) {
        if (detail::segdist2d(px[i], py[i], px[i1], py[i1], px[j], py[j], px[j1], py[j1]) < touch)
          out.regular = false;
        continue;
      }
      const double wx = px[j] - px[i], wy = py[j] - py[i];
      const double s = detail::cross2(wx, wy, qx, qy) / denom;
      const double t = detail::cross2(wx, wy, rx, ry) / denom;
      const double e = tol.param_eps;
      const bool inner = s > e && s < 1 - e && t > e && t < 1 - e;
      const bool boundary = s > -e && s < 1 + e && t > -e && t < 1 + e && !inner;
      if (boundary) {
        // grazing an endpoint in projection
        if (detail::segdist2d(px[i], py[i], px[i1], py[i1], px[j], py[j], px[j1], py[j1]) < touch)
          out.regular = false;
        continue;
      }
      if (!inner) continue;

      if (std::abs(denom) < std::sin(tol.angle_min) * nr * nq) out.regular = false;

      const double zi = depth[i] + s * (depth[i1] - depth[i]);
      const double zj = depth[j] + t * (depth[j1] - depth[j]);
      if (std::abs(zi - zj) < tol.depth_factor * diam) out.regular = false;

      Crossing c;
      c.seg_i = i;
      c.seg_j = j;
      c.param_i = s;
      c.param_j = t;
      c.i_over = zi > zj;
      const Vec3 di = curve.point(i + 1) - curve.point(i);
      const Vec3 dj = curve.point(j + 1) - curve.point(j);
      const double m = c.i_over ? mixed(v, dj, di) : mixed(v, di, dj);
      c.sign = m >= 0 ? +1 : -1;
      out.crossings.push_back(c);
    }
  }

  // Near-triple points.
  const double sep = tol.triple_sep_factor * diam;
  for (std::size_t a = 0; a < out.crossings.size() && out.regular; ++a) {
    const auto& ca = out.crossings[a];
    const double ax = px[ca.seg_i] + ca.param_i * (px[(ca.seg_i + 1) % n] - px[ca.seg_i]);
    const double ay = py[ca.seg_i] + ca.param_i * (py[(ca.seg_i + 1) % n] - py[ca.seg_i]);
    for (std::size_t b = a + 1; b < out.crossings.size(); ++b) {
      const auto& cb = out.crossings[b];
      const double bx = px[cb.seg_i] + cb.param_i * (px[(cb.seg_i + 1) % n] - px[cb.seg_i]);
      const double by = py[cb.seg_i] + cb.param_i * (py[(cb.seg_i + 1) % n] - py[cb.seg_i]);
      if (std::hypot(ax - bx, ay - by) < sep) {
        out.regular = false;
        break;
      }
    }
  }
  return out;
}

// Signed over/under code of a regular projection, crossings labeled by first
// encounter along the traversal.
inline KnotDiagramCode diagram_code_of(const KnotCurve& curve, const CrossingSet& cs) {
  if (!cs.regular) throw GenericityError("cannot build a diagram code from an irregular projection");
  struct Visit {
    double s;
    int crossing;
    bool over;
  };
  std::vector<Visit> visits;
  for (std::size_t c = 0; c < cs.crossings.size(); ++c) {
    const auto& cr = cs.crossings[c];
    visits.push_back({curve.param_at(cr.seg_i, cr.param_i), static_cast<int>(c), cr.i_over});
    visits.push_back({curve.param_at(cr.seg_j, cr.param_j), static_cast<int>(c), !cr.i_over});
  }
  std::sort(visits.begin(), visits.end(), [](const Visit& a, const Visit& b) { return a.s < b.s; });
  std::vector<int> label(cs.crossings.size(), 0);
  int next = 1;
  std::vector<DiagramToken> tokens;
  for (const auto& vis : visits) {
    if (label[vis.crossing] == 0) label[vis.crossing] = next++;
    tokens.push_back({label[vis.crossing], vis.over, cs.crossings[vis.crossing].sign});
  }
  return KnotDiagramCode(std::move(tokens));
}

namespace detail {

template <typename F>
FunctionalReport direction_average(const KnotCurve& curve, int samples, std::uint64_t seed,
                                   const char* method, F&& stat) {
  if (samples < 100) throw ValidationError("direction average needs at least 100 samples");
  const long long chunk = 64;
  const long long nchunks = (samples + chunk - 1) / chunk;
  std::vector<double> sum1(static_cast<std::size_t>(nchunks), 0.0);
  std::vector<double> sum2(static_cast<std::size_t>(nchunks), 0.0);
  std::vector<long long> rejected(static_cast<std::size_t>(nchunks), 0);
  parallel_for(nchunks, [&](std::int64_t b) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(b));
    const long long lo = b * chunk;
    const long long hi = std::min<long long>(samples, lo + chunk);
    double s1 = 0, s2 = 0;
    long long rej = 0;
    for (long long s = lo; s < hi; ++s) {
      double value = 0;
      while (true) {
        if (stat(rng, value)) break;
        if (++rej > 4 * chunk)
          throw GenericityError("too many irregular projections; curve looks degenerate");
      }
      s1 += value;
      s2 += value * value;
    }
    sum1[static_cast<std::size_t>(b)] = s1;
    sum2[static_cast<std::size_t>(b)] = s2;
    rejected[static_cast<std::size_t>(b)] = rej;
  });
  double s1 = 0, s2 = 0;
  long long rej = 0;
  for (long long b = 0; b < nchunks; ++b) {
    s1 += sum1[static_cast<std::size_t>(b)];
    s2 += sum2[static_cast<std::size_t>(b)];
    rej += rejected[static_cast<std::size_t>(b)];
  }
  if (rej > samples) throw GenericityError("more than half of all projection draws were irregular");
  const double mean = s1 / samples;
  const double var = std::max(0.0, s2 / samples - mean * mean);
  FunctionalReport rep;
  rep.method = method;
  rep.n = curve.size();
  rep.samples = samples;
  rep.seed = seed;
  rep.value = mean;
  rep.error = std::sqrt(var / samples);
  return rep;
}

}  // namespace detail

// Mean crossing count n(gamma; v) over uniform directions; the 1/(4 pi)
// normalization against the sphere volume makes this the plain average.
inline FunctionalReport average_crossing_number(const KnotCurve& curve, int samples,
                                                std::uint64_t seed,
                                                const ProjectionTolerances& tol = {}) {
  return detail::direction_average(curve, samples, seed, "mc-projection",
                                   [&](Rng& rng, double& value) {
                                     const CrossingSet cs = project_crossings(curve, rng.unit_vector(), tol);
                                     if (!cs.regular) return false;
                                     value = cs.count();
                                     return true;
                                   });
}

// Mean signed crossing count w(gamma; v); agrees with the writhe integral.
inline FunctionalReport average_writhe(const KnotCurve& curve, int samples, std::uint64_t seed,
                                       const ProjectionTolerances& tol = {}) {
  return detail::direction_average(curve, samples, seed, "mc-projection",
                                   [&](Rng& rng, double& value) {
                                     const CrossingSet cs = project_crossings(curve, rng.unit_vector(), tol);
                                     if (!cs.regular) return false;
                                     value = cs.writhe_sum();
                                     return true;
                                   });
}

namespace detail {

// Chords of a crossing set as arclength endpoint pairs (a < b).
inline std::vector<std::pair<double, double>> crossing_chords(const KnotCurve& curve,
                                                              const CrossingSet& cs) {
  std::vector<std::pair<double, double>> chords;
  chords.reserve(cs.crossings.size());
  for (const auto& c : cs.crossings) {
    double a = curve.param_at(c.seg_i, c.param_i);
    double b = curve.param_at(c.seg_j, c.param_j);
    if (a > b) std::swap(a, b);
    chords.emplace_back(a, b);
  }
  return chords;
}

inline bool circle_chords_interleave(const std::pair<double, double>& x,
                                     const std::pair<double, double>& y) {
  const bool a_in = y.first > x.first && y.first < x.second;
  const bool b_in = y.second > x.first && y.second < x.second;
  return a_in != b_in;
}

}  // namespace detail

// n(gamma; v1, v2): quarter-count of cyclically ordered 4-tuples whose (1,3)
// chord is a v1-crossing and (2,4) chord a v2-crossing; equivalently half the
// number of interleaved chord pairs across the two crossing sets. Both
// projections must be regular and all chord endpoints distinct.
inline double pair_crossing_count(const KnotCurve& curve, const Vec3& v1, const Vec3& v2,
                                  const ProjectionTolerances& tol = {}) {
  const CrossingSet cs1 = project_crossings(curve, v1, tol);
  if (!cs1.regular) throw GenericityError("first projection direction is not regular");
  const bool same = (v1.normalized() - v2.normalized()).norm() < 1e-15;
  const CrossingSet cs2 = same ? cs1 : project_crossings(curve, v2, tol);
  if (!cs2.regular) throw GenericityError("second projection direction is not regular");

  const auto ch1 = detail::crossing_chords(curve, cs1);
  const auto ch2 = detail::crossing_chords(curve, cs2);
  const double min_sep = 1e-9 * curve.total_length();

  double interleaved = 0;
  for (std::size_t a = 0; a < ch1.size(); ++a) {
    for (std::size_t b = 0; b < ch2.size(); ++b) {
      if (same && a == b) continue;
      const double d[4] = {std::abs(ch1[a].first - ch2[b].first),
                           std::abs(ch1[a].first - ch2[b].second),
                           std::abs(ch1[a].second - ch2[b].first),
                           std::abs(ch1[a].second - ch2[b].second)};
      for (double dd : d)
        if (dd < min_sep)
          throw GenericityError("distinctness condition fails for this direction pair");
      if (detail::circle_chords_interleave(ch1[a], ch2[b])) interleaved += 1;
    }
  }
  // Each interleaved (X, Y) combination realizes two ordered 4-tuples, and
  // the definition carries a global 1/4.
  return 0.5 * interleaved;
}

// Mean of n(gamma; v1, v2) over uniform direction pairs.
inline FunctionalReport average_x_crossing(const KnotCurve& curve, int samples, std::uint64_t seed,
                                           const ProjectionTolerances& tol = {}) {
  return detail::direction_average(curve, samples, seed, "mc-projection-pair",
                                   [&](Rng& rng, double& value) {
                                     const Vec3 v1 = rng.unit_vector();
                                     const Vec3 v2 = rng.unit_vector();
                                     try {
                                       value = pair_crossing_count(curve, v1, v2, tol);
                                     } catch (const GenericityError&) {
                                       return false;
                                     }
                                     return true;
                                   });
}

}  // namespace knotkit
