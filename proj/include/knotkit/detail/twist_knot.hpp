#pragma once

// Geometric twist-knot generator. The curve is built from the standard
// k-twist + clasp plane diagram: a vertical two-strand twist region with k
// crossings, a hook closing the column at the bottom, and a rim arc that
// travels around the outside and crosses the hook twice. Over/under strands
// alternate along the traversal (the diagram is alternating), and vertices
// are lifted out of the plane by Gaussian bumps at the crossing visits.

#include <algorithm>
#include <cmath>
#include <vector>

#include "knotkit/errors.hpp"
#include "knotkit/vec3.hpp"

namespace knotkit::detail {

struct TwistSample {
  double x, y;
  int piece;
  double local;
};

struct TwistVisit {
  int piece;
  double local;
  int crossing_id;  // 0-based
};

struct TwistLayout {
  std::vector<TwistSample> samples;  // dense planar polyline, traversal order
  std::vector<TwistVisit> visits;    // 2k+4 crossing visits, unsorted
};

// Orientation convention: chosen so the emitted diagrams reproduce the
// standard alternating twist-knot codes (figure-eight at k = 2).
inline constexpr double kTwistMirror = -1.0;
inline constexpr bool kTwistOverAtOddPositions = true;

inline TwistLayout twist_layout(int k) {
  constexpr double a = 0.6;    // column half-width
  constexpr double Rx = 2.0;   // rim horizontal extent
  constexpr double c = 0.6;    // rim bottom depth
  constexpr double yh = 1.1;   // hook depth
  const double m = kTwistMirror;
  const double sgn = (k % 2 == 0) ? 1.0 : -1.0;  // cos(pi k)
  const double xe = m * (-a * sgn);               // hook start x (down-strand exit)

  TwistLayout out;
  auto add_piece = [&](int piece, int count, auto&& f) {
    for (int i = 0; i < count; ++i) {
      const double t = static_cast<double>(i) / count;  // endpoint excluded
      const auto [x, y] = f(t);
      out.samples.push_back({x, y, piece, t});
    }
  };

  const int col_n = std::max(128, 64 * k);
  // piece 0: down strand, top-left to bottom.
  add_piece(0, col_n, [&](double u) {
    return std::pair{m * (-a * std::cos(M_PI * k * u)), 1.0 - u};
  });
  // piece 1: hook, below the rim bottom.
  add_piece(1, 128, [&](double t) {
    const double s = M_PI * t;
    return std::pair{xe * std::cos(s), -yh * std::sin(s)};
  });
  // piece 2: up strand, bottom to top (local parameter runs along traversal).
  add_piece(2, col_n, [&](double w) {
    return std::pair{m * (a * std::cos(M_PI * k * (1.0 - w))), w};
  });
  // pieces 3..7: rim rectangle from (m a, 1) around to (-m a, 1).
  const Vec3 wp[6] = {{m * a, 1, 0},   {m * Rx, 1, 0}, {m * Rx, -c, 0},
                      {-m * Rx, -c, 0}, {-m * Rx, 1, 0}, {-m * a, 1, 0}};
  const int rim_counts[5] = {64, 96, 192, 96, 64};
  for (int seg = 0; seg < 5; ++seg) {
    add_piece(3 + seg, rim_counts[seg], [&](double t) {
      const Vec3 p = wp[seg] + (wp[seg + 1] - wp[seg]) * t;
      return std::pair{p.x, p.y};
    });
  }

  // Crossing visits. Column crossing j (0-based) sits at u_j, where the two
  // strand abscissas coincide (cos = 0).
  for (int j = 0; j < k; ++j) {
    const double uj = (j + 0.5) / k;
    out.visits.push_back({0, uj, j});
    out.visits.push_back({2, 1.0 - uj, j});
  }
  // Clasp: hook crosses the rim bottom at sin s = c / yh.
  const double sa = std::asin(c / yh);
  const double hook_x1 = xe * std::cos(sa);        // hook's first clasp visit
  const double hook_x2 = -hook_x1;                 // second
  out.visits.push_back({1, sa / M_PI, k});         // C1 on the hook
  out.visits.push_back({1, (M_PI - sa) / M_PI, k + 1});
  // Rim bottom runs from x = m Rx to x = -m Rx; local parameter of a given x.
  auto rim_local = [&](double x) { return (1.0 - x / (m * Rx)) / 2.0; };
  out.visits.push_back({5, rim_local(hook_x1), k});
  out.visits.push_back({5, rim_local(hook_x2), k + 1});
  return out;
}

inline KnotCurve sample_twist_knot(int k, int n, const CurveValidation& val) {
  TwistLayout lay = twist_layout(k);
  const int M = static_cast<int>(lay.samples.size());

  // Cumulative planar arclength per sample.
  std::vector<double> cum(M + 1, 0.0);
  auto planar = [&](int i) {
    const auto& s = lay.samples[i % M];
    return Vec3{s.x, s.y, 0.0};
  };
  for (int i = 0; i < M; ++i) cum[i + 1] = cum[i] + (planar(i + 1) - planar(i)).norm();
  const double L = cum[M];

  // Arclength position of a (piece, local) visit by bracketing samples.
  auto visit_arclength = [&](const TwistVisit& v) {
    int lo = 0, hi = M - 1;
    // samples are ordered by (piece, local)
    while (lo < hi) {
      const int mid = (lo + hi + 1) / 2;
      const auto& s = lay.samples[mid];
      if (s.piece < v.piece || (s.piece == v.piece && s.local <= v.local))
        lo = mid;
      else
        hi = mid - 1;
    }
    const auto& s0 = lay.samples[lo];
    const double step_local = (lo + 1 < M && lay.samples[lo + 1].piece == s0.piece)
                                  ? lay.samples[lo + 1].local - s0.local
                                  : 1.0 - s0.local;
    const double frac = step_local > 0 ? (v.local - s0.local) / step_local : 0.0;
    return cum[lo] + frac * (cum[lo + 1] - cum[lo]);
  };

  struct Bump {
    double t, width, sign;
  };
  // Traversal position of each visit decides over/under (alternating diagram).
  std::vector<int> order(lay.visits.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::vector<double> vt(lay.visits.size());
  for (std::size_t i = 0; i < lay.visits.size(); ++i) vt[i] = visit_arclength(lay.visits[i]);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return vt[a] < vt[b]; });

  std::vector<Bump> bumps;
  const int nv = static_cast<int>(order.size());
  for (int pos = 0; pos < nv; ++pos) {
    const double t = vt[order[pos]];
    const double t_prev = vt[order[(pos + nv - 1) % nv]];
    const double t_next = vt[order[(pos + 1) % nv]];
    auto cyc = [&](double d) {
      d = std::fmod(std::fabs(d), L);
      return std::min(d, L - d);
    };
    const double gap = std::min(cyc(t - t_prev), cyc(t_next - t));
    const bool over = ((pos + 1) % 2 == 1) == kTwistOverAtOddPositions;
    bumps.push_back({t, std::min(0.22 * gap, 0.35), over ? 1.0 : -1.0});
  }

  constexpr double h = 0.35;
  std::vector<Vec3> pts(M);
  for (int i = 0; i < M; ++i) {
    double z = 0.0;
    for (const auto& b : bumps) {
      double d = std::fmod(std::fabs(cum[i] - b.t), L);
      d = std::min(d, L - d);
      if (d < 6.0 * b.width) z += b.sign * h * std::exp(-(d / b.width) * (d / b.width));
    }
    pts[i] = {lay.samples[i].x, lay.samples[i].y, z};
  }

  const KnotCurve dense = KnotCurve::from_points(std::move(pts), val);
  return resample_arclength(dense, n, val);
}

}  // namespace knotkit::detail
