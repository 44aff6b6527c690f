#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "knotkit/curve.hpp"
#include "knotkit/diagrams.hpp"
#include "knotkit/energies.hpp"
#include "knotkit/errors.hpp"
#include "knotkit/parallel.hpp"
#include "knotkit/report.hpp"
#include "knotkit/rng.hpp"

namespace knotkit {

enum class Signedness { Signed, Unsigned };

struct MCConfig {
  long long samples = 1'000'000;
  std::uint64_t seed = 1;
  double spatial_scale = 0.0;     // 0 = curve diameter
  double exclusion_factor = 1e-2;  // exclusion radius = factor * L / N

  void validate() const {
    if (samples < 1000) throw ValidationError("MC config: need at least 1000 samples");
  }
};

namespace detail {

// Per-pair Gauss term: <gamma_j - gamma_i, t_i, t_j> / (4 pi |chord|^3),
// weighted by ds_i ds_j. Symmetric in (i, j).
inline double gauss_term(const KnotCurve& c, int i, int j) {
  const Vec3 d = c.point(j) - c.point(i);
  const double r2 = d.norm2();
  const double r3 = r2 * std::sqrt(r2);
  return mixed(d, c.tangent(i), c.tangent(j)) / (4.0 * M_PI * r3) * c.ds(i) * c.ds(j);
}

inline std::vector<double> gauss_matrix(const KnotCurve& c, int skip, bool absolute) {
  const int n = c.size();
  std::vector<double> k(static_cast<std::size_t>(n) * n, 0.0);
  parallel_for(n, [&](std::int64_t i64) {
    const int i = static_cast<int>(i64);
    for (int j = 0; j < n; ++j) {
      if (c.cyclic_offset(i, j) <= skip) continue;
      const double g = gauss_term(c, i, j);
      k[static_cast<std::size_t>(i) * n + j] = absolute ? std::abs(g) : g;
    }
  });
  return k;
}

// Triangular tail sums T(a, b) = sum over a <= x < y <= b of Kd[x][y],
// in unrolled cyclic coordinates; used for the non-interleaved 2-chord
// contraction patterns.
class TriangularSums {
 public:
  TriangularSums(const std::vector<double>& k, int n) : n_(n), k_(k) {
    const int m = 2 * n;
    col_prefix_.assign(static_cast<std::size_t>(m) * (m + 1), 0.0);
    for (int b = 0; b < m; ++b) {
      double s = 0.0;
      for (int x = 0; x < m; ++x) {
        cp(b, x) = s;
        s += kd(x, b);
      }
      cp(b, m) = s;
    }
  }

  // sum over pairs a <= x < y <= b; b < a means empty.
  double operator()(int a, int b) const {
    double total = 0.0;
    for (int y = a + 1; y <= b; ++y) total += cp(y % (2 * n_), y) - cp(y % (2 * n_), a);
    return total;
  }

 private:
  double kd(int a, int b) const { return k_[static_cast<std::size_t>(a % n_) * n_ + (b % n_)]; }
  double& cp(int b, int x) { return col_prefix_[static_cast<std::size_t>(b) * (2 * n_ + 1) + x]; }
  double cp(int b, int x) const {
    return col_prefix_[static_cast<std::size_t>(b) * (2 * n_ + 1) + x];
  }

  int n_;
  const std::vector<double>& k_;
  std::vector<double> col_prefix_;
};

enum class TwoChordShape { Interleaved, Disjoint, Nested };

inline TwoChordShape two_chord_shape(const ChordDiagram& d) {
  switch (d.partner(0)) {
    case 2: return TwoChordShape::Interleaved;
    case 1: return TwoChordShape::Disjoint;
    default: return TwoChordShape::Nested;
  }
}

// Sum of the 2-chord product over cyclically ordered 4-tuples for the three
// possible pairings of positions (0,1,2,3).
inline double two_chord_tuple_sum(const std::vector<double>& k, int n, TwoChordShape shape) {
  if (shape == TwoChordShape::Interleaved) return interleaved_four_tuple_sum(k, n);
  auto kd = [&](int a, int b) { return k[static_cast<std::size_t>(a % n) * n + (b % n)]; };
  const TriangularSums tri(k, n);
  std::vector<double> partial(static_cast<std::size_t>(n), 0.0);
  parallel_for(n, [&](std::int64_t i64) {
    const int u1 = static_cast<int>(i64);
    double acc = 0.0;
    if (shape == TwoChordShape::Disjoint) {
      // chords (u1,u2)(u3,u4): remaining pair lives in (u2, u1+n).
      for (int u2 = u1 + 1; u2 <= u1 + n - 3; ++u2) {
        const double k12 = kd(u1, u2);
        if (k12 == 0.0) continue;
        acc += k12 * tri(u2 + 1, u1 + n - 1);
      }
    } else {
      // chords (u1,u4)(u2,u3): inner pair lives in (u1, u4).
      for (int u4 = u1 + 3; u4 <= u1 + n - 1; ++u4) {
        const double k14 = kd(u1, u4);
        if (k14 == 0.0) continue;
        acc += k14 * tri(u1 + 1, u4 - 1);
      }
    }
    partial[static_cast<std::size_t>(u1)] = acc;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

// Exact sum for a 3-chord diagram: enumerate cyclically ordered 6-tuples.
inline double three_chord_tuple_sum(const std::vector<double>& k, int n,
                                    const ChordDiagram& d) {
  if (n > 72)
    throw ResourceError("exact 3-chord grid sum is limited to N <= 72; use the MC estimator");
  auto kd = [&](int a, int b) { return k[static_cast<std::size_t>(a % n) * n + (b % n)]; };
  const auto chords = d.chord_list();
  std::vector<double> partial(static_cast<std::size_t>(n), 0.0);
  parallel_for(n, [&](std::int64_t i64) {
    const int u1 = static_cast<int>(i64);
    int t[6];
    t[0] = u1;
    double acc = 0.0;
    for (t[1] = u1 + 1; t[1] <= u1 + n - 5; ++t[1])
      for (t[2] = t[1] + 1; t[2] <= u1 + n - 4; ++t[2])
        for (t[3] = t[2] + 1; t[3] <= u1 + n - 3; ++t[3])
          for (t[4] = t[3] + 1; t[4] <= u1 + n - 2; ++t[4])
            for (t[5] = t[4] + 1; t[5] <= u1 + n - 1; ++t[5]) {
              double prod = 1.0;
              for (const auto& [a, b] : chords) prod *= kd(t[a], t[b]);
              acc += prod;
            }
    partial[static_cast<std::size_t>(u1)] = acc;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace detail

// Classical writhe: the single-chord Gauss functional over ordered pairs.
inline FunctionalReport writhe(const KnotCurve& c, const QuadratureConfig& cfg = {}) {
  const int skip = std::max(1, cfg.diagonal_skip);
  return detail::with_richardson(c, cfg, "grid", [&](const KnotCurve& k) {
    const int n = k.size();
    return parallel_sum(
        n,
        [&](std::int64_t i64) {
          const int i = static_cast<int>(i64);
          double row = 0.0;
          for (int j = 0; j < n; ++j)
            if (k.cyclic_offset(i, j) > skip) row += detail::gauss_term(k, i, j);
          return row;
        },
        1);
  });
}

// Gauss-diagram functional: integral over cyclically ordered 2n-tuples of the
// product of per-chord Gauss terms (signed) or of their absolute values.
// Exact grid evaluation for n <= 3 chords; use gauss_functional_mc beyond.
inline FunctionalReport gauss_functional(const KnotCurve& c, const GaussDiagram& d,
                                         Signedness sgn, const QuadratureConfig& cfg = {}) {
  const int nch = d.chords();
  if (nch < 1) throw ValidationError("gauss functional needs at least one chord");
  if (nch > 3)
    throw ResourceError("exact grid mode supports at most 3 chords; use gauss_functional_mc");
  const int skip = std::max(1, cfg.diagonal_skip);
  const bool absolute = sgn == Signedness::Unsigned;

  return detail::with_richardson(c, cfg, absolute ? "grid-abs" : "grid", [&](const KnotCurve& k) {
    if (nch == 1) {
      const int n = k.size();
      return parallel_sum(
          n,
          [&](std::int64_t i64) {
            const int i = static_cast<int>(i64);
            double row = 0.0;
            for (int j = 0; j < n; ++j) {
              if (k.cyclic_offset(i, j) <= skip) continue;
              const double g = detail::gauss_term(k, i, j);
              row += absolute ? std::abs(g) : g;
            }
            return row;
          },
          1);
    }
    const auto mat = detail::gauss_matrix(k, skip, absolute);
    if (nch == 2) return detail::two_chord_tuple_sum(mat, k.size(), detail::two_chord_shape(d));
    return detail::three_chord_tuple_sum(mat, k.size(), d);
  });
}

// Monte Carlo estimate of the same tuple sum, for any chord count: uniform
// cyclically ordered index tuples (random subset + random starting rotation),
// scaled by the number of admissible tuples.
inline FunctionalReport gauss_functional_mc(const KnotCurve& c, const GaussDiagram& d,
                                            Signedness sgn, const MCConfig& mc,
                                            const QuadratureConfig& cfg = {}) {
  mc.validate();
  const int nch = d.chords();
  const int pts = 2 * nch;
  const int n = c.size();
  if (pts >= n) throw ValidationError("diagram has more endpoints than curve samples");
  const auto mat = detail::gauss_matrix(c, std::max(1, cfg.diagonal_skip),
                                        sgn == Signedness::Unsigned);
  const auto chords = d.chord_list();

  // Number of cyclically ordered tuples: N * C(N-1, 2n-1).
  double tuple_count = n;
  for (int i = 1; i < pts; ++i) tuple_count *= static_cast<double>(n - i) / i;

  const long long chunk = 1 << 14;
  const long long nchunks = (mc.samples + chunk - 1) / chunk;
  std::vector<double> sum1(static_cast<std::size_t>(nchunks), 0.0);
  std::vector<double> sum2(static_cast<std::size_t>(nchunks), 0.0);
  parallel_for(nchunks, [&](std::int64_t b) {
    Rng rng = Rng::stream(mc.seed, static_cast<std::uint64_t>(b));
    const long long lo = b * chunk;
    const long long hi = std::min(mc.samples, lo + chunk);
    double s1 = 0, s2 = 0;
    std::vector<int> idx(pts);
    for (long long s = lo; s < hi; ++s) {
      // distinct indices
      for (int i = 0; i < pts;) {
        idx[i] = static_cast<int>(rng.next_u64() % n);
        bool dup = false;
        for (int j = 0; j < i; ++j) dup |= idx[j] == idx[i];
        if (!dup) ++i;
      }
      std::sort(idx.begin(), idx.end());
      const int rot = static_cast<int>(rng.next_u64() % pts);
      double prod = 1.0;
      for (const auto& [a, b2] : chords)
        prod *= mat[static_cast<std::size_t>(idx[(a + rot) % pts]) * n + idx[(b2 + rot) % pts]];
      s1 += prod;
      s2 += prod * prod;
    }
    sum1[static_cast<std::size_t>(b)] = s1;
    sum2[static_cast<std::size_t>(b)] = s2;
  });
  double s1 = 0, s2 = 0;
  for (long long b = 0; b < nchunks; ++b) {
    s1 += sum1[static_cast<std::size_t>(b)];
    s2 += sum2[static_cast<std::size_t>(b)];
  }
  const double mean = s1 / mc.samples;
  const double var = std::max(0.0, s2 / mc.samples - mean * mean);

  FunctionalReport rep;
  rep.method = "mc-grid";
  rep.n = n;
  rep.samples = mc.samples;
  rep.seed = mc.seed;
  rep.value = tuple_count * mean;
  rep.error = tuple_count * std::sqrt(var / mc.samples);
  return rep;
}

// Average of the Gauss functional over the 2n cyclic rotations of the
// diagram's endpoints; rotations with identical pairings are grouped.
inline FunctionalReport reduced_functional(const KnotCurve& c, const ChordDiagram& d,
                                           Signedness sgn, const QuadratureConfig& cfg = {}) {
  const int m = d.endpoints();
  std::vector<std::pair<ChordDiagram, int>> orbit;  // diagram, multiplicity
  for (int r = 0; r < m; ++r) {
    const ChordDiagram rot = d.rotated(r);
    bool found = false;
    for (auto& [dd, mult] : orbit)
      if (dd.same_gauss(rot)) {
        ++mult;
        found = true;
        break;
      }
    if (!found) orbit.emplace_back(rot, 1);
  }
  FunctionalReport rep;
  rep.method = "grid-reduced";
  rep.n = c.size();
  double err2 = 0.0;
  for (const auto& [dd, mult] : orbit) {
    const FunctionalReport part = gauss_functional(c, dd, sgn, cfg);
    rep.value += mult * part.value / m;
    err2 += std::pow(mult * part.error / m, 2);
  }
  rep.error = std::sqrt(err2);
  return rep;
}

// ---------------------------------------------------------------------------
// I_Y: Monte Carlo volume integral over three cyclically ordered curve points
// and one ambient point.

namespace detail {

// Two-level proximity structure: bounding spheres over blocks of segments.
class CurveProximity {
 public:
  explicit CurveProximity(const KnotCurve& c) : curve_(c) {
    const int n = c.size();
    const int block = 32;
    for (int lo = 0; lo < n; lo += block) {
      const int hi = std::min(n, lo + block);
      Vec3 center{0, 0, 0};
      for (int i = lo; i <= hi; ++i) center += c.point(i % n);
      center = center / (hi - lo + 1);
      double radius = 0;
      for (int i = lo; i <= hi; ++i) radius = std::max(radius, (c.point(i % n) - center).norm());
      blocks_.push_back({center, radius, lo, hi});
    }
  }

  // True if x is within `radius` of the polygonal curve.
  bool within(const Vec3& x, double radius) const {
    for (const auto& b : blocks_) {
      if ((x - b.center).norm() - b.radius > radius) continue;
      for (int i = b.lo; i < b.hi; ++i) {
        const int n = curve_.size();
        if (segment_distance(curve_.point(i % n), curve_.point((i + 1) % n), x, x) <= radius)
          return true;
      }
    }
    return false;
  }

  // Distance from x to the curve and the arclength position of the foot.
  std::pair<double, double> nearest(const Vec3& x) const {
    const int n = curve_.size();
    double best = std::numeric_limits<double>::infinity();
    double best_s = 0;
    for (const auto& b : blocks_) {
      if ((x - b.center).norm() - b.radius >= best) continue;
      for (int i = b.lo; i < b.hi; ++i) {
        const Vec3& p0 = curve_.point(i % n);
        const Vec3& p1 = curve_.point((i + 1) % n);
        const Vec3 d = p1 - p0;
        const double len2 = d.norm2();
        double t = len2 > 0 ? (x - p0).dot(d) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const double dist = (p0 + d * t - x).norm();
        if (dist < best) {
          best = dist;
          best_s = curve_.param_at(i % n, t);
        }
      }
    }
    return {best, best_s};
  }

 private:
  struct Block {
    Vec3 center;
    double radius;
    int lo, hi;
  };
  const KnotCurve& curve_;
  std::vector<Block> blocks_;
};

inline Vec3 biot_savart_h(const Vec3& gamma_u, const Vec3& tangent_u, const Vec3& x) {
  const Vec3 d = gamma_u - x;
  const double r2 = d.norm2();
  const double r3 = r2 * std::sqrt(r2);
  return d.cross(tangent_u) / r3;
}

}  // namespace detail

namespace detail {

// Isotropic density (3 a^2 / 4 pi) (a^2 + r^2)^(-5/2); radius sampled by the
// closed-form inverse CDF r = a q^(1/3) / sqrt(1 - q^(2/3)).
inline double iso52_density(double r2, double a) {
  const double t = a * a + r2;
  return (3.0 * a * a / (4.0 * M_PI)) / (t * t * std::sqrt(t));
}
inline double iso52_radius(Rng& rng, double a) {
  const double q13 = std::cbrt(rng.uniform());
  return a * q13 / std::sqrt(std::max(1e-300, 1.0 - q13 * q13));
}

// Steeper kernel (15 a^4 / 8 pi) (a^2 + r^2)^(-7/2): grows fast enough toward
// r = 0 to dominate every curve-collision order of the I_Y integrand. Radius
// sampled by rejection from the 5/2 law (acceptance 2/5).
inline double iso72_density(double r2, double a) {
  const double t = a * a + r2;
  return (15.0 * a * a * a * a / (8.0 * M_PI)) / (t * t * t * std::sqrt(t));
}
inline double iso72_radius(Rng& rng, double a) {
  while (true) {
    const double r = iso52_radius(rng, a);
    if (rng.uniform() * (a * a + r * r) <= a * a) return r;
  }
}

}  // namespace detail

// (1/4pi)^3 integral over C_3(gamma) of <H(u1,x), H(u2,x), H(u3,x)>.
//
// Importance sampling is shaped around the integrand's near-curve spikes:
//   - x comes from a three-part proposal: a curve-diameter-scale isotropic
//     heavy tail at the centroid plus vertex-centered (a^2+r^2)^(-7/2)
//     kernels at a fine scale (~2 segments) and a mid scale bridging to the
//     far field, so the density keeps a floor of order dist^-6 near gamma;
//   - given x, each u is drawn from a mixture of the uniform law and a
//     wrapped Cauchy centered at the arclength foot of x whose width tracks
//     dist(x, gamma), which caps the 1/dist^2 spike of H when a curve point
//     lands next to x.
// The triple is reordered cyclically (density 2 q(u1) q(u2) q(u3) on C_3).
// Samples inside the exclusion radius are redrawn; the induced bias is
// measured in tests by halving the radius.
inline FunctionalReport i_y(const KnotCurve& c, const MCConfig& mc) {
  mc.validate();
  const int n = c.size();
  const double L = c.total_length();
  const double s = mc.spatial_scale > 0 ? mc.spatial_scale : c.diameter();
  const double a1 = 2.0 * L / n;
  const double a2 = std::max(4.0 * a1, 0.15 * s);
  const double b_far = 0.5, b_fine = 0.25, b_mid = 0.25;
  const double beta_u = 0.35;  // mixture weight of the foot-concentrated u law
  const double r_excl = mc.exclusion_factor * L / n;
  const Vec3 center = c.centroid();
  const detail::CurveProximity prox(c);
  const std::vector<Vec3>& verts = c.points();

  const long long chunk = 1 << 14;
  const long long nchunks = (mc.samples + chunk - 1) / chunk;
  std::vector<double> sum1(static_cast<std::size_t>(nchunks), 0.0);
  std::vector<double> sum2(static_cast<std::size_t>(nchunks), 0.0);

  parallel_for(nchunks, [&](std::int64_t b) {
    Rng rng = Rng::stream(mc.seed, static_cast<std::uint64_t>(b));
    const long long lo = b * chunk;
    const long long hi = std::min(mc.samples, lo + chunk);
    double s1 = 0, s2 = 0;
    for (long long it = lo; it < hi; ++it) {
      Vec3 x;
      int tries = 0;
      while (true) {
        const double branch = rng.uniform();
        if (branch < b_far) {
          x = center + rng.unit_vector() * detail::iso52_radius(rng, s);
        } else {
          const int v = static_cast<int>(rng.next_u64() % n);
          const double scale = branch < b_far + b_fine ? a1 : a2;
          x = verts[static_cast<std::size_t>(v)] +
              rng.unit_vector() * detail::iso72_radius(rng, scale);
        }
        if (!prox.within(x, r_excl)) break;
        if (++tries > 10000) throw ResourceError("I_Y exclusion rejected too many draws");
      }
      double near_sum = 0.0;
      for (const auto& v : verts) {
        const double r2 = (x - v).norm2();
        near_sum += b_fine * detail::iso72_density(r2, a1) + b_mid * detail::iso72_density(r2, a2);
      }
      const double px = b_far * detail::iso52_density((x - center).norm2(), s) + near_sum / n;

      // u proposal around the foot of x; width follows the gap to the curve.
      const auto [gap, foot] = prox.nearest(x);
      const double bw = std::max(gap, r_excl);
      const double half_span = std::atan(L / (2.0 * bw));
      const auto draw_u = [&]() {
        if (rng.uniform() < beta_u) {
          const double z = bw * std::tan(half_span * (2.0 * rng.uniform() - 1.0));
          double u = std::fmod(foot + z, L);
          return u < 0 ? u + L : u;
        }
        return L * rng.uniform();
      };
      const auto foot_dist = [&](double u) {
        double d = std::abs(u - foot);
        return std::min(d, L - d);
      };
      const auto u_density = [&](double u) {
        const double d = foot_dist(u);
        const double cauchy = 1.0 / (2.0 * half_span * bw * (1.0 + (d / bw) * (d / bw)));
        return (1.0 - beta_u) / L + beta_u * cauchy;
      };
      const auto mirror = [&](double u) {
        double m = std::fmod(2.0 * foot - u, L);
        return m < 0 ? m + L : m;
      };
      // Arrange three values cyclically, first kept first.
      const auto arrange = [&](double p1, double p2, double p3, double* t) {
        double da = p2 - p1, db = p3 - p1;
        if (da < 0) da += L;
        if (db < 0) db += L;
        t[0] = p1;
        t[1] = da < db ? p2 : p3;
        t[2] = da < db ? p3 : p2;
        return da > 1e-12 && db > 1e-12 && std::abs(da - db) > 1e-12;
      };

      double p1, p2, p3;
      double tup[3];
      while (true) {
        p1 = draw_u();
        p2 = draw_u();
        p3 = draw_u();
        if (arrange(p1, p2, p3, tup)) break;
      }
      const double qu = 2.0 * u_density(p1) * u_density(p2) * u_density(p3);

      const auto integrand = [&](const double* u) {
        const Vec3 h1 = detail::biot_savart_h(c.eval_at(u[0]), c.tangent_at(u[0]), x);
        const Vec3 h2 = detail::biot_savart_h(c.eval_at(u[1]), c.tangent_at(u[1]), x);
        const Vec3 h3 = detail::biot_savart_h(c.eval_at(u[2]), c.tangent_at(u[2]), x);
        return mixed(h1, h2, h3);
      };
      double f = integrand(tup);
      // Antithetic partner: reflect foot-near u's about the foot (a density-
      // preserving pairing since the proposal is symmetric there). The
      // leading spike of the integrand when curve points crowd the foot of a
      // near-curve x is odd under this reflection with the far points fixed,
      // so averaging the pair cancels it pointwise.
      const double mirror_span = 8.0 * bw;
      const auto maybe_mirror = [&](double u) { return foot_dist(u) < mirror_span ? mirror(u) : u; };
      double m_tup[3];
      if (arrange(maybe_mirror(p1), maybe_mirror(p2), maybe_mirror(p3), m_tup))
        f = 0.5 * (f + integrand(m_tup));
      const double w = f / (px * qu);
      s1 += w;
      s2 += w * w;
    }
    sum1[static_cast<std::size_t>(b)] = s1;
    sum2[static_cast<std::size_t>(b)] = s2;
  });

  double s1 = 0, s2 = 0;
  for (long long b = 0; b < nchunks; ++b) {
    s1 += sum1[static_cast<std::size_t>(b)];
    s2 += sum2[static_cast<std::size_t>(b)];
  }
  const double mean = s1 / mc.samples;
  const double var = std::max(0.0, s2 / mc.samples - mean * mean);
  const double norm = std::pow(4.0 * M_PI, -3.0);

  // The per-sample variance estimate is blind to tail mass it has not seen;
  // the spread of independent super-block means tracks the realized
  // fluctuation. Report the larger of the two.
  double block_err = 0.0;
  const int nblocks = static_cast<int>(std::min<long long>(24, nchunks));
  if (nblocks >= 4) {
    std::vector<double> bmean(nblocks, 0.0), bcount(nblocks, 0.0);
    for (long long b = 0; b < nchunks; ++b) {
      const int blk = static_cast<int>(b % nblocks);
      bmean[blk] += sum1[static_cast<std::size_t>(b)];
      bcount[blk] += static_cast<double>(std::min(mc.samples, (b + 1) * chunk) - b * chunk);
    }
    double bsum = 0, bsum2 = 0;
    for (int blk = 0; blk < nblocks; ++blk) {
      bmean[blk] /= bcount[blk];
      bsum += bmean[blk];
      bsum2 += bmean[blk] * bmean[blk];
    }
    const double bvar = std::max(0.0, bsum2 / nblocks - (bsum / nblocks) * (bsum / nblocks));
    block_err = std::sqrt(bvar / nblocks);
  }

  FunctionalReport rep;
  rep.method = "mc-importance";
  rep.n = c.size();
  rep.samples = mc.samples;
  rep.seed = mc.seed;
  rep.value = norm * mean;
  rep.error = norm * std::max(std::sqrt(var / mc.samples), block_err);
  return rep;
}

// Degree-2 invariant: I_X/4 - I_Y/3 + 1/24; near an integer for any embedded
// curve, and that integer is the z^2 Conway coefficient of the knot type.
inline FunctionalReport conway_a2_geometric(const KnotCurve& c, const QuadratureConfig& cfg,
                                            const MCConfig& mc) {
  const FunctionalReport ix = gauss_functional(c, ChordDiagram::x_pattern(2), Signedness::Signed, cfg);
  const FunctionalReport iy = i_y(c, mc);
  FunctionalReport rep;
  rep.method = "a2-geometric";
  rep.n = c.size();
  rep.samples = iy.samples;
  rep.seed = iy.seed;
  rep.value = 0.25 * ix.value - iy.value / 3.0 + 1.0 / 24.0;
  rep.error = std::sqrt(std::pow(0.25 * ix.error, 2) + std::pow(iy.error / 3.0, 2));
  return rep;
}

}  // namespace knotkit
