#pragma once

#include <cmath>
#include <vector>

#include "knotkit/curve.hpp"
#include "knotkit/energies.hpp"
#include "knotkit/parallel.hpp"

namespace knotkit {

enum class EnergyKind { E, ECos, ESin };

struct FlowConfig {
  EnergyKind energy = EnergyKind::E;
  int steps = 100;
  double step_size = 0.02;   // initial step, adapted by accept/reject
  int resample_every = 10;   // arclength resample + gauge fix cadence
  double fd_epsilon = 1e-4;  // finite-difference offset, relative to L/N
  double stop_below = 0.0;   // stop once energy <= this (0 disables)

  void validate() const {
    if (steps < 1) throw ValidationError("flow needs at least one step");
    if (!(step_size > 0)) throw ValidationError("flow step size must be positive");
    if (resample_every < 1) throw ValidationError("resample_every must be >= 1");
  }
};

enum class RelaxStatus { Completed, TargetReached, Stuck };

struct RelaxStep {
  int step = 0;
  double energy = 0;
  int snapshot = -1;  // index into RelaxResult::snapshots, -1 if none
};

struct RelaxResult {
  std::vector<RelaxStep> trajectory;  // accepted steps only
  std::vector<KnotCurve> snapshots;
  RelaxStatus status = RelaxStatus::Completed;
  double final_energy = 0;
};

namespace detail {

inline double flow_energy(const std::vector<Vec3>& pts, EnergyKind kind) {
  // Rejection control handles embeddedness; the inner finite-difference
  // evaluations skip the O(N^2) gap check.
  const KnotCurve c = KnotCurve::from_points(pts, CurveValidation{1e-6, false});
  QuadratureConfig cfg;
  cfg.richardson = false;
  switch (kind) {
    case EnergyKind::E: return pairwise_energy_value(c, PairKernel::Bracket, cfg);
    case EnergyKind::ECos: return pairwise_energy_value(c, PairKernel::Cos, cfg);
    case EnergyKind::ESin: return pairwise_energy_value(c, PairKernel::Sin, cfg);
  }
  return 0;
}

// Scale to total length 2 pi, centroid at the origin. The energies are
// scale- and translation-invariant, so this is a pure gauge fix that stops
// Mobius drift during the descent.
inline std::vector<Vec3> gauge_fix(const std::vector<Vec3>& pts) {
  const KnotCurve c = KnotCurve::from_points(pts, CurveValidation{1e-6, false});
  const double scale = 2.0 * M_PI / c.total_length();
  const Vec3 center = c.centroid();
  std::vector<Vec3> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out[i] = (pts[i] - center) * scale;
  return out;
}

}  // namespace detail

// Rejection-controlled finite-difference gradient descent. A step is
// accepted only if the curve stays embedded and the energy drops strictly
// below the last recorded value, so the recorded energy sequence is strictly
// decreasing no matter what the periodic resampling does in between.
inline RelaxResult relax(const KnotCurve& start, const FlowConfig& cfg) {
  cfg.validate();
  const int n = start.size();

  std::vector<Vec3> pts = detail::gauge_fix(start.points());
  RelaxResult result;
  double e_rec = detail::flow_energy(pts, cfg.energy);
  double h = cfg.step_size;
  int accepted = 0;

  const auto snapshot = [&](const std::vector<Vec3>& p) {
    result.snapshots.push_back(KnotCurve::from_points(p));
    return static_cast<int>(result.snapshots.size()) - 1;
  };

  result.status = RelaxStatus::Completed;
  while (accepted < cfg.steps) {
    if (cfg.stop_below > 0 && e_rec <= cfg.stop_below) {
      result.status = RelaxStatus::TargetReached;
      break;
    }
    const double e_base = detail::flow_energy(pts, cfg.energy);
    const double eps = cfg.fd_epsilon * (2.0 * M_PI / n);

    std::vector<Vec3> grad(static_cast<std::size_t>(n));
    parallel_for(3LL * n, [&](std::int64_t comp) {
      const int i = static_cast<int>(comp / 3);
      const int axis = static_cast<int>(comp % 3);
      std::vector<Vec3> moved = pts;
      double* coord = axis == 0 ? &moved[i].x : axis == 1 ? &moved[i].y : &moved[i].z;
      *coord += eps;
      const double de = (detail::flow_energy(moved, cfg.energy) - e_base) / eps;
      double* slot = axis == 0 ? &grad[i].x : axis == 1 ? &grad[i].y : &grad[i].z;
      *slot = de;
    });

    bool stepped = false;
    while (h > 1e-12) {
      std::vector<Vec3> trial(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) trial[i] = pts[i] - grad[i] * h;
      double e_trial;
      try {
        KnotCurve::from_points(trial);  // embeddedness gate
        e_trial = detail::flow_energy(trial, cfg.energy);
      } catch (const ValidationError&) {
        h *= 0.5;
        continue;
      }
      if (e_trial < e_rec) {
        pts = std::move(trial);
        e_rec = e_trial;
        ++accepted;
        stepped = true;
        h = std::min(h * 1.3, 10.0 * cfg.step_size);
        int snap = -1;
        if (accepted % cfg.resample_every == 0) {
          const KnotCurve cur = KnotCurve::from_points(pts);
          pts = detail::gauge_fix(resample_arclength(cur, n).points());
          snap = snapshot(pts);
        }
        result.trajectory.push_back({accepted, e_rec, snap});
        break;
      }
      h *= 0.5;
    }
    if (!stepped) {
      result.status = RelaxStatus::Stuck;
      break;
    }
  }

  if (result.snapshots.empty() ||
      (!result.trajectory.empty() && result.trajectory.back().snapshot < 0)) {
    const int snap = snapshot(pts);
    if (!result.trajectory.empty()) result.trajectory.back().snapshot = snap;
  }
  result.final_energy = e_rec;
  return result;
}

}  // namespace knotkit
