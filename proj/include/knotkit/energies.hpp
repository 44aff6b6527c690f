#pragma once

#include <cmath>
#include <vector>

#include "knotkit/curve.hpp"
#include "knotkit/mobius.hpp"
#include "knotkit/parallel.hpp"
#include "knotkit/report.hpp"

namespace knotkit {

struct QuadratureConfig {
  // Cyclic neighbor offsets excluded around the diagonal (>= 1).
  int diagonal_skip = 1;
  // Refill the excluded band with the kernel value extrapolated from the
  // nearest included offsets. The inverse-square bracket tends to kappa^2/12
  // on the diagonal, so silently dropping the band costs O(1/N) accuracy.
  bool diagonal_fill = true;
  // Recompute at N/2 and report |value(N) - value(N/2)| as the error.
  bool richardson = true;
};

namespace detail {

enum class PairKernel { Bracket, Cos, Sin };

inline double pair_kernel(const KnotCurve& c, int i, int j, PairKernel which) {
  const Vec3 d = c.point(j) - c.point(i);
  const double chord2 = d.norm2();
  switch (which) {
    case PairKernel::Bracket: {
      const double arc = c.arc_distance(i, j);
      return 1.0 / chord2 - 1.0 / (arc * arc);
    }
    case PairKernel::Cos:
      return (1.0 - conformal_cos(c.point(i), c.tangent(i), c.point(j), c.tangent(j))) / chord2;
    case PairKernel::Sin: {
      const double cosa = conformal_cos(c.point(i), c.tangent(i), c.point(j), c.tangent(j));
      return std::sqrt(std::max(0.0, 1.0 - cosa * cosa)) / chord2;
    }
  }
  return 0.0;
}

inline double pairwise_energy_value(const KnotCurve& c, PairKernel which,
                                    const QuadratureConfig& cfg) {
  const int n = c.size();
  const int skip = std::max(1, cfg.diagonal_skip);
  return parallel_sum(
      n,
      [&](std::int64_t i64) {
        const int i = static_cast<int>(i64);
        double row = 0.0;
        for (int j = 0; j < n; ++j) {
          if (c.cyclic_offset(i, j) <= skip) continue;
          row += pair_kernel(c, i, j, which) * c.ds(j);
        }
        if (cfg.diagonal_fill) {
          double omitted = 0.0;
          for (int o = -skip; o <= skip; ++o) omitted += c.ds(i + o);
          const double near = 0.5 * (pair_kernel(c, i, i + skip + 1, which) +
                                     pair_kernel(c, i, i - skip - 1, which));
          row += near * omitted;
        }
        return row * c.ds(i);
      },
      1);
}

// Kernel matrix with quadrature weights folded in and the diagonal band
// zeroed; entry (i, j) = kernel(i, j) ds_i ds_j.
inline std::vector<double> kernel_matrix(const KnotCurve& c, PairKernel which, int skip,
                                         bool signed_writhe = false) {
  const int n = c.size();
  std::vector<double> k(static_cast<std::size_t>(n) * n, 0.0);
  parallel_for(n, [&](std::int64_t i64) {
    const int i = static_cast<int>(i64);
    for (int j = 0; j < n; ++j) {
      if (c.cyclic_offset(i, j) <= skip) continue;
      k[static_cast<std::size_t>(i) * n + j] = pair_kernel(c, i, j, which) * c.ds(i) * c.ds(j);
    }
  });
  (void)signed_writhe;
  return k;
}

// Sum over cyclically ordered 4-tuples (u1,u2,u3,u4) of K[u1][u3] K[u2][u4],
// by 2D prefix sums over the doubled matrix: for fixed (u1, u3) the valid
// (u2, u4) form a rectangle in unrolled coordinates. O(N^2) total.
inline double interleaved_four_tuple_sum(const std::vector<double>& k, int n) {
  const int m = 2 * n;
  std::vector<double> prefix(static_cast<std::size_t>(m + 1) * (m + 1), 0.0);
  auto kd = [&](int a, int b) { return k[static_cast<std::size_t>(a % n) * n + (b % n)]; };
  auto pf = [&](int a, int b) -> double& { return prefix[static_cast<std::size_t>(a) * (m + 1) + b]; };
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      pf(a + 1, b + 1) = kd(a, b) + pf(a, b + 1) + pf(a + 1, b) - pf(a, b);
  auto rect = [&](int r1, int r2, int c1, int c2) {
    if (r2 < r1 || c2 < c1) return 0.0;
    return pf(r2 + 1, c2 + 1) - pf(r1, c2 + 1) - pf(r2 + 1, c1) + pf(r1, c1);
  };

  std::vector<double> partial(static_cast<std::size_t>(n), 0.0);
  parallel_for(n, [&](std::int64_t i64) {
    const int u1 = static_cast<int>(i64);
    double acc = 0.0;
    for (int u3 = u1 + 2; u3 <= u1 + n - 2; ++u3) {
      const double k13 = kd(u1, u3);
      if (k13 == 0.0) continue;
      acc += k13 * rect(u1 + 1, u3 - 1, u3 + 1, u1 + n - 1);
    }
    partial[static_cast<std::size_t>(u1)] = acc;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

inline double x_energy_value(const KnotCurve& c, PairKernel which, const QuadratureConfig& cfg) {
  const auto k = kernel_matrix(c, which, std::max(1, cfg.diagonal_skip));
  return interleaved_four_tuple_sum(k, c.size());
}

template <typename F>
FunctionalReport with_richardson(const KnotCurve& c, const QuadratureConfig& cfg,
                                 const char* method, F&& value_of) {
  FunctionalReport rep;
  rep.method = method;
  rep.n = c.size();
  rep.value = value_of(c);
  if (cfg.richardson && c.size() / 2 >= KnotCurve::kMinPoints) {
    const KnotCurve half = resample_arclength(c, c.size() / 2);
    rep.error = std::abs(rep.value - value_of(half));
  }
  return rep;
}

}  // namespace detail

// Mobius energy: double sum of {1/chord^2 - 1/D^2} over ordered vertex pairs
// outside the diagonal band. 4 for a round circle; scale-invariant.
inline FunctionalReport energy_e(const KnotCurve& c, const QuadratureConfig& cfg = {}) {
  return detail::with_richardson(c, cfg, cfg.diagonal_fill ? "grid+fill" : "grid",
                                 [&](const KnotCurve& k) {
                                   return detail::pairwise_energy_value(
                                       k, detail::PairKernel::Bracket, cfg);
                                 });
}

// Conformal-angle form: kernel (1 - cos alpha)/chord^2; zero iff round.
inline FunctionalReport energy_ecos(const KnotCurve& c, const QuadratureConfig& cfg = {}) {
  return detail::with_richardson(c, cfg, cfg.diagonal_fill ? "grid+fill" : "grid",
                                 [&](const KnotCurve& k) {
                                   return detail::pairwise_energy_value(k, detail::PairKernel::Cos,
                                                                        cfg);
                                 });
}

// Kernel sin(alpha)/chord^2; bounds the average crossing number by 1/(4 pi).
inline FunctionalReport energy_esin(const KnotCurve& c, const QuadratureConfig& cfg = {}) {
  return detail::with_richardson(c, cfg, cfg.diagonal_fill ? "grid+fill" : "grid",
                                 [&](const KnotCurve& k) {
                                   return detail::pairwise_energy_value(k, detail::PairKernel::Sin,
                                                                        cfg);
                                 });
}

// Four-point energies over interleaved cyclic 4-tuples: the (1,3) and (2,4)
// chords each carry a pairwise kernel factor.
inline FunctionalReport energy_ecos_x(const KnotCurve& c, const QuadratureConfig& cfg = {}) {
  return detail::with_richardson(c, cfg, "grid-x", [&](const KnotCurve& k) {
    return detail::x_energy_value(k, detail::PairKernel::Cos, cfg);
  });
}

inline FunctionalReport energy_esin_x(const KnotCurve& c, const QuadratureConfig& cfg = {}) {
  return detail::with_richardson(c, cfg, "grid-x", [&](const KnotCurve& k) {
    return detail::x_energy_value(k, detail::PairKernel::Sin, cfg);
  });
}

}  // namespace knotkit
