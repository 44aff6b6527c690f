#pragma once

#include <string>
#include <vector>

#include "knotkit/curve.hpp"
#include "knotkit/diagrams.hpp"
#include "knotkit/errors.hpp"
#include "knotkit/projections.hpp"

namespace knotkit {

// Standard reduced diagram code of the (2,q) torus knot: two passes over the
// q crossings, alternating over/under, all positive. Its chord diagram is
// X_q (every chord a diameter).
inline KnotDiagramCode torus2q_code(int q) {
  if (q < 3 || q % 2 == 0) throw ValidationError("torus2q code: q must be odd and >= 3");
  std::vector<DiagramToken> tokens;
  tokens.reserve(2 * q);
  for (int p = 0; p < 2 * q; ++p) tokens.push_back({p % q + 1, p % 2 == 0, +1});
  return KnotDiagramCode(std::move(tokens));
}

// Code of the k-twist knot, read off a generic axis projection of the
// geometric family (the construction and the crossing detector share one
// sign convention by design).
inline KnotDiagramCode twist_code(int k) {
  ZooSpec spec;
  spec.family = ZooFamily::Twist;
  spec.k = k;
  spec.samples = std::max(384, 96 * k);
  const KnotCurve curve = sample_zoo(spec);
  const CrossingSet cs = project_crossings(curve, Vec3{0, 0, 1});
  if (!cs.regular || cs.count() != k + 2)
    throw ValidationError("twist knot projection did not produce the standard diagram");
  return diagram_code_of(curve, cs);
}

inline KnotDiagramCode figure_eight_code() {
  return parse_gauss_code("O1+ U2+ O3- U4- O2+ U1+ O4- U3-");
}

// name in {unknot, torus2q(q), twist(k), figure-eight}.
inline KnotDiagramCode zoo_code(const std::string& name) {
  if (name == "unknot") return KnotDiagramCode();
  if (name == "figure-eight" || name == "figure8") return figure_eight_code();
  const auto open = name.find('(');
  const auto close = name.find(')');
  if (open != std::string::npos && close != std::string::npos && close > open + 1) {
    const std::string family = name.substr(0, open);
    const int arg = std::atoi(name.substr(open + 1, close - open - 1).c_str());
    if (family == "torus2q") return torus2q_code(arg);
    if (family == "twist") return twist_code(arg);
  }
  throw ValidationError("unknown diagram zoo name '" + name + "'");
}

}  // namespace knotkit
