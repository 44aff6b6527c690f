#pragma once

#include <cstdint>
#include <string>

namespace knotkit {

// Value + error estimate + provenance for any computed integral or average.
// `error` is a Richardson difference for grid quadratures and a standard
// error for Monte Carlo estimates; `n` is the grid size, `samples`/`seed`
// are set by sampling methods only.
struct FunctionalReport {
  double value = 0.0;
  double error = 0.0;
  std::string method;
  int n = 0;
  long long samples = 0;
  std::uint64_t seed = 0;
};

}  // namespace knotkit
