#pragma once

// Zoo spec string grammar: "family:key=val,key=val,...". Families: circle,
// ellipse, torus2q, twist, figure8, fourier, perturbed_circle. The fourier
// family takes per-axis harmonic sums like "x=2c3+0.5c1", where 2c3 means
// 2*cos(3t) and 0.5s1 means 0.5*sin(t).

#include <cctype>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "knotkit/errors.hpp"

namespace knotkit {

namespace detail {

inline std::vector<FourierTerm> parse_fourier_axis(int axis, const std::string& expr) {
  std::vector<FourierTerm> terms;
  std::size_t i = 0;
  while (i < expr.size()) {
    double sign = 1.0;
    if (expr[i] == '+') {
      ++i;
    } else if (expr[i] == '-') {
      sign = -1.0;
      ++i;
    }
    std::size_t j = i;
    while (j < expr.size() && (std::isdigit(static_cast<unsigned char>(expr[j])) || expr[j] == '.'))
      ++j;
    const double coeff = (j > i) ? std::stod(expr.substr(i, j - i)) : 1.0;
    if (j >= expr.size() || (expr[j] != 'c' && expr[j] != 's'))
      throw ParseError("fourier term needs 'c' or 's' after the coefficient", static_cast<int>(j));
    const bool is_cos = expr[j] == 'c';
    ++j;
    std::size_t m0 = j;
    while (j < expr.size() && std::isdigit(static_cast<unsigned char>(expr[j]))) ++j;
    if (j == m0) throw ParseError("fourier term missing harmonic index", static_cast<int>(j));
    const int harmonic = std::atoi(expr.substr(m0, j - m0).c_str());
    FourierTerm t;
    t.axis = axis;
    t.harmonic = harmonic;
    (is_cos ? t.cos_coeff : t.sin_coeff) = sign * coeff;
    terms.push_back(t);
    i = j;
  }
  return terms;
}

}  // namespace detail

inline ZooSpec ZooSpec::parse(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string family = text.substr(0, colon);
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    std::string rest = text.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      std::size_t comma = rest.find(',', pos);
      if (comma == std::string::npos) comma = rest.size();
      const std::string item = rest.substr(pos, comma - pos);
      const std::size_t eq = item.find('=');
      if (eq == std::string::npos)
        throw ParseError("zoo spec item '" + item + "' is not key=value", static_cast<int>(pos));
      kv[item.substr(0, eq)] = item.substr(eq + 1);
      pos = comma + 1;
    }
  }

  ZooSpec spec;
  auto take_num = [&](const std::string& key, double fallback, bool required = false) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      if (required) throw ParseError("zoo spec missing required key '" + key + "'");
      return fallback;
    }
    const double v = std::stod(it->second);
    kv.erase(it);
    return v;
  };

  if (family == "circle") {
    spec.family = ZooFamily::Circle;
    spec.r = take_num("r", 1.0);
  } else if (family == "ellipse") {
    spec.family = ZooFamily::Ellipse;
    spec.a = take_num("a", 2.0);
    spec.b = take_num("b", 1.0);
  } else if (family == "torus2q") {
    spec.family = ZooFamily::Torus2q;
    spec.q = static_cast<int>(take_num("q", 3));
    spec.R = take_num("R", 2.0);
    spec.r = take_num("r", 1.0);
  } else if (family == "twist") {
    spec.family = ZooFamily::Twist;
    spec.k = static_cast<int>(take_num("k", 1));
  } else if (family == "figure8") {
    spec.family = ZooFamily::Fourier;
    spec.fourier = figure_eight_fourier();
  } else if (family == "fourier") {
    spec.family = ZooFamily::Fourier;
    for (int axis = 0; axis < 3; ++axis) {
      const std::string key(1, "xyz"[axis]);
      auto it = kv.find(key);
      if (it == kv.end()) continue;
      auto terms = detail::parse_fourier_axis(axis, it->second);
      spec.fourier.insert(spec.fourier.end(), terms.begin(), terms.end());
      kv.erase(it);
    }
    if (spec.fourier.empty()) throw ParseError("fourier spec needs at least one of x=, y=, z=");
  } else if (family == "perturbed_circle") {
    spec.family = ZooFamily::PerturbedCircle;
    spec.amplitude = take_num("amp", 0.05);
    spec.mode = static_cast<int>(take_num("mode", 7));
    spec.seed = static_cast<std::uint64_t>(take_num("seed", 1));
  } else {
    throw ParseError("unknown zoo family '" + family + "'");
  }
  spec.samples = static_cast<int>(take_num("n", 256));

  for (const auto& [key, value] : kv)
    throw ParseError("zoo spec: unknown key '" + key + "'");
  spec.validate();
  return spec;
}

}  // namespace knotkit
