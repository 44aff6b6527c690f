#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "knotkit/curve.hpp"
#include "knotkit/diagrams.hpp"
#include "knotkit/errors.hpp"
#include "knotkit/mobius.hpp"
#include "knotkit/projections.hpp"
#include "knotkit/report.hpp"

namespace knotkit {

using json = nlohmann::json;

inline json curve_to_json(const KnotCurve& c) {
  json pts = json::array();
  for (const auto& p : c.points()) pts.push_back({p.x, p.y, p.z});
  return json{{"points", std::move(pts)}, {"closed", true}};
}

inline KnotCurve curve_from_json(const json& j, const CurveValidation& val = {}) {
  if (!j.contains("points") || !j["points"].is_array())
    throw ParseError("curve JSON needs a 'points' array");
  if (j.contains("closed") && !j["closed"].get<bool>())
    throw ParseError("curve JSON must declare closed = true");
  std::vector<Vec3> pts;
  pts.reserve(j["points"].size());
  for (const auto& p : j["points"]) {
    if (!p.is_array() || p.size() != 3) throw ParseError("curve point must be [x, y, z]");
    pts.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
  }
  return KnotCurve::from_points(std::move(pts), val);
}

inline json vec3_to_json(const Vec3& v) { return json{v.x, v.y, v.z}; }

inline Vec3 vec3_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("vector must be [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline json transform_to_json(const MobiusTransform& t) {
  json steps = json::array();
  for (const auto& step : t.steps) {
    if (const auto* inv = std::get_if<SphereInversion>(&step)) {
      steps.push_back({{"inversion", {{"center", vec3_to_json(inv->center)},
                                      {"radius", inv->radius}}}});
    } else {
      const auto& sim = std::get<Similarity>(step);
      json rot = json::array();
      for (int r = 0; r < 3; ++r)
        rot.push_back({sim.rotation.m[3 * r], sim.rotation.m[3 * r + 1], sim.rotation.m[3 * r + 2]});
      steps.push_back({{"similarity", {{"rotation", std::move(rot)},
                                       {"scale", sim.scale},
                                       {"translation", vec3_to_json(sim.translation)}}}});
    }
  }
  return json{{"steps", std::move(steps)}};
}

inline MobiusTransform transform_from_json(const json& j) {
  MobiusTransform t;
  if (!j.contains("steps") || !j["steps"].is_array())
    throw ParseError("transform JSON needs a 'steps' array");
  for (const auto& step : j["steps"]) {
    if (step.contains("inversion")) {
      const auto& inv = step["inversion"];
      t.steps.push_back(SphereInversion{vec3_from_json(inv.at("center")),
                                        inv.at("radius").get<double>()});
    } else if (step.contains("similarity")) {
      const auto& sim = step["similarity"];
      Similarity s;
      const auto& rot = sim.at("rotation");
      if (!rot.is_array() || rot.size() != 3) throw ParseError("rotation must be 3x3");
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) s.rotation.m[3 * r + c] = rot[r][c].get<double>();
      s.scale = sim.value("scale", 1.0);
      if (sim.contains("translation")) s.translation = vec3_from_json(sim["translation"]);
      t.steps.push_back(s);
    } else {
      throw ParseError("transform step must be 'inversion' or 'similarity'");
    }
  }
  t.validate();
  return t;
}

inline json report_to_json(const FunctionalReport& r) {
  json j{{"value", r.value}, {"error", r.error}, {"method", r.method}, {"n", r.n}};
  if (r.samples > 0) {
    j["samples"] = r.samples;
    j["seed"] = r.seed;
  }
  return j;
}

inline json diagram_to_json(const ChordDiagram& d) {
  json pairs = json::array();
  for (const auto& [a, b] : d.chord_list()) pairs.push_back({a + 1, b + 1});
  return json{{"n", d.chords()}, {"pairs", std::move(pairs)}};
}

inline ChordDiagram diagram_from_json(const json& j) {
  if (!j.contains("pairs") || !j["pairs"].is_array())
    throw ParseError("diagram JSON needs a 'pairs' array");
  std::vector<std::pair<int, int>> pairs;
  for (const auto& p : j["pairs"])
    pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
  return ChordDiagram::from_pairs(pairs);
}

// Diagram literals used on the command line: "w" (one chord), "X" (two
// crossing chords), or an explicit pairing like "1-3,2-4".
inline ChordDiagram parse_diagram_literal(const std::string& text) {
  if (text == "w" || text == "W") return ChordDiagram::single_chord();
  if (text == "X" || text == "x") return ChordDiagram::x_pattern(2);
  std::vector<std::pair<int, int>> pairs;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    const std::size_t dash = item.find('-');
    if (dash == std::string::npos)
      throw ParseError("diagram chord '" + item + "' must look like a-b", static_cast<int>(pos));
    pairs.emplace_back(std::atoi(item.substr(0, dash).c_str()),
                       std::atoi(item.substr(dash + 1).c_str()));
    pos = comma + 1;
  }
  return ChordDiagram::from_pairs(pairs);
}

inline json crossing_set_to_json(const KnotCurve& curve, const CrossingSet& cs) {
  json arr = json::array();
  for (const auto& c : cs.crossings) {
    arr.push_back({{"i", c.seg_i},
                   {"j", c.seg_j},
                   {"sign", c.sign},
                   {"over", c.i_over ? "i" : "j"},
                   {"s_i", curve.param_at(c.seg_i, c.param_i)},
                   {"s_j", curve.param_at(c.seg_j, c.param_j)}});
  }
  return json{{"direction", vec3_to_json(cs.direction)},
              {"regular", cs.regular},
              {"count", cs.count()},
              {"writhe", cs.writhe_sum()},
              {"crossings", std::move(arr)}};
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON parse failure: ") + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace knotkit
