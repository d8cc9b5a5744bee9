#pragma once

// JSON / XYZ import and export. Uses the single-header nlohmann json from
// vendor/.

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "stackedcc/cc_equations.hpp"
#include "stackedcc/certify.hpp"
#include "stackedcc/family_solver.hpp"
#include "stackedcc/geometry.hpp"

namespace stackedcc::io {

using nlohmann::json;

/// Any number of bodies with masses; the seven-body family is one case.
struct PointSet {
  std::vector<Vec3> positions;
  std::vector<double> masses;
};

inline PointSet to_point_set(const Configuration& cfg, const MassVector& mv) {
  return {{cfg.positions.begin(), cfg.positions.end()}, {mv.m.begin(), mv.m.end()}};
}

inline json to_json(const PointSet& ps) {
  json bodies = json::array();
  for (std::size_t i = 0; i < ps.positions.size(); ++i) {
    json b{{"label", i + 1}, {"position", ps.positions[i]}};
    if (i < ps.masses.size()) b["mass"] = ps.masses[i];
    bodies.push_back(b);
  }
  return {{"bodies", bodies}};
}

/// Reads {"bodies": [{"position": [x, y, z], "mass": m}, ...]}. Bodies are
/// taken in label order when labels are present. Missing masses default to 1.
inline PointSet point_set_from_json(const json& j) {
  try {
    const auto& bodies = j.at("bodies");
    if (!bodies.is_array() || bodies.empty()) throw Error(ErrorCode::ParseError, "\"bodies\" must be a non-empty array");
    std::vector<std::pair<int, std::pair<Vec3, double>>> items;
    int next_label = 1;
    for (const auto& b : bodies) {
      const auto pos = b.at("position").get<std::vector<double>>();
      if (pos.size() != 3) throw Error(ErrorCode::ParseError, "positions need three coordinates");
      const int label = b.contains("label") ? b.at("label").get<int>() : next_label;
      next_label = label + 1;
      items.push_back({label, {{pos[0], pos[1], pos[2]}, b.value("mass", 1.0)}});
    }
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    PointSet ps;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].first != static_cast<int>(i) + 1) throw Error(ErrorCode::ParseError, "labels must be 1..n");
      ps.positions.push_back(items[i].second.first);
      ps.masses.push_back(items[i].second.second);
    }
    return ps;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline PointSet load_point_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return point_set_from_json(j);
}

/// XYZ: count line, comment line, then "Bk x y z" rows.
inline void write_xyz(std::ostream& os, const PointSet& ps, const std::string& comment = "") {
  os << ps.positions.size() << '\n' << comment << '\n';
  for (std::size_t i = 0; i < ps.positions.size(); ++i) {
    os << 'B' << i + 1;
    for (double c : ps.positions[i]) os << ' ' << format_g17(c);
    os << '\n';
  }
}

inline json to_json(const ResidualReport& r) {
  json j{{"max_f", r.max_f},   {"max_rel_f", r.max_rel_f},         {"max_cc", r.max_cc},
         {"lambda", r.lambda}, {"lambda_spread", r.lambda_spread}};
  if (!r.per_triple.empty()) {
    json t = json::array();
    for (const auto& x : r.per_triple) t.push_back({{"ijh", {x.i, x.j, x.h}}, {"f", x.f}, {"relative", x.relative}});
    j["per_triple"] = t;
  }
  return j;
}

inline json to_json(const FamilyRow& r) {
  return {{"r15", r.r15}, {"r16", r.r16},       {"r45", r.r45},       {"m1", r.m1},        {"m4", r.m4},
          {"m5", r.m5},   {"lambda", r.lambda}, {"max_f", r.max_f}, {"max_cc", r.max_cc}};
}

inline json family_json(const std::vector<FamilyRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  return {{"family", arr}};
}

inline json to_json(const Interval& x) { return json::array({x.lo(), x.hi()}); }

inline json to_json(const CertificationReport& r) {
  json j;
  j["domain"] = {r.domain_lo, r.domain_hi};
  j["max_depth"] = r.max_depth;
  j["budget"] = r.budget;
  j["seeds"] = r.seeds;
  j["boxes_processed"] = r.boxes_processed;
  j["budget_exhausted"] = r.budget_exhausted;
  j["verdict_counts"] = r.verdict_counts;
  json hist = json::object();
  for (const auto& [d, n] : r.depth_histogram) hist[std::to_string(d)] = n;
  j["depth_histogram"] = hist;
  json und = json::array();
  for (const auto& c : r.undecided)
    und.push_back({{"r15", to_json(c.box.r15)}, {"r16", to_json(c.box.r16)}, {"depth", c.depth}});
  j["undecided"] = und;
  j["undecided_r15_measure"] = r.undecided_r15_measure();
  j["wall_seconds"] = r.wall_seconds;
  j["result"] = r.pass() ? "PASS" : "FAIL";
  return j;
}

/// Machine-readable one-liner for CI logs.
inline std::string summary_line(const CertificationReport& r) {
  std::ostringstream os;
  os << (r.pass() ? "PASS" : "FAIL") << " certify domain=[" << r.domain_lo << ',' << r.domain_hi
     << "] boxes=" << r.boxes_processed << " undecided=" << r.undecided.size()
     << " budget_exhausted=" << (r.budget_exhausted ? 1 : 0);
  return os.str();
}

}  // namespace stackedcc::io
