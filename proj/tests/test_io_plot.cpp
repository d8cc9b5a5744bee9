#include <gtest/gtest.h>

#include <regex>
#include <sstream>

#include "stackedcc/io.hpp"
#include "stackedcc/plot.hpp"

using namespace stackedcc;

namespace {

// Tag-balance check: every element closes in order, attributes are quoted.
bool well_formed(const std::string& xml) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  while ((i = xml.find('<', i)) != std::string::npos) {
    const std::size_t j = xml.find('>', i);
    if (j == std::string::npos) return false;
    std::string tag = xml.substr(i + 1, j - i - 1);
    i = j + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (std::count(tag.begin(), tag.end(), '"') % 2) return false;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    const bool self_closing = tag.back() == '/';
    const std::string name = tag.substr(0, tag.find_first_of(" /"));
    if (!self_closing) stack.push_back(name);
  }
  return stack.empty();
}

// Points of the polyline inside the series group with the given label.
std::vector<std::pair<double, double>> polyline(const std::string& svg, const std::string& label) {
  const auto g = svg.find("data-label=\"" + label + "\"");
  if (g == std::string::npos) return {};
  const auto p = svg.find("points=\"", g) + 8;
  std::istringstream is(svg.substr(p, svg.find('"', p) - p));
  std::vector<std::pair<double, double>> out;
  std::string tok;
  while (is >> tok) {
    const auto comma = tok.find(',');
    out.emplace_back(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
  }
  return out;
}

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto i = s.find(needle); i != std::string::npos; i = s.find(needle, i + 1)) ++n;
  return n;
}

}  // namespace

// --- JSON / XYZ ------------------------------------------------------------------

TEST(Io, PointSetRoundTrip) {
  const auto fp = solve_family_point(0.4);
  const auto ps = io::to_point_set(embed(fp.params), fp.masses);
  const auto j = io::to_json(ps);
  ASSERT_EQ(j.at("bodies").size(), 7u);
  const auto back = io::point_set_from_json(io::json::parse(j.dump()));
  EXPECT_EQ(back.positions, ps.positions);
  EXPECT_EQ(back.masses, ps.masses);
}

TEST(Io, LabelsReorderAndMassesDefault) {
  const auto j = io::json::parse(R"({"bodies": [
      {"label": 2, "position": [1, 0, 0]},
      {"label": 1, "position": [0, 0, 0], "mass": 3}]})");
  const auto ps = io::point_set_from_json(j);
  EXPECT_EQ(ps.positions[0], (Vec3{0, 0, 0}));
  EXPECT_EQ(ps.masses, (std::vector<double>{3.0, 1.0}));
}

TEST(Io, MalformedPointSets) {
  for (const char* text : {R"({"bodies": []})", R"({"bodies": [{"position": [1, 2]}]})",
                           R"({"bodies": [{"label": 2, "position": [1, 2, 3]}]})", R"({"nodes": []})",
                           R"({"bodies": [{"position": "x"}]})"}) {
    try {
      (void)io::point_set_from_json(io::json::parse(text));
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << text;
    }
  }
  EXPECT_THROW((void)io::load_point_set("/nonexistent/file.json"), Error);
}

TEST(Io, Xyz) {
  const auto fp = solve_family_point(0.3);
  std::ostringstream os;
  io::write_xyz(os, io::to_point_set(embed(fp.params), fp.masses), "family");
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "7");
  std::getline(is, line);
  EXPECT_EQ(line, "family");
  int rows = 0;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string name;
    double x, y, z;
    ASSERT_TRUE(ls >> name >> x >> y >> z);
    EXPECT_EQ(name, "B" + std::to_string(++rows));
    EXPECT_DOUBLE_EQ(x, embed(fp.params).positions[rows - 1][0]);
  }
  EXPECT_EQ(rows, 7);
}

TEST(Io, ResidualAndFamilyJson) {
  const auto fp = solve_family_point(0.5);
  const auto rep = all_residuals(embed(fp.params), fp.masses, {}, true);
  const auto j = io::to_json(rep);
  for (const char* k : {"max_f", "max_rel_f", "max_cc", "lambda", "lambda_spread", "per_triple"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j.at("per_triple").size(), 105u);
  const auto fam = io::family_json({to_row(fp)});
  EXPECT_DOUBLE_EQ(fam.at("family")[0].at("r16").get<double>(), fp.params.r16);
}

TEST(Io, CertificationReportJson) {
  CertifyOptions o;
  o.max_depth = 2;
  const auto rep = certify_uniqueness(0.3, 0.32, o);
  const auto j = io::to_json(rep);
  for (const char* k : {"domain", "max_depth", "budget", "seeds", "boxes_processed", "budget_exhausted",
                        "verdict_counts", "depth_histogram", "undecided", "undecided_r15_measure", "wall_seconds",
                        "result"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j.at("result"), rep.pass() ? "PASS" : "FAIL");
  EXPECT_EQ(j.at("undecided").size(), rep.undecided.size());
  const std::string line = io::summary_line(rep);
  EXPECT_EQ(line.rfind(rep.pass() ? "PASS certify" : "FAIL certify", 0), 0u);
}

// --- SVG ---------------------------------------------------------------------------

TEST(Plot, RegionCurvesOrdered) {
  const std::string svg = plot::region_svg(60);
  EXPECT_TRUE(well_formed(svg));
  const auto low = polyline(svg, "R45 = R16"), high = polyline(svg, "D1457 = 0");
  ASSERT_GT(low.size(), 40u);
  ASSERT_GT(high.size(), 40u);
  std::size_t compared = 0;
  for (const auto& [x, y] : high)
    for (const auto& [x2, y2] : low)
      if (x == x2) {
        EXPECT_LT(y, y2) << x;  // screen y grows downward
        ++compared;
      }
  EXPECT_GT(compared, 40u);
}

TEST(Plot, MassesSumToOne) {
  std::vector<FamilyPoint> pts;
  for (double r15 : uniform_grid(0.1, 0.6, 8)) pts.push_back(solve_family_point(r15));
  const std::string svg = plot::masses_svg(pts);
  EXPECT_TRUE(well_formed(svg));
  const auto a = polyline(svg, "m1"), b = polyline(svg, "m4"), c = polyline(svg, "m5");
  ASSERT_EQ(a.size(), 8u);
  ASSERT_EQ(b.size(), 8u);
  ASSERT_EQ(c.size(), 8u);
  // with mass 0 at screen y = 540 and mass 1 at y = 40: y1 + y4 + y5 = 3 * 540 - 500
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(a[i].second + b[i].second + c[i].second, 1120.0, 0.02);
}

TEST(Plot, FamilyGlyphCount) {
  std::vector<FamilyPoint> pts;
  for (double r15 : uniform_grid(0.1, 0.6, 5)) pts.push_back(solve_family_point(r15));
  const std::string svg = plot::family_svg(pts);
  EXPECT_TRUE(well_formed(svg));
  EXPECT_EQ(count(svg, "<circle"), 35u);
  EXPECT_EQ(count(svg, "data-label=\"body"), 7u);
}

TEST(Plot, WellFormedCheckerRejectsBrokenXml) {
  EXPECT_FALSE(well_formed("<svg><g></svg>"));
  EXPECT_FALSE(well_formed("<svg a=\"1></svg>"));
  EXPECT_TRUE(well_formed("<?xml?><svg><g/><g></g></svg>"));
}
