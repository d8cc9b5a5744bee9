#pragma once

// Hand-written SVG figures: the region bounded by the two bracketing curves,
// overlaid family configurations, and masses along the family.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "stackedcc/family_solver.hpp"
#include "stackedcc/geometry.hpp"

namespace stackedcc::plot {

struct Series {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> xy;
  bool markers = false;  // circles instead of a polyline
};

/// Fixed 800 x 600 canvas with axes ticked every 0.1 data units.
class Figure {
 public:
  static constexpr double kWidth = 800, kHeight = 600;
  static constexpr double kLeft = 70, kRight = 160, kTop = 40, kBottom = 60;

  Figure(std::string title, std::string xlabel, std::string ylabel)
      : title_(std::move(title)), xlabel_(std::move(xlabel)), ylabel_(std::move(ylabel)) {}

  void add(Series s) { series_.push_back(std::move(s)); }
  void set_range(double x0, double x1, double y0, double y1) {
    x0_ = x0, x1_ = x1, y0_ = y0, y1_ = y1;
    fixed_ = true;
  }

  void render(std::ostream& os) {
    if (!fixed_) autoscale();
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    text(os, kWidth / 2 - kRight / 2 + kLeft / 2, 24, title_, "middle", 16);
    axes(os);
    double legend_y = kTop + 10;
    for (const auto& s : series_) {
      os << "<g class=\"series\" data-label=\"" << escape(s.label) << "\">\n";
      if (s.markers) {
        for (const auto& [x, y] : s.xy)
          os << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"1.5\" fill=\"" << s.color
             << "\"/>\n";
      } else if (!s.xy.empty()) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : s.xy) os << num(px(x)) << ',' << num(py(y)) << ' ';
        os << "\"/>\n";
      }
      os << "</g>\n";
      const double lx = kWidth - kRight + 15;
      os << "<line x1=\"" << lx << "\" y1=\"" << legend_y << "\" x2=\"" << lx + 20 << "\" y2=\"" << legend_y
         << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
      text(os, lx + 25, legend_y + 4, s.label, "start", 12);
      legend_y += 18;
    }
    os << "</svg>\n";
  }

  std::string render() {
    std::ostringstream os;
    render(os);
    return os.str();
  }

 private:
  double px(double x) const { return kLeft + (x - x0_) / (x1_ - x0_) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0_) / (y1_ - y0_) * (kHeight - kTop - kBottom); }

  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
  }

  static std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
      switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
      }
    }
    return out;
  }

  static void text(std::ostream& os, double x, double y, const std::string& s, const char* anchor, int size) {
    os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\" font-size=\"" << size
       << "\" text-anchor=\"" << anchor << "\">" << escape(s) << "</text>\n";
  }

  void autoscale() {
    double xa = 1e300, xb = -1e300, ya = 1e300, yb = -1e300;
    for (const auto& s : series_)
      for (const auto& [x, y] : s.xy) {
        xa = std::min(xa, x), xb = std::max(xb, x);
        ya = std::min(ya, y), yb = std::max(yb, y);
      }
    if (xa > xb) xa = 0, xb = 1, ya = 0, yb = 1;
    x0_ = std::floor(xa * 10) / 10, x1_ = std::ceil(xb * 10) / 10;
    y0_ = std::floor(ya * 10) / 10, y1_ = std::ceil(yb * 10) / 10;
    if (x1_ <= x0_) x1_ = x0_ + 0.1;
    if (y1_ <= y0_) y1_ = y0_ + 0.1;
  }

  void axes(std::ostream& os) const {
    const double l = kLeft, r = kWidth - kRight, t = kTop, b = kHeight - kBottom;
    os << "<rect x=\"" << l << "\" y=\"" << t << "\" width=\"" << r - l << "\" height=\"" << b - t
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (long k = std::lround(std::ceil(x0_ * 10 - 1e-9)); k <= std::lround(std::floor(x1_ * 10 + 1e-9)); ++k) {
      const double x = px(k / 10.0);
      os << "<line x1=\"" << num(x) << "\" y1=\"" << b << "\" x2=\"" << num(x) << "\" y2=\"" << b + 5
         << "\" stroke=\"black\"/>\n";
      text(os, x, b + 18, tick(k), "middle", 11);
    }
    for (long k = std::lround(std::ceil(y0_ * 10 - 1e-9)); k <= std::lround(std::floor(y1_ * 10 + 1e-9)); ++k) {
      const double y = py(k / 10.0);
      os << "<line x1=\"" << l - 5 << "\" y1=\"" << num(y) << "\" x2=\"" << l << "\" y2=\"" << num(y)
         << "\" stroke=\"black\"/>\n";
      text(os, l - 8, y + 4, tick(k), "end", 11);
    }
    text(os, (l + r) / 2, kHeight - 15, xlabel_, "middle", 13);
    os << "<text x=\"18\" y=\"" << num((t + b) / 2) << "\" font-family=\"sans-serif\" font-size=\"13\" "
       << "text-anchor=\"middle\" transform=\"rotate(-90 18 " << num((t + b) / 2) << ")\">" << escape(ylabel_)
       << "</text>\n";
  }

  static std::string tick(long tenths) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.1f", tenths / 10.0);
    return buf;
  }

  std::string title_, xlabel_, ylabel_;
  std::vector<Series> series_;
  double x0_ = 0, x1_ = 1, y0_ = 0, y1_ = 1;
  bool fixed_ = false;
};

/// The two curves bounding Omega from below (R45 = R16) and above (D1457 = 0)
/// in the (r15, r16) plane.
inline std::string region_svg(int n = 120) {
  Series low{"R45 = R16", "#1f77b4", {}, false};
  Series high{"D1457 = 0", "#d62728", {}, false};
  const double top = constants::kCollapseRadius;
  for (int k = 1; k < n; ++k) {
    const double r15 = top * k / n;
    try {
      const auto lo = detail::low_curve(r15, 2048);
      low.xy.emplace_back(r15, static_cast<double>(lo));
      if (auto hi = detail::first_crossing(detail::Curve::D1457Zero, r15, lo, 2048))
        high.xy.emplace_back(r15, static_cast<double>(*hi));
    } catch (const Error&) {
      // the band degenerates near the ends
    }
  }
  Figure fig("Bracketing curves", "r15", "r16");
  fig.add(high);
  fig.add(low);
  fig.set_range(0.0, 0.7, 0.0, 1.0);
  return fig.render();
}

/// Orthographic view of overlaid configurations: one glyph per body per point.
inline std::string family_svg(const std::vector<FamilyPoint>& pts, double azimuth = 0.5, double elevation = 0.35) {
  const double ca = std::cos(azimuth), sa = std::sin(azimuth), ce = std::cos(elevation), se = std::sin(elevation);
  static const char* colors[] = {"#1f77b4", "#1f77b4", "#1f77b4", "#2ca02c", "#d62728", "#d62728", "#d62728"};
  static const char* names[] = {"body 1", "body 2", "body 3", "body 4", "body 5", "body 6", "body 7"};
  Figure fig("Family configurations", "screen x", "screen y");
  std::vector<Series> bodies;
  for (int i = 0; i < 7; ++i) bodies.push_back({names[i], colors[i], {}, true});
  for (const auto& p : pts) {
    const Configuration cfg = embed(p.params);
    for (std::size_t i = 0; i < 7; ++i) {
      const auto& q = cfg.positions[i];
      const double u = -sa * q[0] + ca * q[1];
      const double v = -se * ca * q[0] - se * sa * q[1] + ce * q[2];
      bodies[i].xy.emplace_back(u, v);
    }
  }
  for (auto& b : bodies) fig.add(std::move(b));
  return fig.render();
}

/// m1, m4, m5 against r15 with m1 + m4 + m5 = 1.
inline std::string masses_svg(const std::vector<FamilyPoint>& pts) {
  Series m1{"m1", "#1f77b4", {}, false}, m4{"m4", "#2ca02c", {}, false}, m5{"m5", "#d62728", {}, false};
  for (const auto& p : pts) {
    m1.xy.emplace_back(p.params.r15, p.masses.m1());
    m4.xy.emplace_back(p.params.r15, p.masses.m4());
    m5.xy.emplace_back(p.params.r15, p.masses.m5());
  }
  Figure fig("Masses along the family", "r15", "mass");
  fig.add(m1);
  fig.add(m4);
  fig.add(m5);
  fig.set_range(0.0, 0.7, 0.0, 1.0);
  return fig.render();
}

}  // namespace stackedcc::plot
