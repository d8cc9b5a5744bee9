#pragma once

// Continuation of the family: for each r15 the unique r16 with H = 0 between
// the bracketing curves, followed by the mass solve.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "stackedcc/cc_equations.hpp"
#include "stackedcc/error.hpp"
#include "stackedcc/geometry.hpp"

namespace stackedcc {

struct SolverOptions {
  double tol_h = 1e-13;
  double tol_r = 1e-14;
  /// r15 must lie in [margin, sqrt(6)/4 - margin].
  double margin = 1e-3;
  int polish_steps = 2;
  int monotonicity_samples = 16;
  /// Samples along the feasibility band used to locate the bracketing curves.
  int curve_scan = 2048;
  GeometryOptions geometry;
  CcOptions cc;
};

// ---------------------------------------------------------------------------
// H on a fiber

namespace detail {

/// Shape quantities at (r15, r16) on the branch z > 0.
template <class T>
struct Fiber {
  T r15, r16, r45, b, z;
};

template <class T>
Fiber<T> fiber_at(T r15, T r16) {
  using std::sqrt;
  const T s15 = r15 * r15, s16 = r16 * r16;
  const T z2 = gap_squared(s15, s16);
  const T s45 = lower_root_s45(s15, s16);
  return {r15, r16, sqrt(s45 > T(0) ? s45 : T(0)), s16 - s15, sqrt(z2 > T(0) ? z2 : T(0))};
}

template <class T>
T inv_cube(T r) {
  return T(1) / (r * r * r);
}

/// H = (R15 - R45) D1456 - (R45 - R16) D1467 from the plane-gap closed forms.
template <class T>
T h_closed(const Fiber<T>& f) {
  using std::abs;
  const T d1456 = abs(volume_forms::delta1456(f.b, f.z));
  const T d1467 = abs(volume_forms::delta1467(f.b, f.z));
  const T r15 = inv_cube(f.r15), r16 = inv_cube(f.r16), r45 = inv_cube(f.r45);
  return (r15 - r45) * d1456 - (r45 - r16) * d1467;
}

/// Companion magnitude |R15 - R45| D1456 + |R45 - R16| D1467.
template <class T>
T h_scale(const Fiber<T>& f) {
  using std::abs;
  const T d1456 = abs(volume_forms::delta1456(f.b, f.z));
  const T d1467 = abs(volume_forms::delta1467(f.b, f.z));
  const T r15 = inv_cube(f.r15), r16 = inv_cube(f.r16), r45 = inv_cube(f.r45);
  return abs(r15 - r45) * d1456 + abs(r45 - r16) * d1467;
}

inline void check_region_closure(const SymmetricParams& p, const GeometryOptions& g) {
  const double tol = std::sqrt(g.tol);
  if (!(p.r15 > 0.0 && p.r16 < 1.0)) throw Error(ErrorCode::RegionViolation, "distances outside (0, 1)");
  if (p.r15 > p.r45 + tol || p.r45 > p.r16 + tol) throw Error(ErrorCode::RegionViolation, "ordering r15 <= r45 <= r16 fails");
  if (p.b() < -g.tol) throw Error(ErrorCode::RegionViolation, "negative triangle side");
  if (volume_forms::delta1457(p.b(), p.gap()) > tol)
    throw Error(ErrorCode::RegionViolation, "Delta_1457 > 0: triangle 567 leaves the tetrahedron");
}

}  // namespace detail

/// H from the volumes of the embedded configuration.
inline double H(const SymmetricParams& p, const SolverOptions& opt = {}) {
  detail::check_region_closure(p, opt.geometry);
  const Configuration cfg = embed(p, opt.geometry);
  const double d1456 = std::abs(signed_volume(cfg, 1, 4, 5, 6));
  const double d1467 = std::abs(signed_volume(cfg, 1, 4, 6, 7));
  const double R15 = detail::inv_cube(p.r15), R16 = detail::inv_cube(p.r16), R45 = detail::inv_cube(p.r45);
  return (R15 - R45) * d1456 - (R45 - R16) * d1467;
}

/// H from the plane-gap closed forms.
inline double H_closed_form(const SymmetricParams& p, const SolverOptions& opt = {}) {
  detail::check_region_closure(p, opt.geometry);
  return detail::h_closed(detail::Fiber<double>{p.r15, p.r16, p.r45, p.b(), p.gap()});
}

// ---------------------------------------------------------------------------
// Bracketing curves

enum class FarCurve { D1457Zero, R45EqR15 };

inline const char* to_string(FarCurve c) { return c == FarCurve::D1457Zero ? "D1457=0" : "R45=R15"; }

struct Bracket {
  double r16_low = 0.0;   // on R45 = R16, H > 0
  double r16_high = 0.0;  // on the far curve, H < 0
  FarCurve far_curve = FarCurve::D1457Zero;
  double h_low = 0.0;
  double h_high = 0.0;
};

namespace detail {

using Real = long double;

/// Feasible r16 at fixed r15: body 5 on the circle of radius r15 about body 1,
/// angle theta from the base plane, r16^2 = s15 + 1 - sqrt(3) r15 cos(theta).
inline Real band_r16(Real r15, Real theta) {
  return std::sqrt(r15 * r15 + 1.0L - kSqrt3L * r15 * std::cos(theta));
}

inline Real band_theta_max(Real r15) {
  // r16 < 1 requires cos(theta) > r15 / sqrt(3).
  const Real c = r15 / kSqrt3L;
  return c >= 1.0L ? 0.0L : std::acos(c);
}

enum class Curve { R45EqR16, D1457Zero, R45EqR15 };

/// Curve equations at (r15, r16); each changes sign across its curve.
inline Real curve_value(Curve c, Real r15, Real r16) {
  const auto f = fiber_at(r15, r16);
  switch (c) {
    case Curve::R45EqR16: return f.r45 - f.r16;
    case Curve::D1457Zero: return -volume_forms::delta1457(f.b, f.z);
    case Curve::R45EqR15: return f.r45 - f.r15;
  }
  return 0.0L;
}

inline Real bisect_curve(Curve c, Real r15, Real a, Real b) {
  Real fa = curve_value(c, r15, a);
  for (int it = 0; it < 200; ++it) {
    const Real m = 0.5L * (a + b);
    if (m <= a || m >= b) break;
    const Real fm = curve_value(c, r15, m);
    if ((fm > 0.0L) == (fa > 0.0L)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5L * (a + b);
}

/// First r16 after `from` along the band where curve c leaves the Omega side,
/// or nullopt if it never does.
inline std::optional<Real> first_crossing(Curve c, Real r15, Real from, int samples) {
  const Real tmax = band_theta_max(r15);
  Real prev = from;
  Real prev_val = curve_value(c, r15, from);
  for (int k = 1; k < samples; ++k) {
    const Real r16 = band_r16(r15, tmax * k / samples);
    if (r16 <= from) continue;
    const Real v = curve_value(c, r15, r16);
    if ((v > 0.0L) != (prev_val > 0.0L)) return bisect_curve(c, r15, prev, r16);
    prev = r16;
    prev_val = v;
  }
  return std::nullopt;
}

/// The R45 = R16 curve: r45 - r16 goes from positive to negative along the band.
inline Real low_curve(Real r15, int samples) {
  const Real tmax = band_theta_max(r15);
  Real prev = band_r16(r15, 0.0L);
  for (int k = 1; k < samples; ++k) {
    const Real r16 = band_r16(r15, tmax * k / samples);
    if (curve_value(Curve::R45EqR16, r15, r16) <= 0.0L) return bisect_curve(Curve::R45EqR16, r15, prev, r16);
    prev = r16;
  }
  throw Error(ErrorCode::BracketFailure, "curve R45 = R16 not found");
}

inline Real compute_r15_star(int samples) {
  // Below r15*, r45 > r15 where D1457 vanishes; above it, r45 < r15 there.
  auto phi = [samples](Real r15) {
    const Real lo = low_curve(r15, samples);
    const auto d = first_crossing(Curve::D1457Zero, r15, lo, samples);
    if (!d) throw Error(ErrorCode::BracketFailure, "curve D1457 = 0 not found");
    return fiber_at(r15, *d).r45 - r15;
  };
  Real a = 0.3L, b = 0.6L;
  const Real fa = phi(a);
  for (int it = 0; it < 100; ++it) {
    const Real m = 0.5L * (a + b);
    if ((phi(m) > 0.0L) == (fa > 0.0L))
      a = m;
    else
      b = m;
  }
  return 0.5L * (a + b);
}

inline Real fiber_h(Real r15, Real r16) { return h_closed(fiber_at(r15, r16)); }

}  // namespace detail

/// The r15 where the far bracketing curve switches from D1457 = 0 to
/// R45 = R15. Computed once.
inline double r15_star() {
  static const double value = static_cast<double>(detail::compute_r15_star(SolverOptions{}.curve_scan));
  return value;
}

inline Bracket bracket_r16(double r15, const SolverOptions& opt = {}) {
  if (!(r15 > 0.0 && r15 < constants::kCollapseRadius))
    throw Error(ErrorCode::DomainError, "r15 must lie in (0, sqrt(6)/4)");
  const detail::Real x = r15;
  const detail::Real lo = detail::low_curve(x, opt.curve_scan);
  Bracket br;
  br.far_curve = r15 < r15_star() ? FarCurve::D1457Zero : FarCurve::R45EqR15;
  const auto curve = br.far_curve == FarCurve::D1457Zero ? detail::Curve::D1457Zero : detail::Curve::R45EqR15;
  auto hi = detail::first_crossing(curve, x, lo, opt.curve_scan);
  if (!hi && curve == detail::Curve::R45EqR15) {
    // At r15* the curve R45 = R15 only touches the band, where it meets D1457 = 0.
    hi = detail::first_crossing(detail::Curve::D1457Zero, x, lo, opt.curve_scan);
    br.far_curve = FarCurve::D1457Zero;
  }
  if (!hi) throw Error(ErrorCode::BracketFailure, std::string("far curve ") + to_string(br.far_curve) + " not found");
  br.r16_low = static_cast<double>(lo);
  br.r16_high = static_cast<double>(*hi);
  br.h_low = static_cast<double>(detail::fiber_h(x, lo));
  br.h_high = static_cast<double>(detail::fiber_h(x, *hi));
  if (!(br.h_low > 0.0 && br.h_high < 0.0)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "H does not change sign: H(%.17g) = %.6g, H(%.17g) = %.6g", br.r16_low, br.h_low,
                  br.r16_high, br.h_high);
    throw Error(ErrorCode::BracketFailure, buf);
  }
  return br;
}

/// H at n equispaced r16 values from r16_low to r16_high inclusive.
inline std::vector<double> sample_h_across_bracket(double r15, int n, const SolverOptions& opt = {}) {
  const Bracket br = bracket_r16(r15, opt);
  std::vector<double> out;
  const detail::Real lo = br.r16_low, hi = br.r16_high;
  for (int k = 0; k < n; ++k) {
    const detail::Real r16 = lo + (hi - lo) * k / (n - 1);
    out.push_back(static_cast<double>(detail::fiber_h(static_cast<detail::Real>(r15), r16)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Region probe

struct RegionProbe {
  bool on_curve_R45_eq_R16 = false;
  bool on_curve_D1457_eq_0 = false;
  bool on_curve_R45_eq_R15 = false;
  int H_sign = 0;
};

inline RegionProbe probe(double r15, double r16, double tol = 1e-9) {
  const auto f = detail::fiber_at<detail::Real>(r15, r16);
  RegionProbe p;
  p.on_curve_R45_eq_R16 = std::abs(static_cast<double>(f.r45 - f.r16)) < tol;
  p.on_curve_D1457_eq_0 = std::abs(static_cast<double>(volume_forms::delta1457(f.b, f.z))) < tol;
  p.on_curve_R45_eq_R15 = std::abs(static_cast<double>(f.r45 - f.r15)) < tol;
  const double h = static_cast<double>(detail::h_closed(f));
  p.H_sign = (h > 0.0) - (h < 0.0);
  return p;
}

// ---------------------------------------------------------------------------
// Masses

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Coefficient matrix of (m1, m4, m5) in f251, f271, f461.
inline Matrix3 mass_matrix(const SymmetricParams& p, const SolverOptions& opt = {}) {
  detail::check_region_closure(p, opt.geometry);
  const Configuration cfg = embed(p, opt.geometry);
  auto D = [&](int i, int j, int h, int k) { return std::abs(signed_volume(cfg, i, j, h, k)); };
  const double R15 = detail::inv_cube(p.r15), R16 = detail::inv_cube(p.r16), R45 = detail::inv_cube(p.r45);
  const double R56 = detail::inv_cube(p.b());
  const double d1235 = D(1, 2, 3, 5), d1245 = D(1, 2, 4, 5), d1247 = D(1, 2, 4, 7), d1257 = D(1, 2, 5, 7);
  const double d1456 = D(1, 4, 5, 6), d1467 = D(1, 4, 6, 7);
  Matrix3 A{};
  A[0] = {(1.0 - R16) * d1235, (R45 - 1.0) * d1245, (R16 - R56) * d1257};
  A[1] = {(1.0 - R15) * d1235, (R45 - 1.0) * d1247, (2.0 * R56 - R16 - R15) * d1257};
  A[2] = {(1.0 - R15) * d1245 + (R16 - 1.0) * d1247, 0.0, (R56 - R45) * (d1456 + d1467)};
  return A;
}

/// Positive null vector of A from rows 1 and 3, normalised to m1 + m4 + m5 = 1,
/// with lambda from the per-body Rayleigh quotients.
inline MassVector solve_masses(const SymmetricParams& p, const SolverOptions& opt = {}) {
  const Matrix3 A = mass_matrix(p, opt);
  if (!(A[0][0] < 0.0 && A[0][1] > 0.0 && A[0][2] < 0.0 && A[2][0] < 0.0 && A[2][2] > 0.0))
    throw Error(ErrorCode::MassSignFailure, "rows 1 and 3 of the mass matrix lack the expected sign pattern");
  const double m5 = -A[2][0] / A[2][2];
  const double m4 = -(A[0][0] + A[0][2] * m5) / A[0][1];
  const double total = 1.0 + m4 + m5;
  MassVector mv = MassVector::symmetric(1.0 / total, m4 / total, m5 / total);
  if (!(mv.m1() > 0.0 && mv.m4() > 0.0 && mv.m5() > 0.0))
    throw Error(ErrorCode::MassSignFailure, "null vector is not single-signed");
  mv.lambda = all_residuals(embed(p, opt.geometry), mv, opt.cc).lambda;
  return mv;
}

// ---------------------------------------------------------------------------
// Family points

struct FamilyPoint {
  SymmetricParams params;
  MassVector masses;
  ResidualReport residuals;
  std::pair<double, double> bracket{0.0, 0.0};
  FarCurve far_curve = FarCurve::D1457Zero;
  /// H at the returned params and |H| / (|R15 - R45| D1456 + |R45 - R16| D1467).
  double h_value = 0.0;
  double h_relative = 0.0;
};

inline FamilyPoint solve_family_point(double r15, const SolverOptions& opt = {}) {
  using detail::Real;
  if (!(r15 >= opt.margin && r15 <= constants::kCollapseRadius - opt.margin))
    throw Error(ErrorCode::DomainError, "r15 outside [margin, sqrt(6)/4 - margin]");
  const Bracket br = bracket_r16(r15, opt);
  const Real x = r15;

  // Theorem-level uniqueness is assumed; a coarse sign check guards it.
  {
    int changes = 0;
    double prev = br.h_low;
    const int n = std::max(opt.monotonicity_samples, 2);
    for (int k = 1; k < n; ++k) {
      const Real r16 = br.r16_low + (static_cast<Real>(br.r16_high) - br.r16_low) * k / (n - 1);
      const double h = static_cast<double>(detail::fiber_h(x, r16));
      if ((h > 0.0) != (prev > 0.0)) ++changes;
      prev = h;
    }
    if (changes != 1) throw Error(ErrorCode::BracketFailure, "H changes sign more than once across the bracket");
  }

  // Bisection until the bracket is narrower than tol_r with relative |H| below
  // tol_h (or long double runs out of resolution), then Newton polish.
  Real a = br.r16_low, b = br.r16_high;
  while (true) {
    const Real m = 0.5L * (a + b);
    if (m <= a || m >= b) break;
    const Real hm = detail::fiber_h(x, m);
    if (hm == 0.0L) {
      a = b = m;
      break;
    }
    if (b - a < opt.tol_r && std::abs(hm) < opt.tol_h * detail::h_scale(detail::fiber_at(x, m))) {
      a = b = m;
      break;
    }
    if (hm > 0.0L)
      a = m;
    else
      b = m;
  }
  const std::pair<double, double> final_bracket{static_cast<double>(a), static_cast<double>(b)};
  Real r16 = 0.5L * (a + b);
  for (int it = 0; it < opt.polish_steps; ++it) {
    const Real step = 1e-9L * r16;
    const Real h0 = detail::fiber_h(x, r16);
    const Real dh = (detail::fiber_h(x, r16 + step) - detail::fiber_h(x, r16 - step)) / (2.0L * step);
    if (dh == 0.0L) break;
    const Real next = r16 - h0 / dh;
    if (!(next >= a && next <= b)) break;
    if (std::abs(detail::fiber_h(x, next)) > std::abs(h0)) break;
    r16 = next;
  }

  const auto fib = detail::fiber_at(x, r16);
  FamilyPoint fp;
  fp.params = {r15, static_cast<double>(r16), static_cast<double>(fib.r45)};
  fp.bracket = final_bracket;
  fp.far_curve = br.far_curve;
  const auto at_double = detail::Fiber<Real>{x, static_cast<Real>(fp.params.r16), static_cast<Real>(fp.params.r45),
                                             static_cast<Real>(fp.params.b()), static_cast<Real>(fp.params.gap())};
  fp.h_value = static_cast<double>(detail::h_closed(at_double));
  fp.h_relative = static_cast<double>(std::abs(detail::h_closed(at_double)) / detail::h_scale(at_double));
  fp.masses = solve_masses(fp.params, opt);
  fp.residuals = all_residuals(embed(fp.params, opt.geometry), fp.masses, opt.cc);
  return fp;
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepEntry {
  double r15 = 0.0;
  std::optional<FamilyPoint> point;
  std::optional<ErrorCode> error;
  std::string message;
};

/// Solves every grid value; the output order follows the grid and each entry
/// is independent of scheduling.
inline std::vector<SweepEntry> sweep(const std::vector<double>& grid, const SolverOptions& opt = {},
                                     unsigned threads = 1) {
  std::vector<SweepEntry> out(grid.size());
  (void)r15_star();  // initialise the cache before workers start
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      out[i].r15 = grid[i];
      try {
        out[i].point = solve_family_point(grid[i], opt);
      } catch (const Error& e) {
        out[i].error = e.code();
        out[i].message = e.what();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(grid.size(), 1))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

/// Uniform grid of n points on [lo, hi] inclusive.
inline std::vector<double> uniform_grid(double lo, double hi, int n) {
  std::vector<double> g;
  if (n <= 0) return g;
  if (n == 1) return {lo};
  for (int k = 0; k < n; ++k) g.push_back(lo + (hi - lo) * k / (n - 1));
  return g;
}

// ---------------------------------------------------------------------------
// CSV and JSON

struct FamilyRow {
  double r15, r16, r45, m1, m4, m5, lambda, max_f, max_cc;
};

inline constexpr const char* kFamilyCsvHeader = "r15,r16,r45,m1,m4,m5,lambda,max_f,max_cc";

inline FamilyRow to_row(const FamilyPoint& p) {
  return {p.params.r15, p.params.r16, p.params.r45, p.masses.m1(), p.masses.m4(), p.masses.m5(),
          p.masses.lambda, p.residuals.max_f, p.residuals.max_cc};
}

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_family_csv(std::ostream& os, const std::vector<FamilyRow>& rows) {
  os << kFamilyCsvHeader << '\n';
  for (const auto& r : rows) {
    const double v[] = {r.r15, r.r16, r.r45, r.m1, r.m4, r.m5, r.lambda, r.max_f, r.max_cc};
    for (std::size_t i = 0; i < 9; ++i) os << (i ? "," : "") << format_g17(v[i]);
    os << '\n';
  }
}

inline std::vector<FamilyRow> read_family_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kFamilyCsvHeader)
    throw Error(ErrorCode::ParseError, "missing or unexpected CSV header");
  std::vector<FamilyRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::array<double, 9> v{};
    std::stringstream ss(line);
    std::string cell;
    std::size_t i = 0;
    while (std::getline(ss, cell, ',')) {
      if (i >= 9) throw Error(ErrorCode::ParseError, "too many CSV fields");
      std::size_t used = 0;
      try {
        v[i++] = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad number '" + cell + "'");
      }
      if (used != cell.size()) throw Error(ErrorCode::ParseError, "bad number '" + cell + "'");
    }
    if (i != 9) throw Error(ErrorCode::ParseError, "expected 9 CSV fields");
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8]});
  }
  return rows;
}

}  // namespace stackedcc
