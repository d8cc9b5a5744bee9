#pragma once

// Geometry of the symmetric seven-body configuration: a unit regular
// tetrahedron {1,2,3,4} with an equilateral triangle {5,6,7} parallel to the
// face {1,2,3}. The shape has two degrees of freedom, parametrised by
// (r15, r16); r45 follows from the vanishing 4-volume of the pentachoron
// {1,2,3,4,5}.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stackedcc/error.hpp"
#include "stackedcc/interval.hpp"

namespace stackedcc {

using Vec3 = std::array<double, 3>;

namespace constants {
inline constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
inline constexpr double kSqrt3 = 1.73205080756887729352744634150587237;
inline constexpr double kSqrt6 = 2.44948974278317809819728407470589139;
/// Circumradius of the unit tetrahedron; r15 = r16 = r45 at the collapse point.
inline constexpr double kCollapseRadius = kSqrt6 / 4.0;
/// Height of body 4 above the face {1,2,3}.
inline constexpr double kApexHeight = kSqrt6 / 3.0;
/// Circumradius of the unit equilateral triangle {1,2,3}.
inline constexpr double kBaseRadius = kSqrt3 / 3.0;
}  // namespace constants

namespace detail {
/// An irrational constant as a T: rounded for floating types, enclosed for
/// intervals.
template <class T>
T irrational(long double v) {
  return T(v);
}
template <>
inline Interval irrational<Interval>(long double v) {
  const double d = static_cast<double>(v);
  return Interval::raw(round_down(d), round_up(d));
}
inline constexpr long double kSqrt3L = 1.732050807568877293527446341505872367L;
inline constexpr long double kSqrt6L = 2.449489742783178098197284074705891392L;
}  // namespace detail

struct GeometryOptions {
  /// Absolute tolerance for geometric identities at unit scale.
  double tol = 1e-12;
};

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double distance(const Vec3& a, const Vec3& b) { return norm(sub(a, b)); }

// ---------------------------------------------------------------------------
// Pentachoron constraint and the r45 root

/// g(s15, s16, s45): the cleared 5-point Cayley-Menger determinant of bodies
/// {1,...,5}. It equals 9216 V^2 with V the 4-volume, so g = 0 forces body 5
/// into the 3-space of the tetrahedron.
template <class T>
T pentachoron_constraint(T s15, T s16, T s45) {
  return T(-3) + T(2) * s15 - T(3) * s15 * s15 + T(4) * s16 + T(4) * s15 * s16 - T(4) * s16 * s16 + T(2) * s45 +
         T(2) * s15 * s45 + T(4) * s16 * s45 - T(3) * s45 * s45;
}

namespace detail {

/// Coefficients of g as the quadratic 3 s45^2 - B s45 - C = 0.
template <class T>
struct R45Quadratic {
  T linear;    // B
  T constant;  // C
};

template <class T>
R45Quadratic<T> r45_quadratic(T s15, T s16) {
  return {T(2) + T(2) * s15 + T(4) * s16,
          T(-3) + T(2) * s15 - T(3) * s15 * s15 + T(4) * s16 + T(4) * s15 * s16 - T(4) * s16 * s16};
}

/// Smaller root of the quadratic in s45 (triangle 567 above the base plane).
/// Written as -2C / (B + sqrt(disc)) to avoid cancellation.
template <class T>
T lower_root_s45(T s15, T s16) {
  using std::sqrt;
  const auto q = r45_quadratic(s15, s16);
  const T disc = q.linear * q.linear + T(12) * q.constant;
  return T(-2) * q.constant / (q.linear + sqrt(disc));
}

/// Squared height of body 5 above the base plane, z^2 = s15 - (1 - b)^2 / 3.
template <class T>
T gap_squared(T s15, T s16) {
  const T one_minus_b = T(1) - (s16 - s15);
  return s15 - one_minus_b * one_minus_b / T(3);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Volume identities in the plane-gap coordinates (b, z), z = 1/a.
//
// Signed volumes follow det(qi - qj, qj - qh, qh - qk) in the embed frame, in
// which Delta_1234 = -sqrt(2)/2 and Delta_1457 <= 0 on the admissible region.

namespace volume_forms {

template <class T>
T delta1457(T b, T z) {
  return detail::irrational<T>(detail::kSqrt3L) * b * (T(3) * z - detail::irrational<T>(detail::kSqrt6L) + detail::irrational<T>(detail::kSqrt6L) * b) / T(18);
}
template <class T>
T delta1456(T b, T z) {
  return -delta1457(b, z);
}
template <class T>
T delta1467(T b, T z) {
  return -detail::irrational<T>(detail::kSqrt3L) * b * (T(-6) * z + detail::irrational<T>(detail::kSqrt6L) * b + T(2) * detail::irrational<T>(detail::kSqrt6L)) / T(18);
}
template <class T>
T delta1245(T b, T z) {
  return -detail::irrational<T>(detail::kSqrt3L) * (T(3) * z - detail::irrational<T>(detail::kSqrt6L) + detail::irrational<T>(detail::kSqrt6L) * b) / T(18);
}
template <class T>
T delta1247(T b, T z) {
  return detail::irrational<T>(detail::kSqrt3L) * (T(-3) * z + T(2) * detail::irrational<T>(detail::kSqrt6L) * b + detail::irrational<T>(detail::kSqrt6L)) / T(18);
}
template <class T>
T delta1235(T /*b*/, T z) {
  return -detail::irrational<T>(detail::kSqrt3L) * z / T(2);
}
template <class T>
T delta1257(T b, T z) {
  return detail::irrational<T>(detail::kSqrt3L) * b * z / T(2);
}
template <class T>
T delta1567(T b, T z) {
  return -detail::irrational<T>(detail::kSqrt3L) * b * b * z / T(2);
}
template <class T>
T delta4567(T b, T z) {
  return detail::irrational<T>(detail::kSqrt3L) * b * b * (T(-3) * z + detail::irrational<T>(detail::kSqrt6L)) / T(6);
}
/// Delta_1456 + Delta_1467 as a single closed form.
template <class T>
T delta1456_plus_1467(T b, T z) {
  return -detail::irrational<T>(detail::kSqrt3L) * b * (T(-3) * z + detail::irrational<T>(detail::kSqrt6L) + T(2) * detail::irrational<T>(detail::kSqrt6L) * b) / T(18);
}

}  // namespace volume_forms

// ---------------------------------------------------------------------------
// Domain types

/// Reduced coordinates (r15, r16, r45) of the symmetric configuration.
struct SymmetricParams {
  double r15 = 0.0;
  double r16 = 0.0;
  double r45 = 0.0;

  double s15() const { return r15 * r15; }
  double s16() const { return r16 * r16; }
  double s45() const { return r45 * r45; }
  /// Side of triangle 567; equals r56 by Ptolemy on the trapezoid {1,5,6,2}.
  double b() const { return s16() - s15(); }
  /// Signed height of the plane {5,6,7} above the plane {1,2,3}.
  double gap() const {
    const double rho = b() / constants::kSqrt3;
    const double h = constants::kApexHeight;
    const double z2 = detail::gap_squared(s15(), s16());
    // s45 = rho^2 + (h - z)^2 fixes the sign of z.
    const double linear = (rho * rho + h * h + z2 - s45()) / (2.0 * h);
    const double magnitude = std::sqrt(std::max(z2, 0.0));
    return linear < 0.0 ? -magnitude : magnitude;
  }
  /// Reciprocal plane distance.
  double a() const { return 1.0 / gap(); }
};

/// Seven labelled points; index 0 holds body 1.
struct Configuration {
  std::array<Vec3, 7> positions{};

  const Vec3& body(int label) const {
    if (label < 1 || label > 7) throw Error(ErrorCode::DimensionMismatch, "body label out of range");
    return positions[static_cast<std::size_t>(label - 1)];
  }
  std::span<const Vec3> points() const { return positions; }
};

/// Symmetric n x n matrix of squared distances with zero diagonal.
class SquaredDistanceMatrix {
 public:
  explicit SquaredDistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  SquaredDistanceMatrix(std::size_t n, std::vector<double> row_major) : n_(n), data_(std::move(row_major)) {
    if (data_.size() != n * n) throw Error(ErrorCode::DimensionMismatch, "squared-distance data is not n x n");
    validate();
  }

  static SquaredDistanceMatrix from_points(std::span<const Vec3> pts) {
    SquaredDistanceMatrix m(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) m.set(i, j, dot(sub(pts[i], pts[j]), sub(pts[i], pts[j])));
    return m;
  }

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }

  void validate() const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (data_[i * n_ + i] != 0.0) throw Error(ErrorCode::DimensionMismatch, "nonzero diagonal");
      for (std::size_t j = i + 1; j < n_; ++j) {
        if (data_[i * n_ + j] != data_[j * n_ + i]) throw Error(ErrorCode::DimensionMismatch, "matrix not symmetric");
        if (!(data_[i * n_ + j] > 0.0)) throw Error(ErrorCode::DimensionMismatch, "nonpositive squared distance");
      }
    }
  }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

// ---------------------------------------------------------------------------
// Cayley-Menger determinants

/// Bordered Cayley-Menger determinant of the k+1 points whose squared
/// distances are given. The caller applies the normalisation; see
/// simplex_volume_squared.
inline double cayley_menger(const SquaredDistanceMatrix& sq) {
  sq.validate();
  const std::size_t n = sq.size() + 1;
  if (n < 3) throw Error(ErrorCode::DimensionMismatch, "need at least two points");
  std::vector<long double> a(n * n, 0.0L);
  for (std::size_t i = 1; i < n; ++i) {
    a[i] = 1.0L;
    a[i * n] = 1.0L;
    for (std::size_t j = 1; j < n; ++j) a[i * n + j] = sq(i - 1, j - 1);
  }
  // Gaussian elimination with partial pivoting.
  long double det = 1.0L;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r * n + col]) > std::fabs(a[piv * n + col])) piv = r;
    if (a[piv * n + col] == 0.0L) return 0.0;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      det = -det;
    }
    det *= a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const long double f = a[r * n + col] / a[col * n + col];
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
    }
  }
  return static_cast<double>(det);
}

/// Squared k-volume of the simplex spanned by k+1 points:
/// V^2 = (-1)^(k+1) CM / (2^k (k!)^2).
inline double simplex_volume_squared(const SquaredDistanceMatrix& sq) {
  const std::size_t k = sq.size() - 1;
  double norm = 1.0;
  for (std::size_t i = 1; i <= k; ++i) norm *= 2.0 * static_cast<double>(i) * static_cast<double>(i);
  const double sign = (k % 2 == 1) ? 1.0 : -1.0;
  return sign * cayley_menger(sq) / norm;
}

/// Squared distances of bodies {1,2,3,4,5} under the configuration symmetries.
inline SquaredDistanceMatrix pentachoron_distances(double s15, double s16, double s45) {
  SquaredDistanceMatrix m(5);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) m.set(i, j, 1.0);
  m.set(0, 4, s15);
  m.set(1, 4, s16);  // r25 = r16
  m.set(2, 4, s16);  // r35 = r16
  m.set(3, 4, s45);
  m.validate();
  return m;
}

// ---------------------------------------------------------------------------
// solve_r45

struct R45Root {
  double r45 = 0.0;
  /// Set when the chosen root sits within tolerance of r15 or r16, or when
  /// both roots were admissible.
  bool region_boundary = false;
};

/// The root of g(s15, s16, s45) = 0 in s45 whose square root lies in
/// (r15, r16). Prefers the smaller root.
inline R45Root solve_r45(double r15, double r16, const GeometryOptions& opt = {}) {
  if (!(r15 > 0.0) || !(r16 < 1.0) || r15 > r16 + opt.tol)
    throw Error(ErrorCode::DomainError, "solve_r45 requires 0 < r15 <= r16 < 1");
  const double s15 = r15 * r15, s16 = r16 * r16;
  const auto q = detail::r45_quadratic(s15, s16);
  double disc = q.linear * q.linear + 12.0 * q.constant;
  bool boundary = false;
  if (disc < 0.0) {
    if (disc < -opt.tol) throw Error(ErrorCode::NoRealRoot, "discriminant of the s45 quadratic is negative");
    disc = 0.0;
    boundary = true;
  }
  const double root_disc = std::sqrt(disc);
  const double upper = (q.linear + root_disc) / 6.0;
  const double lower = -2.0 * q.constant / (q.linear + root_disc);

  enum class Fit { None, Tie, Strict };
  auto classify = [&](double s) {
    if (s < 0.0) return Fit::None;
    const double r = std::sqrt(s);
    if (r > r15 + opt.tol && r < r16 - opt.tol) return Fit::Strict;
    if (r >= r15 - opt.tol && r <= r16 + opt.tol) return Fit::Tie;
    return Fit::None;
  };
  const Fit lo_fit = classify(lower), hi_fit = classify(upper);
  if (lo_fit == Fit::Strict) return {std::sqrt(lower), boundary || hi_fit != Fit::None};
  if (lo_fit == Fit::Tie) return {std::sqrt(lower), true};
  if (hi_fit == Fit::Strict) return {std::sqrt(upper), boundary};
  if (hi_fit == Fit::Tie) return {std::sqrt(upper), true};
  throw Error(ErrorCode::NoAdmissibleRoot, "no root of the s45 quadratic gives r45 in (r15, r16)");
}

/// Params at (r15, r16) with r45 from solve_r45.
inline SymmetricParams params_at(double r15, double r16, const GeometryOptions& opt = {}) {
  return {r15, r16, solve_r45(r15, r16, opt).r45};
}

// ---------------------------------------------------------------------------
// Embedding and volumes

/// Places the configuration in a right-handed frame: {1,2,3} a unit
/// equilateral triangle in z = 0 centred at the origin with body 1 on +x,
/// body 4 at (0, 0, sqrt(2/3)), and {5,6,7} an equilateral triangle of side b
/// in the plane z = gap with body 5 in the half-plane of body 1. The collapse
/// b = 0 is accepted.
inline Configuration embed(const SymmetricParams& p, const GeometryOptions& opt = {}) {
  if (!(p.r15 > 0.0 && p.r16 > 0.0 && p.r45 > 0.0))
    throw Error(ErrorCode::InfeasibleEmbedding, "distances must be positive");
  const double b = p.b();
  if (b < -opt.tol) throw Error(ErrorCode::InfeasibleEmbedding, "r16 < r15 gives a negative triangle side");
  const double z2 = detail::gap_squared(p.s15(), p.s16());
  if (z2 < -opt.tol) throw Error(ErrorCode::InfeasibleEmbedding, "no real height realises r15 and r16");
  const double rho = std::max(b, 0.0) / constants::kSqrt3;
  const double h = constants::kApexHeight;
  const double z = p.gap();
  const double s45_check = rho * rho + (h - z) * (h - z);
  if (std::abs(s45_check - p.s45()) > std::sqrt(opt.tol))
    throw Error(ErrorCode::InfeasibleEmbedding, "r45 is inconsistent with the pentachoron constraint");

  const double c = constants::kBaseRadius;
  Configuration cfg;
  cfg.positions[0] = {c, 0.0, 0.0};
  cfg.positions[1] = {-0.5 * c, 0.5, 0.0};
  cfg.positions[2] = {-0.5 * c, -0.5, 0.0};
  cfg.positions[3] = {0.0, 0.0, h};
  cfg.positions[4] = {rho, 0.0, z};
  cfg.positions[5] = {-0.5 * rho, 0.5 * constants::kSqrt3 * rho, z};
  cfg.positions[6] = {-0.5 * rho, -0.5 * constants::kSqrt3 * rho, z};
  return cfg;
}

/// Delta_ijhk = det(qi - qj, qj - qh, qh - qk) for 1-based labels.
inline double signed_volume(std::span<const Vec3> q, int i, int j, int h, int k) {
  const int n = static_cast<int>(q.size());
  for (int v : {i, j, h, k})
    if (v < 1 || v > n) throw Error(ErrorCode::DimensionMismatch, "body index out of range");
  if (i == j || i == h || i == k || j == h || j == k || h == k)
    throw Error(ErrorCode::RepeatedIndex, "signed_volume needs four distinct bodies");
  const auto& qi = q[static_cast<std::size_t>(i - 1)];
  const auto& qj = q[static_cast<std::size_t>(j - 1)];
  const auto& qh = q[static_cast<std::size_t>(h - 1)];
  const auto& qk = q[static_cast<std::size_t>(k - 1)];
  return dot(sub(qi, qj), cross(sub(qj, qh), sub(qh, qk)));
}

inline double signed_volume(const Configuration& cfg, int i, int j, int h, int k) {
  return signed_volume(cfg.points(), i, j, h, k);
}

struct PlaneGap {
  double a = 0.0;    // 1 / gap
  double b = 0.0;    // |q5 - q6|
  double gap = 0.0;  // distance between the planes {1,2,3} and {5,6,7}
};

/// Recovers (a, b) from an embedded configuration. The tetrahedron must have
/// unit edges.
inline PlaneGap plane_gap_params(const Configuration& cfg, const GeometryOptions& opt = {}) {
  constexpr std::array<std::array<int, 2>, 6> edges{{{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}}};
  for (const auto& e : edges)
    if (std::abs(distance(cfg.body(e[0]), cfg.body(e[1])) - 1.0) > opt.tol)
      throw Error(ErrorCode::RegionViolation, "tetrahedron edges must have unit length");
  Vec3 n = cross(sub(cfg.body(2), cfg.body(1)), sub(cfg.body(3), cfg.body(1)));
  const double nn = norm(n);
  for (auto& x : n) x /= nn;
  Vec3 centroid{};
  for (int l = 5; l <= 7; ++l)
    for (int d = 0; d < 3; ++d) centroid[static_cast<std::size_t>(d)] += cfg.body(l)[static_cast<std::size_t>(d)] / 3.0;
  const double gap = std::abs(dot(sub(centroid, cfg.body(1)), n));
  if (gap < opt.tol) throw Error(ErrorCode::DegenerateGap, "the planes {1,2,3} and {5,6,7} coincide");
  return {1.0 / gap, distance(cfg.body(5), cfg.body(6)), gap};
}

/// Squared distances of all seven bodies as prescribed by the symmetry classes.
inline SquaredDistanceMatrix symmetric_distances(const SymmetricParams& p) {
  SquaredDistanceMatrix m(7);
  const double bb = p.b() * p.b();
  auto set = [&](int i, int j, double v) { m.set(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), v); };
  for (auto [i, j] : {std::pair{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}}) set(i, j, 1.0);
  for (auto [i, j] : {std::pair{1, 5}, {2, 6}, {3, 7}}) set(i, j, p.s15());
  for (auto [i, j] : {std::pair{4, 5}, {4, 6}, {4, 7}}) set(i, j, p.s45());
  for (auto [i, j] : {std::pair{5, 6}, {6, 7}, {5, 7}}) set(i, j, bb);
  for (auto [i, j] : {std::pair{1, 6}, {1, 7}, {2, 5}, {2, 7}, {3, 5}, {3, 6}}) set(i, j, p.s16());
  return m;
}

}  // namespace stackedcc
