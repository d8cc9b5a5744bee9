#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "stackedcc/error.hpp"

namespace stackedcc {

namespace detail {
inline double round_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double round_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
}  // namespace detail

/// Closed interval [lo, hi] with outward rounding.
///
/// Every operation is carried out in round-to-nearest and the result is then
/// widened by one ulp on each side, which encloses the exact real result of
/// any correctly rounded IEEE operation. Dependency between operands is not
/// tracked: X - X is [lo-hi, hi-lo], not [0, 0].
class Interval {
 public:
  constexpr Interval() = default;
  constexpr Interval(double point) : lo_(point), hi_(point) {}  // NOLINT: implicit from scalars is intended
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo <= hi)) throw Error(ErrorCode::DomainViolation, "interval with lo > hi");
  }

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double width() const { return hi_ - lo_; }
  double mid() const { return lo_ + 0.5 * (hi_ - lo_); }
  double mag() const { return std::max(std::abs(lo_), std::abs(hi_)); }

  bool contains(double x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool contains_zero() const { return lo_ <= 0.0 && 0.0 <= hi_; }
  bool positive() const { return lo_ > 0.0; }
  bool negative() const { return hi_ < 0.0; }

  Interval operator-() const { return raw(-hi_, -lo_); }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return raw(detail::round_down(a.lo_ + b.lo_), detail::round_up(a.hi_ + b.hi_));
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return raw(detail::round_down(a.lo_ - b.hi_), detail::round_up(a.hi_ - b.lo_));
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const double p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
    return raw(detail::round_down(std::min({p1, p2, p3, p4})), detail::round_up(std::max({p1, p2, p3, p4})));
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw Error(ErrorCode::DomainViolation, "division by an interval containing zero");
    const double q1 = a.lo_ / b.lo_, q2 = a.lo_ / b.hi_, q3 = a.hi_ / b.lo_, q4 = a.hi_ / b.hi_;
    return raw(detail::round_down(std::min({q1, q2, q3, q4})), detail::round_up(std::max({q1, q2, q3, q4})));
  }

  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }
  Interval& operator/=(const Interval& o) { return *this = *this / o; }

  friend bool operator==(const Interval& a, const Interval& b) { return a.lo_ == b.lo_ && a.hi_ == b.hi_; }

  friend std::ostream& operator<<(std::ostream& os, const Interval& x) {
    return os << '[' << x.lo_ << ", " << x.hi_ << ']';
  }

  static Interval raw(double lo, double hi) {
    Interval x;
    x.lo_ = lo;
    x.hi_ = hi;
    return x;
  }

 private:
  double lo_ = 0.0;
  double hi_ = 0.0;
};

inline Interval hull(const Interval& a, const Interval& b) {
  return Interval::raw(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

/// Empty intersections are reported as DomainViolation.
inline Interval intersect(const Interval& a, const Interval& b) {
  const double lo = std::max(a.lo(), b.lo());
  const double hi = std::min(a.hi(), b.hi());
  if (lo > hi) throw Error(ErrorCode::DomainViolation, "empty intersection");
  return Interval::raw(lo, hi);
}

inline Interval abs(const Interval& x) {
  if (x.lo() >= 0.0) return x;
  if (x.hi() <= 0.0) return -x;
  return Interval::raw(0.0, x.mag());
}

inline Interval square(const Interval& x) {
  const Interval a = abs(x);
  return Interval::raw(a.lo() == 0.0 ? 0.0 : detail::round_down(a.lo() * a.lo()), detail::round_up(a.hi() * a.hi()));
}

/// Integer power; even powers of sign-straddling intervals start at 0.
inline Interval pow(const Interval& x, unsigned n) {
  if (n == 0) return Interval(1.0);
  if (n == 1) return x;
  auto chain_down = [n](double v) {
    double r = v;
    for (unsigned i = 1; i < n; ++i) r = detail::round_down(r * v);
    return r;
  };
  auto chain_up = [n](double v) {
    double r = v;
    for (unsigned i = 1; i < n; ++i) r = detail::round_up(r * v);
    return r;
  };
  if (x.lo() >= 0.0) return Interval::raw(x.lo() == 0.0 ? 0.0 : chain_down(x.lo()), chain_up(x.hi()));
  if (n % 2 == 0) {
    const Interval a = abs(x);
    return Interval::raw(a.lo() == 0.0 ? 0.0 : chain_down(a.lo()), chain_up(a.hi()));
  }
  if (x.hi() <= 0.0) return -pow(-x, n);
  return Interval::raw(-chain_up(-x.lo()), chain_up(x.hi()));
}

inline Interval sqrt(const Interval& x) {
  if (x.lo() < 0.0) throw Error(ErrorCode::DomainViolation, "sqrt of an interval with negative part");
  const double lo = std::sqrt(x.lo());
  return Interval::raw(lo == 0.0 ? 0.0 : detail::round_down(lo), detail::round_up(std::sqrt(x.hi())));
}

/// x^-3, the inverse-cube distance factor.
inline Interval recip_cube(const Interval& x) {
  if (x.contains_zero()) throw Error(ErrorCode::DomainViolation, "recip_cube of an interval containing zero");
  return Interval(1.0) / pow(x, 3);
}

/// Restricts x to [0, inf); used where only the feasible part of a box matters.
inline Interval nonnegative_part(const Interval& x) {
  if (x.hi() < 0.0) throw Error(ErrorCode::DomainViolation, "interval entirely negative");
  return Interval::raw(std::max(0.0, x.lo()), x.hi());
}

}  // namespace stackedcc
