#pragma once

// Interval certification that H' < 0 on Omega_H, rational spot checks, and
// sign-change location of p1 / p2 along the family.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <queue>
#include <string>
#include <thread>
#include <vector>

#include "stackedcc/error.hpp"
#include "stackedcc/exact_poly.hpp"
#include "stackedcc/family_solver.hpp"
#include "stackedcc/geometry.hpp"
#include "stackedcc/interval.hpp"

namespace stackedcc {

/// Encloses a rational: the double nearest toward zero and one ulp outward.
inline Interval to_interval(const Rational& q) {
  const double d = q.get_d();
  if (Rational(d) == q) return Interval(d);
  return Interval::raw(detail::round_down(d), detail::round_up(d));
}

// ---------------------------------------------------------------------------
// Compiled polynomials in (r15, r16, r45)

class CompiledPoly {
 public:
  CompiledPoly() = default;

  /// p must be over the default variables and free of w.
  explicit CompiledPoly(const MultiPoly& p, bool with_gradient = true) {
    if (p.variables() != MultiPoly::default_variables())
      throw Error(ErrorCode::DimensionMismatch, "compiled polynomials use the default variables");
    for (const auto& [e, c] : p.terms()) {
      if (e[3] != 0) throw Error(ErrorCode::DimensionMismatch, "compiled polynomials cannot involve w");
      terms_.push_back({to_interval(c), c.get_d(), e[1], e[0], e[2]});
      max_deg_ = std::max({max_deg_, e[0], e[1], e[2]});
    }
    if (with_gradient)
      for (const char* v : {"r15", "r16", "r45"}) grad_.emplace_back(p.derivative(v), false);
  }

  std::size_t size() const { return terms_.size(); }

  double operator()(double r15, double r16, double r45) const {
    double s = 0.0;
    for (const auto& t : terms_) s += t.approx * ipow(r15, t.e15) * ipow(r16, t.e16) * ipow(r45, t.e45);
    return s;
  }

  /// Natural interval extension.
  Interval eval(const Interval& r15, const Interval& r16, const Interval& r45) const {
    const auto p15 = powers(r15), p16 = powers(r16), p45 = powers(r45);
    Interval s(0.0);
    for (const auto& t : terms_) s += t.coef * p15[t.e15] * p16[t.e16] * p45[t.e45];
    return s;
  }

  /// Mean-value form about the midpoint, intersected with the natural
  /// extension. r45 is treated as independent over its enclosure.
  Interval eval_mean_value(const Interval& r15, const Interval& r16, const Interval& r45) const {
    const Interval natural = eval(r15, r16, r45);
    if (grad_.empty()) return natural;
    const double c15 = r15.mid(), c16 = r16.mid(), c45 = r45.mid();
    Interval mv = eval(Interval(c15), Interval(c16), Interval(c45));
    mv += grad_[0].eval(r15, r16, r45) * (r15 - Interval(c15));
    mv += grad_[1].eval(r15, r16, r45) * (r16 - Interval(c16));
    mv += grad_[2].eval(r15, r16, r45) * (r45 - Interval(c45));
    const double lo = std::max(natural.lo(), mv.lo()), hi = std::min(natural.hi(), mv.hi());
    return lo <= hi ? Interval::raw(lo, hi) : natural;
  }

 private:
  struct Term {
    Interval coef;
    double approx;
    unsigned e15, e16, e45;
  };

  static double ipow(double x, unsigned n) {
    double r = 1.0;
    for (unsigned i = 0; i < n; ++i) r *= x;
    return r;
  }

  std::vector<Interval> powers(const Interval& x) const {
    std::vector<Interval> p(max_deg_ + 1);
    for (unsigned k = 0; k <= max_deg_; ++k) p[k] = pow(x, k);
    return p;
  }

  std::vector<Term> terms_;
  std::vector<CompiledPoly> grad_;
  unsigned max_deg_ = 0;
};

// ---------------------------------------------------------------------------
// r45 enclosure

struct R45Enclosure {
  Interval s45;
  Interval r45;
  /// The discriminant interval reaches below zero: part of the box has no
  /// real r45 and the enclosure covers only the part that does.
  bool partial = false;
};

namespace detail {

struct ConstraintForms {
  CompiledPoly g{pentachoron_poly()};
  CompiledPoly dg45{pentachoron_poly().derivative("r45"), false};
  static const ConstraintForms& instance() {
    static const ConstraintForms f;
    return f;
  }
};

}  // namespace detail

/// Encloses the admissible (smaller) root over a box via the stable quadratic
/// formula, then tightens it with interval-Newton steps on g in r45, with g
/// taken in mean-value form over the box.
inline R45Enclosure enclose_r45(const Interval& r15, const Interval& r16, int newton_steps = 3) {
  const Interval s15 = square(r15), s16 = square(r16);
  const auto q = detail::r45_quadratic(s15, s16);
  const Interval disc = square(q.linear) + Interval(12.0) * q.constant;
  if (disc.hi() < 0.0) throw Error(ErrorCode::NoEnclosure, "discriminant negative on the whole box");
  R45Enclosure out;
  out.partial = disc.lo() < 0.0;
  const Interval s45 = Interval(-2.0) * q.constant / (q.linear + sqrt(nonnegative_part(disc)));
  if (s45.hi() < 0.0) throw Error(ErrorCode::NoEnclosure, "no nonnegative s45 on the box");
  Interval r45 = sqrt(nonnegative_part(s45));
  if (!out.partial) {
    const auto& forms = detail::ConstraintForms::instance();
    for (int k = 0; k < newton_steps; ++k) {
      const Interval slope = forms.dg45.eval(r15, r16, r45);
      if (slope.contains_zero()) break;
      const double c = r45.mid();
      const Interval n = Interval(c) - forms.g.eval_mean_value(r15, r16, Interval(c)) / slope;
      const double lo = std::max(r45.lo(), n.lo()), hi = std::min(r45.hi(), n.hi());
      if (lo > hi) break;  // only possible through rounding; keep the wider enclosure
      if (hi - lo > 0.9 * r45.width()) {
        r45 = Interval::raw(lo, hi);
        break;
      }
      r45 = Interval::raw(lo, hi);
    }
  }
  out.r45 = r45;
  out.s45 = square(r45);
  return out;
}

// ---------------------------------------------------------------------------
// Box certification

enum class Verdict { ExcludedNoRoot, CertifiedP1Positive, CertifiedP2Positive, CertifiedHprimeNegative, Undecided };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::ExcludedNoRoot: return "ExcludedNoRoot";
    case Verdict::CertifiedP1Positive: return "CertifiedP1Positive";
    case Verdict::CertifiedP2Positive: return "CertifiedP2Positive";
    case Verdict::CertifiedHprimeNegative: return "CertifiedHprimeNegative";
    case Verdict::Undecided: return "Undecided";
  }
  return "?";
}

struct Box {
  Interval r15, r16;
};

struct BoxCertificate {
  Box box;
  Interval r45_enclosure;
  Verdict verdict = Verdict::Undecided;
  int depth = 0;
};

struct CertifyOptions {
  int max_depth = 24;
  std::size_t budget = 1000000;
  /// Seed column density: this many columns would span all of (0, sqrt(6)/4);
  /// a domain gets its proportional share (at least one).
  int seed_columns = 2048;
  /// Largest r16 : r15 side ratio of a seed box. Columns are cut along r16 so
  /// that depth is not spent equalizing the sides of tall columns.
  double seed_aspect = 64.0;
  unsigned threads = 1;
  double margin = 1e-3;
  bool use_p1 = true;
  bool use_p2 = true;
  bool use_direct = true;
  bool keep_certificates = false;
};

/// Polynomial pieces used on every box, built once from exact_poly.
class CertifyKernel {
 public:
  CertifyKernel()
      : p1_(build_named(NamedPoly::P1)),
        p2_(build_named(NamedPoly::P2)),
        t2_(build_t2(), false),
        d56_(d1456_squared()),
        d67_(d1467_squared()) {}

  static const CertifyKernel& instance() {
    static const CertifyKernel k;
    return k;
  }

  const CompiledPoly& p1() const { return p1_; }
  const CompiledPoly& p2() const { return p2_; }

  /// Interval failures (a divisor or square root straddling its domain
  /// edge) leave the box undecided.
  Verdict classify(const Box& box, const CertifyOptions& opt, Interval* r45_out = nullptr) const {
    try {
      return classify_impl(box, opt, r45_out);
    } catch (const Error&) {
      return Verdict::Undecided;
    }
  }

  Verdict classify_impl(const Box& box, const CertifyOptions& opt, Interval* r45_out) const {
    const Interval r15 = box.r15, r16 = box.r16;
    R45Enclosure enc;
    try {
      enc = enclose_r45(r15, r16);
    } catch (const Error&) {
      return Verdict::ExcludedNoRoot;
    }
    const Interval r45 = enc.r45;
    if (r45_out) *r45_out = r45;
    const Interval s15 = square(r15), s16 = square(r16);
    const Interval z2 = detail::gap_squared(s15, s16);
    if (z2.hi() < 0.0) return Verdict::ExcludedNoRoot;
    // Omega: r15 < r45 < r16 and Delta_1457 <= 0.
    if (r45.lo() > r16.hi() || r45.hi() < r15.lo()) return Verdict::ExcludedNoRoot;
    const Interval b = s16 - s15;
    const Interval z = sqrt(nonnegative_part(z2));
    const Interval d1457 = volume_forms::delta1457(b, z);
    if (d1457.lo() > 0.0) return Verdict::ExcludedNoRoot;
    if (b.hi() <= 0.0) return Verdict::ExcludedNoRoot;

    // (i) H bounded away from zero.
    const Interval h = h_interval(r15, r16, r45, b, z);
    if (!h.contains_zero()) return Verdict::ExcludedNoRoot;

    // Side conditions shared by rules (ii) and (iii).
    const Interval s45 = enc.s45;
    const Interval den = Interval(1.0) + s15 + Interval(2.0) * s16 - Interval(3.0) * s45;
    const Interval num = Interval(1.0) + s15 - Interval(2.0) * s16 + s45;
    const Interval d1467 = volume_forms::delta1467(b, z);
    const bool sides = !enc.partial && r15.hi() < r45.lo() && r45.hi() < r16.lo() && den.positive() &&
                       num.positive() && d1457.negative() && !d1467.contains_zero() &&
                       t2_.eval(r15, r16, r45).positive();
    if (sides) {
      if (opt.use_p1 && p1_.eval_mean_value(r15, r16, r45).positive()) return Verdict::CertifiedP1Positive;
      if (opt.use_p2 && p2_.eval_mean_value(r15, r16, r45).positive()) return Verdict::CertifiedP2Positive;
    }
    // (iv) the full derivative.
    if (opt.use_direct && !enc.partial) {
      try {
        if (h_prime_interval(r15, r16, r45, s15, s16, s45).negative()) return Verdict::CertifiedHprimeNegative;
      } catch (const Error&) {
        // a divisor straddles zero on this box
      }
    }
    return Verdict::Undecided;
  }

  /// H from the plane-gap closed forms over a box.
  static Interval h_interval(const Interval& r15, const Interval& r16, const Interval& r45, const Interval& b,
                             const Interval& z) {
    return detail::h_closed(detail::Fiber<Interval>{r15, r16, r45, b, z});
  }

  /// 2 H' = F1 / D1456 + F2 / D1467 with the squared volumes as polynomials.
  Interval h_prime_interval(const Interval& r15, const Interval& r16, const Interval& r45, const Interval& s15,
                            const Interval& s16, const Interval& s45) const {
    const Interval den = Interval(1.0) + s15 + Interval(2.0) * s16 - Interval(3.0) * s45;
    const Interval num = Interval(1.0) + s15 - Interval(2.0) * s16 + s45;
    const Interval r45p = Interval(-2.0) * r16 * num / (r45 * den);
    const Interval d56 = nonnegative_part(d56_.eval_mean_value(r15, r16, r45));
    const Interval d67 = nonnegative_part(d67_.eval_mean_value(r15, r16, r45));
    const Interval dd56 = d56_grad16_.eval(r15, r16, r45) + d56_grad45_.eval(r15, r16, r45) * r45p;
    const Interval dd67 = d67_grad16_.eval(r15, r16, r45) + d67_grad45_.eval(r15, r16, r45) * r45p;
    const Interval R15 = recip_cube(r15), R16 = recip_cube(r16), R45 = recip_cube(r45);
    const Interval q45 = Interval(1.0) / pow(r45, 4), q16 = Interval(1.0) / pow(r16, 4);
    const Interval f1 = Interval(6.0) * q45 * r45p * d56 + (R15 - R45) * dd56;
    const Interval f2 = Interval(6.0) * (q45 * r45p - q16) * d67 - (R45 - R16) * dd67;
    return f1 / sqrt(d56) + f2 / sqrt(d67);
  }

 private:
  static MultiPoly d1456_squared() {
    const MultiPoly one(1);
    const MultiPoly r15 = MultiPoly::variable("r15"), r16 = MultiPoly::variable("r16"), r45 = MultiPoly::variable("r45");
    const MultiPoly s15 = r15 * r15, s16 = r16 * r16, s45 = r45 * r45, b = s16 - s15;
    const MultiPoly zero(0);
    // bodies {1, 4, 5, 6}
    const std::vector<std::vector<MultiPoly>> sq{
        {zero, one, s15, s16},
        {one, zero, s45, s45},
        {s15, s45, zero, b * b},
        {s16, s45, b * b, zero},
    };
    return cayley_menger_poly(sq) / Rational(8);
  }

  CompiledPoly p1_, p2_, t2_, d56_, d67_;
  CompiledPoly d56_grad16_{d1456_squared().derivative("r16"), false};
  CompiledPoly d56_grad45_{d1456_squared().derivative("r45"), false};
  CompiledPoly d67_grad16_{d1467_squared().derivative("r16"), false};
  CompiledPoly d67_grad45_{d1467_squared().derivative("r45"), false};
};

struct CertificationReport {
  double domain_lo = 0.0, domain_hi = 0.0;
  int max_depth = 0;
  std::size_t budget = 0;
  std::size_t seeds = 0;
  std::size_t boxes_processed = 0;
  bool budget_exhausted = false;
  std::map<std::string, std::size_t> verdict_counts;
  std::map<int, std::size_t> depth_histogram;
  std::vector<BoxCertificate> undecided;
  std::vector<BoxCertificate> certificates;  // only with keep_certificates
  double wall_seconds = 0.0;

  bool pass() const { return undecided.empty() && !budget_exhausted; }

  /// Measure of the union of r15 ranges of undecided boxes.
  double undecided_r15_measure() const {
    std::vector<std::pair<double, double>> iv;
    for (const auto& c : undecided) iv.emplace_back(c.box.r15.lo(), c.box.r15.hi());
    std::sort(iv.begin(), iv.end());
    double total = 0.0, lo = 0.0, hi = -1.0;
    for (const auto& [a, b] : iv) {
      if (a > hi) {
        if (hi > lo) total += hi - lo;
        lo = a;
        hi = b;
      } else {
        hi = std::max(hi, b);
      }
    }
    if (hi > lo) total += hi - lo;
    return total;
  }
};

/// Column edges: n uniform columns merged with n columns uniform in 1/r15.
/// Near small r15 the family approaches the D1457 = 0 boundary faster than
/// linearly, so columns there need widths shrinking like r15^2.
inline std::vector<double> seed_breakpoints(double lo, double hi, int n) {
  std::vector<double> x;
  for (int k = 0; k <= n; ++k) {
    x.push_back(lo + (hi - lo) * k / n);
    x.push_back(1.0 / (1.0 / lo + (1.0 / hi - 1.0 / lo) * k / n));
  }
  x.front() = lo;
  for (auto& v : x) v = std::clamp(v, lo, hi);
  std::sort(x.begin(), x.end());
  std::vector<double> out;
  for (double v : x)
    if (out.empty() || v - out.back() > 1e-12 * hi) out.push_back(v);
  out.front() = lo;
  out.back() = hi;
  return out;
}

/// Adaptive cover of the (r15, r16) projection of Omega_H over [lo, hi].
/// Seeds are r15 columns (see seed_breakpoints) spanning the feasible r16
/// band; each box is bisected along its wider side, widest first, until a
/// rule decides it or max_depth is reached. Running out of budget marks the report instead of throwing, so
/// the partial result is kept.
inline CertificationReport certify_uniqueness(double lo, double hi, const CertifyOptions& opt = {}) {
  if (!(lo >= opt.margin && hi <= constants::kCollapseRadius - opt.margin && lo < hi))
    throw Error(ErrorCode::DomainError, "certification domain must lie in [margin, sqrt(6)/4 - margin]");
  if (opt.seed_columns < 1 || opt.max_depth < 0 || !(opt.seed_aspect > 0.0)) throw Error(ErrorCode::DomainError, "bad certification options");
  const auto start = std::chrono::steady_clock::now();
  const CertifyKernel& kernel = CertifyKernel::instance();

  std::vector<Box> seeds;
  const int columns =
      std::max(1, static_cast<int>(std::ceil(opt.seed_columns * (hi - lo) / constants::kCollapseRadius)));
  const auto breaks = seed_breakpoints(lo, hi, columns);
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k], b = breaks[k + 1];
    // band_lo(r15) = sqrt(s15 + 1 - sqrt(3) r15) decreases on (0, sqrt(3)/2).
    const Interval rb(b);
    const double band_lo =
        sqrt(nonnegative_part(square(rb) + Interval(1.0) - detail::irrational<Interval>(detail::kSqrt3L) * rb)).lo();
    const int pieces = std::max(1, static_cast<int>(std::ceil((1.0 - band_lo) / ((b - a) * opt.seed_aspect))));
    for (int p = 0; p < pieces; ++p) {
      const double y0 = p == 0 ? band_lo : band_lo + (1.0 - band_lo) * p / pieces;
      const double y1 = p + 1 == pieces ? 1.0 : band_lo + (1.0 - band_lo) * (p + 1) / pieces;
      seeds.push_back({Interval(a, b), Interval(y0, y1)});
    }
  }

  CertificationReport rep;
  rep.domain_lo = lo;
  rep.domain_hi = hi;
  rep.max_depth = opt.max_depth;
  rep.budget = opt.budget;
  rep.seeds = seeds.size();

  struct SeedResult {
    std::map<std::string, std::size_t> counts;
    std::map<int, std::size_t> depths;
    std::vector<BoxCertificate> undecided, certs;
  };
  std::vector<SeedResult> results(seeds.size());
  std::atomic<std::size_t> processed{0};
  std::atomic<bool> exhausted{false};
  std::atomic<std::size_t> next{0};

  auto run_seed = [&](std::size_t si) {
    auto& res = results[si];
    auto wider = [](const BoxCertificate& x, const BoxCertificate& y) {
      return std::max(x.box.r15.width(), x.box.r16.width()) < std::max(y.box.r15.width(), y.box.r16.width());
    };
    std::priority_queue<BoxCertificate, std::vector<BoxCertificate>, decltype(wider)> queue(wider);
    queue.push({seeds[si], Interval(), Verdict::Undecided, 0});
    while (!queue.empty()) {
      BoxCertificate cur = queue.top();
      queue.pop();
      if (exhausted.load() || processed.fetch_add(1) >= opt.budget) {
        exhausted = true;
        res.undecided.push_back(cur);
        ++res.counts[to_string(Verdict::Undecided)];
        continue;
      }
      cur.verdict = kernel.classify(cur.box, opt, &cur.r45_enclosure);
      if (cur.verdict == Verdict::Undecided && cur.depth < opt.max_depth) {
        Box a = cur.box, b = cur.box;
        const double w15 = cur.box.r15.width(), w16 = cur.box.r16.width();
        if (w15 >= w16) {
          const double m = cur.box.r15.mid();
          a.r15 = Interval(cur.box.r15.lo(), m);
          b.r15 = Interval(m, cur.box.r15.hi());
        } else {
          const double m = cur.box.r16.mid();
          a.r16 = Interval(cur.box.r16.lo(), m);
          b.r16 = Interval(m, cur.box.r16.hi());
        }
        queue.push({a, Interval(), Verdict::Undecided, cur.depth + 1});
        queue.push({b, Interval(), Verdict::Undecided, cur.depth + 1});
        continue;
      }
      ++res.counts[to_string(cur.verdict)];
      ++res.depths[cur.depth];
      if (cur.verdict == Verdict::Undecided) res.undecided.push_back(cur);
      if (opt.keep_certificates) res.certs.push_back(cur);
    }
  };

  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) run_seed(i);
  };
  const unsigned threads = std::max(1u, opt.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (auto& r : results) {
    for (const auto& [k, v] : r.counts) rep.verdict_counts[k] += v;
    for (const auto& [k, v] : r.depths) rep.depth_histogram[k] += v;
    rep.undecided.insert(rep.undecided.end(), r.undecided.begin(), r.undecided.end());
    rep.certificates.insert(rep.certificates.end(), r.certs.begin(), r.certs.end());
  }
  auto by_corner = [](const BoxCertificate& x, const BoxCertificate& y) {
    return std::pair{x.box.r15.lo(), x.box.r16.lo()} < std::pair{y.box.r15.lo(), y.box.r16.lo()};
  };
  std::sort(rep.undecided.begin(), rep.undecided.end(), by_corner);
  std::sort(rep.certificates.begin(), rep.certificates.end(), by_corner);
  rep.boxes_processed = std::min(processed.load(), opt.budget);
  rep.budget_exhausted = exhausted.load();
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

/// Exact sign of p at the centre of a box, with r45 from solve_r45 at the
/// centre converted exactly to a rational.
inline int center_sign(const MultiPoly& p, const Box& box) {
  const double c15 = box.r15.mid(), c16 = box.r16.mid();
  const double r45 = detail::fiber_at<long double>(c15, c16).r45;
  return sgn(p.evaluate({Rational(c16), Rational(c15), Rational(r45), Rational(0)}));
}

// ---------------------------------------------------------------------------
// Rational spot checks

struct SpotCheck {
  Rational r15;
  bool listed = true;
  Interval r16, r45;
  Interval p1, p2;
  /// +1 / -1 when the interval excludes zero, 0 otherwise.
  int p1_sign = 0, p2_sign = 0;
  bool consistent() const { return p1_sign > 0 || p2_sign > 0; }
};

/// Certifies the signs of p1 and p2 at the family point over r15. The fiber
/// point is enclosed in an r16 interval whose ends have interval-certified
/// opposite signs of H.
inline SpotCheck spot_check_rational(const Rational& r15, const SolverOptions& solver = {}) {
  SpotCheck out;
  out.r15 = r15;
  out.listed = r15 == Rational(1, 2) || r15 == Rational(11, 21) || r15 == Rational(3, 5);
  const Interval x = to_interval(r15);
  const FamilyPoint fp = solve_family_point(r15.get_d(), solver);
  const double c = fp.params.r16;
  auto h_sign = [&](double r16) {
    const Interval y(r16);
    const auto enc = enclose_r45(x, y);
    const Interval s15 = square(x), s16 = square(y);
    const Interval b = s16 - s15, z = sqrt(nonnegative_part(detail::gap_squared(s15, s16)));
    const Interval h = CertifyKernel::h_interval(x, y, enc.r45, b, z);
    return h.positive() ? 1 : h.negative() ? -1 : 0;
  };
  for (double delta = 1e-13; delta < 1e-3; delta *= 4.0) {
    if (h_sign(c - delta) == 1 && h_sign(c + delta) == -1) {
      out.r16 = Interval(c - delta, c + delta);
      break;
    }
  }
  if (out.r16.width() == 0.0) throw Error(ErrorCode::NoEnclosure, "could not enclose the fiber point");
  out.r45 = enclose_r45(x, out.r16).r45;
  const auto& k = CertifyKernel::instance();
  out.p1 = k.p1().eval_mean_value(x, out.r16, out.r45);
  out.p2 = k.p2().eval_mean_value(x, out.r16, out.r45);
  out.p1_sign = out.p1.positive() ? 1 : out.p1.negative() ? -1 : 0;
  out.p2_sign = out.p2.positive() ? 1 : out.p2.negative() ? -1 : 0;
  return out;
}

// ---------------------------------------------------------------------------
// Sign changes along the family

struct SignChange {
  double lo, hi;
};

/// p evaluated at the family point over r15.
inline double value_on_family(const CompiledPoly& p, double r15, const SolverOptions& solver = {}) {
  const FamilyPoint fp = solve_family_point(r15, solver);
  return p(fp.params.r15, fp.params.r16, fp.params.r45);
}

/// r15 sub-intervals of [lo, hi] where p changes sign along Omega_H, from a
/// grid of n points refined by bisection to width 1e-6.
inline std::vector<SignChange> locate_sign_changes(NamedPoly which, double lo, double hi, int n,
                                                   const SolverOptions& solver = {}) {
  if (n < 10) throw Error(ErrorCode::DomainError, "locate_sign_changes needs n >= 10");
  const CompiledPoly p(build_named(which), false);
  std::vector<SignChange> out;
  const auto grid = uniform_grid(lo, hi, n);
  double prev_x = grid[0], prev_v = value_on_family(p, grid[0], solver);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = value_on_family(p, grid[i], solver);
    if ((v > 0.0) != (prev_v > 0.0)) {
      double a = prev_x, b = grid[i], fa = prev_v;
      while (b - a > 1e-6) {
        const double m = 0.5 * (a + b);
        const double fm = value_on_family(p, m, solver);
        if ((fm > 0.0) == (fa > 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      out.push_back({a, b});
    }
    prev_x = grid[i];
    prev_v = v;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Points of the base system off Omega

/// Newton's method on (b1, b2, p) = 0 in (r15, r16, r45). Used to place the
/// elimination roots in (r15, r16, r45)-space.
inline std::array<double, 3> refine_base_system_point(NamedPoly which, std::array<double, 3> x, int iterations = 50) {
  const std::array<MultiPoly, 3> f{build_named(NamedPoly::B1), build_named(NamedPoly::B2), build_named(which)};
  std::array<std::array<CompiledPoly, 3>, 3> jac;
  std::array<CompiledPoly, 3> fc;
  const char* vars[] = {"r15", "r16", "r45"};
  for (int i = 0; i < 3; ++i) {
    fc[i] = CompiledPoly(f[i], false);
    for (int j = 0; j < 3; ++j) jac[i][j] = CompiledPoly(f[i].derivative(vars[j]), false);
  }
  for (int it = 0; it < iterations; ++it) {
    double F[3], J[3][3];
    for (int i = 0; i < 3; ++i) {
      F[i] = fc[i](x[0], x[1], x[2]);
      for (int j = 0; j < 3; ++j) J[i][j] = jac[i][j](x[0], x[1], x[2]);
    }
    // Cramer's rule for J dx = -F.
    auto det3 = [](double M[3][3]) {
      return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
             M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    };
    const double d = det3(J);
    if (d == 0.0) break;
    std::array<double, 3> dx{};
    for (int c = 0; c < 3; ++c) {
      double M[3][3];
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M[i][j] = j == c ? -F[i] : J[i][j];
      dx[static_cast<std::size_t>(c)] = det3(M) / d;
    }
    for (int c = 0; c < 3; ++c) x[static_cast<std::size_t>(c)] += dx[static_cast<std::size_t>(c)];
    if (std::abs(dx[0]) + std::abs(dx[1]) + std::abs(dx[2]) < 1e-15) break;
  }
  return x;
}

}  // namespace stackedcc
