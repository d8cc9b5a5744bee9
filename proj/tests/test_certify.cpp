#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "stackedcc/certify.hpp"

using namespace stackedcc;

namespace {

Rational exact_at(const MultiPoly& p, double r15, double r16, double r45) {
  return p.evaluate({Rational(r16), Rational(r15), Rational(r45), Rational(0)});
}

bool encloses(const Interval& x, const Rational& v) { return Rational(x.lo()) <= v && v <= Rational(x.hi()); }

double lerp(const Interval& x, double t) { return x.lo() + t * (x.hi() - x.lo()); }

CertificationReport run(double lo, double hi, int depth, bool p1, bool p2, bool direct, unsigned threads = 1,
                        bool keep = false) {
  CertifyOptions o;
  o.max_depth = depth;
  o.use_p1 = p1;
  o.use_p2 = p2;
  o.use_direct = direct;
  o.threads = threads;
  o.keep_certificates = keep;
  return certify_uniqueness(lo, hi, o);
}

}  // namespace

// --- compiled polynomial enclosures -------------------------------------------

TEST(CompiledPoly, PointBoxesContainExactValue) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const MultiPoly p1 = build_named(NamedPoly::P1), p2 = build_named(NamedPoly::P2);
  const CompiledPoly c1(p1), c2(p2);
  for (int t = 0; t < 100000; ++t) {
    const double a = u(rng), b = u(rng), c = u(rng);
    ASSERT_TRUE(encloses(c1.eval(Interval(a), Interval(b), Interval(c)), exact_at(p1, a, b, c)));
    if (t % 10 == 0) ASSERT_TRUE(encloses(c2.eval(Interval(a), Interval(b), Interval(c)), exact_at(p2, a, b, c)));
  }
}

TEST(CompiledPoly, WideBoxesContainSampledValues) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.05, 0.95), w(0.0, 0.05), t(0.0, 1.0);
  const MultiPoly p1 = build_named(NamedPoly::P1), p2 = build_named(NamedPoly::P2);
  const CompiledPoly c1(p1), c2(p2);
  for (int k = 0; k < 2000; ++k) {
    double a = u(rng), b = u(rng), c = u(rng);
    const Interval A(a, a + w(rng)), B(b, b + w(rng)), C(c, c + w(rng));
    const Interval n1 = c1.eval(A, B, C), m1 = c1.eval_mean_value(A, B, C);
    const Interval n2 = c2.eval(A, B, C), m2 = c2.eval_mean_value(A, B, C);
    for (int s = 0; s < 4; ++s) {
      const double x = lerp(A, t(rng)), y = lerp(B, t(rng)), z = lerp(C, t(rng));
      const Rational v1 = exact_at(p1, x, y, z), v2 = exact_at(p2, x, y, z);
      ASSERT_TRUE(encloses(n1, v1) && encloses(m1, v1));
      ASSERT_TRUE(encloses(n2, v2) && encloses(m2, v2));
    }
  }
}

TEST(CompiledPoly, RejectsExtraVariable) { EXPECT_THROW(CompiledPoly(build_named(NamedPoly::B3)), Error); }

// --- r45 enclosure -------------------------------------------------------------

TEST(EncloseR45, PointBox) {
  const auto enc = enclose_r45(Interval(0.4), Interval(0.85));
  EXPECT_FALSE(enc.partial);
  EXPECT_TRUE(enc.r45.contains(solve_r45(0.4, 0.85).r45));
  EXPECT_LT(enc.r45.width(), 1e-12);
}

TEST(EncloseR45, StraddlingRealRootBoundary) {
  // (0.2, 0.95) has a real r45, (0.2, 0.5) does not
  bool flagged = false;
  try {
    flagged = enclose_r45(Interval(0.2, 0.21), Interval(0.5, 0.95)).partial;
  } catch (const Error& e) {
    flagged = e.code() == ErrorCode::NoEnclosure;
  }
  EXPECT_TRUE(flagged);
  EXPECT_THROW((void)enclose_r45(Interval(0.05), Interval(0.5)), Error);
}

TEST(EncloseR45Property, ContainsPointRootsAndNests) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ur(0.05, 0.6), ut(0.05, 0.95), uw(1e-6, 1e-2), t(0.0, 1.0);
  int nested = 0, trials = 0;
  for (int k = 0; k < 2000; ++k) {
    const double r15 = ur(rng);
    const Bracket br = bracket_r16(r15);
    const double r16 = br.r16_low + ut(rng) * (br.r16_high - br.r16_low);
    const double w = uw(rng) * (br.r16_high - br.r16_low);
    const Interval X(r15, r15 + w * 0.1), Y(r16, r16 + w);
    R45Enclosure parent;
    try {
      parent = enclose_r45(X, Y);
    } catch (const Error&) {
      continue;
    }
    if (parent.partial) continue;
    for (int s = 0; s < 5; ++s) {
      const double x = lerp(X, t(rng)), y = lerp(Y, t(rng));
      const double r45 = static_cast<double>(detail::fiber_at<long double>(x, y).r45);
      ASSERT_TRUE(parent.r45.contains(r45)) << x << ' ' << y;
    }
    const Interval child_y(Y.lo(), Y.mid());
    const auto child = enclose_r45(X, child_y);
    ++trials;
    nested += child.r45.lo() >= parent.r45.lo() && child.r45.hi() <= parent.r45.hi();
  }
  // every sub-box enclosure sits inside its parent's
  EXPECT_GT(trials, 1000);
  EXPECT_EQ(nested, trials);
}

// --- box classification ----------------------------------------------------------

TEST(Classify, BoxAwayFromFamilyIsExcluded) {
  const auto& k = CertifyKernel::instance();
  const Bracket br = bracket_r16(0.3);
  const Box near_low{Interval(0.3, 0.3001), Interval(br.r16_low + 1e-3, br.r16_low + 2e-3)};
  EXPECT_EQ(k.classify(near_low, {}), Verdict::ExcludedNoRoot);
}

TEST(Classify, BoxAroundFamilyPointIsCertified) {
  const auto& k = CertifyKernel::instance();
  const auto fp = solve_family_point(0.3);
  const Box box{Interval(0.3 - 1e-6, 0.3 + 1e-6), Interval(fp.params.r16 - 1e-6, fp.params.r16 + 1e-6)};
  EXPECT_EQ(k.classify(box, {}), Verdict::CertifiedP1Positive);
  CertifyOptions direct_only;
  direct_only.use_p1 = direct_only.use_p2 = false;
  EXPECT_EQ(k.classify(box, direct_only), Verdict::CertifiedHprimeNegative);
}

// --- certification runs -----------------------------------------------------------

TEST(Certify, LowRangeByP1Alone) {
  const auto rep = run(0.02, 0.49, 20, true, false, false);
  EXPECT_TRUE(rep.pass()) << rep.undecided.size();
  EXPECT_EQ(rep.verdict_counts.count("CertifiedP2Positive"), 0u);
  EXPECT_GT(rep.verdict_counts.at("CertifiedP1Positive"), 0u);
}

TEST(Certify, HighRangeByP2Alone) {
  const auto rep = run(0.53, 0.60, 24, false, true, false);
  EXPECT_TRUE(rep.pass()) << rep.undecided.size();
  EXPECT_GT(rep.verdict_counts.at("CertifiedP2Positive"), 0u);
}

TEST(Certify, HighRangeByDirectRule) {
  const auto rep = run(0.53, 0.60, 24, false, false, true);
  EXPECT_TRUE(rep.pass());
  EXPECT_GT(rep.verdict_counts.at("CertifiedHprimeNegative"), 0u);
}

TEST(Certify, P1NearFirstAbscissaStillCertifies) {
  // p1 keeps its sign on the family near .5104
  const auto rep = run(0.50, 0.52, 24, true, false, false);
  EXPECT_TRUE(rep.pass()) << rep.undecided.size();
}

TEST(Certify, ShallowDepthLeavesUndecided) {
  const auto rep = run(0.05, 0.58, 2, true, true, true);
  EXPECT_FALSE(rep.pass());
  EXPECT_FALSE(rep.undecided.empty());
  EXPECT_GT(rep.undecided_r15_measure(), 0.0);
}

TEST(Certify, BudgetExhaustionIsReported) {
  CertifyOptions o;
  o.budget = 100;
  const auto rep = certify_uniqueness(0.05, 0.58, o);
  EXPECT_TRUE(rep.budget_exhausted);
  EXPECT_FALSE(rep.pass());
  EXPECT_LE(rep.boxes_processed, 100u + rep.seeds);
}

TEST(Certify, DomainChecks) {
  EXPECT_THROW((void)certify_uniqueness(0.0005, 0.3), Error);
  EXPECT_THROW((void)certify_uniqueness(0.3, 0.62), Error);
}

TEST(Certify, CertifiedBoxesAgreeWithExactCentreSign) {
  const auto rep = run(0.2, 0.3, 24, true, true, true, 1, true);
  ASSERT_TRUE(rep.pass());
  const MultiPoly p1 = build_named(NamedPoly::P1), p2 = build_named(NamedPoly::P2);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < rep.certificates.size(); i += 7) {
    const auto& c = rep.certificates[i];
    if (c.verdict == Verdict::CertifiedP1Positive) {
      ASSERT_GT(center_sign(p1, c.box), 0);
      ++checked;
    } else if (c.verdict == Verdict::CertifiedP2Positive) {
      ASSERT_GT(center_sign(p2, c.box), 0);
      ++checked;
    }
  }
  EXPECT_GT(checked, 0u);
}

TEST(Certify, ThreadCountDoesNotChangeReport) {
  const auto a = run(0.3, 0.35, 24, true, true, true, 1, true);
  const auto b = run(0.3, 0.35, 24, true, true, true, 3, true);
  EXPECT_EQ(a.boxes_processed, b.boxes_processed);
  EXPECT_EQ(a.verdict_counts, b.verdict_counts);
  ASSERT_EQ(a.certificates.size(), b.certificates.size());
  for (std::size_t i = 0; i < a.certificates.size(); ++i) {
    ASSERT_EQ(a.certificates[i].box.r15.lo(), b.certificates[i].box.r15.lo());
    ASSERT_EQ(a.certificates[i].box.r16.lo(), b.certificates[i].box.r16.lo());
    ASSERT_EQ(a.certificates[i].verdict, b.certificates[i].verdict);
  }
}

// --- spot checks and sign changes ------------------------------------------------------

TEST(SpotCheck, ListedRationals) {
  const auto& k = CertifyKernel::instance();
  for (const Rational& q : {Rational(1, 2), Rational(11, 21), Rational(3, 5)}) {
    const auto sc = spot_check_rational(q);
    EXPECT_TRUE(sc.listed);
    EXPECT_TRUE(sc.consistent()) << q;
    EXPECT_GT(sc.p1_sign, 0) << q;
    EXPECT_GT(sc.p2_sign, 0) << q;
    const auto fp = solve_family_point(q.get_d());
    EXPECT_TRUE(sc.r16.contains(fp.params.r16));
    EXPECT_TRUE(sc.p1.contains(k.p1()(fp.params.r15, fp.params.r16, fp.params.r45)));
  }
  EXPECT_FALSE(spot_check_rational(Rational(2, 5)).listed);
}

TEST(SignChanges, NoneAtLowRange) {
  EXPECT_TRUE(locate_sign_changes(NamedPoly::P1, 0.1, 0.3, 20).empty());
  EXPECT_THROW((void)locate_sign_changes(NamedPoly::P1, 0.1, 0.3, 5), Error);
}

TEST(SignChanges, FamilyValuesPositive) {
  const CompiledPoly p1(build_named(NamedPoly::P1), false);
  const double a = value_on_family(p1, 0.1), b = value_on_family(p1, 0.3);
  EXPECT_GT(a, 0.0);
  EXPECT_GT(b, 0.0);
}

// The published abscissae are zeros of the base system on branches with a
// negative coordinate or r16 < r45.
TEST(BaseSystem, PublishedAbscissaeOffOmega) {
  struct Seed {
    NamedPoly which;
    double r15, r16, r45, published;
  };
  const Seed seeds[] = {
      {NamedPoly::P1, 0.5104, -0.7260, -0.5533, 0.5104}, {NamedPoly::P1, 0.5384, -1.0809, 1.4424, 0.5384},
      {NamedPoly::P1, 0.5774, 1.1007, -1.4792, 0.5774},  {NamedPoly::P1, 0.5856, -0.5733, -0.8176, 0.5856},
      {NamedPoly::P2, 0.5004, -1.1415, 1.4495, 0.5004},  {NamedPoly::P2, 0.5027, 0.6188, 0.8417, 0.5027},
      {NamedPoly::P2, 0.5252, 1.1583, -1.4748, 0.5252},
  };
  const MultiPoly b1 = build_named(NamedPoly::B1), b2 = build_named(NamedPoly::B2);
  for (const auto& s : seeds) {
    const auto x = refine_base_system_point(s.which, {s.r15, s.r16, s.r45});
    const MultiPoly p = build_named(s.which);
    const std::vector<double> v{x[1], x[0], x[2], 0.0};
    EXPECT_LT(std::abs(b1.evaluate_double(v)), 1e-10);
    EXPECT_LT(std::abs(b2.evaluate_double(v)), 1e-10);
    EXPECT_LT(std::abs(p.evaluate_double(v)), 1e-10);
    EXPECT_NEAR(x[0], s.published, 2e-3);
    const bool in_omega = x[1] > 0 && x[2] > 0 && x[0] < x[2] && x[2] < x[1];
    EXPECT_FALSE(in_omega) << x[0];
  }
}
