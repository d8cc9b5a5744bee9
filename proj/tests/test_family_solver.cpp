#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "stackedcc/family_solver.hpp"

using namespace stackedcc;

namespace {

double det3(const Matrix3& A) {
  return A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
         A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
}

double row_norm(const std::array<double, 3>& r) { return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]); }

// H from test-side six-volumes of the squared distance table.
long double oracle_h(const SymmetricParams& p) {
  const auto t = oracle::squared_table(p.r15, p.r16, p.r45);
  const long double R15 = 1.0L / std::pow((long double)p.r15, 3), R16 = 1.0L / std::pow((long double)p.r16, 3),
                    R45 = 1.0L / std::pow((long double)p.r45, 3);
  return (R15 - R45) * oracle::six_volume(t, 1, 4, 5, 6) - (R45 - R16) * oracle::six_volume(t, 1, 4, 6, 7);
}

// Eigenvector of the smallest eigenvalue of A^T A by cyclic Jacobi rotations,
// i.e. the last right singular vector of A.
std::array<double, 3> smallest_right_singular_vector(const Matrix3& A) {
  double S[3][3], V[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      S[i][j] = 0;
      for (int k = 0; k < 3; ++k) S[i][j] += A[k][i] * A[k][j];
    }
  for (int sweep = 0; sweep < 50; ++sweep)
    for (int p = 0; p < 2; ++p)
      for (int q = p + 1; q < 3; ++q) {
        if (std::abs(S[p][q]) < 1e-300) continue;
        const double theta = (S[q][q] - S[p][p]) / (2 * S[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double a = S[k][p], b = S[k][q];
          S[k][p] = c * a - s * b, S[k][q] = s * a + c * b;
        }
        for (int k = 0; k < 3; ++k) {
          const double a = S[p][k], b = S[q][k];
          S[p][k] = c * a - s * b, S[q][k] = s * a + c * b;
        }
        for (int k = 0; k < 3; ++k) {
          const double a = V[k][p], b = V[k][q];
          V[k][p] = c * a - s * b, V[k][q] = s * a + c * b;
        }
      }
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (S[i][i] < S[best][best]) best = i;
  return {V[0][best], V[1][best], V[2][best]};
}

SymmetricParams random_omega_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ur(0.03, 0.6), ut(0.02, 0.98);
  const double r15 = ur(rng);
  const Bracket br = bracket_r16(r15);
  return params_at(r15, br.r16_low + ut(rng) * (br.r16_high - br.r16_low));
}

const std::vector<SweepEntry>& grid200() {
  static const auto entries = sweep(uniform_grid(0.02, 0.60, 200));
  return entries;
}

}  // namespace

// --- H -----------------------------------------------------------------------

TEST(H, SignsOnBracketingCurves) {
  for (double r15 : {0.05, 0.2, 0.4, 0.49}) {
    const Bracket br = bracket_r16(r15);
    EXPECT_EQ(br.far_curve, FarCurve::D1457Zero);
    EXPECT_GT(br.h_low, 0.0) << r15;
    EXPECT_LT(br.h_high, 0.0) << r15;
    EXPECT_TRUE(probe(r15, br.r16_low).on_curve_R45_eq_R16);
    EXPECT_TRUE(probe(r15, br.r16_high).on_curve_D1457_eq_0);
  }
  for (double r15 : {0.52, 0.58}) {
    const Bracket br = bracket_r16(r15);
    EXPECT_EQ(br.far_curve, FarCurve::R45EqR15);
    EXPECT_TRUE(probe(r15, br.r16_high).on_curve_R45_eq_R15);
    EXPECT_LT(br.h_high, 0.0);
  }
}

TEST(H, EmbeddedMatchesClosedForm) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 1000; ++t) {
    const auto p = random_omega_point(rng);
    const double scale = static_cast<double>(detail::h_scale(detail::fiber_at<long double>(p.r15, p.r16)));
    ASSERT_NEAR(H(p), H_closed_form(p), 1e-12 * scale) << p.r15 << ' ' << p.r16;
    ASSERT_NEAR(H(p), static_cast<double>(oracle_h(p)), 1e-9 * scale);
  }
}

TEST(H, RejectsPointsOutsideRegion) {
  // r16 beyond D1457 = 0 at small r15
  const auto p = params_at(0.1, 0.99);
  EXPECT_THROW((void)H(p), Error);
}

// --- brackets ----------------------------------------------------------------

TEST(Bracket, EndpointsFollowClosedCurves) {
  for (double r15 : {0.02, 0.1, 0.3, 0.45}) {
    const Bracket br = bracket_r16(r15);
    EXPECT_NEAR(br.r16_low, std::sqrt(1 + r15 * r15 - 2.0 / 3.0 * std::sqrt(6.0) * r15), 1e-12);
    EXPECT_NEAR(br.r16_high, std::sqrt(1 - r15 + r15 * r15), 1e-12);
  }
}

TEST(Bracket, R15StarIsOneHalf) { EXPECT_NEAR(r15_star(), 0.5, 1e-12); }

TEST(Bracket, WidthShrinksTowardCollapse) {
  double prev = 1.0;
  for (double r15 : {0.55, 0.58, 0.6, 0.61, 0.612}) {
    const Bracket br = bracket_r16(r15);
    const double w = br.r16_high - br.r16_low;
    EXPECT_LT(w, prev);
    prev = w;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(Bracket, DomainErrors) {
  EXPECT_THROW((void)bracket_r16(0.0), Error);
  EXPECT_THROW((void)bracket_r16(constants::kCollapseRadius), Error);
}

TEST(Bracket, HStrictlyDecreasesAcross) {
  for (double r15 : uniform_grid(0.02, 0.6, 40)) {
    const auto h = sample_h_across_bracket(r15, 32);
    int changes = 0;
    for (std::size_t k = 1; k < h.size(); ++k) {
      ASSERT_LT(h[k], h[k - 1]) << r15 << " k=" << k;
      changes += (h[k] > 0) != (h[k - 1] > 0);
    }
    ASSERT_EQ(changes, 1);
  }
}

// --- family points -------------------------------------------------------------

TEST(FamilyPoint, Reference) {
  for (double r15 : {0.5, 11.0 / 21.0, 0.61}) {
    const auto fp = solve_family_point(r15);
    EXPECT_LT(fp.residuals.max_rel_f, 1e-10) << r15;
    EXPECT_LT(fp.residuals.max_f, 1e-10) << r15;
    EXPECT_LT(fp.residuals.lambda_spread, 1e-10) << r15;
    EXPECT_LT(fp.h_relative, 1e-13);
    EXPECT_NEAR(static_cast<double>(oracle::r45_by_bisection(fp.params.r15, fp.params.r16)), fp.params.r45, 1e-14);
    EXPECT_LT(std::abs(static_cast<double>(oracle_h(fp.params))),
              1e-9 * static_cast<double>(detail::h_scale(detail::fiber_at<long double>(fp.params.r15, fp.params.r16))));
  }
  const auto top = solve_family_point(0.61);
  EXPECT_LT(top.params.b(), 0.01);
  EXPECT_EQ(top.far_curve, FarCurve::R45EqR15);
}

TEST(FamilyPoint, DomainErrors) {
  EXPECT_THROW((void)solve_family_point(1e-4), Error);
  EXPECT_THROW((void)solve_family_point(0.612), Error);
}

// --- Lemma 2 algebra ----------------------------------------------------------

TEST(MassMatrix, RankDeficientWithRowRelation) {
  for (const auto& e : grid200()) {
    ASSERT_TRUE(e.point.has_value()) << e.r15;
    const auto& p = e.point->params;
    const Matrix3 A = mass_matrix(p);
    const double scale = row_norm(A[0]) * row_norm(A[1]) * row_norm(A[2]);
    ASSERT_LT(std::abs(det3(A)), 1e-12 * scale) << p.r15;

    const auto cfg = embed(p);
    auto D = [&](int i, int j, int h, int k) { return std::abs(signed_volume(cfg, i, j, h, k)); };
    const double alpha = -D(1, 2, 4, 7) / D(1, 2, 3, 5), beta = D(1, 2, 4, 5) / D(1, 2, 3, 5);
    for (int c = 0; c < 3; ++c)
      ASSERT_NEAR(A[2][c], alpha * A[0][c] + beta * A[1][c], 1e-12 * (row_norm(A[0]) + row_norm(A[1]))) << p.r15;

    const double a = p.a(), b = p.b(), s6 = std::sqrt(6.0);
    ASSERT_NEAR(alpha, -(-3 + 2 * s6 * a * b + s6 * a) / 9, 1e-12 * std::max(1.0, std::abs(alpha)));
    ASSERT_NEAR(beta, -(3 + s6 * a * b - s6 * a) / 9, 1e-12 * std::max(1.0, std::abs(beta)));
  }
}

TEST(MassMatrix, SignPattern) {
  for (const auto& e : grid200()) {
    const Matrix3 A = mass_matrix(e.point->params);
    ASSERT_LT(A[0][0], 0);
    ASSERT_GT(A[0][1], 0);
    ASSERT_LT(A[0][2], 0);
    ASSERT_LT(A[1][0], 0);
    ASSERT_GT(A[1][1], 0);
    ASSERT_EQ(A[2][1], 0);
    ASSERT_LT(A[2][0], 0);
    ASSERT_GT(A[2][2], 0);
  }
}

TEST(Masses, PositiveNormalisedAndInKernel) {
  for (const auto& e : grid200()) {
    const auto& fp = *e.point;
    const auto& mv = fp.masses;
    ASSERT_GT(mv.m1(), 0);
    ASSERT_GT(mv.m4(), 0);
    ASSERT_GT(mv.m5(), 0);
    ASSERT_NEAR(mv.m1() + mv.m4() + mv.m5(), 1.0, 4e-16);
    const Matrix3 A = mass_matrix(fp.params);
    const std::array<double, 3> m{mv.m1(), mv.m4(), mv.m5()};
    for (int r = 0; r < 3; ++r) {
      const double res = A[r][0] * m[0] + A[r][1] * m[1] + A[r][2] * m[2];
      ASSERT_LT(std::abs(res), 1e-11 * row_norm(A[r])) << fp.params.r15 << " row " << r;
    }
  }
}

TEST(Masses, AgreeWithSingularVector) {
  for (double r15 : {0.05, 0.2, 0.4, 0.5, 0.55}) {
    const auto fp = solve_family_point(r15);
    auto v = smallest_right_singular_vector(mass_matrix(fp.params));
    const double sum = v[0] + v[1] + v[2];
    for (auto& x : v) x /= sum;
    EXPECT_NEAR(v[0], fp.masses.m1(), 1e-9);
    EXPECT_NEAR(v[1], fp.masses.m4(), 1e-9);
    EXPECT_NEAR(v[2], fp.masses.m5(), 1e-9);
  }
}

TEST(Masses, UpperMassVanishesTowardCollapse) {
  double prev = solve_family_point(0.5).masses.m5();
  for (double r15 : {0.55, 0.6, 0.61}) {
    const double m5 = solve_family_point(r15).masses.m5();
    EXPECT_LT(m5, prev);
    prev = m5;
  }
  EXPECT_LT(prev, 1e-6);
}

TEST(Masses, OffFamilyVectorMissesSecondRow) {
  // rows 1 and 3 alone always have a solution; off the family row 2 fails
  const Bracket br = bracket_r16(0.3);
  const auto p = params_at(0.3, br.r16_low + 1e-2);
  const auto mv = solve_masses(p);
  const Matrix3 A = mass_matrix(p);
  const double res = A[1][0] * mv.m1() + A[1][1] * mv.m4() + A[1][2] * mv.m5();
  EXPECT_GT(std::abs(res), 1e-4 * row_norm(A[1]));
  EXPECT_GT(all_residuals(embed(p), mv).max_f, 1e-4);
}

// --- sweep ---------------------------------------------------------------------

TEST(Sweep, EmptyGrid) { EXPECT_TRUE(sweep({}).empty()); }

TEST(Sweep, CollapseRadiusEntryFailsAlone) {
  const std::vector<double> grid{0.3, constants::kCollapseRadius, 0.4};
  const auto out = sweep(grid);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_TRUE(out[0].point.has_value());
  EXPECT_FALSE(out[1].point.has_value());
  EXPECT_EQ(out[1].error, ErrorCode::DomainError);
  EXPECT_TRUE(out[2].point.has_value());
}

TEST(Sweep, Grid200) {
  const auto& out = grid200();
  ASSERT_EQ(out.size(), 200u);
  for (const auto& e : out) {
    ASSERT_TRUE(e.point.has_value()) << e.r15 << ": " << e.message;
    EXPECT_LT(e.point->residuals.max_rel_f, 1e-10);
    EXPECT_LT(e.point->residuals.max_f, 1e-10);
    EXPECT_LT(e.point->residuals.lambda_spread, 1e-10);
  }
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
  const auto grid = uniform_grid(0.1, 0.6, 24);
  const auto one = sweep(grid, {}, 1), four = sweep(grid, {}, 4);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ASSERT_EQ(one[i].r15, four[i].r15);
    ASSERT_EQ(one[i].point->params.r16, four[i].point->params.r16);
    ASSERT_EQ(one[i].point->masses.m, four[i].point->masses.m);
  }
}

TEST(Sweep, ContinuityAlongGrid) {
  const auto& out = grid200();
  for (std::size_t i = 1; i < out.size(); ++i) {
    const auto &a = *out[i - 1].point, &b = *out[i].point;
    const double dr = b.params.r15 - a.params.r15;
    const double diffs[] = {b.params.r16 - a.params.r16, b.params.r45 - a.params.r45, b.masses.m1() - a.masses.m1(),
                            b.masses.m4() - a.masses.m4(), b.masses.m5() - a.masses.m5()};
    for (double d : diffs) ASSERT_LT(std::abs(d / dr), 50.0) << a.params.r15;
  }
}

// --- CSV -----------------------------------------------------------------------

TEST(Csv, RoundTripIsByteIdentical) {
  std::vector<FamilyRow> rows;
  for (double r15 : {0.1, 0.3, 0.5}) rows.push_back(to_row(solve_family_point(r15)));
  std::ostringstream first;
  write_family_csv(first, rows);
  std::istringstream in(first.str());
  const auto back = read_family_csv(in);
  std::ostringstream second;
  write_family_csv(second, back);
  EXPECT_EQ(first.str(), second.str());
  EXPECT_EQ(first.str().substr(0, first.str().find('\n')), kFamilyCsvHeader);
}

TEST(Csv, MalformedInput) {
  std::istringstream bad_header("r15,r16\n0.1,0.2\n");
  EXPECT_THROW((void)read_family_csv(bad_header), Error);
  std::istringstream bad_cell(std::string(kFamilyCsvHeader) + "\n0.1,x,0,0,0,0,0,0,0\n");
  EXPECT_THROW((void)read_family_csv(bad_cell), Error);
  std::istringstream short_row(std::string(kFamilyCsvHeader) + "\n0.1,0.2\n");
  EXPECT_THROW((void)read_family_csv(short_row), Error);
}
