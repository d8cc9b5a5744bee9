#pragma once

// Central-configuration equations for point sets in the plane and in space.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

#include "stackedcc/error.hpp"
#include "stackedcc/geometry.hpp"

namespace stackedcc {

using Vec2 = std::array<double, 2>;

struct CcOptions {
  /// Pairs closer than this are treated as a collision.
  double collision_epsilon = 1e-9;
};

/// Masses of the seven bodies and the multiplier lambda. With the symmetry
/// m1 = m2 = m3 and m5 = m6 = m7 only (m1, m4, m5) are independent.
struct MassVector {
  std::array<double, 7> m{};
  double lambda = 0.0;

  static MassVector symmetric(double m1, double m4, double m5, double lambda = 0.0) {
    return {{m1, m1, m1, m4, m5, m5, m5}, lambda};
  }
  double m1() const { return m[0]; }
  double m4() const { return m[3]; }
  double m5() const { return m[4]; }
};

namespace detail {

inline void check_sizes(std::size_t points, std::size_t masses) {
  if (points != masses) throw Error(ErrorCode::DimensionMismatch, "one mass per body required");
}

inline void check_collisions(std::span<const Vec3> q, const CcOptions& opt) {
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t k = i + 1; k < q.size(); ++k)
      if (distance(q[i], q[k]) < opt.collision_epsilon)
        throw Error(ErrorCode::CollidingBodies, "bodies " + std::to_string(i + 1) + " and " + std::to_string(k + 1));
}

inline double inverse_cube(const Vec3& a, const Vec3& b) {
  const double r = distance(a, b);
  return 1.0 / (r * r * r);
}

}  // namespace detail

/// gamma_i = sum_{k != i} m_k R_ik (q_i - q_k), R_ik = |q_i - q_k|^-3.
inline std::vector<Vec3> gamma(std::span<const Vec3> q, std::span<const double> m, const CcOptions& opt = {}) {
  detail::check_sizes(q.size(), m.size());
  detail::check_collisions(q, opt);
  std::vector<Vec3> g(q.size(), Vec3{0.0, 0.0, 0.0});
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t k = 0; k < q.size(); ++k) {
      if (k == i) continue;
      const double w = m[k] * detail::inverse_cube(q[i], q[k]);
      const Vec3 d = sub(q[i], q[k]);
      for (int c = 0; c < 3; ++c) g[i][static_cast<std::size_t>(c)] += w * d[static_cast<std::size_t>(c)];
    }
  return g;
}

inline std::vector<Vec3> gamma(const Configuration& cfg, const MassVector& mv, const CcOptions& opt = {}) {
  return gamma(cfg.points(), mv.m, opt);
}

/// A value of f_ijh together with sum_k m_k (R_ik + R_jk) D_ijhk, the size of
/// the summands before the R differences cancel.
struct FValue {
  double value = 0.0;
  double scale = 0.0;
};

/// f_ijh = sum_{k != i,j,h} m_k (R_ik - R_jk) Delta_ijhk for 1-based labels.
/// Terms are summed in increasing k.
inline FValue f_ijh_scaled(std::span<const Vec3> q, std::span<const double> m, int i, int j, int h,
                           const CcOptions& opt = {}) {
  detail::check_sizes(q.size(), m.size());
  const int n = static_cast<int>(q.size());
  for (int v : {i, j, h})
    if (v < 1 || v > n) throw Error(ErrorCode::DimensionMismatch, "body index out of range");
  if (i == j || i == h || j == h) throw Error(ErrorCode::RepeatedIndex, "f_ijh needs three distinct bodies");
  detail::check_collisions(q, opt);
  const auto& qi = q[static_cast<std::size_t>(i - 1)];
  const auto& qj = q[static_cast<std::size_t>(j - 1)];
  FValue out;
  for (int k = 1; k <= n; ++k) {
    if (k == i || k == j || k == h) continue;
    const auto& qk = q[static_cast<std::size_t>(k - 1)];
    const double dr = detail::inverse_cube(qi, qk) - detail::inverse_cube(qj, qk);
    const double vol = signed_volume(q, i, j, h, k);
    const double mk = m[static_cast<std::size_t>(k - 1)];
    out.value += mk * dr * vol;
    out.scale += mk * (detail::inverse_cube(qi, qk) + detail::inverse_cube(qj, qk)) * std::abs(vol);
  }
  return out;
}

inline double f_ijh(std::span<const Vec3> q, std::span<const double> m, int i, int j, int h,
                    const CcOptions& opt = {}) {
  return f_ijh_scaled(q, m, i, j, h, opt).value;
}

inline double f_ijh(const Configuration& cfg, const MassVector& mv, int i, int j, int h, const CcOptions& opt = {}) {
  return f_ijh(cfg.points(), mv.m, i, j, h, opt);
}

/// Planar form: sum_k m_k (R_ik - R_jk) Lambda_ijk with Lambda_ijk the wedge
/// (q_i - q_j) ^ (q_i - q_k), twice the signed area of triangle ijk.
inline double laura_andoyer_planar(std::span<const Vec2> q, std::span<const double> m, int i, int j,
                                   const CcOptions& opt = {}) {
  detail::check_sizes(q.size(), m.size());
  const int n = static_cast<int>(q.size());
  if (i < 1 || i > n || j < 1 || j > n) throw Error(ErrorCode::DimensionMismatch, "body index out of range");
  if (i == j) throw Error(ErrorCode::RepeatedIndex, "laura_andoyer_planar needs two distinct bodies");
  std::vector<Vec3> lifted;
  lifted.reserve(q.size());
  for (const auto& p : q) lifted.push_back({p[0], p[1], 0.0});
  detail::check_collisions(lifted, opt);
  const auto& qi = lifted[static_cast<std::size_t>(i - 1)];
  const auto& qj = lifted[static_cast<std::size_t>(j - 1)];
  double sum = 0.0;
  for (int k = 1; k <= n; ++k) {
    if (k == i || k == j) continue;
    const auto& qk = lifted[static_cast<std::size_t>(k - 1)];
    const Vec3 a = sub(qi, qj), b = sub(qi, qk);
    const double wedge = a[0] * b[1] - a[1] * b[0];
    sum += m[static_cast<std::size_t>(k - 1)] * (detail::inverse_cube(qi, qk) - detail::inverse_cube(qj, qk)) * wedge;
  }
  return sum;
}

struct TripleResidual {
  int i = 0, j = 0, h = 0;
  double f = 0.0;
  double relative = 0.0;
};

struct ResidualReport {
  double max_f = 0.0;
  /// Largest |f_ijh| / sum_k m_k (R_ik + R_jk) D_ijhk (0 when the scale is 0).
  double max_rel_f = 0.0;
  double max_cc = 0.0;
  double lambda = 0.0;
  double lambda_spread = 0.0;
  std::vector<TripleResidual> per_triple;
};

/// Evaluates f_ijh over all triples i < j, h distinct from both, and the
/// defect gamma_i - lambda (q_i - q_G) with lambda the mean of the per-body
/// Rayleigh quotients. Bodies sitting at the centre of mass get no lambda
/// estimate.
inline ResidualReport all_residuals(std::span<const Vec3> q, std::span<const double> m, const CcOptions& opt = {},
                                    bool keep_triples = false) {
  detail::check_sizes(q.size(), m.size());
  const auto g = gamma(q, m, opt);
  ResidualReport rep;
  const int n = static_cast<int>(q.size());
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int h = 1; h <= n; ++h) {
        if (h == i || h == j) continue;
        const FValue f = f_ijh_scaled(q, m, i, j, h, opt);
        const double rel = f.scale > 0.0 ? std::abs(f.value) / f.scale : 0.0;
        rep.max_f = std::max(rep.max_f, std::abs(f.value));
        rep.max_rel_f = std::max(rep.max_rel_f, rel);
        if (keep_triples) rep.per_triple.push_back({i, j, h, f.value, rel});
      }

  double mass = 0.0;
  Vec3 centre{0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < q.size(); ++k) {
    mass += m[k];
    for (std::size_t c = 0; c < 3; ++c) centre[c] += m[k] * q[k][c];
  }
  for (auto& c : centre) c /= mass;

  std::vector<double> lambdas;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Vec3 d = sub(q[i], centre);
    const double dd = dot(d, d);
    if (std::sqrt(dd) < opt.collision_epsilon) continue;
    lambdas.push_back(dot(g[i], d) / dd);
  }
  if (!lambdas.empty()) {
    double sum = 0.0;
    for (double l : lambdas) sum += l;
    rep.lambda = sum / static_cast<double>(lambdas.size());
    const auto [lo, hi] = std::minmax_element(lambdas.begin(), lambdas.end());
    rep.lambda_spread = *hi - *lo;
  }
  for (std::size_t i = 0; i < q.size(); ++i) {
    const Vec3 d = sub(q[i], centre);
    const Vec3 defect{g[i][0] - rep.lambda * d[0], g[i][1] - rep.lambda * d[1], g[i][2] - rep.lambda * d[2]};
    rep.max_cc = std::max(rep.max_cc, norm(defect));
  }
  return rep;
}

inline ResidualReport all_residuals(const Configuration& cfg, const MassVector& mv, const CcOptions& opt = {},
                                    bool keep_triples = false) {
  return all_residuals(cfg.points(), mv.m, opt, keep_triples);
}

}  // namespace stackedcc
