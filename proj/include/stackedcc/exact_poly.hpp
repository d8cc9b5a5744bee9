#pragma once

// Exact multivariate polynomials over the rationals, multivariate division,
// the named polynomials of the uniqueness argument, and Sturm root isolation.

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stackedcc/detail/named_terms.hpp"
#include "stackedcc/error.hpp"
#include "stackedcc/geometry.hpp"

namespace stackedcc {

using Rational = mpq_class;
using Exponents = std::vector<unsigned>;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rational_pow(const Rational& x, unsigned n) {
  Rational r = 1, b = x;
  while (n) {
    if (n & 1u) r *= b;
    b *= b;
    n >>= 1u;
  }
  return r;
}

enum class MonomialOrder { Lex, GradedLex, GradedReverseLex };

inline unsigned degree_of(const Exponents& e) {
  unsigned d = 0;
  for (unsigned x : e) d += x;
  return d;
}

/// a < b in the given order; variables compare in their declared order.
inline bool monomial_less(const Exponents& a, const Exponents& b, MonomialOrder order) {
  switch (order) {
    case MonomialOrder::Lex: return a < b;
    case MonomialOrder::GradedLex: {
      const unsigned da = degree_of(a), db = degree_of(b);
      return da != db ? da < db : a < b;
    }
    case MonomialOrder::GradedReverseLex: {
      const unsigned da = degree_of(a), db = degree_of(b);
      if (da != db) return da < db;
      for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i];
      return false;
    }
  }
  return false;
}

class MultiPoly {
 public:
  /// Terms iterate in descending lexicographic order of exponents.
  using Terms = std::map<Exponents, Rational, std::greater<Exponents>>;

  static std::vector<std::string> default_variables() { return {"r16", "r15", "r45", "w"}; }

  explicit MultiPoly(std::vector<std::string> vars = default_variables()) : vars_(std::move(vars)) {}
  explicit MultiPoly(long c, std::vector<std::string> vars = default_variables()) : MultiPoly(Rational(c), std::move(vars)) {}
  explicit MultiPoly(const Rational& c, std::vector<std::string> vars = default_variables()) : vars_(std::move(vars)) {
    add_term(Exponents(vars_.size(), 0), c);
  }

  static MultiPoly variable(std::string_view name, std::vector<std::string> vars = default_variables()) {
    MultiPoly p(std::move(vars));
    Exponents e(p.vars_.size(), 0);
    e[p.index_of(name)] = 1;
    p.add_term(e, 1);
    return p;
  }

  static MultiPoly monomial(const Rational& c, Exponents e, std::vector<std::string> vars = default_variables()) {
    MultiPoly p(std::move(vars));
    if (e.size() != p.vars_.size()) throw Error(ErrorCode::DimensionMismatch, "exponent vector length");
    p.add_term(e, c);
    return p;
  }

  const std::vector<std::string>& variables() const { return vars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  std::size_t index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    throw Error(ErrorCode::DimensionMismatch, "unknown variable '" + std::string(name) + "'");
  }

  void add_term(const Exponents& e, const Rational& c) {
    if (e.size() != vars_.size()) throw Error(ErrorCode::DimensionMismatch, "exponent vector length");
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const Exponents& e) const {
    const auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, degree_of(e));
    return d;
  }

  unsigned degree(std::string_view var) const {
    const std::size_t i = index_of(var);
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
    return d;
  }

  std::pair<Exponents, Rational> leading_term(MonomialOrder order = MonomialOrder::Lex) const {
    if (terms_.empty()) throw Error(ErrorCode::DomainError, "zero polynomial has no leading term");
    auto best = terms_.begin();
    if (order != MonomialOrder::Lex)
      for (auto it = terms_.begin(); it != terms_.end(); ++it)
        if (monomial_less(best->first, it->first, order)) best = it;
    return *best;
  }

  MultiPoly derivative(std::string_view var) const {
    const std::size_t i = index_of(var);
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponents f = e;
      --f[i];
      out.add_term(f, c * e[i]);
    }
    return out;
  }

  /// Exact value with values[k] bound to variables()[k].
  Rational evaluate(const std::vector<Rational>& values) const {
    if (values.size() != vars_.size()) throw Error(ErrorCode::DimensionMismatch, "one value per variable");
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t k = 0; k < e.size(); ++k)
        if (e[k]) t *= rational_pow(values[k], e[k]);
      sum += t;
    }
    return sum;
  }

  double evaluate_double(const std::vector<double>& values) const {
    if (values.size() != vars_.size()) throw Error(ErrorCode::DimensionMismatch, "one value per variable");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
      double t = c.get_d();
      for (std::size_t k = 0; k < e.size(); ++k)
        for (unsigned p = 0; p < e[k]; ++p) t *= values[k];
      sum += t;
    }
    return sum;
  }

  /// Replaces a variable by a polynomial over the same variables.
  MultiPoly substitute(std::string_view var, const MultiPoly& replacement) const {
    check_compatible(replacement);
    const std::size_t i = index_of(var);
    MultiPoly out(vars_);
    std::vector<MultiPoly> powers{MultiPoly(1, vars_)};
    for (const auto& [e, c] : terms_) {
      while (powers.size() <= e[i]) powers.push_back(powers.back() * replacement);
      Exponents rest = e;
      rest[i] = 0;
      out += monomial(c, rest, vars_) * powers[e[i]];
    }
    return out;
  }

  MultiPoly operator-() const {
    MultiPoly out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly out(a.vars_);
    Exponents e(a.vars_.size());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend MultiPoly operator*(const Rational& s, MultiPoly a) {
    if (sgn(s) == 0) return MultiPoly(a.vars_);
    for (auto& [e, c] : a.terms_) c *= s;
    return a;
  }
  friend MultiPoly operator*(MultiPoly a, const Rational& s) { return s * std::move(a); }
  friend MultiPoly operator/(MultiPoly a, const Rational& s) {
    if (sgn(s) == 0) throw Error(ErrorCode::DomainError, "division by zero");
    for (auto& [e, c] : a.terms_) c /= s;
    return a;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

  /// Canonical text: a "# vars" header, then one "coeff * v^e ..." line per term.
  std::string to_text() const {
    std::ostringstream os;
    os << "# vars";
    for (const auto& v : vars_) os << ' ' << v;
    os << '\n';
    for (const auto& [e, c] : terms_) {
      os << c.get_str() << " *";
      for (std::size_t k = 0; k < e.size(); ++k) os << ' ' << vars_[k] << '^' << e[k];
      os << '\n';
    }
    return os.str();
  }

  static MultiPoly parse(std::string_view text) {
    std::istringstream is{std::string(text)};
    std::string line;
    std::vector<std::string> vars = default_variables();
    MultiPoly out(vars);
    bool header_seen = false;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      if (line[0] == '#') {
        std::istringstream hs(line.substr(1));
        std::string tag;
        hs >> tag;
        if (tag != "vars") continue;
        if (header_seen || !out.is_zero()) throw Error(ErrorCode::ParseError, "vars header must come first");
        vars.clear();
        for (std::string v; hs >> v;) vars.push_back(v);
        out = MultiPoly(vars);
        header_seen = true;
        continue;
      }
      std::istringstream ls(line);
      std::string coef;
      ls >> coef;
      Rational c;
      try {
        c = Rational(coef);
        if (sgn(c.get_den()) == 0) throw std::invalid_argument("zero denominator");
        c.canonicalize();
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad coefficient '" + coef + "'");
      }
      Exponents e(vars.size(), 0);
      std::string tok;
      if (ls >> tok) {
        if (tok != "*") throw Error(ErrorCode::ParseError, "expected '*' after coefficient");
        while (ls >> tok) {
          const auto caret = tok.find('^');
          const std::string name = tok.substr(0, caret);
          unsigned power = 1;
          if (caret != std::string::npos) {
            try {
              std::size_t used = 0;
              power = static_cast<unsigned>(std::stoul(tok.substr(caret + 1), &used));
              if (used != tok.size() - caret - 1) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
              throw Error(ErrorCode::ParseError, "bad exponent in '" + tok + "'");
            }
          }
          const auto it = std::find(vars.begin(), vars.end(), name);
          if (it == vars.end()) throw Error(ErrorCode::ParseError, "unknown variable '" + name + "'");
          e[static_cast<std::size_t>(it - vars.begin())] += power;
        }
      }
      out.add_term(e, c);
    }
    return out;
  }

 private:
  void check_compatible(const MultiPoly& o) const {
    if (vars_ != o.vars_) throw Error(ErrorCode::DimensionMismatch, "polynomials over different variable lists");
  }

  std::vector<std::string> vars_;
  Terms terms_;
};

inline MultiPoly pow(const MultiPoly& p, unsigned n) {
  MultiPoly r(1, p.variables()), b = p;
  while (n) {
    if (n & 1u) r *= b;
    n >>= 1u;
    if (n) b *= b;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Division with remainder

struct Reduction {
  std::vector<MultiPoly> quotients;
  MultiPoly remainder;
};

inline bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

/// Multivariate division: f = sum q_i g_i + r with no term of r divisible by
/// any leading term of g_i.
inline Reduction reduce(const MultiPoly& f, const std::vector<MultiPoly>& divisors,
                        MonomialOrder order = MonomialOrder::Lex) {
  const auto& vars = f.variables();
  Reduction out{std::vector<MultiPoly>(divisors.size(), MultiPoly(vars)), MultiPoly(vars)};
  std::vector<std::pair<Exponents, Rational>> leads;
  for (const auto& g : divisors) {
    if (g.variables() != vars) throw Error(ErrorCode::DimensionMismatch, "divisor over different variables");
    if (g.is_zero()) throw Error(ErrorCode::DomainError, "division by the zero polynomial");
    leads.push_back(g.leading_term(order));
  }
  MultiPoly p = f;
  while (!p.is_zero()) {
    const auto [e, c] = p.leading_term(order);
    bool divided = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      if (!divides(leads[i].first, e)) continue;
      Exponents q(e.size());
      for (std::size_t k = 0; k < e.size(); ++k) q[k] = e[k] - leads[i].first[k];
      const MultiPoly t = MultiPoly::monomial(c / leads[i].second, q, vars);
      out.quotients[i] += t;
      p -= t * divisors[i];
      divided = true;
      break;
    }
    if (!divided) {
      out.remainder.add_term(e, c);
      p.add_term(e, -c);
    }
  }
  return out;
}

/// f / g when g divides f exactly; ConstructionMismatch otherwise.
inline MultiPoly divide_exact(const MultiPoly& f, const MultiPoly& g) {
  auto r = reduce(f, {g});
  if (!r.remainder.is_zero()) throw Error(ErrorCode::ConstructionMismatch, "inexact polynomial division");
  return r.quotients[0];
}

// ---------------------------------------------------------------------------
// Named polynomials

enum class NamedPoly { B1, B2, B3, P1, P2, G };

inline NamedPoly named_from_string(std::string_view s) {
  if (s == "b1") return NamedPoly::B1;
  if (s == "b2") return NamedPoly::B2;
  if (s == "b3") return NamedPoly::B3;
  if (s == "p1") return NamedPoly::P1;
  if (s == "p2") return NamedPoly::P2;
  if (s == "g") return NamedPoly::G;
  throw Error(ErrorCode::ParseError, "unknown polynomial name '" + std::string(s) + "'");
}

namespace detail {

template <std::size_t N>
MultiPoly from_printed(const PrintedTerm (&table)[N]) {
  MultiPoly p;
  // default variable order is (r16, r15, r45, w)
  for (const auto& t : table) p.add_term({t.e16, t.e15, t.e45, 0}, Rational(t.coef));
  return p;
}

inline MultiPoly r_var(std::string_view name) { return MultiPoly::variable(name); }

}  // namespace detail

/// g(s15, s16, s45) with s = r^2, as a polynomial in the r variables.
inline MultiPoly pentachoron_poly() {
  const MultiPoly r15 = detail::r_var("r15"), r16 = detail::r_var("r16"), r45 = detail::r_var("r45");
  return pentachoron_constraint(r15 * r15, r16 * r16, r45 * r45);
}

inline MultiPoly build_named(NamedPoly name) {
  switch (name) {
    case NamedPoly::B1: return detail::from_printed(detail::kB1Terms);
    case NamedPoly::P1: return detail::from_printed(detail::kP1Terms);
    case NamedPoly::P2: return detail::from_printed(detail::kP2Terms);
    case NamedPoly::B2: {
      static constexpr detail::PrintedTerm b2[] = {
          {3, 4, 0, 0},  {-4, 2, 2, 0}, {-2, 2, 0, 2}, {-2, 2, 0, 0}, {4, 0, 4, 0}, {3, 0, 0, 4},
          {-4, 0, 2, 0}, {-4, 0, 2, 2}, {-2, 0, 0, 2}, {3, 0, 0, 0},
      };
      return detail::from_printed(b2);
    }
    case NamedPoly::B3:
      return MultiPoly::monomial(1, {1, 1, 1, 1}) - MultiPoly(1);
    case NamedPoly::G: return pentachoron_poly();
  }
  throw Error(ErrorCode::DomainError, "unknown polynomial");
}

inline MultiPoly build_named(std::string_view name) { return build_named(named_from_string(name)); }

/// Bordered Cayley-Menger determinant of symbolic squared distances, by
/// cofactor expansion.
inline MultiPoly cayley_menger_poly(const std::vector<std::vector<MultiPoly>>& sq) {
  const std::size_t n = sq.size() + 1;
  const auto& vars = sq.at(0).at(0).variables();
  std::vector<std::vector<MultiPoly>> m(n, std::vector<MultiPoly>(n, MultiPoly(vars)));
  for (std::size_t i = 1; i < n; ++i) {
    m[0][i] = MultiPoly(1, vars);
    m[i][0] = MultiPoly(1, vars);
    for (std::size_t j = 1; j < n; ++j) m[i][j] = sq[i - 1][j - 1];
  }
  std::function<MultiPoly(const std::vector<std::size_t>&, std::size_t)> det =
      [&](const std::vector<std::size_t>& cols, std::size_t row) -> MultiPoly {
    if (row == n) return MultiPoly(1, vars);
    MultiPoly sum(vars);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (m[row][cols[k]].is_zero()) continue;
      std::vector<std::size_t> rest = cols;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
      MultiPoly term = m[row][cols[k]] * det(rest, row + 1);
      if (k % 2) sum -= term;
      else sum += term;
    }
    return sum;
  };
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  return det(cols, 0);
}

/// D_1467^2 in the r variables via the Cayley-Menger determinant of bodies
/// {1,4,6,7}: r14 = 1, r16 = r17, r46 = r47 = r45, r67 = s16 - s15.
inline MultiPoly d1467_squared() {
  const MultiPoly one(1);
  const MultiPoly r15 = detail::r_var("r15"), r16 = detail::r_var("r16"), r45 = detail::r_var("r45");
  const MultiPoly s16 = r16 * r16, s45 = r45 * r45, b = s16 - r15 * r15;
  const MultiPoly b2 = b * b;
  const std::vector<std::vector<MultiPoly>> sq{
      {MultiPoly(0), one, s16, s16},
      {one, MultiPoly(0), s45, s45},
      {s16, s45, MultiPoly(0), b2},
      {s16, s45, b2, MultiPoly(0)},
  };
  return cayley_menger_poly(sq) / Rational(8);
}

/// D_1467^2 from the plane-gap closed form, with sqrt(6) z written through the
/// linear relation s45 = rho^2 + (h - z)^2 and z^2 = s15 - (1 - b)^2 / 3.
inline MultiPoly d1467_squared_closed_form() {
  const MultiPoly r15 = detail::r_var("r15"), r16 = detail::r_var("r16"), r45 = detail::r_var("r45");
  const MultiPoly s15 = r15 * r15, s16 = r16 * r16, s45 = r45 * r45;
  const MultiPoly one(1), b = s16 - s15;
  const MultiPoly z2 = s15 - (one - b) * (one - b) / Rational(3);
  const MultiPoly sqrt6_z = Rational(3, 2) * (b * b / Rational(3) + MultiPoly(make_rational(2, 3)) + z2 - s45);
  const MultiPoly two_b = MultiPoly(2) + b;
  // D = sqrt(3) b (6z - sqrt(6)(2 + b)) / 18
  return b * b * (Rational(36) * z2 - Rational(12) * two_b * sqrt6_z + Rational(6) * two_b * two_b) / Rational(108);
}

/// t1 with den (D_1467^2)' = r16 (r16^2 - r15^2) t1, where ' is d/dr16 along
/// g = 0 and den = 1 + r15^2 + 2 r16^2 - 3 r45^2. Both exact divisions are
/// checked.
inline MultiPoly build_t1() {
  const MultiPoly r15 = detail::r_var("r15"), r16 = detail::r_var("r16"), r45 = detail::r_var("r45");
  const MultiPoly s15 = r15 * r15, s16 = r16 * r16, s45 = r45 * r45, one(1);
  const MultiPoly d2 = d1467_squared();
  const MultiPoly den = one + s15 + Rational(2) * s16 - Rational(3) * s45;
  // r45' = -2 r16 (1 + s15 - 2 s16 + s45) / (r45 den)
  const MultiPoly num = one + s15 - Rational(2) * s16 + s45;
  const MultiPoly cleared =
      den * d2.derivative("r16") - divide_exact(d2.derivative("r45"), r45) * Rational(2) * r16 * num;
  const MultiPoly factor = r16 * (s16 - s15);
  const MultiPoly t1 = divide_exact(cleared, factor);
  if (!(cleared - factor * t1).is_zero()) throw Error(ErrorCode::ConstructionMismatch, "quotient identity fails");
  return t1;
}

/// t2 = (1 - r15^2 + r45^2)[2(r16^2 - r45^2)(1 - r15^2 + r45^2) + 16 A145^2]
/// with A145 the area of triangle {1,4,5}.
inline MultiPoly build_t2() {
  const MultiPoly r15 = detail::r_var("r15"), r16 = detail::r_var("r16"), r45 = detail::r_var("r45");
  const MultiPoly s15 = r15 * r15, s16 = r16 * r16, s45 = r45 * r45, one(1);
  const MultiPoly area16 = Rational(2) * (s15 + s45 + s15 * s45) - one - s15 * s15 - s45 * s45;
  const MultiPoly c = one - s15 + s45;
  return c * (Rational(2) * (s16 - s45) * c + area16);
}

// ---------------------------------------------------------------------------
// Univariate polynomials and Sturm chains

/// Dense univariate polynomial, coefficients in ascending degree.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  const Rational& lead() const { return c_.back(); }

  Rational operator()(const Rational& x) const {
    Rational r = 0;
    for (std::size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  UniPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
    return UniPoly(std::move(d));
  }

  /// Positive multiple with coprime integer coefficients.
  UniPoly primitive() const {
    if (c_.empty()) return *this;
    mpz_class l = 1, g = 0;
    for (const auto& x : c_) l = lcm(l, x.get_den());
    std::vector<Rational> out;
    for (const auto& x : c_) {
      Rational y = x * l;
      g = gcd(g, y.get_num());
      out.push_back(y);
    }
    for (auto& x : out) x /= g;
    return UniPoly(std::move(out));
  }

  friend std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw Error(ErrorCode::DomainError, "division by the zero polynomial");
    std::vector<Rational> r = a.c_;
    std::vector<Rational> q(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0);
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
      const Rational f = r[static_cast<std::size_t>(k + b.degree())] / b.lead();
      q[static_cast<std::size_t>(k)] = f;
      for (int j = 0; j <= b.degree(); ++j) r[static_cast<std::size_t>(k + j)] -= f * b.c_[static_cast<std::size_t>(j)];
    }
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline UniPoly poly_gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = r.primitive();
  }
  return a.primitive();
}

inline UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() <= 0) return p;
  const UniPoly g = poly_gcd(p, p.derivative());
  return divmod(p, g).first.primitive();
}

/// Converts a polynomial that involves at most one variable.
inline std::pair<UniPoly, std::string> to_univariate(const MultiPoly& p) {
  std::optional<std::size_t> var;
  for (const auto& [e, c] : p.terms())
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k]) {
        if (var && *var != k) throw Error(ErrorCode::DimensionMismatch, "polynomial is not univariate");
        var = k;
      }
  const std::size_t k = var.value_or(0);
  std::vector<Rational> c(p.is_zero() ? 0 : p.degree(p.variables()[k]) + 1);
  for (const auto& [e, coef] : p.terms()) c[e[k]] = coef;
  return {UniPoly(std::move(c)), p.variables()[k]};
}

inline MultiPoly from_univariate(const UniPoly& u, std::string_view var,
                                 std::vector<std::string> vars = MultiPoly::default_variables()) {
  MultiPoly out(vars);
  const std::size_t k = out.index_of(var);
  for (std::size_t i = 0; i < u.coefficients().size(); ++i) {
    Exponents e(vars.size(), 0);
    e[k] = static_cast<unsigned>(i);
    out.add_term(e, u.coefficients()[i]);
  }
  return out;
}

struct IsolatingInterval {
  /// Exactly one root lies in (lo, hi].
  Rational lo, hi;
};

class SturmChain {
 public:
  /// Built on the squarefree part of p.
  explicit SturmChain(const UniPoly& p) {
    if (p.is_zero()) throw Error(ErrorCode::DomainError, "Sturm chain of the zero polynomial");
    seq_.push_back(squarefree_part(p));
    if (seq_[0].degree() <= 0) return;
    seq_.push_back(seq_[0].derivative().primitive());
    while (true) {
      const UniPoly r = divmod(seq_[seq_.size() - 2], seq_.back()).second;
      if (r.is_zero()) break;
      const UniPoly prim = r.primitive();
      std::vector<Rational> neg;
      for (const auto& x : prim.coefficients()) neg.push_back(-x);
      seq_.emplace_back(std::move(neg));
    }
  }

  const std::vector<UniPoly>& sequence() const { return seq_; }

  int sign_variations(const Rational& x) const {
    int changes = 0, prev = 0;
    for (const auto& p : seq_) {
      const int s = sgn(p(x));
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++changes;
      prev = s;
    }
    return changes;
  }

  /// Number of distinct real roots in (a, b].
  int count(const Rational& a, const Rational& b) const { return sign_variations(a) - sign_variations(b); }

  std::vector<IsolatingInterval> isolate(const Rational& lo, const Rational& hi) const {
    std::vector<IsolatingInterval> out;
    std::vector<std::pair<Rational, Rational>> stack{{lo, hi}};
    while (!stack.empty()) {
      auto [a, b] = stack.back();
      stack.pop_back();
      const int n = count(a, b);
      if (n == 0) continue;
      if (n == 1) {
        out.push_back({a, b});
        continue;
      }
      Rational m = (a + b) / 2;
      stack.push_back({m, b});
      stack.push_back({a, m});
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
    return out;
  }

 private:
  std::vector<UniPoly> seq_;
};

inline std::vector<IsolatingInterval> sturm_isolate(const MultiPoly& p, const Rational& lo, const Rational& hi) {
  return SturmChain(to_univariate(p).first).isolate(lo, hi);
}

}  // namespace stackedcc
