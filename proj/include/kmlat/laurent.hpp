#pragma once

#include <climits>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kmlat/gf.hpp"

namespace kmlat::laurent {

using gf::Elem;
using gf::Field;

/// Exponents are powers of pi = t^-1 and must stay inside [-kWindow, kWindow].
constexpr int kWindow = 64;
constexpr int kInfinity = INT_MAX;

/// Exact element of F_q[t, t^-1], stored sparsely by pi-degree.
class LaurentPoly {
 public:
  using Term = std::pair<int, Elem>;  // (pi-degree, nonzero coefficient)

  LaurentPoly() = default;
  explicit LaurentPoly(const Field& f) : f_(&f) {}
  /// c * pi^deg
  static LaurentPoly monomial(const Field& f, Elem c, int deg);
  static LaurentPoly constant(const Field& f, Elem c) { return monomial(f, c, 0); }
  static LaurentPoly t(const Field& f) { return monomial(f, 1, -1); }
  static LaurentPoly pi(const Field& f) { return monomial(f, 1, 1); }
  /// From arbitrary (degree, coefficient) pairs; zeros dropped, duplicates summed.
  static LaurentPoly from_terms(const Field& f, std::vector<Term> terms);

  const Field& field() const { return *f_; }
  const Field* field_ptr() const { return f_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1; }
  /// Nonzero constant, i.e. a single term of degree 0.
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }
  bool is_monomial() const { return terms_.size() == 1; }
  /// Coefficient of pi^deg (0 if absent).
  Elem coeff(int deg) const;
  /// Highest pi-degree present; requires nonzero.
  int max_degree() const { return terms_.back().first; }

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly scale(Elem c) const;
  /// Multiply by pi^k.
  LaurentPoly shift(int k) const;

  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }
  bool operator<(const LaurentPoly& o) const { return terms_ < o.terms_; }
  std::size_t hash() const;

 private:
  void check(const LaurentPoly& o) const;
  static void check_window(int deg);
  const Field* f_ = nullptr;
  std::vector<Term> terms_;
};

/// Least pi-degree with a nonzero coefficient; kInfinity for zero.
int valuation(const LaurentPoly& x);

/// Element of F_q((pi)) known modulo pi^precision.
class TruncatedSeries {
 public:
  TruncatedSeries(const Field& f, int precision) : f_(&f), precision_(precision) {}
  TruncatedSeries(const LaurentPoly& x, int precision);

  const Field& field() const { return *f_; }
  int precision() const { return precision_; }
  /// Terms with degree < precision, sorted.
  const std::vector<LaurentPoly::Term>& terms() const { return terms_; }
  Elem coeff(int deg) const;
  bool is_zero_to_precision() const { return terms_.empty(); }
  LaurentPoly to_poly() const;

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  /// Known equality: agree on all degrees below the common precision.
  bool congruent(const TruncatedSeries& o) const;

 private:
  const Field* f_;
  int precision_;
  std::vector<LaurentPoly::Term> terms_;
};

/// Throws PrecisionExhausted if the series is zero to its precision.
int valuation(const TruncatedSeries& x);

/// r with u*r = 1 mod pi^N. Requires v(u) = 0 (NotAUnit otherwise).
TruncatedSeries unit_inverse_mod(const LaurentPoly& u, int N);

/// Truncation of x to degrees < N.
TruncatedSeries reduce_mod(const LaurentPoly& x, int N);

/// "c_k*t^k + ..." in descending t-degree; t-degree = -pi-degree.
std::string to_string(const LaurentPoly& x);
/// Inverse of to_string. Accepts terms like "3*t^2", "t", "-t^-1", "2", "pi^3".
LaurentPoly parse(const Field& f, const std::string& text);

}  // namespace kmlat::laurent
