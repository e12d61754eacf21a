#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "kmlat/error.hpp"

namespace kmlat::gf {

/// Raw element of a finite field: the integer sum c_i p^i of its
/// coefficient vector in the polynomial basis. 0 and 1 are zero and one.
using Elem = std::uint16_t;

constexpr int kMaxDegree = 8;
constexpr int kMaxOrder = 512;

class Field;

/// Element of the quadratic extension, written x0 + x1*w.
struct ExtElement {
  const Field* field = nullptr;
  Elem x0 = 0;
  Elem x1 = 0;

  bool operator==(const ExtElement& o) const {
    return field == o.field && x0 == o.x0 && x1 == o.x1;
  }
  bool operator!=(const ExtElement& o) const { return !(*this == o); }
};

/// F_q for q = p^a. Instances are interned by make_field and live for the
/// whole process, so raw pointers to them never dangle.
class Field {
 public:
  Field(int p, int a);
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  int p() const { return p_; }
  int a() const { return a_; }
  int q() const { return q_; }
  /// Monic modulus, coefficients from constant term upwards (length a+1).
  const std::vector<int>& modulus() const { return modulus_; }
  /// "p^a/c0,c1,...,ca"
  std::string spec_string() const;

  Elem add(Elem x, Elem y) const { return add_[x * q_ + y]; }
  Elem sub(Elem x, Elem y) const { return add_[x * q_ + neg_[y]]; }
  Elem neg(Elem x) const { return neg_[x]; }
  Elem mul(Elem x, Elem y) const { return mul_[x * q_ + y]; }
  Elem inv(Elem x) const;
  Elem div(Elem x, Elem y) const { return mul(x, inv(y)); }
  Elem pow(Elem x, long long e) const;
  /// Image of an integer under Z -> F_p -> F_q.
  Elem from_int(long long n) const;
  std::vector<int> coeffs(Elem x) const;
  Elem from_coeffs(const std::vector<int>& c) const;
  /// Multiplicative order of a nonzero element.
  int order(Elem x) const;
  /// Parses the integer encoding; prime fields accept any integer (reduced
  /// mod p), extension fields require 0 <= n < q.
  Elem parse(long long n) const;

  // Quadratic extension F_{q^2} = F_q[w]/(w^2 + c1 w + c0).
  /// (c0, c1) of the lexicographically least irreducible quadratic,
  /// compared on (c1, c0).
  std::pair<Elem, Elem> ext_modulus() const;
  ExtElement ext(Elem x0, Elem x1) const { return ExtElement{this, x0, x1}; }
  ExtElement ext_add(const ExtElement& x, const ExtElement& y) const;
  ExtElement ext_mul(const ExtElement& x, const ExtElement& y) const;
  ExtElement ext_pow(ExtElement x, long long e) const;
  /// z * z^q
  Elem ext_norm(const ExtElement& z) const;

 private:
  int p_, a_, q_;
  std::vector<int> modulus_;
  std::vector<Elem> add_, mul_, neg_, inv_;
  mutable std::once_flag ext_once_;
  mutable std::pair<Elem, Elem> ext_mod_{0, 0};
};

/// Interned field of order p^a with the lexicographically least monic
/// irreducible modulus (coefficients compared from degree a-1 down to 0).
const Field& make_field(int p, int a);
/// Same, from the order q = p^a. Throws NonPrime if q is not a prime power.
const Field& field_of_order(int q);

bool is_prime(long long n);
/// Monic polynomial over F_p (coefficients low to high) has no factor of
/// degree between 1 and deg/2.
bool is_irreducible_mod_p(const std::vector<int>& poly, int p);

/// Element with its field attached; arithmetic checks that fields match.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(const Field& f, Elem v) : f_(&f), v_(v) {}

  const Field& field() const { return *f_; }
  Elem value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement inv() const;
  FieldElement pow(long long e) const;

  bool operator==(const FieldElement& o) const { return f_ == o.f_ && v_ == o.v_; }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

 private:
  void check(const FieldElement& o) const;
  const Field* f_ = nullptr;
  Elem v_ = 0;
};

enum class QMod4 { Even, One, Three };
QMod4 q_mod4(const Field& f);
std::string to_string(QMod4 r);

/// The q+1 elements of norm one in F_{q^2}, sorted by (x0, x1).
std::vector<ExtElement> norm1_subgroup(const Field& f);

}  // namespace kmlat::gf
