#include "kmlat/gf.hpp"

#include <map>
#include <memory>
#include <sstream>

namespace kmlat {

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::NonPrime: return "NonPrime";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::DegreeWindowExceeded: return "DegreeWindowExceeded";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::NonInvertible: return "NonInvertible";
    case ErrorCode::ZeroDeterminant: return "ZeroDeterminant";
    case ErrorCode::OddCharacteristic: return "OddCharacteristic";
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::UnsupportedActionDomain: return "UnsupportedActionDomain";
    case ErrorCode::MalformedWord: return "MalformedWord";
    case ErrorCode::RadiusExceeded: return "RadiusExceeded";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorCode::WrongFixedVertex: return "WrongFixedVertex";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::MinUndefined: return "MinUndefined";
    case ErrorCode::KindInadmissible: return "KindInadmissible";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace kmlat

namespace kmlat::gf {

namespace {

using Poly = std::vector<int>;  // low to high

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo a monic g over F_p.
Poly poly_mod(Poly f, const Poly& g, int p) {
  trim(f);
  const int dg = static_cast<int>(g.size()) - 1;
  while (static_cast<int>(f.size()) - 1 >= dg) {
    const int shift = static_cast<int>(f.size()) - 1 - dg;
    const int lead = f.back();
    for (int i = 0; i <= dg; ++i) {
      f[i + shift] = ((f[i + shift] - lead * g[i]) % p + p) % p;
    }
    trim(f);
  }
  return f;
}

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible_mod_p(const std::vector<int>& poly, int p) {
  const int deg = static_cast<int>(poly.size()) - 1;
  if (deg < 1) return false;
  for (int d = 1; 2 * d <= deg; ++d) {
    const int count = ipow(p, d);
    for (int n = 0; n < count; ++n) {
      Poly g(d + 1, 0);
      int m = n;
      for (int i = 0; i < d; ++i) {
        g[i] = m % p;
        m /= p;
      }
      g[d] = 1;
      if (poly_mod(poly, g, p).empty()) return false;
    }
  }
  return true;
}

Field::Field(int p, int a) : p_(p), a_(a), q_(ipow(p, a)) {
  const int count = ipow(p, a);
  for (int n = 0; n < count; ++n) {
    Poly f(a + 1, 0);
    int m = n;
    for (int i = 0; i < a; ++i) {
      f[i] = m % p;
      m /= p;
    }
    f[a] = 1;
    if (is_irreducible_mod_p(f, p)) {
      modulus_ = f;
      break;
    }
  }
  if (modulus_.empty()) fail(ErrorCode::Internal, "no irreducible modulus found");

  const std::size_t qq = static_cast<std::size_t>(q_) * q_;
  add_.resize(qq);
  mul_.resize(qq);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  for (int x = 0; x < q_; ++x) {
    const Poly cx = coeffs(static_cast<Elem>(x));
    Poly nx(a_);
    for (int i = 0; i < a_; ++i) nx[i] = (p_ - cx[i]) % p_;
    neg_[x] = from_coeffs(nx);
    for (int y = 0; y < q_; ++y) {
      const Poly cy = coeffs(static_cast<Elem>(y));
      Poly s(a_);
      for (int i = 0; i < a_; ++i) s[i] = (cx[i] + cy[i]) % p_;
      add_[x * q_ + y] = from_coeffs(s);
      Poly prod(2 * a_ - 1, 0);
      for (int i = 0; i < a_; ++i) {
        for (int j = 0; j < a_; ++j) prod[i + j] = (prod[i + j] + cx[i] * cy[j]) % p_;
      }
      Poly r = poly_mod(prod, modulus_, p_);
      r.resize(a_, 0);
      mul_[x * q_ + y] = from_coeffs(r);
    }
  }
  for (int x = 1; x < q_; ++x) {
    for (int y = 1; y < q_; ++y) {
      if (mul_[x * q_ + y] == 1) {
        inv_[x] = static_cast<Elem>(y);
        break;
      }
    }
  }
}

std::string Field::spec_string() const {
  std::ostringstream os;
  os << p_ << '^' << a_ << '/';
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    if (i) os << ',';
    os << modulus_[i];
  }
  return os.str();
}

Elem Field::inv(Elem x) const {
  if (x == 0) fail(ErrorCode::DivisionByZero, "inverse of zero");
  return inv_[x];
}

Elem Field::pow(Elem x, long long e) const {
  if (e < 0) {
    x = inv(x);
    e = -e;
  }
  Elem r = 1;
  while (e > 0) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

Elem Field::from_int(long long n) const {
  const long long r = ((n % p_) + p_) % p_;
  return static_cast<Elem>(r);
}

std::vector<int> Field::coeffs(Elem x) const {
  std::vector<int> c(a_);
  int m = x;
  for (int i = 0; i < a_; ++i) {
    c[i] = m % p_;
    m /= p_;
  }
  return c;
}

Elem Field::from_coeffs(const std::vector<int>& c) const {
  int v = 0;
  for (int i = a_ - 1; i >= 0; --i) {
    const int ci = i < static_cast<int>(c.size()) ? ((c[i] % p_) + p_) % p_ : 0;
    v = v * p_ + ci;
  }
  return static_cast<Elem>(v);
}

int Field::order(Elem x) const {
  if (x == 0) fail(ErrorCode::DivisionByZero, "order of zero");
  int k = 1;
  Elem y = x;
  while (y != 1) {
    y = mul(y, x);
    ++k;
  }
  return k;
}

Elem Field::parse(long long n) const {
  if (a_ == 1) return from_int(n);
  if (n < 0 || n >= q_) {
    fail(ErrorCode::ParseError,
         "field element " + std::to_string(n) + " out of range for q=" + std::to_string(q_));
  }
  return static_cast<Elem>(n);
}

std::pair<Elem, Elem> Field::ext_modulus() const {
  std::call_once(ext_once_, [this] {
    std::vector<char> hit(q_);
    for (int c1 = 0; c1 < q_; ++c1) {
      // w^2 + c1 w + c0 is reducible iff -c0 = x^2 + c1 x for some x.
      std::fill(hit.begin(), hit.end(), 0);
      for (int x = 0; x < q_; ++x) {
        hit[add(mul(x, x), mul(static_cast<Elem>(c1), x))] = 1;
      }
      for (int c0 = 0; c0 < q_; ++c0) {
        if (!hit[neg(static_cast<Elem>(c0))]) {
          ext_mod_ = {static_cast<Elem>(c0), static_cast<Elem>(c1)};
          return;
        }
      }
    }
  });
  return ext_mod_;
}

ExtElement Field::ext_add(const ExtElement& x, const ExtElement& y) const {
  return ExtElement{this, add(x.x0, y.x0), add(x.x1, y.x1)};
}

ExtElement Field::ext_mul(const ExtElement& x, const ExtElement& y) const {
  const auto [c0, c1] = ext_modulus();
  const Elem hi = mul(x.x1, y.x1);  // coefficient of w^2 = -c0 - c1 w
  const Elem r0 = sub(mul(x.x0, y.x0), mul(hi, c0));
  const Elem r1 = sub(add(mul(x.x0, y.x1), mul(x.x1, y.x0)), mul(hi, c1));
  return ExtElement{this, r0, r1};
}

ExtElement Field::ext_pow(ExtElement x, long long e) const {
  ExtElement r{this, 1, 0};
  while (e > 0) {
    if (e & 1) r = ext_mul(r, x);
    x = ext_mul(x, x);
    e >>= 1;
  }
  return r;
}

Elem Field::ext_norm(const ExtElement& z) const {
  const ExtElement n = ext_pow(z, static_cast<long long>(q_) + 1);
  return n.x0;
}

const Field& make_field(int p, int a) {
  if (!is_prime(p)) fail(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
  if (a < 1 || a > kMaxDegree) {
    fail(ErrorCode::DegreeTooLarge, "degree " + std::to_string(a) + " outside 1.." +
                                        std::to_string(kMaxDegree));
  }
  long long q = 1;
  for (int i = 0; i < a; ++i) q *= p;
  if (q > kMaxOrder) {
    fail(ErrorCode::DegreeTooLarge, "q=" + std::to_string(q) + " exceeds " +
                                        std::to_string(kMaxOrder));
  }
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, a}];
  if (!slot) slot = std::make_unique<Field>(p, a);
  return *slot;
}

const Field& field_of_order(int q) {
  if (q < 2) fail(ErrorCode::NonPrime, "q=" + std::to_string(q) + " is not a prime power");
  int p = 2;
  while (q % p != 0) ++p;
  int a = 0;
  int m = q;
  while (m % p == 0) {
    m /= p;
    ++a;
  }
  if (m != 1) fail(ErrorCode::NonPrime, "q=" + std::to_string(q) + " is not a prime power");
  return make_field(p, a);
}

void FieldElement::check(const FieldElement& o) const {
  if (f_ != o.f_ || f_ == nullptr) fail(ErrorCode::SpecMismatch, "operands from different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check(o);
  return {*f_, f_->add(v_, o.v_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  check(o);
  return {*f_, f_->sub(v_, o.v_)};
}

FieldElement FieldElement::operator-() const { return {*f_, f_->neg(v_)}; }

FieldElement FieldElement::operator*(const FieldElement& o) const {
  check(o);
  return {*f_, f_->mul(v_, o.v_)};
}

FieldElement FieldElement::inv() const { return {*f_, f_->inv(v_)}; }

FieldElement FieldElement::pow(long long e) const { return {*f_, f_->pow(v_, e)}; }

QMod4 q_mod4(const Field& f) {
  if (f.p() == 2) return QMod4::Even;
  return f.q() % 4 == 1 ? QMod4::One : QMod4::Three;
}

std::string to_string(QMod4 r) {
  switch (r) {
    case QMod4::Even: return "even";
    case QMod4::One: return "1";
    case QMod4::Three: return "3";
  }
  return "?";
}

std::vector<ExtElement> norm1_subgroup(const Field& f) {
  std::vector<ExtElement> out;
  for (int x0 = 0; x0 < f.q(); ++x0) {
    for (int x1 = 0; x1 < f.q(); ++x1) {
      if (x0 == 0 && x1 == 0) continue;
      const ExtElement z = f.ext(static_cast<Elem>(x0), static_cast<Elem>(x1));
      const ExtElement n = f.ext_pow(z, static_cast<long long>(f.q()) + 1);
      if (n.x0 == 1 && n.x1 == 0) out.push_back(z);
    }
  }
  return out;
}

}  // namespace kmlat::gf
