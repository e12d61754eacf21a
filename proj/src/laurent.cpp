#include "kmlat/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace kmlat::laurent {

void LaurentPoly::check(const LaurentPoly& o) const {
  if (f_ != o.f_ || f_ == nullptr) fail(ErrorCode::SpecMismatch, "Laurent operands from different fields");
}

void LaurentPoly::check_window(int deg) {
  if (deg < -kWindow || deg > kWindow) {
    fail(ErrorCode::DegreeWindowExceeded,
         "pi-degree " + std::to_string(deg) + " outside +-" + std::to_string(kWindow));
  }
}

LaurentPoly LaurentPoly::monomial(const Field& f, Elem c, int deg) {
  LaurentPoly r(f);
  if (c != 0) {
    check_window(deg);
    r.terms_.emplace_back(deg, c);
  }
  return r;
}

LaurentPoly LaurentPoly::from_terms(const Field& f, std::vector<Term> terms) {
  std::map<int, Elem> acc;
  for (const auto& [d, c] : terms) {
    auto& slot = acc[d];
    slot = f.add(slot, c);
  }
  LaurentPoly r(f);
  for (const auto& [d, c] : acc) {
    if (c != 0) {
      check_window(d);
      r.terms_.emplace_back(d, c);
    }
  }
  return r;
}

Elem LaurentPoly::coeff(int deg) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{deg, 0});
  if (it != terms_.end() && it->first == deg) return it->second;
  return 0;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  check(o);
  LaurentPoly r(*f_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  while (i != terms_.end() || j != o.terms_.end()) {
    if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
      r.terms_.push_back(*i++);
    } else if (i == terms_.end() || j->first < i->first) {
      r.terms_.push_back(*j++);
    } else {
      const Elem c = f_->add(i->second, j->second);
      if (c != 0) r.terms_.emplace_back(i->first, c);
      ++i;
      ++j;
    }
  }
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(*f_);
  r.terms_.reserve(terms_.size());
  for (const auto& [d, c] : terms_) r.terms_.emplace_back(d, f_->neg(c));
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  check(o);
  LaurentPoly r(*f_);
  if (terms_.empty() || o.terms_.empty()) return r;
  const int lo = terms_.front().first + o.terms_.front().first;
  const int hi = terms_.back().first + o.terms_.back().first;
  std::vector<Elem> dense(hi - lo + 1, 0);
  for (const auto& [d1, c1] : terms_) {
    for (const auto& [d2, c2] : o.terms_) {
      Elem& slot = dense[d1 + d2 - lo];
      slot = f_->add(slot, f_->mul(c1, c2));
    }
  }
  for (int k = 0; k <= hi - lo; ++k) {
    if (dense[k] != 0) {
      check_window(lo + k);
      r.terms_.emplace_back(lo + k, dense[k]);
    }
  }
  return r;
}

LaurentPoly LaurentPoly::scale(Elem c) const {
  LaurentPoly r(*f_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& [d, x] : terms_) r.terms_.emplace_back(d, f_->mul(x, c));
  return r;
}

LaurentPoly LaurentPoly::shift(int k) const {
  LaurentPoly r(*f_);
  r.terms_.reserve(terms_.size());
  for (const auto& [d, x] : terms_) {
    check_window(d + k);
    r.terms_.emplace_back(d + k, x);
  }
  return r;
}

std::size_t LaurentPoly::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& [d, c] : terms_) {
    h ^= static_cast<std::size_t>((d + 128) * 1024 + c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

int valuation(const LaurentPoly& x) { return x.is_zero() ? kInfinity : x.terms().front().first; }

TruncatedSeries::TruncatedSeries(const LaurentPoly& x, int precision)
    : f_(x.field_ptr()), precision_(precision) {
  for (const auto& t : x.terms()) {
    if (t.first < precision) terms_.push_back(t);
  }
}

Elem TruncatedSeries::coeff(int deg) const {
  for (const auto& [d, c] : terms_) {
    if (d == deg) return c;
  }
  return 0;
}

LaurentPoly TruncatedSeries::to_poly() const {
  return LaurentPoly::from_terms(*f_, terms_);
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  if (f_ != o.f_) fail(ErrorCode::SpecMismatch, "series from different fields");
  return TruncatedSeries(to_poly() + o.to_poly(), std::min(precision_, o.precision_));
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
  if (f_ != o.f_) fail(ErrorCode::SpecMismatch, "series from different fields");
  return TruncatedSeries(to_poly() - o.to_poly(), std::min(precision_, o.precision_));
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  if (f_ != o.f_) fail(ErrorCode::SpecMismatch, "series from different fields");
  return TruncatedSeries(to_poly() * o.to_poly(), std::min(precision_, o.precision_));
}

bool TruncatedSeries::congruent(const TruncatedSeries& o) const {
  const int n = std::min(precision_, o.precision_);
  return TruncatedSeries(to_poly() - o.to_poly(), n).is_zero_to_precision();
}

int valuation(const TruncatedSeries& x) {
  if (x.is_zero_to_precision()) {
    fail(ErrorCode::PrecisionExhausted,
         "series is zero to precision " + std::to_string(x.precision()));
  }
  return x.terms().front().first;
}

TruncatedSeries unit_inverse_mod(const LaurentPoly& u, int N) {
  if (valuation(u) != 0) {
    fail(ErrorCode::NotAUnit, "valuation " + (u.is_zero() ? std::string("inf")
                                                            : std::to_string(valuation(u))) +
                                  " is not 0");
  }
  const Field& f = u.field();
  const Elem u0inv = f.inv(u.coeff(0));
  std::vector<Elem> r(std::max(N, 0), 0);
  for (int k = 0; k < N; ++k) {
    Elem s = k == 0 ? 1 : 0;
    for (int i = 1; i <= k; ++i) s = f.sub(s, f.mul(u.coeff(i), r[k - i]));
    r[k] = f.mul(s, u0inv);
  }
  std::vector<LaurentPoly::Term> terms;
  for (int k = 0; k < N; ++k) terms.emplace_back(k, r[k]);
  return TruncatedSeries(LaurentPoly::from_terms(f, terms), N);
}

TruncatedSeries reduce_mod(const LaurentPoly& x, int N) { return TruncatedSeries(x, N); }

std::string to_string(const LaurentPoly& x) {
  if (x.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Descending t-degree means ascending pi-degree.
  for (const auto& [d, c] : x.terms()) {
    if (!first) os << " + ";
    first = false;
    const int tdeg = -d;
    if (tdeg == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << '*';
    os << 't';
    if (tdeg != 1) os << '^' << tdeg;
  }
  return os.str();
}

namespace {

[[noreturn]] void parse_fail(const std::string& text, const std::string& why) {
  fail(ErrorCode::ParseError, "cannot parse Laurent polynomial '" + text + "': " + why);
}

}  // namespace

LaurentPoly parse(const Field& f, const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) parse_fail(text, "empty");
  std::vector<LaurentPoly::Term> terms;
  std::size_t i = 0;
  auto read_int = [&](long long& out) {
    std::size_t j = i;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
    const std::size_t digits = j;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == digits) return false;
    out = std::stoll(s.substr(i, j - i));
    i = j;
    return true;
  };
  while (i < s.size()) {
    bool negate = false;
    if (s[i] == '+' || s[i] == '-') {
      negate = s[i] == '-';
      ++i;
    } else if (!terms.empty()) {
      parse_fail(text, "expected '+' or '-'");
    }
    long long coef = 1;
    bool have_coef = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      read_int(coef);
      have_coef = true;
      if (i < s.size() && s[i] == '*') ++i;
    }
    int pideg = 0;
    if (i < s.size() && (s[i] == 't' || s[i] == 'p')) {
      int sign = -1;  // t^k is pi^-k
      if (s.compare(i, 2, "pi") == 0) {
        sign = 1;
        i += 2;
      } else if (s[i] == 't') {
        ++i;
      } else {
        parse_fail(text, "unexpected character");
      }
      long long e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (!read_int(e)) parse_fail(text, "missing exponent");
      }
      pideg = static_cast<int>(sign * e);
    } else if (!have_coef) {
      parse_fail(text, "expected coefficient or 't'");
    }
    Elem c = f.parse(coef);
    if (negate) c = f.neg(c);
    terms.emplace_back(pideg, c);
  }
  return LaurentPoly::from_terms(f, terms);
}

}  // namespace kmlat::laurent
