#include "kmlat/groups.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

namespace kmlat::groups {

namespace {

struct CMatHash {
  std::size_t operator()(const CMat& x) const {
    return (static_cast<std::size_t>(x.a) << 48) ^ (static_cast<std::size_t>(x.b) << 32) ^
           (static_cast<std::size_t>(x.c) << 16) ^ x.d;
  }
};

const std::vector<CMat>& gens_or_elements(const FiniteGroup& g) {
  return g.generators.empty() ? g.elements : g.generators;
}

long long ipow(long long b, int e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<long long> divisors(long long n) {
  std::vector<long long> out;
  for (long long d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

// Multiplicative order of p modulo e (1 for e = 1).
int mult_order(long long p, long long e) {
  if (e == 1) return 1;
  long long x = p % e;
  int k = 1;
  while (x != 1) {
    x = x * p % e;
    ++k;
    if (k > e) return -1;
  }
  return k;
}

}  // namespace

CMat MatOps::mul(const CMat& x, const CMat& y) const {
  const Field& f = *f_;
  return {f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)), f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
          f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)), f.add(f.mul(x.c, y.b), f.mul(x.d, y.d))};
}

Elem MatOps::det(const CMat& x) const { return f_->sub(f_->mul(x.a, x.d), f_->mul(x.b, x.c)); }

CMat MatOps::inv(const CMat& x) const {
  const Elem di = f_->inv(det(x));
  return {f_->mul(x.d, di), f_->mul(f_->neg(x.b), di), f_->mul(f_->neg(x.c), di),
          f_->mul(x.a, di)};
}

CMat MatOps::neg(const CMat& x) const {
  return {f_->neg(x.a), f_->neg(x.b), f_->neg(x.c), f_->neg(x.d)};
}

int MatOps::order(const CMat& x) const {
  const CMat one{};
  CMat y = x;
  int k = 1;
  const int bound = 4 * f_->q() * f_->q();
  while (y != one) {
    y = mul(y, x);
    if (++k > bound) fail(ErrorCode::Internal, "element order search did not terminate");
  }
  return k;
}

std::uint64_t MatOps::key(const CMat& x) const {
  const std::uint64_t q = static_cast<std::uint64_t>(f_->q());
  return ((static_cast<std::uint64_t>(x.a) * q + x.b) * q + x.c) * q + x.d;
}

serretree::Mat2 MatOps::to_mat2(const CMat& x) const {
  return serretree::Mat2::constant(*f_, x.a, x.b, x.c, x.d);
}

CMat MatOps::from_mat2(const serretree::Mat2& m) const {
  for (const auto* e : {&m.a, &m.b, &m.c, &m.d}) {
    if (!e->is_constant()) fail(ErrorCode::InvalidInput, "matrix has non-constant entries");
  }
  return {m.a.coeff(0), m.b.coeff(0), m.c.coeff(0), m.d.coeff(0)};
}

bool FiniteGroup::contains(const CMat& x) const {
  const MatOps ops(*field);
  const auto k = ops.key(x);
  auto it = std::lower_bound(elements.begin(), elements.end(), k,
                             [&](const CMat& e, std::uint64_t v) { return ops.key(e) < v; });
  return it != elements.end() && *it == x;
}

namespace {

void sort_by_key(const MatOps& ops, std::vector<CMat>& v) {
  std::sort(v.begin(), v.end(), [&](const CMat& x, const CMat& y) { return ops.key(x) < ops.key(y); });
}

}  // namespace

std::optional<FiniteGroup> closure_bounded(const Field& f, const std::vector<CMat>& gens,
                                           std::size_t limit) {
  const MatOps ops(f);
  auto out = closure_generic<CMat, CMatHash>(
      ops.identity(), gens, [&](const CMat& x, const CMat& y) { return ops.mul(x, y); }, limit);
  if (!out) return std::nullopt;
  FiniteGroup g{&f, std::move(*out), gens};
  sort_by_key(ops, g.elements);
  return g;
}

FiniteGroup closure(const Field& f, const std::vector<CMat>& gens, std::size_t cap) {
  auto g = closure_bounded(f, gens, cap);
  if (!g) fail(ErrorCode::SizeCapExceeded, "closure exceeds " + std::to_string(cap) + " elements");
  return std::move(*g);
}

FiniteGroup from_elements(const Field& f, std::vector<CMat> elements) {
  const MatOps ops(f);
  sort_by_key(ops, elements);
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  FiniteGroup g{&f, std::move(elements), {}};
  if (!g.contains(ops.identity())) fail(ErrorCode::NotASubgroup, "element set lacks the identity");
  for (const auto& x : g.elements) {
    if (!g.contains(ops.inv(x))) fail(ErrorCode::NotASubgroup, "element set not closed under inverse");
    for (const auto& y : g.elements) {
      if (!g.contains(ops.mul(x, y))) fail(ErrorCode::NotASubgroup, "element set not closed under product");
    }
  }
  return g;
}

std::vector<CMat> sl2_elements(const Field& f) {
  const int q = f.q();
  std::vector<CMat> out;
  out.reserve(static_cast<std::size_t>(q) * (static_cast<std::size_t>(q) * q - 1));
  const Elem minus_one = f.neg(1);
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      for (int c = 0; c < q; ++c) {
        const Elem bc = f.mul(static_cast<Elem>(b), static_cast<Elem>(c));
        if (a != 0) {
          const Elem d = f.div(f.add(1, bc), static_cast<Elem>(a));
          out.push_back({static_cast<Elem>(a), static_cast<Elem>(b), static_cast<Elem>(c), d});
        } else if (bc == minus_one) {
          for (int d = 0; d < q; ++d) {
            out.push_back({0, static_cast<Elem>(b), static_cast<Elem>(c), static_cast<Elem>(d)});
          }
        }
      }
    }
  }
  return out;
}

FiniteGroup center(const FiniteGroup& g) {
  const MatOps ops(*g.field);
  std::vector<CMat> out;
  for (const auto& x : g.elements) {
    bool central = true;
    for (const auto& y : gens_or_elements(g)) {
      if (ops.mul(x, y) != ops.mul(y, x)) {
        central = false;
        break;
      }
    }
    if (central) out.push_back(x);
  }
  return FiniteGroup{g.field, out, {}};
}

bool is_subgroup(const FiniteGroup& h, const FiniteGroup& g) {
  return std::all_of(h.elements.begin(), h.elements.end(), [&](const CMat& x) { return g.contains(x); });
}

bool is_normal(const FiniteGroup& h, const FiniteGroup& g) {
  const MatOps ops(*g.field);
  for (const auto& x : gens_or_elements(g)) {
    const CMat xi = ops.inv(x);
    for (const auto& y : gens_or_elements(h)) {
      if (!h.contains(ops.mul(ops.mul(x, y), xi))) return false;
    }
  }
  return true;
}

FiniteGroup intersection(const FiniteGroup& h, const FiniteGroup& k) {
  std::vector<CMat> out;
  for (const auto& x : h.elements) {
    if (k.contains(x)) out.push_back(x);
  }
  return FiniteGroup{h.field, out, {}};
}

std::size_t index(const FiniteGroup& h, const FiniteGroup& g) {
  if (!is_subgroup(h, g) || h.order() == 0 || g.order() % h.order() != 0) {
    fail(ErrorCode::NotASubgroup, "index needs H <= G");
  }
  return g.order() / h.order();
}

std::map<int, int> order_profile(const FiniteGroup& g) {
  const MatOps ops(*g.field);
  std::map<int, int> prof;
  for (const auto& x : g.elements) ++prof[ops.order(x)];
  return prof;
}

std::optional<CMat> unique_involution(const FiniteGroup& g) {
  const MatOps ops(*g.field);
  std::optional<CMat> found;
  for (const auto& x : g.elements) {
    if (x == ops.identity()) continue;
    if (ops.mul(x, x) == ops.identity()) {
      if (found) return std::nullopt;
      found = x;
    }
  }
  return found;
}

bool is_abelian(const FiniteGroup& g) {
  const MatOps ops(*g.field);
  const auto& gens = gens_or_elements(g);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (ops.mul(gens[i], gens[j]) != ops.mul(gens[j], gens[i])) return false;
    }
  }
  return true;
}

bool is_cyclic(const FiniteGroup& g) {
  const MatOps ops(*g.field);
  const int n = static_cast<int>(g.order());
  return std::any_of(g.elements.begin(), g.elements.end(),
                     [&](const CMat& x) { return ops.order(x) == n; });
}

namespace {

CMat mult_matrix(const Field& f, const gf::ExtElement& z) {
  const auto [c0, c1] = f.ext_modulus();
  // z*1 = x0 + x1 w, z*w = -c0 x1 + (x0 - c1 x1) w
  return {z.x0, f.neg(f.mul(c0, z.x1)), z.x1, f.sub(z.x0, f.mul(c1, z.x1))};
}

}  // namespace

FiniteGroup nonsplit_torus(const Field& f) {
  std::vector<CMat> els;
  for (const auto& z : gf::norm1_subgroup(f)) els.push_back(mult_matrix(f, z));
  const MatOps ops(f);
  sort_by_key(ops, els);
  FiniteGroup g{&f, els, {torus_generator(f)}};
  return g;
}

CMat torus_generator(const Field& f) {
  const MatOps ops(f);
  for (const auto& z : gf::norm1_subgroup(f)) {
    const CMat m = mult_matrix(f, z);
    if (ops.order(m) == f.q() + 1) return m;
  }
  fail(ErrorCode::Internal, "norm-one group is not cyclic");
}

FiniteGroup torus_normalizer(const Field& f) {
  if (f.p() == 2) fail(ErrorCode::KindInadmissible, "torus normalizer constructor needs p odd");
  const MatOps ops(f);
  const CMat z = torus_generator(f);
  const CMat zi = ops.inv(z);
  // Frobenius on F_{q^2} in the basis {1, w} has determinant -1; composing it
  // with multiplication by an element of norm -1 lands in SL2 and inverts the torus.
  const auto [c0, c1] = f.ext_modulus();
  (void)c0;
  const CMat frob{1, f.neg(c1), 0, f.neg(1)};
  for (int x0 = 0; x0 < f.q(); ++x0) {
    for (int x1 = 0; x1 < f.q(); ++x1) {
      const gf::ExtElement y = f.ext(static_cast<Elem>(x0), static_cast<Elem>(x1));
      if (f.ext_norm(y) != f.neg(1)) continue;
      const CMat n = ops.mul(frob, mult_matrix(f, y));
      if (ops.det(n) != 1) continue;
      if (ops.mul(ops.mul(n, z), ops.inv(n)) != zi) continue;
      return closure(f, {z, n});
    }
  }
  fail(ErrorCode::NotFound, "no element inverting the torus");
}

std::string GroupType::name() const {
  const std::string n = std::to_string(param);
  switch (tag) {
    case Tag::Cyclic: return "C" + n;
    case Tag::Dihedral: return "D" + n;
    case Tag::Dicyclic: return "Dic" + n;
    case Tag::SL2_3: return "SL2(3)";
    case Tag::SL2_5: return "SL2(5)";
    case Tag::BinaryOctahedral2S4: return "2S4";
    case Tag::S4: return "S4";
    case Tag::A4: return "A4";
    case Tag::A5: return "A5";
    case Tag::TorusNormalizer: return "N(T)[q=" + n + "]";
    case Tag::BorelFrobenius: return "Borel" + n;
    case Tag::ElementaryAbelian: return "E" + n;
    case Tag::PSL2: return "PSL2(" + n + ")";
    case Tag::PGL2: return "PGL2(" + n + ")";
    case Tag::SL2: return "SL2(" + n + ")";
    case Tag::DoublePGL2: return "2.PGL2(" + n + ")";
    case Tag::Unknown: return "Unknown" + n;
  }
  return "?";
}

long long GroupType::order() const {
  const long long q = param;
  switch (tag) {
    case Tag::Cyclic:
    case Tag::Dihedral:
    case Tag::Dicyclic:
    case Tag::BorelFrobenius:
    case Tag::ElementaryAbelian:
    case Tag::Unknown: return param;
    case Tag::SL2_3: return 24;
    case Tag::SL2_5: return 120;
    case Tag::BinaryOctahedral2S4: return 48;
    case Tag::S4: return 24;
    case Tag::A4: return 12;
    case Tag::A5: return 60;
    case Tag::TorusNormalizer: return 2 * (q + 1);
    case Tag::PSL2: return q * (q * q - 1) / (q % 2 == 0 ? 1 : 2);
    case Tag::PGL2: return q * (q * q - 1);
    case Tag::SL2: return q * (q * q - 1);
    case Tag::DoublePGL2: return 2 * q * (q * q - 1);
  }
  return 0;
}

GroupType parse_group_type(const std::string& s) {
  using Tag = GroupType::Tag;
  if (s == "SL2(3)" || s == "SL2_3") return GroupType::of(Tag::SL2_3);
  if (s == "SL2(5)" || s == "SL2_5") return GroupType::of(Tag::SL2_5);
  if (s == "2S4" || s == "BinaryOctahedral2S4") return GroupType::of(Tag::BinaryOctahedral2S4);
  if (s == "S4") return GroupType::of(Tag::S4);
  if (s == "A4") return GroupType::of(Tag::A4);
  if (s == "A5") return GroupType::of(Tag::A5);
  auto num = [&](std::size_t from) {
    std::size_t pos = 0;
    long long v = -1;
    try {
      v = std::stoll(s.substr(from), &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || from + pos != s.size() || v <= 0) {
      fail(ErrorCode::ParseError, "unknown group type '" + s + "'");
    }
    return v;
  };
  if (s.rfind("Dic", 0) == 0) return GroupType::dicyclic(num(3));
  if (!s.empty() && s[0] == 'C') return GroupType::cyclic(num(1));
  if (!s.empty() && s[0] == 'D') return GroupType::dihedral(num(1));
  fail(ErrorCode::ParseError, "unknown group type '" + s + "'");
}

namespace {

bool is_prime_power_of(long long n, int p, int& k) {
  k = 0;
  if (n < 1) return false;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return n == 1;
}

// x generates a cyclic subgroup of index 2 and every element outside it
// has the given order.
bool index_two_cyclic_with_outside_order(const FiniteGroup& g, const std::map<int, int>& prof,
                                         int outside_order) {
  const MatOps ops(*g.field);
  const int n = static_cast<int>(g.order());
  if (n % 2 != 0 || !prof.count(n / 2)) return false;
  for (const auto& x : g.elements) {
    if (ops.order(x) != n / 2) continue;
    std::vector<CMat> cyc;
    CMat y = ops.identity();
    for (int i = 0; i < n / 2; ++i) {
      cyc.push_back(y);
      y = ops.mul(y, x);
    }
    std::sort(cyc.begin(), cyc.end(),
              [&](const CMat& u, const CMat& v) { return ops.key(u) < ops.key(v); });
    const FiniteGroup c{g.field, cyc, {}};
    const bool ok = std::all_of(g.elements.begin(), g.elements.end(), [&](const CMat& z) {
      return c.contains(z) || ops.order(z) == outside_order;
    });
    if (ok) return true;
  }
  return false;
}

}  // namespace

GroupType recognize(const FiniteGroup& g) {
  using Tag = GroupType::Tag;
  const Field& f = *g.field;
  const int p = f.p();
  const long long n = static_cast<long long>(g.order());
  const auto prof = order_profile(g);
  auto count = [&](int k) { auto it = prof.find(k); return it == prof.end() ? 0 : it->second; };
  if (prof.count(static_cast<int>(n))) return GroupType::cyclic(n);

  const bool abelian = is_abelian(g);
  int k = 0;
  if (abelian && is_prime_power_of(n, p, k) && count(p) == n - 1) {
    return GroupType::of(Tag::ElementaryAbelian, n);
  }

  const std::map<int, int> sl2_3{{1, 1}, {2, 1}, {3, 8}, {4, 6}, {6, 8}};
  const std::map<int, int> two_s4{{1, 1}, {2, 1}, {3, 8}, {4, 18}, {6, 8}, {8, 12}};
  const std::map<int, int> sl2_5{{1, 1}, {2, 1}, {3, 20}, {4, 30}, {5, 24}, {6, 20}, {10, 24}};
  const std::map<int, int> a4{{1, 1}, {2, 3}, {3, 8}};
  const std::map<int, int> s4{{1, 1}, {2, 9}, {3, 8}, {4, 6}};
  const std::map<int, int> a5{{1, 1}, {2, 15}, {3, 20}, {5, 24}};

  if (count(2) == 1) {
    if (index_two_cyclic_with_outside_order(g, prof, 4)) return GroupType::dicyclic(n);
    if (prof == sl2_3) return GroupType::of(Tag::SL2_3);
    if (prof == two_s4) return GroupType::of(Tag::BinaryOctahedral2S4);
    if (prof == sl2_5) return GroupType::of(Tag::SL2_5);
  } else {
    if (index_two_cyclic_with_outside_order(g, prof, 2)) return GroupType::dihedral(n);
    if (prof == a4) return GroupType::of(Tag::A4);
    if (prof == s4) return GroupType::of(Tag::S4);
    if (prof == a5) return GroupType::of(Tag::A5);
  }

  // Normal elementary abelian Sylow p-subgroup with cyclic-order complement
  // dividing q - 1: a subgroup of a Borel subgroup.
  long long pk = 1;
  long long m = n;
  while (m % p == 0) {
    m /= p;
    pk *= p;
  }
  if (pk > 1 && (f.q() - 1) % m == 0) {
    int ppower = 0;
    for (const auto& [ord, c] : prof) {
      int e = 0;
      if (is_prime_power_of(ord, p, e)) ppower += c;
    }
    if (ppower == pk && count(p) == pk - 1) return GroupType::of(Tag::BorelFrobenius, n);
  }

  for (long long qq = p; qq <= f.q(); qq *= p) {
    if (f.q() != qq && !(is_prime_power_of(f.q(), static_cast<int>(qq), k))) continue;
    if (n == qq * (qq * qq - 1)) return GroupType::of(Tag::SL2, qq);
    if (p != 2 && count(2) == 1 && n == 2 * qq * (qq * qq - 1)) return GroupType::of(Tag::DoublePGL2, qq);
  }
  return GroupType::of(Tag::Unknown, n);
}

FiniteGroup find_subgroup_of_type(const Field& f, GroupType type) {
  using Tag = GroupType::Tag;
  if (f.p() == 2) fail(ErrorCode::InvalidInput, "subgroup search needs q odd");
  if (f.q() > 64) fail(ErrorCode::SearchBudgetExceeded, "subgroup search limited to q <= 64");
  int first_order = 0;
  switch (type.tag) {
    case Tag::SL2_3: first_order = 4; break;
    case Tag::SL2_5: first_order = 4; break;
    case Tag::BinaryOctahedral2S4: first_order = 8; break;
    default: fail(ErrorCode::InvalidInput, "search supports SL2(3), SL2(5) and 2S4, not " + type.name());
  }
  const long long target = type.order();
  const long long q = f.q();
  if ((q * (q * q - 1)) % target != 0) {
    fail(ErrorCode::NotFound, type.name() + " does not divide |SL2(" + std::to_string(q) + ")|");
  }
  // Every copy of the target contains an element of order first_order whose
  // conjugacy class in SL2(q) is fixed by its order (and, for order 8, by
  // the pair of traces, both present since -I lies in the copy), together
  // with an element of order 3 generating the copy with it. Conjugating,
  // we may fix the first generator.
  const MatOps ops(f);
  const auto all = sl2_elements(f);
  const CMat* g = nullptr;
  for (const auto& x : all) {
    if (ops.order(x) == first_order) {
      g = &x;
      break;
    }
  }
  if (!g) fail(ErrorCode::NotFound, "no element of order " + std::to_string(first_order));
  for (const auto& h : all) {
    if (ops.order(h) != 3) continue;
    auto c = closure_bounded(f, {*g, h}, static_cast<std::size_t>(target));
    if (!c || static_cast<long long>(c->order()) != target) continue;
    if (recognize(*c) == type) return std::move(*c);
  }
  fail(ErrorCode::NotFound, "no subgroup " + type.name() + " in SL2(" + std::to_string(q) + ")");
}

std::string to_string(Ambient a) {
  switch (a) {
    case Ambient::SL2: return "sl2";
    case Ambient::PSL2: return "psl2";
    case Ambient::PGL2: return "pgl2";
  }
  return "?";
}

Ambient parse_ambient(const std::string& s) {
  if (s == "sl2" || s == "SL2") return Ambient::SL2;
  if (s == "psl2" || s == "PSL2") return Ambient::PSL2;
  if (s == "pgl2" || s == "PGL2") return Ambient::PGL2;
  fail(ErrorCode::ParseError, "ambient must be sl2, psl2 or pgl2, not '" + s + "'");
}

namespace {

class TableBuilder {
 public:
  TableBuilder(long long q, GroupType ambient) : q_(q), ambient_(ambient) {}

  void add(GroupType t, const std::string& source, std::optional<bool> inside = std::nullopt) {
    if (t == ambient_) return;
    for (const auto& r : rows_) {
      if (r.type == t) return;
    }
    DicksonEntry e;
    e.type = t;
    e.order = t.order();
    e.divisible_by_q_plus_1 = e.order % (q_ + 1) == 0;
    e.source = source;
    e.inside_psl2 = inside;
    rows_.push_back(e);
  }

  std::vector<DicksonEntry> take() {
    std::stable_sort(rows_.begin(), rows_.end(), [](const DicksonEntry& a, const DicksonEntry& b) {
      return a.order < b.order;
    });
    return rows_;
  }

 private:
  long long q_;
  GroupType ambient_;
  std::vector<DicksonEntry> rows_;
};

// Subgroups E(p^k) x| C_d of a Borel subgroup; the torus acts on the
// unipotent radical through squares (SL2) or directly (quotients).
void add_borel(TableBuilder& tb, int p, int a, long long dmax, bool via_squares, bool even_p_sl2) {
  using Tag = GroupType::Tag;
  for (int k = 1; k <= a; ++k) {
    const long long pk = ipow(p, k);
    for (long long d : divisors(dmax)) {
      long long e = d;
      if (via_squares && d % 2 == 0) e = d / 2;
      const int o = mult_order(p, e);
      if (o < 0 || k % o != 0) continue;
      GroupType t;
      if (d == 1) {
        t = k == 1 ? GroupType::cyclic(p) : GroupType::of(Tag::ElementaryAbelian, pk);
      } else if (e == 1) {
        // trivial action: E(p^k) x C_d
        t = k == 1 ? GroupType::cyclic(p * d) : GroupType::of(Tag::BorelFrobenius, pk * d);
      } else if (via_squares && k == 1 && d == 4) {
        t = GroupType::dicyclic(4 * p);
      } else if (!via_squares && k == 1 && e == 2) {
        t = GroupType::dihedral(2 * p);
      } else if (even_p_sl2 && k == 2 && d == 3) {
        t = GroupType::of(Tag::A4);
      } else {
        t = GroupType::of(Tag::BorelFrobenius, pk * d);
      }
      tb.add(t, "borel");
    }
  }
}

}  // namespace

std::vector<DicksonEntry> dickson_table(const Field& f, Ambient ambient) {
  using Tag = GroupType::Tag;
  const long long q = f.q();
  const int p = f.p();
  const int a = f.a();
  if (p == 2 && ambient == Ambient::PGL2) ambient = Ambient::SL2;  // all three coincide

  std::vector<int> subfield_degrees;
  for (int b = 1; b < a; ++b) {
    if (a % b == 0) subfield_degrees.push_back(b);
  }

  if (ambient == Ambient::SL2) {
    TableBuilder tb(q, GroupType::of(Tag::SL2, q));
    if (p == 2) {
      for (long long n : divisors(q - 1)) tb.add(GroupType::cyclic(n), "cyclic");
      for (long long n : divisors(q + 1)) tb.add(GroupType::cyclic(n), "cyclic");
      tb.add(GroupType::cyclic(2), "unipotent");
      for (long long n : divisors(q - 1)) if (n > 1) tb.add(GroupType::dihedral(2 * n), "dihedral");
      for (long long n : divisors(q + 1)) if (n > 1) tb.add(GroupType::dihedral(2 * n), "dihedral");
      add_borel(tb, p, a, q - 1, false, true);
      if (a % 2 == 0 && q != 4) tb.add(GroupType::of(Tag::A5), "A5");
      for (int b : subfield_degrees) {
        const long long qq = ipow(p, b);
        if (qq == 2) tb.add(GroupType::dihedral(6), "subfield");
        else if (qq == 4) tb.add(GroupType::of(Tag::A5), "subfield");
        else tb.add(GroupType::of(Tag::SL2, qq), "subfield");
      }
      return tb.take();
    }
    for (long long n : divisors(q - 1)) tb.add(GroupType::cyclic(n), "cyclic");
    for (long long n : divisors(q + 1)) tb.add(GroupType::cyclic(n), "cyclic");
    tb.add(GroupType::cyclic(p), "unipotent");
    tb.add(GroupType::cyclic(2 * p), "unipotent");
    for (long long n : divisors(q - 1)) {
      if (n % 2 == 0 && n / 2 >= 2) tb.add(GroupType::dicyclic(2 * n), "dihedral-preimage");
    }
    for (long long n : divisors(q + 1)) {
      if (n % 2 == 0 && n / 2 >= 2) tb.add(GroupType::dicyclic(2 * n), "dihedral-preimage");
    }
    add_borel(tb, p, a, q - 1, true, false);
    if (q != 3) tb.add(GroupType::of(Tag::SL2_3), "A4-preimage");
    if (q % 8 == 1 || q % 8 == 7) tb.add(GroupType::of(Tag::BinaryOctahedral2S4), "S4-preimage");
    if ((p == 5 && q != 5) || q % 5 == 1 || q % 5 == 4) tb.add(GroupType::of(Tag::SL2_5), "A5-preimage");
    for (int b : subfield_degrees) {
      const long long qq = ipow(p, b);
      if (qq == 3) tb.add(GroupType::of(Tag::SL2_3), "subfield");
      else if (qq == 5) tb.add(GroupType::of(Tag::SL2_5), "subfield");
      else tb.add(GroupType::of(Tag::SL2, qq), "subfield");
      if (a % (2 * b) == 0) tb.add(GroupType::of(Tag::DoublePGL2, qq), "subfield-PGL-preimage");
    }
    return tb.take();
  }

  if (ambient == Ambient::PSL2) {
    const long long d = p == 2 ? 1 : 2;
    TableBuilder tb(q, GroupType::of(Tag::PSL2, q));
    for (long long n : divisors((q - 1) / d)) tb.add(GroupType::cyclic(n), "cyclic");
    for (long long n : divisors((q + 1) / d)) tb.add(GroupType::cyclic(n), "cyclic");
    for (long long n : divisors((q - 1) / d)) if (n >= 2) tb.add(GroupType::dihedral(2 * n), "dihedral");
    for (long long n : divisors((q + 1) / d)) if (n >= 2) tb.add(GroupType::dihedral(2 * n), "dihedral");
    add_borel(tb, p, a, (q - 1) / d, false, p == 2);
    if (p != 2 || a % 2 == 0) tb.add(GroupType::of(Tag::A4), "A4");
    if (p != 2 && (q % 8 == 1 || q % 8 == 7)) tb.add(GroupType::of(Tag::S4), "S4");
    if ((p == 5 && q != 5) || q % 10 == 1 || q % 10 == 9 || (p == 2 && a % 2 == 0 && q != 4)) {
      tb.add(GroupType::of(Tag::A5), "A5");
    }
    for (int b : subfield_degrees) {
      const long long qq = ipow(p, b);
      tb.add(GroupType::of(Tag::PSL2, qq), "subfield");
      if (a % (2 * b) == 0) tb.add(GroupType::of(Tag::PGL2, qq), "subfield-PGL");
    }
    return tb.take();
  }

  // PGL2, p odd
  TableBuilder tb(q, GroupType::of(Tag::PGL2, q));
  for (long long n : divisors(q - 1)) tb.add(GroupType::cyclic(n), "cyclic");
  for (long long n : divisors(q + 1)) tb.add(GroupType::cyclic(n), "cyclic");
  for (long long n : divisors(q - 1)) if (n >= 2) tb.add(GroupType::dihedral(2 * n), "dihedral");
  for (long long n : divisors(q + 1)) if (n >= 2) tb.add(GroupType::dihedral(2 * n), "dihedral");
  add_borel(tb, p, a, q - 1, false, false);
  tb.add(GroupType::of(Tag::A4), "A4", true);
  tb.add(GroupType::of(Tag::S4), "S4", q % 8 == 1 || q % 8 == 7);
  if (q % 10 == 1 || q % 10 == 9 || (p == 5 && q != 5)) tb.add(GroupType::of(Tag::A5), "A5", true);
  for (int b = 1; b <= a; ++b) {
    if (a % b != 0) continue;
    const long long qq = ipow(p, b);
    tb.add(GroupType::of(Tag::PSL2, qq), "subfield", true);
    if (b < a) tb.add(GroupType::of(Tag::PGL2, qq), "subfield");
  }
  return tb.take();
}

}  // namespace kmlat::groups
