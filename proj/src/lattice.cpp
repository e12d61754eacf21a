#include "kmlat/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace kmlat::lattice {

using groups::CMat;
using groups::FiniteGroup;
using groups::GroupType;
using groups::MatOps;
using laurent::LaurentPoly;
using serretree::Vertex;

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

bool MatGroup::contains(const Mat2& x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

MatGroup from_constant(const FiniteGroup& g) {
  const MatOps ops(*g.field);
  MatGroup out{g.field, {}};
  out.elements.reserve(g.order());
  for (const auto& x : g.elements) out.elements.push_back(ops.to_mat2(x));
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

MatGroup from_matrices(const Field& f, std::vector<Mat2> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  MatGroup g{&f, std::move(elements)};
  if (g.elements.empty()) fail(ErrorCode::NotASubgroup, "empty element list");
  for (const auto& x : g.elements) {
    for (const auto& y : g.elements) {
      if (!g.contains(x * y)) fail(ErrorCode::NotASubgroup, "element list not closed under products");
    }
  }
  return g;
}

MatGroup conjugate(const MatGroup& h, const Mat2& g) {
  const Mat2 gi = g.inverse();
  MatGroup out{h.field, {}};
  out.elements.reserve(h.order());
  for (const auto& x : h.elements) out.elements.push_back(g * x * gi);
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

MatGroup intersection(const MatGroup& a, const MatGroup& b) {
  MatGroup out{a.field, {}};
  std::set_intersection(a.elements.begin(), a.elements.end(), b.elements.begin(), b.elements.end(),
                        std::back_inserter(out.elements));
  return out;
}

int element_order(const Mat2& x, int cap) {
  Mat2 y = x;
  for (int k = 1; k <= cap; ++k) {
    if (y.is_identity()) return k;
    y = y * x;
  }
  fail(ErrorCode::Internal, "element order exceeds " + std::to_string(cap));
}

EdgeOfGroups inclusion_edge(const MatGroup& a0, const MatGroup& a1, const MatGroup& a2) {
  return {a0, a1, a2, a0.elements, a0.elements};
}

namespace {

// Injective homomorphism check for an element map given on a0.elements.
void check_embedding(const MatGroup& a0, const std::vector<Mat2>& images, const MatGroup& target,
                     const char* name) {
  if (images.size() != a0.order()) {
    fail(ErrorCode::NotAHomomorphism, std::string(name) + ": image list has the wrong size");
  }
  for (const auto& y : images) {
    if (!target.contains(y)) fail(ErrorCode::NotAHomomorphism, std::string(name) + " leaves its target");
  }
  std::vector<Mat2> sorted = images;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    fail(ErrorCode::NotAHomomorphism, std::string(name) + " is not injective");
  }
  for (std::size_t i = 0; i < a0.order(); ++i) {
    for (std::size_t j = 0; j < a0.order(); ++j) {
      const Mat2 prod = a0.elements[i] * a0.elements[j];
      const auto it = std::lower_bound(a0.elements.begin(), a0.elements.end(), prod);
      if (it == a0.elements.end() || *it != prod) {
        fail(ErrorCode::NotAHomomorphism, "A0 is not closed under products");
      }
      const std::size_t k = static_cast<std::size_t>(it - a0.elements.begin());
      if (images[i] * images[j] != images[k]) {
        fail(ErrorCode::NotAHomomorphism, std::string(name) + " does not respect products");
      }
    }
  }
}

}  // namespace

void validate(const EdgeOfGroups& eog) {
  check_embedding(eog.a0, eog.alpha1, eog.a1, "alpha1");
  check_embedding(eog.a0, eog.alpha2, eog.a2, "alpha2");
}

MatGroup faithfulness_kernel(const EdgeOfGroups& eog) {
  validate(eog);
  const std::size_t n = eog.a0.order();
  std::vector<char> in(n, 1);
  // Preimage lookups: image -> index in A0.
  std::map<Mat2, std::size_t> pre1, pre2;
  for (std::size_t i = 0; i < n; ++i) {
    pre1.emplace(eog.alpha1[i], i);
    pre2.emplace(eog.alpha2[i], i);
  }
  auto stable = [&](std::size_t i, const MatGroup& big, const std::vector<Mat2>& alpha,
                    const std::map<Mat2, std::size_t>& pre) {
    for (const auto& g : big.elements) {
      const Mat2 y = g * alpha[i] * g.inverse();
      const auto it = pre.find(y);
      if (it == pre.end() || !in[it->second]) return false;
    }
    return true;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in[i]) continue;
      if (!stable(i, eog.a1, eog.alpha1, pre1) || !stable(i, eog.a2, eog.alpha2, pre2)) {
        in[i] = 0;
        changed = true;
      }
    }
  }
  MatGroup out{eog.a0.field, {}};
  for (std::size_t i = 0; i < n; ++i) {
    if (in[i]) out.elements.push_back(eog.a0.elements[i]);
  }
  return out;
}

namespace {

std::vector<int> orbit_sizes(const MatGroup& g, const Vertex& x) {
  const auto nbrs = serretree::neighbors(x);
  const int n = static_cast<int>(nbrs.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (const auto& h : g.elements) {
    for (int j = 0; j < n; ++j) {
      const int k = serretree::neighbor_index(x, serretree::act(h, nbrs[j]));
      if (k < 0) fail(ErrorCode::WrongFixedVertex, "group element moves a neighbour off the star");
      parent[find(j)] = find(k);
    }
  }
  std::map<int, int> sizes;
  for (int j = 0; j < n; ++j) ++sizes[find(j)];
  std::vector<int> out;
  for (const auto& [root, s] : sizes) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

MatGroup stabilizer(const MatGroup& g, const Vertex& x) {
  MatGroup out{g.field, {}};
  for (const auto& h : g.elements) {
    if (serretree::same_vertex(serretree::act(h, x), x)) out.elements.push_back(h);
  }
  return out;
}

bool fixes(const MatGroup& g, const Vertex& x) { return stabilizer(g, x).order() == g.order(); }

}  // namespace

VerificationReport lubotzky_check(const MatGroup& a1, const MatGroup& a2, const Edge& base) {
  const Field& f = *a1.field;
  if (!fixes(a1, base.from)) fail(ErrorCode::WrongFixedVertex, "A1 does not fix x1");
  if (!fixes(a2, base.to)) fail(ErrorCode::WrongFixedVertex, "A2 does not fix x2");
  VerificationReport r;
  r.q = f.q();
  r.order1 = a1.order();
  r.order2 = a2.order();
  r.orbits1 = orbit_sizes(a1, base.from);
  r.orbits2 = orbit_sizes(a2, base.to);
  r.transitive1 = r.orbits1.size() == 1;
  r.transitive2 = r.orbits2.size() == 1;
  const MatGroup s1 = stabilizer(a1, base.to);
  const MatGroup s2 = stabilizer(a2, base.from);
  const MatGroup a0 = intersection(a1, a2);
  r.stab1_order = s1.order();
  r.stab2_order = s2.order();
  r.intersection_order = a0.order();
  r.stab_condition1 = s1.elements == a0.elements;
  r.stab_condition2 = s2.elements == a0.elements;
  r.pass = r.transitive1 && r.transitive2 && r.stab_condition1 && r.stab_condition2;
  if (!r.pass) return r;
  r.index1 = a1.order() / a0.order();
  r.index2 = a2.order() / a0.order();
  r.kernel_order = faithfulness_kernel(inclusion_edge(a0, a1, a2)).order();
  r.no_p_elements = true;
  for (const MatGroup* g : {&a1, &a2}) {
    for (const auto& x : g->elements) {
      if (element_order(x) % f.p() == 0) r.no_p_elements = false;
    }
  }
  r.covolume = covolume({static_cast<long long>(a1.order()), static_cast<long long>(a2.order())});
  return r;
}

namespace {

// Left coset representatives of alpha(A0) in big.
std::vector<Mat2> transversal(const MatGroup& big, const std::vector<Mat2>& sub) {
  std::set<Mat2> covered;
  std::vector<Mat2> reps;
  for (const auto& g : big.elements) {
    if (covered.count(g)) continue;
    reps.push_back(g);
    for (const auto& h : sub) covered.insert(g * h);
  }
  return reps;
}

bool coset_bijection(const MatGroup& big, const std::vector<Mat2>& sub, const Mat2& d,
                     const Vertex& centre, const Vertex& other) {
  const Field& f = *big.field;
  const auto reps = transversal(big, sub);
  if (static_cast<int>(reps.size()) != f.q() + 1) return false;
  const Mat2 di = d.inverse();
  std::vector<char> hit(f.q() + 1, 0);
  for (const auto& g : reps) {
    const int k = serretree::neighbor_index(centre, serretree::act(d * g * di, other));
    if (k < 0 || hit[k]) return false;
    hit[k] = 1;
  }
  return true;
}

}  // namespace

bool covering_check(const EdgeOfGroups& eog, const Mat2& d1, const Mat2& d2, const Edge& base) {
  validate(eog);
  const Mat2 d1i = d1.inverse(), d2i = d2.inverse();
  for (std::size_t i = 0; i < eog.a0.order(); ++i) {
    if (d1 * eog.alpha1[i] * d1i != d2 * eog.alpha2[i] * d2i) return false;
  }
  return coset_bijection(eog.a1, eog.alpha1, d1, base.from, base.to) &&
         coset_bijection(eog.a2, eog.alpha2, d2, base.to, base.from);
}

Rational covolume(const std::vector<long long>& vertex_group_orders) {
  Rational sum(0);
  for (long long n : vertex_group_orders) {
    if (n <= 0) fail(ErrorCode::InvalidInput, "vertex group order must be positive");
    sum += Rational(1, n);
  }
  return sum;
}

Rational covolume(const EdgeOfGroups& eog) {
  return covolume({static_cast<long long>(eog.a1.order()), static_cast<long long>(eog.a2.order())});
}

NormalFormReport normal_form_check(const MatGroup& a1, const MatGroup& a2, const Edge& base,
                                   int max_len) {
  const Field& f = *a1.field;
  const MatGroup a0 = intersection(a1, a2);
  // Nontrivial coset representatives of A_i / A0.
  auto nontrivial = [&](const MatGroup& g) {
    std::vector<Mat2> reps = transversal(g, a0.elements);
    reps.erase(std::remove_if(reps.begin(), reps.end(), [&](const Mat2& x) { return a0.contains(x); }),
               reps.end());
    return reps;
  };
  const std::vector<Mat2> t[2] = {nontrivial(a1), nontrivial(a2)};
  NormalFormReport rep;
  rep.distinct = true;
  std::vector<Edge> seen{base};
  // words[side] at current length: products ending (on the left) with a letter from side
  std::vector<Mat2> frontier[2];
  for (int len = 0; len <= max_len; ++len) {
    std::vector<Mat2> words;
    if (len == 0) {
      words.push_back(Mat2::identity(f));
    } else {
      std::vector<Mat2> next[2];
      for (int side = 0; side < 2; ++side) {
        if (len == 1) {
          next[side] = t[side];
        } else {
          for (const auto& w : frontier[1 - side]) {
            for (const auto& x : t[side]) next[side].push_back(x * w);
          }
        }
        words.insert(words.end(), next[side].begin(), next[side].end());
      }
      frontier[0] = std::move(next[0]);
      frontier[1] = std::move(next[1]);
    }
    std::size_t count = 0;
    for (const auto& w : words) {
      const Edge e = serretree::act(w, base);
      if (len > 0) {
        const bool dup = std::any_of(seen.begin(), seen.end(),
                                     [&](const Edge& s) { return serretree::same_edge(s, e); });
        if (dup || serretree::edge_distance(base, e) != len) rep.distinct = false;
        if (!dup) {
          seen.push_back(e);
          ++count;
        }
      } else {
        ++count;
      }
    }
    rep.images_by_length.push_back(count);
    long long expected = 1;
    if (len > 0) {
      expected = 2;
      for (int i = 0; i < len; ++i) expected *= f.q();
    }
    rep.expected_by_length.push_back(static_cast<std::size_t>(expected));
    if (static_cast<long long>(count) != expected) rep.distinct = false;
  }
  return rep;
}

// ---------------------------------------------------------------- classification

std::string to_string(Levi l) { return l == Levi::PSL ? "psl" : "pgl"; }

Levi parse_levi(const std::string& s) {
  if (s == "psl" || s == "PSL") return Levi::PSL;
  if (s == "pgl" || s == "PGL") return Levi::PGL;
  fail(ErrorCode::ParseError, "levi must be psl or pgl, not '" + s + "'");
}

const std::vector<ExceptionalCase>& exceptional_cases() {
  using Tag = GroupType::Tag;
  static const std::vector<ExceptionalCase> cases = {
      {5, GroupType::of(Tag::SL2_3)},  {7, GroupType::of(Tag::BinaryOctahedral2S4)},
      {11, GroupType::of(Tag::SL2_3)}, {11, GroupType::of(Tag::SL2_5)},
      {19, GroupType::of(Tag::SL2_5)}, {23, GroupType::of(Tag::BinaryOctahedral2S4)},
      {29, GroupType::of(Tag::SL2_5)}, {59, GroupType::of(Tag::SL2_5)},
  };
  return cases;
}

namespace {

[[noreturn]] void bad(const std::string& why) { fail(ErrorCode::InvalidInput, why); }

void require_unset(const std::optional<bool>& flag, const char* name, const std::string& ctx) {
  if (flag) bad(std::string(name) + " does not apply " + ctx);
}

void require_set(const std::optional<bool>& flag, const char* name, const std::string& ctx) {
  if (!flag) bad(std::string(name) + " is required " + ctx);
}

LatticeDescriptor row(long long q, std::string tag, long long a0, std::string vertex,
                      std::optional<int> delta0, bool exceptional) {
  LatticeDescriptor d;
  d.q = q;
  d.case_tag = std::move(tag);
  d.a0_order = a0;
  d.vertex_type = std::move(vertex);
  d.vertex_order = (q + 1) * a0;
  d.covolume = Rational(2, (q + 1) * a0);
  d.delta0 = delta0;
  d.exceptional = exceptional;
  if (d.covolume != Rational(1, d.vertex_order) * 2) fail(ErrorCode::Internal, "covolume identity");
  return d;
}

}  // namespace

void validate(const ClassificationInput& in) {
  if (!gf::is_prime(in.p)) bad("p = " + std::to_string(in.p) + " is not prime");
  long long pk = in.p;
  while (pk < in.q) pk *= in.p;
  if (in.q < 2 || pk != in.q) bad("q = " + std::to_string(in.q) + " is not a power of p");
  if (in.m < 2) bad("m must be >= 2");
  if (in.z_order < 1) bad("|Z(G)| must be positive");
  if (in.p == 2) {
    const std::string ctx = "when p = 2";
    require_unset(in.zmi_in_zg, "ZMi_in_ZG", ctx);
    require_unset(in.qi_in_zg, "Qi_in_ZG", ctx);
    require_unset(in.qi0_in_zg, "Qi0_in_ZG", ctx);
    require_unset(in.qi0_nontrivial, "Qi0_nontrivial", ctx);
    return;
  }
  if (in.levi == Levi::PSL) {
    const std::string ctx = "for a PSL Levi quotient";
    require_unset(in.zmi_in_zg, "ZMi_in_ZG", ctx);
    require_unset(in.qi_in_zg, "Qi_in_ZG", ctx);
    require_unset(in.qi0_in_zg, "Qi0_in_ZG", ctx);
    require_unset(in.qi0_nontrivial, "Qi0_nontrivial", ctx);
    return;
  }
  if (in.q % 4 == 1) {
    const std::string ctx = "for a PGL Levi quotient with q = 1 mod 4";
    require_unset(in.zmi_in_zg, "ZMi_in_ZG", ctx);
    require_set(in.qi_in_zg, "Qi_in_ZG", ctx);
    require_set(in.qi0_in_zg, "Qi0_in_ZG", ctx);
    require_set(in.qi0_nontrivial, "Qi0_nontrivial", ctx);
    if (*in.qi_in_zg && !*in.qi0_in_zg) bad("Qi <= Z(G) forces Qi0 <= Z(G)");
    if (!*in.qi0_nontrivial && !*in.qi0_in_zg) bad("a trivial Qi0 lies in Z(G)");
  } else {
    const std::string ctx = "for a PGL Levi quotient with q = 3 mod 4";
    require_set(in.zmi_in_zg, "ZMi_in_ZG", ctx);
    require_unset(in.qi_in_zg, "Qi_in_ZG", ctx);
    require_unset(in.qi0_in_zg, "Qi0_in_ZG", ctx);
    require_unset(in.qi0_nontrivial, "Qi0_nontrivial", ctx);
  }
}

std::vector<LatticeDescriptor> classify(const ClassificationInput& in) {
  validate(in);
  const long long q = in.q, z = in.z_order;
  const std::string cq = "C" + std::to_string(q + 1);
  std::vector<LatticeDescriptor> rows;
  if (in.p == 2) {
    rows.push_back(row(q, "Thm1.1", z, "A0.H, H=" + cq + ", A0<=Z(G)", 1, false));
    return rows;
  }
  if (in.levi == Levi::PSL) {
    if (q % 4 == 3) {
      rows.push_back(row(q, "Thm1.2b", z, "A0.N_M(H), H nonsplit torus, A0<=Z(G)", 1, false));
    }
    std::vector<const ExceptionalCase*> here;
    for (const auto& c : exceptional_cases()) {
      if (c.q == q) here.push_back(&c);
    }
    for (const auto* c : here) {
      const long long n = c->type.order();
      const long long a0 = (n / (q + 1)) * (z / std::gcd(z, 2LL));
      std::string tag = "Exc.q" + std::to_string(q);
      if (here.size() > 1) tag += "." + c->type.name();
      LatticeDescriptor d = row(q, tag, a0, "A0.N, N=" + c->type.name(), std::nullopt, true);
      d.n_order = n;
      d.n_index = q + 1;
      rows.push_back(d);
    }
    return rows;
  }
  if (q % 4 == 1) {
    if (*in.qi0_nontrivial && !*in.qi0_in_zg) return rows;
    const int d_a = *in.qi_in_zg ? 2 : 4;
    rows.push_back(row(q, "Thm1.3a.ii.A", d_a * z, "H.O2(C).<t>.Z0, A0=Q.<t>.Z0", d_a, false));
    if (*in.qi_in_zg) rows.push_back(row(q, "Thm1.3a.ii.B", z, "H.O2(C).Z0, A0=Q.Z0", 1, false));
  } else {
    const int d_i = *in.zmi_in_zg ? 2 : 4;
    rows.push_back(row(q, "Thm1.3b.i", d_i * z, "C'.T0.Z0, A0=T0.Z0", d_i, false));
    if (*in.zmi_in_zg) rows.push_back(row(q, "Thm1.3b.iii", z, "C'.A0, A0<=Z(G)", 1, false));
  }
  return rows;
}

MinCovolume min_covolume(const ClassificationInput& in) {
  const auto rows = classify(in);
  std::optional<MinCovolume> best;
  for (const auto& r : rows) {
    if (r.exceptional) continue;
    if (!best || r.covolume < best->covolume) best = MinCovolume{r.covolume, r.delta0.value_or(1), r.case_tag};
  }
  if (!best) fail(ErrorCode::MinUndefined, "no generic edge-transitive lattice for these parameters");
  return *best;
}

MinCovolume min_covolume_formula(const ClassificationInput& in) {
  validate(in);
  int delta0 = 1;
  std::string tag;
  if (in.p == 2) {
    tag = "Thm1.1";
  } else if (in.levi == Levi::PSL) {
    if (in.q % 4 == 1) fail(ErrorCode::MinUndefined, "PSL Levi quotient with q = 1 mod 4");
    tag = "Thm1.2b";
  } else if (in.q % 4 == 1) {
    if (*in.qi0_nontrivial && !*in.qi0_in_zg) fail(ErrorCode::MinUndefined, "Qi0 not central");
    delta0 = *in.qi_in_zg ? 2 : 4;
    tag = "Thm1.3a.ii.A";
  } else {
    delta0 = *in.zmi_in_zg ? 2 : 4;
    tag = "Thm1.3b.i";
  }
  return {Rational(2, (in.q + 1) * in.z_order * delta0), delta0, tag};
}

// ---------------------------------------------------------------- constructors

std::string to_string(LatticeKind k) {
  switch (k) {
    case LatticeKind::CyclicP2: return "cyclic_p2";
    case LatticeKind::TorusNormalizer: return "torus_normalizer";
    case LatticeKind::Exceptional: return "exceptional";
  }
  return "?";
}

LatticeKind parse_lattice_kind(const std::string& s) {
  if (s == "cyclic_p2") return LatticeKind::CyclicP2;
  if (s == "torus_normalizer" || s == "torus_normalizer_q3mod4") return LatticeKind::TorusNormalizer;
  if (s == "exceptional") return LatticeKind::Exceptional;
  fail(ErrorCode::ParseError, "kind must be cyclic_p2, torus_normalizer or exceptional, not '" + s + "'");
}

namespace {

// Lines of F_q^2 as normalized vectors: (j, 1) for j < q, then (1, 0).
std::pair<gf::Elem, gf::Elem> line(const Field& f, int j) {
  if (j == f.q()) return {1, 0};
  return {static_cast<gf::Elem>(j), 1};
}

int line_index(const Field& f, gf::Elem x, gf::Elem y) {
  if (y == 0) return f.q();
  return f.div(x, y);
}

// Conjugates h inside GL2(F_q) so that two lines with equal stabilizers
// become span(e1) and span(e2); the stabilizers of x2 and of delta^-1 x1
// in the result then coincide.
FiniteGroup align(const FiniteGroup& h) {
  const Field& f = *h.field;
  const MatOps ops(f);
  const int n = f.q() + 1;
  std::vector<std::vector<CMat>> stab(n);
  for (const auto& g : h.elements) {
    for (int j = 0; j < n; ++j) {
      const auto [x, y] = line(f, j);
      const gf::Elem gx = f.add(f.mul(g.a, x), f.mul(g.b, y));
      const gf::Elem gy = f.add(f.mul(g.c, x), f.mul(g.d, y));
      if (line_index(f, gx, gy) == j) stab[j].push_back(g);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (stab[i] != stab[j]) continue;
      const auto [v1, v2] = line(f, i);
      const auto [w1, w2] = line(f, j);
      // c = [v w]^-1 sends v to e1 and w to e2.
      const gf::Elem det = f.sub(f.mul(v1, w2), f.mul(w1, v2));
      const gf::Elem di = f.inv(det);
      const CMat c{f.mul(w2, di), f.neg(f.mul(w1, di)), f.neg(f.mul(v2, di)), f.mul(v1, di)};
      const CMat ci{v1, w1, v2, w2};
      std::vector<CMat> els;
      els.reserve(h.order());
      for (const auto& g : h.elements) els.push_back(ops.mul(ops.mul(c, g), ci));
      return groups::from_elements(f, std::move(els));
    }
  }
  return h;
}

}  // namespace

StandardLattice build_standard_lattice(const Field& f, LatticeKind kind,
                                       std::optional<GroupType> type) {
  using Tag = GroupType::Tag;
  FiniteGroup h;
  GroupType vt;
  switch (kind) {
    case LatticeKind::CyclicP2:
      if (f.p() != 2) fail(ErrorCode::KindInadmissible, "cyclic_p2 needs p = 2");
      h = groups::nonsplit_torus(f);
      vt = GroupType::cyclic(f.q() + 1);
      break;
    case LatticeKind::TorusNormalizer:
      if (f.p() == 2) fail(ErrorCode::KindInadmissible, "torus_normalizer needs p odd");
      h = groups::torus_normalizer(f);
      vt = GroupType::of(Tag::TorusNormalizer, f.q());
      break;
    case LatticeKind::Exceptional: {
      if (!type) fail(ErrorCode::KindInadmissible, "exceptional kind needs a group type");
      const bool listed = std::any_of(exceptional_cases().begin(), exceptional_cases().end(),
                                      [&](const ExceptionalCase& c) { return c.q == f.q() && c.type == *type; });
      if (!listed) {
        fail(ErrorCode::KindInadmissible,
             type->name() + " is not an exceptional vertex group for q = " + std::to_string(f.q()));
      }
      h = align(groups::find_subgroup_of_type(f, *type));
      vt = *type;
      break;
    }
  }
  StandardLattice l;
  l.kind = kind;
  l.type = vt;
  l.a1 = from_constant(h);
  l.delta = serretree::delta(f);
  l.a2 = conjugate(l.a1, l.delta);
  l.base = serretree::base_edge(f);
  return l;
}

EdgeOfGroups edge_of(const StandardLattice& l) {
  return inclusion_edge(intersection(l.a1, l.a2), l.a1, l.a2);
}

EdgeOfGroups abstract_edge(const StandardLattice& l) {
  EdgeOfGroups e;
  e.a0 = intersection(l.a1, l.a2);
  e.a1 = l.a1;
  e.a2 = conjugate(l.a2, l.delta.inverse());
  e.alpha1 = e.a0.elements;
  const Mat2 di = l.delta.inverse();
  for (const auto& x : e.a0.elements) e.alpha2.push_back(di * x * l.delta);
  return e;
}

ClassificationInput sl2_input(const Field& f) {
  ClassificationInput in;
  in.p = f.p();
  in.q = f.q();
  in.m = 2;
  in.levi = Levi::PSL;
  in.z_order = f.p() == 2 ? 1 : 2;
  return in;
}

std::optional<LatticeDescriptor> sl2_row_for(const StandardLattice& l) {
  const Field& f = *l.a1.field;
  for (const auto& r : classify(sl2_input(f))) {
    switch (l.kind) {
      case LatticeKind::CyclicP2:
        if (r.case_tag == "Thm1.1") return r;
        break;
      case LatticeKind::TorusNormalizer:
        if (r.case_tag == "Thm1.2b") return r;
        break;
      case LatticeKind::Exceptional:
        if (r.exceptional && r.n_order == l.type.order() &&
            r.vertex_type.find(l.type.name()) != std::string::npos) {
          return r;
        }
        break;
    }
  }
  return std::nullopt;
}

}  // namespace kmlat::lattice
