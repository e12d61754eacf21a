#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "kmlat/serretree.hpp"

using namespace kmlat;
using laurent::LaurentPoly;
using serretree::Mat2;
using serretree::Parahoric;
using serretree::ParahoricKind;
using serretree::Vertex;

namespace {

LaurentPoly P(const gf::Field& f, std::vector<LaurentPoly::Term> t) { return LaurentPoly::from_terms(f, std::move(t)); }
LaurentPoly C(const gf::Field& f, gf::Elem c) { return LaurentPoly::constant(f, c); }

Mat2 upper(const LaurentPoly& u) {
  const auto& f = u.field();
  return Mat2{C(f, 1), u, LaurentPoly(f), C(f, 1)};
}
Mat2 lower(const LaurentPoly& u) {
  const auto& f = u.field();
  return Mat2{C(f, 1), LaurentPoly(f), u, C(f, 1)};
}

LaurentPoly random_poly(const gf::Field& f, std::mt19937& rng, int lo, int hi) {
  std::uniform_int_distribution<int> c(0, f.q() - 1);
  std::vector<LaurentPoly::Term> t;
  for (int d = lo; d <= hi; ++d) t.push_back({d, static_cast<gf::Elem>(c(rng))});
  return P(f, t);
}

gf::Elem random_unit(const gf::Field& f, std::mt19937& rng) {
  return static_cast<gf::Elem>(std::uniform_int_distribution<int>(1, f.q() - 1)(rng));
}

// Element of P1: product of integral root elements and a constant torus element.
Mat2 random_p1(const gf::Field& f, std::mt19937& rng, int rounds = 1) {
  const gf::Elem s = random_unit(f, rng);
  Mat2 g = Mat2::diag(C(f, s), C(f, f.inv(s)));
  for (int i = 0; i < rounds; ++i) g = g * upper(random_poly(f, rng, 0, 2)) * lower(random_poly(f, rng, 0, 2));
  return g;
}

// Element of U(n): products of level-n root elements conjugated by P1.
Mat2 random_un(const gf::Field& f, std::mt19937& rng, int n) {
  Mat2 u = upper(random_poly(f, rng, n, n + 1)) * lower(random_poly(f, rng, n, n + 1));
  const Mat2 g = random_p1(f, rng);
  return u.conjugate_by(g);
}

Mat2 power(Mat2 m, int e) {
  Mat2 r = Mat2::identity(m.field());
  for (int i = 0; i < e; ++i) r = r * m;
  return r;
}

// Word in the standard root generators with t-degrees in [-2, 2].
Mat2 random_word(const gf::Field& f, std::mt19937& rng, int len) {
  Mat2 g = Mat2::identity(f);
  std::uniform_int_distribution<int> deg(-2, 2), side(0, 1);
  for (int i = 0; i < len; ++i) {
    const auto x = LaurentPoly::monomial(f, random_unit(f, rng), deg(rng));
    g = g * (side(rng) ? upper(x) : lower(x));
  }
  return g;
}

}  // namespace

TEST_CASE("matrix operation examples") {
  const auto& f = gf::field_of_order(5);
  CHECK(Mat2::identity(f).inverse() == Mat2::identity(f));
  const auto u = P(f, {{-1, 2}, {3, 1}});
  CHECK(upper(u).inverse() == upper(-u));
  CHECK(Mat2::diag(LaurentPoly::t(f), LaurentPoly::pi(f)).det().is_one());
  // det = t inverts by monomial division
  const auto d = serretree::delta(f);
  CHECK((d * d.inverse()).is_identity());
  const Mat2 bad{C(f, 1), C(f, 1), LaurentPoly(f), C(f, 1) + LaurentPoly::pi(f)};
  try {
    (void)bad.inverse();
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonInvertible);
  }
}

TEST_CASE("membership examples") {
  const auto& f = gf::field_of_order(2);
  const Mat2 m1 = upper(LaurentPoly::t(f));
  CHECK(serretree::membership(m1, {Parahoric::P2}));
  CHECK_FALSE(serretree::membership(m1, {Parahoric::P1}));
  const Mat2 m2 = lower(C(f, 1));
  CHECK(serretree::membership(m2, {Parahoric::P1}));
  CHECK_FALSE(serretree::membership(m2, {Parahoric::B}));
  const auto& f3 = gf::field_of_order(3);
  const Mat2 m3 = upper(LaurentPoly::monomial(f3, 1, 2));
  CHECK(serretree::membership(m3, {Parahoric::U, 2}));
  CHECK_FALSE(serretree::membership(m3, {Parahoric::U, 3}));
}

TEST_CASE("elementary divisors") {
  const auto& f = gf::field_of_order(3);
  const auto pi = LaurentPoly::pi(f);
  CHECK(serretree::elementary_divisor_valuations(Mat2::diag(C(f, 1), pi)) == std::pair{0, 1});
  CHECK(serretree::elementary_divisor_valuations(Mat2{pi, C(f, 1), LaurentPoly(f), pi}) == std::pair{0, 2});
  CHECK(serretree::elementary_divisor_valuations(Mat2::identity(f)) == std::pair{0, 0});
  try {
    (void)serretree::elementary_divisor_valuations(Mat2{C(f, 1), C(f, 1), C(f, 1), C(f, 1)});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroDeterminant);
  }
}

TEST_CASE("distance examples") {
  const auto& f = gf::field_of_order(2);
  const auto x1 = serretree::base_vertex1(f), x2 = serretree::base_vertex2(f);
  CHECK(serretree::vertex_distance(x1, x2) == 1);
  const Vertex far{Mat2::diag(LaurentPoly::t(f), LaurentPoly::pi(f))};
  CHECK(serretree::vertex_distance(x1, far) == 2);
  CHECK(serretree::vertex_distance(x1, serretree::act(serretree::delta(f), x1)) == 1);
  std::mt19937 rng(1);
  for (int i = 0; i < 50; ++i) {
    const Vertex u{random_word(f, rng, 3)}, v{random_word(f, rng, 3)};
    const Mat2 g = random_word(f, rng, 4);
    CHECK(serretree::vertex_distance(serretree::act(g, u), serretree::act(g, v)) == serretree::vertex_distance(u, v));
  }
}

TEST_CASE("neighbors") {
  for (int q : {2, 3, 4, 5}) {
    const auto& f = gf::field_of_order(q);
    const auto x1 = serretree::base_vertex1(f);
    const auto nb = serretree::neighbors(x1);
    CHECK(static_cast<int>(nb.size()) == q + 1);
    CHECK(serretree::neighbor_index(x1, serretree::base_vertex2(f)) == q);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      CHECK(serretree::vertex_distance(x1, nb[i]) == 1);
      for (std::size_t j = i + 1; j < nb.size(); ++j) CHECK(serretree::vertex_distance(nb[i], nb[j]) == 2);
    }
    CHECK(serretree::neighbor_index(x1, x1) == -1);
  }
}

namespace {
std::vector<int> link_permutation(const Mat2& g, const Vertex& v) {
  std::vector<int> perm;
  for (const auto& w : serretree::neighbors(v)) perm.push_back(serretree::neighbor_index(v, serretree::act(g, w)));
  return perm;
}
}  // namespace

TEST_CASE("unipotent actions on links for q = 2") {
  const auto& f = gf::field_of_order(2);
  const auto x1 = serretree::base_vertex1(f), x2 = serretree::base_vertex2(f);
  // [[1,1],[0,1]] lies in B: it fixes x2 and its whole link, but moves the link of x1
  const Mat2 g = upper(C(f, 1));
  CHECK(serretree::same_vertex(serretree::act(g, x2), x2));
  CHECK(link_permutation(g, x2) == std::vector<int>{0, 1, 2});
  CHECK(link_permutation(g, x1) == std::vector<int>{1, 0, 2});
  // [[1,t],[0,1]] is the element of P2 that moves the link of x2
  const Mat2 h = upper(LaurentPoly::t(f));
  CHECK(serretree::same_vertex(serretree::act(h, x2), x2));
  auto perm = link_permutation(h, x2);
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2});
  CHECK(perm != std::vector<int>{0, 1, 2});
}

TEST_CASE("tree axioms on sampled vertices") {
  std::mt19937 rng(2);
  for (int q : {2, 3}) {
    const auto& f = gf::field_of_order(q);
    std::vector<Vertex> vs;
    for (int i = 0; i < 12; ++i) vs.push_back(Vertex{random_word(f, rng, 4)});
    for (const auto& u : vs) {
      for (const auto& v : vs) {
        const int d = serretree::vertex_distance(u, v);
        CHECK(d == serretree::vertex_distance(v, u));
        CHECK((d == 0) == serretree::same_vertex(u, v));
        for (const auto& w : vs) CHECK(d <= serretree::vertex_distance(u, w) + serretree::vertex_distance(w, v));
        // greedy descent: exactly one neighbor is closer while d > 0
        Vertex cur = u;
        int steps = 0;
        while (serretree::vertex_distance(cur, v) > 0 && steps < 64) {
          const int here = serretree::vertex_distance(cur, v);
          int closer = 0;
          Vertex next = cur;
          for (const auto& n : serretree::neighbors(cur)) {
            if (serretree::vertex_distance(n, v) == here - 1) {
              ++closer;
              next = n;
            }
          }
          CHECK(closer == 1);
          cur = next;
          ++steps;
        }
        CHECK(steps == d);
      }
    }
  }
}

TEST_CASE("stabilizers match parahoric membership on random words") {
  std::mt19937 rng(4);
  int fix1 = 0, fix_edge = 0;
  for (int q : {2, 3, 4}) {
    const auto& f = gf::field_of_order(q);
    const auto x1 = serretree::base_vertex1(f), x2 = serretree::base_vertex2(f);
    const auto e = serretree::base_edge(f);
    for (int i = 0; i < 200; ++i) {
      // short words fix the base often enough to exercise both branches
      const Mat2 g = random_word(f, rng, 1 + i % 4);
      const bool f1 = serretree::same_vertex(serretree::act(g, x1), x1);
      const bool f2 = serretree::same_vertex(serretree::act(g, x2), x2);
      const bool fe = serretree::same_edge(serretree::act(g, e), e);
      CHECK(f1 == serretree::membership(g, {Parahoric::P1}));
      CHECK(f2 == serretree::membership(g, {Parahoric::P2}));
      CHECK(fe == serretree::membership(g, {Parahoric::B}));
      CHECK(fe == (f1 && f2));
      fix1 += f1;
      fix_edge += fe;
    }
  }
  CHECK(fix1 > 0);
  CHECK(fix_edge > 0);
}

TEST_CASE("Iwahori elements fix the base edge") {
  std::mt19937 rng(6);
  const auto& f = gf::field_of_order(3);
  const auto e = serretree::base_edge(f);
  for (int i = 0; i < 50; ++i) {
    const gf::Elem s = random_unit(f, rng);
    const Mat2 g = Mat2::diag(C(f, s), C(f, f.inv(s))) * upper(random_poly(f, rng, 0, 3)) *
                   lower(random_poly(f, rng, 1, 4));
    CHECK(serretree::membership(g, {Parahoric::B}));
    CHECK(serretree::same_edge(serretree::act(g, e), e));
  }
}

TEST_CASE("congruence filtration: normal, abelian quotients of exponent p") {
  std::mt19937 rng(8);
  int checks = 0;
  for (int q : {2, 3, 4, 5}) {
    const auto& f = gf::field_of_order(q);
    for (int n = 1; n <= 3; ++n) {
      for (int i = 0; i < 50; ++i) {
        const Mat2 u = random_un(f, rng, n), v = random_un(f, rng, n);
        REQUIRE(serretree::membership(u, {Parahoric::U, n}));
        const Mat2 g = random_p1(f, rng);
        CHECK(serretree::membership(u.conjugate_by(g), {Parahoric::U, n}));
        const Mat2 comm = u * v * u.inverse() * v.inverse();
        CHECK(serretree::membership(comm, {Parahoric::U, n + 1}));
        CHECK(serretree::membership(power(u, f.p()), {Parahoric::U, n + 1}));
        ++checks;
      }
    }
  }
  CHECK(checks == 600);
}

TEST_CASE("centralizer of a unipotent in characteristic 2 is unipotent") {
  const auto& f = gf::field_of_order(2);
  const Mat2 u = upper(C(f, 1));
  std::vector<LaurentPoly> polys;
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<LaurentPoly::Term> t;
    for (int d = -1; d <= 1; ++d) {
      if (mask & (1 << (d + 1))) t.push_back({d, 1});
    }
    polys.push_back(P(f, t));
  }
  int found = 0;
  for (const auto& a : polys) {
    for (const auto& b : polys) {
      for (const auto& c : polys) {
        for (const auto& d : polys) {
          const Mat2 g{a, b, c, d};
          if (!g.det().is_one()) continue;
          if (!(g * u == u * g)) continue;
          ++found;
          CHECK(g.c.is_zero());
          CHECK(g.a.is_one());
          CHECK(g.d.is_one());
        }
      }
    }
  }
  CHECK(found == 8);
}

TEST_CASE("involution families") {
  const auto& f = gf::field_of_order(2);
  const auto b = serretree::involution_families(f, serretree::InvolutionRegion::B, 2);
  const auto p1 = serretree::involution_families(f, serretree::InvolutionRegion::P1minusB, 2);
  const auto p2 = serretree::involution_families(f, serretree::InvolutionRegion::P2minusB, 2);
  CHECK(std::find(b.begin(), b.end(), upper(C(f, 1))) != b.end());
  CHECK(std::find(p1.begin(), p1.end(), lower(C(f, 1))) != p1.end());
  CHECK(std::find(p2.begin(), p2.end(), upper(LaurentPoly::t(f))) != p2.end());
  for (const auto* fam : {&b, &p1, &p2}) {
    for (const auto& m : *fam) {
      CHECK((m * m).is_identity());
      CHECK_FALSE(m.is_identity());
    }
  }
  for (const auto& m : b) CHECK(serretree::membership(m, {Parahoric::B}));
  for (const auto& m : p1) {
    CHECK(serretree::membership(m, {Parahoric::P1}));
    CHECK_FALSE(serretree::membership(m, {Parahoric::B}));
  }
  for (const auto& m : p2) {
    CHECK(serretree::membership(m, {Parahoric::P2}));
    CHECK_FALSE(serretree::membership(m, {Parahoric::B}));
  }
  try {
    (void)serretree::involution_families(gf::field_of_order(3), serretree::InvolutionRegion::B, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OddCharacteristic);
  }
}

TEST_CASE("involution enumeration matches brute force at q = 2, window 1") {
  // Oracle: every [[a, b], [c, a]] with entries of pi-degree in [-1, 1] and a^2 + bc = 1.
  const auto& f = gf::field_of_order(2);
  std::vector<LaurentPoly> polys;
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<LaurentPoly::Term> t;
    for (int d = -1; d <= 1; ++d) {
      if (mask & (1 << (d + 1))) t.push_back({d, 1});
    }
    polys.push_back(P(f, t));
  }
  std::set<Mat2> want_b, want_p1, want_p2;
  for (const auto& a : polys) {
    for (const auto& b : polys) {
      for (const auto& c : polys) {
        const Mat2 m{a, b, c, a};
        if (!m.det().is_one() || m.is_identity()) continue;
        const bool in_b = serretree::membership(m, {Parahoric::B});
        if (in_b) want_b.insert(m);
        if (!in_b && serretree::membership(m, {Parahoric::P1})) want_p1.insert(m);
        if (!in_b && serretree::membership(m, {Parahoric::P2})) want_p2.insert(m);
      }
    }
  }
  auto as_set = [&](serretree::InvolutionRegion r) {
    const auto v = serretree::involution_families(f, r, 1);
    return std::set<Mat2>(v.begin(), v.end());
  };
  CHECK(as_set(serretree::InvolutionRegion::B) == want_b);
  CHECK(as_set(serretree::InvolutionRegion::P1minusB) == want_p1);
  CHECK(as_set(serretree::InvolutionRegion::P2minusB) == want_p2);
}

TEST_CASE("dihedral obstruction search") {
  const auto& f = gf::field_of_order(2);
  const auto r = serretree::dihedral_obstruction_search(f, 2);
  CHECK(r.violations.empty());
  CHECK(r.b_count == 15);
  CHECK(r.p1_count == 12);
  CHECK(r.p2_count == 12);
  CHECK(r.triples_checked == r.b_count * r.p1_count * r.p2_count);
  try {
    (void)serretree::dihedral_obstruction_search(f, 4);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WindowTooLarge);
  }
}

TEST_CASE("conjugation identity for involutions") {
  const auto& f = gf::field_of_order(4);
  std::mt19937 rng(9);
  int used = 0;
  for (int i = 0; i < 400 && used < 60; ++i) {
    // g = [[e, f], [h, e]] with e^2 + f h = 1: choose f, h then need e^2 = 1 + fh
    const auto fe = random_poly(f, rng, -1, 1), he = random_poly(f, rng, -1, 1);
    const auto rhs = C(f, 1) + fe * he;
    // square roots exist for monomial-free tests only when rhs is a square;
    // in characteristic 2 squaring is additive, so test only rhs = 1.
    if (!rhs.is_one()) continue;
    const Mat2 g{C(f, 1), fe, he, C(f, 1)};
    const Mat2 m = upper(random_poly(f, rng, -1, 2));
    CHECK(serretree::involution_conjugation_identity(m, g));
    ++used;
  }
  // explicit involutions from the enumerator, any pair
  const auto& f2 = gf::field_of_order(2);
  const auto b = serretree::involution_families(f2, serretree::InvolutionRegion::B, 1);
  const auto p2 = serretree::involution_families(f2, serretree::InvolutionRegion::P2minusB, 1);
  for (const auto& m : b) {
    for (const auto& g : p2) CHECK(serretree::involution_conjugation_identity(m, g));
  }
}

TEST_CASE("matrix text form") {
  const auto& f = gf::field_of_order(3);
  const Mat2 m{C(f, 1), LaurentPoly::t(f), LaurentPoly(f), C(f, 1)};
  CHECK(serretree::parse_matrix(f, serretree::to_string(m)) == m);
  CHECK(serretree::parse_matrix(f, "1,0;0,1").is_identity());
  CHECK_THROWS(serretree::parse_matrix(f, "1,0;0"));
}
