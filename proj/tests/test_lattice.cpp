#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "kmlat/lattice.hpp"

using namespace kmlat;
using groups::GroupType;
using lattice::ClassificationInput;
using lattice::LatticeKind;
using lattice::Levi;
using lattice::Rational;
using serretree::Mat2;
using Tag = groups::GroupType::Tag;

namespace {

ClassificationInput input(int p, long long q, Levi levi, long long z) {
  ClassificationInput in;
  in.p = p;
  in.q = q;
  in.levi = levi;
  in.z_order = z;
  return in;
}

template <class F>
ErrorCode code_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Ok;
}

bool coprime_orders(const lattice::MatGroup& g, int p) {
  for (const auto& x : g.elements) {
    if (lattice::element_order(x) % p == 0) return false;
  }
  return true;
}

bool is_cyclic(const lattice::MatGroup& g) {
  for (const auto& x : g.elements) {
    if (static_cast<std::size_t>(lattice::element_order(x)) == g.order()) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("rational formatting") {
  CHECK(lattice::to_string(Rational(2, 6)) == "1/3");
  CHECK(lattice::to_string(Rational(4, 2)) == "2");
}

TEST_CASE("covolume examples") {
  CHECK(lattice::covolume(std::vector<long long>{3, 3}) == Rational(2, 3));
  CHECK(lattice::covolume(std::vector<long long>{120, 120}) == Rational(1, 60));
  CHECK(lattice::covolume(std::vector<long long>{7}) == Rational(1, 7));
}

TEST_CASE("characteristic 2 cyclic lattices") {
  for (int q : {2, 4, 8}) {
    const auto& f = gf::field_of_order(q);
    const auto l = lattice::build_standard_lattice(f, LatticeKind::CyclicP2);
    CHECK(l.a1.order() == static_cast<std::size_t>(q + 1));
    const auto r = lattice::lubotzky_check(l.a1, l.a2, l.base);
    CHECK(r.pass);
    CHECK(r.transitive1);
    CHECK(r.transitive2);
    CHECK(r.intersection_order == 1);
    REQUIRE(r.covolume.has_value());
    CHECK(*r.covolume == Rational(2, q + 1));
    CHECK(r.index1 == static_cast<std::size_t>(q + 1));
    CHECK(r.kernel_order == 1);
    CHECK(r.no_p_elements);
    const auto row = lattice::sl2_row_for(l);
    REQUIRE(row.has_value());
    CHECK(row->covolume == *r.covolume);
  }
}

TEST_CASE("covering check") {
  const auto& f = gf::field_of_order(2);
  const auto l = lattice::build_standard_lattice(f, LatticeKind::CyclicP2);
  const auto eog = lattice::abstract_edge(l);
  lattice::validate(eog);
  const Mat2 id = Mat2::identity(f);
  CHECK(lattice::covering_check(eog, id, l.delta, l.base));
  CHECK_FALSE(lattice::covering_check(eog, id, id, l.base));
  CHECK(lattice::covolume(eog) == Rational(2, 3));
  // A0 = A1: transversal of size 1 != q+1
  const auto bad = lattice::inclusion_edge(l.a1, l.a1, l.a1);
  CHECK_FALSE(lattice::covering_check(bad, id, id, l.base));
}

TEST_CASE("faithfulness kernels") {
  const auto& f2 = gf::field_of_order(2);
  const auto l2 = lattice::build_standard_lattice(f2, LatticeKind::CyclicP2);
  CHECK(lattice::faithfulness_kernel(lattice::edge_of(l2)).order() == 1);

  const auto& f11 = gf::field_of_order(11);
  const auto l11 = lattice::build_standard_lattice(f11, LatticeKind::Exceptional, GroupType::of(Tag::SL2_3));
  const auto e11 = lattice::edge_of(l11);
  CHECK(e11.a0.order() == 2);
  CHECK(lattice::faithfulness_kernel(e11).order() == 2);

  // central edge group: kernel is all of A0
  const auto& f7 = gf::field_of_order(7);
  const auto l7 = lattice::build_standard_lattice(f7, LatticeKind::TorusNormalizer);
  const auto e7 = lattice::edge_of(l7);
  CHECK(e7.a0.order() == 2);
  CHECK(lattice::faithfulness_kernel(e7).elements == e7.a0.elements);

  // kernel of the q=5 SL2(3) edge: C4 is not normal in SL2(3), so only {+-I}
  const auto& f5 = gf::field_of_order(5);
  const auto l5 = lattice::build_standard_lattice(f5, LatticeKind::Exceptional, GroupType::of(Tag::SL2_3));
  const auto e5 = lattice::edge_of(l5);
  CHECK(e5.a0.order() == 4);
  CHECK(lattice::faithfulness_kernel(e5).order() == 2);
}

TEST_CASE("edge-of-groups validation") {
  const auto& f = gf::field_of_order(3);
  const auto l = lattice::build_standard_lattice(f, LatticeKind::TorusNormalizer);
  auto eog = lattice::edge_of(l);
  lattice::validate(eog);
  REQUIRE(eog.alpha1.size() == 2);
  std::swap(eog.alpha1[0], eog.alpha1[1]);  // sends I to -I
  CHECK(code_of([&] { lattice::validate(eog); }) == ErrorCode::NotAHomomorphism);
  auto eog2 = lattice::edge_of(l);
  eog2.alpha2[1] = eog2.alpha2[0];  // not injective
  CHECK(code_of([&] { lattice::validate(eog2); }) == ErrorCode::NotAHomomorphism);
}

TEST_CASE("matrix group helpers") {
  const auto& f = gf::field_of_order(3);
  const auto t = lattice::from_constant(groups::nonsplit_torus(f));
  CHECK(t.order() == 4);
  CHECK(lattice::intersection(t, t).elements == t.elements);
  const auto d = serretree::delta(f);
  const auto c = lattice::conjugate(t, d);
  CHECK(c.order() == 4);
  CHECK(lattice::intersection(t, c).order() == 2);
  const auto one = laurent::LaurentPoly::constant(f, 1);
  const Mat2 unip{one, one, laurent::LaurentPoly(f), one};
  CHECK(code_of([&] { (void)lattice::from_matrices(f, {Mat2::identity(f), unip}); }) == ErrorCode::NotASubgroup);
}

TEST_CASE("lubotzky check examples") {
  const auto& f13 = gf::field_of_order(13);
  const auto l13 = lattice::build_standard_lattice(f13, LatticeKind::TorusNormalizer);
  const auto r13 = lattice::lubotzky_check(l13.a1, l13.a2, l13.base);
  CHECK_FALSE(r13.pass);
  CHECK(r13.orbits1 == std::vector<int>{7, 7});
  CHECK(r13.orbits2 == std::vector<int>{7, 7});
  CHECK_FALSE(r13.covolume.has_value());

  const auto& f5 = gf::field_of_order(5);
  const auto l5 = lattice::build_standard_lattice(f5, LatticeKind::Exceptional, GroupType::of(Tag::SL2_3));
  const auto r5 = lattice::lubotzky_check(l5.a1, l5.a2, l5.base);
  CHECK(r5.pass);
  CHECK(r5.intersection_order == 4);
  CHECK(r5.stab1_order == 4);
  CHECK(r5.stab2_order == 4);

  CHECK(code_of([&] { (void)lattice::lubotzky_check(l5.a2, l5.a1, l5.base); }) == ErrorCode::WrongFixedVertex);
}

TEST_CASE("normal form: reduced words reach distinct edges") {
  const auto& f = gf::field_of_order(2);
  const auto l = lattice::build_standard_lattice(f, LatticeKind::CyclicP2);
  const auto nf = lattice::normal_form_check(l.a1, l.a2, l.base, 3);
  CHECK(nf.distinct);
  CHECK(nf.images_by_length == nf.expected_by_length);
  CHECK(nf.expected_by_length == std::vector<std::size_t>{1, 4, 8, 16});
  const auto& f3 = gf::field_of_order(3);
  const auto l3 = lattice::build_standard_lattice(f3, LatticeKind::TorusNormalizer);
  const auto nf3 = lattice::normal_form_check(l3.a1, l3.a2, l3.base, 2);
  CHECK(nf3.distinct);
  CHECK(nf3.images_by_length == std::vector<std::size_t>{1, 6, 18});
}

TEST_CASE("no p-elements in passing lattices") {
  std::size_t checked = 0;
  auto check = [&](const lattice::StandardLattice& l) {
    const int p = l.a1.field->p();
    const auto r = lattice::lubotzky_check(l.a1, l.a2, l.base);
    REQUIRE(r.pass);
    CHECK(r.no_p_elements);
    CHECK(coprime_orders(l.a1, p));
    CHECK(coprime_orders(l.a2, p));
    checked += l.a1.order() + l.a2.order();
  };
  for (int q : {2, 4, 8, 16}) check(lattice::build_standard_lattice(gf::field_of_order(q), LatticeKind::CyclicP2));
  for (int q : {3, 7, 11, 19, 23}) {
    check(lattice::build_standard_lattice(gf::field_of_order(q), LatticeKind::TorusNormalizer));
  }
  for (const auto& c : lattice::exceptional_cases()) {
    if (c.q > 30) continue;
    check(lattice::build_standard_lattice(gf::field_of_order(static_cast<int>(c.q)), LatticeKind::Exceptional,
                                          c.type));
  }
  CHECK(checked > 0);
}

TEST_CASE("exceptional index identity") {
  for (const auto& c : lattice::exceptional_cases()) {
    if (c.q > 30) continue;
    const auto& f = gf::field_of_order(static_cast<int>(c.q));
    const auto l = lattice::build_standard_lattice(f, LatticeKind::Exceptional, c.type);
    const auto e = lattice::edge_of(l);
    CHECK(l.a1.order() == static_cast<std::size_t>(c.type.order()));
    CHECK(l.a1.order() / e.a0.order() == static_cast<std::size_t>(c.q + 1));
    CHECK(is_cyclic(e.a0));
    const auto row = lattice::sl2_row_for(l);
    REQUIRE(row.has_value());
    CHECK(row->a0_order == static_cast<long long>(e.a0.order()));
    CHECK(row->n_index == c.q + 1);
  }
}

TEST_CASE("standard lattice constructors") {
  const auto l7 = lattice::build_standard_lattice(gf::field_of_order(7), LatticeKind::TorusNormalizer);
  CHECK(l7.a1.order() == 16);
  CHECK(l7.a2.order() == 16);
  const auto l23 = lattice::build_standard_lattice(gf::field_of_order(23), LatticeKind::Exceptional,
                                                   GroupType::of(Tag::BinaryOctahedral2S4));
  CHECK(l23.a1.order() == 48);
  CHECK(code_of([] { (void)lattice::build_standard_lattice(gf::field_of_order(3), LatticeKind::CyclicP2); }) ==
        ErrorCode::KindInadmissible);
  CHECK(code_of([] {
          (void)lattice::build_standard_lattice(gf::field_of_order(4), LatticeKind::TorusNormalizer);
        }) == ErrorCode::KindInadmissible);
  CHECK(code_of([] { (void)lattice::build_standard_lattice(gf::field_of_order(5), LatticeKind::Exceptional); }) ==
        ErrorCode::KindInadmissible);
  CHECK(code_of([] {
          (void)lattice::build_standard_lattice(gf::field_of_order(13), LatticeKind::Exceptional,
                                                GroupType::of(Tag::SL2_3));
        }) == ErrorCode::KindInadmissible);
  CHECK(lattice::parse_lattice_kind("torus_normalizer_q3mod4") == LatticeKind::TorusNormalizer);
  CHECK(code_of([] { (void)lattice::parse_lattice_kind("bogus"); }) == ErrorCode::ParseError);
}

TEST_CASE("classify examples") {
  const auto r4 = lattice::classify(input(2, 4, Levi::PSL, 1));
  REQUIRE(r4.size() == 1);
  CHECK(r4[0].a0_order == 1);
  CHECK(r4[0].covolume == Rational(2, 5));
  CHECK(r4[0].case_tag == "Thm1.1");

  const auto r5 = lattice::classify(input(5, 5, Levi::PSL, 2));
  REQUIRE(r5.size() == 1);
  CHECK(r5[0].exceptional);
  CHECK(r5[0].vertex_type.find("SL2(3)") != std::string::npos);
  CHECK(r5[0].a0_order == 4);

  for (long long z : {1, 2, 4}) CHECK(lattice::classify(input(13, 13, Levi::PSL, z)).empty());

  const auto r11 = lattice::classify(input(11, 11, Levi::PSL, 2));
  CHECK(r11.size() == 3);
  const auto r7 = lattice::classify(input(7, 7, Levi::PSL, 2));
  REQUIRE(r7.size() == 2);
  CHECK(r7[0].case_tag == "Thm1.2b");
  CHECK(r7[0].covolume == Rational(1, 8));
  CHECK(r7[1].a0_order == 6);
}

TEST_CASE("classify rows satisfy the covolume identity") {
  for (const auto& c : lattice::exceptional_cases()) {
    for (long long z : {1, 2}) {
      for (const auto& r : lattice::classify(input(static_cast<int>(c.q), c.q, Levi::PSL, z))) {
        CHECK(r.covolume == Rational(2, (r.q + 1) * r.a0_order));
        CHECK(r.vertex_order == (r.q + 1) * r.a0_order);
        if (r.exceptional) CHECK(r.n_index == r.q + 1);
      }
    }
  }
}

TEST_CASE("classification input validation") {
  CHECK(code_of([] { (void)lattice::classify(input(4, 4, Levi::PSL, 1)); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { (void)lattice::classify(input(3, 6, Levi::PSL, 1)); }) == ErrorCode::InvalidInput);
  CHECK(code_of([] { (void)lattice::classify(input(3, 9, Levi::PSL, 0)); }) == ErrorCode::InvalidInput);
  auto in = input(2, 8, Levi::PSL, 1);
  in.zmi_in_zg = true;
  CHECK(code_of([&] { (void)lattice::classify(in); }) == ErrorCode::InvalidInput);
  auto pgl7 = input(7, 7, Levi::PGL, 2);
  CHECK(code_of([&] { (void)lattice::classify(pgl7); }) == ErrorCode::InvalidInput);  // missing flag
  pgl7.zmi_in_zg = false;
  CHECK(lattice::classify(pgl7).size() == 1);
  auto pgl13 = input(13, 13, Levi::PGL, 2);
  pgl13.qi_in_zg = true;
  pgl13.qi0_in_zg = false;
  pgl13.qi0_nontrivial = true;
  CHECK(code_of([&] { (void)lattice::classify(pgl13); }) == ErrorCode::InvalidInput);
  auto m1 = input(2, 2, Levi::PSL, 1);
  m1.m = 1;
  CHECK(code_of([&] { (void)lattice::classify(m1); }) == ErrorCode::InvalidInput);
}

TEST_CASE("min covolume examples") {
  const auto a = lattice::min_covolume(input(2, 8, Levi::PSL, 1));
  CHECK(a.covolume == Rational(2, 9));
  CHECK(a.delta0 == 1);
  const auto b = lattice::min_covolume(input(7, 7, Levi::PSL, 2));
  CHECK(b.covolume == Rational(1, 8));
  auto c_in = input(7, 7, Levi::PGL, 1);
  c_in.zmi_in_zg = false;
  const auto c = lattice::min_covolume(c_in);
  CHECK(c.delta0 == 4);
  CHECK(c.covolume == Rational(2, 8 * 4));
  CHECK(code_of([] { (void)lattice::min_covolume(input(13, 13, Levi::PSL, 2)); }) == ErrorCode::MinUndefined);
  CHECK(code_of([] { (void)lattice::min_covolume(input(5, 5, Levi::PSL, 2)); }) == ErrorCode::MinUndefined);
  CHECK(code_of([] { (void)lattice::min_covolume_formula(input(5, 5, Levi::PSL, 2)); }) == ErrorCode::MinUndefined);
}

TEST_CASE("min covolume agrees with the formula over the flag lattice") {
  const std::vector<std::optional<bool>> tri{std::nullopt, false, true};
  int compared = 0;
  for (long long q : {2, 4, 8, 16, 3, 7, 11, 19, 23, 27, 5, 9, 13, 17, 25, 29}) {
    int p = 2;
    while (q % p) ++p;
    for (Levi levi : {Levi::PSL, Levi::PGL}) {
      for (long long z : {1, 2, 3, 4}) {
        for (const auto& a : tri)
          for (const auto& b : tri)
            for (const auto& c : tri)
              for (const auto& d : tri) {
                auto in = input(p, q, levi, z);
                in.zmi_in_zg = a;
                in.qi_in_zg = b;
                in.qi0_in_zg = c;
                in.qi0_nontrivial = d;
                if (code_of([&] { lattice::validate(in); }) != ErrorCode::Ok) continue;
                const ErrorCode e1 = code_of([&] { (void)lattice::min_covolume(in); });
                const ErrorCode e2 = code_of([&] { (void)lattice::min_covolume_formula(in); });
                CHECK(e1 == e2);
                if (e1 != ErrorCode::Ok) continue;
                const auto m = lattice::min_covolume(in);
                const auto fm = lattice::min_covolume_formula(in);
                CHECK(m.covolume == fm.covolume);
                CHECK(m.delta0 == fm.delta0);
                CHECK(m.covolume == Rational(2, (q + 1) * z * m.delta0));
                ++compared;
              }
      }
    }
  }
  CHECK(compared > 50);
}
