#include "report.hpp"

#include <random>

namespace kmlat::report {

using lattice::Rational;

namespace {

ordered_json envelope(const std::string& command) {
  ordered_json j;
  j["schema"] = kSchema;
  j["command"] = command;
  return j;
}

ordered_json envelope(const std::string& command, const gf::Field& f) {
  ordered_json j = envelope(command);
  j["field"] = f.spec_string();
  j["q"] = f.q();
  return j;
}

ordered_json flag(const std::optional<bool>& b) {
  if (!b) return nullptr;
  return *b;
}

ordered_json input_json(const lattice::ClassificationInput& in) {
  ordered_json j;
  j["p"] = in.p;
  j["q"] = in.q;
  j["m"] = in.m;
  j["levi"] = lattice::to_string(in.levi);
  j["z_order"] = in.z_order;
  j["ZMi_in_ZG"] = flag(in.zmi_in_zg);
  j["Qi_in_ZG"] = flag(in.qi_in_zg);
  j["Qi0_in_ZG"] = flag(in.qi0_in_zg);
  j["Qi0_nontrivial"] = flag(in.qi0_nontrivial);
  return j;
}

ordered_json row_json(const lattice::LatticeDescriptor& d) {
  ordered_json j;
  j["case"] = d.case_tag;
  j["q"] = d.q;
  j["A0_order"] = d.a0_order;
  j["vertex_type"] = d.vertex_type;
  j["vertex_order"] = d.vertex_order;
  j["covolume"] = lattice::to_string(d.covolume);
  if (d.delta0) {
    j["delta0"] = *d.delta0;
  } else {
    j["delta0"] = nullptr;
  }
  j["exceptional"] = d.exceptional;
  if (d.exceptional) {
    j["N_order"] = d.n_order;
    j["N_index"] = d.n_index;
  }
  return j;
}

std::vector<std::string> matrices(const std::vector<serretree::Mat2>& ms) {
  std::vector<std::string> out;
  for (const auto& m : ms) out.push_back(serretree::to_string(m));
  return out;
}

}  // namespace

ordered_json error_json(const std::string& name, const std::string& detail) {
  ordered_json j = envelope("error");
  j["error"] = name;
  j["detail"] = detail;
  return j;
}

ordered_json classify(const lattice::ClassificationInput& in) {
  const auto rows = lattice::classify(in);
  ordered_json j = envelope("classify");
  j["input"] = input_json(in);
  j["rows"] = ordered_json::array();
  for (const auto& r : rows) j["rows"].push_back(row_json(r));
  return j;
}

ordered_json min_covolume(const lattice::ClassificationInput& in) {
  const auto best = lattice::min_covolume(in);
  const auto formula = lattice::min_covolume_formula(in);
  ordered_json j = envelope("min-covolume");
  j["input"] = input_json(in);
  j["covolume"] = lattice::to_string(best.covolume);
  j["delta0"] = best.delta0;
  j["case"] = best.case_tag;
  j["formula_covolume"] = lattice::to_string(formula.covolume);
  j["formula_delta0"] = formula.delta0;
  j["agree"] = best.covolume == formula.covolume && best.delta0 == formula.delta0;
  return j;
}

ordered_json dickson(const gf::Field& f, groups::Ambient ambient) {
  ordered_json j = envelope("dickson", f);
  j["ambient"] = groups::to_string(ambient);
  j["conventions"] = {{"2S4", "binary octahedral group (unique involution)"}};
  j["rows"] = ordered_json::array();
  for (const auto& e : groups::dickson_table(f, ambient)) {
    ordered_json r;
    r["type"] = e.type.name();
    r["order"] = e.order;
    r["div_q_plus_1"] = e.divisible_by_q_plus_1;
    r["source"] = e.source;
    if (e.inside_psl2) r["inside_psl2"] = *e.inside_psl2;
    j["rows"].push_back(r);
  }
  return j;
}

ordered_json verify(const gf::Field& f, lattice::LatticeKind kind,
                    std::optional<groups::GroupType> type, int radius, std::size_t max_elements) {
  if (radius < 0) fail(ErrorCode::InvalidInput, "radius must be >= 0");
  long long images = 1, level = 2;
  for (int d = 1; d <= radius; ++d) {
    level *= f.q();
    images += level;
    if (images > 5000) {
      fail(ErrorCode::RadiusExceeded, "radius " + std::to_string(radius) + " needs more than 5000 edge images");
    }
  }
  const auto l = lattice::build_standard_lattice(f, kind, type);
  if (l.a1.order() > max_elements) {
    fail(ErrorCode::SizeCapExceeded, "vertex group of order " + std::to_string(l.a1.order()) +
                                         " exceeds --max-elements");
  }
  const auto r = lattice::lubotzky_check(l.a1, l.a2, l.base);
  ordered_json j = envelope("verify", f);
  j["kind"] = lattice::to_string(kind);
  j["vertex_type"] = l.type.name();
  j["vertex_order"] = l.a1.order();
  j["conventions"] = {{"2S4", "binary octahedral group (unique involution)"}};
  j["delta"] = serretree::to_string(l.delta);
  ordered_json lub;
  lub["orbits_x1"] = r.orbits1;
  lub["orbits_x2"] = r.orbits2;
  lub["transitive_x1"] = r.transitive1;
  lub["transitive_x2"] = r.transitive2;
  lub["stab_A1_x2"] = r.stab1_order;
  lub["stab_A2_x1"] = r.stab2_order;
  lub["A1_cap_A2"] = r.intersection_order;
  lub["stab_condition_1"] = r.stab_condition1;
  lub["stab_condition_2"] = r.stab_condition2;
  lub["pass"] = r.pass;
  j["lubotzky"] = lub;
  if (!r.pass) {
    j["amalgam"] = nullptr;
    j["covering_check"] = nullptr;
    j["normal_form"] = nullptr;
  } else {
    ordered_json am;
    am["edge_group_order"] = r.intersection_order;
    am["index_1"] = r.index1;
    am["index_2"] = r.index2;
    am["kernel_order"] = r.kernel_order;
    am["no_p_elements"] = r.no_p_elements;
    am["covolume"] = lattice::to_string(*r.covolume);
    j["amalgam"] = am;
    j["covering_check"] =
        lattice::covering_check(lattice::abstract_edge(l), serretree::Mat2::identity(f), l.delta, l.base);
    const auto nf = lattice::normal_form_check(l.a1, l.a2, l.base, radius);
    ordered_json n;
    n["radius"] = radius;
    n["images_by_length"] = nf.images_by_length;
    n["expected_by_length"] = nf.expected_by_length;
    n["consistent"] = nf.distinct;
    j["normal_form"] = n;
  }
  const auto row = lattice::sl2_row_for(l);
  if (row) {
    j["classify_row"] = row_json(*row);
    j["covolume_matches_classify"] = r.covolume ? ordered_json(*r.covolume == row->covolume) : ordered_json(false);
  } else {
    j["classify_row"] = nullptr;
    j["covolume_matches_classify"] = nullptr;
  }
  return j;
}

ordered_json km_act(const gf::Field& f, int m, const std::string& word, const std::string& edge,
                    kmaction::PhiMode mode, bool crosscheck) {
  const kmaction::KMParams params(m, f);
  const auto w = kmaction::parse_word(f, word);
  const auto e = kmaction::parse_edge(f, edge);
  const auto image = kmaction::apply_word(params, w, e, mode);
  ordered_json j = envelope("km-act", f);
  j["m"] = m;
  j["word"] = kmaction::to_string(w);
  j["edge"] = kmaction::to_string(e);
  j["image"] = kmaction::to_string(image);
  j["mode"] = mode == kmaction::PhiMode::Twisted ? "twisted" : "identity";
  ordered_json conv;
  conv["uniformizer"] = "pi = t^-1";
  conv["epsilon"] = "+1";
  conv["weyl"] = "w_i = x_i(1) x_-i(-1) x_i(1)";
  conv["word_order"] = "rightmost letter acts first";
  conv["cross_side_depth0_short_edges"] = "fixed";
  j["conventions"] = conv;
  if (crosscheck) {
    j["crosscheck"] = kmaction::crosscheck_affine(params, w, e, mode);
  } else {
    j["crosscheck"] = nullptr;
  }
  ordered_json certs = ordered_json::array();
  for (const auto& l : w) {
    const auto c = kmaction::fixed_ball_certificate(params, l.root);
    ordered_json cj;
    cj["root"] = "x" + std::to_string(l.root.side) + "." + std::to_string(l.root.depth);
    cj["vertex"] = c.vertex;
    cj["radius"] = c.radius;
    cj["note"] = c.note;
    certs.push_back(cj);
  }
  j["fixed_balls"] = certs;
  return j;
}

ordered_json zp_test(const gf::Field& f, int max_pairs) {
  const kmaction::KMParams params(2, f);
  const auto s = kmaction::zp_sweep(params, max_pairs);
  ordered_json j = envelope("zp-test", f);
  j["pairs"] = max_pairs;
  j["checked"] = s.checked;
  j["agreements"] = s.agreements;
  j["predicate"] = "fixes E iff t2 = 0";
  j["corrected_predicate"] = "fixes E iff t1 = 0 or t2 = 0";
  j["corrected_agreements"] = s.corrected_agreements;
  j["ball_agreements"] = s.ball_agreements;
  j["ball_corrected_agreements"] = s.ball_corrected_agreements;
  std::vector<std::string> dis;
  for (const auto& w : s.disagreements) dis.push_back(kmaction::to_string(w));
  j["first_disagreements"] = dis;
  return j;
}

ordered_json dihedral_search(const gf::Field& f, int window, int samples, std::uint64_t seed) {
  if (samples < 0) fail(ErrorCode::InvalidInput, "samples must be >= 0");
  const auto rep = serretree::dihedral_obstruction_search(f, window);
  ordered_json j = envelope("dihedral-search", f);
  j["window"] = window;
  j["B_involutions"] = rep.b_count;
  j["P1_minus_B_involutions"] = rep.p1_count;
  j["P2_minus_B_involutions"] = rep.p2_count;
  j["triples_checked"] = rep.triples_checked;
  j["violations"] = ordered_json::array();
  for (const auto& v : rep.violations) {
    j["violations"].push_back(matrices({v.rho0, v.gamma1, v.gamma2}));
  }
  using serretree::InvolutionRegion;
  const auto bs = serretree::involution_families(f, InvolutionRegion::B, window);
  const auto p1 = serretree::involution_families(f, InvolutionRegion::P1minusB, window);
  const auto p2 = serretree::involution_families(f, InvolutionRegion::P2minusB, window);
  std::size_t failures = 0, done = 0;
  if (!bs.empty() && !p1.empty() && !p2.empty()) {
    std::mt19937_64 rng(seed);
    auto pick = [&](const std::vector<serretree::Mat2>& v) -> const serretree::Mat2& {
      return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
    };
    for (int i = 0; i < samples; ++i) {
      const auto& rho = pick(bs);
      const auto& g1 = pick(p1);
      const auto& g2 = pick(p2);
      if (!serretree::involution_conjugation_identity(rho, g1)) ++failures;
      if (!serretree::involution_conjugation_identity(rho, g2)) ++failures;
      ++done;
    }
  }
  j["identity_samples"] = done;
  j["identity_failures"] = failures;
  return j;
}

ordered_json tree_distance(const gf::Field& f, const std::string& m1, const std::string& m2) {
  const serretree::Vertex u{serretree::parse_matrix(f, m1)}, v{serretree::parse_matrix(f, m2)};
  serretree::elementary_divisor_valuations(u.rep);
  serretree::elementary_divisor_valuations(v.rep);
  ordered_json j = envelope("tree", f);
  j["a"] = serretree::to_string(u.rep);
  j["b"] = serretree::to_string(v.rep);
  j["distance"] = serretree::vertex_distance(u, v);
  return j;
}

ordered_json tree_neighbors(const gf::Field& f, const std::string& vertex) {
  const serretree::Vertex v{serretree::parse_matrix(f, vertex)};
  serretree::elementary_divisor_valuations(v.rep);
  ordered_json j = envelope("tree", f);
  j["vertex"] = serretree::to_string(v.rep);
  std::vector<std::string> ns;
  for (const auto& w : serretree::neighbors(v)) ns.push_back(serretree::to_string(w.rep));
  j["neighbors"] = ns;
  return j;
}

ordered_json tree_permutation(const gf::Field& f, const std::string& g, const std::string& vertex) {
  const serretree::Mat2 m = serretree::parse_matrix(f, g);
  const serretree::Vertex v{serretree::parse_matrix(f, vertex)};
  if (!serretree::same_vertex(serretree::act(m, v), v)) {
    fail(ErrorCode::WrongFixedVertex, "matrix does not fix the vertex");
  }
  std::vector<int> perm;
  for (const auto& w : serretree::neighbors(v)) perm.push_back(serretree::neighbor_index(v, serretree::act(m, w)));
  ordered_json j = envelope("tree", f);
  j["g"] = serretree::to_string(m);
  j["vertex"] = serretree::to_string(v.rep);
  j["permutation"] = perm;
  return j;
}

}  // namespace kmlat::report
