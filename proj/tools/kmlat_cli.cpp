// kmlat command-line front end. Talks to the engine only through the C API.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "kmlat/kmlat.h"

namespace {

struct Globals {
  std::uint64_t seed = 0;
  int json_indent = 2;
  std::size_t max_elements = 0;  // 0: library default
};

int usage_error(const std::string& msg) {
  std::cerr << "usage error: " << msg << "\n";
  return 2;
}

// Parses true/false style flag values; -1 when absent.
std::optional<int> tri_flag(const std::string& name, const std::string& v) {
  if (v.empty()) return -1;
  if (v == "true" || v == "1" || v == "yes") return 1;
  if (v == "false" || v == "0" || v == "no") return 0;
  if (v == "na" || v == "n/a") return -1;
  std::cerr << "usage error: " << name << " takes true, false or na, not '" << v << "'\n";
  return std::nullopt;
}

class Session {
 public:
  explicit Session(const Globals& g) : ctx_(kmlat_context_new(g.seed)), indent_(g.json_indent) {
    kmlat_context_set_json_indent(ctx_, g.json_indent);
    if (g.max_elements) kmlat_context_set_max_elements(ctx_, g.max_elements);
  }
  ~Session() {
    if (field_) kmlat_field_free(field_);
    kmlat_context_free(ctx_);
  }
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  kmlat_context* ctx() { return ctx_; }

  // Opens the field; on failure prints the error and returns false.
  bool open(int q) {
    const kmlat_status st = kmlat_field_new(ctx_, q, &field_);
    if (st != KMLAT_OK) {
      report_error(st);
      return false;
    }
    return true;
  }
  const kmlat_field* field() const { return field_; }

  // Prints the JSON or the structured error; returns the exit code.
  // out by reference: it is read after the call that fills it.
  int finish(kmlat_status st, char*& out) {
    if (st != KMLAT_OK) return report_error(st);
    std::cout << out << "\n";
    kmlat_string_free(out);
    return 0;
  }

  int report_error(kmlat_status st) {
    nlohmann::ordered_json j;
    j["schema"] = "kmlat-report-v1";
    j["error"] = kmlat_status_name(st);
    j["detail"] = kmlat_last_error(ctx_);
    std::cout << (indent_ < 0 ? j.dump() : j.dump(indent_)) << "\n";
    return 1;
  }

 private:
  kmlat_context* ctx_;
  int indent_;
  kmlat_field* field_ = nullptr;
};

struct ClassifyOpts {
  int p = 0;
  long long q = 0;
  int m = 2;
  std::string levi = "psl";
  long long z = 1;
  std::string zmi, qi, qi0, qi0_nontrivial;
};

void add_classify_opts(CLI::App* sub, ClassifyOpts& o) {
  sub->add_option("--p", o.p, "characteristic")->required();
  sub->add_option("--q", o.q, "field order")->required();
  sub->add_option("--m", o.m, "off-diagonal Cartan entry is -m")->capture_default_str();
  sub->add_option("--levi", o.levi, "Levi quotient type")->check(CLI::IsMember({"psl", "pgl"}))->capture_default_str();
  sub->add_option("--z", o.z, "|Z(G)|")->capture_default_str();
  sub->add_option("--zmi-in-zg", o.zmi, "Z(M_i) <= Z(G) (pgl, q = 3 mod 4)");
  sub->add_option("--qi-in-zg", o.qi, "Q_i <= Z(G) (pgl, q = 1 mod 4)");
  sub->add_option("--qi0-in-zg", o.qi0, "Q_i^0 <= Z(G) (pgl, q = 1 mod 4)");
  sub->add_option("--qi0-nontrivial", o.qi0_nontrivial, "Q_i^0 != 1 (pgl, q = 1 mod 4)");
}

std::optional<kmlat_classification_input> to_input(const ClassifyOpts& o) {
  kmlat_classification_input in;
  kmlat_classification_input_init(&in);
  in.p = o.p;
  in.q = o.q;
  in.m = o.m;
  in.levi_pgl = o.levi == "pgl";
  in.z_order = o.z;
  const auto a = tri_flag("--zmi-in-zg", o.zmi), b = tri_flag("--qi-in-zg", o.qi),
             c = tri_flag("--qi0-in-zg", o.qi0), d = tri_flag("--qi0-nontrivial", o.qi0_nontrivial);
  if (!a || !b || !c || !d) return std::nullopt;
  in.zmi_in_zg = *a;
  in.qi_in_zg = *b;
  in.qi0_in_zg = *c;
  in.qi0_nontrivial = *d;
  return in;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Edge-transitive tree lattices in rank-2 Kac-Moody groups over finite fields"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--json-indent", g.json_indent, "JSON indent, negative for compact")->capture_default_str();
  app.add_option("--max-elements", g.max_elements, "cap on finite group sizes");

  ClassifyOpts cls, minc;
  auto* classify = app.add_subcommand("classify", "edge-transitive lattice types");
  add_classify_opts(classify, cls);
  auto* min_cov = app.add_subcommand("min-covolume", "least covolume among edge-transitive lattices");
  add_classify_opts(min_cov, minc);

  int q = 0;
  std::string ambient = "sl2";
  auto* dickson = app.add_subcommand("dickson", "subgroup types of SL2, PSL2, PGL2 over F_q");
  dickson->add_option("--q", q, "field order")->required();
  dickson->add_option("--ambient", ambient, "sl2, psl2 or pgl2")->capture_default_str();

  std::string kind, type;
  int radius = 2;
  auto* verify = app.add_subcommand("verify", "build a standard lattice and check it on the tree");
  verify->add_option("--q", q, "field order")->required();
  verify->add_option("--kind", kind, "cyclic_p2, torus_normalizer or exceptional")->required();
  verify->add_option("--type", type, "vertex group for exceptional: SL2(3), SL2(5), 2S4");
  verify->add_option("--radius", radius, "word length for the normal-form check")->capture_default_str();

  int m = 2;
  std::string word, edge, mode = "twisted";
  bool crosscheck = false;
  auto* km = app.add_subcommand("km-act", "root-group action on labelled edges");
  km->add_option("--q", q, "field order")->required();
  km->add_option("--m", m, "off-diagonal Cartan entry is -m")->capture_default_str();
  km->add_option("--word", word, "letters like x1:3,x2.1:2; rightmost acts first")->required();
  km->add_option("--edge", edge, "base, L:l1,...,ln or R:r1,...,rn")->required();
  km->add_option("--mode", mode, "identity or twisted")->check(CLI::IsMember({"identity", "twisted"}))->capture_default_str();
  km->add_flag("--crosscheck", crosscheck, "compare with the matrix action (m = 2)");

  int pairs = 2;
  auto* zp = app.add_subcommand("zp-test", "z^p fixed-edge sweep over short alternating words");
  zp->add_option("--q", q, "field order")->required();
  zp->add_option("--pairs", pairs, "maximum number of x1/x2 pairs")->capture_default_str();

  int window = 2, samples = 100;
  auto* dih = app.add_subcommand("dihedral-search", "involution triples in characteristic 2");
  dih->add_option("--q", q, "field order")->required();
  dih->add_option("--window", window, "degree window")->capture_default_str();
  dih->add_option("--samples", samples, "sampled triples for the conjugation identity")->capture_default_str();

  std::vector<std::string> distance;
  std::string neighbors, permutation, vertex;
  auto* tree = app.add_subcommand("tree", "queries on the lattice-class tree");
  tree->add_option("--q", q, "field order")->required();
  auto* o_dist = tree->add_option("--distance", distance, "two matrices a,b;c,d")->expected(2);
  auto* o_nb = tree->add_option("--neighbors", neighbors, "vertex matrix");
  auto* o_perm = tree->add_option("--permutation", permutation, "matrix fixing --vertex");
  tree->add_option("--vertex", vertex, "vertex matrix for --permutation");
  o_dist->excludes(o_nb)->excludes(o_perm);
  o_nb->excludes(o_perm);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Session s(g);
  char* out = nullptr;
  if (classify->parsed() || min_cov->parsed()) {
    const bool is_min = min_cov->parsed();
    const auto in = to_input(is_min ? minc : cls);
    if (!in) return 2;
    const kmlat_status st = is_min ? kmlat_min_covolume(s.ctx(), &*in, &out) : kmlat_classify(s.ctx(), &*in, &out);
    return s.finish(st, out);
  }
  if (!s.open(q)) return 1;
  if (dickson->parsed()) return s.finish(kmlat_dickson(s.ctx(), s.field(), ambient.c_str(), &out), out);
  if (verify->parsed()) {
    return s.finish(kmlat_verify(s.ctx(), s.field(), kind.c_str(), type.c_str(), radius, &out), out);
  }
  if (km->parsed()) {
    return s.finish(kmlat_km_act(s.ctx(), s.field(), m, word.c_str(), edge.c_str(), mode.c_str(), crosscheck, &out),
                    out);
  }
  if (zp->parsed()) return s.finish(kmlat_zp_test(s.ctx(), s.field(), pairs, &out), out);
  if (dih->parsed()) return s.finish(kmlat_dihedral_search(s.ctx(), s.field(), window, samples, &out), out);
  if (tree->parsed()) {
    if (!distance.empty()) {
      return s.finish(kmlat_tree_distance(s.ctx(), s.field(), distance[0].c_str(), distance[1].c_str(), &out), out);
    }
    if (!neighbors.empty()) return s.finish(kmlat_tree_neighbors(s.ctx(), s.field(), neighbors.c_str(), &out), out);
    if (!permutation.empty()) {
      if (vertex.empty()) return usage_error("--permutation needs --vertex");
      return s.finish(kmlat_tree_permutation(s.ctx(), s.field(), permutation.c_str(), vertex.c_str(), &out), out);
    }
    return usage_error("tree needs one of --distance, --neighbors, --permutation");
  }
  return usage_error("no subcommand");
}
