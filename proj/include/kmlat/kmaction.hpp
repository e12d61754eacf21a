#pragma once

#include <string>
#include <vector>

#include "kmlat/serretree.hpp"

namespace kmlat::kmaction {

using gf::Elem;
using gf::Field;

struct KMParams {
  int m = 2;  // off-diagonal Cartan entry is -m
  const Field* field = nullptr;

  KMParams(int m_, const Field& f);
};

/// Positive real root: side 1 depth k is (w1,w2;k) applied to alpha_{i_k},
/// side 2 depth k is (w2,w1;k) applied to alpha_{i'_k}.
struct RootIndex {
  int side = 1;
  int depth = 0;
  bool operator==(const RootIndex& o) const { return side == o.side && depth == o.depth; }
};

/// Simple root index used by the root: i_k = 1 for even k, 2 for odd k on
/// side 1, and the other way round on side 2.
int simple_root(const RootIndex& r);

enum class Region { Base, Left, Right };

struct EdgeLabel {
  Region region = Region::Base;
  std::vector<Elem> coords;  // (l_1..l_n) or (r_1..r_n); empty for Base

  int length() const { return static_cast<int>(coords.size()); }
  bool operator==(const EdgeLabel& o) const { return region == o.region && coords == o.coords; }
  bool operator!=(const EdgeLabel& o) const { return !(*this == o); }
};

struct RootLetter {
  RootIndex root;
  Elem t = 0;
};

using KMWord = std::vector<RootLetter>;

enum class PhiMode { Identity, Twisted };

/// Image of e under x_root(t); throws UnsupportedActionDomain outside the
/// covered (root, edge) patterns.
EdgeLabel apply_letter(const KMParams& params, const RootLetter& letter, const EdgeLabel& e,
                       PhiMode mode);
/// Left action; the rightmost letter acts first.
EdgeLabel apply_word(const KMParams& params, const KMWord& w, const EdgeLabel& e, PhiMode mode);
/// Letters reversed and negated.
KMWord inverse_word(const KMParams& params, const KMWord& w);

struct ZpResult {
  bool fixes_all_E = false;
  Elem t1 = 0;
  Elem t2 = 0;
};

/// z = x1(t_{1,1}) x2(t_{2,1}) ... x1(t_{1,m'}) x2(t_{2,m'}) in depth-0
/// letters. Applies z^p to every left edge (l1, l2) in identity mode.
ZpResult zp_fix_test(const KMParams& params, const KMWord& z);
/// Same sweep over the right edges (r1, r2).
bool zp_fixes_right_pairs(const KMParams& params, const KMWord& z);

/// z^p fixes base, every left and right edge of length <= 2.
bool zp_fixes_ball2(const KMParams& params, const KMWord& z);

/// Exhaustive sweep over alternating depth-0 words with 1..max_pairs pairs.
struct ZpSweep {
  int q = 0;
  int max_pairs = 0;
  std::size_t checked = 0;
  std::size_t agreements = 0;            // fixes E iff t2 = 0
  std::size_t corrected_agreements = 0;  // fixes E iff t1 = 0 or t2 = 0
  std::size_t ball_agreements = 0;       // fixes Ball(B,2) iff t1 = t2 = 0
  std::size_t ball_corrected_agreements = 0;  // fixes Ball(B,2) iff t1 = 0 or t2 = 0
  std::vector<KMWord> disagreements;     // first few words where t2 = 0 fails
};
ZpSweep zp_sweep(const KMParams& params, int max_pairs, std::size_t keep = 5);

struct BallCertificate {
  std::string vertex;  // apartment vertex, e.g. "(w2,w1;1)P1"
  int radius = 0;
  std::string note;
};

/// Apartment vertex and radius of a ball fixed pointwise by the root group.
BallCertificate fixed_ball_certificate(const KMParams& params, const RootIndex& root);

// Affine realization (m = 2) inside SL2(F_q((t^-1))).
serretree::Mat2 root_matrix(const Field& f, int simple, Elem u);           // x_{alpha_i}(u)
serretree::Mat2 negative_root_matrix(const Field& f, int simple, Elem u);  // x_{-alpha_i}(u)
serretree::Mat2 weyl_matrix(const Field& f, int simple);                   // w_i
/// Word x_{i_1}(l_1) w_{i_1} x_{i_2}(l_2) w_{i_2} ... naming the labelled edge.
serretree::Mat2 edge_word_matrix(const Field& f, const EdgeLabel& e);
serretree::Edge realize_edge(const Field& f, const EdgeLabel& e);

constexpr int kMaxCrosscheckRadius = 6;

/// Exact tree image of the labelled edge under w agrees with the symbolic image.
bool crosscheck_affine(const KMParams& params, const KMWord& w, const EdgeLabel& e, PhiMode mode);

std::string to_string(const EdgeLabel& e);
EdgeLabel parse_edge(const Field& f, const std::string& text);
std::string to_string(const KMWord& w);
/// "x1:3,x2:1" (depth 0) or "x1.2:3" (side 1, depth 2).
KMWord parse_word(const Field& f, const std::string& text);

}  // namespace kmlat::kmaction
