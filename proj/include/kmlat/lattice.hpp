#pragma once

#include <boost/rational.hpp>

#include <optional>
#include <string>
#include <vector>

#include "kmlat/groups.hpp"
#include "kmlat/serretree.hpp"

namespace kmlat::lattice {

using gf::Field;
using serretree::Edge;
using serretree::Mat2;
using Rational = boost::rational<long long>;

std::string to_string(const Rational& r);  // "num/den", or "n" when den = 1

/// Finite subgroup of SL2(F_q[t, t^-1]); elements sorted by Mat2::operator<.
struct MatGroup {
  const Field* field = nullptr;
  std::vector<Mat2> elements;

  std::size_t order() const { return elements.size(); }
  bool contains(const Mat2& x) const;
};

MatGroup from_constant(const groups::FiniteGroup& g);
/// Sorts and checks closure under multiplication (NotASubgroup otherwise).
MatGroup from_matrices(const Field& f, std::vector<Mat2> elements);
/// { g x g^-1 : x in h }
MatGroup conjugate(const MatGroup& h, const Mat2& g);
MatGroup intersection(const MatGroup& a, const MatGroup& b);
/// Multiplicative order; Internal if it exceeds cap.
int element_order(const Mat2& x, int cap = 100000);

/// A1 <-alpha1- A0 -alpha2-> A2, the maps given as images of A0.elements.
struct EdgeOfGroups {
  MatGroup a0, a1, a2;
  std::vector<Mat2> alpha1, alpha2;
};

/// Inclusion maps A1 >= A0 <= A2.
EdgeOfGroups inclusion_edge(const MatGroup& a0, const MatGroup& a1, const MatGroup& a2);
/// NotAHomomorphism unless both maps are injective homomorphisms into A1, A2.
void validate(const EdgeOfGroups& eog);

/// Largest subgroup of A0 whose images are normal in A1 and in A2.
MatGroup faithfulness_kernel(const EdgeOfGroups& eog);

struct VerificationReport {
  int q = 0;
  std::size_t order1 = 0, order2 = 0;
  std::vector<int> orbits1, orbits2;  // orbit sizes on the q+1 neighbours of x1, x2
  bool transitive1 = false, transitive2 = false;
  std::size_t stab1_order = 0;  // |Stab_{A1}(x2)|
  std::size_t stab2_order = 0;  // |Stab_{A2}(x1)|
  std::size_t intersection_order = 0;
  bool stab_condition1 = false, stab_condition2 = false;
  bool pass = false;
  // Filled on pass only.
  std::size_t index1 = 0, index2 = 0;
  std::size_t kernel_order = 0;
  bool no_p_elements = false;
  std::optional<Rational> covolume;
};

/// Checks that A1 fixes base.from and A2 fixes base.to (WrongFixedVertex),
/// then both vertex conditions on the exact tree.
VerificationReport lubotzky_check(const MatGroup& a1, const MatGroup& a2, const Edge& base);

/// rho_i(g) = d_i g d_i^-1, base = (x1, x2). Checks rho1 alpha1 = rho2 alpha2
/// on A0 and that g alpha_i(A0) -> rho_i(g) x_{3-i} is a bijection from the
/// cosets onto the neighbours of x_i, for i = 1, 2.
bool covering_check(const EdgeOfGroups& eog, const Mat2& d1, const Mat2& d2, const Edge& base);

/// Sum of 1/|vertex group| over vertex orbits.
Rational covolume(const std::vector<long long>& vertex_group_orders);
Rational covolume(const EdgeOfGroups& eog);

/// Counts distinct images of the base edge under reduced transversal words
/// of each length 0..max_len in the amalgam; a faithful tree action
/// produces 1, 2q, 2q^2, ... (the edges at that distance).
struct NormalFormReport {
  std::vector<std::size_t> images_by_length;
  std::vector<std::size_t> expected_by_length;
  bool distinct = false;  // no edge reached twice, and counts match
};
NormalFormReport normal_form_check(const MatGroup& a1, const MatGroup& a2, const Edge& base,
                                   int max_len);

// ---------------------------------------------------------------- classification

enum class Levi { PSL, PGL };
std::string to_string(Levi l);
Levi parse_levi(const std::string& s);

struct ClassificationInput {
  int p = 2;
  long long q = 2;
  int m = 2;
  Levi levi = Levi::PSL;
  long long z_order = 1;  // |Z(G)|
  std::optional<bool> zmi_in_zg;       // Z(M_i) <= Z(G); PGL, q = 3 mod 4
  std::optional<bool> qi_in_zg;        // Q_i <= Z(G); PGL, q = 1 mod 4
  std::optional<bool> qi0_in_zg;       // Q_i^0 <= Z(G); PGL, q = 1 mod 4
  std::optional<bool> qi0_nontrivial;  // Q_i^0 != 1; PGL, q = 1 mod 4
};

/// InvalidInput on malformed or contradictory input.
void validate(const ClassificationInput& in);

struct LatticeDescriptor {
  long long q = 0;
  std::string case_tag;
  long long a0_order = 0;
  std::string vertex_type;
  long long vertex_order = 0;
  Rational covolume;
  std::optional<int> delta0;
  bool exceptional = false;
  /// Exceptional rows: |N_i| and |N_i : N_i cap A0|.
  long long n_order = 0;
  long long n_index = 0;
};

std::vector<LatticeDescriptor> classify(const ClassificationInput& in);

struct MinCovolume {
  Rational covolume;
  int delta0 = 1;
  std::string case_tag;
};

/// Minimum over the generic rows of classify; MinUndefined if there are none.
MinCovolume min_covolume(const ClassificationInput& in);
/// 2 / ((q+1) |Z(G)| delta0) with delta0 from the case table, independent of classify.
MinCovolume min_covolume_formula(const ClassificationInput& in);

/// Exceptional vertex groups in SL2(F_q) for PSL levi: (q, type) pairs.
struct ExceptionalCase {
  long long q;
  groups::GroupType type;
};
const std::vector<ExceptionalCase>& exceptional_cases();

// ---------------------------------------------------------------- constructors

enum class LatticeKind { CyclicP2, TorusNormalizer, Exceptional };
std::string to_string(LatticeKind k);
LatticeKind parse_lattice_kind(const std::string& s);

struct StandardLattice {
  LatticeKind kind = LatticeKind::CyclicP2;
  groups::GroupType type;  // vertex group type
  MatGroup a1, a2;
  Mat2 delta;
  Edge base;
};

/// A1 inside SL2(F_q) fixing x1, A2 = delta A1 delta^-1 with delta = diag(t, 1).
/// Exceptional subgroups are conjugated inside SL2 first so that A1 cap B
/// has the required shape. KindInadmissible when the kind does not apply.
StandardLattice build_standard_lattice(const Field& f, LatticeKind kind,
                                       std::optional<groups::GroupType> type = std::nullopt);

/// EdgeOfGroups with A0 = A1 cap A2 and inclusions.
EdgeOfGroups edge_of(const StandardLattice& l);
/// Abstract copy: A2 replaced by delta^-1 A2 delta, alpha2 = ad(delta^-1).
/// covering_check(abstract_edge(l), I, delta, l.base) recovers the lattice.
EdgeOfGroups abstract_edge(const StandardLattice& l);

/// SL2 specialization (|Z(G)| = gcd(2, q-1), PSL Levi quotient): input for the
/// field and the classify row matching a standard lattice, if any.
ClassificationInput sl2_input(const Field& f);
std::optional<LatticeDescriptor> sl2_row_for(const StandardLattice& l);

}  // namespace kmlat::lattice
