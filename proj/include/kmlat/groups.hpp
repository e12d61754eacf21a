#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "kmlat/serretree.hpp"

namespace kmlat::groups {

using gf::Elem;
using gf::Field;

constexpr std::size_t kDefaultCap = 1000000;

/// Constant 2x2 matrix over F_q.
struct CMat {
  Elem a = 1, b = 0, c = 0, d = 1;
  bool operator==(const CMat& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  bool operator!=(const CMat& o) const { return !(*this == o); }
};

/// Arithmetic on constant matrices; keys order elements lexicographically in (a, b, c, d).
class MatOps {
 public:
  explicit MatOps(const Field& f) : f_(&f) {}
  const Field& field() const { return *f_; }
  CMat mul(const CMat& x, const CMat& y) const;
  Elem det(const CMat& x) const;
  CMat inv(const CMat& x) const;  // requires det != 0
  CMat neg(const CMat& x) const;
  CMat identity() const { return {}; }
  int order(const CMat& x) const;
  Elem trace(const CMat& x) const { return f_->add(x.a, x.d); }
  std::uint64_t key(const CMat& x) const;
  serretree::Mat2 to_mat2(const CMat& x) const;
  /// Inverse of to_mat2; the matrix must have constant entries.
  CMat from_mat2(const serretree::Mat2& m) const;

 private:
  const Field* f_;
};

/// Finite subgroup of SL2(F_q), elements sorted by key.
struct FiniteGroup {
  const Field* field = nullptr;
  std::vector<CMat> elements;
  std::vector<CMat> generators;

  std::size_t order() const { return elements.size(); }
  bool contains(const CMat& x) const;
};

/// Smallest subgroup containing gens; SizeCapExceeded past cap elements.
FiniteGroup closure(const Field& f, const std::vector<CMat>& gens, std::size_t cap = kDefaultCap);
/// Same, but returns nullopt as soon as more than limit elements appear.
std::optional<FiniteGroup> closure_bounded(const Field& f, const std::vector<CMat>& gens,
                                           std::size_t limit);
/// Group from an element list that is already closed (checked).
FiniteGroup from_elements(const Field& f, std::vector<CMat> elements);

/// All of SL2(F_q) in key order.
std::vector<CMat> sl2_elements(const Field& f);

FiniteGroup center(const FiniteGroup& g);
bool is_subgroup(const FiniteGroup& h, const FiniteGroup& g);
bool is_normal(const FiniteGroup& h, const FiniteGroup& g);
FiniteGroup intersection(const FiniteGroup& h, const FiniteGroup& k);
/// [G : H]; NotASubgroup unless H <= G.
std::size_t index(const FiniteGroup& h, const FiniteGroup& g);
/// The only element of order 2, if there is exactly one.
std::optional<CMat> unique_involution(const FiniteGroup& g);
/// Element order -> count.
std::map<int, int> order_profile(const FiniteGroup& g);
bool is_abelian(const FiniteGroup& g);
bool is_cyclic(const FiniteGroup& g);

/// Multiplication by the norm-one elements of F_{q^2} in the basis {1, w}.
FiniteGroup nonsplit_torus(const Field& f);
/// Element of order q+1 generating the torus.
CMat torus_generator(const Field& f);
/// Torus plus the first element (key order) inverting its generator. p odd.
FiniteGroup torus_normalizer(const Field& f);

struct GroupType {
  enum class Tag {
    Cyclic,
    Dihedral,
    Dicyclic,
    SL2_3,
    SL2_5,
    BinaryOctahedral2S4,
    S4,
    A4,
    A5,
    TorusNormalizer,
    BorelFrobenius,
    ElementaryAbelian,
    PSL2,
    PGL2,
    SL2,
    DoublePGL2,
    Unknown,
  };
  Tag tag = Tag::Unknown;
  long long param = 0;  // order for Cyclic/Dihedral/Dicyclic/Borel/ElementaryAbelian/Unknown,
                        // the field order q' for PSL2/PGL2/SL2/DoublePGL2/TorusNormalizer

  std::string name() const;
  long long order() const;
  bool operator==(const GroupType& o) const { return tag == o.tag && param == o.param; }
  bool operator!=(const GroupType& o) const { return !(*this == o); }

  static GroupType cyclic(long long n) { return {Tag::Cyclic, n}; }
  static GroupType dihedral(long long n) { return {Tag::Dihedral, n}; }
  static GroupType dicyclic(long long n) { return {Tag::Dicyclic, n}; }
  static GroupType of(Tag t, long long param = 0) { return {t, param}; }
};

/// Parses "SL2(3)", "SL2(5)", "2S4", "C9", "D18", ...
GroupType parse_group_type(const std::string& s);

GroupType recognize(const FiniteGroup& g);

/// Deterministic generator-pair search inside SL2(F_q) for SL2(3), SL2(5) or
/// 2S4. q odd and at most 64. NotFound is exhaustive.
FiniteGroup find_subgroup_of_type(const Field& f, GroupType type);

enum class Ambient { SL2, PSL2, PGL2 };
std::string to_string(Ambient a);
Ambient parse_ambient(const std::string& s);

struct DicksonEntry {
  GroupType type;
  long long order = 0;
  bool divisible_by_q_plus_1 = false;
  std::string source;
  /// PGL2 ambient only: whether the class lies inside PSL2.
  std::optional<bool> inside_psl2;
};

/// Proper subgroup types admitted by Dickson's classification.
std::vector<DicksonEntry> dickson_table(const Field& f, Ambient ambient);

/// Generic breadth-first closure for any group element type.
template <class T, class Hash, class Eq = std::equal_to<T>, class Mul>
std::optional<std::vector<T>> closure_generic(const T& identity, const std::vector<T>& gens, Mul mul,
                                              std::size_t limit) {
  std::unordered_map<T, char, Hash, Eq> seen;
  std::vector<T> out{identity};
  seen.emplace(identity, 1);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const T& g : gens) {
      T x = mul(out[i], g);
      if (seen.emplace(x, 1).second) {
        out.push_back(std::move(x));
        if (out.size() > limit) return std::nullopt;
      }
    }
  }
  return out;
}

}  // namespace kmlat::groups
