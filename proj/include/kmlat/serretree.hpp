#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kmlat/laurent.hpp"

namespace kmlat::serretree {

using laurent::LaurentPoly;
using gf::Elem;
using gf::Field;

/// 2x2 matrix [[a, b], [c, d]] over F_q[t, t^-1].
struct Mat2 {
  LaurentPoly a, b, c, d;

  static Mat2 identity(const Field& f);
  static Mat2 constant(const Field& f, Elem a, Elem b, Elem c, Elem d);
  static Mat2 diag(const LaurentPoly& x, const LaurentPoly& y);

  const Field& field() const { return a.field(); }
  Mat2 operator*(const Mat2& o) const;
  LaurentPoly det() const;
  /// Adjugate divided by det; det must be a nonzero monomial.
  Mat2 inverse() const;
  Mat2 conjugate_by(const Mat2& g) const { return g * *this * g.inverse(); }
  bool is_identity() const;

  bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  bool operator!=(const Mat2& o) const { return !(*this == o); }
  bool operator<(const Mat2& o) const;
  std::size_t hash() const;
};

struct Mat2Hash {
  std::size_t operator()(const Mat2& m) const { return m.hash(); }
};

/// "a,b;c,d" with entries in the laurent text form.
std::string to_string(const Mat2& m);
Mat2 parse_matrix(const Field& f, const std::string& text);

enum class Parahoric { P1, P2, B, U };
struct ParahoricKind {
  Parahoric tag = Parahoric::P1;
  int n = 1;  // level, used by U only
};

bool membership(const Mat2& m, ParahoricKind kind);

/// (r, s): r = least entry valuation, s = v(det) - r.
std::pair<int, int> elementary_divisor_valuations(const Mat2& m);

/// Lattice class [rep * O^2].
struct Vertex {
  Mat2 rep;
};

struct Edge {
  Vertex from, to;
};

Vertex base_vertex1(const Field& f);  // [I]
Vertex base_vertex2(const Field& f);  // [diag(1, pi)]
Edge base_edge(const Field& f);
/// diag(t, 1)
Mat2 delta(const Field& f);

int vertex_distance(const Vertex& u, const Vertex& v);
bool same_vertex(const Vertex& u, const Vertex& v);
bool same_edge(const Edge& e, const Edge& f);
/// 0 for equal edges, otherwise 1 + least distance between endpoints.
int edge_distance(const Edge& e, const Edge& f);

/// rep * [[pi, j], [0, 1]] for j = 0..q-1 in element order, then rep * diag(1, pi).
std::vector<Vertex> neighbors(const Vertex& v);
/// Position of w in neighbors(v), or -1 if w is not adjacent to v.
int neighbor_index(const Vertex& v, const Vertex& w);

Vertex act(const Mat2& g, const Vertex& v);
Edge act(const Mat2& g, const Edge& e);

// Characteristic 2 involutions [[a, b], [c, a]] with a^2 + bc = 1.
enum class InvolutionRegion { B, P1minusB, P2minusB };
std::string to_string(InvolutionRegion r);

/// Entries range over all Laurent polynomials with pi-degrees in
/// [-window, window]; each involution is kept iff it lies in the region.
std::vector<Mat2> involution_families(const Field& f, InvolutionRegion region, int window);

struct DihedralTriple {
  Mat2 rho0, gamma1, gamma2;
};

struct DihedralReport {
  int q = 0;
  int window = 0;
  std::size_t b_count = 0, p1_count = 0, p2_count = 0;
  std::size_t triples_checked = 0;
  std::vector<DihedralTriple> violations;
};

/// Triples (rho0 in B, gamma1 in P1-B, gamma2 in P2-B) of involutions with
/// gamma1 rho0 gamma1 in P1-B and gamma2 rho0 gamma2 in P2-B.
DihedralReport dihedral_obstruction_search(const Field& f, int window);

/// For involutions m = [[a, b], [c, a]] and g = [[e, f], [h, e]] in
/// characteristic 2: g m g equals
/// [[a + beh + cef, be^2 + cf^2], [bh^2 + ce^2, a + beh + cef]].
bool involution_conjugation_identity(const Mat2& m, const Mat2& g);

constexpr int kMaxInvolutionWindow = 3;

}  // namespace kmlat::serretree
