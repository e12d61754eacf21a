#include "kmlat/serretree.hpp"

#include <algorithm>
#include <sstream>

namespace kmlat::serretree {

using laurent::kInfinity;
using laurent::valuation;

Mat2 Mat2::identity(const Field& f) { return constant(f, 1, 0, 0, 1); }

Mat2 Mat2::constant(const Field& f, Elem a, Elem b, Elem c, Elem d) {
  return {LaurentPoly::constant(f, a), LaurentPoly::constant(f, b), LaurentPoly::constant(f, c),
          LaurentPoly::constant(f, d)};
}

Mat2 Mat2::diag(const LaurentPoly& x, const LaurentPoly& y) {
  LaurentPoly zero(x.field());
  return {x, zero, zero, y};
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

LaurentPoly Mat2::det() const { return a * d - b * c; }

Mat2 Mat2::inverse() const {
  const LaurentPoly dt = det();
  if (!dt.is_monomial()) {
    fail(ErrorCode::NonInvertible, "determinant " + laurent::to_string(dt) + " is not a monomial");
  }
  const auto [deg, coef] = dt.terms().front();
  const Elem ci = field().inv(coef);
  auto fix = [&](const LaurentPoly& x) { return x.scale(ci).shift(-deg); };
  return {fix(d), fix(-b), fix(-c), fix(a)};
}

bool Mat2::is_identity() const { return a.is_one() && d.is_one() && b.is_zero() && c.is_zero(); }

bool Mat2::operator<(const Mat2& o) const {
  if (a != o.a) return a < o.a;
  if (b != o.b) return b < o.b;
  if (c != o.c) return c < o.c;
  return d < o.d;
}

std::size_t Mat2::hash() const {
  std::size_t h = a.hash();
  for (const LaurentPoly* x : {&b, &c, &d}) h = h * 1000003u ^ x->hash();
  return h;
}

std::string to_string(const Mat2& m) {
  return laurent::to_string(m.a) + "," + laurent::to_string(m.b) + ";" +
         laurent::to_string(m.c) + "," + laurent::to_string(m.d);
}

Mat2 parse_matrix(const Field& f, const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos || text.find(';', semi + 1) != std::string::npos) {
    fail(ErrorCode::ParseError, "matrix '" + text + "' must look like a,b;c,d");
  }
  auto split_row = [&](const std::string& row) {
    const auto comma = row.find(',');
    if (comma == std::string::npos || row.find(',', comma + 1) != std::string::npos) {
      fail(ErrorCode::ParseError, "matrix row '" + row + "' must have two entries");
    }
    return std::make_pair(laurent::parse(f, row.substr(0, comma)),
                          laurent::parse(f, row.substr(comma + 1)));
  };
  auto [a, b] = split_row(text.substr(0, semi));
  auto [c, d] = split_row(text.substr(semi + 1));
  return {a, b, c, d};
}

bool membership(const Mat2& m, ParahoricKind kind) {
  const int va = valuation(m.a), vb = valuation(m.b), vc = valuation(m.c), vd = valuation(m.d);
  switch (kind.tag) {
    case Parahoric::P1:
      return va >= 0 && vb >= 0 && vc >= 0 && vd >= 0;
    case Parahoric::P2:
      // [[a, t b'], [pi c', d]] with [[a, b'], [c', d]] integral
      return va >= 0 && vd >= 0 && vb >= -1 && vc >= 1;
    case Parahoric::B:
      return va >= 0 && vb >= 0 && vc >= 1 && vd >= 0;
    case Parahoric::U: {
      const Field& f = m.field();
      const LaurentPoly one = LaurentPoly::constant(f, 1);
      for (const LaurentPoly& x : {m.a - one, m.b, m.c, m.d - one}) {
        if (!laurent::reduce_mod(x, kind.n).is_zero_to_precision()) return false;
      }
      return true;
    }
  }
  return false;
}

std::pair<int, int> elementary_divisor_valuations(const Mat2& m) {
  const LaurentPoly dt = m.det();
  if (dt.is_zero()) fail(ErrorCode::ZeroDeterminant, "matrix " + to_string(m) + " is singular");
  const int r = std::min({valuation(m.a), valuation(m.b), valuation(m.c), valuation(m.d)});
  return {r, valuation(dt) - r};
}

Vertex base_vertex1(const Field& f) { return {Mat2::identity(f)}; }

Vertex base_vertex2(const Field& f) {
  return {Mat2::diag(LaurentPoly::constant(f, 1), LaurentPoly::pi(f))};
}

Edge base_edge(const Field& f) { return {base_vertex1(f), base_vertex2(f)}; }

Mat2 delta(const Field& f) { return Mat2::diag(LaurentPoly::t(f), LaurentPoly::constant(f, 1)); }

int vertex_distance(const Vertex& u, const Vertex& v) {
  const auto [r, s] = elementary_divisor_valuations(u.rep.inverse() * v.rep);
  return s - r;
}

bool same_vertex(const Vertex& u, const Vertex& v) { return vertex_distance(u, v) == 0; }

bool same_edge(const Edge& e, const Edge& f) {
  return same_vertex(e.from, f.from) && same_vertex(e.to, f.to);
}

int edge_distance(const Edge& e, const Edge& f) {
  if (same_edge(e, f)) return 0;
  const int d = std::min({vertex_distance(e.from, f.from), vertex_distance(e.from, f.to),
                          vertex_distance(e.to, f.from), vertex_distance(e.to, f.to)});
  return d + 1;
}

std::vector<Vertex> neighbors(const Vertex& v) {
  const Field& f = v.rep.field();
  std::vector<Vertex> out;
  out.reserve(f.q() + 1);
  const LaurentPoly zero(f), one = LaurentPoly::constant(f, 1), pi = LaurentPoly::pi(f);
  for (int j = 0; j < f.q(); ++j) {
    const Mat2 n{pi, LaurentPoly::constant(f, static_cast<Elem>(j)), zero, one};
    out.push_back({v.rep * n});
  }
  out.push_back({v.rep * Mat2::diag(one, pi)});
  return out;
}

int neighbor_index(const Vertex& v, const Vertex& w) {
  const Mat2 t = v.rep.inverse() * w.rep;
  const auto [r, s] = elementary_divisor_valuations(t);
  if (s - r != 1) return -1;
  // Scale to an integral matrix of minimal valuation 0; its reduction mod pi
  // has rank one and its column space is the line that names the neighbour.
  const Elem a = t.a.coeff(r), b = t.b.coeff(r), c = t.c.coeff(r), d = t.d.coeff(r);
  const Field& f = v.rep.field();
  Elem x = a, y = c;
  if (x == 0 && y == 0) {
    x = b;
    y = d;
  }
  if (y == 0) return f.q();
  return f.div(x, y);
}

Vertex act(const Mat2& g, const Vertex& v) { return {g * v.rep}; }

Edge act(const Mat2& g, const Edge& e) { return {act(g, e.from), act(g, e.to)}; }

std::string to_string(InvolutionRegion r) {
  switch (r) {
    case InvolutionRegion::B: return "B";
    case InvolutionRegion::P1minusB: return "P1-B";
    case InvolutionRegion::P2minusB: return "P2-B";
  }
  return "?";
}

namespace {

// All polynomials with support in [lo, hi]; if lead_nonzero, the degree-lo
// coefficient is nonzero.
std::vector<LaurentPoly> polys_in_range(const Field& f, int lo, int hi, bool lead_nonzero) {
  std::vector<LaurentPoly> out;
  if (hi < lo) {
    if (!lead_nonzero) out.emplace_back(f);
    return out;
  }
  const int slots = hi - lo + 1;
  std::vector<Elem> digits(slots, 0);
  while (true) {
    if (!lead_nonzero || digits[0] != 0) {
      std::vector<LaurentPoly::Term> terms;
      for (int i = 0; i < slots; ++i) {
        if (digits[i] != 0) terms.emplace_back(lo + i, digits[i]);
      }
      out.push_back(LaurentPoly::from_terms(f, terms));
    }
    int i = slots - 1;
    while (i >= 0 && digits[i] == f.q() - 1) digits[i--] = 0;
    if (i < 0) break;
    ++digits[i];
  }
  return out;
}

}  // namespace

std::vector<Mat2> involution_families(const Field& f, InvolutionRegion region, int window) {
  if (f.p() != 2) fail(ErrorCode::OddCharacteristic, "involution families need p = 2");
  if (window < 0 || window > kMaxInvolutionWindow) {
    fail(ErrorCode::WindowTooLarge, "window " + std::to_string(window) + " outside 0.." +
                                        std::to_string(kMaxInvolutionWindow));
  }
  // Entry ranges implied by the region inside the window: B needs v(a), v(b) >= 0,
  // v(c) >= 1; P1-B has v(c) = 0; P2-B has v(b) = -1 and v(c) >= 1.
  std::vector<LaurentPoly> as = polys_in_range(f, 0, window, false), bs, cs;
  switch (region) {
    case InvolutionRegion::B:
      bs = polys_in_range(f, 0, window, false);
      cs = polys_in_range(f, 1, window, false);
      break;
    case InvolutionRegion::P1minusB:
      bs = polys_in_range(f, 0, window, false);
      cs = polys_in_range(f, 0, window, true);
      break;
    case InvolutionRegion::P2minusB:
      bs = polys_in_range(f, -1, window, true);
      cs = polys_in_range(f, 1, window, false);
      break;
  }
  if (static_cast<double>(as.size()) * bs.size() * cs.size() > 1e8) {
    fail(ErrorCode::WindowTooLarge, "window " + std::to_string(window) + " too large for q=" +
                                        std::to_string(f.q()));
  }
  const ParahoricKind kb{Parahoric::B, 0}, k1{Parahoric::P1, 0}, k2{Parahoric::P2, 0};
  const LaurentPoly one = LaurentPoly::constant(f, 1);
  std::vector<Mat2> out;
  for (const auto& a : as) {
    const LaurentPoly a2 = a * a;
    for (const auto& b : bs) {
      for (const auto& c : cs) {
        if (b.is_zero() && c.is_zero()) continue;
        if (a2 + b * c != one) continue;
        Mat2 m{a, b, c, a};
        bool keep = false;
        switch (region) {
          case InvolutionRegion::B: keep = membership(m, kb); break;
          case InvolutionRegion::P1minusB: keep = membership(m, k1) && !membership(m, kb); break;
          case InvolutionRegion::P2minusB: keep = membership(m, k2) && !membership(m, kb); break;
        }
        if (keep) out.push_back(std::move(m));
      }
    }
  }
  return out;
}

bool involution_conjugation_identity(const Mat2& m, const Mat2& g) {
  const LaurentPoly &a = m.a, &b = m.b, &c = m.c, &e = g.a, &f = g.b, &h = g.c;
  const LaurentPoly diag = a + b * e * h + c * e * f;
  const Mat2 expected{diag, b * e * e + c * f * f, b * h * h + c * e * e, diag};
  return g * m * g == expected;
}

DihedralReport dihedral_obstruction_search(const Field& f, int window) {
  DihedralReport rep;
  rep.q = f.q();
  rep.window = window;
  const auto bset = involution_families(f, InvolutionRegion::B, window);
  const auto p1set = involution_families(f, InvolutionRegion::P1minusB, window);
  const auto p2set = involution_families(f, InvolutionRegion::P2minusB, window);
  rep.b_count = bset.size();
  rep.p1_count = p1set.size();
  rep.p2_count = p2set.size();
  rep.triples_checked = bset.size() * p1set.size() * p2set.size();
  const ParahoricKind kb{Parahoric::B, 0}, k1{Parahoric::P1, 0}, k2{Parahoric::P2, 0};
  for (const auto& rho : bset) {
    std::vector<const Mat2*> good1, good2;
    for (const auto& g : p1set) {
      const Mat2 x = g * rho * g;
      if (membership(x, k1) && !membership(x, kb)) good1.push_back(&g);
    }
    if (good1.empty()) continue;
    for (const auto& g : p2set) {
      const Mat2 x = g * rho * g;
      if (membership(x, k2) && !membership(x, kb)) good2.push_back(&g);
    }
    for (const Mat2* g1 : good1) {
      for (const Mat2* g2 : good2) rep.violations.push_back({rho, *g1, *g2});
    }
  }
  return rep;
}

}  // namespace kmlat::serretree
