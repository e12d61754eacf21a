#include "kmlat/kmaction.hpp"

#include <cctype>
#include <sstream>

namespace kmlat::kmaction {

using serretree::Mat2;
using laurent::LaurentPoly;

KMParams::KMParams(int m_, const Field& f) : m(m_), field(&f) {
  if (m < 2) fail(ErrorCode::InvalidInput, "Cartan parameter m must be >= 2");
}

int simple_root(const RootIndex& r) {
  const bool even = r.depth % 2 == 0;
  if (r.side == 1) return even ? 1 : 2;
  return even ? 2 : 1;
}

namespace {

bool same_side(const RootIndex& r, Region region) {
  return (r.side == 1 && region == Region::Left) || (r.side == 2 && region == Region::Right);
}

[[noreturn]] void unsupported(const RootLetter& l, const EdgeLabel& e, const std::string& why) {
  fail(ErrorCode::UnsupportedActionDomain,
       "root (side " + std::to_string(l.root.side) + ", depth " + std::to_string(l.root.depth) +
           ") on edge " + to_string(e) + ": " + why);
}

}  // namespace

EdgeLabel apply_letter(const KMParams& params, const RootLetter& letter, const EdgeLabel& e,
                       PhiMode mode) {
  const Field& f = *params.field;
  const RootIndex& r = letter.root;
  if (r.side != 1 && r.side != 2) fail(ErrorCode::MalformedWord, "root side must be 1 or 2");
  if (r.depth < 0) fail(ErrorCode::MalformedWord, "root depth must be >= 0");
  if (e.region == Region::Base) return e;

  const int n = e.length();
  if (same_side(r, e.region)) {
    if (r.depth >= n) return e;
    EdgeLabel out = e;
    out.coords[r.depth] = f.add(out.coords[r.depth], letter.t);
    return out;
  }

  // Opposite side. Depth-0 roots fix the star of the far base vertex.
  if (r.depth == 0 && n <= 1) return e;
  const int rest = n - 2 - r.depth;
  if (rest < 0 || rest % 2 != 0) unsupported(letter, e, "length not of the form 2n+2+k");
  const int zeros = rest / 2;
  for (int i = 0; i < zeros; ++i) {
    if (e.coords[i] != 0) unsupported(letter, e, "leading coordinates are not zero");
  }
  const Elem pivot = e.coords[zeros];
  if (pivot == 0) return e;
  Elem shift = letter.t;
  if (mode == PhiMode::Twisted) shift = f.mul(f.pow(f.neg(pivot), params.m), letter.t);
  EdgeLabel out = e;
  out.coords.back() = f.add(out.coords.back(), shift);
  return out;
}

EdgeLabel apply_word(const KMParams& params, const KMWord& w, const EdgeLabel& e, PhiMode mode) {
  EdgeLabel cur = e;
  for (auto it = w.rbegin(); it != w.rend(); ++it) cur = apply_letter(params, *it, cur, mode);
  return cur;
}

KMWord inverse_word(const KMParams& params, const KMWord& w) {
  KMWord out(w.rbegin(), w.rend());
  for (auto& l : out) l.t = params.field->neg(l.t);
  return out;
}

namespace {

void check_alternating(const KMWord& z) {
  if (z.empty() || z.size() % 2 != 0) {
    fail(ErrorCode::MalformedWord, "z must consist of x1/x2 pairs");
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    const int want = i % 2 == 0 ? 1 : 2;
    if (z[i].root.side != want || z[i].root.depth != 0) {
      fail(ErrorCode::MalformedWord, "letter " + std::to_string(i + 1) + " should be x" +
                                         std::to_string(want) + " at depth 0");
    }
  }
}

bool zp_fixes_pairs(const KMParams& params, const KMWord& z, Region region) {
  const Field& f = *params.field;
  for (int u = 0; u < f.q(); ++u) {
    for (int v = 0; v < f.q(); ++v) {
      const EdgeLabel e{region, {static_cast<Elem>(u), static_cast<Elem>(v)}};
      EdgeLabel cur = e;
      for (int k = 0; k < f.p(); ++k) cur = apply_word(params, z, cur, PhiMode::Identity);
      if (cur != e) return false;
    }
  }
  return true;
}

}  // namespace

ZpResult zp_fix_test(const KMParams& params, const KMWord& z) {
  check_alternating(z);
  const Field& f = *params.field;
  ZpResult res;
  for (std::size_t i = 0; i < z.size(); ++i) {
    Elem& acc = i % 2 == 0 ? res.t1 : res.t2;
    acc = f.add(acc, z[i].t);
  }
  res.fixes_all_E = zp_fixes_pairs(params, z, Region::Left);
  return res;
}

bool zp_fixes_right_pairs(const KMParams& params, const KMWord& z) {
  check_alternating(z);
  return zp_fixes_pairs(params, z, Region::Right);
}

bool zp_fixes_ball2(const KMParams& params, const KMWord& z) {
  check_alternating(z);
  const Field& f = *params.field;
  std::vector<EdgeLabel> edges{EdgeLabel{}};
  for (Region region : {Region::Left, Region::Right}) {
    for (int u = 0; u < f.q(); ++u) {
      edges.push_back({region, {static_cast<Elem>(u)}});
      for (int v = 0; v < f.q(); ++v) edges.push_back({region, {static_cast<Elem>(u), static_cast<Elem>(v)}});
    }
  }
  for (const auto& e : edges) {
    EdgeLabel cur = e;
    for (int k = 0; k < f.p(); ++k) cur = apply_word(params, z, cur, PhiMode::Identity);
    if (cur != e) return false;
  }
  return true;
}

ZpSweep zp_sweep(const KMParams& params, int max_pairs, std::size_t keep) {
  if (max_pairs < 1 || max_pairs > 4) fail(ErrorCode::InvalidInput, "pairs must be in 1..4");
  const Field& f = *params.field;
  ZpSweep out;
  out.q = f.q();
  out.max_pairs = max_pairs;
  for (int pairs = 1; pairs <= max_pairs; ++pairs) {
    const int len = 2 * pairs;
    std::vector<int> digits(len, 0);
    while (true) {
      KMWord z;
      for (int i = 0; i < len; ++i) z.push_back({{i % 2 == 0 ? 1 : 2, 0}, static_cast<Elem>(digits[i])});
      const ZpResult r = zp_fix_test(params, z);
      ++out.checked;
      if (r.fixes_all_E == (r.t2 == 0)) {
        ++out.agreements;
      } else if (out.disagreements.size() < keep) {
        out.disagreements.push_back(z);
      }
      if (r.fixes_all_E == (r.t1 == 0 || r.t2 == 0)) ++out.corrected_agreements;
      const bool ball = zp_fixes_ball2(params, z);
      if (ball == (r.t1 == 0 && r.t2 == 0)) ++out.ball_agreements;
      if (ball == (r.t1 == 0 || r.t2 == 0)) ++out.ball_corrected_agreements;
      int i = len - 1;
      while (i >= 0 && digits[i] == f.q() - 1) digits[i--] = 0;
      if (i < 0) break;
      ++digits[i];
    }
  }
  return out;
}

BallCertificate fixed_ball_certificate(const KMParams&, const RootIndex& root) {
  BallCertificate c;
  const int other = 3 - root.side;
  const int k = root.depth;
  // The far vertex of the depth-k apartment gallery on the other side.
  const int vertex_type = k % 2 == 0 ? other : root.side;
  std::ostringstream v;
  v << "(w" << other << ",w" << root.side << ";" << k << ")P" << vertex_type;
  c.vertex = v.str();
  c.radius = k + 1;
  std::ostringstream note;
  note << "also fixes every side-" << root.side << " edge of length <= " << k;
  if (k == 0) note << "; for each n >= 0 the ball of radius n+1 about (w" << other << ",w"
                   << root.side << ";n)P is fixed";
  c.note = note.str();
  return c;
}

Mat2 root_matrix(const Field& f, int simple, Elem u) {
  const LaurentPoly zero(f), one = LaurentPoly::constant(f, 1);
  if (simple == 1) return {one, LaurentPoly::constant(f, u), zero, one};
  return {one, zero, LaurentPoly::monomial(f, u, 1), one};
}

Mat2 negative_root_matrix(const Field& f, int simple, Elem u) {
  const LaurentPoly zero(f), one = LaurentPoly::constant(f, 1);
  if (simple == 1) return {one, zero, LaurentPoly::constant(f, u), one};
  return {one, LaurentPoly::monomial(f, u, -1), zero, one};
}

Mat2 weyl_matrix(const Field& f, int simple) {
  const Elem minus_one = f.neg(1);
  return root_matrix(f, simple, 1) * negative_root_matrix(f, simple, minus_one) *
         root_matrix(f, simple, 1);
}

Mat2 edge_word_matrix(const Field& f, const EdgeLabel& e) {
  Mat2 g = Mat2::identity(f);
  if (e.region == Region::Base) return g;
  int simple = e.region == Region::Left ? 1 : 2;
  for (Elem c : e.coords) {
    g = g * root_matrix(f, simple, c) * weyl_matrix(f, simple);
    simple = 3 - simple;
  }
  return g;
}

serretree::Edge realize_edge(const Field& f, const EdgeLabel& e) {
  return serretree::act(edge_word_matrix(f, e), serretree::base_edge(f));
}

bool crosscheck_affine(const KMParams& params, const KMWord& w, const EdgeLabel& e, PhiMode mode) {
  if (params.m != 2) fail(ErrorCode::InvalidInput, "affine cross-check needs m = 2");
  if (e.length() > kMaxCrosscheckRadius) {
    fail(ErrorCode::RadiusExceeded, "edge length " + std::to_string(e.length()) + " exceeds " +
                                        std::to_string(kMaxCrosscheckRadius));
  }
  const Field& f = *params.field;
  const EdgeLabel image = apply_word(params, w, e, mode);
  if (image.length() > kMaxCrosscheckRadius) fail(ErrorCode::RadiusExceeded, "image edge too long");
  Mat2 g = Mat2::identity(f);
  for (const auto& l : w) {
    if (l.root.depth != 0) fail(ErrorCode::InvalidInput, "affine cross-check takes depth-0 letters");
    g = g * root_matrix(f, l.root.side, l.t);
  }
  const serretree::Edge exact = serretree::act(g, realize_edge(f, e));
  return serretree::same_edge(exact, realize_edge(f, image));
}

std::string to_string(const EdgeLabel& e) {
  if (e.region == Region::Base) return "base";
  std::string s = e.region == Region::Left ? "L:" : "R:";
  for (std::size_t i = 0; i < e.coords.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(e.coords[i]);
  }
  return s;
}

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  }
  return out;
}

long long to_int(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (s.empty() || pos != s.size()) fail(ErrorCode::ParseError, "bad integer '" + s + "' in " + what);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

EdgeLabel parse_edge(const Field& f, const std::string& text) {
  const std::string s = strip(text);
  if (s == "base" || s == "B") return {};
  if (s.size() < 2 || (s[0] != 'L' && s[0] != 'R') || s[1] != ':') {
    fail(ErrorCode::ParseError, "edge '" + text + "' must be base, L:... or R:...");
  }
  EdgeLabel e;
  e.region = s[0] == 'L' ? Region::Left : Region::Right;
  const std::string body = s.substr(2);
  if (body.empty()) return EdgeLabel{};
  for (const auto& part : split(body, ',')) e.coords.push_back(f.parse(to_int(part, text)));
  return e;
}

std::string to_string(const KMWord& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ',';
    s += "x" + std::to_string(w[i].root.side);
    if (w[i].root.depth != 0) s += "." + std::to_string(w[i].root.depth);
    s += ":" + std::to_string(w[i].t);
  }
  return s;
}

KMWord parse_word(const Field& f, const std::string& text) {
  const std::string s = strip(text);
  KMWord w;
  if (s.empty()) return w;
  for (const auto& part : split(s, ',')) {
    const auto colon = part.find(':');
    if (part.size() < 4 || part[0] != 'x' || colon == std::string::npos) {
      fail(ErrorCode::ParseError, "letter '" + part + "' must look like x1:3 or x1.2:3");
    }
    const std::string head = part.substr(1, colon - 1);
    RootLetter l;
    const auto dot = head.find('.');
    l.root.side = static_cast<int>(to_int(head.substr(0, dot), text));
    l.root.depth = dot == std::string::npos ? 0 : static_cast<int>(to_int(head.substr(dot + 1), text));
    if (l.root.side != 1 && l.root.side != 2) fail(ErrorCode::ParseError, "side must be 1 or 2 in '" + part + "'");
    if (l.root.depth < 0) fail(ErrorCode::ParseError, "negative depth in '" + part + "'");
    l.t = f.parse(to_int(part.substr(colon + 1), text));
    w.push_back(l);
  }
  return w;
}

}  // namespace kmlat::kmaction
