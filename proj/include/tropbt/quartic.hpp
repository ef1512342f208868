#pragma once

// Quartic input parsing and regular Newton subdivisions from coefficient
// valuations. The subdivision code is degree-generic (tropical lines and
// conics reuse it); the parser and smoothness check are quartic-specific.

#include <tropbt/common.hpp>
#include <tropbt/residue.hpp>

#include <algorithm>
#include <array>
#include <sstream>
#include <string>
#include <vector>

namespace tropbt {

struct PuiseuxCoeff {
  Q valuation;
  bool symbolic = false;  // initial is the symbol a_ij
  Q initial = 1;          // concrete initial when symbolic == false
};

struct QuarticInput {
  std::map<IPt, PuiseuxCoeff> coeffs;

  const PuiseuxCoeff& at(const IPt& s) const {
    auto it = coeffs.find(s);
    require(it != coeffs.end(), "MissingCoefficient",
            "no coefficient for " + to_string(s));
    return it->second;
  }

  // Heights for the upper-hull construction: h = -val.
  std::map<IPt, Q> heights() const {
    std::map<IPt, Q> h;
    for (const auto& [s, c] : coeffs) h[s] = -c.valuation;
    return h;
  }

  bool has_symbolic() const {
    for (const auto& [s, c] : coeffs)
      if (c.symbolic) return true;
    return false;
  }

  // Bindings for the concrete initials (symbolic ones are absent).
  InitialAssignment concrete_assignment() const {
    InitialAssignment a;
    for (const auto& [s, c] : coeffs)
      if (!c.symbolic) a.values[s] = c.initial;
    return a;
  }

  // The initial of coefficient s as a symbolic expression: the symbol a_ij
  // when marked "sym", else its concrete rational constant.
  SquareClassExpr initial_expr(const IPt& s) const {
    const PuiseuxCoeff& c = at(s);
    if (c.symbolic) return SquareClassExpr::symbol(s.i, s.j);
    return SquareClassExpr::constant(c.initial);
  }
};

// ----------------------------------------------------------------------
// Parsing. Line format: `A i j valuation initial`, '#' comments.

namespace detail {
inline bool parse_rational(const std::string& tok, Q& out) {
  // Accept "n", "-n", "n/d" with d > 0.
  if (tok.empty()) return false;
  try {
    mpq_class v(tok);
    v.canonicalize();
    if (v.get_den() <= 0) return false;
    out = v;
    return true;
  } catch (...) {
    return false;
  }
}
}  // namespace detail

inline QuarticInput parse_quartic(const std::string& text) {
  QuarticInput q;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;  // blank
    require(tag == "A", "MalformedLine", "line " + std::to_string(lineno) + ": expected 'A'");
    int i, j;
    std::string valtok, initok;
    require(static_cast<bool>(ls >> i >> j >> valtok >> initok), "MalformedLine",
            "line " + std::to_string(lineno) + ": expected 'A i j valuation initial'");
    std::string extra;
    require(!(ls >> extra), "MalformedLine",
            "line " + std::to_string(lineno) + ": trailing tokens");
    require(i >= 0 && j >= 0 && i + j <= 4, "MalformedLine",
            "line " + std::to_string(lineno) + ": exponent outside the quartic triangle");
    IPt s{i, j};
    require(q.coeffs.find(s) == q.coeffs.end(), "MalformedLine",
            "line " + std::to_string(lineno) + ": duplicate coefficient " + to_string(s));
    PuiseuxCoeff c;
    require(detail::parse_rational(valtok, c.valuation), "MalformedLine",
            "line " + std::to_string(lineno) + ": bad valuation '" + valtok + "'");
    if (initok == "sym") {
      c.symbolic = true;
    } else {
      require(detail::parse_rational(initok, c.initial), "MalformedLine",
              "line " + std::to_string(lineno) + ": bad initial '" + initok + "'");
      require(c.initial != 0, "ZeroInitial", "coefficient " + to_string(s));
    }
    q.coeffs[s] = c;
  }
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; i + j <= 4; ++j) {
      require(q.coeffs.count({i, j}) != 0, "MissingCoefficient",
              "coefficient " + to_string(IPt{i, j}) + " absent");
    }
  }
  return q;
}

// ----------------------------------------------------------------------
// Regular subdivision induced by heights (upper faces).

struct RegularSubdivision {
  // Each face: vertex list, counterclockwise, starting at the lexicographic
  // minimum; faces sorted lexicographically by sorted vertex list.
  std::vector<std::vector<IPt>> faces;
  std::map<IPt, Q> heights;
  int degree = 4;
};

namespace detail {

// Counterclockwise hull of a set of coplanar-lift lattice points,
// starting at the lexicographic minimum. Keeps only extreme points.
inline std::vector<IPt> hull_ccw(std::vector<IPt> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  // Andrew monotone chain (strict turns: collinear midpoints dropped).
  std::vector<IPt> lo, hi;
  for (const IPt& p : pts) {
    while (lo.size() >= 2 && icross(lo.back() - lo[lo.size() - 2], p - lo.back()) <= 0) lo.pop_back();
    lo.push_back(p);
  }
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (hi.size() >= 2 && icross(hi.back() - hi[hi.size() - 2], *it - hi.back()) <= 0) hi.pop_back();
    hi.push_back(*it);
  }
  lo.pop_back();
  hi.pop_back();
  lo.insert(lo.end(), hi.begin(), hi.end());
  // Rotate so the lexicographic minimum is first (monotone chain already
  // starts there, but keep it robust).
  auto mn = std::min_element(lo.begin(), lo.end());
  std::rotate(lo.begin(), mn, lo.end());
  return lo;
}

}  // namespace detail

// Upper-face subdivision of the point set supp(heights). The algorithm
// enumerates supporting planes through lifted point triples, keeps those
// with every lifted point weakly below, and reads each maximal face off
// its plane. A constant shift of all heights cancels out.
inline RegularSubdivision newton_subdivision_of(const std::map<IPt, Q>& heights, int degree) {
  std::vector<IPt> pts;
  for (const auto& [s, h] : heights) pts.push_back(s);
  const int n = static_cast<int>(pts.size());
  require(n >= 3, "WrongDegree", "need at least three support points");

  auto h = [&](const IPt& s) { return heights.at(s); };

  RegularSubdivision sub;
  sub.heights = heights;
  sub.degree = degree;

  std::vector<std::vector<IPt>> faces;
  std::vector<std::array<Q, 3>> planes;  // z = a*x + b*y + c, deduped

  for (int ia = 0; ia < n; ++ia) {
    for (int ib = ia + 1; ib < n; ++ib) {
      for (int ic = ib + 1; ic < n; ++ic) {
        const IPt&A = pts[ia];
        const IPt&B = pts[ib];
        const IPt&C = pts[ic];
        long det = icross(B - A, C - A);
        if (det == 0) continue;  // collinear projection: spans no plane
        // Solve a*Ai + b*Aj + c = h(A) etc. by Cramer.
        Q dq(det);
        Q a = ((h(B) - h(A)) * (C.j - A.j) - (h(C) - h(A)) * (B.j - A.j)) / dq;
        Q b = ((B.i - A.i) * (h(C) - h(A)) - (C.i - A.i) * (h(B) - h(A))) / dq;
        Q c = h(A) - a * A.i - b * A.j;
        bool upper = true;
        for (const IPt& p : pts) {
          if (h(p) > a * p.i + b * p.j + c) { upper = false; break; }
        }
        if (!upper) continue;
        bool seen = false;
        for (const auto& pl : planes) {
          if (pl[0] == a && pl[1] == b && pl[2] == c) { seen = true; break; }
        }
        if (seen) continue;
        planes.push_back({a, b, c});
        std::vector<IPt> on;
        for (const IPt& p : pts) {
          if (h(p) == a * p.i + b * p.j + c) on.push_back(p);
        }
        faces.push_back(detail::hull_ccw(std::move(on)));
      }
    }
  }

  // Deterministic order: lexicographic by sorted vertex list.
  std::sort(faces.begin(), faces.end(), [](const std::vector<IPt>& f, const std::vector<IPt>& g) {
    std::vector<IPt> fs = f, gs = g;
    std::sort(fs.begin(), fs.end());
    std::sort(gs.begin(), gs.end());
    return fs < gs;
  });
  sub.faces = std::move(faces);

  // Sanity: faces tile the support polygon (compare total doubled area).
  long total2 = 0;
  for (const auto& f : sub.faces) {
    long a2 = 0;
    for (size_t t = 1; t + 1 < f.size(); ++t) a2 += icross(f[t] - f[0], f[t + 1] - f[0]);
    total2 += a2;
  }
  std::vector<IPt> outer = detail::hull_ccw(pts);
  long hull2 = 0;
  for (size_t t = 1; t + 1 < outer.size(); ++t) hull2 += icross(outer[t] - outer[0], outer[t + 1] - outer[0]);
  require(total2 == hull2, "Internal", "subdivision faces do not tile the Newton polygon");

  return sub;
}

inline RegularSubdivision newton_subdivision(const QuarticInput& q) {
  return newton_subdivision_of(q.heights(), 4);
}

// True iff the subdivision is a unimodular triangulation (degree² faces of
// lattice area 1/2). Quartic-specific entry point per the pipeline.
inline bool check_smooth(const RegularSubdivision& s) {
  require(s.degree == 4, "WrongDegree",
          "smoothness check expects a quartic subdivision, got degree " + std::to_string(s.degree));
  if (static_cast<int>(s.faces.size()) != 16) return false;
  for (const auto& f : s.faces) {
    if (f.size() != 3) return false;
    long det = icross(f[1] - f[0], f[2] - f[0]);
    if (det != 1 && det != -1) return false;
  }
  return true;
}

}  // namespace tropbt
