#pragma once

// Tropical curves dual to Newton subdivisions, stable intersection with
// tropical lines, intersection components, and the bitangency test.

#include <tropbt/quartic.hpp>

#include <algorithm>
#include <functional>
#include <set>

namespace tropbt {

struct CurveVertex {
  Pt pos;
  std::vector<IPt> dual;  // subdivision face (triangle when smooth)
};

struct CurveEdge {
  int v0, v1;     // vertex ids
  IPt dir;        // primitive direction v0 -> v1
  int weight;     // lattice length of the dual edge
  IPt du0, du1;   // dual subdivision edge
};

struct CurveRay {
  int v;          // base vertex id
  IPt dir;        // outward primitive direction
  int weight;
  IPt du0, du1;   // dual boundary edge (counterclockwise orientation)
};

// Unified 1-cell view used by all intersection routines.
struct CurveCell {
  int id = 0;
  bool is_ray = false;
  Pt a, b;        // edge endpoints; for rays b is unused
  IPt dir;        // primitive a->b direction / ray direction
  int weight = 1;
  IPt du0, du1;
  int v0 = -1, v1 = -1;  // incident vertex ids (v1 = -1 for rays)
};

struct TropicalCurve {
  RegularSubdivision sub;
  std::vector<CurveVertex> vertices;
  std::vector<CurveEdge> edges;
  std::vector<CurveRay> rays;
  std::vector<CurveCell> cells;  // edges first, then rays
  int degree = 4;
};

struct TropicalLine {
  Pt vertex;
};

// Ray directions of a tropical line, in fixed order: index 0 = horizontal
// (-1,0), 1 = vertical (0,-1), 2 = diagonal (1,1).
inline const std::array<IPt, 3>& line_ray_dirs() {
  static const std::array<IPt, 3> dirs{IPt{-1, 0}, IPt{0, -1}, IPt{1, 1}};
  return dirs;
}

// ----------------------------------------------------------------------
// Curve construction (duality with the subdivision).

namespace detail {

// Vertex dual to a face: with the face's lifted supporting plane
// z = alpha*i + beta*j + gamma, the functionals i*x + j*y + h_ij tie
// exactly at (x,y) = (-alpha,-beta).
inline Pt face_vertex(const std::vector<IPt>& f, const std::map<IPt, Q>& H) {
  const IPt &A = f[0], &B = f[1], &C = f[2];
  long det = icross(B - A, C - A);
  require(det != 0, "Internal", "degenerate face");
  Q dq(det);
  Q hA = H.at(A), hB = H.at(B), hC = H.at(C);
  Q alpha = ((hB - hA) * (C.j - A.j) - (hC - hA) * (B.j - A.j)) / dq;
  Q beta = ((B.i - A.i) * (hC - hA) - (C.i - A.i) * (hB - hA)) / dq;
  return Pt{-alpha, -beta};
}

}  // namespace detail

inline TropicalCurve build_curve(const RegularSubdivision& s) {
  TropicalCurve c;
  c.sub = s;
  c.degree = s.degree;

  for (const auto& f : s.faces) c.vertices.push_back({detail::face_vertex(f, s.heights), f});

  // Collect subdivision edges with incident faces. Keys are segment
  // endpoint pairs; orientation of first traversal is kept for rays.
  struct EdgeUse {
    std::vector<int> faces;
    IPt first_from, first_to;
  };
  std::map<std::pair<IPt, IPt>, EdgeUse> uses;
  for (size_t fi = 0; fi < s.faces.size(); ++fi) {
    const auto& f = s.faces[fi];
    for (size_t k = 0; k < f.size(); ++k) {
      IPt p = f[k], q = f[(k + 1) % f.size()];
      auto key = std::minmax(p, q);
      auto& u = uses[{key.first, key.second}];
      if (u.faces.empty()) { u.first_from = p; u.first_to = q; }
      u.faces.push_back(static_cast<int>(fi));
    }
  }

  for (const auto& [key, u] : uses) {
    IPt dvec = key.second - key.first;
    int weight = static_cast<int>(std::abs(std::gcd(static_cast<long>(dvec.i), static_cast<long>(dvec.j))));
    if (u.faces.size() == 2) {
      int a = u.faces[0], b = u.faces[1];
      const Pt& pa = c.vertices[a].pos;
      const Pt& pb = c.vertices[b].pos;
      require(pa != pb, "Internal", "zero-length curve edge (non-maximal faces?)");
      IPt dir = primitive_dir(pb - pa);
      // duality: curve edge is perpendicular^T of the dual edge (rotation
      // by 90 degrees), hence orthogonal to it under the standard pairing
      require(dir.i * dvec.i + dir.j * dvec.j == 0, "Internal",
              "curve edge not dual to subdivision edge");
      c.edges.push_back({a, b, dir, weight, key.first, key.second});
    } else {
      require(u.faces.size() == 1, "Internal", "subdivision edge with >2 faces");
      // Boundary edge: the face polygon is counterclockwise, so the first
      // traversal runs counterclockwise around the Newton polygon; the
      // outward ray direction is the clockwise rotation of it.
      IPt uvec = primitive(u.first_to - u.first_from);
      IPt dir{uvec.j, -uvec.i};
      c.rays.push_back({u.faces[0], dir, weight, u.first_from, u.first_to});
    }
  }

  // Deterministic cell order: edges sorted by dual pair, then rays.
  std::sort(c.edges.begin(), c.edges.end(), [](const CurveEdge& e, const CurveEdge& f) {
    return std::make_pair(e.du0, e.du1) < std::make_pair(f.du0, f.du1);
  });
  std::sort(c.rays.begin(), c.rays.end(), [](const CurveRay& r, const CurveRay& s) {
    return std::make_pair(r.du0, r.du1) < std::make_pair(s.du0, s.du1);
  });
  int id = 0;
  for (const auto& e : c.edges) {
    c.cells.push_back({id++, false, c.vertices[e.v0].pos, c.vertices[e.v1].pos, e.dir,
                       e.weight, e.du0, e.du1, e.v0, e.v1});
  }
  for (const auto& r : c.rays) {
    c.cells.push_back({id++, true, c.vertices[r.v].pos, Pt{}, r.dir, r.weight,
                       r.du0, r.du1, r.v, -1});
  }

  // Balancing at every vertex.
  for (size_t vi = 0; vi < c.vertices.size(); ++vi) {
    long sx = 0, sy = 0;
    for (const auto& e : c.edges) {
      if (e.v0 == static_cast<int>(vi)) { sx += e.weight * e.dir.i; sy += e.weight * e.dir.j; }
      if (e.v1 == static_cast<int>(vi)) { sx -= e.weight * e.dir.i; sy -= e.weight * e.dir.j; }
    }
    for (const auto& r : c.rays) {
      if (r.v == static_cast<int>(vi)) { sx += r.weight * r.dir.i; sy += r.weight * r.dir.j; }
    }
    require(sx == 0 && sy == 0, "Internal", "balancing fails at curve vertex");
  }

  return c;
}

// ----------------------------------------------------------------------
// Exact cell/ray intersection pieces.

// One piece of the exact intersection of a curve cell with a line ray.
struct Piece {
  int cell;      // curve cell id
  int lray;      // line ray index 0/1/2
  Pt a, b;       // a == b encodes a point; else segment from a to b
  bool unbounded = false;  // overlap continues to infinity from a
  IPt dir;                 // direction for segments / unbounded overlaps
  Q s_lo, s_hi;            // parameter interval on the line ray (s_hi < s_lo means unbounded)
  bool is_point() const { return !unbounded && a == b; }
};

namespace detail {

// Intersect curve cell with the line ray v + s*d (s >= 0); appends pieces.
inline void intersect_cell_ray(const CurveCell& cc, const Pt& v, int ridx,
                               std::vector<Piece>& out) {
  const IPt rd = line_ray_dirs()[ridx];
  Pt d2{Q(rd.i), Q(rd.j)};
  Pt d1{Q(cc.dir.i), Q(cc.dir.j)};
  // Cell parameter: points cc.a + t*d1 with t in [0, tmax] (edges; tmax =
  // lattice length) or t >= 0 (rays).
  Q tmax(0);
  bool bounded_cell = !cc.is_ray;
  if (bounded_cell) {
    Pt span = cc.b - cc.a;
    tmax = span.x != 0 ? span.x / d1.x : span.y / d1.y;
  }
  Q c12 = cross(d1, d2);
  Pt w = v - cc.a;
  if (c12 != 0) {
    // a + t*d1 = v + s*d2 => t = cross(w,d2)/c12, s = cross(w,d1)/c12
    Q t = cross(w, d2) / c12;
    Q sp = cross(w, d1) / c12;
    if (sp < 0) return;
    if (t < 0 || (bounded_cell && t > tmax)) return;
    Pt p = cc.a + t * d1;
    Piece pc;
    pc.cell = cc.id;
    pc.lray = ridx;
    pc.a = pc.b = p;
    pc.s_lo = pc.s_hi = sp;
    out.push_back(pc);
    return;
  }
  // Parallel: collinear iff w is parallel to the common direction.
  if (cross(w, d1) != 0) return;
  // Parametrize the cell by the ray parameter s: cc.a = v + s_a*d, and the
  // cell covers s in [s_a, s_b] (or a half-line). d1 = sigma*d2 with sigma
  // = +-1 (both primitive).
  bool same_dir = (d1 == d2);
  Q s_a = d2.x != 0 ? (cc.a.x - v.x) / d2.x : (cc.a.y - v.y) / d2.y;
  if (bounded_cell) {
    Q s_b = d2.x != 0 ? (cc.b.x - v.x) / d2.x : (cc.b.y - v.y) / d2.y;
    Q lo = std::min(s_a, s_b), hi = std::max(s_a, s_b);
    Q clo = std::max(lo, Q(0));
    if (clo > hi) return;
    Piece pc;
    pc.cell = cc.id;
    pc.lray = ridx;
    pc.a = v + clo * d2;
    pc.b = v + hi * d2;
    pc.dir = rd;
    pc.s_lo = clo;
    pc.s_hi = hi;
    out.push_back(pc);
  } else {
    // curve ray overlapping the line ray's affine hull
    if (same_dir) {
      Q lo = std::max(s_a, Q(0));
      Piece pc;
      pc.cell = cc.id;
      pc.lray = ridx;
      pc.a = v + lo * d2;
      pc.b = pc.a;
      pc.unbounded = true;
      pc.dir = rd;
      pc.s_lo = lo;
      pc.s_hi = lo - 1;  // marker: unbounded above
      out.push_back(pc);
    } else {
      // opposite directions: overlap = [0, s_a] on the line ray
      if (s_a < 0) return;
      Piece pc;
      pc.cell = cc.id;
      pc.lray = ridx;
      pc.a = v;
      pc.b = v + s_a * d2;
      pc.dir = rd;
      pc.s_lo = 0;
      pc.s_hi = s_a;
      out.push_back(pc);
    }
  }
}

}  // namespace detail

// ----------------------------------------------------------------------
// Stable intersection via deterministic perturbation limits.

namespace detail {

struct RawCrossing {
  int cell, lray;
  Pt p;
  long mult;
};

// All intersections of the curve with the line at vertex v, required to be
// transverse interior crossings; returns false if any contact is
// non-transverse (endpoint hit, vertex hit, or overlap).
inline bool raw_transverse(const TropicalCurve& c, const Pt& v,
                           std::vector<RawCrossing>& out) {
  out.clear();
  for (const CurveCell& cc : c.cells) {
    Pt d1{Q(cc.dir.i), Q(cc.dir.j)};
    Q tmax(0);
    if (!cc.is_ray) {
      Pt span = cc.b - cc.a;
      tmax = span.x != 0 ? span.x / d1.x : span.y / d1.y;
    }
    for (int r = 0; r < 3; ++r) {
      const IPt rd = line_ray_dirs()[r];
      Pt d2{Q(rd.i), Q(rd.j)};
      Q c12 = cross(d1, d2);
      Pt w = v - cc.a;
      if (c12 == 0) {
        if (cross(w, d1) == 0) return false;  // collinear overlap
        continue;
      }
      Q t = cross(w, d2) / c12;
      Q sp = cross(w, d1) / c12;
      if (sp < 0 || t < 0 || (!cc.is_ray && t > tmax)) continue;
      if (sp == 0 || t == 0 || (!cc.is_ray && t == tmax)) return false;  // non-transverse
      long m = std::abs(icross(cc.dir, rd)) * cc.weight;
      out.push_back({cc.id, r, cc.a + t * d1, m});
    }
  }
  return true;
}

}  // namespace detail

// Stable intersection of curve and line: exact limit of perturbed
// transverse intersections, cross-checked over two perturbation
// directions.
inline std::vector<std::pair<Pt, long>> stable_intersection(const TropicalCurve& c,
                                                            const TropicalLine& l) {
  auto limit_for = [&](const Pt& w) -> std::vector<std::pair<Pt, long>> {
    Q eps = frac(1, 1024);
    for (int shrink = 0; shrink < 80; ++shrink, eps /= 2) {
      std::array<std::vector<detail::RawCrossing>, 3> R;
      Q e = eps;
      bool ok = true;
      for (int k = 0; k < 3 && ok; ++k, e /= 2) {
        Pt vv = l.vertex + e * w;
        ok = detail::raw_transverse(c, vv, R[k]);
      }
      if (!ok) continue;
      // match crossings by (cell, ray) key
      auto key = [](const detail::RawCrossing& rc) { return std::make_pair(rc.cell, rc.lray); };
      for (auto& lst : R)
        std::sort(lst.begin(), lst.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
      if (R[0].size() != R[1].size() || R[1].size() != R[2].size()) continue;
      bool same = true;
      for (size_t i = 0; i < R[0].size() && same; ++i)
        same = key(R[0][i]) == key(R[1][i]) && key(R[1][i]) == key(R[2][i]) &&
               R[0][i].mult == R[1][i].mult;
      if (!same) continue;
      // affinity check: p(e) - p(e/4) = 3 (p(e/2) - p(e/4)) for each crossing
      bool affine = true;
      std::map<Pt, long> acc;
      for (size_t i = 0; i < R[0].size() && affine; ++i) {
        Pt d30 = R[0][i].p - R[2][i].p;
        Pt d31 = R[1][i].p - R[2][i].p;
        if (d30.x != 3 * d31.x || d30.y != 3 * d31.y) { affine = false; break; }
        Pt lim = R[2][i].p - d31;  // 2 p(e/4) - p(e/2)
        acc[lim] += R[0][i].mult;
      }
      if (!affine) continue;
      return {acc.begin(), acc.end()};
    }
    fail("DegeneratePerturbation", "no stable perturbation limit found");
  };

  auto r1 = limit_for(Pt{Q(1), Q(1009)});
  auto r2 = limit_for(Pt{Q(1009), Q(1)});
  require(r1 == r2, "DegeneratePerturbation",
          "perturbation directions disagree on the stable intersection");
  long total = 0;
  for (auto& [p, m] : r1) total += m;
  require(total == c.degree, "Internal",
          "stable intersection total " + std::to_string(total) + " != degree");
  return r1;
}

// ----------------------------------------------------------------------
// Connected components of the exact intersection.

struct IntersectionComponent {
  enum class Carrier { Point, Segment, Star, Unbounded };
  Carrier carrier = Carrier::Point;
  std::vector<Piece> pieces;
  long total_mult = 0;
  std::vector<Pt> tangency_points;
  bool tangency_defined = true;
  Pt point;        // Carrier::Point
  Pt seg_a, seg_b; // Carrier::Segment (union of collinear pieces)
};

namespace detail {

inline std::vector<Piece> collect_pieces(const TropicalCurve& c, const Pt& v) {
  std::vector<Piece> pieces;
  for (const CurveCell& cc : c.cells)
    for (int r = 0; r < 3; ++r) intersect_cell_ray(cc, v, r, pieces);
  return pieces;
}

// Union-find over pieces: same ray -> parameter intervals intersect;
// different rays -> both contain the line vertex (s = 0).
inline std::vector<std::vector<int>> group_pieces(const std::vector<Piece>& pieces) {
  std::vector<int> parent(pieces.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto touches = [&](const Piece& p, const Piece& q) {
    if (p.lray == q.lray) {
      // intervals [lo, hi] or [lo, inf)
      bool p_unb = p.unbounded, q_unb = q.unbounded;
      if (!p_unb && !q_unb) return !(p.s_hi < q.s_lo || q.s_hi < p.s_lo);
      if (p_unb && q_unb) return true;
      const Piece& u = p_unb ? p : q;
      const Piece& b = p_unb ? q : p;
      return b.s_hi >= u.s_lo;
    }
    return p.s_lo == 0 && q.s_lo == 0;
  };
  for (size_t i = 0; i < pieces.size(); ++i)
    for (size_t j = i + 1; j < pieces.size(); ++j)
      if (touches(pieces[i], pieces[j])) parent[find((int)i)] = find((int)j);
  std::map<int, std::vector<int>> by_root;
  for (size_t i = 0; i < pieces.size(); ++i) by_root[find((int)i)].push_back((int)i);
  std::vector<std::vector<int>> groups;
  for (auto& [root, ids] : by_root) groups.push_back(std::move(ids));
  return groups;
}

}  // namespace detail

inline std::vector<IntersectionComponent> intersection_components(const TropicalCurve& c,
                                                                  const TropicalLine& l) {
  std::vector<Piece> pieces = detail::collect_pieces(c, l.vertex);
  auto groups = detail::group_pieces(pieces);
  std::map<int, IntersectionComponent> comps;
  for (size_t g = 0; g < groups.size(); ++g)
    for (int i : groups[g]) comps[(int)g].pieces.push_back(pieces[i]);

  // Stable multiplicities assigned to components.
  auto stable = stable_intersection(c, l);
  auto contains_point = [&](const IntersectionComponent& comp, const Pt& p) {
    for (const Piece& pc : comp.pieces) {
      // p = v + s*d on pc's ray?
      const IPt rd = line_ray_dirs()[pc.lray];
      Pt d{Q(rd.i), Q(rd.j)};
      Pt w = p - l.vertex;
      if (cross(w, d) != 0) continue;
      Q s = d.x != 0 ? w.x / d.x : w.y / d.y;
      if (s < 0) continue;
      if (pc.unbounded ? s >= pc.s_lo : (s >= pc.s_lo && s <= pc.s_hi)) return true;
    }
    return false;
  };
  for (const auto& [p, m] : stable) {
    bool placed = false;
    for (auto& [root, comp] : comps) {
      if (contains_point(comp, p)) {
        comp.total_mult += m;
        placed = true;
        break;
      }
    }
    require(placed, "Internal", "stable point not inside any intersection component");
  }

  // Carrier classification and tangency points.
  std::vector<IntersectionComponent> out;
  for (auto& [root, comp] : comps) {
    bool unb = false;
    std::vector<Piece> segs;
    for (const Piece& pc : comp.pieces) {
      unb = unb || pc.unbounded;
      if (!pc.is_point() || pc.unbounded) segs.push_back(pc);
    }
    if (unb) {
      comp.carrier = IntersectionComponent::Carrier::Unbounded;
      comp.tangency_defined = false;
    } else if (segs.empty()) {
      comp.carrier = IntersectionComponent::Carrier::Point;
      comp.point = comp.pieces[0].a;
      for (const Piece& pc : comp.pieces)
        require(pc.a == comp.point, "Internal", "disconnected point component");
      if (comp.total_mult == 2) {
        comp.tangency_points = {comp.point};
      } else if (comp.total_mult == 4) {
        comp.tangency_points = {comp.point, comp.point};
      }
    } else {
      // Union the segments per ray; distinct rays meet only at the vertex.
      // Segments on one ray are connected, so their union is an interval.
      std::map<int, std::pair<Q, Q>> per_ray;  // ray -> [lo, hi]
      for (const Piece& pc : segs) {
        auto it = per_ray.find(pc.lray);
        if (it == per_ray.end()) per_ray[pc.lray] = {pc.s_lo, pc.s_hi};
        else {
          it->second.first = std::min(it->second.first, pc.s_lo);
          it->second.second = std::max(it->second.second, pc.s_hi);
        }
      }
      if (per_ray.size() == 1) {
        int r = per_ray.begin()->first;
        const IPt rd = line_ray_dirs()[r];
        Pt d{Q(rd.i), Q(rd.j)};
        comp.seg_a = l.vertex + per_ray.begin()->second.first * d;
        comp.seg_b = l.vertex + per_ray.begin()->second.second * d;
        comp.carrier = IntersectionComponent::Carrier::Segment;
        if (comp.total_mult == 2) {
          comp.tangency_points = {Pt{(comp.seg_a.x + comp.seg_b.x) / 2,
                                     (comp.seg_a.y + comp.seg_b.y) / 2}};
        } else if (comp.total_mult == 4) {
          // Bent through the vertex is impossible on one ray; treat as a
          // two-armed star from the vertex only if the interval starts at 0.
          comp.carrier = IntersectionComponent::Carrier::Segment;
          comp.tangency_defined = false;
        }
      } else {
        // Star: arms emanate from the line vertex (all intervals start at 0).
        comp.carrier = IntersectionComponent::Carrier::Star;
        std::vector<std::pair<Q, int>> arms;  // (length, ray)
        bool at_vertex = true;
        for (auto& [r, iv] : per_ray) {
          at_vertex = at_vertex && iv.first == 0;
          arms.push_back({iv.second, r});
        }
        if (!at_vertex) {
          comp.tangency_defined = false;
        } else if (comp.total_mult == 4) {
          // Subtract the shortest arm length (0 when only two arms), take
          // midpoints of the trimmed two longest arms.
          std::sort(arms.begin(), arms.end());
          Q lmin = arms.size() >= 3 ? arms[0].first : Q(0);
          size_t n = arms.size();
          for (size_t k = n - 2; k < n; ++k) {
            const IPt rd = line_ray_dirs()[arms[k].second];
            Pt d{Q(rd.i), Q(rd.j)};
            Q at = (arms[k].first - lmin) / 2;
            comp.tangency_points.push_back(l.vertex + at * d);
          }
        }
      }
    }
    out.push_back(std::move(comp));
  }

  // Deterministic order: by smallest ray index, then parameter.
  std::sort(out.begin(), out.end(), [](const IntersectionComponent& a, const IntersectionComponent& b) {
    auto key = [](const IntersectionComponent& c) {
      Q lo = c.pieces[0].s_lo;
      int r = c.pieces[0].lray;
      for (const Piece& p : c.pieces) {
        if (p.lray < r || (p.lray == r && p.s_lo < lo)) { r = p.lray; lo = p.s_lo; }
      }
      return std::make_pair(r, lo);
    };
    auto ka = key(a), kb = key(b);
    return ka.first != kb.first ? ka.first < kb.first : ka.second < kb.second;
  });
  return out;
}

// Bitangency test per the (4) / (2,2) multiplicity patterns.
inline std::pair<bool, std::vector<IntersectionComponent>> is_bitangent(const TropicalCurve& c,
                                                                        const TropicalLine& l) {
  auto comps = intersection_components(c, l);
  std::vector<long> mults;
  for (const auto& comp : comps)
    if (comp.total_mult > 0) mults.push_back(comp.total_mult);
  std::sort(mults.begin(), mults.end());
  bool bt = (mults == std::vector<long>{4}) || (mults == std::vector<long>{2, 2});
  return {bt, comps};
}

// ----------------------------------------------------------------------
// Genericity diagnostics: unexpected alignments of curve vertices.
//
// An alignment is "unexpected" when it can merge two tangency components
// onto a single ray of a tropical line.  Two vertices on a common
// horizontal / vertical / slope-1 line are dangerous only if a line ray
// running along that line would see a multiplicity-2 feature at BOTH of
// them.  We measure this with a per-vertex tangency capacity along the
// shared line:
//   - an incident bounded edge inside the line -> bounded overlap, cap 2;
//   - an incident curve ray inside the line pointing the same way as the
//     line's ray (away from its vertex) -> unbounded overlap, never a
//     tangency, cap 1;
//   - an incident curve ray pointing back toward the line's vertex ->
//     bounded overlap through the vertex, cap 2;
//   - otherwise a transverse crossing with stable multiplicity
//     (1/2)*sum |det| over incident cells.
// Only cap-2 + cap-2 pairs are reported.

struct Alignment {
  int v0, v1;
  char axis;  // 'h', 'v', or 'd'
};

struct GenericityReport {
  std::vector<Alignment> alignments;
  bool alignment_free() const { return alignments.empty(); }
};

namespace detail {

// Stable-multiplicity capacity of vertex vi for a line ray along direction
// line_dir whose source lies on the ray_dir side (ray_dir = direction the
// line ray travels: (-1,0), (0,-1) or (1,1)).
inline long tangency_capacity(const TropicalCurve& c, int vi, IPt line_dir, IPt ray_dir) {
  bool par_edge = false, out_ray = false, in_ray = false;
  long detsum = 0;
  auto absl = [](long v) { return v < 0 ? -v : v; };
  for (const auto& e : c.edges) {
    if (e.v0 != vi && e.v1 != vi) continue;
    if (icross(e.dir, line_dir) == 0)
      par_edge = true;
    else
      detsum += absl(icross(line_dir, e.dir)) * e.weight;
  }
  for (const auto& r : c.rays) {
    if (r.v != vi) continue;
    if (icross(r.dir, line_dir) == 0) {
      if (r.dir == ray_dir)
        out_ray = true;
      else
        in_ray = true;
    } else {
      detsum += absl(icross(line_dir, r.dir)) * r.weight;
    }
  }
  if (par_edge || in_ray) return 2;
  if (out_ray) return 1;
  return detsum / 2;
}

}  // namespace detail

inline GenericityReport check_generic(const TropicalCurve& c) {
  GenericityReport rep;
  auto joined = [&](int i, int j) {
    for (const auto& e : c.edges)
      if ((e.v0 == i && e.v1 == j) || (e.v0 == j && e.v1 == i)) return true;
    return false;
  };
  auto dangerous = [&](int i, int j, IPt line_dir, IPt ray_dir) {
    return detail::tangency_capacity(c, i, line_dir, ray_dir) == 2 &&
           detail::tangency_capacity(c, j, line_dir, ray_dir) == 2;
  };
  const int n = static_cast<int>(c.vertices.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Pt& p = c.vertices[i].pos;
      const Pt& q = c.vertices[j].pos;
      if (p == q) { rep.alignments.push_back({i, j, '='}); continue; }
      if (joined(i, j)) continue;  // endpoints of one edge: expected
      if (p.y == q.y && dangerous(i, j, IPt{1, 0}, IPt{-1, 0}))
        rep.alignments.push_back({i, j, 'h'});
      if (p.x == q.x && dangerous(i, j, IPt{0, 1}, IPt{0, -1}))
        rep.alignments.push_back({i, j, 'v'});
      if (p.x - p.y == q.x - q.y && dangerous(i, j, IPt{1, 1}, IPt{1, 1}))
        rep.alignments.push_back({i, j, 'd'});
    }
  }
  return rep;
}

}  // namespace tropbt
