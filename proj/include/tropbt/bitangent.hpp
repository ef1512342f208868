#pragma once

// Bitangent locus of a tropical plane curve in the dual plane (the plane of
// tropical-line vertex positions).
//
// The combinatorial type of the intersection of a tropical line with the
// curve changes only when the line's vertex crosses (i) the affine hull of a
// curve edge/ray, or (ii) one of the three lines with directions (1,0),
// (0,1), (1,1) through a curve vertex (a line ray starts or stops containing
// that vertex).  The arrangement of those generator lines therefore has
// constant bitangency status on every relatively open cell, so the locus is
// a union of closed arrangement cells.  It is closed (limits of bitangents
// are bitangents: intersection components only merge in the limit, so the
// multiplicity patterns (4) and (2,2) persist), which the flag pass asserts.

#include <algorithm>
#include <vector>

#include <tropbt/arrangement.hpp>
#include <tropbt/tropcurve.hpp>

namespace tropbt {

// ----------------------------------------------------------------------
// Point-on-curve queries (used for the locus refinement by the curve).

struct CurveLocation {
  bool on = false;
  int vertex = -1;  // curve vertex index if the point is one
  int cell = -1;    // some curve cell containing the point
};

inline CurveLocation locate_on_curve(const TropicalCurve& c, const Pt& p) {
  CurveLocation loc;
  for (size_t i = 0; i < c.vertices.size(); ++i)
    if (c.vertices[i].pos == p) {
      loc.on = true;
      loc.vertex = (int)i;
    }
  for (const CurveCell& cc : c.cells) {
    Pt d{Q(cc.dir.i), Q(cc.dir.j)};
    Pt w = p - cc.a;
    if (cross(w, d) != 0) continue;
    Q t = d.x != 0 ? w.x / d.x : w.y / d.y;
    if (t < 0) continue;
    if (!cc.is_ray) {
      Pt span = cc.b - cc.a;
      Q tmax = d.x != 0 ? span.x / d.x : span.y / d.y;
      if (t > tmax) continue;
    }
    loc.on = true;
    if (loc.cell < 0) loc.cell = cc.id;
  }
  return loc;
}

// ----------------------------------------------------------------------
// Generator lines of the dual-plane arrangement.

inline std::vector<ArrLine> generator_lines(const TropicalCurve& c) {
  std::vector<ArrLine> gens;
  for (const auto& v : c.vertices) {
    gens.push_back({v.pos, IPt{1, 0}});
    gens.push_back({v.pos, IPt{0, 1}});
    gens.push_back({v.pos, IPt{1, 1}});
  }
  for (const CurveCell& cc : c.cells) gens.push_back({cc.a, cc.dir});
  return gens;
}

// ----------------------------------------------------------------------
// Cheap exact pre-filter: a sound rejector for bitangency.
//
// Groups the exact intersection pieces at vertex position v.  A group whose
// pieces are all single transverse points has an exact stable multiplicity
// (|det|*weight for an interior crossing, half the incident |det|-sum for a
// crossing through a curve vertex); if any such group has multiplicity 1 or
// 3 the pattern cannot be (4) or (2,2).  Groups involving overlaps or the
// line vertex itself are deferred to the full stable-intersection test.

namespace detail {

inline bool plausible_bitangent(const TropicalCurve& c, const Pt& v) {
  std::vector<Piece> pieces = collect_pieces(c, v);
  if (pieces.empty()) return false;
  auto groups = group_pieces(pieces);
  std::vector<long> cheap;
  int expensive = 0;
  for (const auto& g : groups) {
    bool all_points = true;
    for (int i : g)
      if (pieces[i].unbounded || !pieces[i].is_point()) {
        all_points = false;
        break;
      }
    if (!all_points) {
      ++expensive;
      continue;
    }
    const Piece& p0 = pieces[g[0]];
    if (p0.s_lo == 0) {  // line vertex sits on the curve
      ++expensive;
      continue;
    }
    const Pt& p = p0.a;
    IPt rd = line_ray_dirs()[p0.lray];
    int cv = -1;
    for (size_t k = 0; k < c.vertices.size(); ++k)
      if (c.vertices[k].pos == p) {
        cv = (int)k;
        break;
      }
    long m = 0;
    if (cv >= 0) {
      // transverse pass through a curve vertex: half the incident |det| sum
      long s = 0;
      bool par = false;
      for (const auto& e : c.edges)
        if (e.v0 == cv || e.v1 == cv) {
          long cr = icross(rd, e.dir);
          if (cr == 0) par = true;
          s += (cr < 0 ? -cr : cr) * e.weight;
        }
      for (const auto& r : c.rays)
        if (r.v == cv) {
          long cr = icross(rd, r.dir);
          if (cr == 0) par = true;
          s += (cr < 0 ? -cr : cr) * r.weight;
        }
      if (par) {  // an overlap piece shares this group; be conservative
        ++expensive;
        continue;
      }
      m = s / 2;
    } else {
      const CurveCell& cc = c.cells[p0.cell];
      long cr = icross(rd, cc.dir);
      m = (cr < 0 ? -cr : cr) * cc.weight;
    }
    if (m == 1 || m == 3) return false;
    cheap.push_back(m);
  }
  if (expensive == 0) {
    std::sort(cheap.begin(), cheap.end());
    return cheap == std::vector<long>{4} || cheap == std::vector<long>{2, 2};
  }
  return true;
}

}  // namespace detail

// ----------------------------------------------------------------------
// The locus itself: flagged arrangement cells + connected components.

struct BitangentLocus {
  Arrangement arr;
  std::vector<char> node_in, edge_in, face_in;
  struct Component {
    std::vector<int> nodes, edges, faces;
    bool unbounded = false;
    int dim() const { return !faces.empty() ? 2 : (!edges.empty() ? 1 : 0); }
  };
  std::vector<Component> components;  // deterministic order (min node point)
};

inline BitangentLocus compute_locus(const TropicalCurve& c) {
  BitangentLocus L;
  Pt lo = c.vertices.front().pos, hi = lo;
  for (const auto& v : c.vertices) {
    lo.x = std::min(lo.x, v.pos.x);
    lo.y = std::min(lo.y, v.pos.y);
    hi.x = std::max(hi.x, v.pos.x);
    hi.y = std::max(hi.y, v.pos.y);
  }
  L.arr = build_arrangement(generator_lines(c), lo, hi);
  const Arrangement& A = L.arr;

  auto bit = [&](const Pt& p) {
    if (!detail::plausible_bitangent(c, p)) return false;
    return is_bitangent(c, TropicalLine{p}).first;
  };

  L.node_in.assign(A.nodes.size(), 0);
  L.edge_in.assign(A.edges.size(), 0);
  L.face_in.assign(A.faces.size(), 0);
  for (size_t i = 0; i < A.nodes.size(); ++i) L.node_in[i] = bit(A.nodes[i].p);
  for (size_t k = 0; k < A.edges.size(); ++k) {
    const ArrEdge& e = A.edges[k];
    if (!L.node_in[e.n0] || !L.node_in[e.n1]) continue;  // locus is closed
    L.edge_in[k] = bit(e.mid);
  }
  for (size_t f = 0; f < A.faces.size(); ++f) {
    const ArrFace& fc = A.faces[f];
    bool boundary_in = true;
    for (int e : fc.edges) boundary_in = boundary_in && L.edge_in[e];
    if (!boundary_in) continue;
    L.face_in[f] = bit(fc.sample);
  }

  // Closedness sanity: the closure of each flagged cell must be flagged.
  for (size_t k = 0; k < A.edges.size(); ++k)
    if (L.edge_in[k])
      require(L.node_in[A.edges[k].n0] && L.node_in[A.edges[k].n1], "Internal",
              "bitangent locus not closed at an edge");
  for (size_t f = 0; f < A.faces.size(); ++f)
    if (L.face_in[f])
      for (int e : A.faces[f].edges)
        require(L.edge_in[e], "Internal", "bitangent locus not closed at a face");

  // Connected components over flagged cells (union-find; ids: nodes, then
  // edges, then faces).
  const int NN = (int)A.nodes.size(), NE = (int)A.edges.size(), NF = (int)A.faces.size();
  std::vector<int> parent(NN + NE + NF);
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = (int)i;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (int k = 0; k < NE; ++k)
    if (L.edge_in[k]) {
      unite(NN + k, A.edges[k].n0);
      unite(NN + k, A.edges[k].n1);
    }
  for (int f = 0; f < NF; ++f)
    if (L.face_in[f])
      for (int e : A.faces[f].edges) unite(NN + NE + f, NN + e);

  std::map<int, BitangentLocus::Component> comps;
  for (int i = 0; i < NN; ++i)
    if (L.node_in[i]) comps[find(i)].nodes.push_back(i);
  for (int k = 0; k < NE; ++k)
    if (L.edge_in[k]) comps[find(NN + k)].edges.push_back(k);
  for (int f = 0; f < NF; ++f)
    if (L.face_in[f]) comps[find(NN + NE + f)].faces.push_back(f);

  for (auto& [root, comp] : comps) {
    for (int n : comp.nodes) comp.unbounded = comp.unbounded || A.nodes[n].on_box;
    for (int e : comp.edges) comp.unbounded = comp.unbounded || A.edges[e].on_box;
    for (int f : comp.faces) comp.unbounded = comp.unbounded || A.faces[f].on_box;
    L.components.push_back(std::move(comp));
  }
  // Deterministic order: by smallest node point.
  std::sort(L.components.begin(), L.components.end(), [&](const auto& a, const auto& b) {
    auto key = [&](const BitangentLocus::Component& comp) {
      Pt best = A.nodes[comp.nodes.front()].p;
      for (int n : comp.nodes) best = std::min(best, A.nodes[n].p);
      return best;
    };
    return key(a) < key(b);
  });
  return L;
}

}  // namespace tropbt
