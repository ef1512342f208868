#pragma once

// Exact arrangement of rational lines, clipped to a rectangular box.
//
// Input is a set of full lines (base point + primitive integer direction).
// The builder adds the four box sides as extra lines, computes all pairwise
// crossings, and assembles the induced subdivision of the box: nodes
// (crossings), edges (consecutive segments on each line), and faces (convex
// open cells, walked with a half-edge loop).  Everything is exact over Q.

#include <algorithm>
#include <array>
#include <map>
#include <utility>
#include <vector>

#include <tropbt/common.hpp>

namespace tropbt {

struct ArrLine {
  Pt base;
  IPt dir;  // primitive, canonical (first nonzero coordinate positive)
};

namespace detail {

inline IPt canon_dir(IPt d) {
  d = primitive(d);
  if (d.i < 0 || (d.i == 0 && d.j < 0)) return IPt{-d.i, -d.j};
  return d;
}

// Canonical key of the affine hull: (direction, offset).  Two ArrLines with
// equal keys describe the same line.
inline std::pair<IPt, Q> line_key(const Pt& base, IPt dir) {
  IPt d = canon_dir(dir);
  return {d, Q(d.i) * base.y - Q(d.j) * base.x};
}

}  // namespace detail

struct ArrNode {
  Pt p;
  bool on_box = false;  // lies on the clip box boundary
};

struct ArrEdge {
  int line = -1;   // carrier line index
  int n0 = -1;     // endpoints, ordered along the carrier's canonical direction
  int n1 = -1;
  Pt mid;          // exact midpoint (sample point of the open edge)
  bool on_box = false;  // carrier is one of the four box sides
};

struct ArrFace {
  std::vector<int> nodes;  // boundary loop, counterclockwise
  std::vector<int> edges;  // loop edges; edges[i] joins nodes[i] -> nodes[i+1]
  Pt sample;               // centroid (faces are convex)
  bool on_box = false;     // some boundary edge lies on the clip box
};

struct Arrangement {
  std::vector<ArrLine> lines;  // deduplicated input lines + 4 box sides (last)
  Pt box_lo, box_hi;
  std::vector<ArrNode> nodes;
  std::vector<ArrEdge> edges;
  std::vector<ArrFace> faces;
  std::vector<std::vector<int>> node_edges;         // node -> incident edges
  std::vector<std::array<int, 2>> edge_faces;       // edge -> adjacent faces (-1 = box exterior)

  bool line_is_box(int li) const { return li >= (int)lines.size() - 4; }
};

namespace detail {

inline bool line_cross(const ArrLine& a, const ArrLine& b, Pt& out) {
  long c = icross(a.dir, b.dir);
  if (c == 0) return false;
  // a.base + t*a.dir = b.base + s*b.dir
  Pt w = b.base - a.base;
  Pt d2{Q(b.dir.i), Q(b.dir.j)};
  Q t = cross(w, d2) / Q(c);
  out = Pt{a.base.x + t * a.dir.i, a.base.y + t * a.dir.j};
  return true;
}

}  // namespace detail

// Builds the arrangement of `gens` clipped to a box that contains `hull_lo/hi`
// expanded by 4x its diameter and every pairwise crossing point with margin.
// Beyond the box there are no further crossings, so every unbounded cell of
// the full-plane arrangement meets the box boundary with constant structure.
inline Arrangement build_arrangement(const std::vector<ArrLine>& gens, Pt hull_lo, Pt hull_hi) {
  Arrangement A;

  // Deduplicate lines by canonical key.
  std::map<std::pair<IPt, Q>, int> seen;
  for (const ArrLine& g : gens) {
    auto k = detail::line_key(g.base, g.dir);
    if (seen.count(k)) continue;
    seen[k] = (int)A.lines.size();
    A.lines.push_back({g.base, detail::canon_dir(g.dir)});
  }
  require(!A.lines.empty(), "Internal", "arrangement needs at least one line");

  // Bounding box: hull expanded by 4x diameter, further grown to contain all
  // pairwise crossings with one extra diameter of margin.
  Q diam = std::max(hull_hi.x - hull_lo.x, hull_hi.y - hull_lo.y);
  if (diam <= 0) diam = 1;
  Pt lo{hull_lo.x - 4 * diam, hull_lo.y - 4 * diam};
  Pt hi{hull_hi.x + 4 * diam, hull_hi.y + 4 * diam};
  for (size_t i = 0; i < A.lines.size(); ++i)
    for (size_t j = i + 1; j < A.lines.size(); ++j) {
      Pt p;
      if (!detail::line_cross(A.lines[i], A.lines[j], p)) continue;
      lo.x = std::min(lo.x, Q(p.x - diam));
      lo.y = std::min(lo.y, Q(p.y - diam));
      hi.x = std::max(hi.x, Q(p.x + diam));
      hi.y = std::max(hi.y, Q(p.y + diam));
    }
  A.box_lo = lo;
  A.box_hi = hi;

  // Box sides as ordinary lines (always the last four).
  A.lines.push_back({Pt{lo.x, lo.y}, IPt{1, 0}});  // bottom
  A.lines.push_back({Pt{lo.x, hi.y}, IPt{1, 0}});  // top
  A.lines.push_back({Pt{lo.x, lo.y}, IPt{0, 1}});  // left
  A.lines.push_back({Pt{hi.x, lo.y}, IPt{0, 1}});  // right

  const int L = (int)A.lines.size();

  // Nodes: pairwise crossings inside the closed box.
  std::map<Pt, int> node_id;
  std::vector<std::vector<int>> line_nodes(L);
  auto add_node = [&](const Pt& p) -> int {
    auto it = node_id.find(p);
    if (it != node_id.end()) return it->second;
    int id = (int)A.nodes.size();
    node_id[p] = id;
    ArrNode n;
    n.p = p;
    n.on_box = p.x == lo.x || p.x == hi.x || p.y == lo.y || p.y == hi.y;
    A.nodes.push_back(n);
    return id;
  };
  for (int i = 0; i < L; ++i)
    for (int j = i + 1; j < L; ++j) {
      Pt p;
      if (!detail::line_cross(A.lines[i], A.lines[j], p)) continue;
      if (p.x < lo.x || p.x > hi.x || p.y < lo.y || p.y > hi.y) continue;
      int id = add_node(p);
      line_nodes[i].push_back(id);
      line_nodes[j].push_back(id);
    }

  // Edges: consecutive nodes along each line.
  for (int li = 0; li < L; ++li) {
    auto& lst = line_nodes[li];
    IPt d = A.lines[li].dir;
    std::sort(lst.begin(), lst.end(), [&](int a, int b) {
      const Pt& pa = A.nodes[a].p;
      const Pt& pb = A.nodes[b].p;
      return d.i != 0 ? pa.x < pb.x : pa.y < pb.y;
    });
    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    require((int)lst.size() >= 2, "Internal", "arrangement line with fewer than two nodes");
    for (size_t k = 0; k + 1 < lst.size(); ++k) {
      ArrEdge e;
      e.line = li;
      e.n0 = lst[k];
      e.n1 = lst[k + 1];
      const Pt& a = A.nodes[e.n0].p;
      const Pt& b = A.nodes[e.n1].p;
      e.mid = Pt{(a.x + b.x) / 2, (a.y + b.y) / 2};
      e.on_box = li >= L - 4;
      A.edges.push_back(e);
    }
  }

  const int E = (int)A.edges.size();
  A.node_edges.assign(A.nodes.size(), {});
  for (int k = 0; k < E; ++k) {
    A.node_edges[A.edges[k].n0].push_back(k);
    A.node_edges[A.edges[k].n1].push_back(k);
  }

  // Half-edge face walk.  Half-edge h = 2k (+1): edge k traversed forward
  // (backward) along the carrier's canonical direction.
  auto tail = [&](int h) { const ArrEdge& e = A.edges[h >> 1]; return (h & 1) ? e.n1 : e.n0; };
  auto head = [&](int h) { const ArrEdge& e = A.edges[h >> 1]; return (h & 1) ? e.n0 : e.n1; };
  auto hdir = [&](int h) {
    IPt d = A.lines[A.edges[h >> 1].line].dir;
    return (h & 1) ? IPt{-d.i, -d.j} : d;
  };
  auto half = [](IPt d) { return (d.j > 0 || (d.j == 0 && d.i > 0)) ? 0 : 1; };

  std::vector<std::vector<int>> out(A.nodes.size());
  for (int k = 0; k < E; ++k) {
    out[A.edges[k].n0].push_back(2 * k);
    out[A.edges[k].n1].push_back(2 * k + 1);
  }
  std::vector<int> idx_in_out(2 * E, -1);
  for (size_t v = 0; v < out.size(); ++v) {
    auto& lst = out[v];
    std::sort(lst.begin(), lst.end(), [&](int a, int b) {
      IPt da = hdir(a), db = hdir(b);
      int ha = half(da), hb = half(db);
      if (ha != hb) return ha < hb;
      return icross(da, db) > 0;
    });
    for (size_t i = 0; i < lst.size(); ++i) idx_in_out[lst[i]] = (int)i;
  }
  // next(h): at head(h), the rotational predecessor of twin(h) in CCW order;
  // traces loops with their interior on the left.
  auto next = [&](int h) {
    int v = head(h);
    int t = h ^ 1;
    const auto& lst = out[v];
    int i = idx_in_out[t];
    return lst[(i + lst.size() - 1) % lst.size()];
  };

  std::vector<char> used(2 * E, 0);
  A.edge_faces.assign(E, {-1, -1});
  int outer_loops = 0;
  for (int h0 = 0; h0 < 2 * E; ++h0) {
    if (used[h0]) continue;
    std::vector<int> loop;
    int h = h0;
    do {
      used[h] = 1;
      loop.push_back(h);
      h = next(h);
    } while (h != h0);
    // Signed area (shoelace over loop tails).
    Q area2(0);
    for (size_t i = 0; i < loop.size(); ++i) {
      const Pt& a = A.nodes[tail(loop[i])].p;
      const Pt& b = A.nodes[tail(loop[(i + 1) % loop.size()])].p;
      area2 += cross(a, b);
    }
    if (area2 <= 0) {
      ++outer_loops;
      continue;
    }
    ArrFace f;
    Pt cen{Q(0), Q(0)};
    for (int hh : loop) {
      int v = tail(hh);
      f.nodes.push_back(v);
      f.edges.push_back(hh >> 1);
      cen = cen + A.nodes[v].p;
      f.on_box = f.on_box || A.edges[hh >> 1].on_box;
    }
    f.sample = Pt{cen.x / (long)loop.size(), cen.y / (long)loop.size()};
    int fid = (int)A.faces.size();
    for (int hh : loop) {
      auto& ef = A.edge_faces[hh >> 1];
      require(ef[hh & 1] == -1, "Internal", "half-edge claimed by two faces");
      ef[hh & 1] = fid;
    }
    A.faces.push_back(std::move(f));
  }
  require(outer_loops == 1, "Internal", "arrangement walk found multiple outer loops");
  // Euler check: V - E + F = 2 with the outer face counted.
  long V = (long)A.nodes.size(), Ec = (long)A.edges.size(), F = (long)A.faces.size() + 1;
  require(V - Ec + F == 2, "Internal", "arrangement fails the Euler relation");
  return A;
}

}  // namespace tropbt
