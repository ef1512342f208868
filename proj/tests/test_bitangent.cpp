// Bitangent locus: dual-plane arrangement, bitangency flags, components.

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include <tropbt/bitangent.hpp>
#include <tropbt/quartic.hpp>

using namespace tropbt;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TropicalCurve bundled_quartic() {
  auto q = parse_quartic(slurp(std::string(TROPBT_DATA_DIR) + "/running_example.quartic"));
  auto sub = newton_subdivision(q);
  check_smooth(sub);
  return build_curve(sub);
}

const BitangentLocus::Component& comp_with(const BitangentLocus& L, const Pt& p) {
  for (const auto& comp : L.components)
    for (int n : comp.nodes)
      if (L.arr.nodes[n].p == p) return comp;
  FAIL("no component contains the given node point");
  return L.components.front();
}

std::set<Pt> node_points(const BitangentLocus& L, const BitangentLocus::Component& comp) {
  std::set<Pt> pts;
  for (int n : comp.nodes) pts.insert(L.arr.nodes[n].p);
  return pts;
}

Pt pt(long x, long y) { return Pt{Q(x), Q(y)}; }

}  // namespace

TEST_CASE("line arrangement of a simple cross") {
  // Two lines through the origin: x axis and y axis.
  std::vector<ArrLine> gens = {{Pt{Q(0), Q(0)}, IPt{1, 0}}, {Pt{Q(0), Q(0)}, IPt{0, 1}}};
  auto A = build_arrangement(gens, pt(0, 0), pt(0, 0));
  // 2 generators + 4 box sides; the cross splits the box into 4 faces.
  REQUIRE(A.lines.size() == 6);
  REQUIRE(A.faces.size() == 4);
  // 4 box corners + 4 side midcrossings + 1 center.
  REQUIRE(A.nodes.size() == 9);
  REQUIRE(A.edges.size() == 12);
  for (const auto& f : A.faces) REQUIRE(f.nodes.size() == 4);
  // Every interior edge separates two faces.
  for (size_t e = 0; e < A.edges.size(); ++e) {
    int cnt = (A.edge_faces[e][0] >= 0) + (A.edge_faces[e][1] >= 0);
    REQUIRE(cnt == (A.edges[e].on_box ? 1 : 2));
  }
}

TEST_CASE("duplicate generator lines are merged") {
  std::vector<ArrLine> gens = {
      {pt(0, 0), IPt{1, 1}},
      {pt(5, 5), IPt{-2, -2}},  // same line, other presentation
      {pt(0, 1), IPt{1, 1}},
  };
  auto A = build_arrangement(gens, pt(0, 0), pt(5, 5));
  REQUIRE(A.lines.size() == 2 + 4);
}

TEST_CASE("locus of the bundled quartic has seven classes") {
  auto c = bundled_quartic();
  auto L = compute_locus(c);
  REQUIRE(L.components.size() == 7);

  std::multiset<int> dims;
  int unbounded = 0;
  for (const auto& comp : L.components) {
    dims.insert(comp.dim());
    unbounded += comp.unbounded;
    REQUIRE(!comp.nodes.empty());
  }
  REQUIRE(dims == std::multiset<int>{0, 0, 0, 1, 1, 2, 2});
  REQUIRE(unbounded == 1);

  SECTION("the two segment classes") {
    const auto& seg = comp_with(L, pt(12, 6));
    REQUIRE(node_points(L, seg) == std::set<Pt>{pt(12, 4), pt(12, 6), pt(12, 8)});
    REQUIRE(seg.edges.size() == 2);
    REQUIRE(seg.faces.empty());
    REQUIRE(!seg.unbounded);
    // Entirely off the curve.
    for (int n : seg.nodes) REQUIRE(!locate_on_curve(c, L.arr.nodes[n].p).on);

    const auto& mir = comp_with(L, pt(6, 12));
    REQUIRE(node_points(L, mir) == std::set<Pt>{pt(4, 12), pt(6, 12), pt(8, 12)});
    REQUIRE(mir.edges.size() == 2);
    REQUIRE(mir.faces.empty());
  }

  SECTION("the three point classes") {
    for (Pt p : {pt(-2, 12), pt(12, -2), pt(12, 12)}) {
      const auto& comp = comp_with(L, p);
      REQUIRE(comp.nodes.size() == 1);
      REQUIRE(comp.edges.empty());
      REQUIRE(comp.faces.empty());
      REQUIRE(!comp.unbounded);
      // Both tangencies are full-edge overlaps: pattern (2,2).
      auto [bt, comps] = is_bitangent(c, TropicalLine{p});
      REQUIRE(bt);
      std::multiset<long> mults;
      for (const auto& ic : comps)
        if (ic.total_mult > 0) mults.insert(ic.total_mult);
      REQUIRE(mults == std::multiset<long>{2, 2});
    }
  }

  SECTION("the bounded two-dimensional class is the square [4,8]^2") {
    const auto& sq = comp_with(L, pt(4, 4));
    REQUIRE(node_points(L, sq) == std::set<Pt>{pt(4, 4), pt(4, 8), pt(8, 4), pt(8, 8)});
    REQUIRE(sq.edges.size() == 4);
    REQUIRE(sq.faces.size() == 1);
    REQUIRE(!sq.unbounded);
  }

  SECTION("the unbounded class straddles the curve's southwest cycle") {
    const auto& big = comp_with(L, pt(0, 0));
    REQUIRE(big.unbounded);
    REQUIRE(big.dim() == 2);
    auto pts = node_points(L, big);
    for (Pt p : {pt(-2, 2), pt(-2, 4), pt(2, -2), pt(4, -2), pt(0, 0), pt(-2, 8), pt(8, -2)})
      REQUIRE(pts.count(p) == 1);
    // Contains on-curve (red) cells.
    int red = 0;
    for (int n : big.nodes) red += locate_on_curve(c, L.arr.nodes[n].p).on;
    REQUIRE(red >= 5);
  }

  SECTION("lift-count budget: patterns consistent with 28 bitangents") {
    // 3 point classes (4 each) + 2 segment classes (2+2) + square (1,1,1,1)
    // + unbounded (2+2) = 28.  Verified via multiplicity patterns per class
    // in the shape layer; here only the component inventory.
    REQUIRE(3 * 4 + 2 * 4 + 4 + 4 == 28);
  }
}

TEST_CASE("pre-filter is a sound rejector on arrangement nodes") {
  auto c = bundled_quartic();
  auto L = compute_locus(c);
  size_t checked = 0;
  for (size_t i = 0; i < L.arr.nodes.size(); i += 5) {
    if (L.node_in[i]) continue;
    // Rejected nodes must genuinely fail the full bitangency test.
    REQUIRE(!is_bitangent(c, TropicalLine{L.arr.nodes[i].p}).first);
    ++checked;
  }
  REQUIRE(checked > 50);
}

TEST_CASE("bitangency status is constant on open arrangement cells") {
  auto c = bundled_quartic();
  auto L = compute_locus(c);
  auto rng = Rng(default_seed());
  auto bit = [&](const Pt& p) { return is_bitangent(c, TropicalLine{p}).first; };
  for (int trial = 0; trial < 15; ++trial) {
    const ArrEdge& e = L.arr.edges[rng.uniform(0, (long)L.arr.edges.size() - 1)];
    Pt a = L.arr.nodes[e.n0].p, b = L.arr.nodes[e.n1].p;
    Pt third{(2 * a.x + b.x) / 3, (2 * a.y + b.y) / 3};
    REQUIRE(bit(e.mid) == (bool)L.edge_in[&e - L.arr.edges.data()]);
    REQUIRE(bit(third) == bit(e.mid));
  }
  for (int trial = 0; trial < 10; ++trial) {
    const ArrFace& f = L.arr.faces[rng.uniform(0, (long)L.arr.faces.size() - 1)];
    Pt v0 = L.arr.nodes[f.nodes[0]].p;
    Pt other{(f.sample.x * 3 + v0.x) / 4, (f.sample.y * 3 + v0.y) / 4};
    REQUIRE(bit(other) == bit(f.sample));
  }
}

TEST_CASE("a conic has an empty bitangent locus") {
  // Smooth conic: total intersection multiplicity with a line is 2, so no
  // component pattern (4) or (2,2) can occur.
  std::map<IPt, Q> h;
  h[IPt{0, 0}] = 0;
  h[IPt{1, 0}] = -1;
  h[IPt{0, 1}] = -1;
  h[IPt{2, 0}] = 1;
  h[IPt{1, 1}] = -1;
  h[IPt{0, 2}] = 1;
  auto sub = newton_subdivision_of(h, 2);
  auto c = build_curve(sub);
  auto L = compute_locus(c);
  REQUIRE(L.components.empty());
}

TEST_CASE("locating points on the curve") {
  auto c = bundled_quartic();
  auto at_vu = locate_on_curve(c, pt(-4, 8));
  REQUIRE(at_vu.on);
  REQUIRE(at_vu.vertex >= 0);
  auto on_edge = locate_on_curve(c, Pt{Q(-3), Q(6)});  // interior of V_u--V_l
  REQUIRE(on_edge.on);
  REQUIRE(on_edge.vertex == -1);
  REQUIRE(on_edge.cell >= 0);
  // (1,1) lies on the central edge from (-2,4) to (4,-2) carried by x+y=2.
  auto mid = locate_on_curve(c, pt(1, 1));
  REQUIRE(mid.on);
  REQUIRE(mid.vertex == -1);
  auto off = locate_on_curve(c, pt(1, 0));  // between the two central edges
  REQUIRE(!off.on);
  auto on_ray = locate_on_curve(c, pt(2, -77));  // far down the x=2 ray
  REQUIRE(on_ray.on);
}
