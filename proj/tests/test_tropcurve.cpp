#include <catch2/catch_amalgamated.hpp>
#include <tropbt/tropcurve.hpp>

#include <fstream>

using namespace tropbt;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

QuarticInput bundled_quartic() {
  return parse_quartic(slurp(std::string(TROPBT_DATA_DIR) + "/running_example.quartic"));
}

// Tropical line with vertex (p,q) realized as a degree-1 curve.
TropicalCurve line_curve(const Pt& v) {
  std::map<IPt, Q> H;
  H[{0, 1}] = 0;
  H[{0, 0}] = v.y;
  H[{1, 0}] = v.y - v.x;
  return build_curve(newton_subdivision_of(H, 1));
}

const CurveVertex* vertex_dual_to(const TropicalCurve& c, std::vector<IPt> tri) {
  std::sort(tri.begin(), tri.end());
  for (const auto& v : c.vertices) {
    std::vector<IPt> d = v.dual;
    std::sort(d.begin(), d.end());
    if (d == tri) return &v;
  }
  return nullptr;
}

const CurveEdge* edge_dual_to(const TropicalCurve& c, IPt a, IPt b) {
  if (b < a) std::swap(a, b);
  for (const auto& e : c.edges)
    if (e.du0 == a && e.du1 == b) return &e;
  return nullptr;
}

}  // namespace

TEST_CASE("degree-1 curve: single vertex, three rays") {
  std::map<IPt, Q> H;
  H[{1, 0}] = 0;
  H[{0, 1}] = 0;
  H[{0, 0}] = -1;  // heights of V(x + y + t)
  TropicalCurve c = build_curve(newton_subdivision_of(H, 1));
  REQUIRE(c.vertices.size() == 1);
  CHECK(c.vertices[0].pos == Pt{Q(-1), Q(-1)});
  CHECK(c.edges.empty());
  REQUIRE(c.rays.size() == 3);
  std::set<std::pair<int, int>> dirs;
  for (const auto& r : c.rays) dirs.insert({r.dir.i, r.dir.j});
  CHECK(dirs == std::set<std::pair<int, int>>{{-1, 0}, {0, -1}, {1, 1}});
}

TEST_CASE("conic duality counts") {
  std::map<IPt, Q> H;
  H[{2, 0}] = 1; H[{1, 1}] = 2; H[{0, 2}] = 1;
  H[{1, 0}] = 2; H[{0, 1}] = 2; H[{0, 0}] = 1;
  TropicalCurve c = build_curve(newton_subdivision_of(H, 2));
  CHECK(c.vertices.size() == 4);
  CHECK(c.edges.size() == 3);
  CHECK(c.rays.size() == 6);
}

TEST_CASE("bundled quartic curve: duality counts, weights, ray directions") {
  TropicalCurve c = build_curve(newton_subdivision(bundled_quartic()));
  CHECK(c.vertices.size() == 16);
  CHECK(c.edges.size() == 18);
  CHECK(c.rays.size() == 12);
  std::map<std::pair<int, int>, int> raydirs;
  for (const auto& r : c.rays) {
    CHECK(r.weight == 1);
    raydirs[{r.dir.i, r.dir.j}]++;
  }
  for (const auto& e : c.edges) CHECK(e.weight == 1);
  CHECK(raydirs[{0, -1}] == 4);
  CHECK(raydirs[{-1, 0}] == 4);
  CHECK(raydirs[{1, 1}] == 4);

  // spot-check dual vertex positions used by the worked bitangent example
  const CurveVertex* vu = vertex_dual_to(c, {{0, 1}, {1, 2}, {2, 2}});
  REQUIRE(vu != nullptr);
  CHECK(vu->pos == Pt{Q(-4), Q(8)});
  const CurveVertex* vl = vertex_dual_to(c, {{0, 1}, {1, 1}, {2, 2}});
  REQUIRE(vl != nullptr);
  CHECK(vl->pos == Pt{Q(-2), Q(4)});
  const CurveEdge* e = edge_dual_to(c, {2, 1}, {3, 1});
  REQUIRE(e != nullptr);
  Pt p0 = c.vertices[e->v0].pos, p1 = c.vertices[e->v1].pos;
  CHECK(p0.x == 12);
  CHECK(p1.x == 12);
  CHECK(std::min(p0.y, p1.y) == -5);
  CHECK(std::max(p0.y, p1.y) == -4);
}

TEST_CASE("two generic tropical lines meet in one point of multiplicity 1") {
  TropicalCurve c = line_curve(Pt{Q(0), Q(0)});
  auto st = stable_intersection(c, TropicalLine{Pt{Q(5), Q(3)}});
  REQUIRE(st.size() == 1);
  CHECK(st[0].first == Pt{Q(3), Q(3)});
  CHECK(st[0].second == 1);
}

TEST_CASE("line through the vertex of another line still gives total 1") {
  TropicalCurve c = line_curve(Pt{Q(0), Q(0)});
  auto st = stable_intersection(c, TropicalLine{Pt{Q(0), Q(0)}});
  long total = 0;
  for (auto& [p, m] : st) total += m;
  CHECK(total == 1);
  REQUIRE(st.size() == 1);
  CHECK(st[0].first == Pt{Q(0), Q(0)});
}

TEST_CASE("generic line meets the quartic in four simple points") {
  TropicalCurve c = build_curve(newton_subdivision(bundled_quartic()));
  TropicalLine l{Pt{Q(100), Q(50)}};
  auto st = stable_intersection(c, l);
  long total = 0;
  for (auto& [p, m] : st) { total += m; CHECK(m == 1); }
  CHECK(total == 4);
  auto [bt, comps] = is_bitangent(c, l);
  CHECK_FALSE(bt);
  int positive = 0;
  for (auto& comp : comps)
    if (comp.total_mult > 0) ++positive;
  CHECK(positive == 4);
}

TEST_CASE("worked bitangent: vertical-ray overlap plus vertex tangency") {
  TropicalCurve c = build_curve(newton_subdivision(bundled_quartic()));

  SECTION("upper representative (12,8)") {
    TropicalLine l{Pt{Q(12), Q(8)}};
    auto [bt, comps] = is_bitangent(c, l);
    REQUIRE(bt);
    std::vector<long> mults;
    for (auto& comp : comps)
      if (comp.total_mult > 0) mults.push_back(comp.total_mult);
    std::sort(mults.begin(), mults.end());
    CHECK(mults == std::vector<long>{2, 2});
    // one component is the curve vertex (-4,8), the other the vertical
    // edge segment at x = 12 with midpoint (12,-5)
    bool saw_vertex = false, saw_segment = false;
    for (auto& comp : comps) {
      if (comp.total_mult != 2) continue;
      if (comp.carrier == IntersectionComponent::Carrier::Point) {
        CHECK(comp.point == Pt{Q(-4), Q(8)});
        REQUIRE(comp.tangency_points.size() == 1);
        CHECK(comp.tangency_points[0] == Pt{Q(-4), Q(8)});
        saw_vertex = true;
      }
      if (comp.carrier == IntersectionComponent::Carrier::Segment) {
        std::vector<Pt> ends{comp.seg_a, comp.seg_b};
        std::sort(ends.begin(), ends.end());
        CHECK(ends == std::vector<Pt>{Pt{Q(12), Q(-5)}, Pt{Q(12), Q(-4)}});
        REQUIRE(comp.tangency_points.size() == 1);
        CHECK(comp.tangency_points[0] == Pt{Q(12), frac(-9, 2)});
        saw_segment = true;
      }
    }
    CHECK(saw_vertex);
    CHECK(saw_segment);
  }
  SECTION("interior point (12,6) of the class is still bitangent") {
    auto [bt, comps] = is_bitangent(c, TropicalLine{Pt{Q(12), Q(6)}});
    REQUIRE(bt);
    bool saw_cross = false;
    for (auto& comp : comps) {
      if (comp.total_mult == 2 && comp.carrier == IntersectionComponent::Carrier::Point &&
          comp.point == Pt{Q(-3), Q(6)})
        saw_cross = true;
    }
    CHECK(saw_cross);
  }
  SECTION("lower representative (12,4)") {
    auto [bt, comps] = is_bitangent(c, TropicalLine{Pt{Q(12), Q(4)}});
    REQUIRE(bt);
    bool saw_vertex = false;
    for (auto& comp : comps)
      if (comp.carrier == IntersectionComponent::Carrier::Point && comp.point == Pt{Q(-2), Q(4)})
        saw_vertex = true;
    CHECK(saw_vertex);
  }
  SECTION("just above the class: not bitangent") {
    auto [bt, comps] = is_bitangent(c, TropicalLine{Pt{Q(12), Q(9)}});
    CHECK_FALSE(bt);
  }
  SECTION("segment midpoints: stable points fall inside the component") {
    auto st = stable_intersection(c, TropicalLine{Pt{Q(12), Q(8)}});
    long total = 0;
    bool vertex2 = false;
    for (auto& [p, m] : st) {
      total += m;
      if (p == Pt{Q(-4), Q(8)}) { CHECK(m == 2); vertex2 = true; }
    }
    CHECK(total == 4);
    CHECK(vertex2);
  }
}

TEST_CASE("bundled quartic is alignment-free") {
  TropicalCurve c = build_curve(newton_subdivision(bundled_quartic()));
  GenericityReport rep = check_generic(c);
  CHECK(rep.alignment_free());
}

TEST_CASE("a staple-shaped alignment is reported") {
  // Two downward 3-valent vertices at the same height, each with a bounded
  // horizontal edge pointing away from the other, connected only over a
  // raised horizontal bar: a horizontal line ray covering both vertices
  // would pick up two separate overlap tangencies.
  TropicalCurve c;
  c.degree = 4;
  auto addv = [&](Q x, Q y) {
    CurveVertex v;
    v.pos = Pt{x, y};
    c.vertices.push_back(v);
    return static_cast<int>(c.vertices.size() - 1);
  };
  int w1 = addv(-2, 0), a = addv(0, 0), cc = addv(1, 1), d = addv(3, 1),
      b = addv(4, 0), e1 = addv(6, 0);
  auto adde = [&](int u, int v, int di, int dj) {
    CurveEdge e;
    e.v0 = u; e.v1 = v; e.dir = IPt{di, dj}; e.weight = 1;
    c.edges.push_back(e);
  };
  auto addr = [&](int u, int di, int dj) {
    CurveRay r;
    r.v = u; r.dir = IPt{di, dj}; r.weight = 1;
    c.rays.push_back(r);
  };
  adde(w1, a, 1, 0);
  adde(a, cc, 1, 1);
  adde(cc, d, 1, 0);
  adde(d, b, 1, -1);
  adde(b, e1, 1, 0);
  addr(w1, -1, 0);
  addr(a, 0, -1);
  addr(cc, 0, 1);
  addr(d, 0, 1);
  addr(b, 0, -1);
  addr(e1, 1, 0);
  GenericityReport rep = check_generic(c);
  CHECK_FALSE(rep.alignment_free());
  bool found_ab = false;
  for (const auto& al : rep.alignments)
    if (al.axis == 'h' && ((al.v0 == a && al.v1 == b) || (al.v0 == b && al.v1 == a)))
      found_ab = true;
  CHECK(found_ab);
}

TEST_CASE("outgoing-ray alignment is harmless") {
  // Vertex with a (1,1) curve ray sitting diagonal-aligned with a plain
  // vertex: the unbounded overlap can never be a tangency, so the pair is
  // not an obstruction to genericity.
  TropicalCurve c = build_curve(newton_subdivision(bundled_quartic()));
  // (10,-6) and (12,-4) share x-y = 16 with no joining edge; the (12,-4)
  // vertex carries the (1,1) ray.  The scan must stay silent.
  bool has10 = false, has12 = false;
  for (const auto& v : c.vertices) {
    if (v.pos == Pt{Q(10), Q(-6)}) has10 = true;
    if (v.pos == Pt{Q(12), Q(-4)}) has12 = true;
  }
  REQUIRE(has10);
  REQUIRE(has12);
  CHECK(check_generic(c).alignment_free());
}
