// Bitangent classes: catalogue labels, representatives, multiplicities, motifs.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <tropbt/quartic.hpp>
#include <tropbt/randomgen.hpp>
#include <tropbt/shapes.hpp>

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

Pt pt(long x, long y) { return Pt{Q(x), Q(y)}; }

// (position, multiplicity) pairs of a class, sorted.
std::vector<std::pair<Pt, int>> reps_of(const BitangentClass& b) {
  std::vector<std::pair<Pt, int>> v;
  for (const auto& r : b.representatives) v.push_back({r.first.vertex, r.second});
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

int class_total(const BitangentClass& b) {
  int t = 0;
  for (const auto& r : b.representatives) t += r.second;
  return t;
}

std::multiset<int> mult_pattern(const BitangentClass& b) {
  std::multiset<int> p;
  for (const auto& r : b.representatives) p.insert(r.second);
  return p;
}

}  // namespace

TEST_CASE("bundled quartic: seven classes with total lifting weight 28") {
  auto c = bundled_quartic();
  auto classes = bitangent_classes(c);
  REQUIRE(classes.size() == 7);
  int total = 0;
  for (const auto& b : classes) {
    REQUIRE(class_total(b) == 4);
    total += class_total(b);
  }
  REQUIRE(total == 28);
}

TEST_CASE("bundled quartic: catalogue labels") {
  auto c = bundled_quartic();
  auto classes = bitangent_classes(c);
  REQUIRE(classes.size() == 7);
  // Classes are sorted by leftmost node.
  CHECK(classes[0].shape.str() == "Va");
  CHECK(classes[1].shape.str() == "A");
  CHECK(classes[2].shape.str() == "WaII");
  CHECK(classes[3].shape.str() == "Ea");
  CHECK(classes[4].shape.str() == "A");
  CHECK(classes[5].shape.str() == "Eb");
  CHECK(classes[6].shape.str() == "A");
}

TEST_CASE("bundled quartic: representatives and multiplicities") {
  auto c = bundled_quartic();
  auto classes = bitangent_classes(c);
  REQUIRE(classes.size() == 7);
  using RV = std::vector<std::pair<Pt, int>>;
  CHECK(reps_of(classes[0]) == RV{{pt(-2, 8), 2}, {pt(8, -2), 2}});
  CHECK(reps_of(classes[1]) == RV{{pt(-2, 12), 4}});
  CHECK(reps_of(classes[2]) ==
        RV{{pt(4, 4), 1}, {pt(4, 8), 1}, {pt(8, 4), 1}, {pt(8, 8), 1}});
  CHECK(reps_of(classes[3]) == RV{{pt(4, 12), 2}, {pt(8, 12), 2}});
  CHECK(reps_of(classes[4]) == RV{{pt(12, -2), 4}});
  CHECK(reps_of(classes[5]) == RV{{pt(12, 4), 2}, {pt(12, 8), 2}});
  CHECK(reps_of(classes[6]) == RV{{pt(12, 12), 4}});
}

TEST_CASE("bundled quartic: class dimensions and boundedness") {
  auto c = bundled_quartic();
  auto classes = bitangent_classes(c);
  REQUIRE(classes.size() == 7);
  CHECK(classes[0].dim == 2);
  CHECK(classes[0].unbounded);
  CHECK(classes[1].dim == 0);
  CHECK_FALSE(classes[1].unbounded);
  CHECK(classes[2].dim == 2);
  CHECK_FALSE(classes[2].unbounded);
  CHECK(classes[3].dim == 1);
  CHECK(classes[5].dim == 1);
  CHECK(classes[6].dim == 0);
}

TEST_CASE("bundled quartic: dual motifs") {
  auto c = bundled_quartic();
  auto classes = bitangent_classes(c);
  REQUIRE(classes.size() == 7);
  // The unbounded planar class meets six vertices and eight edge interiors of
  // the curve across its deformations; each point/segment class meets four
  // vertices and two edge interiors.
  CHECK(classes[0].motif.triangles.size() == 6);
  CHECK(classes[0].motif.edges.size() == 8);
  for (int i : {1, 3, 4, 5, 6}) {
    CHECK(classes[i].motif.triangles.size() == 4);
    CHECK(classes[i].motif.edges.size() == 2);
  }
  CHECK(classes[2].motif.triangles.size() == 4);
  CHECK(classes[2].motif.edges.size() == 2);
}

TEST_CASE("bundled quartic: representatives are bitangent positions") {
  auto c = bundled_quartic();
  auto classes = bitangent_classes(c);
  for (const auto& b : classes)
    for (const auto& r : b.representatives) {
      LineProfile lp = analyze_line(c, r.first.vertex);
      CHECK(lp.bitangent);
      CHECK(lp.lift_mult > 0);
    }
}

TEST_CASE("multiplicity patterns match the catalogue's four options") {
  auto c = bundled_quartic();
  auto classes = bitangent_classes(c);
  const std::set<std::multiset<int>> allowed = {
      {4}, {2, 2}, {1, 1, 2}, {1, 1, 1, 1}};
  for (const auto& b : classes) CHECK(allowed.count(mult_pattern(b)) == 1);
}

TEST_CASE("random quartics: seven classes, total 28, valid patterns") {
  std::mt19937_64 rng(20260817);
  const std::set<std::multiset<int>> allowed = {
      {4}, {2, 2}, {1, 1, 2}, {1, 1, 1, 1}};
  for (int trial = 0; trial < 25; ++trial) {
    RandomQuartic rq = random_smooth_quartic(rng);
    std::vector<BitangentClass> classes;
    REQUIRE_NOTHROW(classes = bitangent_classes(rq.curve));
    REQUIRE(classes.size() == 7);
    int total = 0;
    std::set<Pt> seen;
    for (const auto& b : classes) {
      REQUIRE(class_total(b) == 4);
      CHECK(allowed.count(mult_pattern(b)) == 1);
      CHECK(!b.shape.base.empty());
      for (const auto& r : b.representatives) {
        // Representatives are distinct across the whole curve.
        CHECK(seen.insert(r.first.vertex).second);
      }
      total += class_total(b);
    }
    REQUIRE(total == 28);
  }
}

TEST_CASE("swapping the two variables mirrors every class") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 8; ++trial) {
    RandomQuartic rq = random_smooth_quartic(rng);
    QuarticInput mirrored;
    for (const auto& [mono, coeff] : rq.q.coeffs)
      mirrored.coeffs[IPt{mono.j, mono.i}] = coeff;
    auto msub = newton_subdivision(mirrored);
    check_smooth(msub);
    auto mc = build_curve(msub);
    auto orig = bitangent_classes(rq.curve);
    auto mirr = bitangent_classes(mc);
    REQUIRE(orig.size() == mirr.size());
    // Multiset of representative positions must be the mirror image.
    std::multiset<std::pair<Pt, int>> a, b;
    for (const auto& cls : orig)
      for (const auto& r : cls.representatives)
        a.insert({Pt{r.first.vertex.y, r.first.vertex.x}, r.second});
    for (const auto& cls : mirr)
      for (const auto& r : cls.representatives) b.insert({r.first.vertex, r.second});
    REQUIRE(a == b);
    // Shape bases are preserved up to the x-y symmetry of the catalogue,
    // which never changes the base letter.
    std::multiset<std::string> ba, bb;
    for (const auto& cls : orig) ba.insert(cls.shape.base);
    for (const auto& cls : mirr) bb.insert(cls.shape.base);
    REQUIRE(ba == bb);
  }
}
