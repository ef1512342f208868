#include <catch2/catch_amalgamated.hpp>
#include <tropbt/quartic.hpp>

#include <fstream>
#include <numeric>

using namespace tropbt;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string data_file(const std::string& name) {
  return std::string(TROPBT_DATA_DIR) + "/" + name;
}

// Independent upper-hull oracle: enumerate every lifted triple, keep the
// triangles whose plane has all lifted points weakly below, then merge
// edge-adjacent coplanar triangles into maximal faces with union-find.
std::vector<std::vector<IPt>> oracle_subdivision(const std::map<IPt, Q>& H) {
  std::vector<IPt> pts;
  for (const auto& [s, h] : H) pts.push_back(s);
  const int n = static_cast<int>(pts.size());
  auto h = [&](const IPt& s) { return H.at(s); };

  struct Tri {
    std::array<IPt, 3> v;
    std::array<Q, 3> plane;
  };
  std::vector<Tri> tris;
  for (int ia = 0; ia < n; ++ia)
    for (int ib = ia + 1; ib < n; ++ib)
      for (int ic = ib + 1; ic < n; ++ic) {
        IPt A = pts[ia], B = pts[ib], C = pts[ic];
        long det = icross(B - A, C - A);
        if (det == 0) continue;
        Q dq(det);
        Q a = ((h(B) - h(A)) * (C.j - A.j) - (h(C) - h(A)) * (B.j - A.j)) / dq;
        Q b = ((B.i - A.i) * (h(C) - h(A)) - (C.i - A.i) * (h(B) - h(A))) / dq;
        Q c = h(A) - a * A.i - b * A.j;
        bool upper = true;
        for (const IPt& p : pts)
          if (h(p) > a * p.i + b * p.j + c) { upper = false; break; }
        if (!upper) continue;
        tris.push_back({{A, B, C}, {a, b, c}});
      }

  std::vector<int> parent(tris.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto shared = [](const Tri& s, const Tri& t) {
    int c = 0;
    for (const IPt& p : s.v)
      for (const IPt& q : t.v)
        if (p == q) ++c;
    return c;
  };
  for (size_t s = 0; s < tris.size(); ++s)
    for (size_t t = s + 1; t < tris.size(); ++t)
      if (tris[s].plane == tris[t].plane && shared(tris[s], tris[t]) >= 2)
        parent[find(static_cast<int>(s))] = find(static_cast<int>(t));

  std::map<int, std::vector<IPt>> groups;
  for (size_t t = 0; t < tris.size(); ++t) {
    auto& g = groups[find(static_cast<int>(t))];
    g.insert(g.end(), tris[t].v.begin(), tris[t].v.end());
  }
  std::vector<std::vector<IPt>> faces;
  for (auto& [root, vs] : groups) faces.push_back(detail::hull_ccw(std::move(vs)));
  std::sort(faces.begin(), faces.end(), [](const std::vector<IPt>& f, const std::vector<IPt>& g) {
    std::vector<IPt> fs = f, gs = g;
    std::sort(fs.begin(), fs.end());
    std::sort(gs.begin(), gs.end());
    return fs < gs;
  });
  return faces;
}

}  // namespace

TEST_CASE("parse the bundled quartic") {
  QuarticInput q = parse_quartic(slurp(data_file("running_example.quartic")));
  CHECK(q.coeffs.size() == 15);
  CHECK(q.at({2, 2}).valuation == 2);
  CHECK(q.at({1, 1}).valuation == 0);
  CHECK(q.at({4, 0}).valuation == 36);
  CHECK(q.at({0, 3}).valuation == 23);
  CHECK_FALSE(q.has_symbolic());
  for (const auto& [s, c] : q.coeffs) CHECK(c.initial == 1);
}

TEST_CASE("parser rejects bad input") {
  std::string good = slurp(data_file("running_example.quartic"));

  SECTION("missing coefficient") {
    std::string txt;
    std::istringstream in(good);
    std::string line;
    while (std::getline(in, line))
      if (line.find("A 4 0") != 0) txt += line + "\n";
    try {
      parse_quartic(txt);
      FAIL("expected MissingCoefficient");
    } catch (const Error& e) {
      CHECK(e.code() == "MissingCoefficient");
      CHECK(std::string(e.what()).find("(4,0)") != std::string::npos);
    }
  }
  SECTION("zero initial") {
    std::string txt = good;
    auto pos = txt.find("A 1 1 0 1");
    REQUIRE(pos != std::string::npos);
    txt.replace(pos, 9, "A 1 1 0 0");
    try {
      parse_quartic(txt);
      FAIL("expected ZeroInitial");
    } catch (const Error& e) {
      CHECK(e.code() == "ZeroInitial");
    }
  }
  SECTION("malformed line") {
    try {
      parse_quartic("A 1 1 zero 1\n");
      FAIL("expected MalformedLine");
    } catch (const Error& e) {
      CHECK(e.code() == "MalformedLine");
    }
    CHECK_THROWS_AS(parse_quartic("B 1 1 0 1\n"), Error);
    CHECK_THROWS_AS(parse_quartic("A 5 0 0 1\n"), Error);
    CHECK_THROWS_AS(parse_quartic("A 1 1 0 1 junk\n"), Error);
  }
  SECTION("fractional valuations and symbolic initials parse") {
    std::string txt = good;
    auto pos = txt.find("A 1 1 0 1");
    txt.replace(pos, 9, "A 1 1 -3/2 sym");
    QuarticInput q = parse_quartic(txt);
    CHECK(q.at({1, 1}).valuation == Q(-3, 2));
    CHECK(q.at({1, 1}).symbolic);
    CHECK(q.has_symbolic());
  }
}

TEST_CASE("conic subdivision matches the worked example") {
  std::map<IPt, Q> H;
  H[{2, 0}] = 1; H[{1, 1}] = 2; H[{0, 2}] = 1;
  H[{1, 0}] = 2; H[{0, 1}] = 2; H[{0, 0}] = 1;
  RegularSubdivision s = newton_subdivision_of(H, 2);
  std::vector<std::vector<IPt>> expect = {
      {{0, 0}, {1, 0}, {0, 1}},
      {{0, 1}, {1, 1}, {0, 2}},
      {{1, 0}, {1, 1}, {0, 1}},
      {{1, 0}, {2, 0}, {1, 1}},
  };
  // canonicalize expected: ccw starting at lex-min, faces sorted
  for (auto& f : expect) f = detail::hull_ccw(std::move(f));
  std::sort(expect.begin(), expect.end());
  std::vector<std::vector<IPt>> got = s.faces;
  std::sort(got.begin(), got.end());
  CHECK(got == expect);
  CHECK(oracle_subdivision(H) == s.faces);
}

TEST_CASE("flat heights give a single face") {
  QuarticInput q;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; i + j <= 4; ++j) q.coeffs[{i, j}] = PuiseuxCoeff{Q(0), false, Q(1)};
  RegularSubdivision s = newton_subdivision(q);
  REQUIRE(s.faces.size() == 1);
  CHECK(s.faces[0] == std::vector<IPt>{{0, 0}, {4, 0}, {0, 4}});
  CHECK_FALSE(check_smooth(s));
}

TEST_CASE("bundled quartic is smooth: 16 unimodular triangles") {
  QuarticInput q = parse_quartic(slurp(data_file("running_example.quartic")));
  RegularSubdivision s = newton_subdivision(q);
  REQUIRE(s.faces.size() == 16);
  for (const auto& f : s.faces) {
    REQUIRE(f.size() == 3);
    CHECK(std::abs(icross(f[1] - f[0], f[2] - f[0])) == 1);
  }
  CHECK(check_smooth(s));
  // all 15 lattice points appear
  std::set<IPt> used;
  for (const auto& f : s.faces) used.insert(f.begin(), f.end());
  CHECK(used.size() == 15);
}

TEST_CASE("degree mismatch is rejected by the smoothness check") {
  std::map<IPt, Q> H;
  H[{2, 0}] = 1; H[{1, 1}] = 2; H[{0, 2}] = 1;
  H[{1, 0}] = 2; H[{0, 1}] = 2; H[{0, 0}] = 1;
  RegularSubdivision s = newton_subdivision_of(H, 2);
  CHECK_THROWS_AS(check_smooth(s), Error);
}

TEST_CASE("subdivision equals the brute-force oracle on random heights") {
  Rng rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    std::map<IPt, Q> H;
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; i + j <= 4; ++j)
        H[{i, j}] = frac(rng.uniform(-12, 12), trial % 3 == 0 ? 2 : 1);
    RegularSubdivision s = newton_subdivision_of(H, 4);
    CHECK(oracle_subdivision(H) == s.faces);
  }
}

TEST_CASE("height shifts do not change the subdivision") {
  QuarticInput q = parse_quartic(slurp(data_file("running_example.quartic")));
  std::map<IPt, Q> H = q.heights();
  RegularSubdivision s1 = newton_subdivision_of(H, 4);
  for (auto& [s, h] : H) h += Q(7, 3);
  RegularSubdivision s2 = newton_subdivision_of(H, 4);
  CHECK(s1.faces == s2.faces);
}
