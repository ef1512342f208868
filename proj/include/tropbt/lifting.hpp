#pragma once

// Deciding whether the four lifts of a tropical bitangent class are rational
// over the valued field, given the residue initials of the quartic.
//
// Every rigid tangency component of a representative line yields a local
// system (curve initial form, line initial form, Wronskian).  Solving it
// either pins a ratio of line coefficients as an exact Laurent monomial in
// the initials a_ij, or pins it up to a square root.  The class lifts over a
// residue field exactly when every such radicand is a square there; the four
// lifts of one class always share a single obstruction.

#include "tropbt/shapes.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace tropbt {

inline SquareClassExpr init_sym(const IPt& p) { return SquareClassExpr::symbol(p.i, p.j); }

namespace lifting_detail {

// Third vertex of a dual triangle, opposite the edge q--qp.
inline IPt apex(const std::vector<IPt>& tri, const IPt& q, const IPt& qp) {
  require(tri.size() == 3, "Internal", "dual cell of a smooth-curve vertex must be a triangle");
  for (const IPt& p : tri)
    if (p != q && p != qp) return p;
  fail("Internal", "degenerate dual triangle");
}

}  // namespace lifting_detail

// ======================================================================
// Twist data of a bounded curve edge (dual edge q--q', flanking apexes r, r').

struct TwistContext {
  IPt q{}, qp{};
  IPt r{}, rp{};
  int delta = 0;
};

// Parity test: 0 when the two lattice points agree componentwise mod 2.
inline int delta(const IPt& r, const IPt& rp) {
  return ((r.i - rp.i) % 2 != 0 || (r.j - rp.j) % 2 != 0) ? 1 : 0;
}

inline TwistContext twist_context(const TropicalCurve& c, int cell) {
  require(cell >= 0 && cell < (int)c.cells.size(), "Internal", "twist_context: bad cell id");
  const CurveCell& e = c.cells[cell];
  require(!e.is_ray, "Internal", "twist_context: twist is defined for bounded edges only");
  TwistContext t;
  t.q = e.du0;
  t.qp = e.du1;
  t.r = lifting_detail::apex(c.vertices[e.v0].dual, e.du0, e.du1);
  t.rp = lifting_detail::apex(c.vertices[e.v1].dual, e.du0, e.du1);
  t.delta = delta(t.r, t.rp);
  return t;
}

// (-1)^delta * a_r * a_r' * (a_q * a_q')^delta
inline SquareClassExpr twist_radicand(const TwistContext& t) {
  SquareClassExpr e = SquareClassExpr::constant(Q(t.delta ? -1 : 1))
                          .times(init_sym(t.r))
                          .times(init_sym(t.rp));
  if (t.delta) e = e.times(init_sym(t.q)).times(init_sym(t.qp));
  return e;
}

inline bool is_twisted(const TwistContext& t, const InitialAssignment& asg,
                       const ResidueFieldSpec& k) {
  return !is_square(twist_radicand(t), asg, k);
}

// ======================================================================
// Line coefficient initials.  The line is lb = b00 + b10*x + b01*y,
// projectively; the paper's normal form is l = y + M + Nx, so M = b00/b01
// and N = b10/b01.  Coefficient slots are indexed by the lattice points of
// the line's dual triangle: 0 <-> (0,0), 1 <-> (1,0), 2 <-> (0,1).

struct LineInitials {
  std::array<std::optional<SquareClassExpr>, 3> b{};

  static int slot(const IPt& p) {
    if (p == IPt{0, 0}) return 0;
    if (p == IPt{1, 0}) return 1;
    if (p == IPt{0, 1}) return 2;
    fail("Internal", "not a lattice point of the line's dual triangle");
  }
  static IPt point(int slot) {
    static const IPt pts[3] = {{0, 0}, {1, 0}, {0, 1}};
    return pts[slot];
  }

  const std::optional<SquareClassExpr>& at(const IPt& p) const { return b[slot(p)]; }

  std::optional<SquareClassExpr> ratio(int num, int den) const {
    if (!b[num] || !b[den]) return std::nullopt;
    return b[num]->times(b[den]->inverse());
  }
  std::optional<SquareClassExpr> m() const { return ratio(0, 2); }
  std::optional<SquareClassExpr> n() const { return ratio(1, 2); }
  std::optional<SquareClassExpr> m_over_n() const { return ratio(0, 1); }
};

namespace lifting_detail {

// Dual pair (alpha, beta) of each line ray, and the remaining lattice point.
// Rays are indexed as in line_ray_dirs(): 0 = (-1,0), 1 = (0,-1), 2 = (1,1).
inline IPt ray_alpha(int ray) {
  static const IPt a[3] = {{0, 0}, {0, 0}, {1, 0}};
  require(ray >= 0 && ray < 3, "Internal", "bad line ray index");
  return a[ray];
}
inline IPt ray_beta(int ray) {
  static const IPt b[3] = {{0, 1}, {1, 0}, {0, 1}};
  require(ray >= 0 && ray < 3, "Internal", "bad line ray index");
  return b[ray];
}
inline IPt ray_third(int ray) {
  static const IPt t[3] = {{1, 0}, {0, 1}, {0, 0}};
  require(ray >= 0 && ray < 3, "Internal", "bad line ray index");
  return t[ray];
}

inline int only_ray_bit(int mask) {
  for (int r = 0; r < 3; ++r)
    if (mask == (1 << r)) return r;
  fail("UnsupportedLocalCase", "tangency component is not carried by a single line ray");
}

// Exponents of the monomial x^i y^j after substituting the zero set of the
// ray's dual pair: on that branch X^(beta-alpha) takes a fixed value rho and
// the monomial becomes (coeff) * rho^rexp * z^zexp for a torus coordinate z.
inline void ray_exponents(int ray, const IPt& mexp, int& zexp, int& rexp) {
  switch (ray) {
    case 0: zexp = mexp.i; rexp = mexp.j; return;  // y = rho, x = z
    case 1: zexp = mexp.j; rexp = mexp.i; return;  // x = rho, y = z
    default: zexp = mexp.i + mexp.j; rexp = mexp.j; return;  // x = z, y = rho z
  }
}

inline long idet(const IPt& u, const IPt& v) { return (long)u.i * v.j - (long)u.j * v.i; }

// Primitive completion of a primitive vector w to a lattice basis (u, w)
// with det(u, w) = +1.  Dual vectors of a quartic subdivision have entries
// in [-4, 4], so a bounded search is exact and simple.
inline IPt unimodular_complement(const IPt& w) {
  for (int bound = 1; bound <= 8; ++bound)
    for (int ui = -bound; ui <= bound; ++ui)
      for (int uj = -bound; uj <= bound; ++uj) {
        IPt u{ui, uj};
        if (idet(u, w) == 1) return u;
      }
  fail("Internal", "unimodular_complement needs a primitive vector");
}

}  // namespace lifting_detail

// ======================================================================
// Local tangency cases and their symbolic solutions.

struct LocalCase {
  TangKind kind = TangKind::AtCurveVertex;
  int ray = -1;                   // carrying line ray; derived for AtLineVertex
  std::array<IPt, 3> triangle{};  // AtCurveVertex: dual triangle of the crossed vertex
  IPt q{}, qp{};                  // overlaps / AtLineVertex: dual endpoints of the edge
  IPt r{}, rp{};                  // overlaps: flanking apexes (rp for OverlapFull only)
  IPt edge_dir{};                 // AtLineVertex: primitive direction of the crossed edge
};

struct LocalSolution {
  LineInitials line;                     // ratios pinned by this component alone
  std::optional<SquareClassExpr> x, y;   // initials of the tangency point
  std::optional<SquareClassExpr> radicand;  // square-root obstruction, if any
  int branches = 1;

  // Machine view of the constraint, for cross-component resolution.
  bool has_ratio_pin = false;
  int pin_num = 0, pin_den = 2;  // b[pin_num] / b[pin_den] = ratio
  SquareClassExpr ratio;
  bool has_quad_pin = false;
  int quad_top = 0;  // b[quad_top]^2 / (product of the other two) = quad
  SquareClassExpr quad;
};

namespace lifting_detail {

// Isolated tangency where a line ray crosses a curve vertex: substitute the
// ray's binomial zero set into the vertex's trinomial initial form and force
// a double root.  Unimodularity makes the pinned power of rho always +-1, so
// the line ratio and the tangency point are exact Laurent terms.
inline LocalSolution solve_vertex_crossing(const std::array<IPt, 3>& tri, int ray) {
  struct Term { int z, r; IPt m; };
  std::array<Term, 3> t;
  for (int i = 0; i < 3; ++i) {
    t[i].m = tri[i];
    ray_exponents(ray, tri[i], t[i].z, t[i].r);
  }
  std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.z < b.z; });
  require(t[1].z == t[0].z + 1 && t[2].z == t[0].z + 2,
          "UnsupportedLocalCase",
          "vertex crossing without consecutive substituted exponents (multiplicity > 2)");

  const int E = 2 * t[1].r - t[0].r - t[2].r;
  require(E == 1 || E == -1, "Internal",
          "unimodular vertex triangle must pin the ray ratio with a unit exponent");

  // rho^E = 4 a_lo a_hi / a_mid^2.
  SquareClassExpr base = SquareClassExpr::constant(Q(4))
                             .times(init_sym(t[0].m))
                             .times(init_sym(t[2].m))
                             .times(init_sym(t[1].m).pow(-2));
  SquareClassExpr rho = base.pow(E);

  // Double root z* = -c_mid / (2 c_hi) with c_k = a_k rho^{r_k}.
  SquareClassExpr zstar = SquareClassExpr::constant(Q(-1, 2))
                              .times(init_sym(t[1].m))
                              .times(init_sym(t[2].m).inverse())
                              .times(rho.pow(t[1].r - t[2].r));

  LocalSolution s;
  s.branches = 1;
  s.has_ratio_pin = true;
  s.pin_num = LineInitials::slot(ray_alpha(ray));
  s.pin_den = LineInitials::slot(ray_beta(ray));
  s.ratio = rho.negated();  // b_alpha X^alpha + b_beta X^beta = 0  =>  b_a/b_b = -rho
  s.line.b[s.pin_num] = s.ratio;
  s.line.b[s.pin_den] = SquareClassExpr::constant(Q(1));
  switch (ray) {
    case 0: s.x = zstar; s.y = rho; break;
    case 1: s.x = rho; s.y = zstar; break;
    default: s.x = zstar; s.y = rho.times(zstar); break;
  }
  return s;
}

// Tangency along a whole bounded curve edge covered by a line ray, with the
// line's vertex outside the segment.  At initial level the edge binomial pins
// the ray ratio; the branch choice appears one valuation order down and its
// radicand is the twist radicand of the edge.  The tangency point solves
// X^w = -a_q/a_q' (w = q'-q) together with X^u = +-sqrt(xi^g a_r/a_r') for a
// unimodular complement u, the apexes labelled so that r sits on the negative
// u side of the dual edge.
inline LocalSolution solve_overlap_full(IPt q, IPt qp, IPt r, IPt rp, int ray) {
  const IPt alpha = ray_alpha(ray), beta = ray_beta(ray);
  IPt pairdir{beta.i - alpha.i, beta.j - alpha.j};
  IPt w{qp.i - q.i, qp.j - q.j};
  if (w != pairdir) {
    std::swap(q, qp);
    w = IPt{qp.i - q.i, qp.j - q.j};
  }
  require(w == pairdir, "UnsupportedLocalCase",
          "overlap edge is not dual-parallel to the carrying ray's pair");

  const IPt u = unimodular_complement(w);
  // Numerator apex r: the one with det(r - q, w) = -1.
  long sr = idet(IPt{r.i - q.i, r.j - q.j}, w);
  long srp = idet(IPt{rp.i - q.i, rp.j - q.j}, w);
  require(sr * srp == -1, "Internal", "edge apexes must flank the dual edge");
  if (sr != -1) std::swap(r, rp);

  SquareClassExpr xi = init_sym(q).times(init_sym(qp).inverse()).negated();  // X^w value
  const long g = idet(u, IPt{r.i - q.i, r.j - q.j}) - idet(u, IPt{rp.i - q.i, rp.j - q.j});
  SquareClassExpr eta_rad = xi.pow((int)g).times(init_sym(r)).times(init_sym(rp).inverse());
  SquareClassExpr eta = SquareClassExpr::sqrt_of(eta_rad);

  LocalSolution s;
  s.branches = 2;
  s.has_ratio_pin = true;
  s.pin_num = LineInitials::slot(alpha);
  s.pin_den = LineInitials::slot(beta);
  s.ratio = init_sym(q).times(init_sym(qp).inverse());  // -xi
  s.line.b[s.pin_num] = s.ratio;
  s.line.b[s.pin_den] = SquareClassExpr::constant(Q(1));
  s.radicand = twist_radicand(TwistContext{q, qp, r, rp, delta(r, rp)});

  // Coordinates from X^w = xi, X^u = eta:  (1,0) and (0,1) in the (u,w) basis.
  auto coord = [&](const IPt& unit) {
    long cu = idet(unit, w);   // coefficient of u
    long cw = idet(u, unit);   // coefficient of w
    return eta.pow((int)cu).times(xi.pow((int)cw));
  };
  s.x = coord(IPt{1, 0});
  s.y = coord(IPt{0, 1});
  return s;
}

}  // namespace lifting_detail

// Relative twist of an edge with respect to an overlapping line whose vertex
// lies on the tangency segment.  `t.r` must be the apex at the curve vertex
// the line meets (the far end of the segment); `ray` is the carrying ray.
inline SquareClassExpr relative_twist_radicand(const TwistContext& t, int ray,
                                               const LineInitials& line,
                                               int* delta_out = nullptr) {
  using namespace lifting_detail;
  IPt q = t.q, qp = t.qp;
  const IPt alpha = ray_alpha(ray), beta = ray_beta(ray);
  IPt pairdir{beta.i - alpha.i, beta.j - alpha.j};
  if (IPt{qp.i - q.i, qp.j - q.j} != pairdir) std::swap(q, qp);
  require(IPt{qp.i - q.i, qp.j - q.j} == pairdir, "UnsupportedLocalCase",
          "overlap edge is not dual-parallel to the carrying ray's pair");
  const IPt s = alpha;           // same side as q once both pairs are aligned
  const IPt rp = ray_third(ray); // line coefficient off the carrying ray

  // delta(e, L) = 0 iff (r - q) and (r' - s) agree mod 2.
  const int dl = delta(IPt{t.r.i - q.i, t.r.j - q.j}, IPt{rp.i - s.i, rp.j - s.j});
  if (delta_out) *delta_out = dl;

  require(line.at(rp).has_value() && line.at(s).has_value(), "UnsupportedLocalCase",
          "relative twist needs the line coefficients b_r', b_s resolved");
  SquareClassExpr rad = SquareClassExpr::constant(Q(dl ? 1 : -1))  // (-1)^(delta+1)
                            .times(init_sym(t.r))
                            .times(init_sym(q))
                            .times(*line.at(rp))
                            .times(*line.at(s));
  if (dl) rad = rad.times(init_sym(q)).times(init_sym(qp));
  return rad;
}

// Equality of two radicand-free expressions as residue field values.
inline bool values_equal_in_field(const SquareClassExpr& a, const SquareClassExpr& b,
                                  const InitialAssignment& asg, const ResidueFieldSpec& k) {
  Q va = a.eval_rational(asg), vb = b.eval_rational(asg);
  if (k.kind == FieldKind::PrimeField) return mod_reduce(va - vb, k.p, /*allow_zero=*/true) == 0;
  return va == vb;
}

// Def-style relative twist test: the ratio condition b_s/b_s' = a_q/a_q'
// must hold, and the square root of the relative twist radicand must lie in
// k.  The overlap lifts exactly when this returns true.
inline bool is_relatively_twisted(const TwistContext& t, int ray, const LineInitials& line,
                                  const InitialAssignment& asg, const ResidueFieldSpec& k) {
  using namespace lifting_detail;
  IPt q = t.q, qp = t.qp;
  const IPt alpha = ray_alpha(ray), beta = ray_beta(ray);
  IPt pairdir{beta.i - alpha.i, beta.j - alpha.j};
  if (IPt{qp.i - q.i, qp.j - q.j} != pairdir) std::swap(q, qp);
  const IPt s = alpha, sp = beta;
  require(line.at(s).has_value() && line.at(sp).has_value(), "UnsupportedLocalCase",
          "relative twist needs the pair coefficients b_s, b_s'");
  SquareClassExpr lhs = line.at(s)->times(line.at(sp)->inverse());
  SquareClassExpr rhs = init_sym(q).times(init_sym(qp).inverse());
  if (lhs.radicand() || rhs.radicand()) return false;
  if (!values_equal_in_field(lhs, rhs, asg, k)) return false;
  return is_square(relative_twist_radicand(t, ray, line), asg, k);
}

// Prop-style test for an isolated multiplicity-2 tangency at the line's own
// vertex against curve edge E (dual endpoints er, es): liftable iff the two
// coefficients b_r', b_s' flanking the distinguished ray are in k and
// sqrt(-a_r a_s b_r' b_s') is in k.
inline bool vertex_tangency_liftable(const IPt& er, const IPt& es, const IPt& line_rp,
                                     const IPt& line_sp, const LineInitials& line,
                                     const InitialAssignment& asg, const ResidueFieldSpec& k) {
  require(line.at(line_rp).has_value() && line.at(line_sp).has_value(),
          "UnsupportedLocalCase", "vertex tangency needs the flanking coefficients resolved");
  const SquareClassExpr& brp = *line.at(line_rp);
  const SquareClassExpr& bsp = *line.at(line_sp);
  if (brp.radicand() && !is_square(*brp.radicand(), asg, k)) return false;
  if (bsp.radicand() && !is_square(*bsp.radicand(), asg, k)) return false;
  SquareClassExpr rad = SquareClassExpr::constant(Q(-1))
                            .times(init_sym(er))
                            .times(init_sym(es))
                            .times(brp)
                            .times(bsp);
  return is_square(rad, asg, k);
}

namespace lifting_detail {

// Tangency at the line's own vertex, lying in the relative interior of a
// curve edge E.  The curve binomial's zero set is substituted into the full
// line trinomial; a double root forces b_top^2 = 4 * (other two) * tau^pow,
// a quadratic pin on the coefficient opposite the distinguished ray.
inline LocalSolution solve_line_vertex(const IPt& er, const IPt& es, const IPt& edge_dir,
                                       const LineInitials& known) {
  IPt w{es.i - er.i, es.j - er.j};
  require(w.i != 0 || w.j != 0, "Internal", "degenerate dual edge");

  // Distinguished ray: the one whose direction has |det(ray, E)| = 2.
  int ray = -1;
  for (int rr = 0; rr < 3; ++rr) {
    IPt rd = line_ray_dirs()[rr];
    long dv = idet(rd, edge_dir);
    if (dv == 2 || dv == -2) { ray = rr; break; }
  }
  require(ray >= 0, "UnsupportedLocalCase",
          "line-vertex tangency without a multiplicity-2 ray against the edge");

  // Parametrize the binomial zero set: X^w = tau, points (tau^p1 z^-w2, tau^p2 z^w1)
  // with p.w = 1.
  IPt p;
  {
    IPt u = unimodular_complement(w);  // u.i*w.j - u.j*w.i = 1
    p = IPt{-u.j, u.i};                // so p.w = det(u, w) = 1
    require((long)p.i * w.i + (long)p.j * w.j == 1, "Internal", "Bezout check failed");
  }
  SquareClassExpr tau = init_sym(er).times(init_sym(es).inverse()).negated();

  struct Term { int z; int taup; int slot; };
  std::array<Term, 3> t = {Term{0, 0, 0}, Term{-w.j, p.i, 1}, Term{w.i, p.j, 2}};
  std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.z < b.z; });
  require(t[2].z - t[0].z == 2 && t[1].z - t[0].z == 1, "UnsupportedLocalCase",
          "line-vertex tangency with non-quadratic substituted form");

  LocalSolution s;
  s.has_quad_pin = true;
  s.quad_top = t[1].slot;
  // (c_mid)^2 = 4 c_lo c_hi with c_k = b_k tau^{taup_k}:
  // b_top^2 / (b_lo b_hi) = 4 tau^{taup_lo + taup_hi - 2 taup_mid}.
  s.quad = SquareClassExpr::constant(Q(4)).times(tau.pow(t[0].taup + t[2].taup - 2 * t[1].taup));
  s.branches = 2;  // collapses to 1 when another component pins b_top linearly

  // With the flanking coefficients known, emit the tangency point and the
  // explicit radicand -a_r a_s b_lo b_hi (up to squares).
  const IPt lo = LineInitials::point(t[0].slot), hi = LineInitials::point(t[2].slot);
  if (known.at(lo) && known.at(hi)) {
    SquareClassExpr rad = SquareClassExpr::constant(Q(-1))
                              .times(init_sym(er))
                              .times(init_sym(es))
                              .times(*known.at(lo))
                              .times(*known.at(hi));
    s.radicand = rad;
    const IPt top = LineInitials::point(t[1].slot);
    if (known.at(top)) {
      // z* = -c_mid / (2 c_hi); then x = tau^p1 z*^{-w2}, y = tau^p2 z*^{w1}.
      SquareClassExpr zs = SquareClassExpr::constant(Q(-1, 2))
                               .times(*known.at(top))
                               .times(known.at(hi)->inverse())
                               .times(tau.pow(t[1].taup - t[2].taup));
      s.x = tau.pow(p.i).times(zs.pow(-w.j));
      s.y = tau.pow(p.j).times(zs.pow(w.i));
      for (int slot = 0; slot < 3; ++slot) s.line.b[slot] = known.b[slot];
    }
  }
  return s;
}

// Tangency coordinates of an overlap component: the along-edge relation
// X^w = xi is exact, the transverse coordinate X^u carries the square root.
// For a full overlap `eta` is the exact closed form; for an anchored overlap
// the square class of the radicand is what matters and the rational factor
// of the transverse coordinate is not reconstructed.
inline void overlap_coords(IPt q, IPt qp, int ray, const SquareClassExpr& eta,
                           std::optional<SquareClassExpr>& x, std::optional<SquareClassExpr>& y) {
  const IPt alpha = ray_alpha(ray), beta = ray_beta(ray);
  IPt pairdir{beta.i - alpha.i, beta.j - alpha.j};
  if (IPt{qp.i - q.i, qp.j - q.j} != pairdir) std::swap(q, qp);
  IPt w{qp.i - q.i, qp.j - q.j};
  const IPt u = unimodular_complement(w);
  SquareClassExpr xi = init_sym(q).times(init_sym(qp).inverse()).negated();
  auto coord = [&](const IPt& unit) {
    long cu = idet(unit, w);
    long cw = idet(u, unit);
    return eta.pow((int)cu).times(xi.pow((int)cw));
  };
  x = coord(IPt{1, 0});
  y = coord(IPt{0, 1});
}

}  // namespace lifting_detail

// ======================================================================
// Symbolic substitute-back verification: the solved tangency initials must
// kill the local initial forms identically.  Sums of Laurent terms (with at
// most one shared square root treated as a formal symbol, perfect-square
// radicands folded away) are collected by exponent pattern and must cancel.

namespace lifting_detail {

struct RTerm {
  Q c;
  std::map<IPt, int> e;
  bool root = false;
  Q rc;
  std::map<IPt, int> re;
};

inline std::optional<Q> exact_sqrt(const Q& v) {
  if (v <= 0) return std::nullopt;
  Z num = v.get_num(), den = v.get_den();
  Z rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return frac(rn, rd);
}

inline RTerm rterm_of(const SquareClassExpr& x) {
  RTerm t;
  t.c = x.coeff();
  t.e = x.exponents();
  if (const SquareClassExpr* u = x.radicand()) {
    bool even = true;
    for (const auto& [s, ex] : u->exponents())
      if (ex % 2 != 0) { even = false; break; }
    std::optional<Q> rc = even ? exact_sqrt(u->coeff()) : std::nullopt;
    if (rc) {
      // sqrt of a perfect square: fold into the rational part.
      t.c *= *rc;
      for (const auto& [s, ex] : u->exponents()) {
        int v = t.e[s] + ex / 2;
        if (v == 0) t.e.erase(s); else t.e[s] = v;
      }
    } else {
      t.root = true;
      t.rc = u->coeff();
      t.re = u->exponents();
    }
  }
  return t;
}

// True when the sum of the given product terms is identically zero as a
// function of independent symbols (roots keyed by their radicand).
inline bool symbolic_sum_is_zero(const std::vector<SquareClassExpr>& terms) {
  std::map<std::tuple<bool, Q, std::map<IPt, int>, std::map<IPt, int>>, Q> acc;
  for (const SquareClassExpr& x : terms) {
    RTerm t = rterm_of(x);
    acc[{t.root, t.root ? t.rc : Q(0), t.re, t.e}] += t.c;
  }
  for (const auto& [k, c] : acc)
    if (c != 0) return false;
  return true;
}

// Local bivariate form: a list of (monomial, coefficient) pairs evaluated
// symbolically at a tangency point.
struct LocalForm {
  std::vector<std::pair<IPt, SquareClassExpr>> terms;
  void add(const IPt& m, SquareClassExpr cf) { terms.push_back({m, std::move(cf)}); }

  std::vector<SquareClassExpr> eval_terms(const SquareClassExpr& x, const SquareClassExpr& y) const {
    std::vector<SquareClassExpr> out;
    for (const auto& [m, cf] : terms) out.push_back(cf.times(x.pow(m.i)).times(y.pow(m.j)));
    return out;
  }
  // Wronskian pairing with another form: f_x g_y - f_y g_x, as term products
  // evaluated at the tangency (derivatives taken monomial-wise).
  static std::vector<SquareClassExpr> wronskian_terms(const LocalForm& f, const LocalForm& g,
                                                      const SquareClassExpr& x,
                                                      const SquareClassExpr& y) {
    std::vector<SquareClassExpr> out;
    auto deriv = [](const std::pair<IPt, SquareClassExpr>& t, bool by_x)
        -> std::optional<std::pair<IPt, SquareClassExpr>> {
      int k = by_x ? t.first.i : t.first.j;
      if (k == 0) return std::nullopt;
      IPt m = by_x ? IPt{t.first.i - 1, t.first.j} : IPt{t.first.i, t.first.j - 1};
      return std::make_pair(m, t.second.times(SquareClassExpr::constant(Q(k))));
    };
    for (const auto& ft : f.terms)
      for (const auto& gt : g.terms) {
        auto fx = deriv(ft, true), gy = deriv(gt, false);
        auto fy = deriv(ft, false), gx = deriv(gt, true);
        if (fx && gy)
          out.push_back(fx->second.times(gy->second)
                            .times(x.pow(fx->first.i + gy->first.i))
                            .times(y.pow(fx->first.j + gy->first.j)));
        if (fy && gx)
          out.push_back(fy->second.times(gx->second)
                            .times(x.pow(fy->first.i + gx->first.i))
                            .times(y.pow(fy->first.j + gx->first.j))
                            .negated());
      }
    return out;
  }
};

}  // namespace lifting_detail

// Check that a local solution satisfies its local system symbolically:
// curve initial form, line initial form, and (for point tangencies) the
// Wronskian all vanish at the solved tangency point.
inline bool verify_local_solution(const LocalCase& lc, const LocalSolution& sol) {
  using namespace lifting_detail;
  if (!sol.x || !sol.y) return true;  // nothing solved to substitute
  const SquareClassExpr& x = *sol.x;
  const SquareClassExpr& y = *sol.y;

  LocalForm curve, line;
  bool check_wronskian = true;
  switch (lc.kind) {
    case TangKind::AtCurveVertex:
      for (const IPt& m : lc.triangle) curve.add(m, init_sym(m));
      break;
    case TangKind::OverlapFull:
    case TangKind::OverlapAnchored:
      curve.add(lc.q, init_sym(lc.q));
      curve.add(lc.qp, init_sym(lc.qp));
      check_wronskian = false;  // vanishes identically along the overlap
      break;
    case TangKind::AtLineVertex:
      curve.add(lc.q, init_sym(lc.q));
      curve.add(lc.qp, init_sym(lc.qp));
      break;
    default:
      return true;
  }
  if (lc.kind == TangKind::AtLineVertex) {
    for (int slot = 0; slot < 3; ++slot) {
      if (!sol.line.b[slot]) return true;  // unresolved; nothing to check
      line.add(LineInitials::point(slot), *sol.line.b[slot]);
    }
  } else {
    const IPt a = ray_alpha(lc.ray), b = ray_beta(lc.ray);
    line.add(a, sol.ratio);
    line.add(b, SquareClassExpr::constant(Q(1)));
  }

  if (!symbolic_sum_is_zero(curve.eval_terms(x, y))) return false;
  if (!symbolic_sum_is_zero(line.eval_terms(x, y))) return false;
  if (check_wronskian &&
      !symbolic_sum_is_zero(LocalForm::wronskian_terms(curve, line, x, y)))
    return false;
  return true;
}

// Solve the local tangency system of one rigid component symbolically.  The
// subdivision is used to validate that the referenced cells are faces.
inline LocalSolution solve_local_tangency(const LocalCase& lc, const RegularSubdivision& sub,
                                          const LineInitials& known = {}) {
  using namespace lifting_detail;
  auto is_face_triangle = [&](const std::array<IPt, 3>& tri) {
    for (const auto& f : sub.faces) {
      if (f.size() != 3) continue;
      std::vector<IPt> a(f.begin(), f.end()), b(tri.begin(), tri.end());
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (std::equal(a.begin(), a.end(), b.begin())) return true;
    }
    return false;
  };
  switch (lc.kind) {
    case TangKind::AtCurveVertex:
      require(is_face_triangle(lc.triangle), "Internal",
              "vertex crossing references a non-face triangle");
      return solve_vertex_crossing(lc.triangle, lc.ray);
    case TangKind::OverlapFull:
      return solve_overlap_full(lc.q, lc.qp, lc.r, lc.rp, lc.ray);
    case TangKind::OverlapAnchored: {
      // The ratio pin is the same binomial pin as for a full overlap; the
      // obstruction is the relative twist radicand, which needs resolved
      // line coefficients and is attached during member resolution.
      IPt q = lc.q, qp = lc.qp;
      const IPt alpha = ray_alpha(lc.ray), beta = ray_beta(lc.ray);
      IPt pairdir{beta.i - alpha.i, beta.j - alpha.j};
      if (IPt{qp.i - q.i, qp.j - q.j} != pairdir) std::swap(q, qp);
      require(IPt{qp.i - q.i, qp.j - q.j} == pairdir, "UnsupportedLocalCase",
              "overlap edge is not dual-parallel to the carrying ray's pair");
      LocalSolution s;
      s.branches = 2;
      s.has_ratio_pin = true;
      s.pin_num = LineInitials::slot(alpha);
      s.pin_den = LineInitials::slot(beta);
      s.ratio = init_sym(q).times(init_sym(qp).inverse());
      s.line.b[s.pin_num] = s.ratio;
      s.line.b[s.pin_den] = SquareClassExpr::constant(Q(1));
      if (known.at(alpha) && known.at(beta) && known.at(ray_third(lc.ray))) {
        TwistContext t{lc.q, lc.qp, lc.r, lc.rp, 0};
        s.radicand = relative_twist_radicand(t, lc.ray, known);
      }
      return s;
    }
    case TangKind::AtLineVertex:
      return solve_line_vertex(lc.q, lc.qp, lc.edge_dir, known);
    default:
      fail("UnsupportedLocalCase",
           std::string("no closed-form local solver for a ") + tang_kind_name(lc.kind) +
               " component");
  }
}

// ======================================================================
// Member-level resolution: combine the pins of all tangency components of
// one representative line, determine the coefficient initials, and collect
// every square-root obstruction.

struct MemberLifting {
  LineInitials line;                       // fully resolved coefficient initials
  std::vector<SquareClassExpr> radicands;  // obstructions; empty = lifts anywhere
  int branches = 1;                        // local lift count of this member
  std::vector<LocalSolution> locals;       // per-component solutions
  std::vector<LocalCase> cases;            // parallel to locals
};

namespace lifting_detail {

inline LocalCase build_local_case(const TropicalCurve& c, const LineProfile& lp,
                                  const TangencyDesc& td) {
  LocalCase lc;
  lc.kind = td.kind;
  switch (td.kind) {
    case TangKind::AtCurveVertex: {
      lc.ray = only_ray_bit(td.ray_mask);
      const auto& dual = c.vertices[td.curve_vertex].dual;
      require(dual.size() == 3, "Internal", "curve vertex of a smooth curve must be trivalent");
      lc.triangle = {dual[0], dual[1], dual[2]};
      return lc;
    }
    case TangKind::OverlapFull: {
      lc.ray = only_ray_bit(td.ray_mask);
      const CurveCell& e = c.cells[td.curve_cell];
      require(!e.is_ray, "Internal", "full overlap must cover a bounded edge");
      lc.q = e.du0;
      lc.qp = e.du1;
      lc.r = lifting_detail::apex(c.vertices[e.v0].dual, e.du0, e.du1);
      lc.rp = lifting_detail::apex(c.vertices[e.v1].dual, e.du0, e.du1);
      return lc;
    }
    case TangKind::OverlapAnchored: {
      lc.ray = only_ray_bit(td.ray_mask);
      const CurveCell& e = c.cells[td.curve_cell];
      require(!e.is_ray, "Internal", "anchored overlap must lie on a bounded edge");
      lc.q = e.du0;
      lc.qp = e.du1;
      // Far end of the overlap segment: the tangency representative is the
      // segment midpoint and one endpoint is the line's vertex.
      Pt far{td.at.x * 2 - lp.pos.x, td.at.y * 2 - lp.pos.y};
      int fv = -1;
      if (e.v0 >= 0 && c.vertices[e.v0].pos == far) fv = e.v0;
      if (e.v1 >= 0 && c.vertices[e.v1].pos == far) fv = e.v1;
      require(fv >= 0, "UnsupportedLocalCase",
              "anchored overlap does not end at a vertex of the covered edge");
      lc.r = lifting_detail::apex(c.vertices[fv].dual, e.du0, e.du1);
      return lc;
    }
    case TangKind::AtLineVertex: {
      const CurveCell& e = c.cells[td.curve_cell];
      lc.q = e.du0;
      lc.qp = e.du1;
      lc.edge_dir = e.dir;
      return lc;
    }
    default:
      fail("UnsupportedLocalCase",
           std::string("member has a non-rigid or unsupported component: ") +
               tang_kind_name(td.kind));
  }
}

}  // namespace lifting_detail

inline MemberLifting member_lifting(const TropicalCurve& c, const LineProfile& lp) {
  using namespace lifting_detail;
  require(lp.bitangent, "Internal", "member_lifting called on a non-bitangent position");

  MemberLifting out;
  std::vector<int> quads;
  for (const TangencyDesc& td : lp.tang) {
    LocalCase lc = build_local_case(c, lp, td);
    LocalSolution ls = solve_local_tangency(lc, c.sub);
    out.cases.push_back(lc);
    out.locals.push_back(std::move(ls));
  }

  // Resolve the projective coefficient triple (b00 : b10 : b01) from the
  // collected pins.  Ratio pins are exact; a quadratic pin either collapses
  // against a ratio pin that shares its distinguished slot, or extracts a
  // square root.
  std::vector<std::pair<std::pair<int, int>, SquareClassExpr>> ratio_pins;
  std::optional<std::pair<int, SquareClassExpr>> quad_pin;
  for (const LocalSolution& ls : out.locals) {
    if (ls.has_ratio_pin) ratio_pins.push_back({{ls.pin_num, ls.pin_den}, ls.ratio});
    if (ls.has_quad_pin) {
      require(!quad_pin, "UnsupportedLocalCase",
              "two line-vertex tangencies on one member are not supported");
      quad_pin = {ls.quad_top, ls.quad};
    }
  }

  LineInitials& L = out.line;
  auto set_slot = [&](int slot, SquareClassExpr v) {
    require(!L.b[slot], "Internal", "line coefficient resolved twice");
    L.b[slot] = std::move(v);
  };

  if (ratio_pins.size() == 2 && !quad_pin) {
    auto [p1, v1] = ratio_pins[0];
    auto [p2, v2] = ratio_pins[1];
    require(!(p1 == p2 || (p1.first == p2.second && p1.second == p2.first)),
            "UnsupportedLocalCase",
            "two tangencies pin the same coefficient pair; the member is not rigid");
    // Normalize: express everything relative to the slot shared by both pins
    // (or chain through the missing slot).
    // Set denominators to 1 progressively.
    std::array<std::optional<SquareClassExpr>, 3> val{};
    // Treat pin (num, den, v): b[num] = v * b[den].
    // Anchor: slot p1.second = 1.
    val[p1.second] = SquareClassExpr::constant(Q(1));
    val[p1.first] = v1;
    auto apply = [&](std::pair<int, int> p, const SquareClassExpr& v) -> bool {
      if (val[p.second] && !val[p.first]) { val[p.first] = v.times(*val[p.second]); return true; }
      if (val[p.first] && !val[p.second]) { val[p.second] = val[p.first]->times(v.inverse()); return true; }
      return false;
    };
    if (!apply(p2, v2)) {
      // Both endpoints already set: consistency is a property of the input.
      SquareClassExpr lhs = val[p2.first]->times(val[p2.second]->inverse());
      require(lhs.same_term(v2) || equal_up_to_squares(lhs, v2), "UnsupportedLocalCase",
              "inconsistent coefficient pins on one member");
    }
    for (int sslot = 0; sslot < 3; ++sslot)
      if (val[sslot]) set_slot(sslot, *val[sslot]);
  } else if (ratio_pins.size() == 1 && quad_pin) {
    auto [pr, vr] = ratio_pins[0];
    auto [top, vq] = *quad_pin;
    int lo = -1, hi = -1;
    for (int sslot = 0, cnt = 0; sslot < 3; ++sslot)
      if (sslot != top) (cnt++ == 0 ? lo : hi) = sslot;
    if (pr.first == top || pr.second == top) {
      // The ratio pin involves the distinguished slot: the quadratic pin
      // collapses to an exact linear relation and the member is rational.
      int other = pr.first == top ? pr.second : pr.first;
      SquareClassExpr top_over_other = pr.first == top ? vr : vr.inverse();
      int third = 3 - top - other;
      // b_top^2 = vq * b_lo * b_hi  =>  b_third/b_other = top_over_other^2 / vq.
      SquareClassExpr third_over_other = top_over_other.pow(2).times(vq.inverse());
      set_slot(other, SquareClassExpr::constant(Q(1)));
      set_slot(top, top_over_other);
      set_slot(third, third_over_other);
      for (LocalSolution& ls : out.locals)
        if (ls.has_quad_pin) ls.branches = 1;
    } else {
      // The ratio pin fixes b_lo/b_hi; extracting b_top costs a square root.
      require((pr.first == lo && pr.second == hi) || (pr.first == hi && pr.second == lo),
              "Internal", "unexpected pin layout");
      SquareClassExpr lo_over_hi = pr.first == lo ? vr : vr.inverse();
      // b_top^2 / b_hi^2 = vq * (b_lo/b_hi).
      SquareClassExpr rad = vq.times(lo_over_hi);
      set_slot(hi, SquareClassExpr::constant(Q(1)));
      set_slot(lo, lo_over_hi);
      set_slot(top, SquareClassExpr::sqrt_of(rad));
    }
  } else {
    fail("UnsupportedLocalCase",
         "member does not resolve to a zero-dimensional system of coefficient pins");
  }

  // Second pass: attach obstructions that need the resolved coefficients,
  // re-derive tangency data for quadratic components, and collect radicands.
  for (size_t i = 0; i < out.locals.size(); ++i) {
    LocalSolution& ls = out.locals[i];
    const LocalCase& lc = out.cases[i];
    if (lc.kind == TangKind::OverlapAnchored && !ls.radicand) {
      TwistContext t{lc.q, lc.qp, lc.r, lc.rp, 0};
      ls.radicand = relative_twist_radicand(t, lc.ray, L);
      overlap_coords(lc.q, lc.qp, lc.ray, SquareClassExpr::sqrt_of(*ls.radicand), ls.x, ls.y);
    }
    if (lc.kind == TangKind::AtLineVertex) {
      LocalSolution redo = solve_local_tangency(lc, c.sub, L);
      redo.branches = ls.branches;
      ls = std::move(redo);
    }
    if (ls.radicand) out.radicands.push_back(*ls.radicand);
    out.branches *= ls.branches;
  }
  // A coefficient that itself carries a root is an obstruction as well
  // (the same class as the component radicand that produced it).
  for (int sslot = 0; sslot < 3; ++sslot)
    if (L.b[sslot] && L.b[sslot]->radicand()) out.radicands.push_back(*L.b[sslot]->radicand());
  return out;
}

// ======================================================================
// Class-level decision.

enum class LiftKind { Zero, Four, Unknown };

struct LiftDecision {
  LiftKind kind = LiftKind::Unknown;
  std::string reason;
  std::vector<SquareClassExpr> radicands;  // obstructions of one member
};

inline const char* lift_kind_name(LiftKind k) {
  switch (k) {
    case LiftKind::Zero: return "zero";
    case LiftKind::Four: return "four";
    case LiftKind::Unknown: return "unknown";
  }
  return "?";
}

inline LiftDecision class_lifts_over(const BitangentClass& b, const TropicalCurve& c,
                                     const InitialAssignment& asg, const ResidueFieldSpec& k) {
  LiftDecision d;
  if (k.kind == FieldKind::ComplexClosed) {
    d.kind = LiftKind::Four;
    d.reason = "residue field is algebraically closed";
    return d;
  }
  if (b.shape.base == "C") {
    d.kind = LiftKind::Unknown;
    d.reason = "star tangency: the coupled local system has no encoded closed form";
    return d;
  }
  if (b.shape.base == "II") {
    d.kind = LiftKind::Unknown;
    d.reason = "solution coefficients involve sqrt(2) and sqrt(3); "
               "liftability over this field is not decided by the encoded formulas";
    return d;
  }
  require(!b.member_profiles.empty(), "Internal", "class without member profiles");

  // Evaluate every member and check the all-or-none law across them.
  int agree = -1;
  for (size_t i = 0; i < b.member_profiles.size(); ++i) {
    MemberLifting ml = member_lifting(c, b.member_profiles[i]);
    require(ml.branches == b.representatives[i].second, "Internal",
            "resolved branch count disagrees with the catalogue multiplicity");
    bool lifts = true;
    for (const SquareClassExpr& rad : ml.radicands) {
      if (!is_square(rad, asg, k)) { lifts = false; break; }
    }
    if (i == 0) d.radicands = ml.radicands;
    if (agree == -1) agree = lifts ? 1 : 0;
    else
      require(agree == (lifts ? 1 : 0), "Internal",
              "members of one class disagree about lifting (all-or-none violated)");
  }
  d.kind = agree == 1 ? LiftKind::Four : LiftKind::Zero;
  d.reason = agree == 1 ? "every obstruction radicand is a square in the residue field"
                        : "an obstruction radicand is a non-square in the residue field";
  return d;
}

}  // namespace tropbt
