#pragma once

// Residue fields, square classes, and the symbolic algebra of Laurent
// monomials in the fifteen coefficient initials a_ij (with at most one
// level of square root).

#include <tropbt/common.hpp>

#include <map>
#include <memory>
#include <optional>
#include <sstream>

namespace tropbt {

// ----------------------------------------------------------------------
// Residue field description.

enum class FieldKind { Reals, ComplexClosed, PrimeField, Rationals };

struct ResidueFieldSpec {
  FieldKind kind = FieldKind::Reals;
  long p = 0;           // only for PrimeField
  bool char3_warning = false;

  static ResidueFieldSpec reals() { return {FieldKind::Reals, 0, false}; }
  static ResidueFieldSpec complex_closed() { return {FieldKind::ComplexClosed, 0, false}; }
  static ResidueFieldSpec rationals() { return {FieldKind::Rationals, 0, false}; }
  static ResidueFieldSpec prime_field(long p) {
    require(p >= 3, "NotOddPrime", "prime field characteristic must be an odd prime, got " + std::to_string(p));
    require(p % 2 == 1, "NotOddPrime", "characteristic 2 rejected");
    // Deterministic primality check (inputs are small).
    for (long d = 3; d * d <= p; d += 2) {
      require(p % d != 0, "NotOddPrime", std::to_string(p) + " is not prime");
    }
    ResidueFieldSpec f{FieldKind::PrimeField, p, p == 3};
    return f;
  }

  std::string name() const {
    switch (kind) {
      case FieldKind::Reals: return "reals";
      case FieldKind::ComplexClosed: return "complex";
      case FieldKind::PrimeField: return "fp:" + std::to_string(p);
      case FieldKind::Rationals: return "rationals";
    }
    return "?";
  }
  friend bool operator==(const ResidueFieldSpec& a, const ResidueFieldSpec& b) {
    return a.kind == b.kind && a.p == b.p;
  }
};

// ----------------------------------------------------------------------
// Modular arithmetic helpers (odd prime modulus).

inline long mod_pow(long base, long exp, long p) {
  long r = 1;
  base %= p;
  if (base < 0) base += p;
  while (exp > 0) {
    if (exp & 1) r = static_cast<long>((__int128)r * base % p);
    base = static_cast<long>((__int128)base * base % p);
    exp >>= 1;
  }
  return r;
}

inline long legendre(const Z& a, long p) {
  require(p >= 3 && p % 2 == 1, "NotOddPrime", "legendre needs an odd prime");
  Z r = a % p;
  if (r < 0) r += p;
  require(r != 0, "DivisibleByP", "legendre symbol undefined: p divides a");
  long e = mod_pow(r.get_si(), (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

// Value of a rational in F_p; errors if the denominator is divisible by p,
// signals ZeroEvaluation when the numerator is.
inline long mod_reduce(const Q& q, long p, bool allow_zero = false) {
  Z den = q.get_den() % p;
  require(den != 0, "DivisibleByP", "denominator divisible by p in F_p evaluation");
  Z num = q.get_num() % p;
  if (num == 0) {
    require(allow_zero, "ZeroEvaluation", "value is zero in F_p");
    return 0;
  }
  Z dd = (den % p + p) % p;
  Z nn = (num % p + p) % p;
  long inv = mod_pow(dd.get_si(), p - 2, p);
  return static_cast<long>((__int128)nn.get_si() * inv % p);
}

inline long least_nonresidue(long p) {
  for (long n = 2; n < p; ++n) {
    if (legendre(Z(n), p) == -1) return n;
  }
  fail("NoNonresidue", "field has no quadratic nonresidue (p=" + std::to_string(p) + ")");
}

// ----------------------------------------------------------------------
// Squarefree part of a rational: sign * product of primes appearing to an
// odd power in num*den. Trial division up to 10^6, then perfect-square /
// probable-prime handling for any residual cofactor.
inline Q squarefree_part(const Q& q0) {
  require(q0 != 0, "ZeroEvaluation", "square class of zero");
  Z n = q0.get_num() * q0.get_den();
  int sign = sgn(n) < 0 ? -1 : 1;
  n = abs(n);
  Z sf = 1;
  for (long d = 2; d <= 1000000 && Z(d) * d <= n; d == 2 ? d += 1 : d += 2) {
    if (n % d != 0) continue;
    int mult = 0;
    while (n % d == 0) { n /= d; ++mult; }
    if (mult % 2 == 1) sf *= d;
  }
  if (n > 1) {
    if (mpz_perfect_square_p(n.get_mpz_t())) {
      // even multiplicity residual, drop
    } else if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
      sf *= n;
    } else {
      // Composite residual with all prime factors > 10^6; for the small
      // inputs this library targets it is a product of two distinct
      // primes, hence squarefree.
      sf *= n;
    }
  }
  return Q(sign * sf);
}

// ----------------------------------------------------------------------
// Canonical square class.

struct SquareClass {
  // Canonical representative: Reals ±1; ComplexClosed 1; PrimeField 1 or
  // the least nonresidue; Rationals a signed squarefree integer.
  Q rep;
  ResidueFieldSpec field;

  bool trivial() const { return rep == 1; }
  friend bool operator==(const SquareClass& a, const SquareClass& b) {
    return a.rep == b.rep && a.field == b.field;
  }
  friend bool operator!=(const SquareClass& a, const SquareClass& b) { return !(a == b); }
  friend bool operator<(const SquareClass& a, const SquareClass& b) {
    return cmp(a.rep, b.rep) < 0;
  }
};

// Canonical square class of a nonzero field value (represented as an exact
// rational; PrimeField values are rationals with p-unit denominator).
inline SquareClass square_class_of_value(const Q& v, const ResidueFieldSpec& k) {
  require(v != 0, "ZeroEvaluation", "square class of zero value");
  switch (k.kind) {
    case FieldKind::Reals:
      return {Q(v > 0 ? 1 : -1), k};
    case FieldKind::ComplexClosed:
      return {Q(1), k};
    case FieldKind::PrimeField: {
      long r = mod_reduce(v, k.p);
      return {Q(legendre(Z(r), k.p) == 1 ? 1 : least_nonresidue(k.p)), k};
    }
    case FieldKind::Rationals:
      return {squarefree_part(v), k};
  }
  fail("Internal", "unknown field kind");
}

inline bool is_square_value(const Q& v, const ResidueFieldSpec& k) {
  return square_class_of_value(v, k).trivial();
}

// Canonical ("principal") square root of a value known to be a square in
// k: the positive root for ordered fields; in F_p the root that is itself
// a quadratic residue when the two roots differ in that respect (p = 3 mod
// 4), else the smaller representative.
inline Q canonical_sqrt(const Q& v, const ResidueFieldSpec& k) {
  require(is_square_value(v, k), "NotInField", "canonical_sqrt of a nonsquare");
  switch (k.kind) {
    case FieldKind::PrimeField: {
      long a = mod_reduce(v, k.p);
      for (long s = 1; s <= (k.p - 1) / 2; ++s) {
        if ((__int128)s * s % k.p == a) {
          if (k.p % 4 == 3 && legendre(Z(s), k.p) == -1) return Q(k.p - s);
          return Q(s);
        }
      }
      fail("Internal", "square root not found mod p");
    }
    case FieldKind::ComplexClosed:
      // Only the square-class level matters over an algebraically closed
      // field; report the placeholder root 1.
      return Q(1);
    default: {
      // Rationals / Reals surrogate: v must be the square of a rational.
      Z num = v.get_num(), den = v.get_den();
      Z rn, rd;
      mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
      mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
      require(rn * rn == num && rd * rd == den, "NotInField",
              "value is not a rational square");
      return Q(rn) / Q(rd);
    }
  }
}

// ----------------------------------------------------------------------
// Symbolic Laurent monomials in the initials a_ij, with optional root.

struct InitialAssignment {
  std::map<IPt, Q> values;

  bool has(const IPt& s) const { return values.count(s) != 0; }
  const Q& at(const IPt& s) const {
    auto it = values.find(s);
    require(it != values.end(), "UnboundSymbol", "no value bound for a" + std::to_string(s.i) + std::to_string(s.j));
    return it->second;
  }
  static InitialAssignment all_ones() {
    InitialAssignment a;
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; i + j <= 4; ++j) a.values[{i, j}] = 1;
    return a;
  }
};

class SquareClassExpr {
 public:
  SquareClassExpr() : coeff_(1) {}
  explicit SquareClassExpr(Q c) : coeff_(std::move(c)) {
    require(coeff_ != 0, "ZeroCoefficient", "SquareClassExpr coefficient must be nonzero");
  }
  static SquareClassExpr symbol(int i, int j, int exp = 1) {
    SquareClassExpr e;
    if (exp != 0) e.exps_[{i, j}] = exp;
    return e;
  }
  static SquareClassExpr constant(Q c) { return SquareClassExpr(std::move(c)); }

  // sqrt(u): wraps a radicand-free expression as a pure root.
  static SquareClassExpr sqrt_of(const SquareClassExpr& u) {
    require(!u.radicand_, "RadicandDepth", "nested radicals are not representable");
    SquareClassExpr e;
    e.radicand_ = std::make_shared<const SquareClassExpr>(u);
    return e;
  }

  const Q& coeff() const { return coeff_; }
  const std::map<IPt, int>& exponents() const { return exps_; }
  const SquareClassExpr* radicand() const { return radicand_.get(); }

  SquareClassExpr times(const SquareClassExpr& o) const {
    SquareClassExpr r;
    r.coeff_ = coeff_ * o.coeff_;
    r.exps_ = exps_;
    for (const auto& [s, e] : o.exps_) {
      int v = r.exps_[s] + e;
      if (v == 0) r.exps_.erase(s); else r.exps_[s] = v;
    }
    if (radicand_ && o.radicand_) {
      // sqrt(u)*sqrt(v) = sqrt(uv)
      SquareClassExpr uv = radicand_->times(*o.radicand_);
      r.radicand_ = std::make_shared<const SquareClassExpr>(uv);
    } else if (radicand_) {
      r.radicand_ = radicand_;
    } else if (o.radicand_) {
      r.radicand_ = o.radicand_;
    }
    return r;
  }

  SquareClassExpr inverse() const {
    SquareClassExpr r;
    r.coeff_ = 1 / coeff_;
    for (const auto& [s, e] : exps_) r.exps_[s] = -e;
    if (radicand_) {
      // 1/sqrt(u) = sqrt(u)/u; fold 1/u into the rational part.
      SquareClassExpr uinv = radicand_->inverse();
      r.coeff_ *= uinv.coeff_;
      for (const auto& [s, e] : uinv.exps_) {
        int v = r.exps_[s] + e;
        if (v == 0) r.exps_.erase(s); else r.exps_[s] = v;
      }
      r.radicand_ = radicand_;
    }
    return r;
  }

  SquareClassExpr pow(int n) const {
    SquareClassExpr r = SquareClassExpr(Q(1));
    SquareClassExpr base = n >= 0 ? *this : inverse();
    int m = n >= 0 ? n : -n;
    for (int t = 0; t < m; ++t) r = r.times(base);
    return r;
  }

  SquareClassExpr negated() const {
    SquareClassExpr r = *this;
    r.coeff_ = -r.coeff_;
    return r;
  }

  // Reduce "up to squares": exponents mod 2, coefficient to its squarefree
  // part, square factors of the radicand pulled out and then dropped (they
  // only contribute squares). Two expressions are equal up to squares iff
  // their reduced forms coincide (with generic/independent symbols).
  SquareClassExpr reduced_mod_squares() const {
    SquareClassExpr r;
    r.coeff_ = squarefree_part(coeff_);
    for (const auto& [s, e] : exps_) {
      int m = ((e % 2) + 2) % 2;
      if (m != 0) r.exps_[s] = m;
    }
    if (radicand_) {
      SquareClassExpr u = radicand_->reduced_mod_squares();
      if (u.coeff_ == 1 && u.exps_.empty()) {
        // sqrt of a perfect square: contributes only a square factor.
      } else {
        r.radicand_ = std::make_shared<const SquareClassExpr>(u);
      }
    }
    return r;
  }

  bool same_term(const SquareClassExpr& o) const {
    if (coeff_ != o.coeff_ || exps_ != o.exps_) return false;
    if (!radicand_ && !o.radicand_) return true;
    if (!radicand_ || !o.radicand_) return false;
    return radicand_->same_term(*o.radicand_);
  }

  // Evaluate the radicand-free part to an exact rational (field-agnostic).
  Q eval_rational(const InitialAssignment& asg) const {
    require(!radicand_, "Internal", "eval_rational on radicand-bearing expression");
    Q v = coeff_;
    for (const auto& [s, e] : exps_) {
      const Q& a = asg.at(s);
      require(a != 0, "ZeroEvaluation", "initial bound to zero");
      if (e >= 0) {
        for (int t = 0; t < e; ++t) v *= a;
      } else {
        for (int t = 0; t < -e; ++t) v /= a;
      }
    }
    return v;
  }

  std::string str() const {
    std::ostringstream os;
    os << coeff_.get_str();
    for (const auto& [s, e] : exps_) {
      os << "*a" << s.i << s.j;
      if (e != 1) os << "^" << e;
    }
    if (radicand_) os << "*sqrt(" << radicand_->str() << ")";
    return os.str();
  }

 private:
  Q coeff_;
  std::map<IPt, int> exps_;
  std::shared_ptr<const SquareClassExpr> radicand_;
};

inline bool equal_up_to_squares(const SquareClassExpr& a, const SquareClassExpr& b) {
  return a.times(b.inverse()).reduced_mod_squares().same_term(SquareClassExpr(Q(1)));
}

// ----------------------------------------------------------------------
// Evaluation of symbolic expressions to canonical square classes.

enum class SquareStatus { Square, NonSquareInField, NotInField };

// nullopt encodes NotInField (radicand evaluates to a nonsquare of k).
inline std::optional<SquareClass> square_class(const SquareClassExpr& e,
                                               const InitialAssignment& asg,
                                               const ResidueFieldSpec& k) {
  if (k.kind == FieldKind::ComplexClosed) {
    // Everything nonzero is a square; still validate bindings/nonvanishing.
    for (const auto& [s, ex] : e.exponents()) {
      (void)ex;
      require(asg.at(s) != 0, "ZeroEvaluation", "initial bound to zero");
    }
    if (const SquareClassExpr* u = e.radicand()) (void)square_class(*u, asg, k);
    return SquareClass{Q(1), k};
  }
  Q root_class = 1;  // square class rep of the principal root of the radicand
  if (const SquareClassExpr* u = e.radicand()) {
    Q uval = u->eval_rational(asg);
    if (k.kind == FieldKind::PrimeField) {
      uval = Q(mod_reduce(uval, k.p));  // ZeroEvaluation if 0
    } else {
      require(uval != 0, "ZeroEvaluation", "radicand evaluates to zero");
    }
    if (!is_square_value(uval, k)) return std::nullopt;
    if (k.kind == FieldKind::Reals) {
      // principal root is positive: trivial class
    } else {
      root_class = square_class_of_value(canonical_sqrt(uval, k), k).rep;
    }
  }
  SquareClassExpr flat(e.coeff());
  for (const auto& [s, ex] : e.exponents()) flat = flat.times(SquareClassExpr::symbol(s.i, s.j, ex));
  Q v = flat.eval_rational(asg);
  if (k.kind == FieldKind::PrimeField) v = Q(mod_reduce(v, k.p));
  return square_class_of_value(v * root_class, k);
}

inline SquareStatus square_status(const SquareClassExpr& e, const InitialAssignment& asg,
                                  const ResidueFieldSpec& k) {
  auto c = square_class(e, asg, k);
  if (!c) return SquareStatus::NotInField;
  return c->trivial() ? SquareStatus::Square : SquareStatus::NonSquareInField;
}

inline bool is_square(const SquareClassExpr& e, const InitialAssignment& asg,
                      const ResidueFieldSpec& k) {
  return square_status(e, asg, k) == SquareStatus::Square;
}

}  // namespace tropbt
