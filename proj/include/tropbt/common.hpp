#pragma once

// Shared primitives: exact rational arithmetic, lattice/plane geometry,
// error reporting, and deterministic RNG seeding.

#include <gmpxx.h>

#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropbt {

using Q = mpq_class;
using Z = mpz_class;

// mpq_class(num, den) does NOT canonicalize; always build fractions here.
inline Q frac(long num, long den) {
  Q q(num, den);
  q.canonicalize();
  return q;
}
inline Q frac(const Z& num, const Z& den) {
  Q q(num, den);
  q.canonicalize();
  return q;
}

// All library failures carry a stable machine-readable code (e.g.
// "WrongDegree") plus a human-readable detail string.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& detail) {
  throw Error(code, detail);
}

inline void require(bool cond, const std::string& code, const std::string& detail) {
  if (!cond) fail(code, detail);
}

// Lattice point (exponent pair).
struct IPt {
  int i = 0;
  int j = 0;
  friend bool operator==(const IPt& a, const IPt& b) { return a.i == b.i && a.j == b.j; }
  friend bool operator!=(const IPt& a, const IPt& b) { return !(a == b); }
  friend bool operator<(const IPt& a, const IPt& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  }
};

inline IPt operator-(const IPt& a, const IPt& b) { return {a.i - b.i, a.j - b.j}; }
inline IPt operator+(const IPt& a, const IPt& b) { return {a.i + b.i, a.j + b.j}; }
inline long icross(const IPt& a, const IPt& b) {
  return static_cast<long>(a.i) * b.j - static_cast<long>(a.j) * b.i;
}
inline std::string to_string(const IPt& p) {
  return "(" + std::to_string(p.i) + "," + std::to_string(p.j) + ")";
}

// Exact point / vector in the tropical plane.
struct Pt {
  Q x, y;
  Pt() : x(0), y(0) {}
  Pt(Q xx, Q yy) : x(std::move(xx)), y(std::move(yy)) {}
  friend bool operator==(const Pt& a, const Pt& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Pt& a, const Pt& b) { return !(a == b); }
  friend bool operator<(const Pt& a, const Pt& b) {
    int c = cmp(a.x, b.x);
    if (c != 0) return c < 0;
    return cmp(a.y, b.y) < 0;
  }
  friend Pt operator+(const Pt& a, const Pt& b) { return {a.x + b.x, a.y + b.y}; }
  friend Pt operator-(const Pt& a, const Pt& b) { return {a.x - b.x, a.y - b.y}; }
  friend Pt operator*(const Q& s, const Pt& a) { return {s * a.x, s * a.y}; }
};

inline Q cross(const Pt& a, const Pt& b) { return a.x * b.y - a.y * b.x; }
inline Q dot(const Pt& a, const Pt& b) { return a.x * b.x + a.y * b.y; }

inline std::string to_string(const Q& q) {
  return q.get_str();
}
inline std::string to_string(const Pt& p) {
  return "(" + to_string(p.x) + "," + to_string(p.y) + ")";
}

// Reduce an integer vector to its primitive generator.
inline IPt primitive(IPt v) {
  if (v.i == 0 && v.j == 0) return v;
  long g = std::abs(std::gcd(static_cast<long>(v.i), static_cast<long>(v.j)));
  return {static_cast<int>(v.i / g), static_cast<int>(v.j / g)};
}

// Primitive integer direction of an exact rational vector; requires v != 0.
inline IPt primitive_dir(const Pt& v) {
  if (v.x == 0 && v.y == 0) fail("ZeroVector", "primitive_dir of zero vector");
  Z nx = v.x.get_num() * v.y.get_den();
  Z ny = v.y.get_num() * v.x.get_den();
  Z g = gcd(abs(nx), abs(ny));
  Z px = nx / g, py = ny / g;
  require(px.fits_sint_p() && py.fits_sint_p(), "Overflow", "direction too large");
  return {static_cast<int>(px.get_si()), static_cast<int>(py.get_si())};
}

// Deterministic RNG: honors TROPBT_SEED, defaults to a fixed constant.
inline std::uint64_t default_seed() {
  if (const char* s = std::getenv("TROPBT_SEED")) {
    return std::strtoull(s, nullptr, 10);
  }
  return 0x5eed5eedULL;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed = default_seed()) : eng_(seed) {}
  // Uniform integer in [lo, hi].
  long uniform(long lo, long hi) {
    std::uniform_int_distribution<long> d(lo, hi);
    return d(eng_);
  }
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace tropbt
