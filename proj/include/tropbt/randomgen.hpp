#pragma once

// Seeded random generation of smooth, generic tropicalized quartics by
// rejection sampling over integer valuations.

#include <optional>
#include <random>

#include "tropbt/quartic.hpp"
#include "tropbt/tropcurve.hpp"

namespace tropbt {

struct RandomQuartic {
  QuarticInput q;
  RegularSubdivision sub;
  TropicalCurve curve;
  unsigned long tries = 0;
};

// All 15 lattice points of the degree-4 simplex.
inline std::vector<IPt> quartic_support() {
  std::vector<IPt> s;
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j + i <= 4; ++j) s.push_back(IPt{i, j});
  return s;
}

// Draw integer valuations until the induced subdivision is unimodular and
// the curve passes the vertex-alignment genericity check. A convex "bowl"
// bias (valuations grow quadratically towards the boundary of the simplex)
// makes unimodular subdivisions likely, and the uniform jitter varies them.
inline RandomQuartic random_smooth_quartic(std::mt19937_64& rng, int jitter = 8,
                                           bool require_generic = true,
                                           unsigned long max_tries = 20000) {
  std::uniform_int_distribution<int> d(0, jitter);
  for (unsigned long tries = 1; tries <= max_tries; ++tries) {
    QuarticInput q;
    for (const IPt& s : quartic_support()) {
      long bowl = (s.i * s.i + s.j * s.j + (4 - s.i - s.j) * (4 - s.i - s.j));
      PuiseuxCoeff pc;
      pc.valuation = Q(static_cast<long>(3 * bowl + d(rng)));
      pc.initial = 1;
      q.coeffs[s] = pc;
    }
    RegularSubdivision sub = newton_subdivision(q);
    if (!check_smooth(sub)) continue;
    TropicalCurve c = build_curve(sub);
    if (require_generic && !check_generic(c).alignments.empty()) continue;
    return RandomQuartic{std::move(q), std::move(sub), std::move(c), tries};
  }
  require(false, "RandomSamplingFailed", "no smooth generic quartic found");
  return {};
}

// Random unit (+1/-1) initials for an input, for real-count experiments.
inline void randomize_sign_initials(QuarticInput& q, std::mt19937_64& rng) {
  std::bernoulli_distribution flip(0.5);
  for (auto& [s, c] : q.coeffs) {
    c.symbolic = false;
    c.initial = flip(rng) ? Q(-1) : Q(1);
  }
}

// Random small nonzero rational initials.
inline void randomize_initials(QuarticInput& q, std::mt19937_64& rng, int bound = 9) {
  std::uniform_int_distribution<int> d(1, bound);
  std::bernoulli_distribution flip(0.5);
  for (auto& [s, c] : q.coeffs) {
    c.symbolic = false;
    Q v(d(rng), d(rng));
    v.canonicalize();
    c.initial = flip(rng) ? Q(-v) : v;
  }
}

}  // namespace tropbt
