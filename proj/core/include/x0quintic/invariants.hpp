#pragma once

#include <optional>
#include <vector>

#include "x0quintic/arith.hpp"

namespace x0q {

struct LevelInvariants {
  i64 level = 1;
  i64 psi = 1;
  int omega = 0;
  i64 nu2 = 0;
  i64 nu3 = 0;
  i64 cusps = 1;
  i64 genus = 0;
};

LevelInvariants level_invariants(i64 N);
i64 genus(i64 N);

// Divisors d > 1 of N with gcd(d, N/d) = 1.
std::vector<i64> hall_divisors(i64 N);
bool is_hall_divisor(i64 N, i64 d);

struct FixedPointCount {
  i64 interior = 0;  // fixed points in the upper half plane, up to Gamma0(N)
  i64 cusps = 0;
  i64 total() const { return interior + cusps; }
};

// Fixed points of w_d on X0(N), grouped by order: sum over orders of
// discriminant t^2 - 4d of h(order) times a local count.
FixedPointCount al_fixed_points_detail(i64 N, i64 d);
i64 al_fixed_points(i64 N, i64 d);

struct QuotientSpec {
  i64 level = 1;
  i64 d = 1;
  i64 genus = 0;
};

QuotientSpec quotient_genus(i64 N, i64 d);

// Number of Gamma0(N)-classes of forms G in the SL2(Z)-class of f with
// N | G.a and G.b = t (mod 2d). Exposed for tests and the per-class oracle.
i64 valid_coset_count(i64 N, i64 d, i64 t, const BinaryForm& f);

i64 ogg_point_lower_bound(i64 N, i64 p);
i64 ogg_degree_bound_to_elliptic(i64 N, i64 p);
// Same bound, with the exact size of E(F_{p^2}) in place of (p+1)^2.
i64 ogg_degree_bound_exact(i64 N, i64 p, i64 points_over_p2);
i64 abramovich_gonality_bound(i64 N);
// ceil(L_p / (p^2 + 1)): lower bound on Q-gonality from F_{p^2}-points.
i64 ogg_gonality_bound(i64 N, i64 p);

inline constexpr i64 kOggPrimes[] = {2, 3, 5, 7, 11, 13};

struct OggSweep {
  i64 bound = 0;
  i64 prime = 0;  // 0 when every prime in the sweep divides N
};
OggSweep best_ogg_degree_bound(i64 N);
OggSweep best_ogg_gonality_bound(i64 N);

}  // namespace x0q
