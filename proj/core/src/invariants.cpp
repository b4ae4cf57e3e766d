#include "x0quintic/invariants.hpp"

#include <numeric>
#include <string>

#include "x0quintic/error.hpp"

namespace x0q {

namespace {

using i128 = __int128;

i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

// Returns g = gcd(a, b) and s, t with s*a + t*b = g.
i64 egcd(i64 a, i64 b, i64& s, i64& t) {
  i64 s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    i64 q = a / b;
    i64 r = a - q * b;
    a = b;
    b = r;
    i64 tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return a;
}

i64 crt(i64 r1, i64 m1, i64 r2, i64 m2) {
  i64 s, t;
  egcd(m1, m2, s, t);
  i128 m = static_cast<i128>(m1) * m2;
  i128 x = static_cast<i128>(r1) * t % m * m2 + static_cast<i128>(r2) * s % m * m1;
  x %= m;
  if (x < 0) x += m;
  return static_cast<i64>(x);
}

struct P1Point {
  i64 x, y;
};

// Points of P^1(Z/NZ), built prime by prime and glued with CRT.
std::vector<P1Point> p1_points(i64 N) {
  std::vector<P1Point> pts{{0, 0}};
  i64 m = 1;
  for (auto [p, e] : factor(N)) {
    i64 q = ipow(p, e);
    std::vector<P1Point> local;
    for (i64 y = 0; y < q; ++y) local.push_back({1, y});
    for (i64 x = 0; x < q; x += p) local.push_back({x, 1});
    std::vector<P1Point> next;
    next.reserve(pts.size() * local.size());
    for (const auto& a : pts)
      for (const auto& b : local) next.push_back({crt(a.x, m, b.x, q), crt(a.y, m, b.y, q)});
    pts.swap(next);
    m *= q;
  }
  return pts;
}

// Coefficient b of the form f o gamma for any gamma in SL2(Z) whose first
// column is congruent to (x, y) mod N; returned mod 2N.
i64 transformed_b(const BinaryForm& f, i64 N, i64 x, i64 y) {
  const i64 M = 2 * N;
  x = mod(x, M);
  y = mod(y, M);
  if (std::gcd(std::gcd(x, y), M) != 1) x = mod(x + N, M);
  if (std::gcd(std::gcd(x, y), M) != 1) y = mod(y + N, M);
  i64 s, r, al, be;
  i64 g1 = egcd(x, y, s, r);
  egcd(g1, M, al, be);
  // x*(al*s) + y*(al*r) = 1 (mod M), so v = al*s, u = -al*r.
  i128 v = mod(static_cast<i64>(static_cast<i128>(al) * s % M), M);
  i128 u = mod(static_cast<i64>(-static_cast<i128>(al) * r % M), M);
  i128 B = 2 * static_cast<i128>(f.a) * x * u + static_cast<i128>(f.b) * (x * v + u * y) +
           2 * static_cast<i128>(f.c) * y * v;
  B %= M;
  if (B < 0) B += M;
  return static_cast<i64>(B);
}

std::vector<i64> traces_for(i64 d) {
  std::vector<i64> ts;
  for (i64 t = -2 * d; t <= 2 * d; t += d)
    if (t * t < 4 * d) ts.push_back(t);
  return ts;
}

struct Cusp {
  i64 a, c;
};

std::pair<i64, i64> cusp_invariant(i64 N, i64 a, i64 c) {
  c = std::abs(c);
  i64 delta = std::gcd(c, N);
  i64 g = std::gcd(delta, N / delta);
  if (g == 1) return {delta, 0};
  i64 cd = (c / delta) % g;
  return {delta, mod(static_cast<i64>(static_cast<i128>(a) * cd % g), g)};
}

std::vector<Cusp> cusp_representatives(i64 N) {
  std::vector<Cusp> out;
  for (i64 delta : divisors(N)) {
    i64 g = std::gcd(delta, N / delta);
    if (g == 1) {
      out.push_back({1, delta});
      continue;
    }
    for (i64 u = 1; u < g; ++u) {
      if (std::gcd(u, g) != 1) continue;
      i64 a = u;
      while (std::gcd(a, delta) != 1) a += g;
      out.push_back({a, delta});
    }
  }
  return out;
}

}  // namespace

LevelInvariants level_invariants(i64 N) {
  if (N < 1) throw Error(Errc::invalid_argument, "level_invariants: N must be >= 1");
  LevelInvariants L;
  L.level = N;
  L.psi = psi(N);
  L.omega = omega(N);
  auto fac = factor(N);
  if (N % 4 == 0) {
    L.nu2 = 0;
  } else {
    L.nu2 = 1;
    for (auto [p, e] : fac) L.nu2 *= 1 + kronecker(-4, p);
  }
  if (N % 9 == 0) {
    L.nu3 = 0;
  } else {
    L.nu3 = 1;
    for (auto [p, e] : fac) L.nu3 *= 1 + kronecker(-3, p);
  }
  L.cusps = 0;
  for (i64 d : divisors(N)) L.cusps += euler_phi(std::gcd(d, N / d));
  i64 twelve_gm1 = L.psi - 3 * L.nu2 - 4 * L.nu3 - 6 * L.cusps;
  if (twelve_gm1 % 12 != 0)
    throw Error(Errc::invariant_violation, "genus identity not integral at N=" + std::to_string(N));
  L.genus = twelve_gm1 / 12 + 1;
  return L;
}

i64 genus(i64 N) { return level_invariants(N).genus; }

bool is_hall_divisor(i64 N, i64 d) { return d >= 1 && N % d == 0 && std::gcd(d, N / d) == 1; }

std::vector<i64> hall_divisors(i64 N) {
  std::vector<i64> out;
  for (i64 d : divisors(N))
    if (d > 1 && is_hall_divisor(N, d)) out.push_back(d);
  return out;
}

i64 valid_coset_count(i64 N, i64 d, i64 t, const BinaryForm& f) {
  i64 count = 0;
  const i64 target = mod(t, 2 * d);
  for (const auto& pt : p1_points(N)) {
    i128 A = static_cast<i128>(f.a) * pt.x * pt.x + static_cast<i128>(f.b) * pt.x * pt.y +
             static_cast<i128>(f.c) * pt.y * pt.y;
    if (A % N != 0) continue;
    if (transformed_b(f, N, pt.x, pt.y) % (2 * d) != target) continue;
    ++count;
  }
  return count;
}

FixedPointCount al_fixed_points_detail(i64 N, i64 d) {
  if (d <= 1 || !is_hall_divisor(N, d))
    throw Error(Errc::invalid_argument,
                "al_fixed_points: " + std::to_string(d) + " is not a Hall divisor > 1 of " + std::to_string(N));
  FixedPointCount out;

  // Interior points. The local count depends only on the order, so each
  // order contributes h(order) * count(principal form) / |Aut|.
  i64 weighted6 = 0;  // six times the weighted sum, to stay integral
  for (i64 t : traces_for(d)) {
    const i64 D = t * t - 4 * d;
    for (i64 f = 1; f * f <= -D; ++f) {
      if (D % (f * f) != 0 || !is_discriminant(D / (f * f))) continue;
      const i64 D0 = D / (f * f);
      const i64 h = class_number(D0);
      const i64 b0 = (D0 % 2 == 0) ? 0 : 1;
      BinaryForm principal{f, f * b0, f * ((b0 - D0) / 4)};
      BinaryForm reduced{1, b0, (b0 - D0) / 4};
      i64 local = valid_coset_count(N, d, t, principal);
      int aut = automorphism_count(reduced);
      weighted6 += h * local * (6 / aut);
    }
  }
  if (weighted6 % 6 != 0)
    throw Error(Errc::invariant_violation, "non-integral fixed point count for w_" + std::to_string(d) +
                                               " on X0(" + std::to_string(N) + ")");
  out.interior = weighted6 / 6;

  // Cusps. w_d = [[d, y], [N, d*w]] with d*w - (N/d)*y = 1.
  i64 w, y;
  egcd(d, N / d, w, y);
  y = -y;
  for (const auto& cu : cusp_representatives(N)) {
    i128 num = static_cast<i128>(d) * cu.a + static_cast<i128>(y) * cu.c;
    i128 den = static_cast<i128>(N) * cu.a + static_cast<i128>(d) * w * cu.c;
    i64 g = std::gcd(static_cast<i64>(num < 0 ? -num : num), static_cast<i64>(den < 0 ? -den : den));
    i64 a2 = static_cast<i64>(num / g), c2 = static_cast<i64>(den / g);
    if (c2 < 0) {
      a2 = -a2;
      c2 = -c2;
    }
    if (cusp_invariant(N, cu.a, cu.c) == cusp_invariant(N, a2, c2)) ++out.cusps;
  }
  return out;
}

i64 al_fixed_points(i64 N, i64 d) { return al_fixed_points_detail(N, d).total(); }

QuotientSpec quotient_genus(i64 N, i64 d) {
  const i64 g = genus(N);
  const i64 fp = al_fixed_points(N, d);
  const i64 num = 2 * g + 2 - fp;
  if (num < 0 || num % 4 != 0)
    throw Error(Errc::invariant_violation, "Riemann-Hurwitz residue fails for w_" + std::to_string(d) +
                                               " on X0(" + std::to_string(N) + ")");
  return {N, d, num / 4};
}

namespace {

void require_good_prime(i64 N, i64 p, const char* fn) {
  if (!is_prime(p)) throw Error(Errc::invalid_argument, std::string(fn) + ": p must be prime");
  if (N % p == 0) throw Error(Errc::invalid_argument, std::string(fn) + ": p divides N");
}

}  // namespace

i64 ogg_point_lower_bound(i64 N, i64 p) {
  require_good_prime(N, p, "ogg_point_lower_bound");
  return ceil_div((p - 1) * psi(N), 12) + ipow(2, omega(N));
}

i64 ogg_degree_bound_to_elliptic(i64 N, i64 p) {
  return ceil_div(ogg_point_lower_bound(N, p), (p + 1) * (p + 1));
}

i64 ogg_degree_bound_exact(i64 N, i64 p, i64 points_over_p2) {
  if (points_over_p2 <= 0) throw Error(Errc::invalid_argument, "ogg_degree_bound_exact: point count must be positive");
  return ceil_div(ogg_point_lower_bound(N, p), points_over_p2);
}

i64 ogg_gonality_bound(i64 N, i64 p) { return ceil_div(ogg_point_lower_bound(N, p), p * p + 1); }

i64 abramovich_gonality_bound(i64 N) { return ceil_div(325 * psi(N), 32768); }

OggSweep best_ogg_degree_bound(i64 N) {
  OggSweep best;
  for (i64 p : kOggPrimes) {
    if (N % p == 0) continue;
    i64 b = ogg_degree_bound_to_elliptic(N, p);
    if (b > best.bound) best = {b, p};
  }
  return best;
}

OggSweep best_ogg_gonality_bound(i64 N) {
  OggSweep best;
  for (i64 p : kOggPrimes) {
    if (N % p == 0) continue;
    i64 b = ogg_gonality_bound(N, p);
    if (b > best.bound) best = {b, p};
  }
  return best;
}

}  // namespace x0q
