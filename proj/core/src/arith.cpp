#include "x0quintic/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "x0quintic/error.hpp"

namespace x0q {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_argument: return "INVALID_ARGUMENT";
    case Errc::bad_reduction: return "BAD_REDUCTION";
    case Errc::unsupported_regime: return "UNSUPPORTED_REGIME";
    case Errc::invariant_violation: return "INVARIANT_VIOLATION";
    case Errc::not_applicable: return "NOT_APPLICABLE";
    case Errc::network_unavailable: return "NETWORK_UNAVAILABLE";
    case Errc::snapshot_miss: return "SNAPSHOT_MISS";
    case Errc::parse_error: return "PARSE_ERROR";
    case Errc::divergence: return "DIVERGENCE";
  }
  return "UNKNOWN";
}

namespace {

void require_positive(i64 n, const char* fn) {
  if (n < 1) throw Error(Errc::invalid_argument, std::string(fn) + ": argument must be >= 1");
}

}  // namespace

std::vector<PrimePower> factor(i64 n) {
  require_positive(n, "factor");
  std::vector<PrimePower> out;
  for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (i64 d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<i64> primes_up_to(i64 n) {
  std::vector<i64> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<size_t>(n) + 1, false);
  for (i64 p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (i64 q = p * p; q <= n; q += p) composite[q] = true;
  }
  return out;
}

i64 psi(i64 n) {
  i64 r = n;
  for (auto [p, e] : factor(n)) r = r / p * (p + 1);
  return r;
}

int omega(i64 n) { return static_cast<int>(factor(n).size()); }

std::vector<i64> divisors(i64 n) {
  std::vector<i64> out{1};
  for (auto [p, e] : factor(n)) {
    size_t k = out.size();
    i64 pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= p;
      for (size_t j = 0; j < k; ++j) out.push_back(out[j] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int moebius(i64 n) {
  int s = 1;
  for (auto [p, e] : factor(n)) {
    if (e > 1) return 0;
    s = -s;
  }
  return s;
}

i64 euler_phi(i64 n) {
  i64 r = n;
  for (auto [p, e] : factor(n)) r = r / p * (p - 1);
  return r;
}

bool is_squarefree(i64 n) { return moebius(n) != 0; }

i64 ipow(i64 b, int e) {
  i64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

i64 isqrt(i64 n) {
  if (n < 0) throw Error(Errc::invalid_argument, "isqrt: negative argument");
  i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

i64 ceil_div(i64 a, i64 b) {
  if (b <= 0) throw Error(Errc::invalid_argument, "ceil_div: divisor must be positive");
  i64 q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

int kronecker(i64 a, i64 n) {
  require_positive(n, "kronecker");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0) return 0;
    i64 r = ((a % 8) + 8) % 8;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol for odd n
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

bool is_discriminant(i64 D) {
  if (D >= 0) return false;
  i64 r = ((D % 4) + 4) % 4;
  return r == 0 || r == 1;
}

std::vector<BinaryForm> reduced_forms(i64 D, bool primitive_only) {
  if (!is_discriminant(D))
    throw Error(Errc::invalid_argument, "reduced_forms: " + std::to_string(D) + " is not a negative discriminant");
  std::vector<BinaryForm> out;
  const i64 amax = isqrt(-D / 3);
  for (i64 a = 1; a <= amax; ++a) {
    for (i64 b = -a + 1; b <= a; ++b) {
      i64 num = b * b - D;
      if (num % (4 * a)) continue;
      i64 c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (primitive_only && std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

i64 class_number(i64 D) { return static_cast<i64>(reduced_forms(D, true).size()); }

int automorphism_count(const BinaryForm& f) {
  if (f.a == f.b && f.b == f.c) return 3;
  if (f.b == 0 && f.a == f.c) return 2;
  return 1;
}

}  // namespace x0q
