#pragma once

#include <cstdint>
#include <vector>

namespace x0q {

using i64 = std::int64_t;

struct PrimePower {
  i64 p;
  int e;
};

// Trial division; inputs here stay well below 2^40.
std::vector<PrimePower> factor(i64 n);
bool is_prime(i64 n);
std::vector<i64> primes_up_to(i64 n);

i64 psi(i64 n);
int omega(i64 n);
std::vector<i64> divisors(i64 n);
int moebius(i64 n);
i64 euler_phi(i64 n);
bool is_squarefree(i64 n);
i64 ipow(i64 b, int e);
i64 isqrt(i64 n);
i64 ceil_div(i64 a, i64 b);  // b > 0

// Kronecker symbol (a/n) for n >= 1.
int kronecker(i64 a, i64 n);

bool is_discriminant(i64 D);

struct BinaryForm {
  i64 a, b, c;
  i64 disc() const { return b * b - 4 * a * c; }
  i64 operator()(i64 x, i64 y) const { return a * x * x + b * x * y + c * y * y; }
  bool operator==(const BinaryForm&) const = default;
};

// Reduced positive-definite forms of discriminant D: |b| <= a <= c, and
// b >= 0 whenever |b| == a or a == c.
std::vector<BinaryForm> reduced_forms(i64 D, bool primitive_only = true);
i64 class_number(i64 D);
// Size of the automorphism group of a reduced form modulo +-1.
int automorphism_count(const BinaryForm& f);

}  // namespace x0q
