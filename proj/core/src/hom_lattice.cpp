#include "x0quintic/hom_lattice.hpp"

#include <numeric>
#include <sstream>

#include "x0quintic/error.hpp"

namespace x0q {

namespace {

using i128 = __int128;

i128 abs128(i128 x) { return x < 0 ? -x : x; }

i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

struct Rational {
  i128 num = 0, den = 1;

  Rational() = default;
  Rational(i128 n, i128 d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw Error(Errc::invariant_violation, "rational division by zero");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  Rational operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
  Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
  Rational operator/(const Rational& o) const { return Rational(num * o.den, den * o.num); }
  bool is_zero() const { return num == 0; }
};

void require_square(const IntMatrix& Q) {
  for (const auto& row : Q)
    if (row.size() != Q.size()) throw Error(Errc::invalid_argument, "matrix is not square");
}

// sum_{m^2 | k} mu(m) a_{k/m^2}
i64 twisted_sum(HeckeTable& h, i64 k) {
  i64 s = 0;
  for (i64 m = 1; m * m <= k; ++m) {
    if (k % (m * m)) continue;
    int mu = moebius(m);
    if (mu) s += mu * h.an(k / (m * m));
  }
  return s;
}

std::string vec_str(const std::vector<i64>& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace

i64 GramMatrix::value(const std::vector<i64>& v) const {
  i64 s = 0;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) s += entries[i][j] * v[i] * v[j];
  return s;
}

bool gram_formula_regime(i64 N, i64 M) {
  if (M < 1 || N % M) throw Error(Errc::invalid_argument, "conductor must divide the level");
  const i64 q = N / M;
  return is_squarefree(q) || std::gcd(q, M) == 1;
}

i64 gram_entry(HeckeTable& hecke, const EllipticCurveRecord& E, i64 N, i64 d1, i64 d2) {
  const i64 M = E.conductor;
  if (M < 1 || N % M)
    throw Error(Errc::invalid_argument, "gram_entry: conductor " + std::to_string(M) + " does not divide " + std::to_string(N));
  const i64 q = N / M;
  if (d1 < 1 || d2 < 1 || q % d1 || q % d2)
    throw Error(Errc::invalid_argument, "gram_entry: basis indices must divide N/M");
  if (!gram_formula_regime(N, M))
    throw Error(Errc::unsupported_regime, "N/M = " + std::to_string(q) + " is neither squarefree nor coprime to M = " + std::to_string(M));
  const i64 g = std::gcd(d1, d2);
  const i64 k = (d1 / g) * (d2 / g);
  i64 a;
  if (is_squarefree(k))
    a = hecke.an(k);
  else
    a = twisted_sum(hecke, d1 / g) * twisted_sum(hecke, d2 / g);
  const i64 num = psi(N), den = psi(M * k);
  if (num % den) throw Error(Errc::invariant_violation, "psi ratio is not integral");
  return a * (num / den) * E.modular_degree;
}

i64 gram_entry(const EllipticCurveRecord& E, i64 N, i64 d1, i64 d2) {
  HeckeTable h(E);
  return gram_entry(h, E, N, d1, d2);
}

std::vector<i64> leading_minors(const IntMatrix& Q) {
  require_square(Q);
  // Bareiss fraction-free elimination; the k-th pivot is the k-th leading minor.
  const size_t n = Q.size();
  std::vector<std::vector<i128>> a(n, std::vector<i128>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = Q[i][j];
  std::vector<i64> minors;
  i128 prev = 1;
  for (size_t k = 0; k < n; ++k) {
    minors.push_back(static_cast<i64>(a[k][k]));
    if (a[k][k] == 0) {
      while (minors.size() < n) minors.push_back(0);  // stop: later minors are not leading pivots
      break;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return minors;
}

bool is_positive_definite(const IntMatrix& Q) {
  for (size_t i = 0; i < Q.size(); ++i)
    for (size_t j = 0; j < Q.size(); ++j)
      if (Q[i][j] != Q[j][i]) return false;
  for (i64 m : leading_minors(Q))
    if (m <= 0) return false;
  return true;
}

GramMatrix gram_matrix(const EllipticCurveRecord& E, i64 N) {
  if (N >= 778) throw Error(Errc::invalid_argument, "gram_matrix: the divisor basis is only established for N < 778");
  GramMatrix G;
  G.level = N;
  G.curve = E;
  if (E.conductor < 1 || N % E.conductor)
    throw Error(Errc::invalid_argument, "gram_matrix: conductor does not divide N");
  G.basis = divisors(N / E.conductor);
  HeckeTable hecke(E);
  const size_t n = G.basis.size();
  G.entries.assign(n, std::vector<i64>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j)
      G.entries[i][j] = G.entries[j][i] = gram_entry(hecke, E, N, G.basis[i], G.basis[j]);

  const i64 diag = E.modular_degree * (psi(N) / psi(E.conductor));
  for (size_t i = 0; i < n; ++i) {
    if (G.entries[i][i] != diag)
      throw Error(Errc::invariant_violation, "diagonal entry differs from deg f * psi(N)/psi(M)");
    for (size_t j = 0; j < n; ++j)
      if (G.entries[i][j] % E.modular_degree)
        throw Error(Errc::invariant_violation, "entry not divisible by the modular degree");
  }
  if (!is_positive_definite(G.entries))
    throw Error(Errc::invariant_violation, "Gram matrix of " + E.label + " at level " + std::to_string(N) + " is not positive definite");
  return G;
}

std::vector<i64> ellipsoid_box(const IntMatrix& Q, i64 max_t) {
  require_square(Q);
  const size_t n = Q.size();
  // Gauss-Jordan on [Q | I] over the rationals.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) a[i][j] = Rational(Q[i][j]);
    a[i][n + i] = Rational(1);
  }
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) throw Error(Errc::invalid_argument, "ellipsoid_box: singular form");
    std::swap(a[piv], a[c]);
    Rational p = a[c][c];
    for (auto& x : a[c]) x = x / p;
    for (size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      Rational f = a[r][c];
      for (size_t k = 0; k < 2 * n; ++k) a[r][k] = a[r][k] - f * a[c][k];
    }
  }
  std::vector<i64> box(n);
  for (size_t i = 0; i < n; ++i) {
    const Rational& inv = a[i][n + i];
    if (inv.num <= 0) throw Error(Errc::invalid_argument, "ellipsoid_box: form is not positive definite");
    // largest k with k^2 * den <= max_t * num
    i128 lim = static_cast<i128>(max_t) * inv.num;
    i64 k = 0;
    while (static_cast<i128>(k + 1) * (k + 1) * inv.den <= lim) ++k;
    box[i] = k;
  }
  return box;
}

std::vector<RepresentationReport> represented_values(const IntMatrix& Q, i64 max_t) {
  if (!is_positive_definite(Q)) throw Error(Errc::invalid_argument, "represented_values: form must be positive definite");
  const size_t n = Q.size();
  std::vector<RepresentationReport> out(static_cast<size_t>(std::max<i64>(max_t, 0)));
  for (i64 t = 1; t <= max_t; ++t) out[t - 1].target = t;
  if (max_t < 1 || n == 0) return out;

  const auto box = ellipsoid_box(Q, max_t);
  std::vector<i64> v(n);
  for (size_t i = 0; i < n; ++i) v[i] = -box[i];
  i64 visited = 0;
  while (true) {
    ++visited;
    i128 s = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) s += static_cast<i128>(Q[i][j]) * v[i] * v[j];
    if (s >= 1 && s <= max_t) {
      auto& r = out[static_cast<size_t>(s) - 1];
      if (!r.represented) {
        // canonical sign: first nonzero coordinate positive
        auto w = v;
        for (i64 x : w) {
          if (x == 0) continue;
          if (x < 0)
            for (auto& y : w) y = -y;
          break;
        }
        r.represented = true;
        r.witness = w;
      }
    }
    size_t k = 0;
    while (k < n && v[k] == box[k]) {
      v[k] = -box[k];
      ++k;
    }
    if (k == n) break;
    ++v[k];
  }
  std::ostringstream proof;
  proof << "box " << vec_str(box) << " from exact inverse diagonal; " << visited << " vectors checked";
  for (auto& r : out) r.bound_proof = proof.str();
  return out;
}

std::vector<RepresentationReport> represented_values(const GramMatrix& Q, i64 max_t) {
  return represented_values(Q.entries, max_t);
}

const char* penta_case_name(PentaCase c) {
  switch (c) {
    case PentaCase::form_misses_5: return "form-misses-5";
    case PentaCase::regime_divisibility: return "degree-divisibility";
    case PentaCase::degree5_list: return "modular-degree-5-list";
    case PentaCase::degree1: return "modular-degree-1";
    case PentaCase::undecided: return "undecided";
  }
  return "undecided";
}

PentaDecision pentaelliptic_exclusion(i64 N, const std::vector<EllipticCurveRecord>& curves,
                                      const std::vector<EllipticCurveRecord>& degree_five) {
  if (N < 1 || N >= 468) throw Error(Errc::invalid_argument, "pentaelliptic_exclusion: requires 1 <= N < 468");
  PentaDecision d;
  d.level = N;
  d.excluded = true;
  for (const auto& E : curves) {
    CurveExclusion ce;
    ce.label = E.label;
    ce.conductor = E.conductor;
    ce.modular_degree = E.modular_degree;
    if (N % E.conductor) throw Error(Errc::invalid_argument, "curve conductor does not divide N");
    bool five_possible = true;
    if (gram_formula_regime(N, E.conductor)) {
      GramMatrix G = gram_matrix(E, N);
      auto reps = represented_values(G, 5);
      ce.gram = G.entries;
      for (const auto& r : reps)
        if (r.represented) {
          ce.form_minimum = r.target;
          break;
        }
      five_possible = reps[4].represented;
      if (!five_possible) {
        ce.reason = PentaCase::form_misses_5;
        ce.detail = "5 not represented; " + reps[4].bound_proof;
      }
    } else {
      d.unsupported_pairs.emplace_back(N, E.conductor);
      five_possible = (5 % E.modular_degree == 0);
      if (!five_possible) {
        ce.reason = PentaCase::regime_divisibility;
        ce.detail = "all degrees divisible by deg f = " + std::to_string(E.modular_degree);
      }
    }
    if (five_possible) {
      if (E.modular_degree == 1) {
        ce.reason = PentaCase::degree1;
        ce.detail = "deg f = 1 forces genus-1 X0(M), whose Mordell-Weil rank is 0";
      } else if (E.modular_degree == 5) {
        bool listed = false;
        for (const auto& F : degree_five)
          if (F.label == E.label && F.rank == 0) listed = true;
        if (listed) {
          ce.reason = PentaCase::degree5_list;
          ce.detail = "deg f = 5 curve is on the modular-degree-5 list, all of rank 0";
        }
      }
    }
    if (ce.reason == PentaCase::undecided) d.excluded = false;
    d.traces.push_back(std::move(ce));
  }
  return d;
}

}  // namespace x0q
