#include "x0quintic/elliptic.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "x0quintic/error.hpp"

namespace x0q {

namespace {

using i128 = __int128;

i64 md(i128 a, i64 m) {
  i128 r = a % m;
  return static_cast<i64>(r < 0 ? r + m : r);
}

void require_prime(i64 p, const char* fn) {
  if (!is_prime(p)) throw Error(Errc::invalid_argument, std::string(fn) + ": " + std::to_string(p) + " is not prime");
}

// Number of points on the reduced cubic over F_p, singular point included.
i64 count_all_points(const EllipticCurveRecord& E, i64 p) {
  const i64 a1 = md(E.a1, p), a2 = md(E.a2, p), a3 = md(E.a3, p), a4 = md(E.a4, p), a6 = md(E.a6, p);
  i64 count = 1;  // infinity
  if (p == 2) {
    for (i64 x = 0; x < 2; ++x)
      for (i64 y = 0; y < 2; ++y)
        if ((y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) % 2 == 0) ++count;
    return count;
  }
  std::vector<signed char> chi(static_cast<size_t>(p), -1);
  chi[0] = 0;
  for (i64 y = 1; y < p; ++y) chi[static_cast<size_t>(y * y % p)] = 1;
  for (i64 x = 0; x < p; ++x) {
    i64 rhs = ((x * x % p * x) + a2 * x % p * x + a4 * x + a6) % p;
    i64 lin = (a1 * x + a3) % p;
    i64 d = (lin * lin + 4 * rhs) % p;
    count += 1 + chi[static_cast<size_t>(d)];
  }
  return count;
}

}  // namespace

std::string EllipticCurveRecord::class_label() const {
  size_t i = label.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(label[i - 1]))) --i;
  return label.substr(0, i);
}

i64 discriminant_mod(const EllipticCurveRecord& E, i64 m) {
  if (m < 2) throw Error(Errc::invalid_argument, "discriminant_mod: modulus must be >= 2");
  const i128 a1 = md(E.a1, m), a2 = md(E.a2, m), a3 = md(E.a3, m), a4 = md(E.a4, m), a6 = md(E.a6, m);
  const i128 b2 = md(a1 * a1 + 4 * a2, m);
  const i128 b4 = md(2 * a4 + a1 * a3, m);
  const i128 b6 = md(a3 * a3 + 4 * a6, m);
  const i128 b8 = md(md(a1 * a1 * a6, m) + 4 * a2 * a6 - md(a1 * a3 * a4, m) + md(a2 * a3 * a3, m) - a4 * a4, m);
  i128 d = -md(md(b2 * b2, m) * b8, m) - md(8 * md(b4 * b4, m) * b4, m) - md(27 * b6 * b6, m) +
           md(md(9 * b2 * b4, m) * b6, m);
  return md(d, m);
}

i128 discriminant(const EllipticCurveRecord& E) {
  const i64 lim = 1000000000000LL;
  for (i64 a : {E.a1, E.a2, E.a3, E.a4, E.a6})
    if (a > lim || a < -lim) throw Error(Errc::invalid_argument, "discriminant: coefficients too large for exact evaluation");
  const i128 a1 = E.a1, a2 = E.a2, a3 = E.a3, a4 = E.a4, a6 = E.a6;
  const i128 b2 = a1 * a1 + 4 * a2, b4 = 2 * a4 + a1 * a3, b6 = a3 * a3 + 4 * a6;
  const i128 b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

bool is_good_prime(const EllipticCurveRecord& E, i64 p) {
  require_prime(p, "is_good_prime");
  return discriminant_mod(E, p) != 0;
}

i64 count_points_mod_p(const EllipticCurveRecord& E, i64 p) {
  if (!is_good_prime(E, p))
    throw Error(Errc::bad_reduction, E.label + " has bad reduction at " + std::to_string(p));
  return count_all_points(E, p);
}

i64 count_nonsingular_points_mod_p(const EllipticCurveRecord& E, i64 p) {
  require_prime(p, "count_nonsingular_points_mod_p");
  i64 all = count_all_points(E, p);
  return is_good_prime(E, p) ? all : all - 1;
}

i64 ap(const EllipticCurveRecord& E, i64 p) {
  require_prime(p, "ap");
  if (is_good_prime(E, p)) return p + 1 - count_all_points(E, p);
  return p - count_nonsingular_points_mod_p(E, p);
}

i64 HeckeTable::ap(i64 p) {
  auto it = ap_.find(p);
  if (it != ap_.end()) return it->second;
  i64 v = x0q::ap(E_, p);
  ap_.emplace(p, v);
  return v;
}

i64 HeckeTable::an(i64 n) {
  if (n < 1) throw Error(Errc::invalid_argument, "an: n must be >= 1");
  i64 result = 1;
  for (auto [p, e] : factor(n)) {
    const i64 a = ap(p);
    if (E_.conductor % p == 0) {
      result *= ipow(a, e);
      continue;
    }
    i64 prev = 1, cur = a;
    for (int k = 1; k < e; ++k) {
      i64 next = a * cur - p * prev;
      prev = cur;
      cur = next;
    }
    result *= cur;
  }
  return result;
}

std::vector<HeckeCoefficient> HeckeTable::first(i64 count) {
  std::vector<HeckeCoefficient> out;
  for (i64 n = 1; n <= count; ++n) out.push_back({n, an(n)});
  return out;
}

i64 an(const EllipticCurveRecord& E, i64 n) {
  HeckeTable t(E);
  return t.an(n);
}

i64 count_points_over_p2(const EllipticCurveRecord& E, i64 p) {
  if (!is_good_prime(E, p))
    throw Error(Errc::bad_reduction, E.label + " has bad reduction at " + std::to_string(p));
  const i64 a = ap(E, p);
  return p * p + 1 - (a * a - 2 * p);
}

void validate_curve(const EllipticCurveRecord& E, i64 hasse_limit) {
  if (discriminant(E) == 0) throw Error(Errc::invariant_violation, E.label + ": singular model");
  for (auto [p, e] : factor(E.conductor))
    if (discriminant_mod(E, p) != 0)
      throw Error(Errc::invariant_violation, E.label + ": conductor prime " + std::to_string(p) + " does not divide the discriminant");
  for (i64 p : primes_up_to(hasse_limit)) {
    const i64 a = ap(E, p);
    if (is_good_prime(E, p)) {
      if (static_cast<long double>(a) * a > 4.0L * p)
        throw Error(Errc::invariant_violation, E.label + ": Hasse bound fails at " + std::to_string(p));
    } else if (a < -1 || a > 1) {
      throw Error(Errc::invariant_violation, E.label + ": bad-prime coefficient out of range at " + std::to_string(p));
    }
  }
}

CurveTable CurveTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_argument, "cannot open curve table " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

CurveTable CurveTable::parse(const std::string& text) {
  CurveTable t;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    EllipticCurveRecord E;
    if (!(ls >> E.label)) continue;
    if (!(ls >> E.conductor >> E.a1 >> E.a2 >> E.a3 >> E.a4 >> E.a6 >> E.rank >> E.modular_degree >> E.provenance))
      throw Error(Errc::parse_error, "curve table line " + std::to_string(lineno) + ": expected 10 fields");
    t.add(std::move(E));
  }
  return t;
}

namespace {
// "37.a1" and "37a1" name the same curve.
std::string label_key(const std::string& label) {
  std::string k;
  for (char c : label)
    if (c != '.') k += c;
  return k;
}
}  // namespace

void CurveTable::add(EllipticCurveRecord E) {
  if (index_.count(label_key(E.label))) throw Error(Errc::parse_error, "duplicate curve label " + E.label);
  index_[label_key(E.label)] = curves_.size();
  curves_.push_back(std::move(E));
}

const EllipticCurveRecord* CurveTable::find(const std::string& label) const {
  auto it = index_.find(label_key(label));
  return it == index_.end() ? nullptr : &curves_[it->second];
}

const EllipticCurveRecord& CurveTable::at(const std::string& label) const {
  if (auto* e = find(label)) return *e;
  throw Error(Errc::snapshot_miss, "no bundled model for curve " + label);
}

}  // namespace x0q
