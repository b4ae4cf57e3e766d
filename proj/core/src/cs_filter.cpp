#include "x0quintic/cs_filter.hpp"

#include <numeric>

#include "x0quintic/error.hpp"
#include "x0quintic/invariants.hpp"

namespace x0q {

std::string AuxMap::name() const {
  if (kind == Kind::gonality_map) return "P1";
  return "w" + std::to_string(d);
}

i64 cs_bound(i64 m, i64 gY, i64 n, i64 gZ) {
  if (m < 1 || n < 1) throw Error(Errc::invalid_argument, "cs_bound: degrees must be >= 1");
  return m * gY + n * gZ + (m - 1) * (n - 1);
}

AuxMap atkin_lehner_aux(i64 N, i64 d) {
  AuxMap a;
  a.kind = AuxMap::Kind::atkin_lehner;
  a.d = d;
  a.degree = 2;
  a.target_genus = quotient_genus(N, d).genus;
  return a;
}

std::optional<AuxMap> gonality_aux(i64 N, const GonalityTable& table) {
  auto f = table.cited(N);
  if (!f || !f->upper) return std::nullopt;
  AuxMap a;
  a.kind = AuxMap::Kind::gonality_map;
  a.degree = *f->upper;
  a.target_genus = 0;
  return a;
}

CsCertificate cs_excludes_deg5(i64 N, i64 target_genus, const AuxMap& aux) {
  if (target_genus != 0 && target_genus != 1)
    throw Error(Errc::invalid_argument, "cs_excludes_deg5: target genus must be 0 or 1");
  if (aux.degree <= 1) throw Error(Errc::not_applicable, "auxiliary map of degree 1 cannot rule out common factoring");
  if (std::gcd(aux.degree, i64{5}) != 1)
    throw Error(Errc::not_applicable, "auxiliary degree " + std::to_string(aux.degree) + " shares a factor with 5");
  CsCertificate c;
  c.level = N;
  c.genus = genus(N);
  c.aux = aux;
  c.n = 5;
  c.target_genus = target_genus;
  c.bound = cs_bound(aux.degree, aux.target_genus, 5, target_genus);
  c.coprime_degrees = true;
  c.excluded = c.genus > c.bound;
  return c;
}

std::optional<CsCertificate> cs_search(i64 N, i64 target_genus, const GonalityTable& table) {
  for (i64 d : hall_divisors(N)) {
    auto c = cs_excludes_deg5(N, target_genus, atkin_lehner_aux(N, d));
    if (c.excluded) return c;
  }
  if (auto aux = gonality_aux(N, table); aux && aux->degree > 1 && std::gcd(aux->degree, i64{5}) == 1) {
    auto c = cs_excludes_deg5(N, target_genus, *aux);
    if (c.excluded) return c;
  }
  return std::nullopt;
}

}  // namespace x0q
