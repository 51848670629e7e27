#include "fermat4/sunit.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "fermat4/legendre.hpp"

namespace fermat4 {

namespace {

void check_member(const AlgebraicNumber& x, const FieldDescriptor& field) {
  if (!x.field().same_field(field)) fail(Errc::FieldMismatch, "element outside the field");
}

// -1 / 0 / +1 as |r| compares to 1 under the real embedding.
int cmp_abs_one(const AlgebraicNumber& r) {
  int above = (r - AlgebraicNumber::constant(r.field(), 1)).is_zero()
                  ? 0
                  : (r - AlgebraicNumber::constant(r.field(), 1)).sign_real();
  int below = (r + AlgebraicNumber::constant(r.field(), 1)).is_zero()
                  ? 0
                  : (r + AlgebraicNumber::constant(r.field(), 1)).sign_real();
  if (above == 0 || below == 0) return 0;
  if (above > 0 || below < 0) return 1;
  return -1;
}

// Searches for a generator of slot^k over divisors k of h in ascending
// order. The search boxes below are rigorous: any generator of slot^k has an
// associate inside the box, so an empty box proves slot^k non-principal and
// the first success happens exactly at the class order.
AlgebraicNumber slot_generator(const PrimeSlot& slot, int h,
                               const std::optional<AlgebraicNumber>& unit) {
  const FieldDescriptor& F = slot.field();
  if (F.kind() == FieldKind::Rational)
    return AlgebraicNumber::rational(mpq_class(slot.rational_prime()));

  long d = F.d();
  bool half = F.half_basis();
  mpf_class eps_f(0, 256);
  if (d > 0) {
    if (!unit) fail(Errc::Internal, "real field without a fundamental unit");
    mpf_class root_d(0, 256);
    root_d = sqrt(mpf_class(d, 256));
    mpf_class w_real = half ? mpf_class((1 + root_d) / 2) : root_d;
    eps_f = mpf_class(unit->x(), 256) + mpf_class(unit->y(), 256) * w_real;
  }

  for (int k = 1; k <= h; ++k) {
    if (h % k != 0) continue;
    mpz_class target =
        pow_z(slot.rational_prime(), static_cast<unsigned long>(k) * slot.f());
    mpz_class vmax;
    if (d < 0) {
      vmax = isqrt_z(4 * target / mpz_class(-d)) + 1;
    } else {
      mpf_class raw(0, 256);
      raw = sqrt(mpf_class(target, 256)) * (eps_f + 1) / sqrt(mpf_class(d, 256));
      mpz_set_f(vmax.get_mpz_t(), raw.get_mpf_t());
      vmax += 2;
    }
    for (mpz_class v = 0; v <= vmax; ++v) {
      for (int sign : {1, -1}) {
        if (sign < 0 && d < 0) continue;  // imaginary norms are positive
        mpz_class n0 = sign * target;
        mpz_class t = half ? mpz_class(4 * n0 + d * v * v) : mpz_class(n0 + d * v * v);
        if (t < 0) continue;
        mpz_class u = isqrt_z(t);
        if (u * u != t) continue;
        if (half && (u - v) % 2 != 0) continue;
        AlgebraicNumber elem = half
            ? AlgebraicNumber(F, make_q(u - v, 2), mpq_class(v))
            : AlgebraicNumber(F, mpq_class(u), mpq_class(v));
        if (elem.is_zero()) continue;
        if (abs(elem.norm()) != target) fail(Errc::Internal, "norm-form bookkeeping");
        if (valuation(elem, slot) == k) return elem;
        AlgebraicNumber conj = elem.conjugate();
        if (valuation(conj, slot) == k) return conj;
        // valuation split between conjugate slots: not a generator, keep going
      }
    }
  }
  fail(Errc::Internal, "no generator found up to the class number");
}

bool irrelevant_pair(const AlgebraicNumber& lambda, const AlgebraicNumber& mu) {
  const FieldDescriptor& F = lambda.field();
  auto c = [&](long num, long den) {
    return AlgebraicNumber::constant(F, make_q(num, den));
  };
  return (lambda == c(-1, 1) && mu == c(2, 1)) || (lambda == c(2, 1) && mu == c(-1, 1)) ||
         (lambda == c(1, 2) && mu == c(1, 2));
}

}  // namespace

SUnitGroup sunit_group(const FieldDescriptor& field, const std::vector<PrimeSlot>& S,
                       const mpz_class& disc_bound) {
  if (field.kind() == FieldKind::Abstract)
    fail(Errc::InvalidArgument, "S-unit groups need element arithmetic");
  for (const PrimeSlot& slot : S)
    if (!slot.field().same_field(field)) fail(Errc::FieldMismatch, "slot outside the field");

  SUnitGroup g;
  g.field = field;
  g.S = S;

  if (field.kind() == FieldKind::Quadratic && field.d() == -1) {
    g.torsion_generator = AlgebraicNumber::omega(field);  // i
    g.torsion_order = 4;
  } else if (field.kind() == FieldKind::Quadratic && field.d() == -3) {
    g.torsion_generator = AlgebraicNumber::omega(field);  // primitive 6th root
    g.torsion_order = 6;
  } else {
    g.torsion_generator = AlgebraicNumber::constant(field, -1);
    g.torsion_order = 2;
  }
  AlgebraicNumber tpow = AlgebraicNumber::constant(field, 1);
  for (int j = 0; j < g.torsion_order; ++j) {
    g.torsion.push_back(tpow);
    tpow = tpow * g.torsion_generator;
  }

  int h = 1;
  std::optional<AlgebraicNumber> unit;
  if (field.kind() == FieldKind::Quadratic) {
    ClassData cd = class_data(field, disc_bound);
    h = cd.h;
    unit = cd.unit;
    if (field.d() > 0) {
      if (!unit) fail(Errc::Internal, "missing fundamental unit");
      g.free_generators.push_back(*unit);
      g.has_unit_generator = true;
    }
  }
  for (const PrimeSlot& slot : S) g.free_generators.push_back(slot_generator(slot, h, unit));

  for (const AlgebraicNumber& gen : g.free_generators) {
    std::vector<long> row;
    for (const PrimeSlot& slot : S) row.push_back(valuation(gen, slot));
    g.valuation_matrix.push_back(row);
  }
  return g;
}

bool is_s_unit(const AlgebraicNumber& x, const FieldDescriptor& field,
               const std::vector<PrimeSlot>& S) {
  check_member(x, field);
  if (x.is_zero()) return false;

  std::set<mpz_class> sprimes;
  for (const PrimeSlot& slot : S) sprimes.insert(slot.rational_prime());

  mpq_class n = x.norm();
  mpz_class num = abs(n.get_num());
  mpz_class den = n.get_den();
  for (const mpz_class& p : sprimes) {
    mpz_remove(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    mpz_remove(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  }
  if (num != 1 || den != 1) return false;

  // A slot with negative valuation forces its prime into the reduced
  // coordinate denominators, so after the S-primes are stripped nothing may
  // remain there either (this catches conjugate-slot cancellations in the
  // norm at primes outside S).
  mpz_class D = lcm(x.x().get_den(), x.y().get_den());
  for (const mpz_class& p : sprimes) mpz_remove(D.get_mpz_t(), D.get_mpz_t(), p.get_mpz_t());
  if (D != 1) return false;

  // Cancellation at a prime with only part of its slots in S.
  for (const mpz_class& p : sprimes) {
    std::vector<PrimeSlot> all = slots_above(field, p);
    for (const PrimeSlot& slot : all) {
      bool in_s = false;
      for (const PrimeSlot& s : S)
        if (s.same_slot(slot)) { in_s = true; break; }
      if (!in_s && valuation(x, slot) != 0) return false;
    }
  }
  return true;
}

std::optional<std::vector<long>> exponents_of(const AlgebraicNumber& x, const SUnitGroup& g) {
  check_member(x, g.field);
  if (x.is_zero()) return std::nullopt;

  std::size_t rank = g.free_generators.size();
  std::vector<long> exps(1 + rank, 0);
  AlgebraicNumber r = x;
  std::size_t base = g.has_unit_generator ? 1 : 0;
  for (std::size_t i = 0; i < g.S.size(); ++i) {
    long k = g.valuation_matrix[base + i][i];
    if (k <= 0) fail(Errc::Internal, "generator without positive self-valuation");
    long v = valuation(x, g.S[i]);
    if (v % k != 0) return std::nullopt;
    long e = v / k;
    exps[1 + base + i] = e;
    if (e != 0) r = r / g.free_generators[base + i].pow(e);
  }
  if (g.has_unit_generator) {
    const AlgebraicNumber& eps = g.free_generators[0];
    long t = 0;
    while (cmp_abs_one(r) > 0) { r = r / eps; ++t; }
    while (cmp_abs_one(r) < 0) { r = r * eps; --t; }
    exps[1] = t;
  }
  for (int j = 0; j < g.torsion_order; ++j) {
    if (r == g.torsion[j]) {
      exps[0] = j;
      return exps;
    }
  }
  return std::nullopt;  // residual is not a torsion unit: outside the lattice
}

std::vector<SUnitSolution> solve_sunit(const SUnitGroup& g, long bound,
                                       unsigned long ceiling) {
  if (bound < 0) fail(Errc::InvalidArgument, "bound must be >= 0");
  std::size_t rank = g.free_generators.size();
  mpz_class box = g.torsion_order * pow_z(2 * bound + 1, rank);
  if (box > mpz_class(ceiling))
    fail(Errc::BoxTooLarge, "enumeration box exceeds the ceiling");

  std::vector<std::vector<AlgebraicNumber>> table(rank);
  for (std::size_t i = 0; i < rank; ++i)
    for (long e = -bound; e <= bound; ++e)
      table[i].push_back(g.free_generators[i].pow(e));

  AlgebraicNumber one = AlgebraicNumber::constant(g.field, 1);
  std::map<std::vector<mpq_class>, SUnitSolution> found;

  std::vector<long> e(rank, -bound);
  while (true) {
    AlgebraicNumber base = one;
    for (std::size_t i = 0; i < rank; ++i) base = base * table[i][e[i] + bound];
    for (int t = 0; t < g.torsion_order; ++t) {
      AlgebraicNumber lambda = g.torsion[t] * base;
      if (lambda == one) continue;
      AlgebraicNumber mu = one - lambda;
      if (!is_s_unit(mu, g.field, g.S)) continue;

      SUnitSolution sol;
      sol.lambda = lambda;
      sol.mu = mu;
      sol.lambda_exponents.push_back(t);
      sol.lambda_exponents.insert(sol.lambda_exponents.end(), e.begin(), e.end());
      if (auto me = exponents_of(mu, g)) sol.mu_exponents = *me;
      for (const PrimeSlot& slot : g.S)
        sol.valuations.emplace_back(valuation(lambda, slot), valuation(mu, slot));
      sol.irrelevant = irrelevant_pair(lambda, mu);
      sol.search_bound = bound;

      std::vector<mpq_class> key = {lambda.x(), lambda.y(), mu.x(), mu.y()};
      auto it = found.find(key);
      if (it == found.end() || sol.lambda_exponents < it->second.lambda_exponents)
        found[key] = sol;
    }
    std::size_t i = 0;
    while (i < rank && e[i] == bound) { e[i] = -bound; ++i; }
    if (i == rank) break;
    ++e[i];
  }

  std::vector<SUnitSolution> out;
  for (auto& [key, sol] : found) out.push_back(sol);
  std::sort(out.begin(), out.end(), [](const SUnitSolution& a, const SUnitSolution& b) {
    return a.lambda_exponents < b.lambda_exponents;
  });
  return out;
}

SUnitSolution classify(const SUnitSolution& sol, const PrimeSlot& designated_slot) {
  SUnitSolution out = sol;
  long vl = valuation(out.lambda, designated_slot);
  long vm = valuation(out.mu, designated_slot);
  out.m = std::max(std::labs(vl), std::labs(vm));
  out.irrelevant = irrelevant_pair(out.lambda, out.mu);
  return out;
}

std::vector<OrbitClass> orbit_reduce(const std::vector<SUnitSolution>& sols) {
  std::vector<OrbitClass> classes;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    const AlgebraicNumber& lam = sols[i].lambda;
    bool placed = false;
    for (OrbitClass& cls : classes) {
      for (const AlgebraicNumber& v : cls.lambda_values) {
        if (v == lam) {
          cls.member_indices.push_back(i);
          if (sols[i].lambda_exponents < cls.representative.lambda_exponents)
            cls.representative = sols[i];
          placed = true;
          break;
        }
      }
      if (placed) break;
    }
    if (!placed) {
      OrbitClass cls;
      cls.representative = sols[i];
      cls.lambda_values = lambda_orbit(lam).values;
      cls.member_indices.push_back(i);
      classes.push_back(cls);
    }
  }
  std::sort(classes.begin(), classes.end(), [](const OrbitClass& a, const OrbitClass& b) {
    return a.representative.lambda_exponents < b.representative.lambda_exponents;
  });
  return classes;
}

FilterReport congruence_filters(const SUnitSolution& sol, const FieldDescriptor& field) {
  check_member(sol.lambda, field);
  FilterReport rep;

  if (splitting_type(field, 3) == SplittingType::Split && sol.lambda.is_integral() &&
      sol.mu.is_integral()) {
    rep.mod3_applicable = true;
    rep.mod3_passed = true;
    for (const PrimeSlot& slot : slots_above(field, 3)) {
      long lr = slot.residue(sol.lambda).get_si();
      long mr = slot.residue(sol.mu).get_si();
      rep.mod3_residues.emplace_back(lr, mr);
      if (lr != 2 || mr != 2) rep.mod3_passed = false;
    }
  }

  std::vector<PrimeSlot> slots2 = slots_above(field, 2);
  if (slots2.size() == 1) {
    const PrimeSlot& P = slots2[0];
    long vl = valuation(sol.lambda, P);
    long vm = valuation(sol.mu, P);
    long m = std::max(std::labs(vl), std::labs(vm));
    AlgebraicNumber pl, pm;
    if (vl < 0 && vm < 0) {
      pl = sol.lambda.inverse();
      pm = -(sol.mu / sol.lambda);
    } else if (vl == 0 && vm > 0) {
      pl = sol.mu;
      pm = sol.lambda;
    } else if (vl >= 0 && vm == 0) {
      pl = sol.lambda;
      pm = sol.mu;
    } else {
      fail(Errc::Internal, "valuation pattern impossible for lambda + mu = 1");
    }
    if (pl + pm != AlgebraicNumber::constant(field, 1))
      fail(Errc::Internal, "normalized partner is not a solution");
    long pvl = valuation(pl, P);
    long pvm = valuation(pm, P);
    if (pvl != m || pvm != 0) fail(Errc::Internal, "normalized partner valuations off");
    rep.partner_applicable = true;
    rep.partner_lambda = pl;
    rep.partner_mu = pm;
    rep.partner_m = std::max(std::labs(pvl), std::labs(pvm));
    rep.partner_m_equal = rep.partner_m == m;
    rep.unit_norm_sign = sgn(pm.norm());
  }
  return rep;
}

}  // namespace fermat4
