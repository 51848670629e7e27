#include "fermat4/frey.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace fermat4 {

const char* reduction_name(ReductionType t) {
  switch (t) {
    case ReductionType::Good: return "good";
    case ReductionType::Multiplicative: return "multiplicative";
    case ReductionType::Additive: return "additive";
    case ReductionType::EvenBoundOnly: return "even-bound-only";
  }
  return "?";
}

namespace {

void check_exponent(long p) {
  if (p < 5) fail(Errc::ExponentTooSmall, "exponent must be a prime >= 5");
  if (!is_prime_z(p)) fail(Errc::InvalidArgument, "exponent must be prime");
}

// |N(x)| for integral x, as an integer.
mpz_class abs_norm(const AlgebraicNumber& x) {
  mpq_class n = x.norm();
  if (n.get_den() != 1) fail(Errc::Internal, "integral element with fractional norm");
  return abs(n.get_num());
}

// Valuation of the rational integer n at `slot` (e * ord_q(n)).
long rational_valuation(const mpz_class& n, const PrimeSlot& slot) {
  if (n == 0) fail(Errc::ZeroElement, "valuation of zero");
  return slot.e() * ord_p(n, slot.rational_prime());
}

}  // namespace

FreyTriple validate_triple(const AlgebraicNumber& a, const AlgebraicNumber& b,
                           const AlgebraicNumber& c, const mpz_class& n, long p,
                           const FieldDescriptor& field) {
  if (field.kind() == FieldKind::Abstract)
    fail(Errc::InvalidArgument, "triples need element arithmetic");
  if (n < 1) fail(Errc::InvalidArgument, "n must be a positive integer");
  check_exponent(p);
  for (const AlgebraicNumber* e : {&a, &b, &c}) {
    if (!e->field().same_field(field)) fail(Errc::FieldMismatch, "element outside the field");
    if (!e->is_integral()) fail(Errc::InvalidArgument, "triple entries must be integral");
  }

  for (const auto& [q, ord] : factorize(n)) {
    for (const PrimeSlot& slot : slots_above(field, q)) {
      if (slot.e() * static_cast<long>(ord) >= p)
        fail(Errc::NOrdTooLarge, "ord(n) at " + slot.str() + " is >= p");
    }
  }

  AlgebraicNumber nval = AlgebraicNumber::constant(field, mpq_class(n));
  if (a.pow(4) - b.pow(4) != nval * c.pow(p))
    fail(Errc::EquationFails, "a^4 - b^4 != n*c^p");

  FreyTriple t;
  t.field = field;
  t.a = a;
  t.b = b;
  t.c = c;
  t.n = n;
  t.p = p;
  t.A = (a + b).pow(2);
  t.B = (a - b).pow(2);
  t.C = a * a + b * b;
  t.trivial = a.is_zero() || b.is_zero() || c.is_zero();

  // The ideal (a, b, c) is the unit ideal iff no prime slot divides every
  // nonzero entry; candidate rational primes divide gcd of the norms.
  std::vector<const AlgebraicNumber*> nonzero;
  for (const AlgebraicNumber* e : {&a, &b, &c})
    if (!e->is_zero()) nonzero.push_back(e);
  if (nonzero.empty()) {
    t.primitive = false;
    return t;
  }
  mpz_class g = 0;
  for (const AlgebraicNumber* e : nonzero) g = gcd(g, abs_norm(*e));
  t.primitive = true;
  if (g != 1) {
    for (const auto& [q, ord] : factorize(g)) {
      (void)ord;
      for (const PrimeSlot& slot : slots_above(field, q)) {
        bool divides_all = true;
        for (const AlgebraicNumber* e : nonzero)
          if (valuation(*e, slot) < 1) { divides_all = false; break; }
        if (divides_all) { t.primitive = false; break; }
      }
      if (!t.primitive) break;
    }
  }
  return t;
}

FreyInvariants invariants(const FreyTriple& t) {
  const FieldDescriptor& F = t.field;
  auto k = [&](long v) { return AlgebraicNumber::constant(F, mpq_class(v)); };
  AlgebraicNumber a2 = k(4) * t.a * t.b;                   // y^2 = x^3 + a2 x^2 + a4 x
  AlgebraicNumber d2 = t.a * t.a - t.b * t.b;              // a^2 - b^2
  AlgebraicNumber a4 = -(d2 * d2);

  FreyInvariants inv;
  inv.b2 = k(4) * a2;
  inv.b4 = k(2) * a4;
  inv.b6 = k(0);
  inv.b8 = -(a4 * a4);
  inv.c4 = inv.b2 * inv.b2 - k(24) * inv.b4;
  inv.c6 = -(inv.b2.pow(3)) + k(36) * inv.b2 * inv.b4;
  inv.delta = -(inv.b2 * inv.b2 * inv.b8) - k(8) * inv.b4.pow(3);
  if (inv.delta.is_zero()) fail(Errc::SingularCurve, "delta vanishes");
  inv.j = inv.c4.pow(3) / inv.delta;

  AlgebraicNumber asq = t.a * t.a, bsq = t.b * t.b;
  inv.c6_reference = -(k(128) * (k(32) * asq * bsq + k(3) * d2 * d2));
  inv.c4_alt = k(16) * (t.A * t.B - k(2) * t.A * t.C - k(2) * t.B * t.C);
  inv.c6_reference_mismatch = inv.c6_reference != inv.c6;
  inv.c4_alt_sign_mismatch = inv.c4_alt != inv.c4;

  AlgebraicNumber nval = AlgebraicNumber::constant(F, mpq_class(t.n));
  AlgebraicNumber prod = k(64) * nval * nval * t.c.pow(2 * t.p) * d2 * d2;
  AlgebraicNumber abc = t.A * t.B * t.C;
  inv.check_delta_product = (inv.delta == prod) && (inv.delta == k(64) * abc * abc);
  inv.check_c4_closed_form =
      inv.c4 == k(16) * (asq + k(3) * bsq) * (k(3) * asq + bsq);
  inv.check_weierstrass = (inv.c4.pow(3) - inv.c6 * inv.c6 == k(1728) * inv.delta) &&
                          (inv.j * inv.delta == inv.c4.pow(3));
  return inv;
}

NormalizedEvenValuations normalize_even_valuations(const FreyTriple& t, const PrimeSlot& slot) {
  if (slot.rational_prime() != 2)
    fail(Errc::PreconditionFailed, "normalization is for slots above 2");
  if (!t.primitive) fail(Errc::PreconditionFailed, "triple must be primitive");
  NormalizedEvenValuations r;
  r.e2 = ord_of_two(slot);
  if (t.p <= 2 * r.e2) fail(Errc::PreconditionFailed, "need p > 2*ord(2)");
  if (t.c.is_zero() || valuation(t.c, slot) < 1)
    fail(Errc::PreconditionFailed, "slot does not divide c");
  r.k = valuation(t.c, slot);
  r.v_n = rational_valuation(t.n, slot);

  long v_sum = valuation(t.C, slot);                       // ord(a^2 + b^2)
  AlgebraicNumber diff = t.a * t.a - t.b * t.b;
  long v_diff = valuation(diff, slot);                     // ord(a^2 - b^2)
  // For a primitive triple with slot | c, exactly one of the two factors of
  // a^4 - b^4 carries valuation ord(2); the other takes the rest.
  if (v_sum == r.e2) {
    r.swapped = false;
    r.v_small = v_sum;
    r.v_large = v_diff;
  } else if (v_diff == r.e2) {
    r.swapped = true;
    r.v_small = v_diff;
    r.v_large = v_sum;
  } else {
    fail(Errc::Internal, "even-valuation trichotomy violated");
  }
  if (r.v_small + r.v_large != t.p * r.k + r.v_n)
    fail(Errc::Internal, "even valuations do not sum to ord(n*c^p)");
  return r;
}

SlotProfile valuation_profile(const FreyTriple& t, const FreyInvariants& inv,
                              const PrimeSlot& slot) {
  SlotProfile pr;
  pr.slot = slot;
  pr.v_delta = valuation(inv.delta, slot);
  pr.v_c4 = inv.c4.is_zero() ? std::numeric_limits<long>::max() : valuation(inv.c4, slot);
  pr.p_divides_v_delta = pr.v_delta % t.p == 0;
  pr.divides_c = !t.c.is_zero() && valuation(t.c, slot) > 0;
  pr.divides_n = t.n % slot.rational_prime() == 0;
  if (slot.rational_prime() == 2) {
    pr.reduction = ReductionType::EvenBoundOnly;
    pr.even_bound = 2 + 6 * ord_of_two(slot);
  } else if (pr.v_delta == 0) {
    pr.reduction = ReductionType::Good;
  } else if (pr.v_c4 == 0) {
    pr.reduction = ReductionType::Multiplicative;
  } else {
    pr.reduction = ReductionType::Additive;
  }
  return pr;
}

std::vector<PrimeSlot> support_slots(const FreyTriple& t) {
  mpz_class bound = 2 * t.n;
  if (!t.c.is_zero()) bound *= abs_norm(t.c);
  std::vector<PrimeSlot> out;
  for (const auto& [q, ord] : factorize(bound)) {
    (void)ord;
    for (const PrimeSlot& slot : slots_above(t.field, q)) out.push_back(slot);
  }
  return out;
}

ConductorReport conductor_support(const FreyTriple& t, const std::vector<SlotProfile>& profiles) {
  auto covered = [&](const PrimeSlot& slot) {
    for (const SlotProfile& pr : profiles)
      if (pr.slot.same_slot(slot)) return true;
    return false;
  };
  for (const PrimeSlot& slot : support_slots(t)) {
    bool divides = slot.rational_prime() == 2 || t.n % slot.rational_prime() == 0 ||
                   (!t.c.is_zero() && valuation(t.c, slot) > 0);
    if (divides && !covered(slot))
      fail(Errc::IncompleteProfiles, "no profile for " + slot.str());
  }

  ConductorReport rep;
  for (const SlotProfile& pr : profiles) {
    bool even = pr.slot.rational_prime() == 2;
    if (even) {
      rep.support_even.push_back(pr);
      rep.n_e_support.push_back(pr.slot.str());
      rep.n_p_support.push_back(pr.slot.str());
      rep.serre_support.push_back(pr.slot.str());
      continue;
    }
    if (pr.reduction == ReductionType::Multiplicative) rep.odd_multiplicative.push_back(pr);
    if (pr.v_delta > 0) {
      rep.n_e_support.push_back(pr.slot.str());
      // Multiplicative slots drop out of the lowered level exactly when
      // p divides ord(delta).
      bool removed = pr.reduction == ReductionType::Multiplicative && pr.p_divides_v_delta;
      if (!removed) rep.n_p_support.push_back(pr.slot.str());
    }
    if (pr.divides_n) rep.serre_support.push_back(pr.slot.str());
  }
  return rep;
}

bool inertia_divisibility(long ord_j, long p) { return ord_j < 0 && ord_j % p != 0; }

OrdJAudit ordj_audit(const FreyTriple& t, const PrimeSlot& slot) {
  NormalizedEvenValuations nv = normalize_even_valuations(t, slot);
  FreyInvariants inv = invariants(t);
  OrdJAudit audit;
  audit.formula_value = 8 * nv.e2 - 4 * t.p * nv.k - 2 * nv.v_n;
  audit.direct_value = valuation(inv.j, slot);
  audit.mismatch = audit.formula_value != audit.direct_value;
  return audit;
}

NonprimitiveTriple nonprimitive_family(const mpz_class& a, const mpz_class& b,
                                       const mpz_class& n, long p) {
  if (n < 1) fail(Errc::InvalidArgument, "n must be a positive integer");
  check_exponent(p);
  NonprimitiveTriple out;
  out.n = n;
  out.p = p;
  mpz_class quartic = pow_z(a, 4) - pow_z(b, 4);
  if (quartic == 0) {
    out.trivial = true;
    return out;  // zero solution from a degenerate seed
  }
  mpz_class r = pow_z(n, 3) * quartic;
  mpz_class u = n * a, v = n * b;
  if (p % 4 == 1) {
    mpz_class scale = pow_z(r, (p - 1) / 4);
    out.x = u * scale;
    out.y = v * scale;
    out.z = r;
  } else {
    mpz_class scale = pow_z(r, (3 * p - 1) / 4);
    out.x = u * scale;
    out.y = v * scale;
    out.z = pow_z(r, 3);
  }
  out.trivial = out.x * out.y * out.z == 0;
  if (pow_z(out.x, 4) - pow_z(out.y, 4) != n * pow_z(out.z, p))
    fail(Errc::Internal, "family member fails the equation");
  return out;
}

}  // namespace fermat4
