#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "fermat4/frey.hpp"
#include "fermat4/legendre.hpp"

using namespace fermat4;

namespace {

template <typename F>
std::optional<Errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// Independent formulary: the generic Weierstrass quantities of
// y^2 = x^3 + a2 x^2 + a4 x computed from scratch.
struct OracleInv {
  mpq_class b2, b4, b6, b8, c4, c6, delta, j;
};

OracleInv oracle(const mpq_class& a2, const mpq_class& a4) {
  OracleInv o;
  o.b2 = 4 * a2;
  o.b4 = 2 * a4;
  o.b6 = 0;
  o.b8 = mpq_class(-a4 * a4);
  o.c4 = o.b2 * o.b2 - 24 * o.b4;
  o.c6 = -o.b2 * o.b2 * o.b2 + 36 * o.b2 * o.b4 - 216 * o.b6;
  o.delta = -o.b2 * o.b2 * o.b8 - 8 * o.b4 * o.b4 * o.b4 - 27 * o.b6 * o.b6 +
            9 * o.b2 * o.b4 * o.b6;
  o.j = o.c4 * o.c4 * o.c4 / o.delta;
  return o;
}

FreyTriple q_triple(long a, long b, long c, const mpz_class& n, long p) {
  FieldDescriptor Q = FieldDescriptor::rationals();
  return validate_triple(AlgebraicNumber::rational(a), AlgebraicNumber::rational(b),
                         AlgebraicNumber::rational(c), n, p, Q);
}

void check_against_oracle(const FreyTriple& t, const FreyInvariants& inv) {
  mpq_class a = t.a.x(), b = t.b.x();
  OracleInv o = oracle(4 * a * b, mpq_class(-(a * a - b * b) * (a * a - b * b)));
  CHECK(inv.b2.x() == o.b2);
  CHECK(inv.b4.x() == o.b4);
  CHECK(inv.b6.x() == o.b6);
  CHECK(inv.b8.x() == o.b8);
  CHECK(inv.c4.x() == o.c4);
  CHECK(inv.c6.x() == o.c6);
  CHECK(inv.delta.x() == o.delta);
  CHECK(inv.j.x() == o.j);
}

const PrimeSlot& slot_of(const std::vector<PrimeSlot>& slots, long p) {
  for (const PrimeSlot& s : slots)
    if (s.rational_prime() == p) return s;
  REQUIRE(false);
  return slots.front();
}

}  // namespace

TEST_CASE("frozen invariant vectors") {
  FreyTriple t1 = q_triple(1, 0, 1, 1, 5);
  FreyInvariants i1 = invariants(t1);
  CHECK(t1.trivial);
  CHECK(t1.primitive);
  CHECK(i1.delta.x() == 64);
  CHECK(i1.c4.x() == 48);
  CHECK(i1.c6.x() == 0);
  CHECK(i1.j.x() == 1728);
  CHECK(i1.c6_reference.x() == -384);
  CHECK(i1.c6_reference_mismatch);
  CHECK(i1.c4_alt.x() == -48);
  CHECK(i1.c4_alt_sign_mismatch);
  CHECK(frey_lambda(t1).x() == mpq_class(1, 2));
  check_against_oracle(t1, i1);

  FreyTriple t2 = q_triple(2, 1, 1, 15, 5);
  FreyInvariants i2 = invariants(t2);
  CHECK(!t2.trivial);
  CHECK(i2.delta.x() == 129600);
  CHECK(i2.c4.x() == 1456);
  CHECK(i2.c6.x() == -53504);
  CHECK(i2.j.x() == mpq_class(48228544, 2025));
  CHECK(i2.c4.x() * i2.c4.x() * i2.c4.x() - i2.c6.x() * i2.c6.x() == 223948800);
  CHECK(frey_lambda(t2).x() == mpq_class(9, 10));
  check_against_oracle(t2, i2);

  FreyTriple t3 = q_triple(5, 3, 2, 17, 5);
  FreyInvariants i3 = invariants(t3);
  CHECK(i3.delta.x() == mpz_class("4848615424"));
  CHECK(i3.c4.x() == 69888);
  CHECK(i3.c6.x() == -18247680);
  CHECK(i3.j.x() == mpq_class(20346417, 289));
  CHECK(frey_lambda(t3).x() == mpq_class(16, 17));
  check_against_oracle(t3, i3);

  for (const FreyInvariants* i : {&i1, &i2, &i3}) {
    CHECK(i->check_delta_product);
    CHECK(i->check_c4_closed_form);
    CHECK(i->check_weierstrass);
  }
}

TEST_CASE("validation rejects malformed triples") {
  CHECK(thrown_code([] { q_triple(5, 3, 1, 544, 5); }) == Errc::NOrdTooLarge);
  CHECK(thrown_code([] { q_triple(3, 1, 1, 7, 5); }) == Errc::EquationFails);
  CHECK(thrown_code([] { q_triple(2, 2, 1, 0, 5); }) == Errc::InvalidArgument);  // n = 0
  CHECK(thrown_code([] { q_triple(5, 3, 2, 17, 4); }) == Errc::ExponentTooSmall);
  CHECK(thrown_code([] { q_triple(5, 3, 2, 17, 3); }) == Errc::ExponentTooSmall);
  CHECK(thrown_code([] { q_triple(5, 3, 2, 17, 9); }) == Errc::InvalidArgument);

  FieldDescriptor Q = FieldDescriptor::rationals();
  FieldDescriptor F2 = make_field(2);
  CHECK(thrown_code([&] {
          validate_triple(AlgebraicNumber::constant(F2, 5), AlgebraicNumber::rational(3),
                          AlgebraicNumber::rational(2), 17, 5, Q);
        }) == Errc::FieldMismatch);
  CHECK(thrown_code([&] {
          validate_triple(AlgebraicNumber::rational(mpq_class(1, 2)), AlgebraicNumber::rational(0),
                          AlgebraicNumber::rational(1), 1, 5, Q);
        }) == Errc::InvalidArgument);  // non-integral coordinate

  // trivial flags and primitivity
  FreyTriple z = q_triple(0, 1, -1, 1, 5);
  CHECK(z.trivial);
  CHECK(z.primitive);
  FreyTriple shared = q_triple(2, 2, 0, 5, 5);
  CHECK(shared.trivial);
  CHECK(!shared.primitive);
  CHECK(thrown_code([&] { invariants(shared); }) == Errc::SingularCurve);
}

TEST_CASE("sampled triples satisfy every identity") {
  std::mt19937 rng(4242);
  int done = 0;
  while (done < 500) {
    long a = static_cast<long>(rng() % 101) - 50;
    long b = static_cast<long>(rng() % 101) - 50;
    if (a == 0 || b == 0 || a == b || a == -b) continue;
    if (std::gcd(std::labs(a), std::labs(b)) != 1) continue;
    mpz_class n = abs(pow_z(a, 4) - pow_z(b, 4));
    long p = 5;
    bool ok = true;
    for (const auto& [q, e] : factorize(n)) {
      (void)q;
      while (e >= p) p = p == 5 ? 7 : p + 4;  // 5, 7, 11, ... keep ord below p
      if (e >= p) ok = false;
    }
    long c = (pow_z(a, 4) - pow_z(b, 4)) > 0 ? 1 : -1;
    if (c < 0) continue;  // keep n = a^4 - b^4 positive
    if (!ok) continue;
    FreyTriple t = q_triple(a, b, 1, n, p);
    FreyInvariants inv = invariants(t);
    CHECK(inv.check_delta_product);
    CHECK(inv.check_c4_closed_form);
    CHECK(inv.check_weierstrass);
    CHECK(inv.c4_alt.x() == -inv.c4.x());
    check_against_oracle(t, inv);
    ++done;
  }
}

TEST_CASE("even-slot normalization") {
  FieldDescriptor Q = FieldDescriptor::rationals();
  PrimeSlot two = slots_above(Q, 2)[0];

  FreyTriple t = q_triple(5, 3, 2, 17, 5);
  NormalizedEvenValuations nv = normalize_even_valuations(t, two);
  CHECK(!nv.swapped);
  CHECK(nv.e2 == 1);
  CHECK(nv.k == 1);
  CHECK(nv.v_n == 0);
  CHECK(nv.v_small == 1);                      // ord(a^2+b^2) = ord(34)
  CHECK(nv.v_large == 5 * nv.k + nv.v_n - 1);  // ord(a^2-b^2) = ord(16)

  // slot must divide c
  FreyTriple t2 = q_triple(2, 1, 1, 15, 5);
  CHECK(thrown_code([&] { normalize_even_valuations(t2, two); }) == Errc::PreconditionFailed);
  // non-primitive triples are rejected
  FreyTriple shared = q_triple(2, 2, 0, 5, 5);
  CHECK(thrown_code([&] { normalize_even_valuations(shared, two); }) == Errc::PreconditionFailed);
  // odd slot is rejected
  PrimeSlot three = slots_above(Q, 3)[0];
  CHECK(thrown_code([&] { normalize_even_valuations(t, three); }) == Errc::PreconditionFailed);
}

TEST_CASE("slot profiles and reduction types") {
  FreyTriple t = q_triple(5, 3, 2, 17, 5);
  FreyInvariants inv = invariants(t);
  std::vector<PrimeSlot> slots = support_slots(t);
  REQUIRE(slots.size() == 2);  // 2 and 17

  SlotProfile at2 = valuation_profile(t, inv, slot_of(slots, 2));
  CHECK(at2.reduction == ReductionType::EvenBoundOnly);
  CHECK(at2.even_bound == 8);  // 2 + 6*ord(2)
  CHECK(at2.divides_c);
  SlotProfile at17 = valuation_profile(t, inv, slot_of(slots, 17));
  CHECK(at17.v_delta == 2);
  CHECK(at17.reduction == ReductionType::Multiplicative);
  CHECK(!at17.p_divides_v_delta);
  CHECK(at17.divides_n);

  FreyTriple t2 = q_triple(2, 1, 1, 15, 5);
  FreyInvariants inv2 = invariants(t2);
  std::vector<PrimeSlot> slots2 = support_slots(t2);
  SlotProfile at3 = valuation_profile(t2, inv2, slot_of(slots2, 3));
  CHECK(at3.v_delta == 4);
  CHECK(at3.reduction == ReductionType::Multiplicative);
  CHECK(!at3.p_divides_v_delta);
  SlotProfile at5 = valuation_profile(t2, inv2, slot_of(slots2, 5));
  CHECK(at5.v_delta == 2);
  CHECK(at5.reduction == ReductionType::Multiplicative);

  // a slot outside the support has good reduction
  FieldDescriptor Q = FieldDescriptor::rationals();
  SlotProfile at7 = valuation_profile(t2, inv2, slots_above(Q, 7)[0]);
  CHECK(at7.v_delta == 0);
  CHECK(at7.reduction == ReductionType::Good);

  // additive reduction appears only on non-primitive triples
  NonprimitiveTriple f = nonprimitive_family(1, 2, 3, 5);
  FreyTriple tf = q_triple(f.x.get_si(), f.y.get_si(), f.z.get_si(), f.n, f.p);
  CHECK(!tf.primitive);
  FreyInvariants invf = invariants(tf);
  SlotProfile f3 = valuation_profile(tf, invf, slots_above(Q, 3)[0]);
  CHECK(f3.v_delta > 0);
  CHECK(f3.v_c4 > 0);
  CHECK(f3.reduction == ReductionType::Additive);
}

TEST_CASE("conductor supports") {
  FreyTriple t = q_triple(5, 3, 2, 17, 5);
  FreyInvariants inv = invariants(t);
  std::vector<SlotProfile> profiles;
  for (const PrimeSlot& s : support_slots(t)) profiles.push_back(valuation_profile(t, inv, s));
  ConductorReport cr = conductor_support(t, profiles);
  REQUIRE(cr.support_even.size() == 1);
  CHECK(cr.n_e_support == std::vector<std::string>{"(2)", "(17)"});
  CHECK(cr.n_p_support == std::vector<std::string>{"(2)", "(17)"});
  CHECK(cr.serre_support == std::vector<std::string>{"(2)", "(17)"});

  // ord_3(delta) = 20 is divisible by p = 5: the slot leaves the lowered level
  FreyTriple rem = q_triple(244, 1, 3, mpz_class("14586565"), 5);
  FreyInvariants rinv = invariants(rem);
  std::vector<SlotProfile> rprof;
  for (const PrimeSlot& s : support_slots(rem)) rprof.push_back(valuation_profile(rem, rinv, s));
  ConductorReport rcr = conductor_support(rem, rprof);
  auto contains = [](const std::vector<std::string>& v, const std::string& x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  SlotProfile r3 = rprof[1];
  CHECK(r3.v_delta == 20);
  CHECK(r3.p_divides_v_delta);
  CHECK(contains(rcr.n_e_support, "(3)"));
  CHECK(!contains(rcr.n_p_support, "(3)"));
  CHECK(!contains(rcr.serre_support, "(3)"));  // 3 does not divide n

  CHECK(thrown_code([&] { conductor_support(t, {}); }) == Errc::IncompleteProfiles);
}

TEST_CASE("ord(j) audit against the displayed shortcut") {
  FieldDescriptor Q = FieldDescriptor::rationals();
  PrimeSlot two = slots_above(Q, 2)[0];

  OrdJAudit a1 = ordj_audit(q_triple(5, 3, 2, 17, 5), two);
  CHECK(a1.formula_value == -12);
  CHECK(a1.direct_value == 0);
  CHECK(a1.mismatch);

  OrdJAudit a2 = ordj_audit(q_triple(7, 1, 2, 75, 5), two);
  CHECK(a2.formula_value == -12);
  CHECK(a2.direct_value == 0);
  CHECK(a2.mismatch);

  CHECK(inertia_divisibility(-3, 5));
  CHECK(!inertia_divisibility(-10, 5));
  CHECK(!inertia_divisibility(4, 5));

  // over Q(sqrt(2)) the slot above 2 is ramified: same story with e = 2
  FieldDescriptor F2 = make_field(2);
  FreyTriple tq = validate_triple(AlgebraicNumber::constant(F2, 5), AlgebraicNumber::constant(F2, 3),
                                  AlgebraicNumber::constant(F2, 2), 17, 5, F2);
  PrimeSlot rtwo = slots_above(F2, 2)[0];
  OrdJAudit a3 = ordj_audit(tq, rtwo);
  CHECK(a3.formula_value == 8 * 2 - 4 * 5 * 2 - 0);
  CHECK(a3.direct_value == 0);
  CHECK(a3.mismatch);
}

TEST_CASE("non-primitive family members solve the equation") {
  NonprimitiveTriple e1 = nonprimitive_family(1, 0, 2, 5);
  CHECK(e1.x == 16);
  CHECK(e1.y == 0);
  CHECK(e1.z == 8);
  NonprimitiveTriple e2 = nonprimitive_family(1, 0, 2, 7);
  CHECK(e2.x == 2 * pow_z(8, 5));
  CHECK(e2.y == 0);
  CHECK(e2.z == pow_z(8, 3));
  NonprimitiveTriple e3 = nonprimitive_family(1, 2, 3, 5);
  CHECK(e3.x == -1215);
  CHECK(e3.y == -2430);
  CHECK(e3.z == -405);

  NonprimitiveTriple zz = nonprimitive_family(1, 1, 4, 5);
  CHECK(zz.trivial);
  CHECK(zz.x == 0);
  CHECK(zz.z == 0);

  std::mt19937 rng(17);
  int made = 0;
  while (made < 50) {
    long a = static_cast<long>(rng() % 9) - 4;
    long b = static_cast<long>(rng() % 9) - 4;
    long n = static_cast<long>(rng() % 4) + 1;
    long p = std::vector<long>{5, 7, 11, 13}[rng() % 4];
    NonprimitiveTriple f = nonprimitive_family(a, b, n, p);
    CHECK(pow_z(f.x, 4) - pow_z(f.y, 4) == f.n * pow_z(f.z, static_cast<unsigned long>(f.p)));
    CHECK(f.n == n);
    CHECK(f.p == p);
    CHECK(f.trivial == (f.x * f.y * f.z == 0));
    ++made;
  }
  CHECK(thrown_code([] { nonprimitive_family(1, 2, 0, 5); }) == Errc::InvalidArgument);
  CHECK(thrown_code([] { nonprimitive_family(1, 2, 3, 9); }) == Errc::InvalidArgument);
  CHECK(thrown_code([] { nonprimitive_family(1, 2, 3, 3); }) == Errc::ExponentTooSmall);
}
