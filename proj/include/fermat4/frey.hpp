#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fermat4/qfield.hpp"

namespace fermat4 {

/*
 * A validated solution triple (a, b, c) of a^4 - b^4 = n*c^p together with
 * the attached curve data A = (a+b)^2, B = (a-b)^2, C = a^2 + b^2 (so that
 * A + B - 2C = 0). "trivial" means abc = 0; "primitive" means the ideal
 * generated by a, b, c is the unit ideal.
 */
struct FreyTriple {
  FieldDescriptor field;
  AlgebraicNumber a, b, c;
  mpz_class n = 1;
  long p = 5;
  AlgebraicNumber A, B, C;
  bool trivial = false;
  bool primitive = false;
  bool b_squared_swapped = false;
};

// Exact invariants of the model y^2 = x^3 + 4ab x^2 - (a^2-b^2)^2 x, plus the
// alternative displayed closed forms for c4 and c6 kept for auditing. The
// displayed c6 form is known to disagree with the model-derived value in
// general; the flags record the comparison for this triple.
struct FreyInvariants {
  AlgebraicNumber b2, b4, b6, b8;
  AlgebraicNumber c4, c6, delta, j;
  AlgebraicNumber c6_reference;   // -2^7 (2^5 a^2 b^2 + 3 (a^2-b^2)^2), as displayed
  AlgebraicNumber c4_alt;         // 2^4 (AB - 2AC - 2BC), opposite-sign display
  bool c6_reference_mismatch = false;
  bool c4_alt_sign_mismatch = false;
  bool check_delta_product = false;    // delta == 2^6 n^2 c^{2p} (a^2-b^2)^2 == 2^6 (ABC)^2
  bool check_c4_closed_form = false;   // c4 == 2^4 (a^2+3b^2)(3a^2+b^2)
  bool check_weierstrass = false;      // c4^3 - c6^2 == 1728*delta and j*delta == c4^3
};

// Valuations of a^2+b^2 and a^2-b^2 at a slot above 2 dividing c, after the
// sign normalization that forces the sum-role term to carry exactly ord(2).
struct NormalizedEvenValuations {
  bool swapped = false;   // roles of a^2+b^2 and a^2-b^2 interchanged
  long v_small = 0;       // valuation of the sum-role term, equals e2
  long v_large = 0;       // valuation of the other term: p*k + v_n - e2
  long k = 0;             // ord_slot(c)
  long v_n = 0;           // ord_slot(n)
  long e2 = 0;            // ord_slot(2)
};

enum class ReductionType { Good, Multiplicative, Additive, EvenBoundOnly };
const char* reduction_name(ReductionType t);

// Per-slot valuation report. Odd slots get a reduction type and the
// p-divisibility of ord(delta); slots above 2 only get raw valuations and
// the conductor exponent ceiling 2 + 6*ord(2).
struct SlotProfile {
  PrimeSlot slot;
  long v_delta = 0;
  long v_c4 = 0;
  ReductionType reduction = ReductionType::Good;
  bool p_divides_v_delta = false;
  bool divides_c = false;
  bool divides_n = false;
  long even_bound = 0;
};

// Ideal supports assembled from slot profiles: the conductor-like support,
// the lowered-level support with p-divisible multiplicative slots removed,
// and the mod-p ramification support (slots above 2 plus odd slots in n).
struct ConductorReport {
  std::vector<SlotProfile> support_even;
  std::vector<SlotProfile> odd_multiplicative;
  std::vector<std::string> n_e_support;
  std::vector<std::string> n_p_support;
  std::vector<std::string> serre_support;
};

struct OrdJAudit {
  long formula_value = 0;   // 8*ord(2) - 4pk - 2*ord(n), the displayed shortcut
  long direct_value = 0;    // exact ord_slot(j)
  bool mismatch = false;
};

// One member of the non-primitive solution family seeded by (a, b, n):
// x^4 - y^4 = n z^p exactly; trivial means xyz = 0 (in particular whenever
// the seed has a^4 = b^4, which collapses the member to (0, 0, 0)).
struct NonprimitiveTriple {
  mpz_class x, y, z;
  mpz_class n;
  long p = 5;
  bool trivial = false;
};

// Checks the equation exactly and sets the flags; a, b, c live in `field`.
// Requires n >= 1, p prime >= 5, and slot-valuation of n below p everywhere.
FreyTriple validate_triple(const AlgebraicNumber& a, const AlgebraicNumber& b,
                           const AlgebraicNumber& c, const mpz_class& n, long p,
                           const FieldDescriptor& field);

// Standard formulary on the expanded model; SingularCurve when delta = 0.
FreyInvariants invariants(const FreyTriple& t);

// Requires slot | c, p > 2*ord_slot(2), and t primitive.
NormalizedEvenValuations normalize_even_valuations(const FreyTriple& t, const PrimeSlot& slot);

SlotProfile valuation_profile(const FreyTriple& t, const FreyInvariants& inv,
                              const PrimeSlot& slot);

// Profiles must cover every slot dividing 2*n*c (IncompleteProfiles otherwise).
ConductorReport conductor_support(const FreyTriple& t, const std::vector<SlotProfile>& profiles);

// True iff ord_j < 0 and p does not divide ord_j.
bool inertia_divisibility(long ord_j, long p);

// Compares the displayed even-slot ord(j) shortcut against the exact value.
OrdJAudit ordj_audit(const FreyTriple& t, const PrimeSlot& slot);

NonprimitiveTriple nonprimitive_family(const mpz_class& a, const mpz_class& b,
                                       const mpz_class& n, long p);

// All slots of the field above the rational primes dividing 2*n*N(c).
std::vector<PrimeSlot> support_slots(const FreyTriple& t);

}  // namespace fermat4
