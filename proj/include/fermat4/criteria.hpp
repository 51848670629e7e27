#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fermat4/qfield.hpp"
#include "fermat4/sunit.hpp"

namespace fermat4 {

enum class VerdictStatus { Holds, HoldsAtBound, Fails, NotApplicable };
const char* verdict_name(VerdictStatus s);

// One checked hypothesis or solution-side condition. A failed condition
// names its witness; passing conditions may carry an informative note.
struct Condition {
  std::string name;
  bool passed = false;
  std::string witness;
};

// Solver output attached to a verdict; the group's S is validated against
// the statement before use (WrongS otherwise).
struct SolverEvidence {
  SUnitGroup group;
  std::vector<SUnitSolution> solutions;
  long bound = 0;
};

/*
 * Outcome of one criterion check. Statuses: "holds" for purely
 * congruence/class-number content, "holds-at-bound" when a solver-backed
 * emptiness or bound claim was verified inside an exponent box, "fails"
 * when a stated condition is violated (witness attached), and
 * "not-applicable" for structural mismatches (wrong degree parity, wrong
 * congruence class, gcd obstruction). alpha_exclusions lists the forbidden
 * exponents alpha for n = 2^alpha, computed as 4*ord(2) at the relevant
 * slot; caveats carry bound-limitation and reference-discrepancy notes.
 */
struct CriterionVerdict {
  std::string statement_id;
  std::string field_label;
  std::map<std::string, std::string> parameters;
  VerdictStatus status = VerdictStatus::NotApplicable;
  std::vector<Condition> conditions;
  long search_bound = 0;   // 0 when no solver evidence was attached
  std::vector<long> alpha_exclusions;
  std::vector<std::string> caveats;
};

// Valuation-case record for one solution at a slot above 2: the case tag
// (m0 | both_negative | lambda_positive | mu_positive), v(lambda*mu), m,
// the lower bound 8*ord(2) - 2m for ord(j), and the exact comparison.
struct TraceRecord {
  std::string case_tag;
  long v_lambda_mu = 0;
  long m = 0;
  long bound = 0;
  long ord_j = 0;
  bool bound_holds = false;
};

// Solution-bound criterion at a designated slot above 2 for x^4 - y^4 = n z^p:
// every solution must have m <= 4*ord(2), and ord_slot(n) != 4*ord_slot(2).
// The evidence group's S must be {slots above 2} + {odd slots dividing n}
// (WrongS otherwise).
CriterionVerdict theorem_a_check(const FieldDescriptor& field, const mpz_class& n,
                                 const PrimeSlot& slot, const SolverEvidence& evidence);

TraceRecord contradiction_trace(const SUnitSolution& sol, const PrimeSlot& slot);

// Quadratic-field criterion for x^4 - y^4 = 2^alpha ell^beta z^p:
// case (i) d >= 13, d = 5 mod 8; case (ii) d <= -7, d = 2,3 mod 4;
// ell >= 29 prime, ell = 5 mod 8, kronecker(d, ell) = -1.
CriterionVerdict corollary_quadratic(long d, long ell, long alpha,
                                     const std::optional<SolverEvidence>& evidence = std::nullopt);

// Degree-n criterion: gcd(degree, p-1) = 1, 2 and p totally ramified,
// alpha != 4*degree; attached evidence replays m < 2*ord(2) per solution.
CriterionVerdict corollary_ramified(const FieldDescriptor& descriptor, long p, long alpha,
                                    const std::optional<SolverEvidence>& evidence = std::nullopt);

// Odd-degree criterion: 2 totally ramified, 3 totally split,
// alpha != 4*degree; attached evidence replays the unit-norm filter on
// normalized relevant solutions.
CriterionVerdict corollary_splits3(const FieldDescriptor& descriptor, long alpha,
                                   const std::optional<SolverEvidence>& evidence = std::nullopt);

// Prime criterion q > 73, q = 1 mod 24 for Q(sqrt(q)); attached evidence
// verifies |ord(lambda)|, |ord(mu)| <= 1 at both slots above 2.
CriterionVerdict corollary_q24(long q, long alpha,
                               const std::optional<SolverEvidence>& evidence = std::nullopt);

// Unique slot above 2, odd narrow class number, alpha != 4*ord(2).
CriterionVerdict theorem_b_check(const FieldDescriptor& field, long alpha,
                                 const mpz_class& disc_bound = 1000000);

// Abstract descriptor of the r-th layer of the cyclotomic 2-tower: totally
// real of degree 2^r, discriminant 2^((r+1)*2^r - 1), 2 totally ramified,
// odd narrow class number (quoted). r >= 1.
FieldDescriptor z2_layer_field(int r);

// Records both printed exclusions for the r-th layer: alpha != 2^r from the
// layer statement and alpha != 4*ord(2) = 2^(r+2) from the general rule,
// flagging their disagreement. r < 1 is not applicable.
CriterionVerdict z2_layer_check(int r, long alpha);

}  // namespace fermat4
