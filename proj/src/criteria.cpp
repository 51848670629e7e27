#include "fermat4/criteria.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "fermat4/legendre.hpp"

namespace fermat4 {

const char* verdict_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Holds: return "holds";
    case VerdictStatus::HoldsAtBound: return "holds-at-bound";
    case VerdictStatus::Fails: return "fails";
    case VerdictStatus::NotApplicable: return "not-applicable";
  }
  return "?";
}

namespace {

bool same_slot_set(const std::vector<PrimeSlot>& a, const std::vector<PrimeSlot>& b) {
  if (a.size() != b.size()) return false;
  for (const PrimeSlot& x : a) {
    bool hit = false;
    for (const PrimeSlot& y : b)
      if (x.same_slot(y)) { hit = true; break; }
    if (!hit) return false;
  }
  return true;
}

// S demanded by the solution-bound statement: slots above 2 plus slots
// above the odd primes dividing n.
std::vector<PrimeSlot> required_s(const FieldDescriptor& field, const mpz_class& n) {
  std::vector<PrimeSlot> out = slots_above(field, 2);
  for (const auto& [q, ord] : factorize(n)) {
    (void)ord;
    if (q == 2) continue;
    for (const PrimeSlot& slot : slots_above(field, q)) out.push_back(slot);
  }
  return out;
}

// Degree-1 fields are trivially both totally ramified and totally split.
bool totally_ramified(const FieldDescriptor& field, long p) {
  if (field.degree() == 1) return true;
  return splitting_type(field, p) == SplittingType::Ramified;
}

bool totally_split(const FieldDescriptor& field, long p) {
  if (field.degree() == 1) return true;
  return splitting_type(field, p) == SplittingType::Split;
}

struct ConditionSink {
  CriterionVerdict* v;
  bool all = true;
  bool add(const std::string& name, bool ok, const std::string& witness = "") {
    v->conditions.push_back({name, ok, witness});
    all = all && ok;
    return ok;
  }
};

void check_exponent_param(long p) {
  if (p < 5) fail(Errc::ExponentTooSmall, "exponent must be a prime >= 5");
  if (!is_prime_z(p)) fail(Errc::InvalidArgument, "exponent must be prime");
}

std::string bound_caveat(long bound) {
  return "solution search is complete only inside the exponent box [-" +
         std::to_string(bound) + ", " + std::to_string(bound) + "]";
}

}  // namespace

CriterionVerdict theorem_a_check(const FieldDescriptor& field, const mpz_class& n,
                                 const PrimeSlot& slot, const SolverEvidence& evidence) {
  if (!slot.field().same_field(field)) fail(Errc::FieldMismatch, "slot outside the field");
  if (slot.rational_prime() != 2)
    fail(Errc::InvalidArgument, "designated slot must lie above 2");
  if (n < 1) fail(Errc::InvalidArgument, "n must be a positive integer");
  if (!same_slot_set(required_s(field, n), evidence.group.S))
    fail(Errc::WrongS, "evidence S must be the slots above 2 and above the odd part of n");

  CriterionVerdict v;
  v.statement_id = "theorem-a";
  v.field_label = field.str();
  v.parameters["n"] = n.get_str();
  v.parameters["slot"] = slot.str();
  v.search_bound = evidence.bound;

  long e2 = ord_of_two(slot);
  v.alpha_exclusions = {4 * e2};
  v.caveats.push_back(bound_caveat(evidence.bound));
  if (e2 > 1)
    v.caveats.push_back(
        "printed exclusion reads alpha != 4*ord(2) = " + std::to_string(4 * e2) +
        ", while the literal valuation hypothesis ord(n) != 4*ord(2) excludes alpha = 4");

  ConditionSink sink{&v};
  long vn = (n == 1) ? 0 : slot.e() * ord_p(n, 2);
  sink.add("ord(n) != 4*ord(2)", vn != 4 * e2,
           "ord(n) = " + std::to_string(vn) + ", 4*ord(2) = " + std::to_string(4 * e2));

  long max_m = 0;
  const SUnitSolution* offender = nullptr;
  for (const SUnitSolution& sol : evidence.solutions) {
    long m = classify(sol, slot).m;
    if (m > max_m) { max_m = m; offender = &sol; }
  }
  bool m_ok = max_m <= 4 * e2;
  std::string wit = m_ok
      ? "max m = " + std::to_string(max_m) + " over " +
            std::to_string(evidence.solutions.size()) + " solutions"
      : "lambda = " + offender->lambda.str() + " has m = " + std::to_string(max_m) +
            " > " + std::to_string(4 * e2);
  sink.add("every solution has m <= 4*ord(2)", m_ok, wit);

  v.status = sink.all ? VerdictStatus::HoldsAtBound : VerdictStatus::Fails;
  return v;
}

TraceRecord contradiction_trace(const SUnitSolution& sol, const PrimeSlot& slot) {
  long vl = valuation(sol.lambda, slot);
  long vm = valuation(sol.mu, slot);
  TraceRecord t;
  t.m = std::max(std::labs(vl), std::labs(vm));
  t.v_lambda_mu = vl + vm;
  if (t.m == 0) t.case_tag = "m0";
  else if (vl < 0) t.case_tag = "both_negative";
  else if (vl > 0) t.case_tag = "lambda_positive";
  else t.case_tag = "mu_positive";
  t.bound = 8 * ord_of_two(slot) - 2 * t.m;
  AlgebraicNumber j = j_from_solution(sol.lambda, sol.mu);
  if (j.is_zero()) {
    t.ord_j = std::numeric_limits<long>::max();  // lambda*mu = 1: j vanishes
    t.bound_holds = true;
  } else {
    t.ord_j = valuation(j, slot);
    t.bound_holds = t.ord_j >= t.bound;
  }
  return t;
}

CriterionVerdict corollary_quadratic(long d, long ell, long alpha,
                                     const std::optional<SolverEvidence>& evidence) {
  FieldDescriptor F = make_field(d);
  CriterionVerdict v;
  v.statement_id = "corollary-quadratic";
  v.field_label = F.str();
  v.parameters["d"] = std::to_string(d);
  v.parameters["ell"] = std::to_string(ell);
  v.parameters["alpha"] = std::to_string(alpha);

  long dm8 = ((d % 8) + 8) % 8;
  long dm4 = ((d % 4) + 4) % 4;
  bool case_i = d > 0 && dm8 == 5;
  bool case_ii = d < 0 && (dm4 == 2 || dm4 == 3);
  ConditionSink sink{&v};
  std::string case_witness = case_i    ? "case (i): d = 5 mod 8, real"
                             : case_ii ? "case (ii): d = 2,3 mod 4, imaginary"
                                       : "d = " + std::to_string(d) + " matches neither case";
  if (!sink.add("congruence case: d = 5 mod 8 (real) or d = 2,3 mod 4 (imaginary)",
                case_i || case_ii, case_witness)) {
    v.status = VerdictStatus::NotApplicable;
    return v;
  }

  long excl = case_i ? 4 : 8;
  v.alpha_exclusions = {excl};
  if (case_ii)
    v.caveats.push_back("imaginary case relies on quoted modularity conjectures");

  if (case_i)
    sink.add("d >= 13", d >= 13, "d = " + std::to_string(d));
  else
    sink.add("|d| >= 7", -d >= 7, "d = " + std::to_string(d));
  sink.add("ell is a prime >= 29", ell >= 29 && is_prime_z(ell), "ell = " + std::to_string(ell));
  sink.add("ell = 5 mod 8", ((ell % 8) + 8) % 8 == 5, "ell = " + std::to_string(ell));
  int kron = kronecker_symbol(d, ell);
  sink.add("kronecker(d, ell) = -1", kron == -1, "kronecker = " + std::to_string(kron));
  sink.add("alpha avoids the exclusion " + std::to_string(excl), alpha != excl,
           "alpha = " + std::to_string(alpha));

  if (evidence) {
    if (!evidence->group.field.same_field(F))
      fail(Errc::WrongS, "evidence group is over a different field");
    std::vector<PrimeSlot> req = slots_above(F, 2);
    for (const PrimeSlot& slot : slots_above(F, ell)) req.push_back(slot);
    if (!same_slot_set(req, evidence->group.S))
      fail(Errc::WrongS, "evidence S must be the slots above 2 and ell");
    v.search_bound = evidence->bound;
    v.caveats.push_back(bound_caveat(evidence->bound));
    sink.add("solver evidence attached", true,
             std::to_string(evidence->solutions.size()) + " solutions at bound " +
                 std::to_string(evidence->bound));
  }

  v.status = !sink.all ? VerdictStatus::Fails
             : evidence ? VerdictStatus::HoldsAtBound
                        : VerdictStatus::Holds;
  return v;
}

CriterionVerdict corollary_ramified(const FieldDescriptor& descriptor, long p, long alpha,
                                    const std::optional<SolverEvidence>& evidence) {
  check_exponent_param(p);
  CriterionVerdict v;
  v.statement_id = "corollary-ramified";
  v.field_label = descriptor.str();
  v.parameters["p"] = std::to_string(p);
  v.parameters["alpha"] = std::to_string(alpha);
  v.parameters["degree"] = std::to_string(descriptor.degree());

  long deg = descriptor.degree();
  ConditionSink sink{&v};
  long g = std::gcd(deg, p - 1);
  if (!sink.add("gcd(degree, p-1) = 1", g == 1, "gcd = " + std::to_string(g))) {
    v.status = VerdictStatus::NotApplicable;
    return v;
  }

  v.alpha_exclusions = {4 * deg};
  v.caveats.push_back("relies on quoted modularity hypotheses for the field");
  sink.add("2 totally ramified", totally_ramified(descriptor, 2), "");
  sink.add("p totally ramified", totally_ramified(descriptor, p), "");
  sink.add("alpha != 4*degree", alpha != 4 * deg, "alpha = " + std::to_string(alpha));

  if (evidence) {
    const FieldDescriptor& EF = evidence->group.field;
    if (EF.degree() != deg) fail(Errc::WrongS, "evidence field degree mismatch");
    std::vector<PrimeSlot> slots2 = slots_above(EF, 2);
    if (slots2.size() != 1 || !same_slot_set(slots2, evidence->group.S))
      fail(Errc::WrongS, "evidence S must be the unique slot above 2");
    const PrimeSlot& P = slots2[0];
    long cap = 2 * ord_of_two(P);
    long max_m = 0;
    const SUnitSolution* offender = nullptr;
    for (const SUnitSolution& sol : evidence->solutions) {
      long m = classify(sol, P).m;
      if (m > max_m) { max_m = m; offender = &sol; }
    }
    bool ok = max_m < cap;
    sink.add("every solution at bound has m < 2*ord(2)", ok,
             ok ? "max m = " + std::to_string(max_m)
                : "lambda = " + offender->lambda.str() + " has m = " + std::to_string(max_m));
    v.search_bound = evidence->bound;
    v.caveats.push_back(bound_caveat(evidence->bound));
  }

  v.status = !sink.all ? VerdictStatus::Fails
             : evidence ? VerdictStatus::HoldsAtBound
                        : VerdictStatus::Holds;
  return v;
}

CriterionVerdict corollary_splits3(const FieldDescriptor& descriptor, long alpha,
                                   const std::optional<SolverEvidence>& evidence) {
  CriterionVerdict v;
  v.statement_id = "corollary-splits3";
  v.field_label = descriptor.str();
  v.parameters["alpha"] = std::to_string(alpha);
  v.parameters["degree"] = std::to_string(descriptor.degree());

  long deg = descriptor.degree();
  ConditionSink sink{&v};
  if (!sink.add("degree is odd", deg % 2 == 1, "degree = " + std::to_string(deg))) {
    v.status = VerdictStatus::NotApplicable;
    return v;
  }

  v.alpha_exclusions = {4 * deg};
  v.caveats.push_back("relies on quoted modularity hypotheses for the field");
  sink.add("2 totally ramified", totally_ramified(descriptor, 2), "");
  sink.add("3 totally split", totally_split(descriptor, 3), "");
  sink.add("alpha != 4*degree", alpha != 4 * deg, "alpha = " + std::to_string(alpha));

  if (evidence) {
    const FieldDescriptor& EF = evidence->group.field;
    if (EF.degree() != deg) fail(Errc::WrongS, "evidence field degree mismatch");
    std::vector<PrimeSlot> slots2 = slots_above(EF, 2);
    if (slots2.size() != 1 || !same_slot_set(slots2, evidence->group.S))
      fail(Errc::WrongS, "evidence S must be the unique slot above 2");
    std::size_t relevant = 0;
    const SUnitSolution* survivor = nullptr;
    for (const SUnitSolution& sol : evidence->solutions) {
      if (classify(sol, slots2[0]).irrelevant) continue;
      ++relevant;
      FilterReport fr = congruence_filters(sol, EF);
      bool dismissed = (fr.partner_applicable && fr.unit_norm_sign == -1) ||
                       (fr.mod3_applicable && !fr.mod3_passed);
      if (!dismissed && !survivor) survivor = &sol;
    }
    bool ok = survivor == nullptr;
    sink.add("residue/norm filters dismiss every relevant solution at bound", ok,
             ok ? std::to_string(relevant) + " relevant solutions, all dismissed"
                : "lambda = " + survivor->lambda.str() + " survives the filters");
    v.search_bound = evidence->bound;
    v.caveats.push_back(bound_caveat(evidence->bound));
  }

  v.status = !sink.all ? VerdictStatus::Fails
             : evidence ? VerdictStatus::HoldsAtBound
                        : VerdictStatus::Holds;
  return v;
}

CriterionVerdict corollary_q24(long q, long alpha,
                               const std::optional<SolverEvidence>& evidence) {
  CriterionVerdict v;
  v.statement_id = "corollary-q24";
  v.field_label = "Q(sqrt(" + std::to_string(q) + "))";
  v.parameters["q"] = std::to_string(q);
  v.parameters["alpha"] = std::to_string(alpha);
  v.alpha_exclusions = {4};
  v.caveats.push_back(
      "the quoted two-slot valuation pattern is checked in absolute value at each slot; "
      "the displayed form leaves the sign reading open");

  ConditionSink sink{&v};
  sink.add("q is prime", q >= 2 && is_prime_z(q), "q = " + std::to_string(q));
  sink.add("q > 73", q > 73, "q = " + std::to_string(q));
  sink.add("q = 1 mod 24", ((q % 24) + 24) % 24 == 1, "q = " + std::to_string(q));
  sink.add("alpha != 4", alpha != 4, "alpha = " + std::to_string(alpha));

  if (evidence) {
    if (q < 2 || !is_prime_z(q)) fail(Errc::WrongS, "evidence attached to a non-prime q");
    FieldDescriptor F = make_field(q);
    if (!evidence->group.field.same_field(F))
      fail(Errc::WrongS, "evidence group is over a different field");
    std::vector<PrimeSlot> slots2 = slots_above(F, 2);
    if (slots2.size() != 2 || !same_slot_set(slots2, evidence->group.S))
      fail(Errc::WrongS, "evidence S must be the two slots above 2");
    bool ok = true;
    std::string wit;
    for (const SUnitSolution& sol : evidence->solutions) {
      for (const PrimeSlot& slot : slots2) {
        long vl = valuation(sol.lambda, slot);
        long vm = valuation(sol.mu, slot);
        if (std::labs(vl) > 1 || std::labs(vm) > 1) {
          ok = false;
          wit = "lambda = " + sol.lambda.str() + " has |ord| > 1 at " + slot.str();
          break;
        }
      }
      if (!ok) break;
    }
    sink.add("|ord(lambda)|, |ord(mu)| <= 1 at both slots above 2", ok,
             ok ? std::to_string(evidence->solutions.size()) + " solutions checked" : wit);
    v.search_bound = evidence->bound;
    v.caveats.push_back(bound_caveat(evidence->bound));
  }

  v.status = !sink.all ? VerdictStatus::Fails
             : evidence ? VerdictStatus::HoldsAtBound
                        : VerdictStatus::Holds;
  return v;
}

CriterionVerdict theorem_b_check(const FieldDescriptor& field, long alpha,
                                 const mpz_class& disc_bound) {
  CriterionVerdict v;
  v.statement_id = "theorem-b";
  v.field_label = field.str();
  v.parameters["alpha"] = std::to_string(alpha);

  ConditionSink sink{&v};
  long e2 = 1;
  int h_plus = 1;
  if (field.kind() == FieldKind::Rational) {
    sink.add("unique slot above 2", true, "degree 1");
    sink.add("narrow class number odd", true, "h+ = 1");
  } else if (field.kind() == FieldKind::Quadratic) {
    v.parameters["d"] = std::to_string(field.d());
    std::vector<PrimeSlot> slots2 = slots_above(field, 2);
    sink.add("unique slot above 2", slots2.size() == 1,
             std::to_string(slots2.size()) + " slots above 2");
    if (slots2.size() == 1) e2 = ord_of_two(slots2[0]);
    ClassData cd = class_data(field, disc_bound);
    h_plus = cd.h_plus;
    sink.add("narrow class number odd", h_plus % 2 == 1, "h+ = " + std::to_string(h_plus));
    long d = field.d();
    if (d > 0 && is_prime_z(d) && ((d % 4) + 4) % 4 == 3 && h_plus % 2 == 0)
      v.caveats.push_back(
          "computed narrow class number is even although the quoted parity claim lists the "
          "congruence class of d = " + std::to_string(d) + " (d = 3 mod 4)");
  } else {
    SplittingType t = splitting_type(field, 2);
    sink.add("unique slot above 2", t != SplittingType::Split,
             std::string("2 is ") + splitting_name(t));
    e2 = t == SplittingType::Ramified ? field.degree() : 1;
    if (!field.narrow_class_odd())
      fail(Errc::MissingTableEntry, "descriptor lacks narrow-class parity");
    bool odd = *field.narrow_class_odd();
    sink.add("narrow class number odd", odd, odd ? "quoted" : "descriptor reports even");
  }

  v.alpha_exclusions = {4 * e2};
  sink.add("alpha != 4*ord(2)", alpha != 4 * e2,
           "alpha = " + std::to_string(alpha) + ", 4*ord(2) = " + std::to_string(4 * e2));

  v.status = sink.all ? VerdictStatus::Holds : VerdictStatus::Fails;
  return v;
}

FieldDescriptor z2_layer_field(int r) {
  if (r < 1) fail(Errc::InvalidArgument, "layer index must be >= 1");
  if (r > 20) fail(Errc::InvalidArgument, "layer index beyond desk scale");
  int deg = 1 << r;
  mpz_class disc = pow_z(2, static_cast<unsigned long>(r + 1) * deg - 1);
  return FieldDescriptor::abstract_field(deg, deg, disc, {{2, SplittingType::Ramified}},
                                         true, r);
}

CriterionVerdict z2_layer_check(int r, long alpha) {
  CriterionVerdict v;
  v.statement_id = "z2-layer";
  v.parameters["r"] = std::to_string(r);
  v.parameters["alpha"] = std::to_string(alpha);
  if (r < 1) {
    v.field_label = "cyclotomic 2-tower layer " + std::to_string(r);
    v.conditions.push_back({"layer index >= 1", false, "r = " + std::to_string(r)});
    v.status = VerdictStatus::NotApplicable;
    return v;
  }
  FieldDescriptor F = z2_layer_field(r);
  v.field_label = F.str();
  long printed = 1L << r;
  long rule = 1L << (r + 2);
  v.alpha_exclusions = {printed, rule};
  v.caveats.push_back("printed exclusion alpha != " + std::to_string(printed) +
                      " disagrees with the general rule alpha != 4*ord(2) = " +
                      std::to_string(rule) + "; both are recorded");

  ConditionSink sink{&v};
  sink.add("2 totally ramified with ord(2) = 2^r", true,
           "degree " + std::to_string(F.degree()));
  sink.add("narrow class number odd (quoted)", true, "");
  sink.add("alpha != 2^r (printed exclusion)", alpha != printed,
           "alpha = " + std::to_string(alpha));
  sink.add("alpha != 2^(r+2) (general rule)", alpha != rule,
           "alpha = " + std::to_string(alpha));
  v.status = sink.all ? VerdictStatus::Holds : VerdictStatus::Fails;
  return v;
}

}  // namespace fermat4
