#pragma once

#include <map>
#include <vector>

#include "fermat4/numeric.hpp"
#include "fermat4/sunit.hpp"

namespace fermat4 {

// Membership record for the relevant-solution sample over Q(sqrt(d)).
// has_relevant_at_bound is meaningful only relative to `bound`: the schema
// carries the bound so no unconditional membership is ever claimed.
struct MembershipEvidence {
  long d = 0;
  long bound = 0;
  bool has_relevant_at_bound = false;
  std::vector<SUnitSolution> witnesses;  // the relevant solutions found
};

struct DensityReport {
  long cutoff = 0;
  long squarefree_total = 0;
  std::map<long, long> class_counts;          // residue mod 8 -> count (all 8 keys)
  std::map<long, mpq_class> class_fractions;  // count / squarefree_total, reduced
  mpq_class projected_fraction;      // 1 - fraction(class 5): d != 5 mod 8
  mpq_class projected_fraction_neg;  // 1 - fraction(class 3): -d != 5 mod 8
  std::vector<MembershipEvidence> sampled_membership;
};

// Bitmap over [0, cutoff]; entry d is true iff 2 <= d and no prime square
// divides d. Segmented in 2^20-entry blocks.
std::vector<bool> squarefree_sieve(long cutoff, long budget = 100000000);

// Counts and exact per-class fractions of squarefree d in [2, cutoff].
DensityReport residue_fractions(long cutoff, long budget = 100000000);

// For each d: solve the S-unit equation over Q(sqrt(d)) with S = slots above
// 2 and record whether any relevant solution exists within the exponent
// bound, together with the witnesses.
std::vector<MembershipEvidence> membership_sample(const std::vector<long>& ds, long bound,
                                                  unsigned long ceiling = 1000000000UL);

}  // namespace fermat4
