#include "fermat4/density.hpp"

#include <algorithm>

namespace fermat4 {

namespace {
constexpr long kBlock = 1L << 20;
}

std::vector<bool> squarefree_sieve(long cutoff, long budget) {
  if (cutoff < 2) fail(Errc::InvalidArgument, "cutoff must be >= 2");
  if (cutoff > budget) fail(Errc::CutoffTooLarge, "cutoff exceeds the configured budget");
  std::vector<bool> marked(static_cast<std::size_t>(cutoff) + 1, true);
  marked[0] = false;
  marked[1] = false;
  std::vector<long> primes = primes_up_to(isqrt_z(cutoff).get_si());
  for (long lo = 0; lo <= cutoff; lo += kBlock) {
    long hi = std::min(cutoff, lo + kBlock - 1);
    for (long p : primes) {
      long sq = p * p;
      if (sq > hi) break;
      long start = ((lo + sq - 1) / sq) * sq;
      for (long m = start; m <= hi; m += sq) marked[static_cast<std::size_t>(m)] = false;
    }
  }
  return marked;
}

DensityReport residue_fractions(long cutoff, long budget) {
  if (cutoff < 8) fail(Errc::InvalidArgument, "cutoff must be >= 8");
  std::vector<bool> marked = squarefree_sieve(cutoff, budget);
  DensityReport r;
  r.cutoff = cutoff;
  for (long c = 0; c < 8; ++c) r.class_counts[c] = 0;
  for (long d = 2; d <= cutoff; ++d)
    if (marked[static_cast<std::size_t>(d)]) {
      ++r.squarefree_total;
      ++r.class_counts[d % 8];
    }
  for (long c = 0; c < 8; ++c) {
    mpq_class f(r.class_counts[c], r.squarefree_total);
    f.canonicalize();
    r.class_fractions[c] = f;
  }
  r.projected_fraction = 1 - r.class_fractions[5];
  r.projected_fraction_neg = 1 - r.class_fractions[3];
  return r;
}

std::vector<MembershipEvidence> membership_sample(const std::vector<long>& ds, long bound,
                                                  unsigned long ceiling) {
  std::vector<MembershipEvidence> out;
  out.reserve(ds.size());
  for (long d : ds) {
    FieldDescriptor field = make_field(d);
    std::vector<PrimeSlot> S = slots_above(field, 2);
    SUnitGroup group = sunit_group(field, S);
    std::vector<SUnitSolution> sols = solve_sunit(group, bound, ceiling);
    MembershipEvidence ev;
    ev.d = d;
    ev.bound = bound;
    for (const SUnitSolution& sol : sols) {
      SUnitSolution cl = classify(sol, S.front());
      if (!cl.irrelevant) {
        ev.has_relevant_at_bound = true;
        ev.witnesses.push_back(cl);
      }
    }
    out.push_back(std::move(ev));
  }
  return out;
}

}  // namespace fermat4
