#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <optional>
#include <vector>

#include "fermat4/density.hpp"
#include "fermat4/qfield.hpp"

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

bool squarefree_trial(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      n /= p;
      if (n % p == 0) return false;
    }
  return true;
}

double to_double(const mpq_class& q) { return q.get_d(); }

}  // namespace

TEST_CASE("sieve matches trial division") {
  std::vector<bool> sf = squarefree_sieve(10000);
  REQUIRE(sf.size() == 10001);
  for (long n = 0; n <= 10000; ++n) CHECK(sf[static_cast<size_t>(n)] == squarefree_trial(n));
}

TEST_CASE("counts at small cutoffs") {
  // [2, 30] holds exactly 18 squarefree integers; the commonly displayed 19
  // double-counts and fails a direct recount
  std::vector<bool> sf = squarefree_sieve(30);
  long count30 = 0;
  for (long n = 2; n <= 30; ++n)
    if (sf[static_cast<size_t>(n)]) ++count30;
  CHECK(count30 == 18);

  std::vector<bool> sf100 = squarefree_sieve(100);
  long count100 = 0;
  for (long n = 2; n <= 100; ++n)
    if (sf100[static_cast<size_t>(n)]) ++count100;
  CHECK(count100 == 60);

  std::vector<bool> sf2 = squarefree_sieve(2);
  REQUIRE(sf2.size() == 3);
  CHECK(!sf2[0]);
  CHECK(!sf2[1]);
  CHECK(sf2[2]);
}

TEST_CASE("residue classes are equidistributed at one million") {
  DensityReport r = residue_fractions(1000000);
  CHECK(r.cutoff == 1000000);
  CHECK(r.squarefree_total > 0);

  // all 8 residue keys present; classes 0 and 4 are empty (4 | d there)
  REQUIRE(r.class_counts.size() == 8);
  REQUIRE(r.class_fractions.size() == 8);
  CHECK(r.class_counts.at(0) == 0);
  CHECK(r.class_counts.at(4) == 0);

  long sum = 0;
  for (const auto& [c, n] : r.class_counts) {
    (void)c;
    sum += n;
  }
  CHECK(sum == r.squarefree_total);

  for (long c : {1L, 2L, 3L, 5L, 6L, 7L}) {
    CHECK(r.class_counts.at(c) > 0);
    // exact fraction invariant: fraction * total == count
    CHECK(r.class_fractions.at(c) * r.squarefree_total == r.class_counts.at(c));
    CHECK(std::abs(to_double(r.class_fractions.at(c)) - 1.0 / 6.0) < 0.002);
  }

  CHECK(r.projected_fraction == 1 - r.class_fractions.at(5));
  CHECK(r.projected_fraction_neg == 1 - r.class_fractions.at(3));
  CHECK(std::abs(to_double(r.projected_fraction) - 5.0 / 6.0) < 0.002);
  CHECK(std::abs(to_double(r.projected_fraction_neg) - 5.0 / 6.0) < 0.002);
}

TEST_CASE("equidistribution is already visible at smaller cutoffs") {
  for (long cutoff : {10000L, 100000L}) {
    DensityReport r = residue_fractions(cutoff);
    for (long c : {1L, 2L, 3L, 5L, 6L, 7L})
      CHECK(std::abs(to_double(r.class_fractions.at(c)) - 1.0 / 6.0) < 0.02);
    CHECK(std::abs(to_double(r.projected_fraction) - 5.0 / 6.0) < 0.02);
  }
}

TEST_CASE("membership sampling finds the known witnesses") {
  std::vector<MembershipEvidence> ms = membership_sample({5, 2, -5}, 3);
  REQUIRE(ms.size() == 3);

  CHECK(ms[0].d == 5);
  CHECK(ms[0].bound == 3);
  CHECK(ms[0].has_relevant_at_bound);
  CHECK(!ms[0].witnesses.empty());
  // (eps^2, -eps) = ((3+sqrt(5))/2, (-1-sqrt(5))/2) is among the witnesses
  FieldDescriptor F5 = make_field(5);
  AlgebraicNumber eps = fundamental_unit(F5);
  bool found = false;
  for (const SUnitSolution& w : ms[0].witnesses) {
    CHECK(!w.irrelevant);
    if ((w.lambda - eps * eps).is_zero()) found = true;
  }
  CHECK(found);

  CHECK(ms[1].d == 2);
  CHECK(ms[1].has_relevant_at_bound);
  // (1+sqrt(2))^2 = 3+2sqrt(2) with mu = -2-2sqrt(2)... check a unit witness exists
  CHECK(!ms[1].witnesses.empty());

  // over Q(sqrt(-5)) the slot above 2 is non-principal: every S-unit is
  // rational, so only the three irrelevant solutions show up
  CHECK(ms[2].d == -5);
  CHECK(!ms[2].has_relevant_at_bound);
  CHECK(ms[2].witnesses.empty());
}

TEST_CASE("input validation and budgets") {
  CHECK(thrown_code([] { squarefree_sieve(1); }) == Errc::InvalidArgument);
  CHECK(thrown_code([] { squarefree_sieve(200, 100); }) == Errc::CutoffTooLarge);
  CHECK(thrown_code([] { residue_fractions(7); }) == Errc::InvalidArgument);
  CHECK(thrown_code([] { residue_fractions(2000000, 1000000); }) == Errc::CutoffTooLarge);
  CHECK(thrown_code([] { membership_sample({12}, 2); }) == Errc::NotSquarefree);
}

TEST_CASE("sampling and counting are deterministic") {
  DensityReport a = residue_fractions(50000);
  DensityReport b = residue_fractions(50000);
  CHECK(a.squarefree_total == b.squarefree_total);
  CHECK(a.class_counts == b.class_counts);
  CHECK(a.projected_fraction == b.projected_fraction);

  std::vector<MembershipEvidence> m1 = membership_sample({5, -5}, 2);
  std::vector<MembershipEvidence> m2 = membership_sample({5, -5}, 2);
  REQUIRE(m1.size() == m2.size());
  for (size_t i = 0; i < m1.size(); ++i) {
    CHECK(m1[i].has_relevant_at_bound == m2[i].has_relevant_at_bound);
    REQUIRE(m1[i].witnesses.size() == m2[i].witnesses.size());
    for (size_t k = 0; k < m1[i].witnesses.size(); ++k)
      CHECK((m1[i].witnesses[k].lambda - m2[i].witnesses[k].lambda).is_zero());
  }
}
