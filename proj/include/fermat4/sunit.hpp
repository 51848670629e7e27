#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fermat4/qfield.hpp"

namespace fermat4 {

/*
 * Generators of the S-unit group of a rational or quadratic field: the
 * torsion subgroup (at least {1, -1}), the fundamental unit when the field
 * is real quadratic, and for each slot in S a generator of the smallest
 * principal power of that prime (the power is the order of its ideal class).
 */
struct SUnitGroup {
  FieldDescriptor field;
  std::vector<PrimeSlot> S;
  std::vector<AlgebraicNumber> torsion;            // powers of the generator, starts at 1
  AlgebraicNumber torsion_generator;
  int torsion_order = 2;
  std::vector<AlgebraicNumber> free_generators;    // unit first (real), then per-slot
  bool has_unit_generator = false;
  std::vector<std::vector<long>> valuation_matrix; // free_generators x S
};

/*
 * A solution of lambda + mu = 1 in S-units. Exponent vectors list the
 * torsion exponent first, then one exponent per free generator;
 * mu_exponents is empty when mu lies outside the generator lattice.
 * m = max(|ord(lambda)|, |ord(mu)|) at a designated slot (set by classify).
 */
struct SUnitSolution {
  AlgebraicNumber lambda, mu;
  std::vector<long> lambda_exponents;
  std::vector<long> mu_exponents;
  std::vector<std::pair<long, long>> valuations;   // (ord lambda, ord mu) per slot of S
  long m = -1;
  bool irrelevant = false;   // (lambda, mu) in {(-1,2), (2,-1), (1/2,1/2)}
  long search_bound = 0;
};

// Solutions whose lambda values share one six-map orbit; the representative
// carries the lexicographically smallest exponent vector of its class.
struct OrbitClass {
  SUnitSolution representative;
  std::vector<AlgebraicNumber> lambda_values;      // orbit of the representative
  std::vector<std::size_t> member_indices;         // into the input sequence
};

/*
 * Residue and normalization filters for one solution. The mod-3 residue
 * check applies only when 3 splits completely and both values are integral
 * (passing means lambda = mu = -1 at every slot above 3). The normalized
 * partner (lambda', mu') with lambda' integral at the unique slot above 2
 * and mu' of valuation 0 there exists only when that slot is unique; the
 * normalization preserves m.
 */
struct FilterReport {
  bool mod3_applicable = false;
  bool mod3_passed = false;
  std::vector<std::pair<long, long>> mod3_residues;  // per slot above 3
  bool partner_applicable = false;
  std::optional<AlgebraicNumber> partner_lambda;
  std::optional<AlgebraicNumber> partner_mu;
  long partner_m = -1;
  bool partner_m_equal = false;
  int unit_norm_sign = 0;                            // sign of norm(mu'), 0 if n/a
};

// Builds the group; class data of the field must be within disc_bound
// (DiscriminantTooLarge otherwise). A bounded norm-form search failing for
// an exponent k is a proof that the k-th power of the slot is non-principal,
// so the chosen power is exactly the class order.
SUnitGroup sunit_group(const FieldDescriptor& field, const std::vector<PrimeSlot>& S,
                       const mpz_class& disc_bound = 1000000);

// All solutions with lambda-exponent vectors in [-bound, bound]^rank
// (torsion exponent unrestricted), deduplicated as ordered pairs and sorted
// by exponent vector. BoxTooLarge when the box exceeds the ceiling.
std::vector<SUnitSolution> solve_sunit(const SUnitGroup& group, long bound,
                                       unsigned long ceiling = 1000000000UL);

// Fills relevance and m at the designated slot.
SUnitSolution classify(const SUnitSolution& sol, const PrimeSlot& designated_slot);

// Exact membership test: norm stripped of S-primes must be a unit, and any
// slot sharing a rational prime with S but missing from S must have
// valuation zero. No factorization of x is attempted.
bool is_s_unit(const AlgebraicNumber& x, const FieldDescriptor& field,
               const std::vector<PrimeSlot>& S);

// Exponent vector of x over the group generators (torsion first), or
// nullopt when x is outside the generator lattice.
std::optional<std::vector<long>> exponents_of(const AlgebraicNumber& x, const SUnitGroup& group);

std::vector<OrbitClass> orbit_reduce(const std::vector<SUnitSolution>& sols);

FilterReport congruence_filters(const SUnitSolution& sol, const FieldDescriptor& field);

}  // namespace fermat4
