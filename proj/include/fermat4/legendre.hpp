#pragma once

#include <vector>

#include "fermat4/frey.hpp"
#include "fermat4/qfield.hpp"

namespace fermat4 {

/*
 * The orbit of lambda under the six fractional-linear maps
 * { l, 1/l, 1-l, 1/(1-l), l/(l-1), (l-1)/l }, duplicates collapsed,
 * together with the common j-invariant. Size is 1, 2, 3 or 6.
 */
struct LambdaOrbit {
  std::vector<AlgebraicNumber> values;   // deterministic (x, y)-lex order
  AlgebraicNumber j;
};

// j = 2^8 (l^2 - l + 1)^3 / (l^2 (1-l)^2); DegenerateLambda on l in {0, 1}.
AlgebraicNumber j_of_lambda(const AlgebraicNumber& lambda);

LambdaOrbit lambda_orbit(const AlgebraicNumber& lambda);

// j = 2^8 (1 - lm)^3 / (lm)^2 for a solution l + m = 1; equals
// j_of_lambda(l) by the identity 1 - l(1-l) = l^2 - l + 1.
// NotASolution when l + m != 1; DegenerateLambda when lm = 0.
AlgebraicNumber j_from_solution(const AlgebraicNumber& lambda, const AlgebraicNumber& mu);

// Legendre lambda of the curve attached to a triple, with the root ordering
// (-A, B, 0): lambda = A / (2C). DegenerateTriple when C = 0.
AlgebraicNumber frey_lambda(const FreyTriple& t);

// True iff ord(j) >= 0 at every slot outside S; candidate slots are read off
// the coordinate denominators, so the check is exact.
bool s_integrality(const AlgebraicNumber& j, const std::vector<PrimeSlot>& S);

}  // namespace fermat4
