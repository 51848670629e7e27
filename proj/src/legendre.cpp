#include "fermat4/legendre.hpp"

#include <algorithm>

namespace fermat4 {

namespace {

AlgebraicNumber one_of(const AlgebraicNumber& x) {
  return AlgebraicNumber::constant(x.field(), 1);
}

void check_nondegenerate(const AlgebraicNumber& lambda) {
  if (lambda.is_zero() || lambda == one_of(lambda))
    fail(Errc::DegenerateLambda, "lambda must avoid 0 and 1");
}

bool coord_less(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.x() != b.x()) return a.x() < b.x();
  return a.y() < b.y();
}

}  // namespace

AlgebraicNumber j_of_lambda(const AlgebraicNumber& lambda) {
  check_nondegenerate(lambda);
  AlgebraicNumber one = one_of(lambda);
  AlgebraicNumber c256 = AlgebraicNumber::constant(lambda.field(), 256);
  AlgebraicNumber num = (lambda * lambda - lambda + one).pow(3);
  AlgebraicNumber den = (lambda * (one - lambda)).pow(2);
  return c256 * num / den;
}

LambdaOrbit lambda_orbit(const AlgebraicNumber& lambda) {
  check_nondegenerate(lambda);
  AlgebraicNumber one = one_of(lambda);
  std::vector<AlgebraicNumber> vals = {
      lambda,
      one / lambda,
      one - lambda,
      one / (one - lambda),
      lambda / (lambda - one),
      (lambda - one) / lambda,
  };
  std::sort(vals.begin(), vals.end(), coord_less);
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  LambdaOrbit orbit;
  orbit.values = std::move(vals);
  orbit.j = j_of_lambda(lambda);
  return orbit;
}

AlgebraicNumber j_from_solution(const AlgebraicNumber& lambda, const AlgebraicNumber& mu) {
  if (lambda + mu != one_of(lambda)) fail(Errc::NotASolution, "lambda + mu != 1");
  AlgebraicNumber lm = lambda * mu;
  if (lm.is_zero()) fail(Errc::DegenerateLambda, "lambda*mu = 0");
  AlgebraicNumber one = one_of(lambda);
  AlgebraicNumber c256 = AlgebraicNumber::constant(lambda.field(), 256);
  return c256 * (one - lm).pow(3) / lm.pow(2);
}

AlgebraicNumber frey_lambda(const FreyTriple& t) {
  if (t.C.is_zero()) fail(Errc::DegenerateTriple, "a^2 + b^2 = 0");
  AlgebraicNumber two = AlgebraicNumber::constant(t.field, 2);
  return t.A / (two * t.C);
}

bool s_integrality(const AlgebraicNumber& j, const std::vector<PrimeSlot>& S) {
  mpz_class den = lcm(j.x().get_den(), j.y().get_den());
  if (den == 1) return true;
  for (const auto& [q, ord] : factorize(den)) {
    (void)ord;
    for (const PrimeSlot& slot : slots_above(j.field(), q)) {
      bool in_s = false;
      for (const PrimeSlot& s : S)
        if (s.same_slot(slot)) { in_s = true; break; }
      if (!in_s && valuation(j, slot) < 0) return false;
    }
  }
  return true;
}

}  // namespace fermat4
