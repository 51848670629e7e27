#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fermat4/errors.hpp"

namespace fermat4 {

mpz_class isqrt_z(const mpz_class& n);        // floor(sqrt(n)), n >= 0
bool is_square_z(const mpz_class& n);
bool is_prime_z(const mpz_class& n);          // exact at the sizes used here
mpz_class pow_z(const mpz_class& base, unsigned long e);
mpq_class pow_q(const mpq_class& base, long e);   // base != 0 for e < 0
mpq_class make_q(const mpz_class& num, const mpz_class& den);

long ord_p(const mpz_class& n, const mpz_class& p);     // n != 0, p >= 2
long ord_p_q(const mpq_class& x, const mpz_class& p);   // x != 0

// Prime factorization of |n|, |n| >= 1. Trial division plus Brent rho.
std::map<mpz_class, int> factorize(const mpz_class& n);

std::vector<long> primes_up_to(long n);

std::string q_to_string(const mpq_class& x);      // canonical "p" or "p/q", q > 1
mpq_class q_from_string(const std::string& s);

uint64_t fnv1a64(const std::string& data);

}  // namespace fermat4
