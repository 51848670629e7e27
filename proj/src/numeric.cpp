#include "fermat4/numeric.hpp"

#include <cstdlib>

namespace fermat4 {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NotSquarefree: return "NotSquarefree";
    case Errc::InvalidD: return "InvalidD";
    case Errc::MissingTableEntry: return "MissingTableEntry";
    case Errc::ZeroElement: return "ZeroElement";
    case Errc::NotRealQuadratic: return "NotRealQuadratic";
    case Errc::DiscriminantTooLarge: return "DiscriminantTooLarge";
    case Errc::BoxTooLarge: return "BoxTooLarge";
    case Errc::EquationFails: return "EquationFails";
    case Errc::ExponentTooSmall: return "ExponentTooSmall";
    case Errc::NOrdTooLarge: return "NOrdTooLarge";
    case Errc::SingularCurve: return "SingularCurve";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::DegenerateLambda: return "DegenerateLambda";
    case Errc::NotASolution: return "NotASolution";
    case Errc::DegenerateTriple: return "DegenerateTriple";
    case Errc::WrongS: return "WrongS";
    case Errc::IncompleteProfiles: return "IncompleteProfiles";
    case Errc::CutoffTooLarge: return "CutoffTooLarge";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

bool errc_is_input_error(Errc c) {
  switch (c) {
    case Errc::BoxTooLarge:
    case Errc::DiscriminantTooLarge:
    case Errc::CutoffTooLarge:
    case Errc::IncompleteProfiles:
    case Errc::FieldMismatch:
    case Errc::Internal:
      return false;
    default:
      return true;
  }
}

mpz_class isqrt_z(const mpz_class& n) {
  if (n < 0) fail(Errc::InvalidArgument, "isqrt of negative value");
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square_z(const mpz_class& n) {
  if (n < 0) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_prime_z(const mpz_class& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

mpz_class pow_z(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

mpq_class pow_q(const mpq_class& base, long e) {
  if (e == 0) return mpq_class(1);
  if (base == 0 && e < 0) fail(Errc::ZeroElement, "negative power of zero");
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  mpq_class r;
  mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), a);
  mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), a);
  if (e < 0) {
    mpq_inv(r.get_mpq_t(), r.get_mpq_t());
  }
  return r;
}

mpq_class make_q(const mpz_class& num, const mpz_class& den) {
  if (den == 0) fail(Errc::InvalidArgument, "zero denominator");
  mpq_class q(num);
  q /= mpq_class(den);
  return q;
}

long ord_p(const mpz_class& n, const mpz_class& p) {
  if (n == 0) fail(Errc::ZeroElement, "valuation of zero");
  if (p < 2) fail(Errc::InvalidArgument, "ord_p needs p >= 2");
  mpz_class rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long ord_p_q(const mpq_class& x, const mpz_class& p) {
  if (x == 0) fail(Errc::ZeroElement, "valuation of zero");
  mpz_class num(x.get_num()), den(x.get_den());
  return ord_p(num, p) - ord_p(den, p);
}

namespace {

mpz_class rho_f(const mpz_class& x, const mpz_class& c, const mpz_class& n) {
  return (x * x + c) % n;
}

// Brent-cycle Pollard rho; n odd composite, not a prime power obstacle at desk scale.
mpz_class pollard_rho(const mpz_class& n) {
  if (n % 2 == 0) return 2;
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0xf3a7u);
  while (true) {
    mpz_class y = rng.get_z_range(n - 2) + 1;
    mpz_class c = rng.get_z_range(n - 2) + 1;
    mpz_class m = 128, g = 1, r = 1, q = 1, x, ys;
    while (g == 1) {
      x = y;
      for (mpz_class i = 0; i < r; ++i) y = rho_f(y, c, n);
      mpz_class k = 0;
      while (k < r && g == 1) {
        ys = y;
        mpz_class lim = std::min(m, mpz_class(r - k));
        for (mpz_class i = 0; i < lim; ++i) {
          y = rho_f(y, c, n);
          q = q * abs(x - y) % n;
        }
        mpz_class t;
        mpz_gcd(t.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        g = t;
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = rho_f(ys, c, n);
        mpz_class t = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (g != n) return g;
  }
}

void factor_into(const mpz_class& n, std::map<mpz_class, int>& out) {
  if (n == 1) return;
  if (is_prime_z(n)) {
    out[n] += 1;
    return;
  }
  mpz_class d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::map<mpz_class, int> factorize(const mpz_class& n) {
  mpz_class m = abs(n);
  if (m == 0) fail(Errc::ZeroElement, "factorize(0)");
  std::map<mpz_class, int> out;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
    while (m % p == 0) {
      out[p] += 1;
      m /= p;
    }
  }
  mpz_class p = 17;
  while (p * p <= m && p < 100000) {
    while (m % p == 0) {
      out[p] += 1;
      m /= p;
    }
    p += 2;
  }
  factor_into(m, out);
  return out;
}

std::vector<long> primes_up_to(long n) {
  std::vector<long> out;
  if (n < 2) return out;
  std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
  for (long i = 2; i <= n; ++i) {
    if (comp[static_cast<size_t>(i)]) continue;
    out.push_back(i);
    for (long j = i * 2; j <= n; j += i) comp[static_cast<size_t>(j)] = true;
  }
  return out;
}

std::string q_to_string(const mpq_class& x) {
  return x.get_str();
}

mpq_class q_from_string(const std::string& s) {
  mpq_class q;
  if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    fail(Errc::InvalidArgument, "bad rational literal: " + s);
  mpq_canonicalize(q.get_mpq_t());
  return q;
}

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace fermat4
