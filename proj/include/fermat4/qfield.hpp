#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fermat4/numeric.hpp"

namespace fermat4 {

enum class FieldKind { Rational, Quadratic, Abstract };
enum class SplittingType { Split, Inert, Ramified };

const char* kind_name(FieldKind k);
const char* splitting_name(SplittingType t);

/*
 * A field descriptor is one of:
 *   - the rationals,
 *   - Q(sqrt(d)) for squarefree d not in {0,1}, with integral basis {1, w},
 *     w = sqrt(d) for d = 2,3 mod 4 and w = (1+sqrt(d))/2 for d = 1 mod 4,
 *   - an abstract degree-n descriptor carrying only a splitting table
 *     (entries are read as "totally split" / "inert" / "totally ramified").
 * Element arithmetic is available for the first two kinds only.
 */
class FieldDescriptor {
public:
  FieldDescriptor();  // rationals

  static FieldDescriptor rationals();
  static FieldDescriptor abstract_field(int degree, int signature, const mpz_class& discriminant,
                                        std::map<long, SplittingType> splitting,
                                        std::optional<bool> narrow_class_odd = std::nullopt,
                                        std::optional<int> z2_layer = std::nullopt);

  FieldKind kind() const { return kind_; }
  long d() const;                       // quadratic only
  int degree() const { return degree_; }
  const mpz_class& discriminant() const { return discriminant_; }
  int signature() const { return signature_; }   // number of real embeddings
  bool is_real() const { return signature_ > 0; }
  bool half_basis() const;              // w = (1+sqrt(d))/2
  const std::map<long, SplittingType>& splitting_table() const { return table_; }
  std::optional<bool> narrow_class_odd() const { return narrow_class_odd_; }
  std::optional<int> z2_layer() const { return z2_layer_; }

  bool same_field(const FieldDescriptor& o) const;
  std::string str() const;

private:
  friend FieldDescriptor make_field(long d);
  FieldKind kind_;
  long d_ = 0;
  int degree_ = 1;
  mpz_class discriminant_ = 1;
  int signature_ = 1;
  std::map<long, SplittingType> table_;
  std::optional<bool> narrow_class_odd_;
  std::optional<int> z2_layer_;
};

// Kronecker symbol (a|m), m != 0.
int kronecker_symbol(const mpz_class& a, const mpz_class& m);

// Q(sqrt(d)); d must be squarefree and not 0 or 1.
FieldDescriptor make_field(long d);

// Splitting of the rational prime p. Degree-1 fields report Split
// (e = f = 1 with the full residue field, i.e. totally split).
SplittingType splitting_type(const FieldDescriptor& field, const mpz_class& p);

/* Element x + y*w of a rational or quadratic field, exact coordinates. */
class AlgebraicNumber {
public:
  AlgebraicNumber();  // 0 over Q
  AlgebraicNumber(const FieldDescriptor& field, const mpq_class& x, const mpq_class& y = 0);

  static AlgebraicNumber rational(const mpq_class& v);
  static AlgebraicNumber constant(const FieldDescriptor& field, const mpq_class& v);
  static AlgebraicNumber omega(const FieldDescriptor& field);    // the basis generator w
  static AlgebraicNumber sqrt_d(const FieldDescriptor& field);   // sqrt(d) as an element

  const FieldDescriptor& field() const { return field_; }
  const mpq_class& x() const { return x_; }
  const mpq_class& y() const { return y_; }

  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_rational_value() const { return y_ == 0; }
  bool is_integral() const;             // lies in the ring of integers
  bool is_unit() const;                 // integral with norm +-1

  AlgebraicNumber conjugate() const;
  mpq_class norm() const;
  mpq_class trace() const;
  AlgebraicNumber inverse() const;      // ZeroElement on 0

  // Sign under the embedding sending sqrt(d) to the positive real root
  // (rational and real quadratic fields only).
  int sign_real() const;

  AlgebraicNumber pow(long e) const;

  std::string str() const;              // e.g. "2", "-1/2", "(1+sqrt(5))/2"

  friend AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b);
  AlgebraicNumber operator-() const;
  bool operator==(const AlgebraicNumber& o) const;
  bool operator!=(const AlgebraicNumber& o) const { return !(*this == o); }

private:
  FieldDescriptor field_;
  mpq_class x_, y_;
};

/*
 * A prime of the ring of integers above a rational prime p, with a
 * two-element representation (p, w - r) where applicable. Valuations are
 * computed by repeated exact ideal division, so split primes are exact.
 */
class PrimeSlot {
public:
  const FieldDescriptor& field() const { return field_; }
  const mpz_class& rational_prime() const { return p_; }
  SplittingType splitting() const { return type_; }
  int index() const { return index_; }          // 1-based among slots above p
  int e() const { return e_; }                  // ramification index
  int f() const { return f_; }                  // residue degree
  const std::vector<AlgebraicNumber>& generators() const { return gens_; }
  const mpz_class& omega_root() const;          // residue of w mod p (f == 1 only)

  // Image in F_p for f == 1 slots; x must be p-integral.
  mpz_class residue(const AlgebraicNumber& x) const;

  bool same_slot(const PrimeSlot& o) const;
  std::string str() const;

private:
  friend std::vector<PrimeSlot> slots_above(const FieldDescriptor&, const mpz_class&);
  friend long valuation(const AlgebraicNumber&, const PrimeSlot&);
  FieldDescriptor field_;
  mpz_class p_;
  SplittingType type_ = SplittingType::Split;
  int index_ = 1;
  int e_ = 1, f_ = 1;
  mpz_class root_ = 0;        // root of min poly of w mod p (f == 1)
  mpz_class coroot_ = 0;      // the other root (split only)
  std::vector<AlgebraicNumber> gens_;
};

// All primes above p, deterministically ordered (split slots by root).
std::vector<PrimeSlot> slots_above(const FieldDescriptor& field, const mpz_class& p);

// Exact valuation ord_slot(x) for x != 0 (fractional values allowed).
long valuation(const AlgebraicNumber& x, const PrimeSlot& slot);

// ord_slot(2); equals e for slots above 2 and 0 elsewhere.
long ord_of_two(const PrimeSlot& slot);

// Fundamental unit > 1 of a real quadratic field, by the continued fraction
// of the basis generator.
AlgebraicNumber fundamental_unit(const FieldDescriptor& field);

struct ClassData {
  FieldDescriptor field;
  int h = 1;                                    // class number
  int h_plus = 1;                               // narrow class number
  int unit_norm = 1;                            // N(fundamental unit), real only
  std::optional<AlgebraicNumber> unit;          // real only
};

// Class data via reduced binary quadratic forms of the field discriminant.
ClassData class_data(const FieldDescriptor& field, const mpz_class& disc_bound = 1000000);

}  // namespace fermat4
