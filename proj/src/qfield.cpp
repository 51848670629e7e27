#include "fermat4/qfield.hpp"

#include <algorithm>
#include <sstream>

namespace fermat4 {

const char* kind_name(FieldKind k) {
  switch (k) {
    case FieldKind::Rational: return "rational";
    case FieldKind::Quadratic: return "quadratic";
    case FieldKind::Abstract: return "abstract";
  }
  return "?";
}

const char* splitting_name(SplittingType t) {
  switch (t) {
    case SplittingType::Split: return "split";
    case SplittingType::Inert: return "inert";
    case SplittingType::Ramified: return "ramified";
  }
  return "?";
}

namespace {

long mod4(long d) { return ((d % 4) + 4) % 4; }

}  // namespace

FieldDescriptor::FieldDescriptor() : kind_(FieldKind::Rational) {}

FieldDescriptor FieldDescriptor::rationals() { return FieldDescriptor(); }

FieldDescriptor FieldDescriptor::abstract_field(int degree, int signature,
                                                const mpz_class& discriminant,
                                                std::map<long, SplittingType> splitting,
                                                std::optional<bool> narrow_class_odd,
                                                std::optional<int> z2_layer) {
  if (degree < 1) fail(Errc::InvalidArgument, "abstract field degree must be >= 1");
  if (signature < 0 || signature > degree)
    fail(Errc::InvalidArgument, "signature out of range");
  FieldDescriptor f;
  f.kind_ = FieldKind::Abstract;
  f.degree_ = degree;
  f.signature_ = signature;
  f.discriminant_ = discriminant;
  f.table_ = std::move(splitting);
  f.narrow_class_odd_ = narrow_class_odd;
  f.z2_layer_ = z2_layer;
  return f;
}

long FieldDescriptor::d() const {
  if (kind_ != FieldKind::Quadratic) fail(Errc::InvalidArgument, "d() on non-quadratic field");
  return d_;
}

bool FieldDescriptor::half_basis() const {
  return kind_ == FieldKind::Quadratic && mod4(d_) == 1;
}

bool FieldDescriptor::same_field(const FieldDescriptor& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case FieldKind::Rational: return true;
    case FieldKind::Quadratic: return d_ == o.d_;
    case FieldKind::Abstract:
      return degree_ == o.degree_ && discriminant_ == o.discriminant_ && table_ == o.table_;
  }
  return false;
}

std::string FieldDescriptor::str() const {
  switch (kind_) {
    case FieldKind::Rational: return "Q";
    case FieldKind::Quadratic: return "Q(sqrt(" + std::to_string(d_) + "))";
    case FieldKind::Abstract: return "degree-" + std::to_string(degree_) + " descriptor";
  }
  return "?";
}

int kronecker_symbol(const mpz_class& a, const mpz_class& m) {
  if (m == 0) fail(Errc::InvalidArgument, "kronecker_symbol with m = 0");
  return mpz_kronecker(a.get_mpz_t(), m.get_mpz_t());
}

FieldDescriptor make_field(long d) {
  if (d == 0 || d == 1) fail(Errc::InvalidD, "d must not be 0 or 1");
  for (auto& [p, e] : factorize(mpz_class(d)))
    if (e > 1) fail(Errc::NotSquarefree, "d = " + std::to_string(d));
  FieldDescriptor f;
  f.kind_ = FieldKind::Quadratic;
  f.d_ = d;
  f.degree_ = 2;
  f.signature_ = d > 0 ? 2 : 0;
  f.discriminant_ = (mod4(d) == 1) ? mpz_class(d) : mpz_class(4 * d);
  return f;
}

SplittingType splitting_type(const FieldDescriptor& field, const mpz_class& p) {
  if (!is_prime_z(p)) fail(Errc::InvalidArgument, "splitting_type needs a prime");
  switch (field.kind()) {
    case FieldKind::Rational:
      return SplittingType::Split;
    case FieldKind::Abstract: {
      if (!p.fits_slong_p())
        fail(Errc::MissingTableEntry, "no splitting entry for p = " + p.get_str());
      auto it = field.splitting_table().find(p.get_si());
      if (it == field.splitting_table().end())
        fail(Errc::MissingTableEntry, "no splitting entry for p = " + p.get_str());
      return it->second;
    }
    case FieldKind::Quadratic: {
      if (field.discriminant() % p == 0) return SplittingType::Ramified;
      int k = kronecker_symbol(field.discriminant(), p);
      return k == 1 ? SplittingType::Split : SplittingType::Inert;
    }
  }
  fail(Errc::Internal, "unreachable");
}

/* ---------------- AlgebraicNumber ---------------- */

namespace {

void check_arith_field(const FieldDescriptor& f) {
  if (f.kind() == FieldKind::Abstract)
    fail(Errc::InvalidArgument, "no element arithmetic on abstract descriptors");
}

void check_same(const FieldDescriptor& a, const FieldDescriptor& b) {
  if (!a.same_field(b)) fail(Errc::FieldMismatch, "operands from different fields");
}

// sign of u + v*sqrt(d) for rational u, v with v != 0 and d > 1 squarefree
// (so the value is irrational, never zero).
int sign_u_v_sqrt(const mpq_class& u, const mpq_class& v, long d) {
  if (u == 0) return sgn(v);
  if (sgn(u) == sgn(v)) return sgn(u);
  mpq_class lhs = u * u, rhs = v * v * mpq_class(d);
  return lhs > rhs ? sgn(u) : sgn(v);
}

}  // namespace

AlgebraicNumber::AlgebraicNumber() : field_(FieldDescriptor::rationals()), x_(0), y_(0) {}

AlgebraicNumber::AlgebraicNumber(const FieldDescriptor& field, const mpq_class& x,
                                 const mpq_class& y)
    : field_(field), x_(x), y_(y) {
  check_arith_field(field_);
  // callers may hand in non-canonical fractions such as mpq_class(4, 2);
  // exact comparisons downstream assume canonical form
  x_.canonicalize();
  y_.canonicalize();
  if (field_.kind() == FieldKind::Rational && y_ != 0)
    fail(Errc::InvalidArgument, "rational element with nonzero second coordinate");
}

AlgebraicNumber AlgebraicNumber::rational(const mpq_class& v) {
  return AlgebraicNumber(FieldDescriptor::rationals(), v, 0);
}

AlgebraicNumber AlgebraicNumber::constant(const FieldDescriptor& field, const mpq_class& v) {
  return AlgebraicNumber(field, v, 0);
}

AlgebraicNumber AlgebraicNumber::omega(const FieldDescriptor& field) {
  if (field.kind() != FieldKind::Quadratic)
    fail(Errc::InvalidArgument, "omega() needs a quadratic field");
  return AlgebraicNumber(field, 0, 1);
}

AlgebraicNumber AlgebraicNumber::sqrt_d(const FieldDescriptor& field) {
  if (field.kind() != FieldKind::Quadratic)
    fail(Errc::InvalidArgument, "sqrt_d() needs a quadratic field");
  if (field.half_basis()) return AlgebraicNumber(field, -1, 2);  // 2w - 1
  return AlgebraicNumber(field, 0, 1);
}

bool AlgebraicNumber::is_integral() const {
  return x_.get_den() == 1 && y_.get_den() == 1;
}

bool AlgebraicNumber::is_unit() const {
  if (!is_integral()) return false;
  mpq_class n = norm();
  return n == 1 || n == -1;
}

AlgebraicNumber AlgebraicNumber::conjugate() const {
  if (field_.kind() == FieldKind::Rational) return *this;
  if (field_.half_basis()) return AlgebraicNumber(field_, x_ + y_, -y_);  // w -> 1 - w
  return AlgebraicNumber(field_, x_, -y_);
}

mpq_class AlgebraicNumber::trace() const {
  if (field_.kind() == FieldKind::Rational) return x_;
  return field_.half_basis() ? mpq_class(2 * x_ + y_) : mpq_class(2 * x_);
}

mpq_class AlgebraicNumber::norm() const {
  if (field_.kind() == FieldKind::Rational) return x_;
  mpq_class d(field_.d());
  if (field_.half_basis()) {
    // N(x + y w) = x^2 + x y + y^2 (1 - d)/4
    return x_ * x_ + x_ * y_ + y_ * y_ * (1 - d) / 4;
  }
  return x_ * x_ - d * y_ * y_;
}

AlgebraicNumber AlgebraicNumber::inverse() const {
  if (is_zero()) fail(Errc::ZeroElement, "inverse of zero");
  if (field_.kind() == FieldKind::Rational)
    return AlgebraicNumber(field_, 1 / x_, 0);
  AlgebraicNumber c = conjugate();
  mpq_class n = norm();
  return AlgebraicNumber(field_, c.x_ / n, c.y_ / n);
}

int AlgebraicNumber::sign_real() const {
  if (is_zero()) return 0;
  if (field_.kind() == FieldKind::Rational || y_ == 0) return sgn(x_);
  if (!field_.is_real()) fail(Errc::NotRealQuadratic, "sign_real on an imaginary field");
  // value = u + v sqrt(d) with u,v rational
  mpq_class u = x_, v = y_;
  if (field_.half_basis()) {
    u += y_ / 2;
    v = y_ / 2;
  }
  if (v == 0) return sgn(u);
  return sign_u_v_sqrt(u, v, field_.d());
}

AlgebraicNumber AlgebraicNumber::pow(long e) const {
  if (e == 0) return AlgebraicNumber::constant(field_, 1);
  if (is_zero() && e < 0) fail(Errc::ZeroElement, "negative power of zero");
  AlgebraicNumber base = e < 0 ? inverse() : *this;
  unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
  AlgebraicNumber acc = AlgebraicNumber::constant(field_, 1);
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

std::string AlgebraicNumber::str() const {
  if (y_ == 0) return q_to_string(x_);
  // write as (U + V sqrt(d))/W with integers U, V, W > 0
  mpq_class u = x_, v = y_;
  if (field_.half_basis()) {
    u += y_ / 2;
    v = y_ / 2;
  }
  mpz_class w;
  mpz_lcm(w.get_mpz_t(), u.get_den().get_mpz_t(), v.get_den().get_mpz_t());
  mpz_class U(u.get_num() * (w / u.get_den()));
  mpz_class V(v.get_num() * (w / v.get_den()));
  std::ostringstream os;
  if (w != 1) os << "(";
  bool have_u = U != 0;
  if (have_u) os << U.get_str();
  if (V == 1)
    os << (have_u ? "+" : "") << "sqrt(" << field_.d() << ")";
  else if (V == -1)
    os << "-sqrt(" << field_.d() << ")";
  else if (V > 0)
    os << (have_u ? "+" : "") << V.get_str() << "*sqrt(" << field_.d() << ")";
  else
    os << V.get_str() << "*sqrt(" << field_.d() << ")";
  if (w != 1) os << ")/" << w.get_str();
  return os.str();
}

AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  check_same(a.field_, b.field_);
  return AlgebraicNumber(a.field_, a.x_ + b.x_, a.y_ + b.y_);
}

AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  check_same(a.field_, b.field_);
  return AlgebraicNumber(a.field_, a.x_ - b.x_, a.y_ - b.y_);
}

AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  check_same(a.field_, b.field_);
  if (a.field_.kind() == FieldKind::Rational)
    return AlgebraicNumber(a.field_, a.x_ * b.x_, 0);
  mpq_class d(a.field_.d());
  mpq_class cross = a.x_ * b.y_ + a.y_ * b.x_;
  mpq_class yy = a.y_ * b.y_;
  if (a.field_.half_basis()) {
    // w^2 = w + (d-1)/4
    return AlgebraicNumber(a.field_, a.x_ * b.x_ + yy * (d - 1) / 4, cross + yy);
  }
  return AlgebraicNumber(a.field_, a.x_ * b.x_ + yy * d, cross);
}

AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  return a * b.inverse();
}

AlgebraicNumber AlgebraicNumber::operator-() const {
  return AlgebraicNumber(field_, -x_, -y_);
}

bool AlgebraicNumber::operator==(const AlgebraicNumber& o) const {
  check_same(field_, o.field_);
  return x_ == o.x_ && y_ == o.y_;
}

/* ---------------- prime slots and valuations ---------------- */

const mpz_class& PrimeSlot::omega_root() const {
  if (f_ != 1) fail(Errc::InvalidArgument, "no residue root on an inert slot");
  return root_;
}

mpz_class PrimeSlot::residue(const AlgebraicNumber& x) const {
  if (f_ != 1) fail(Errc::InvalidArgument, "residue map needs f = 1");
  if (!x.field().same_field(field_)) fail(Errc::FieldMismatch, "residue of foreign element");
  mpz_class den(x.x().get_den() * x.y().get_den());
  if (den % p_ == 0) fail(Errc::PreconditionFailed, "element not p-integral");
  // multiply by den^-1 mod p
  mpz_class num = x.x().get_num() * x.y().get_den() + x.y().get_num() * x.x().get_den() * root_;
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p_.get_mpz_t()) == 0)
    fail(Errc::Internal, "denominator not invertible mod p");
  mpz_class r = num * inv % p_;
  if (r < 0) r += p_;
  return r;
}

bool PrimeSlot::same_slot(const PrimeSlot& o) const {
  return field_.same_field(o.field_) && p_ == o.p_ && index_ == o.index_;
}

std::string PrimeSlot::str() const {
  std::ostringstream os;
  os << "(" << p_.get_str();
  if (field_.kind() == FieldKind::Quadratic && f_ == 1) os << ",w-" << root_.get_str();
  os << ")";
  if (type_ == SplittingType::Split && field_.kind() != FieldKind::Rational)
    os << "#" << index_;
  return os.str();
}

namespace {

mpz_class powm(const mpz_class& b, const mpz_class& e, const mpz_class& m) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Tonelli-Shanks: square root of a mod an odd prime p; a must be a residue.
mpz_class sqrt_mod_p(const mpz_class& a_in, const mpz_class& p) {
  mpz_class a = a_in % p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  if (p % 4 == 3) return powm(a, (p + 1) / 4, p);
  mpz_class q = p - 1;
  unsigned long s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  mpz_class m(s), c = powm(z, q, p), t = powm(a, q, p), r = powm(a, (q + 1) / 2, p);
  while (t != 1) {
    mpz_class t2 = t * t % p;
    mpz_class i = 1;
    while (t2 != 1) {
      t2 = t2 * t2 % p;
      ++i;
      if (i >= m) fail(Errc::Internal, "non-residue passed to sqrt_mod_p");
    }
    mpz_class b = c;
    for (mpz_class j = 0; j < m - i - 1; ++j) b = b * b % p;
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

// Roots of the minimal polynomial of w mod p, ascending. Precondition: the
// polynomial has a root (p not inert).
std::vector<mpz_class> omega_roots_mod_p(const FieldDescriptor& field, const mpz_class& p) {
  long d = field.d();
  std::vector<mpz_class> roots;
  if (p == 2) {
    // check r = 0, 1 directly against x^2 - x - (d-1)/4 or x^2 - d
    for (int r = 0; r < 2; ++r) {
      mpz_class v = field.half_basis() ? mpz_class(mpz_class(r) * r - r - (mpz_class(d) - 1) / 4)
                                       : mpz_class(mpz_class(r) * r - d);
      if (v % 2 == 0) roots.emplace_back(r);
    }
  } else {
    mpz_class s = sqrt_mod_p(mpz_class(d), p);
    if (field.half_basis()) {
      // roots of x^2 - x - (d-1)/4 are (1 +- sqrt(d))/2 mod p
      mpz_class inv2;
      mpz_class two = 2;
      mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());
      roots.push_back((1 + s) * inv2 % p);
      roots.push_back(((1 - s) % p + p) * inv2 % p);
    } else {
      roots.push_back(s);
      roots.push_back((p - s) % p);
    }
    if (roots[0] == roots[1]) roots.pop_back();
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

std::vector<PrimeSlot> slots_above(const FieldDescriptor& field, const mpz_class& p) {
  if (!is_prime_z(p)) fail(Errc::InvalidArgument, "slots_above needs a prime");
  if (field.kind() == FieldKind::Abstract)
    fail(Errc::InvalidArgument, "slots_above needs element arithmetic");
  std::vector<PrimeSlot> out;
  if (field.kind() == FieldKind::Rational) {
    PrimeSlot s;
    s.field_ = field;
    s.p_ = p;
    s.type_ = SplittingType::Split;
    s.e_ = s.f_ = 1;
    s.index_ = 1;
    s.root_ = 0;
    s.gens_ = {AlgebraicNumber::rational(mpq_class(p))};
    out.push_back(std::move(s));
    return out;
  }
  SplittingType t = splitting_type(field, p);
  AlgebraicNumber w = AlgebraicNumber::omega(field);
  AlgebraicNumber pc = AlgebraicNumber::constant(field, mpq_class(p));
  if (t == SplittingType::Inert) {
    PrimeSlot s;
    s.field_ = field;
    s.p_ = p;
    s.type_ = t;
    s.e_ = 1;
    s.f_ = 2;
    s.index_ = 1;
    s.gens_ = {pc};
    out.push_back(std::move(s));
    return out;
  }
  std::vector<mpz_class> roots = omega_roots_mod_p(field, p);
  if (t == SplittingType::Ramified) {
    if (roots.size() != 1) fail(Errc::Internal, "ramified prime without a double root");
    PrimeSlot s;
    s.field_ = field;
    s.p_ = p;
    s.type_ = t;
    s.e_ = 2;
    s.f_ = 1;
    s.index_ = 1;
    s.root_ = roots[0];
    s.gens_ = {pc, w - AlgebraicNumber::constant(field, mpq_class(roots[0]))};
    out.push_back(std::move(s));
    return out;
  }
  if (roots.size() != 2) fail(Errc::Internal, "split prime without two roots");
  for (int i = 0; i < 2; ++i) {
    PrimeSlot s;
    s.field_ = field;
    s.p_ = p;
    s.type_ = t;
    s.e_ = 1;
    s.f_ = 1;
    s.index_ = i + 1;
    s.root_ = roots[static_cast<size_t>(i)];
    s.coroot_ = roots[static_cast<size_t>(1 - i)];
    s.gens_ = {pc, w - AlgebraicNumber::constant(field, mpq_class(roots[static_cast<size_t>(i)]))};
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

// One ideal-division step on integral coordinates (bx, by): multiply by the
// helper element and divide by p. Preconditions checked by the caller.
void divide_step(const FieldDescriptor& field, const PrimeSlot& slot, const mpz_class& r_mult,
                 mpz_class& bx, mpz_class& by) {
  long d = field.d();
  mpz_class nx, ny;
  // (bx + by w)(w - r) with w^2 reduced per basis
  if (field.half_basis()) {
    mpz_class t((mpz_class(d) - 1) / 4);
    nx = -r_mult * bx + by * t;
    ny = bx + by - r_mult * by;
  } else {
    nx = -r_mult * bx + by * d;
    ny = bx - r_mult * by;
  }
  const mpz_class& p = slot.rational_prime();
  if (nx % p != 0 || ny % p != 0) fail(Errc::Internal, "inexact ideal division");
  bx = nx / p;
  by = ny / p;
}

}  // namespace

long valuation(const AlgebraicNumber& x, const PrimeSlot& slot) {
  if (x.is_zero()) fail(Errc::ZeroElement, "valuation of zero");
  if (!x.field().same_field(slot.field())) fail(Errc::FieldMismatch, "valuation of foreign element");
  const mpz_class& p = slot.p_;
  if (x.field().kind() == FieldKind::Rational) return ord_p_q(x.x(), p);

  mpz_class den;
  mpz_lcm(den.get_mpz_t(), x.x().get_den().get_mpz_t(), x.y().get_den().get_mpz_t());
  mpz_class bx(x.x().get_num() * (den / x.x().get_den()));
  mpz_class by(x.y().get_num() * (den / x.y().get_den()));
  long v = -static_cast<long>(slot.e_) * ord_p(den, p);

  if (slot.type_ == SplittingType::Inert) {
    while (bx % p == 0 && by % p == 0) {
      bx /= p;
      by /= p;
      ++v;
      if (bx == 0 && by == 0) fail(Errc::Internal, "zero during division");
    }
    return v;
  }
  // f == 1: membership via the residue map w -> root
  const mpz_class r_mult = slot.type_ == SplittingType::Split ? slot.coroot_ : slot.root_;
  while ((bx + by * slot.root_) % p == 0) {
    divide_step(x.field(), slot, r_mult, bx, by);
    ++v;
    if (bx == 0 && by == 0) fail(Errc::Internal, "zero during division");
  }
  return v;
}

long ord_of_two(const PrimeSlot& slot) {
  return slot.rational_prime() == 2 ? slot.e() : 0;
}

/* ---------------- units ---------------- */

AlgebraicNumber fundamental_unit(const FieldDescriptor& field) {
  if (field.kind() != FieldKind::Quadratic || !field.is_real())
    fail(Errc::NotRealQuadratic, "fundamental_unit needs a real quadratic field");
  long d = field.d();
  bool half = field.half_basis();
  mpz_class N(d);
  mpz_class P = half ? 1 : 0;
  mpz_class Q = half ? 2 : 1;
  mpz_class s = isqrt_z(N);
  mpq_class tr = half ? 1 : 0;                               // trace of w
  mpq_class nm = half ? make_q(1 - d, 4) : mpq_class(-d);    // norm of w

  mpz_class a = (P + s) / Q;
  mpz_class p_prev = 1, p_cur = a, q_prev = 0, q_cur = 1;
  auto unit_norm = [&](const mpz_class& p, const mpz_class& q) -> mpq_class {
    mpq_class pp(p), qq(q);
    return pp * pp - pp * qq * tr + qq * qq * nm;
  };
  for (long iter = 0; iter < 10000000; ++iter) {
    mpq_class n = unit_norm(p_cur, q_cur);
    if (n == 1 || n == -1) {
      // unit = p - q * conj(w) = (p - q tr(w)) + q w
      mpq_class x = mpq_class(p_cur) - mpq_class(q_cur) * tr;
      return AlgebraicNumber(field, x, mpq_class(q_cur));
    }
    P = a * Q - P;
    Q = (N - P * P) / Q;
    if (Q == 0) fail(Errc::Internal, "square discriminant in continued fraction");
    a = (P + s) / Q;
    mpz_class pn = a * p_cur + p_prev, qn = a * q_cur + q_prev;
    p_prev = p_cur;
    p_cur = pn;
    q_prev = q_cur;
    q_cur = qn;
  }
  fail(Errc::Internal, "continued fraction did not terminate");
}

/* ---------------- class data ---------------- */

namespace {

struct Form {
  mpz_class a, b, c;
  bool operator<(const Form& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
  }
  bool operator==(const Form& o) const { return a == o.a && b == o.b && c == o.c; }
};

mpz_class gcd3(const mpz_class& a, const mpz_class& b, const mpz_class& c) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

// Primitive reduced positive forms of discriminant D < 0.
int count_reduced_definite(const mpz_class& D) {
  int h = 0;
  mpz_class abound = isqrt_z((-D) / 3);
  for (mpz_class a = 1; a <= abound; ++a) {
    for (mpz_class b = -a; b <= a; ++b) {
      if ((b - D) % 2 != 0) continue;
      mpz_class num = b * b - D;
      if (num % (4 * a) != 0) continue;
      mpz_class c = num / (4 * a);
      if (c < a) continue;
      if ((b == -a || a == c) && b < 0) continue;  // canonical representative
      if (gcd3(a, b, c) != 1) continue;
      ++h;
    }
  }
  return h;
}

// Primitive reduced indefinite forms of non-square discriminant D > 0.
std::vector<Form> reduced_indefinite(const mpz_class& D) {
  std::vector<Form> forms;
  mpz_class s = isqrt_z(D);
  for (mpz_class b = 1; b <= s; ++b) {
    if ((b - D) % 2 != 0) continue;
    mpz_class m4 = D - b * b;   // = -4ac > 0
    if (m4 % 4 != 0) continue;
    mpz_class m = m4 / 4;       // ac = -m
    for (mpz_class u = 1; u * u <= m; ++u) {
      if (m % u != 0) continue;
      std::vector<mpz_class> avals{u};
      if (u * u != m) avals.push_back(m / u);
      for (const mpz_class& aa : avals) {
        // reduced iff |sqrt(D) - 2|a|| < b, i.e. s+1-b <= 2|a| <= s+b
        if (2 * aa < s + 1 - b || 2 * aa > s + b) continue;
        mpz_class cc = -(m / aa);
        for (int sign = 0; sign < 2; ++sign) {
          Form f{sign ? -aa : aa, b, sign ? -cc : cc};
          if (gcd3(f.a, f.b, f.c) != 1) continue;
          forms.push_back(f);
        }
      }
    }
  }
  std::sort(forms.begin(), forms.end());
  forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
  return forms;
}

// Reduction-neighbor operator on reduced indefinite forms.
Form rho(const Form& f, const mpz_class& D, const mpz_class& s) {
  mpz_class cabs = abs(f.c);
  mpz_class two_c = 2 * cabs;
  mpz_class r = s - (s + f.b) % two_c;   // r = -b mod 2|c|, sqrt(D) - 2|c| < r < sqrt(D)
  mpz_class cn = (r * r - D) / (4 * f.c);
  return Form{f.c, r, cn};
}

int count_cycles(const std::vector<Form>& forms, const mpz_class& D) {
  mpz_class s = isqrt_z(D);
  std::map<Form, bool> seen;
  for (const Form& f : forms) seen[f] = false;
  int cycles = 0;
  for (const Form& f : forms) {
    if (seen[f]) continue;
    ++cycles;
    Form g = f;
    for (size_t guard = 0; guard <= 4 * forms.size() + 8; ++guard) {
      auto it = seen.find(g);
      if (it == seen.end()) fail(Errc::Internal, "reduction left the reduced set");
      if (it->second && g == f) break;
      it->second = true;
      g = rho(g, D, s);
      if (g == f) break;
    }
  }
  return cycles;
}

}  // namespace

ClassData class_data(const FieldDescriptor& field, const mpz_class& disc_bound) {
  if (field.kind() != FieldKind::Quadratic)
    fail(Errc::InvalidArgument, "class_data needs a quadratic field");
  const mpz_class& D = field.discriminant();
  if (abs(D) > disc_bound)
    fail(Errc::DiscriminantTooLarge, "|disc| = " + mpz_class(abs(D)).get_str());
  ClassData out;
  out.field = field;
  if (D < 0) {
    out.h = count_reduced_definite(D);
    out.h_plus = out.h;
    out.unit_norm = 1;
    return out;
  }
  std::vector<Form> forms = reduced_indefinite(D);
  out.h_plus = count_cycles(forms, D);
  out.unit = fundamental_unit(field);
  mpq_class n = out.unit->norm();
  out.unit_norm = n == 1 ? 1 : -1;
  if (out.unit_norm == -1) {
    out.h = out.h_plus;
  } else {
    if (out.h_plus % 2 != 0) fail(Errc::Internal, "narrow class count parity mismatch");
    out.h = out.h_plus / 2;
  }
  return out;
}

}  // namespace fermat4
