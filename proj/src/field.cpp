#include "relaus/field.hpp"

namespace relaus {

FieldSpec rational_field() { return FieldSpec{FieldKind::rational, 0}; }

FieldSpec prime_field(unsigned long p) {
  mpz_class z(static_cast<unsigned long>(p));
  if (p < 2 || mpz_probab_prime_p(z.get_mpz_t(), 40) == 0)
    throw input_error("field modulus " + std::to_string(p) + " is not prime");
  return FieldSpec{FieldKind::prime, p};
}

std::string field_label(const FieldSpec& f) {
  return f.kind == FieldKind::rational ? "Q" : "F" + std::to_string(f.p);
}

Field::Field(const FieldSpec& spec) : spec_(spec) {
  if (spec_.kind == FieldKind::prime) prime_field(spec_.p);  // re-validate
}

Scalar Field::zero() const { return Scalar(0); }
Scalar Field::one() const { return Scalar(1); }

Scalar Field::from_long(long v) const { return reduce(Scalar(v)); }

Scalar Field::from_string(const std::string& s) const {
  if (s.empty()) throw input_error("empty scalar literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw input_error("bad scalar literal '" + s + "'");
  if (q.get_den() == 0) throw input_error("zero denominator in '" + s + "'");
  q.canonicalize();
  return reduce(q);
}

std::string Field::to_string(const Scalar& x) const { return x.get_str(); }

Scalar Field::mod_reduce(const Scalar& x) const {
  mpz_class p(spec_.p);
  mpz_class num = x.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = x.get_den() % p;
  if (den == 0)
    throw input_error("denominator divisible by " + std::to_string(spec_.p));
  mpz_class dinv;
  if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
    throw input_error("denominator not invertible mod " + std::to_string(spec_.p));
  mpz_class r = (num * dinv) % p;
  if (r < 0) r += p;
  return Scalar(r);
}

Scalar Field::reduce(const Scalar& x) const {
  if (spec_.kind == FieldKind::rational) {
    Scalar y = x;
    y.canonicalize();
    return y;
  }
  return mod_reduce(x);
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (spec_.kind == FieldKind::rational) return a + b;
  return mod_reduce(a + b);
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (spec_.kind == FieldKind::rational) return a - b;
  return mod_reduce(a - b);
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (spec_.kind == FieldKind::rational) return a * b;
  return mod_reduce(a * b);
}

Scalar Field::neg(const Scalar& a) const {
  if (spec_.kind == FieldKind::rational) return -a;
  return mod_reduce(-a);
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) throw critical_error("inverse of zero");
  if (spec_.kind == FieldKind::rational) return 1 / a;
  mpz_class p(spec_.p), v = a.get_num() % p, r;
  if (v < 0) v += p;
  if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()) == 0)
    throw critical_error("non-invertible residue");
  return Scalar(r);
}

Scalar Field::div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

}  // namespace relaus
