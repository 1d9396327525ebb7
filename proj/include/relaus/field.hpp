#pragma once
#include <gmpxx.h>

#include <string>

#include "relaus/errors.hpp"

namespace relaus {

enum class FieldKind { rational, prime };

struct FieldSpec {
  FieldKind kind = FieldKind::rational;
  unsigned long p = 0;  // modulus, meaningful only for prime fields
  bool operator==(const FieldSpec&) const = default;
};

FieldSpec rational_field();
FieldSpec prime_field(unsigned long p);
std::string field_label(const FieldSpec& f);

// One scalar representation for both fields.  Rationals are kept canonical
// (lowest terms, positive denominator, mpq invariant).  Prime field elements
// are residues 0 <= x < p with denominator 1.
using Scalar = mpq_class;

// All scalar arithmetic goes through Field so mod-p reduction cannot be
// forgotten at a call site.
class Field {
 public:
  explicit Field(const FieldSpec& spec);

  const FieldSpec& spec() const { return spec_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_long(long v) const;
  // accepts "a" or "a/b", arbitrary precision
  Scalar from_string(const std::string& s) const;
  std::string to_string(const Scalar& x) const;

  // brings an arbitrary rational into the field (mod-p reduction for primes;
  // rejects denominators divisible by p)
  Scalar reduce(const Scalar& x) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const;

  static bool is_zero(const Scalar& a) { return sgn(a) == 0; }
  static bool eq(const Scalar& a, const Scalar& b) { return cmp(a, b) == 0; }

 private:
  FieldSpec spec_;
  Scalar mod_reduce(const Scalar& x) const;
};

}  // namespace relaus
