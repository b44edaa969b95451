#pragma once

#include "doctest.h"

#include "iwalab/padic.hpp"

namespace iwalab::test {

inline FieldPtr qp(long p) { return ExtensionField::base(p); }

inline PadicNumber num(const FieldPtr& f, long v) { return PadicNumber::exact(f, Rational(v)); }
inline PadicNumber num(const FieldPtr& f, const Rational& v) { return PadicNumber::exact(f, v); }
inline PadicNumber approx(const FieldPtr& f, const Rational& v, long prec) {
  return PadicNumber::from_rational(f, v, prec);
}

// Base coordinate of an integral element modulo p^k.
inline Integer residue(const PadicNumber& x, long k) { return x.integer_coords(k).at(0); }

// The rational r reduced modulo p^k, computed with GMP alone.
inline Integer rational_mod(const Rational& r, long p, long k) {
  Integer mod = power_of(p, k), inv;
  Integer den = r.get_den();
  REQUIRE(mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) != 0);
  Integer out = (r.get_num() * inv) % mod;
  if (out < 0) out += mod;
  return out;
}

// v_p(x - r) for an element of Q_p, capped at the precision of x.
inline long agreement(const PadicNumber& x, const Rational& r) {
  PadicNumber d = x - PadicNumber::exact(x.field(), r);
  if (d.is_zero()) return d.precision();
  return floor_of(d.valuation()).get_si();
}

template <class Fn>
ErrorKind error_kind_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an iwalab::Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace iwalab::test
