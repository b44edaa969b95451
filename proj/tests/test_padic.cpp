#include "support.hpp"

using namespace iwalab;
using namespace iwalab::test;

namespace {

// Fixed point of z -> z^p modulo p^k, iterated with plain GMP.
Integer teichmuller_oracle(long z, long p, long k) {
  Integer mod = power_of(p, k), x = z;
  for (long i = 0; i <= k + 1; ++i) mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), p, mod.get_mpz_t());
  return x;
}

// log(1 + x) = sum (-1)^(n+1) x^n / n, summed far past the tail bound.
Rational log_oracle(long x, long terms) {
  Rational sum = 0, xn = 1;
  for (long n = 1; n <= terms; ++n) {
    xn *= x;
    sum += (n % 2 ? 1 : -1) * xn / n;
  }
  return sum;
}

}  // namespace

TEST_CASE("field arithmetic in Z_5 tracks precision and valuation") {
  auto f = qp(5);
  auto sum = approx(f, 2, 4) + approx(f, 3, 4);
  CHECK(residue(sum, 4) == 5);
  CHECK(sum.valuation() == 1);
  auto third = approx(f, 1, 4) / approx(f, 3, 4);
  CHECK(residue(third, 4) == 417);
  CHECK((Integer(3) * 417) % 625 == 1);
  CHECK(sum.precision() == 4);
}

TEST_CASE("the Eisenstein generator squares to p") {
  auto f = ExtensionField::parse(5, "eis:x^2-5");
  auto pi = PadicNumber::generator(f);
  CHECK(pi.valuation() == Rational(1, 2));
  auto five = pi * pi;
  CHECK(five.valuation() == 1);
  CHECK(equal_to_precision(five, num(f, 5)));
}

TEST_CASE("division by an element indistinguishable from zero is refused") {
  auto f = qp(5);
  CHECK(error_kind_of([&] { (void)(num(f, 1) / PadicNumber::zero(f, 6)); }) == ErrorKind::DivisionByPrecisionZero);
}

TEST_CASE("mixing fields is refused") {
  auto a = num(ExtensionField::parse(5, "unram:x^2+2"), 1);
  auto b = num(ExtensionField::parse(5, "eis:x^2-5"), 1);
  CHECK(error_kind_of([&] { (void)(a + b); }) == ErrorKind::FieldMismatch);
}

TEST_CASE("Teichmuller lifts agree with the iterated p-th power") {
  auto f = qp(5);
  CHECK(residue(teichmuller(num(f, 2), 4), 4) == 182);
  CHECK(residue(teichmuller(num(f, 2), 4), 4) == teichmuller_oracle(2, 5, 4));
  CHECK(residue(teichmuller(num(f, 1), 4), 4) == 1);
  CHECK(residue(teichmuller(num(qp(2), 7), 4), 4) == 15);
  for (long p : {3L, 5L, 7L, 11L})
    for (long z = 1; z < p; ++z) CHECK(residue(teichmuller(num(qp(p), z), 8), 8) == teichmuller_oracle(z, p, 8));
}

TEST_CASE("diamond decomposition of small units") {
  auto f = qp(5);
  auto two = diamond_decompose(num(f, 2), 4);
  CHECK(residue(two.omega, 4) == 182);
  CHECK(residue(two.angle, 4) == 261);
  auto six = diamond_decompose(num(f, 6), 4);
  CHECK(residue(six.omega, 4) == 1);
  CHECK(residue(six.angle, 4) == 6);
  auto one = diamond_decompose(num(f, 1), 4);
  CHECK(residue(one.omega, 4) == 1);
  CHECK(residue(one.angle, 4) == 1);
  CHECK(error_kind_of([&] { diamond_decompose(num(f, 5), 4); }) == ErrorKind::NotAUnit);
}

TEST_CASE("plog and pexp invert each other on 1-units") {
  auto f = qp(5);
  CHECK(plog(num(f, 1), 4).is_zero());
  auto l6 = plog(num(f, 6), 4);
  CHECK(residue(l6, 4) == rational_mod(log_oracle(5, 60), 5, 4));
  CHECK(residue(l6, 4) == 555);
  CHECK(residue(pexp(l6, 4), 4) == 6);
  for (long x : {6L, 11L, 26L, 51L, 126L}) {
    auto lx = plog(num(f, x), 12);
    CHECK(residue(pexp(lx), 10) == x);
  }
}

TEST_CASE("pexp outside its disc is refused") {
  CHECK(error_kind_of([] { pexp(num(qp(5), 1), 6); }) == ErrorKind::OutsideConvergenceDomain);
}

TEST_CASE("diamond_pow matches integer powers of the 1-unit part") {
  auto f = qp(5);
  auto frame = CyclotomicFrame::for_prime(5);
  CHECK(residue(diamond_pow(num(f, 2), num(f, 0), frame, 4), 4) == 1);
  CHECK(residue(diamond_pow(num(f, 2), num(f, 2), frame, 4), 4) == 621);
  CHECK(residue(diamond_pow(num(f, 6), num(f, 3), frame, 4), 4) == 216);
  for (long z : {2L, 3L, 7L, 12L})
    for (long e = -4; e <= 6; ++e) {
      auto angle = diamond_decompose(num(f, z), 16).angle;
      CHECK(equal_to_precision(diamond_pow(num(f, z), num(f, e), frame, 16), angle.pow(e)));
    }
}

TEST_CASE("twist domain membership compares valuations") {
  auto frame = CyclotomicFrame::for_prime(5);
  CHECK(in_twist_domain(num(qp(5), 2), frame, false));
  CHECK_FALSE(in_twist_domain(num(qp(5), Rational(1, 5)), frame, false));
  auto f = ExtensionField::parse(5, "eis:x^2-5");
  CHECK(in_twist_domain(PadicNumber::generator(f).inverse(), frame, false));
  CHECK_FALSE(in_twist_domain(num(qp(5), 1), frame, true));
}

TEST_CASE("field descriptions reject malformed moduli") {
  CHECK(error_kind_of([] { ExtensionField::parse(5, "eis:x^2-25"); }) == ErrorKind::InvalidField);
  CHECK(error_kind_of([] { ExtensionField::parse(5, "unram:x^2-1"); }) == ErrorKind::InvalidField);
  CHECK(error_kind_of([] { ExtensionField::parse(5, "bogus"); }) == ErrorKind::ParseError);
  CHECK(ExtensionField::parse(5, "eis:x^2-5")->ramification_index() == 2);
  CHECK(ExtensionField::parse(5, "cyc:1")->degree() == 4);
}

TEST_CASE("ring axioms hold on random elements of an unramified quadratic extension") {
  auto f = ExtensionField::unramified_of_degree(3, 2);
  unsigned long state = 12345;
  auto next = [&] { return static_cast<long>((state = state * 6364136223846793005UL + 1) >> 40) % 200 - 100; };
  for (int i = 0; i < 50; ++i) {
    auto a = PadicNumber::exact(f, std::vector<Rational>{Rational(next()), Rational(next())}).rounded(12);
    auto b = PadicNumber::exact(f, std::vector<Rational>{Rational(next()), Rational(next())}).rounded(12);
    auto c = PadicNumber::exact(f, std::vector<Rational>{Rational(next()), Rational(next())}).rounded(12);
    CHECK(equal_to_precision(a * (b + c), a * b + a * c));
    CHECK(equal_to_precision((a * b) * c, a * (b * c)));
    if (a.is_unit()) CHECK(equal_to_precision(a * a.inverse(), num(f, 1)));
  }
}
