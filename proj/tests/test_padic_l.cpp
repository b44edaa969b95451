#include "support.hpp"

#include "iwalab/padic_l.hpp"

using namespace iwalab;
using namespace iwalab::test;

namespace {

PadicLSeries series_for(const DirichletCharacter& chi, long p, long prec = 20) {
  LSeriesOptions opts;
  opts.precision = prec;
  return lp_series(chi, default_field_for(chi, p), opts);
}

}  // namespace

TEST_CASE("series values at negative integers match the truncated classical values") {
  auto w2 = DirichletCharacter::teichmuller(5).pow(2);
  CHECK(w2 == DirichletCharacter::quadratic(5));
  auto s = series_for(w2, 5);
  auto v = lp_eval(s, num(qp(5), -1));
  CHECK(agreement(v, Rational(1, 3)) >= 15);
  CHECK(residue(v, 4) == 417);

  auto triv3 = series_for(DirichletCharacter::trivial(), 3);
  CHECK(agreement(lp_eval(triv3, num(qp(3), -1)), Rational(1, 6)) >= 15);

  auto triv5 = series_for(DirichletCharacter::trivial(), 5);
  // (1 - 5^3) * zeta(-3) with zeta(-3) = 1/120.
  CHECK(agreement(lp_eval(triv5, num(qp(5), -3)), Rational(1 - 125, 120)) >= 15);
}

TEST_CASE("series construction gates") {
  CHECK(error_kind_of([] { series_for(DirichletCharacter::quadratic(3), 5); }) == ErrorKind::OddCharacter);
  CHECK(error_kind_of([] { series_for(DirichletCharacter::trivial(), 2); }) == ErrorKind::Assumption2Required);
  auto triv5 = series_for(DirichletCharacter::trivial(), 5);
  CHECK(triv5.pole_order() == 1);
  CHECK(error_kind_of([&] { lp_eval(triv5, num(qp(5), 1)); }) == ErrorKind::PoleAtOne);
}

TEST_CASE("diamond Euler factors") {
  auto eta = EmbeddedCharacter::embed(twist(DirichletCharacter::quadratic(5), 1, 5), qp(5), 20);
  CHECK(agreement(diamond_euler_factor(2, eta, num(qp(5), -1), 20), Rational(3)) >= 18);
  auto quad8 = EmbeddedCharacter::embed(DirichletCharacter::quadratic(8), qp(5), 20);
  CHECK(equal_to_precision(diamond_euler_factor(2, quad8, num(qp(5), -1), 20), num(qp(5), 1)));
  CHECK(error_kind_of([&] { diamond_euler_factor(5, eta, num(qp(5), -1), 20); }) == ErrorKind::InvalidArgument);
  // The trivial character has a simple zero of its factor at s = 0.
  auto triv = EmbeddedCharacter::embed(DirichletCharacter::trivial(), qp(5), 20);
  CHECK(diamond_euler_factor(11, triv, num(qp(5), 0), 20).is_zero());
}

TEST_CASE("S-truncated values") {
  auto triv5 = series_for(DirichletCharacter::trivial(), 5);
  // L_{5,{5}}(-1, 1) = L*(-1, omega^-2) = L*(-1, quad:5) = -2/5.
  CHECK(agreement(lps_eval(triv5, num(qp(5), -1), {5}), Rational(-2, 5)) >= 15);
  auto w2 = series_for(DirichletCharacter::quadratic(5), 5);
  // The factor at 2 is F_2 for chi omega^-1 = omega, which at s = -1 is 1 - omega(2) <2> = -1.
  CHECK(agreement(lps_eval(w2, num(qp(5), -1), {2, 5}), Rational(-1, 3)) >= 15);
}

TEST_CASE("the Iwasawa form reproduces the series") {
  auto triv5 = series_for(DirichletCharacter::trivial(), 5);
  auto iw = to_iwasawa_series(triv5, 8);
  CHECK(iw.provenance == Provenance::Computed);
  // Truncating Phi at T^M costs M v(T_e); dividing by h(T_e) = T_e costs one more.
  for (long m : {-1L, -3L, -5L, 0L, 2L}) {
    auto v = iw.evaluate(num(qp(5), m), 20);
    CHECK(v.precision() >= iw.terms() - 1);
    CHECK(equal_to_precision(v, lp_eval(triv5, num(qp(5), m))));
  }
  CHECK(agreement(iw.evaluate(num(qp(5), -3), 20), Rational(-124, 120)) >= iw.terms() - 1);
}

TEST_CASE("user-supplied Iwasawa data") {
  UserIwasawaData data;
  data.p = 5;
  data.q = 6;
  data.P = {num(qp(5), -5), num(qp(5), 1)};
  auto iw = from_user_data(data);
  CHECK(iw.provenance == Provenance::UserSupplied);
  CHECK(iw.phi_at(num(qp(5), 5)).is_zero());
  auto nu = order_of_vanishing(iw, num(qp(5), 0), {5}, 20);
  REQUIRE(nu.exact.has_value());
  CHECK(*nu.exact == 1);

  UserIwasawaData trivial;
  trivial.p = 5;
  trivial.q = 6;
  trivial.P = {num(qp(5), 1)};
  auto one = from_user_data(trivial);
  for (long e : {0L, 1L, 2L, -3L}) CHECK(order_of_vanishing(one, num(qp(5), e), {5}, 20).exact == 0);
}

TEST_CASE("interpolation reports") {
  auto w2 = series_for(DirichletCharacter::quadratic(5), 5);
  auto rep = interpolation_check(w2, -1, {5});
  CHECK(rep.passed);
  CHECK(rep.residual_valuation >= 15);
  CHECK(rep.exact.as_rational() == Rational(1, 3));
  auto t3 = interpolation_check(series_for(DirichletCharacter::trivial(), 3), -1, {3});
  CHECK(t3.exact.as_rational() == Rational(1, 6));
  auto t5 = interpolation_check(series_for(DirichletCharacter::trivial(), 5), -3, {5});
  CHECK(t5.exact.as_rational() == Rational(-31, 30));
  CHECK(t5.residual_valuation >= 15);
}

TEST_CASE("values depend continuously on the twist") {
  auto s = series_for(DirichletCharacter::quadratic(5), 5);
  auto base = lp_eval(s, num(qp(5), -1));
  for (long k = 1; k <= 6; ++k) {
    auto near = lp_eval(s, num(qp(5), Rational(-1) + Rational(power_of(5, k))));
    CHECK(agreement(near - base, 0) >= k);
  }
}
