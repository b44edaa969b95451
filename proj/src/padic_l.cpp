#include "iwalab/padic_l.hpp"

#include <algorithm>

namespace iwalab {

namespace {

Integer mod_of(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    fail(ErrorKind::NotAUnit, "no inverse of " + a.get_str() + " modulo " + m.get_str());
  return r;
}

// A p-integral rational reduced modulo m = p^W.
Integer reduce_integral(const Rational& q, const Integer& m) {
  return mod_of(q.get_num() * inverse_mod(q.get_den(), m), m);
}

// Signed Stirling numbers of the first kind s(j, i), 0 <= i <= j < rows.
std::vector<std::vector<Integer>> stirling_first(long rows) {
  std::vector<std::vector<Integer>> s(rows);
  for (long j = 0; j < rows; ++j) {
    s[j].assign(j + 1, 0);
    if (j == 0) {
      s[0][0] = 1;
      continue;
    }
    for (long i = 1; i <= j; ++i) {
      Integer left = s[j - 1].size() > static_cast<size_t>(i - 1) ? s[j - 1][i - 1] : Integer(0);
      Integer right = i <= j - 1 ? s[j - 1][i] : Integer(0);
      s[j][i] = left - (j - 1) * right;
    }
  }
  return s;
}

Integer factorial(long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

long ceil_long(const Rational& q) { return ceil_of(q).get_si(); }

PadicNumber exact_one(const FieldPtr& field) { return PadicNumber::exact(field, Rational(1)); }

DirichletCharacter require_even_primitive(const DirichletCharacter& chi, long p, bool assume_p2) {
  if (p == 2 && !assume_p2)
    fail(ErrorKind::Assumption2Required, "p = 2 requires --assume-p2 (odd-order characters)");
  DirichletCharacter prim = chi.primitive();
  if (!prim.is_even()) fail(ErrorKind::OddCharacter, "character " + prim.to_text() + " is odd");
  return prim;
}

}  // namespace

Rational PadicLSeries::rho() const { return frame_.kappa() - make_rational(1, frame_.p - 1); }

long PadicLSeries::terms_needed(const Rational& r) const {
  Rational slope = rho() + r;
  if (slope <= 0) fail(ErrorKind::OutsideConvergenceDomain, "v(s - 1) too small for the series domain");
  // Non-pole tail: (k+1)rho - 1 - v(F) + k r >= N; the pole quotient loses one more factor of u.
  Rational need = Rational(precision_ + 1 + v_f_);
  need += pole_ == 1 ? r : Rational(-rho());
  return std::max(1L, ceil_long(need / slope));
}

FieldPtr default_field_for(const DirichletCharacter& chi, long p) {
  long d = lcm_long(chi.order(), p == 2 ? 2 : p - 1);
  return field_for_order(p, d);
}

PadicLSeries lp_series(const DirichletCharacter& chi, const FieldPtr& field, const LSeriesOptions& options,
                       BernoulliCache& cache) {
  const long p = field->p();
  DirichletCharacter prim = require_even_primitive(chi, p, options.assume_p2);
  if (options.precision < 1) fail(ErrorKind::InvalidArgument, "series precision must be positive");

  PadicLSeries out;
  out.frame_ = CyclotomicFrame::for_prime(p);
  out.pole_ = prim.is_trivial() ? 1 : 0;
  out.precision_ = options.precision;
  out.min_u_ = options.min_u_valuation;
  const long f = prim.modulus();
  const long F = lcm_long(f, out.frame_.q0);
  out.v_f_ = valuation_of(Integer(F), p);

  long K = out.terms_needed(out.min_u_);
  if (options.terms) K = std::max(K, *options.terms);
  if (K > options.term_cap)
    fail(ErrorKind::PrecisionExhausted, "series needs " + std::to_string(K) + " terms, cap is " +
                                            std::to_string(options.term_cap));
  long extra = out.min_u_ < 0 ? ceil_long(Rational(K) * -out.min_u_) : 0;
  const long W = options.precision + 2 + out.v_f_ + extra;
  out.working_ = W;
  const Integer mod = power_of(p, W);

  // pG(t) = p sum_a chi(a) <a>^t sum_j C(t, j) (F/a)^j B_j, t = 1 - s, indices 0..K.
  const long I = K + 1;
  // j v(F) - (j-1)/(p-1) >= W bounds the neglected j.
  const Rational c = make_rational(1, p - 1);
  long J = 1;
  while (Rational(J * out.v_f_) - Rational(J - 1) * c < W) ++J;
  if (J > options.term_cap) fail(ErrorKind::PrecisionExhausted, "Bernoulli sum needs too many terms");

  auto stir = stirling_first(J);
  std::vector<std::vector<Integer>> A(J);
  {
    Integer Fpow = 1;
    for (long j = 0; j < J; ++j) {
      A[j].assign(std::min(j, I - 1) + 1, 0);
      Rational b = cache.get(j);
      if (b != 0) {
        Rational base = Rational(p) * b * Fpow / factorial(j);
        for (size_t i = 0; i < A[j].size(); ++i) {
          if (stir[j][i] == 0) continue;
          A[j][i] = reduce_integral(base * stir[j][i], mod);
        }
      }
      Fpow *= F;
    }
  }

  const long d = prim.order();
  const FieldPtr base = ExtensionField::base(p);
  std::vector<std::vector<Integer>> G(d, std::vector<Integer>(I, 0));
  for (long a = 1; a <= F; ++a) {
    if (a % p == 0) continue;
    auto r = prim.evaluate(a);
    if (!r) continue;
    // Q_a[i] = sum_j A[j][i] a^-j
    std::vector<Integer> Q(I, 0);
    Integer ainv = inverse_mod(Integer(a), mod);
    Integer apow = 1;
    for (long j = 0; j < J; ++j) {
      for (size_t i = 0; i < A[j].size(); ++i)
        if (A[j][i] != 0) Q[i] += A[j][i] * apow;
      apow = mod_of(apow * ainv, mod);
    }
    for (auto& x : Q) x = mod_of(x, mod);
    // E_a[i] = l^i / i! with l = log <a>, tracked as p^v * unit.
    PadicNumber angle = diamond_decompose(PadicNumber::exact(base, Rational(a)), W).angle;
    PadicNumber ell = plog(angle, W);
    std::vector<Integer> E(I, 0);
    E[0] = 1;
    if (!ell.is_zero()) {
      long vl = ell.valuation_pi();
      Integer lambda = ell.unit_coords()[0];
      long v = 0;
      Integer unit = 1;
      for (long i = 1; i < I; ++i) {
        long vi = valuation_of(Integer(i), p);
        Integer ip = Integer(i) / power_of(p, vi);
        v += vl - vi;
        unit = mod_of(unit * lambda * inverse_mod(ip, mod), mod);
        if (v >= W) break;
        E[i] = mod_of(unit * power_of(p, v), mod);
      }
    }
    auto& target = G[*r];
    for (long i = 0; i < I; ++i) {
      if (E[i] == 0) continue;
      for (long k = 0; i + k < I; ++k)
        if (Q[k] != 0) target[i + k] += E[i] * Q[k];
    }
  }
  for (auto& row : G)
    for (auto& x : row) x = mod_of(x, mod);

  out.chi_ = EmbeddedCharacter::embed(prim, field, W);
  const PadicNumber scale = PadicNumber::exact(field, Rational(out.pole_ == 1 ? 1 : -1) / Rational(p * F));
  out.coeffs_.reserve(K);
  for (long k = 0; k < K; ++k) {
    long idx = out.pole_ == 1 ? k : k + 1;
    PadicNumber e = PadicNumber::zero(field, W);
    for (long rr = 0; rr < d; ++rr) {
      if (G[rr][idx] == 0) continue;
      e += out.chi_.root_power(rr) * PadicNumber::from_rational(field, Rational(G[rr][idx]), W);
    }
    e = e * scale;
    out.coeffs_.push_back(k % 2 == 0 ? e : -e);
  }
  return out;
}

PadicLSeries lp_series(const EmbeddedCharacter& chi, const LSeriesOptions& options, BernoulliCache& cache) {
  return lp_series(chi.character(), chi.field(), options, cache);
}

PadicNumber lp_eval(const PadicLSeries& series, const PadicNumber& e) {
  if (!e.valid()) fail(ErrorKind::InvalidArgument, "evaluation point is uninitialised");
  const auto& frame = series.frame();
  if (e.p() != frame.p) fail(ErrorKind::FieldMismatch, "evaluation point has the wrong prime");
  const PadicNumber one = exact_one(e.field());
  PadicNumber u = e - one;
  if (series.pole_order() == 1 && u.is_zero())
    fail(ErrorKind::PoleAtOne, "L_p(s, 1) has a pole at s = 1");
  if (!in_twist_domain(e, frame, false))
    fail(ErrorKind::OutsideConvergenceDomain, "s = " + e.to_string() + " lies outside the convergence disc");
  const auto& d = series.coefficients();
  if (!u.is_zero() && u.valuation() < series.min_u_valuation())
    fail(ErrorKind::PrecisionExhausted, "series was built for v(s - 1) >= " +
                                            series.min_u_valuation().get_str() + "; rebuild it for this point");
  PadicNumber acc = d.back();
  for (size_t k = d.size() - 1; k-- > 0;) acc = acc * u + d[k];
  if (series.pole_order() == 1) acc = acc / u;
  return acc.with_precision(std::min(acc.precision(), series.value_precision()));
}

PadicNumber diamond_euler_factor(long v, const EmbeddedCharacter& eta, const PadicNumber& s, long prec) {
  const long p = eta.field()->p();
  if (v == p) fail(ErrorKind::InvalidArgument, "the diamond Euler factor is defined away from p");
  if (!is_prime(v)) fail(ErrorKind::InvalidArgument, std::to_string(v) + " is not prime");
  const FieldPtr& field = eta.field();
  DirichletCharacter prim = eta.character().primitive();
  if (prim.modulus() % v == 0) return exact_one(field);
  const auto frame = CyclotomicFrame::for_prime(p);
  if (!in_twist_domain(s, frame, false))
    fail(ErrorKind::OutsideConvergenceDomain, "s = " + s.to_string() + " lies outside the convergence disc");
  PadicNumber power = diamond_pow(PadicNumber::exact(ExtensionField::base(p), Rational(v)), -s, frame, prec);
  PadicNumber value = eta.root_power(*prim.evaluate(v));
  return exact_one(field) - value * power;
}

PadicNumber lps_eval(const PadicLSeries& series, const PadicNumber& e, const std::set<long>& primes) {
  const long p = series.frame().p;
  if (!primes.count(p)) fail(ErrorKind::InvalidArgument, "S must contain p = " + std::to_string(p));
  PadicNumber value = lp_eval(series, e);
  const auto& chi = series.character();
  EmbeddedCharacter eta = chi.with_character(twist(chi.character(), -1, p));
  for (long v : primes) {
    if (v == p) continue;
    value = value * diamond_euler_factor(v, eta, e, series.working_precision());
  }
  return value.with_precision(std::min(value.precision(), series.value_precision()));
}

std::vector<PadicNumber> h_polynomial(const EmbeddedCharacter& chi, const CyclotomicFrame& frame, long prec) {
  const FieldPtr& field = chi.field();
  SecondKindSplit split = second_kind_split(chi.character(), frame.p);
  if (!split.second_kind) return {exact_one(field)};
  if (split.psi.order() != chi.character().order())
    fail(ErrorKind::InvalidArgument, "second-kind character with a nontrivial first-kind part");
  PadicNumber z = split.psi.is_trivial() ? exact_one(field) : chi.root_power(split.gamma0_exponent).rounded(prec);
  return {z - exact_one(field), z};
}

PadicNumber IwasawaAnalyticSeries::t_at(const PadicNumber& e, long prec) const {
  const auto frame = CyclotomicFrame::for_prime(p);
  PadicNumber qq = PadicNumber::exact(ExtensionField::base(p), q);
  PadicNumber one = exact_one(e.field());
  if (e.is_exact() && (e - one).is_exact_zero()) return PadicNumber::exact(e.field(), Rational(0));
  return diamond_pow(qq, one - e, frame, prec) - one;
}

PadicNumber IwasawaAnalyticSeries::phi_at(const PadicNumber& t) const {
  PadicNumber acc = phi.back();
  for (size_t k = phi.size() - 1; k-- > 0;) acc = acc * t + phi[k];
  if (provenance == Provenance::Computed && !t.is_exact_zero()) {
    Rational tail = Rational(terms()) * t.valuation_bound();
    long cap = floor_of(tail).get_si();
    if (cap < acc.precision()) acc = acc.with_precision(cap);
  }
  return acc;
}

PadicNumber IwasawaAnalyticSeries::h_at(const PadicNumber& t) const {
  if (h.size() == 1) return h[0];
  return h[0] + h[1] * t;
}

PadicNumber IwasawaAnalyticSeries::evaluate(const PadicNumber& e, long prec) const {
  const auto frame = CyclotomicFrame::for_prime(p);
  if (!in_twist_domain(e, frame, false))
    fail(ErrorKind::OutsideConvergenceDomain, "s = " + e.to_string() + " lies outside the convergence disc");
  PadicNumber t = t_at(e, prec);
  PadicNumber den = h_at(t);
  if (den.is_zero()) fail(ErrorKind::PoleAtOne, "h(T) vanishes at this point");
  return phi_at(t) / den;
}

IwasawaAnalyticSeries to_iwasawa_series(const PadicLSeries& series, long terms) {
  if (terms < 1) fail(ErrorKind::InvalidArgument, "need at least one T-coefficient");
  const auto& D = series.coefficients();
  if (static_cast<long>(D.size()) < terms)
    fail(ErrorKind::PrecisionExhausted, "series retains " + std::to_string(D.size()) + " terms, " +
                                            std::to_string(terms) + " requested");
  const auto& frame = series.frame();
  const long p = frame.p;
  const FieldPtr& field = series.character().field();
  const long W = series.working_precision();
  const long log_prec = W + 2 * terms + 2;
  PadicNumber logq = plog(PadicNumber::exact(ExtensionField::base(p), Rational(frame.q)), log_prec);

  IwasawaAnalyticSeries out;
  out.p = p;
  out.field = field;
  out.q = frame.q;
  out.provenance = Provenance::Computed;
  out.character = series.character().character();
  out.h = h_polynomial(series.character(), frame, W);

  // H~(u) with h(T) = u^pole H~(u) under 1 + T = exp(-u log q).
  std::vector<PadicNumber> Ht(terms);
  PadicNumber neglog = -logq;
  if (out.h.size() == 1) {
    Ht[0] = exact_one(field);
    for (long k = 1; k < terms; ++k) Ht[k] = PadicNumber::exact(field, Rational(0));
  } else {
    PadicNumber term = exact_one(field);  // (-log q)^k / k!
    const PadicNumber& z = out.h[1];
    for (long k = 0; k < terms + 1; ++k) {
      if (k > 0) term = term * neglog * PadicNumber::exact(field, make_rational(1, k));
      if (series.pole_order() == 1) {
        if (k >= 1) Ht[k - 1] = term;
      } else if (k < terms) {
        Ht[k] = z * term - (k == 0 ? exact_one(field) : PadicNumber::exact(field, Rational(0)));
      }
    }
  }
  std::vector<PadicNumber> B(terms, PadicNumber::exact(field, Rational(0)));
  for (long i = 0; i < terms; ++i)
    for (long j = 0; i + j < terms; ++j) B[i + j] += D[i] * Ht[j];

  // Phi_n = sum_k B_k (-1)^k k! s(n,k) / (n! (log q)^k)
  auto stir = stirling_first(terms);
  PadicNumber inv_log = logq.inverse();
  std::vector<PadicNumber> scaled(terms);
  PadicNumber power = exact_one(ExtensionField::base(p));
  for (long k = 0; k < terms; ++k) {
    scaled[k] = B[k] * power;
    power = power * inv_log;
  }
  out.phi.assign(terms, PadicNumber::exact(field, Rational(0)));
  long min_prec = PadicNumber::kExact;
  for (long n = 0; n < terms; ++n) {
    PadicNumber acc = PadicNumber::exact(field, Rational(0));
    for (long k = 0; k <= n; ++k) {
      if (stir[n][k] == 0) continue;
      Rational coef = Rational(stir[n][k] * factorial(k)) / Rational(factorial(n));
      if (k % 2 == 1) coef = -coef;
      acc += scaled[k] * PadicNumber::exact(field, coef);
    }
    if (!acc.is_zero() && acc.valuation() < 0)
      fail(ErrorKind::IntegralityViolation, "Iwasawa coefficient " + std::to_string(n) + " has valuation " +
                                                acc.valuation().get_str());
    min_prec = std::min(min_prec, acc.precision());
    out.phi[n] = acc;
  }
  if (min_prec <= 0)
    fail(ErrorKind::PrecisionExhausted, "no precision left in the Iwasawa coefficients; raise N");
  out.ledger.value_precision = min_prec;
  out.ledger.terms = terms;
  out.ledger.delta = series.value_precision() - std::min(min_prec, series.value_precision());
  return out;
}

IwasawaAnalyticSeries from_user_data(const UserIwasawaData& data) {
  if (!is_prime(data.p)) fail(ErrorKind::InvalidArgument, "user data needs a prime p");
  const auto frame = CyclotomicFrame::for_prime(data.p);
  Rational q1 = data.q - 1;
  if (q1 == 0 || valuation_of(q1, data.p) < frame.kappa())
    fail(ErrorKind::InvalidArgument, "q = " + data.q.get_str() + " is not in 1 + q0 Z_p");
  if (data.P.empty()) fail(ErrorKind::InvalidArgument, "distinguished polynomial is empty");
  if (data.mu < 0) fail(ErrorKind::InvalidArgument, "mu must be non-negative");
  IwasawaAnalyticSeries out;
  out.p = data.p;
  out.field = data.P.front().field();
  out.q = data.q;
  out.provenance = Provenance::UserSupplied;
  out.mu = data.mu;
  out.distinguished = data.P;
  out.h = data.h.empty() ? std::vector<PadicNumber>{exact_one(out.field)} : data.h;
  PadicNumber scale = PadicNumber::exact(out.field, Rational(power_of(data.p, data.mu)));
  long min_prec = PadicNumber::kExact;
  for (const auto& c : data.P) {
    out.phi.push_back(c * scale);
    min_prec = std::min(min_prec, out.phi.back().precision());
  }
  out.ledger.value_precision = min_prec;
  out.ledger.terms = out.terms();
  return out;
}

VanishingOrder order_of_vanishing(const IwasawaAnalyticSeries& phi, const PadicNumber& e,
                                  const std::set<long>& primes, long prec) {
  const auto frame = CyclotomicFrame::for_prime(phi.p);
  if (!in_twist_domain(e, frame, false))
    fail(ErrorKind::OutsideConvergenceDomain, "s = " + e.to_string() + " lies outside the convergence disc");
  VanishingOrder out;
  PadicNumber t = phi.t_at(e, prec);
  const long M = phi.terms();
  bool certified = false;
  for (long nu = 0; nu < M; ++nu) {
    // Phi^(nu)(t)/nu! = sum_n C(n, nu) Phi_n t^(n-nu)
    PadicNumber acc = PadicNumber::exact(phi.field, Rational(0));
    for (long n = M - 1; n >= nu; --n) {
      Integer c;
      mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(nu));
      acc = acc * t + phi.phi[n] * PadicNumber::exact(phi.field, Rational(c));
    }
    if (phi.provenance == Provenance::Computed && !t.is_exact_zero()) {
      long cap = floor_of(Rational(M - nu) * t.valuation_bound()).get_si();
      if (cap < acc.precision()) acc = acc.with_precision(cap);
    }
    if (!acc.is_zero()) {
      out.from_phi = nu;
      certified = true;
      break;
    }
    out.from_phi = nu + 1;
  }
  if (phi.h.size() == 2 && phi.h_at(t).is_zero()) out.from_h = 1;
  const long p = phi.p;
  for (long v : primes) {
    if (v == p) continue;
    if (!phi.character)
      fail(ErrorKind::InvalidArgument, "S-truncation of user data needs the character");
    DirichletCharacter eta = twist(*phi.character, -1, p);
    auto k = eta.evaluate(v);
    if (k && *k == 0 && e.is_exact_zero()) ++out.from_euler_factors;
  }
  out.lower = out.from_phi - out.from_h + out.from_euler_factors;
  if (certified) out.exact = out.lower;
  return out;
}

InterpolationReport interpolation_check(const PadicLSeries& series, long m, const std::set<long>& primes,
                                        BernoulliCache& cache, long allowed_loss) {
  if (m > 0) fail(ErrorKind::InvalidArgument, "interpolation is checked at m <= 0");
  const long p = series.frame().p;
  const FieldPtr& field = series.character().field();
  InterpolationReport out;
  out.m = m;
  out.m_zero_hedge = m == 0;
  out.analytic = lps_eval(series, PadicNumber::exact(field, Rational(m)), primes);
  DirichletCharacter eta = twist(series.character().character(), m - 1, p);
  out.exact = l_star_truncated(m, eta, primes, cache);
  PadicNumber zeta = root_of_unity(field, out.exact.order(), series.working_precision());
  out.classical = out.exact.embed(zeta);
  PadicNumber diff = out.analytic - out.classical;
  out.residual_valuation = floor_of(diff.valuation_bound()).get_si();
  out.target = series.value_precision() - allowed_loss;
  out.passed = out.residual_valuation >= out.target;
  return out;
}

}  // namespace iwalab
