#include "iwalab/lambda_modules.hpp"

#include <algorithm>

#include "iwalab/poly_text.hpp"

namespace iwalab {

namespace {

PadicNumber exact_int(const FieldPtr& field, long v) { return PadicNumber::exact(field, Rational(v)); }

bool is_one(const PadicNumber& x) {
  return (x - PadicNumber::exact(x.field(), Rational(1))).is_zero();
}

void trim(PadicPolynomial& a) {
  while (a.size() > 1 && a.back().is_exact_zero()) a.pop_back();
}

FieldPtr series_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b || a->same_as(*b)) return a;
  if (a->kind() == ExtensionField::Kind::Base && a->p() == b->p()) return b;
  if (b->kind() == ExtensionField::Kind::Base && a->p() == b->p()) return a;
  fail(ErrorKind::FieldMismatch, "power series over different fields");
}

}  // namespace

PadicPolynomial polynomial_from_text(const FieldPtr& field, std::string_view text, char var) {
  auto parsed = parse_polynomial(text, var);
  PadicPolynomial out;
  out.reserve(parsed.size());
  for (const auto& c : parsed) {
    if (c.digit_base && *c.digit_base != field->p())
      fail(ErrorKind::ParseError, "digit string in base " + std::to_string(*c.digit_base) + " over p = " +
                                      std::to_string(field->p()));
    out.push_back(c.precision ? PadicNumber::from_rational(field, c.value, *c.precision)
                              : PadicNumber::exact(field, c.value));
  }
  if (out.empty()) out.push_back(exact_int(field, 0));
  return out;
}

PadicPolynomial poly_mul(const PadicPolynomial& a, const PadicPolynomial& b) {
  if (a.empty() || b.empty()) fail(ErrorKind::InvalidArgument, "empty polynomial");
  FieldPtr field = series_field(a.front().field(), b.front().field());
  PadicPolynomial out(a.size() + b.size() - 1, exact_int(field, 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

PadicNumber poly_eval(const PadicPolynomial& a, const PadicNumber& x) {
  if (a.empty()) fail(ErrorKind::InvalidArgument, "empty polynomial");
  PadicNumber acc = a.back();
  for (size_t k = a.size() - 1; k-- > 0;) acc = acc * x + a[k];
  return acc;
}

bool is_distinguished(const PadicPolynomial& g) {
  if (g.empty() || !is_one(g.back())) return false;
  for (size_t i = 0; i + 1 < g.size(); ++i)
    if (!g[i].is_zero() && g[i].valuation_pi() < 1) return false;
  return true;
}

bool is_eisenstein(const PadicPolynomial& g) {
  if (g.size() < 2 || !is_distinguished(g)) return false;
  return !g[0].is_zero() && g[0].valuation_pi() == 1;
}

std::string poly_to_string(const PadicPolynomial& a, char var) {
  std::string out;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_exact_zero() && a.size() > 1) continue;
    if (!out.empty()) out += " + ";
    out += "(" + a[i].to_string() + ")";
    if (i >= 1) out += std::string("*") + var;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

TruncatedPowerSeries::TruncatedPowerSeries(FieldPtr field, std::vector<PadicNumber> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) fail(ErrorKind::InvalidArgument, "power series needs at least one coefficient");
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    coeffs_[i] = coeffs_[i].embed_into(field_);
    if (!coeffs_[i].is_integral())
      fail(ErrorKind::IntegralityViolation, "coefficient " + std::to_string(i) + " is not integral: " +
                                                coeffs_[i].to_string());
  }
}

TruncatedPowerSeries TruncatedPowerSeries::from_polynomial(const PadicPolynomial& poly, long terms) {
  if (poly.empty()) fail(ErrorKind::InvalidArgument, "empty polynomial");
  FieldPtr field = poly.front().field();
  std::vector<PadicNumber> c(terms, exact_int(field, 0));
  for (long i = 0; i < terms && i < static_cast<long>(poly.size()); ++i) c[i] = poly[i];
  return {field, std::move(c)};
}

long TruncatedPowerSeries::precision_pi() const {
  long out = PadicNumber::kExact;
  for (const auto& c : coeffs_) out = std::min(out, c.precision_pi());
  return out;
}

TruncatedPowerSeries TruncatedPowerSeries::truncated(long terms) const {
  std::vector<PadicNumber> c(coeffs_.begin(), coeffs_.begin() + std::min<long>(terms, this->terms()));
  while (static_cast<long>(c.size()) < terms) c.push_back(exact_int(field_, 0));
  return {field_, std::move(c)};
}

TruncatedPowerSeries TruncatedPowerSeries::inverse() const {
  if (!coeffs_[0].is_unit()) fail(ErrorKind::NotAUnit, "power series with non-unit constant term");
  PadicNumber inv0 = coeffs_[0].inverse();
  std::vector<PadicNumber> out(terms(), exact_int(field_, 0));
  out[0] = inv0;
  for (long n = 1; n < terms(); ++n) {
    PadicNumber acc = exact_int(field_, 0);
    for (long k = 1; k <= n; ++k) acc += coeffs_[k] * out[n - k];
    out[n] = -(acc * inv0);
  }
  return {field_, std::move(out)};
}

TruncatedPowerSeries operator+(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b) {
  FieldPtr f = series_field(a.field_, b.field_);
  long n = std::min(a.terms(), b.terms());
  std::vector<PadicNumber> c(n);
  for (long i = 0; i < n; ++i) c[i] = a.coeffs_[i] + b.coeffs_[i];
  return {f, std::move(c)};
}

TruncatedPowerSeries operator-(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b) {
  FieldPtr f = series_field(a.field_, b.field_);
  long n = std::min(a.terms(), b.terms());
  std::vector<PadicNumber> c(n);
  for (long i = 0; i < n; ++i) c[i] = a.coeffs_[i] - b.coeffs_[i];
  return {f, std::move(c)};
}

TruncatedPowerSeries operator*(const TruncatedPowerSeries& a, const TruncatedPowerSeries& b) {
  FieldPtr f = series_field(a.field_, b.field_);
  long n = std::min(a.terms(), b.terms());
  std::vector<PadicNumber> c(n, exact_int(f, 0));
  for (long i = 0; i < n; ++i) {
    if (a.coeffs_[i].is_exact_zero()) continue;
    for (long j = 0; i + j < n; ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return {f, std::move(c)};
}

WeierstrassData weierstrass_prepare(const TruncatedPowerSeries& G) {
  const FieldPtr& field = G.field();
  const long M = G.terms();
  long mu = -1;
  long lambda = -1;
  for (long i = 0; i < M; ++i) {
    if (G[i].is_zero()) continue;
    long v = G[i].valuation_pi();
    if (mu < 0 || v < mu) {
      mu = v;
      lambda = i;
    }
  }
  if (mu < 0) fail(ErrorKind::ZeroToPrecision, "power series is zero to precision");

  WeierstrassData out;
  out.mu = mu;
  out.lambda = lambda;
  // A coefficient that is zero only to precision pi^k with k <= mu could hide
  // a smaller valuation, and then mu or lambda would change.
  for (long i = 0; i < M; ++i)
    if (G[i].is_zero() && !G[i].is_exact() && G[i].precision_pi() <= mu) out.certification = Certification::MuAmbiguous;

  PadicNumber pi_inv = PadicNumber::uniformizer(field).inverse().pow(mu);
  std::vector<PadicNumber> h(M);
  for (long i = 0; i < M; ++i) {
    h[i] = G[i] * pi_inv;
    // Under the assumed mu an unresolved coefficient is at least integral.
    if (h[i].is_zero() && !h[i].is_exact() && h[i].precision_pi() < 0) h[i] = PadicNumber::zero(field, 0);
  }

  if (lambda == 0) {
    out.distinguished = {exact_int(field, 1)};
    out.unit_head = TruncatedPowerSeries(field, h);
    out.certified_precision_pi = out.unit_head.precision_pi();
    return out;
  }

  // h = P + T^lambda Q with P of degree < lambda in (pi) and Q a unit. Solve
  // q = Q^-1 (1 - tau(P q)) by fixed-point iteration; then q h = T^lambda - r.
  const long Mq = M - lambda;
  if (Mq < 1) fail(ErrorKind::PrecisionExhausted, "too few terms beyond T^lambda");
  PadicPolynomial P(h.begin(), h.begin() + lambda);
  TruncatedPowerSeries Q(field, std::vector<PadicNumber>(h.begin() + lambda, h.end()));
  TruncatedPowerSeries Qinv = Q.inverse();
  long p_val = PadicNumber::kExact;
  for (const auto& c : P)
    if (!c.is_zero()) p_val = std::min(p_val, c.valuation_pi());

  std::vector<PadicNumber> q = Qinv.coefficients();
  const long cap = G.precision_pi() + 4;
  for (long it = 0; it < std::min(cap, 4096L) && p_val != PadicNumber::kExact; ++it) {
    // tau(P q): coefficient n is sum_i P_i q_{n + lambda - i}.
    std::vector<PadicNumber> rhs(Mq, exact_int(field, 0));
    rhs[0] = exact_int(field, 1);
    for (long n = 0; n < Mq; ++n) {
      for (long i = 0; i < lambda; ++i) {
        long idx = n + lambda - i;
        if (idx < Mq && !P[i].is_exact_zero()) rhs[n] -= P[i] * q[idx];
      }
    }
    auto next = (Qinv * TruncatedPowerSeries(field, rhs)).coefficients();
    bool same = true;
    for (long n = 0; n < Mq && same; ++n) same = (next[n] - q[n]).is_zero() && next[n].precision_pi() == q[n].precision_pi();
    q = std::move(next);
    if (same) break;
  }
  // r = -(P q) restricted to degrees < lambda, and g = T^lambda - r.
  PadicPolynomial g(lambda + 1, exact_int(field, 0));
  g[lambda] = exact_int(field, 1);
  long arith = PadicNumber::kExact;
  for (long n = 0; n < lambda; ++n) {
    PadicNumber acc = exact_int(field, 0);
    for (long i = 0; i <= n; ++i)
      if (n - i < Mq) acc += P[i] * q[n - i];
    g[n] = acc;
    arith = std::min(arith, acc.precision_pi());
  }
  // Truncation at T^M perturbs the roots (valuation >= p_val/lambda) by terms
  // of valuation >= M p_val / lambda.
  long trunc = p_val == PadicNumber::kExact ? PadicNumber::kExact : p_val * (M / lambda);
  out.certified_precision_pi = std::min(arith, trunc);
  for (auto& c : g)
    if (!c.is_exact() && c.precision_pi() > out.certified_precision_pi) c = c.with_precision_pi(out.certified_precision_pi);
  if (p_val != PadicNumber::kExact && !is_distinguished(g))
    fail(ErrorKind::IntegralityViolation, "Weierstrass division did not produce a distinguished polynomial");
  out.distinguished = std::move(g);
  out.unit_head = TruncatedPowerSeries(field, q).inverse();
  return out;
}

CharacteristicData char_series(const LambdaModuleStructure& Y, const FieldPtr& field) {
  CharacteristicData out;
  for (long m : Y.mu_parts) {
    if (m <= 0) fail(ErrorKind::InvalidArgument, "mu parts must be positive");
    out.mu += m;
  }
  out.g = {exact_int(field, 1)};
  for (const auto& g : Y.poly_parts) {
    if (!is_distinguished(g)) fail(ErrorKind::InvalidArgument, "module part " + poly_to_string(g) + " is not distinguished");
    out.g = poly_mul(out.g, g);
  }
  return out;
}

namespace {

PadicNumber argument_from_unit(const PadicNumber& u) {
  if (!u.valid()) fail(ErrorKind::InvalidArgument, "uninitialised unit");
  PadicNumber d = u - PadicNumber::exact(u.field(), Rational(1));
  if (!d.is_zero() && d.valuation_pi() < 1)
    fail(ErrorKind::InvalidArgument, "u = " + u.to_string() + " is not congruent to 1 mod pi");
  return u.inverse() - PadicNumber::exact(u.field(), Rational(1));
}

}  // namespace

GammaSizeReport gamma_invariants_size(const LambdaModuleStructure& Y, const PadicNumber& u, const FieldPtr& field) {
  CharacteristicData data = char_series(Y, field);
  PadicNumber x = argument_from_unit(u);
  PadicNumber value = poly_eval(data.g, x);
  GammaSizeReport out;
  if (value.is_exact_zero()) return out;
  if (value.is_zero())
    fail(ErrorKind::IndeterminateAtPrecision, "g_Y(u^-1 - 1) is zero to precision " + std::to_string(value.precision()));
  FieldPtr ef = value.field()->kind() == ExtensionField::Kind::Base ? field : value.field();
  long e = ef->ramification_index();
  out.finite = true;
  out.ratio_valuation = value.valuation() + make_rational(data.mu, e);
  out.log_p_order = floor_of(out.ratio_valuation * ef->degree()).get_si();
  return out;
}

std::vector<CyclicSummand> coinvariants_structure(const std::vector<PadicPolynomial>& poly_parts,
                                                  const PadicNumber& u) {
  PadicNumber x = argument_from_unit(u);
  std::vector<CyclicSummand> out;
  for (const auto& g : poly_parts) {
    if (!is_distinguished(g)) fail(ErrorKind::InvalidArgument, poly_to_string(g) + " is not distinguished");
    PadicNumber v = poly_eval(g, x);
    CyclicSummand s;
    if (v.is_exact_zero()) {
      out.push_back(s);
      continue;
    }
    if (v.is_zero())
      fail(ErrorKind::IndeterminateAtPrecision, "g(u^-1 - 1) is zero to precision " + std::to_string(v.precision()));
    s.finite = true;
    s.valuation = v.valuation();
    out.push_back(s);
  }
  return out;
}

SnfReport snf_oracle(const PadicPolynomial& g, const PadicNumber& u, long precision, long max_degree) {
  if (!is_distinguished(g)) fail(ErrorKind::InvalidArgument, poly_to_string(g) + " is not distinguished");
  const long n = static_cast<long>(g.size()) - 1;
  if (n > max_degree)
    fail(ErrorKind::InvalidArgument, "degree " + std::to_string(n) + " exceeds the oracle bound " +
                                         std::to_string(max_degree));
  SnfReport out;
  if (n == 0) {
    out.finite = true;
    return out;
  }
  FieldPtr field = series_field(g.front().field(), u.field());
  auto round = [&](const PadicNumber& a) { return a.is_exact() ? a : a.with_precision(precision); };
  PadicNumber uu = round(u).embed_into(field);
  // T acts on the basis 1, T, ..., T^(n-1) by the companion matrix.
  std::vector<std::vector<PadicNumber>> A(n, std::vector<PadicNumber>(n, exact_int(field, 0)));
  for (long j = 0; j < n; ++j) {
    // column j is the image of T^j: u (T^j + T^(j+1)) - T^j
    for (long i = 0; i < n; ++i) A[i][j] = exact_int(field, 0);
    A[j][j] = uu - exact_int(field, 1);
    if (j + 1 < n) {
      A[j + 1][j] = uu;
    } else {
      for (long i = 0; i < n; ++i) A[i][j] = A[i][j] - uu * round(g[i]).embed_into(field);
    }
  }
  for (long k = 0; k < n; ++k) {
    long bi = -1, bj = -1, bv = 0;
    for (long i = k; i < n; ++i)
      for (long j = k; j < n; ++j) {
        if (A[i][j].is_zero()) continue;
        long v = A[i][j].valuation_pi();
        if (bi < 0 || v < bv) {
          bi = i;
          bj = j;
          bv = v;
        }
      }
    if (bi < 0) {
      bool all_exact = true;
      for (long i = k; i < n; ++i)
        for (long j = k; j < n; ++j) all_exact = all_exact && A[i][j].is_exact_zero();
      if (!all_exact) fail(ErrorKind::PivotAmbiguous, "remaining block is zero to precision " + std::to_string(precision));
      out.rank_deficiency = n - k;
      out.finite = false;
      return out;
    }
    std::swap(A[k], A[bi]);
    for (long i = 0; i < n; ++i) std::swap(A[i][k], A[i][bj]);
    PadicNumber inv = A[k][k].inverse();
    for (long i = k + 1; i < n; ++i) {
      if (A[i][k].is_exact_zero()) continue;
      PadicNumber f = A[i][k] * inv;
      for (long j = k; j < n; ++j) A[i][j] = A[i][j] - f * A[k][j];
    }
    for (long j = k + 1; j < n; ++j) {
      if (A[k][j].is_exact_zero()) continue;
      PadicNumber f = A[k][j] * inv;
      for (long i = k; i < n; ++i) A[i][j] = A[i][j] - f * A[i][k];
    }
    out.diagonal.push_back(A[k][k].valuation());
  }
  out.finite = true;
  out.kernel_valuation = 0;
  out.cokernel_valuation = 0;
  for (const auto& d : out.diagonal) out.cokernel_valuation += d;
  return out;
}

LambdaModuleStructure main_conjecture_link(const WeierstrassData& W, long p, long chi_order, bool assume_p2) {
  if (chi_order < 1) fail(ErrorKind::InvalidArgument, "character order must be positive");
  if (p == 2) {
    if (!assume_p2) fail(ErrorKind::HypothesisNotMet, "p = 2 needs the odd-order assumption flag");
    if (chi_order % 2 == 0) fail(ErrorKind::HypothesisNotMet, "p = 2 needs a character of odd order");
  } else if (chi_order % p == 0) {
    fail(ErrorKind::HypothesisNotMet, "p = " + std::to_string(p) + " divides the character order " +
                                          std::to_string(chi_order));
  }
  LambdaModuleStructure out;
  if (W.mu > 0) out.mu_parts.push_back(W.mu);
  out.poly_parts.push_back(W.distinguished);
  out.models = "M (x) O_E(chi)";
  return out;
}

}  // namespace iwalab
