#include "iwalab/padic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "iwalab/poly_text.hpp"

namespace iwalab {

// ---------------------------------------------------------------------------
// Integer helpers

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

long gcd_long(long a, long b) { return std::gcd(a, b); }
long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

long euler_phi(long n) {
  long out = n;
  for (long q : prime_factors(n)) out = out / q * (q - 1);
  return out;
}

long valuation_of(const Integer& n, long p) {
  if (n == 0) fail(ErrorKind::InvalidArgument, "valuation of zero");
  Integer rest;
  Integer pp = p;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

long valuation_of(const Rational& q, long p) {
  return valuation_of(Integer(q.get_num()), p) - valuation_of(Integer(q.get_den()), p);
}

Integer power_of(long base, long exponent) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exponent));
  return out;
}

Rational make_rational(long num, long den) {
  Rational out{Integer(num), Integer(den)};
  out.canonicalize();
  return out;
}

Integer floor_of(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Integer ceil_of(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void mod_reduce(Integer& x, const Integer& m) { mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()); }

Integer rational_mod(const Rational& q, const Integer& m) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), q.get_den_mpz_t(), m.get_mpz_t()) == 0)
    fail(ErrorKind::InvalidArgument, "denominator not invertible modulo p^k");
  Integer out = Integer(q.get_num()) * inv;
  mod_reduce(out, m);
  return out;
}

// --- F_p[x] helpers for the irreducibility test -----------------------------

using SmallPoly = std::vector<long>;

void trim(SmallPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long inv_mod(long a, long p) {
  Integer r;
  Integer aa = a, pp = p;
  mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), pp.get_mpz_t());
  return r.get_si();
}

SmallPoly poly_rem(SmallPoly a, const SmallPoly& f, long p) {
  trim(a);
  long lead_inv = inv_mod(f.back(), p);
  while (a.size() >= f.size()) {
    long t = a.back() * lead_inv % p;
    size_t off = a.size() - f.size();
    for (size_t i = 0; i < f.size(); ++i) a[off + i] = ((a[off + i] - t * f[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

SmallPoly poly_mulmod(const SmallPoly& a, const SmallPoly& b, const SmallPoly& f, long p) {
  if (a.empty() || b.empty()) return {};
  SmallPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_rem(r, f, p);
}

SmallPoly poly_pow_p(SmallPoly a, long p, const SmallPoly& f) {
  SmallPoly result{1};
  long e = p;
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, a, f, p);
    a = poly_mulmod(a, a, f, p);
    e >>= 1;
  }
  return result;
}

SmallPoly poly_gcd(SmallPoly a, SmallPoly b, long p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    SmallPoly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod f.
SmallPoly frobenius_power(long p, long k, const SmallPoly& f) {
  SmallPoly x = poly_rem(SmallPoly{0, 1}, f, p);
  for (long i = 0; i < k; ++i) x = poly_pow_p(x, p, f);
  return x;
}

SmallPoly minus_x(SmallPoly a, long p) {
  if (a.size() < 2) a.resize(2, 0);
  a[1] = (a[1] - 1 + p) % p;
  trim(a);
  return a;
}

std::vector<Integer> cyclotomic_shifted(long p, int level) {
  // Phi_{p^k}(y) = sum_{i<p} y^(i p^(k-1)); substitute y = x + 1.
  long step = power_of(p, level - 1).get_si();
  long deg = (p - 1) * step;
  std::vector<Integer> out(deg + 1, 0);
  for (long i = 0; i < p; ++i) {
    long n = i * step;
    Integer binom = 1;
    for (long j = 0; j <= n; ++j) {
      out[j] += binom;
      binom = binom * (n - j) / (j + 1);
    }
  }
  return out;
}

}  // namespace

namespace detail {

std::vector<Integer> ring_mul(const ExtensionField& field, const std::vector<Integer>& a,
                              const std::vector<Integer>& b, const Integer& mod) {
  const int n = field.degree();
  if (n == 1) {
    Integer r = a[0] * b[0];
    if (mod != 0) mod_reduce(r, mod);
    return {r};
  }
  std::vector<Integer> r(2 * n - 1, 0);
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n; ++j) r[i + j] += a[i] * b[j];
  }
  const auto& m = field.modulus();
  for (int i = 2 * n - 2; i >= n; --i) {
    if (r[i] == 0) continue;
    Integer t = r[i];
    for (int j = 0; j < n; ++j) r[i - n + j] -= t * m[j];
  }
  r.resize(n);
  if (mod != 0)
    for (auto& x : r) mod_reduce(x, mod);
  return r;
}

std::vector<Integer> ring_pow(const ExtensionField& field, std::vector<Integer> a, Integer n,
                              const Integer& mod) {
  std::vector<Integer> result(field.degree(), 0);
  result[0] = 1;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) result = ring_mul(field, result, a, mod);
    n >>= 1;
    if (n > 0) a = ring_mul(field, a, a, mod);
  }
  return result;
}

std::vector<Integer> ring_unit_inverse(const ExtensionField& field, const std::vector<Integer>& u,
                                       long k) {
  const long p = field.p();
  const Integer mod = field.p_power(k);
  const int n = field.degree();
  if (n == 1) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), u[0].get_mpz_t(), mod.get_mpz_t()) == 0)
      fail(ErrorKind::NotAUnit, "element is not a unit");
    return {r};
  }
  std::vector<Integer> z(n, 0);
  const Integer pp = p;
  if (field.residue_degree() == 1) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), u[0].get_mpz_t(), pp.get_mpz_t()) == 0)
      fail(ErrorKind::NotAUnit, "element is not a unit");
    z[0] = r;
  } else {
    std::vector<Integer> ur = u;
    for (auto& x : ur) mod_reduce(x, pp);
    Integer e = power_of(p, field.residue_degree()) - 2;
    z = ring_pow(field, ur, e, pp);
  }
  // Each step doubles the pi-adic accuracy.
  long target = static_cast<long>(field.ramification_index()) * k;
  for (long have = 1; have < target; have *= 2) {
    auto uz = ring_mul(field, u, z, mod);
    for (auto& x : uz) x = -x;
    uz[0] += 2;
    z = ring_mul(field, z, uz, mod);
  }
  return z;
}

bool is_irreducible_mod_p(const std::vector<Integer>& monic, long p) {
  SmallPoly f;
  for (const auto& c : monic) {
    Integer r = c;
    mod_reduce(r, Integer(p));
    f.push_back(r.get_si());
  }
  trim(f);
  long n = static_cast<long>(f.size()) - 1;
  if (n < 1) return false;
  if (n == 1) return true;
  SmallPoly xn = frobenius_power(p, n, f);
  if (minus_x(xn, p).size() != 0) return false;
  for (long r : prime_factors(n)) {
    SmallPoly h = minus_x(frobenius_power(p, n / r, f), p);
    SmallPoly g = poly_gcd(f, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// ExtensionField

ExtensionField::ExtensionField(Key, long p, Kind kind, std::vector<Integer> modulus)
    : p_(p), kind_(kind), degree_(static_cast<int>(modulus.size()) - 1), modulus_(std::move(modulus)) {
  p_powers_.reserve(257);
  Integer acc = 1;
  for (int k = 0; k <= 256; ++k) {
    p_powers_.push_back(acc);
    acc *= p_;
  }
  if (kind_ == Kind::Eisenstein) {
    long step = 1;
    for (int level = 1; (p_ - 1) * step <= degree_; ++level, step *= p_) {
      if ((p_ - 1) * step == degree_ && modulus_ == cyclotomic_shifted(p_, level)) cyclotomic_level_ = level;
    }
  }
}

FieldPtr ExtensionField::base(long p) {
  if (!is_prime(p)) fail(ErrorKind::InvalidField, "p = " + std::to_string(p) + " is not prime");
  return std::make_shared<const ExtensionField>(Key{}, p, Kind::Base, std::vector<Integer>{0, 1});
}

FieldPtr ExtensionField::unramified(long p, std::vector<Integer> m) {
  if (!is_prime(p)) fail(ErrorKind::InvalidField, "p = " + std::to_string(p) + " is not prime");
  while (!m.empty() && m.back() == 0) m.pop_back();
  if (m.size() < 3 || m.back() != 1) fail(ErrorKind::InvalidField, "unramified modulus must be monic of degree >= 2");
  if (!detail::is_irreducible_mod_p(m, p))
    fail(ErrorKind::InvalidField, "unramified modulus is reducible mod " + std::to_string(p));
  return std::make_shared<const ExtensionField>(Key{}, p, Kind::Unramified, std::move(m));
}

FieldPtr ExtensionField::eisenstein(long p, std::vector<Integer> m) {
  if (!is_prime(p)) fail(ErrorKind::InvalidField, "p = " + std::to_string(p) + " is not prime");
  while (!m.empty() && m.back() == 0) m.pop_back();
  if (m.size() < 3 || m.back() != 1) fail(ErrorKind::InvalidField, "Eisenstein modulus must be monic of degree >= 2");
  for (size_t i = 0; i + 1 < m.size(); ++i)
    if (m[i] % p != 0) fail(ErrorKind::InvalidField, "Eisenstein modulus has a non-leading unit coefficient");
  if (valuation_of(m[0], p) != 1)
    fail(ErrorKind::InvalidField, "Eisenstein modulus needs constant term of valuation exactly 1");
  return std::make_shared<const ExtensionField>(Key{}, p, Kind::Eisenstein, std::move(m));
}

FieldPtr ExtensionField::cyclotomic(long p, int level) {
  if (level < 1 || (p == 2 && level < 2))
    fail(ErrorKind::InvalidField, "cyclotomic level too small for p = " + std::to_string(p));
  return eisenstein(p, cyclotomic_shifted(p, level));
}

FieldPtr ExtensionField::unramified_of_degree(long p, int f) {
  if (f == 1) return base(p);
  // Enumerate monic polynomials by the integer sum c_i p^i of their lower coefficients.
  Integer limit = power_of(p, f);
  for (Integer code = 0; code < limit; ++code) {
    std::vector<Integer> m(f + 1, 0);
    Integer c = code;
    for (int i = 0; i < f; ++i) {
      m[i] = c % p;
      c /= p;
    }
    m[f] = 1;
    if (detail::is_irreducible_mod_p(m, p)) return unramified(p, m);
  }
  fail(ErrorKind::InvalidField, "no irreducible polynomial found");
}

FieldPtr ExtensionField::parse(long p, std::string_view text) {
  auto strip = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = strip(text);
  if (text == "Qp" || text == "Q" + std::to_string(p)) return base(p);
  auto starts = [&](std::string_view prefix) { return text.substr(0, prefix.size()) == prefix; };
  if (starts("unram:")) return unramified(p, parse_integer_polynomial(text.substr(6), 'x'));
  if (starts("eis:")) return eisenstein(p, parse_integer_polynomial(text.substr(4), 'x'));
  if (starts("cyc:")) {
    std::string level(text.substr(4));
    try {
      return cyclotomic(p, std::stoi(level));
    } catch (const std::logic_error&) {
      fail(ErrorKind::ParseError, "bad cyclotomic level '" + level + "'");
    }
  }
  fail(ErrorKind::ParseError, "unknown field description '" + std::string(text) + "'");
}

std::string ExtensionField::description() const {
  std::vector<Rational> m(modulus_.begin(), modulus_.end());
  switch (kind_) {
    case Kind::Base:
      return "Qp";
    case Kind::Unramified:
      return "unram:" + format_polynomial(m, 'x');
    case Kind::Eisenstein:
      return "eis:" + format_polynomial(m, 'x');
  }
  return "";
}

std::string ExtensionField::uniformizer_description() const { return kind_ == Kind::Eisenstein ? "x" : "p"; }

bool ExtensionField::same_as(const ExtensionField& other) const {
  return this == &other || (p_ == other.p_ && kind_ == other.kind_ && modulus_ == other.modulus_);
}

Integer ExtensionField::p_power(long k) const {
  if (k < 0) fail(ErrorKind::InvalidArgument, "negative power of p");
  if (k < static_cast<long>(p_powers_.size())) return p_powers_[k];
  return power_of(p_, k);
}

// ---------------------------------------------------------------------------
// PadicNumber

namespace {

void require_valid(const PadicNumber& x) {
  if (!x.valid()) fail(ErrorKind::InvalidArgument, "use of an uninitialised p-adic number");
}

FieldPtr common_field(const PadicNumber& x, const PadicNumber& y) {
  require_valid(x);
  require_valid(y);
  const FieldPtr& a = x.field();
  const FieldPtr& b = y.field();
  if (a == b || a->same_as(*b)) return a;
  if (a->p() == b->p()) {
    if (a->kind() == ExtensionField::Kind::Base) return b;
    if (b->kind() == ExtensionField::Kind::Base) return a;
  }
  fail(ErrorKind::FieldMismatch, "operands live in different fields: " + a->description() + " and " +
                                     b->description() + " (p = " + std::to_string(a->p()) + ", " +
                                     std::to_string(b->p()) + ")");
}

std::vector<Rational> rat_mul(const ExtensionField& field, const std::vector<Rational>& a,
                              const std::vector<Rational>& b) {
  const int n = field.degree();
  std::vector<Rational> r(2 * n - 1, 0);
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n; ++j) r[i + j] += a[i] * b[j];
  }
  const auto& m = field.modulus();
  for (int i = 2 * n - 2; i >= n; --i) {
    if (r[i] == 0) continue;
    Rational t = r[i];
    for (int j = 0; j < n; ++j) r[i - n + j] -= t * m[j];
  }
  r.resize(n);
  return r;
}

}  // namespace

long PadicNumber::p() const {
  require_valid(*this);
  return field_->p();
}

PadicNumber PadicNumber::exact(const FieldPtr& field, const Rational& value) {
  std::vector<Rational> coords(field->degree(), 0);
  coords[0] = value;
  return exact(field, std::move(coords));
}

PadicNumber PadicNumber::exact(const FieldPtr& field, std::vector<Rational> coords) {
  if (static_cast<int>(coords.size()) > field->degree())
    fail(ErrorKind::InvalidArgument, "too many coordinates for the field degree");
  coords.resize(field->degree(), 0);
  PadicNumber out;
  out.field_ = field;
  out.exact_ = true;
  out.q_ = std::move(coords);
  for (auto& q : out.q_) q.canonicalize();
  out.compute_exact_valuation();
  return out;
}

void PadicNumber::compute_exact_valuation() {
  zero_ = true;
  const long e = field_->ramification_index();
  const bool eis = field_->kind() == ExtensionField::Kind::Eisenstein;
  for (size_t i = 0; i < q_.size(); ++i) {
    if (q_[i] == 0) continue;
    long v = e * valuation_of(q_[i], field_->p()) + (eis ? static_cast<long>(i) : 0);
    if (zero_ || v < val_pi_) val_pi_ = v;
    zero_ = false;
  }
}

PadicNumber PadicNumber::from_rational(const FieldPtr& field, const Rational& value, long prec) {
  return exact(field, value).rounded(prec);
}

PadicNumber PadicNumber::from_coords(const FieldPtr& field, std::vector<Integer> coords, long shift,
                                     long prec) {
  return from_coords_pi(field, std::move(coords), shift, prec * field->ramification_index());
}

PadicNumber PadicNumber::from_coords_pi(const FieldPtr& field, std::vector<Integer> coords, long shift,
                                        long prec_pi) {
  if (static_cast<int>(coords.size()) > field->degree())
    fail(ErrorKind::InvalidArgument, "too many coordinates for the field degree");
  coords.resize(field->degree(), 0);
  PadicNumber out;
  out.field_ = field;
  out.exact_ = false;
  out.prec_pi_ = prec_pi;
  out.shift_ = shift;
  out.c_ = std::move(coords);
  out.normalize();
  return out;
}

PadicNumber PadicNumber::zero(const FieldPtr& field, long prec) {
  return from_coords(field, {}, prec, prec);
}

PadicNumber PadicNumber::generator(const FieldPtr& field) {
  if (field->degree() == 1) return exact(field, Rational(0));
  std::vector<Rational> coords(field->degree(), 0);
  coords[1] = 1;
  return exact(field, std::move(coords));
}

PadicNumber PadicNumber::uniformizer(const FieldPtr& field) {
  if (field->kind() == ExtensionField::Kind::Eisenstein) return generator(field);
  return exact(field, Rational(field->p()));
}

void PadicNumber::normalize() {
  const long p = field_->p();
  const long n = field_->degree();
  const long e = field_->ramification_index();
  const bool eis = field_->kind() == ExtensionField::Kind::Eisenstein;
  const long top = floor_div(prec_pi_ + e - 1, e);
  long k = top - shift_;
  if (k <= 0) {
    zero_ = true;
    shift_ = top;
    c_.assign(n, 0);
    return;
  }
  // Coordinate i is known modulo p^(ceil((prec_pi - i)/e) - shift) since v(x^i) = i/e.
  long content = -1;
  for (long i = 0; i < n; ++i) {
    auto& c = c_[i];
    long ki = eis ? floor_div(prec_pi_ - i + e - 1, e) - shift_ : k;
    if (ki <= 0) {
      c = 0;
      continue;
    }
    mod_reduce(c, field_->p_power(ki));
    if (c != 0) {
      long v = valuation_of(c, p);
      content = content < 0 ? v : std::min(content, v);
    }
  }
  if (content < 0) {
    zero_ = true;
    shift_ = top;
    c_.assign(n, 0);
    return;
  }
  zero_ = false;
  if (content > 0) {
    const Integer d = field_->p_power(content);
    for (auto& c : c_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    shift_ += content;
  }
  long best = -1;
  for (long i = 0; i < n; ++i) {
    if (c_[i] == 0) continue;
    long v = e * valuation_of(c_[i], p) + (eis ? i : 0);
    if (best < 0 || v < best) best = v;
  }
  val_pi_ = e * shift_ + best;
}

bool PadicNumber::is_zero() const {
  require_valid(*this);
  return zero_;
}

long PadicNumber::valuation_pi() const {
  require_valid(*this);
  if (!zero_) return val_pi_;
  return exact_ ? kExact : prec_pi_;
}

long PadicNumber::precision() const {
  if (exact_) return kExact;
  require_valid(*this);
  return floor_div(prec_pi_, field_->ramification_index());
}

long PadicNumber::precision_pi() const {
  if (exact_) return kExact;
  require_valid(*this);
  return prec_pi_;
}

Rational PadicNumber::valuation() const {
  require_valid(*this);
  if (zero_) fail(ErrorKind::ZeroToPrecision, "element is zero to precision " + std::to_string(precision()));
  return make_rational(val_pi_, field_->ramification_index());
}

Rational PadicNumber::valuation_bound() const {
  require_valid(*this);
  if (!zero_) return valuation();
  if (exact_) return Rational(kExact);
  return make_rational(prec_pi_, field_->ramification_index());
}

bool PadicNumber::is_unit() const { return !is_zero() && val_pi_ == 0; }
bool PadicNumber::is_integral() const { return is_zero() ? (exact_ || prec_pi_ >= 0) : val_pi_ >= 0; }

PadicNumber PadicNumber::with_precision(long prec) const {
  require_valid(*this);
  if (exact_) return rounded(prec);
  return with_precision_pi(prec * field_->ramification_index());
}

PadicNumber PadicNumber::with_precision_pi(long prec_pi) const {
  require_valid(*this);
  const long e = field_->ramification_index();
  if (exact_) return rounded(floor_div(prec_pi + e - 1, e)).with_precision_pi(prec_pi);
  if (prec_pi >= prec_pi_) return *this;
  PadicNumber out = *this;
  out.prec_pi_ = prec_pi;
  out.normalize();
  return out;
}

PadicNumber PadicNumber::rounded(long prec) const {
  require_valid(*this);
  if (!exact_) return with_precision(prec);
  if (zero_) return zero(field_, prec);
  const long p = field_->p();
  long s = 0;
  bool first = true;
  for (const auto& q : q_) {
    if (q == 0) continue;
    long v = valuation_of(q, p);
    s = first ? v : std::min(s, v);
    first = false;
  }
  long k = prec - s;
  if (k <= 0) return zero(field_, prec);
  const Integer m = field_->p_power(k);
  std::vector<Integer> coords(q_.size(), 0);
  Rational scale = s >= 0 ? Rational(1, 1) / Rational(field_->p_power(s)) : Rational(field_->p_power(-s));
  for (size_t i = 0; i < q_.size(); ++i) {
    if (q_[i] == 0) continue;
    Rational t = q_[i] * scale;
    t.canonicalize();
    coords[i] = rational_mod(t, m);
  }
  return from_coords(field_, std::move(coords), s, prec);
}

std::vector<Rational> PadicNumber::rational_coords() const {
  require_valid(*this);
  if (exact_) return q_;
  std::vector<Rational> out(c_.size(), 0);
  if (zero_) return out;
  Rational scale = shift_ >= 0 ? Rational(field_->p_power(shift_)) : Rational(1, 1) / Rational(field_->p_power(-shift_));
  for (size_t i = 0; i < c_.size(); ++i) {
    out[i] = Rational(c_[i]) * scale;
    out[i].canonicalize();
  }
  return out;
}

std::vector<Integer> PadicNumber::integer_coords(long k) const {
  require_valid(*this);
  if (!is_integral()) fail(ErrorKind::IntegralityViolation, "element is not integral: " + to_string());
  const Integer m = field_->p_power(std::max(k, 0L));
  std::vector<Integer> out(field_->degree(), 0);
  if (zero_) return out;
  if (exact_) {
    for (size_t i = 0; i < q_.size(); ++i)
      if (q_[i] != 0) out[i] = rational_mod(q_[i], m);
    return out;
  }
  const Integer scale = field_->p_power(shift_);
  for (size_t i = 0; i < c_.size(); ++i) {
    out[i] = c_[i] * scale;
    mod_reduce(out[i], m);
  }
  return out;
}

Rational PadicNumber::to_rational() const {
  auto coords = rational_coords();
  for (size_t i = 1; i < coords.size(); ++i)
    if (coords[i] != 0) fail(ErrorKind::InvalidArgument, "element does not lie in Q_p: " + to_string());
  return coords[0];
}

PadicNumber PadicNumber::embed_into(const FieldPtr& target) const {
  require_valid(*this);
  if (field_ == target || field_->same_as(*target)) return *this;
  if (field_->kind() != ExtensionField::Kind::Base || field_->p() != target->p())
    fail(ErrorKind::FieldMismatch, "cannot embed " + field_->description() + " into " + target->description());
  if (exact_) return exact(target, q_[0]);
  return from_coords_pi(target, c_, shift_, prec_pi_ * target->ramification_index());
}

PadicNumber PadicNumber::operator-() const {
  require_valid(*this);
  PadicNumber out = *this;
  if (exact_) {
    for (auto& q : out.q_) q = -q;
    return out;
  }
  for (auto& c : out.c_) c = -c;
  out.normalize();
  return out;
}

PadicNumber operator+(const PadicNumber& x0, const PadicNumber& y0) {
  FieldPtr f = common_field(x0, y0);
  PadicNumber x = x0.embed_into(f);
  PadicNumber y = y0.embed_into(f);
  if (x.exact_ && y.exact_) {
    std::vector<Rational> c(x.q_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = x.q_[i] + y.q_[i];
    return PadicNumber::exact(f, std::move(c));
  }
  const long e = f->ramification_index();
  if (x.exact_) x = x.rounded(floor_div(y.prec_pi_ + e - 1, e));
  if (y.exact_) y = y.rounded(floor_div(x.prec_pi_ + e - 1, e));
  const long prec = std::min(x.prec_pi_, y.prec_pi_);
  if (x.zero_) return y.with_precision_pi(prec);
  if (y.zero_) return x.with_precision_pi(prec);
  const long s = std::min(x.shift_, y.shift_);
  const Integer sx = f->p_power(x.shift_ - s);
  const Integer sy = f->p_power(y.shift_ - s);
  std::vector<Integer> c(x.c_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = x.c_[i] * sx + y.c_[i] * sy;
  return PadicNumber::from_coords_pi(f, std::move(c), s, prec);
}

PadicNumber operator-(const PadicNumber& x, const PadicNumber& y) { return x + (-y); }

PadicNumber operator*(const PadicNumber& x0, const PadicNumber& y0) {
  FieldPtr f = common_field(x0, y0);
  PadicNumber x = x0.embed_into(f);
  PadicNumber y = y0.embed_into(f);
  const long e = f->ramification_index();
  if (x.exact_ && y.exact_) return PadicNumber::exact(f, rat_mul(*f, x.q_, y.q_));
  if (y.exact_) std::swap(x, y);
  if (x.exact_) {
    if (x.zero_) return x;
    // Round the exact factor just finely enough not to limit the product.
    long target_pi = y.prec_pi_ + x.val_pi_ - y.valuation_pi();
    long need = floor_div(target_pi + e - 1, e) + 1;
    x = x.rounded(need);
  }
  const long vx = x.valuation_pi();
  const long vy = y.valuation_pi();
  const long prec = std::min(x.prec_pi_ + vy, y.prec_pi_ + vx);
  const long top = floor_div(prec + e - 1, e);
  if (x.zero_ || y.zero_) return PadicNumber::from_coords_pi(f, {}, top, prec);
  const long shift = x.shift_ + y.shift_;
  if (top - shift <= 0) return PadicNumber::from_coords_pi(f, {}, top, prec);
  auto c = detail::ring_mul(*f, x.c_, y.c_, f->p_power(top - shift));
  return PadicNumber::from_coords_pi(f, std::move(c), shift, prec);
}

PadicNumber operator/(const PadicNumber& x, const PadicNumber& y) {
  common_field(x, y);
  if (y.is_zero())
    fail(ErrorKind::DivisionByPrecisionZero, "division by an element that is zero to precision " +
                                                 std::to_string(y.precision()));
  return x * y.inverse();
}

PadicNumber PadicNumber::inverse() const {
  require_valid(*this);
  if (zero_)
    fail(ErrorKind::DivisionByPrecisionZero, "inverse of an element that is zero to precision " +
                                                 std::to_string(precision()));
  return exact_ ? exact_inverse() : approx_inverse();
}

PadicNumber PadicNumber::exact_inverse() const {
  const int n = field_->degree();
  if (n == 1) return exact(field_, Rational(1) / q_[0]);
  // Solve (multiplication by this) z = 1 over Q.
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1, 0));
  std::vector<Rational> basis(n, 0);
  for (int j = 0; j < n; ++j) {
    std::fill(basis.begin(), basis.end(), Rational(0));
    basis[j] = 1;
    auto col = rat_mul(*field_, q_, basis);
    for (int i = 0; i < n; ++i) a[i][j] = col[i];
  }
  a[0][n] = 1;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) fail(ErrorKind::InvalidField, "modulus is not irreducible over Q");
    std::swap(a[piv], a[col]);
    Rational inv = Rational(1) / a[col][col];
    for (int j = col; j <= n; ++j) a[col][j] *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      Rational t = a[i][col];
      for (int j = col; j <= n; ++j) a[i][j] -= t * a[col][j];
    }
  }
  std::vector<Rational> z(n);
  for (int i = 0; i < n; ++i) z[i] = a[i][n];
  return exact(field_, std::move(z));
}

PadicNumber PadicNumber::approx_inverse() const {
  const long e = field_->ramification_index();
  const long vy = val_pi_;
  const long result_pi = prec_pi_ - 2 * vy;
  const long result_prec = floor_div(result_pi + e - 1, e);
  const long s = shift_;
  const long j = vy - e * s;  // pi-adic valuation of the unit-coordinate part, in [0, e)
  const long k = result_prec + s + j;
  if (k <= 0) return from_coords_pi(field_, {}, result_prec, result_pi);
  if (j == 0) {
    auto z = detail::ring_unit_inverse(*field_, c_, k);
    return from_coords_pi(field_, std::move(z), -s, result_pi);
  }
  // Eisenstein with a non-unit coordinate part: strip pi^j using w = p/pi.
  const int n = field_->degree();
  const auto& m = field_->modulus();
  const Integer mod_hi = field_->p_power(k + j);
  Integer u0 = m[0] / field_->p();
  Integer u0_inv;
  mpz_invert(u0_inv.get_mpz_t(), u0.get_mpz_t(), mod_hi.get_mpz_t());
  std::vector<Integer> w(n, 0);
  for (int i = 0; i + 1 < n; ++i) w[i] = -m[i + 1] * u0_inv;
  w[n - 1] = -u0_inv;
  for (auto& c : w) mod_reduce(c, mod_hi);
  auto wj = detail::ring_pow(*field_, w, Integer(j), mod_hi);
  auto yw = detail::ring_mul(*field_, c_, wj, mod_hi);
  const Integer pj = field_->p_power(j);
  for (auto& c : yw) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pj.get_mpz_t());
  auto uinv = detail::ring_unit_inverse(*field_, yw, k);
  auto z = detail::ring_mul(*field_, uinv, wj, field_->p_power(k));
  return from_coords_pi(field_, std::move(z), -s - j, result_pi);
}

PadicNumber PadicNumber::pow(long n) const {
  require_valid(*this);
  if (n == 0) return exact(field_, Rational(1));
  if (n < 0) return inverse().pow(-n);
  PadicNumber base = *this;
  PadicNumber result = exact(field_, Rational(1));
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

std::string PadicNumber::to_string() const {
  if (!valid()) return "<invalid>";
  auto coords = rational_coords();
  std::string body = field_->degree() == 1 ? coords[0].get_str() : format_polynomial(coords, 'x');
  if (exact_) return body;
  Rational r = make_rational(prec_pi_, field_->ramification_index());
  std::string exponent = r.get_den() == 1 ? r.get_str() : "(" + r.get_str() + ")";
  return body + " + O(" + std::to_string(field_->p()) + "^" + exponent + ")";
}

bool equal_to_precision(const PadicNumber& a, const PadicNumber& b) { return (a - b).is_zero(); }

// ---------------------------------------------------------------------------
// Frame and transcendental functions

CyclotomicFrame CyclotomicFrame::for_prime(long p) {
  if (!is_prime(p)) fail(ErrorKind::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
  CyclotomicFrame f;
  f.p = p;
  f.q0 = p == 2 ? 4 : p;
  f.q = p == 2 ? 5 : p + 1;
  f.domain_valuation_floor = make_rational(1, p - 1) - Rational(p == 2 ? 2 : 1);
  return f;
}

Rational CyclotomicFrame::kappa() const { return Rational(p == 2 ? 2 : 1); }

namespace {

long resolve_precision(const PadicNumber& x, std::optional<long> prec, const char* what) {
  require_valid(x);
  if (x.is_exact()) {
    if (!prec) fail(ErrorKind::InvalidArgument, std::string(what) + " of an exact element needs a precision");
    return *prec;
  }
  return prec ? std::min(*prec, x.precision()) : x.precision();
}

}  // namespace

PadicNumber teichmuller(const PadicNumber& z, std::optional<long> prec) {
  const long target = resolve_precision(z, prec, "teichmuller");
  const auto& field = z.field();
  if (field->kind() == ExtensionField::Kind::Eisenstein)
    fail(ErrorKind::RamifiedFieldUnsupported, "Teichmüller lift needs an unramified field");
  PadicNumber x = z.rounded(target);
  if (!x.is_unit()) fail(ErrorKind::NotAUnit, "Teichmüller lift of a non-unit " + z.to_string());
  const long p = field->p();
  if (p == 2 && field->kind() == ExtensionField::Kind::Base) {
    Integer r = x.integer_coords(2)[0];
    return PadicNumber::from_rational(field, Rational(r == 1 ? 1 : -1), target);
  }
  const Integer mod = field->p_power(target);
  const Integer q = power_of(p, field->residue_degree());
  auto y = x.integer_coords(target);
  for (long i = 0; i <= target + 1; ++i) {
    auto next = detail::ring_pow(*field, y, q, mod);
    if (next == y) break;
    y = std::move(next);
  }
  return PadicNumber::from_coords(field, std::move(y), 0, target);
}

DiamondParts diamond_decompose(const PadicNumber& z, std::optional<long> prec) {
  const long target = resolve_precision(z, prec, "diamond decomposition");
  PadicNumber x = z.rounded(target);
  if (!x.is_unit()) fail(ErrorKind::NotAUnit, "diamond decomposition of a non-unit " + z.to_string());
  PadicNumber omega = teichmuller(x);
  return {omega, x * omega.inverse()};
}

PadicNumber plog(const PadicNumber& x, std::optional<long> prec, long term_cap) {
  const long target = resolve_precision(x, prec, "plog");
  const auto& field = x.field();
  const long p = field->p();
  PadicNumber y = x.rounded(target) - PadicNumber::exact(field, Rational(1));
  if (y.is_zero()) return PadicNumber::zero(field, target);
  const Rational v = y.valuation();
  if (v <= 0)
    fail(ErrorKind::OutsideConvergenceDomain,
         "plog needs v(x-1) > 0; got v(x-1) = " + v.get_str());
  // Largest n violating n*v - floor(log_p n) >= target, scanning p-power blocks.
  long last_bad = 0;
  Integer block = 1;
  for (long k = 0;; ++k) {
    Integer first_good = ceil_of(Rational(target + k) / v);
    if (first_good <= block) break;
    Integer block_end = block * p - 1;
    Integer bad = std::min(block_end, Integer(first_good - 1));
    if (bad > term_cap)
      fail(ErrorKind::PrecisionExhausted, "plog needs more than " + std::to_string(term_cap) + " terms");
    last_bad = bad.get_si();
    block *= p;
  }
  PadicNumber sum = PadicNumber::zero(field, target);
  PadicNumber power = y;
  for (long n = 1; n <= last_bad; ++n) {
    PadicNumber term = power * PadicNumber::exact(field, make_rational(n % 2 == 1 ? 1 : -1, n));
    sum += term;
    if (n < last_bad) power *= y;
  }
  return sum.with_precision(target);
}

PadicNumber pexp(const PadicNumber& x, std::optional<long> prec, long term_cap) {
  const long target = resolve_precision(x, prec, "pexp");
  const auto& field = x.field();
  const long p = field->p();
  PadicNumber y = x.rounded(target);
  PadicNumber one = PadicNumber::exact(field, Rational(1));
  if (y.is_zero()) return one.rounded(target);
  const Rational v = y.valuation();
  const Rational c = make_rational(1, p - 1);
  if (v <= c)
    fail(ErrorKind::OutsideConvergenceDomain,
         "pexp needs v(x) > 1/(p-1); got v(x) = " + v.get_str());
  // Terms from n0 on satisfy n(v - c) + c >= target.
  Integer n0 = ceil_of((Rational(target) - c) / (v - c));
  if (n0 > term_cap)
    fail(ErrorKind::PrecisionExhausted, "pexp needs more than " + std::to_string(term_cap) + " terms");
  long terms = std::max(1L, n0.get_si());
  PadicNumber sum = one;
  PadicNumber term = one;
  for (long n = 1; n < terms; ++n) {
    term = term * y * PadicNumber::exact(field, make_rational(1, n));
    sum += term;
  }
  return sum.with_precision(target);
}

PadicNumber diamond_pow(const PadicNumber& z, const PadicNumber& e, const CyclotomicFrame& frame,
                        std::optional<long> prec) {
  require_valid(e);
  if (z.p() != frame.p || e.p() != frame.p)
    fail(ErrorKind::FieldMismatch, "diamond_pow: prime of the frame does not match its arguments");
  const long target = resolve_precision(z, prec, "diamond_pow");
  if (e.is_exact_zero()) return PadicNumber::exact(e.field(), Rational(1));
  DiamondParts parts = diamond_decompose(z, target);
  PadicNumber log = plog(parts.angle, target);
  PadicNumber arg = e * log;
  const Rational c = make_rational(1, frame.p - 1);
  if (arg.valuation_bound() <= c)
    fail(ErrorKind::OutsideConvergenceDomain,
         "diamond_pow needs v(e log<z>) > 1/(p-1); got " + arg.valuation_bound().get_str());
  return pexp(arg, std::min(target, arg.precision()));
}

bool in_twist_domain(const PadicNumber& e, const CyclotomicFrame& frame, bool excludes_one) {
  require_valid(e);
  if (!(e.valuation_bound() > frame.domain_valuation_floor)) return false;
  if (excludes_one && (e - PadicNumber::exact(e.field(), Rational(1))).is_zero()) return false;
  return true;
}

}  // namespace iwalab
