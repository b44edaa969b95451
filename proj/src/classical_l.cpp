#include "iwalab/classical_l.hpp"

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include "json.hpp"

namespace iwalab {

namespace {

std::mutex cyclotomic_mutex;
std::map<long, std::vector<Integer>> cyclotomic_table;

std::vector<Integer> poly_div_exact(std::vector<Integer> num, const std::vector<Integer>& den) {
  // den monic; returns the quotient and requires a zero remainder.
  size_t dn = den.size() - 1;
  std::vector<Integer> quot(num.size() - dn, 0);
  for (size_t i = num.size(); i-- > dn;) {
    Integer c = num[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (size_t i = 0; i < dn; ++i)
    if (num[i] != 0) fail(ErrorKind::InvalidArgument, "cyclotomic division left a remainder");
  return quot;
}

void check_order(long d) {
  if (d < 1 || d > CyclotomicValue::kMaxOrder)
    fail(ErrorKind::InvalidArgument, "cyclotomic order " + std::to_string(d) + " outside [1, 2^20]");
}

// Reduce sum poly[i] zeta^i modulo Phi_d.
std::vector<Rational> reduce_mod_phi(std::vector<Rational> poly, long d) {
  const auto phi = cyclotomic_polynomial(d);
  size_t deg = phi.size() - 1;
  for (size_t i = poly.size(); i-- > deg;) {
    Rational c = poly[i];
    if (c == 0) continue;
    for (size_t j = 0; j <= deg; ++j) poly[i - deg + j] -= c * phi[j];
  }
  poly.resize(deg, Rational(0));
  return poly;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(long d) {
  check_order(d);
  {
    std::lock_guard lock(cyclotomic_mutex);
    auto it = cyclotomic_table.find(d);
    if (it != cyclotomic_table.end()) return it->second;
  }
  std::vector<Integer> poly(d + 1, 0);
  poly[0] = -1;
  poly[d] = 1;
  for (long e = 1; e < d; ++e)
    if (d % e == 0) poly = poly_div_exact(poly, cyclotomic_polynomial(e));
  std::lock_guard lock(cyclotomic_mutex);
  cyclotomic_table.emplace(d, poly);
  return poly;
}

CyclotomicValue::CyclotomicValue(long order) : order_(order) {
  check_order(order);
  coords_.assign(euler_phi(order), Rational(0));
}

CyclotomicValue CyclotomicValue::rational(const Rational& value, long order) {
  CyclotomicValue out(order);
  out.coords_[0] = value;
  return out;
}

CyclotomicValue CyclotomicValue::root_power(long order, long k) {
  std::vector<Rational> sums(order, Rational(0));
  sums[((k % order) + order) % order] = 1;
  return from_exponent_sums(order, sums);
}

CyclotomicValue CyclotomicValue::from_exponent_sums(long order, const std::vector<Rational>& by_exponent) {
  CyclotomicValue out(order);
  std::vector<Rational> poly(order, Rational(0));
  for (size_t i = 0; i < by_exponent.size(); ++i) poly[i % order] += by_exponent[i];
  out.coords_ = reduce_mod_phi(std::move(poly), order);
  return out;
}

bool CyclotomicValue::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool CyclotomicValue::is_rational() const {
  for (size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

Rational CyclotomicValue::as_rational() const {
  if (!is_rational()) fail(ErrorKind::InvalidArgument, "cyclotomic value " + to_string() + " is not rational");
  return coords_[0];
}

CyclotomicValue CyclotomicValue::in_order(long multiple) const {
  if (multiple % order_ != 0)
    fail(ErrorKind::InvalidArgument, "order " + std::to_string(multiple) + " is not a multiple of " +
                                         std::to_string(order_));
  if (multiple == order_) return *this;
  long step = multiple / order_;
  std::vector<Rational> sums(multiple, Rational(0));
  for (size_t i = 0; i < coords_.size(); ++i) sums[i * step] = coords_[i];
  return from_exponent_sums(multiple, sums);
}

CyclotomicValue CyclotomicValue::galois(long a) const {
  if (gcd_long(a, order_) != 1)
    fail(ErrorKind::InvalidArgument, "Galois twist " + std::to_string(a) + " is not prime to " +
                                         std::to_string(order_));
  long am = ((a % order_) + order_) % order_;
  std::vector<Rational> sums(order_, Rational(0));
  for (size_t i = 0; i < coords_.size(); ++i) sums[(static_cast<long>(i) * am) % order_] += coords_[i];
  return from_exponent_sums(order_, sums);
}

PadicNumber CyclotomicValue::embed(const PadicNumber& zeta_image) const {
  const auto& field = zeta_image.field();
  PadicNumber acc = PadicNumber::exact(field, Rational(0));
  for (size_t i = coords_.size(); i-- > 0;) {
    acc = acc * zeta_image + PadicNumber::exact(field, coords_[i]);
  }
  return acc;
}

static std::pair<CyclotomicValue, CyclotomicValue> common(const CyclotomicValue& a, const CyclotomicValue& b) {
  long d = lcm_long(a.order(), b.order());
  return {a.in_order(d), b.in_order(d)};
}

CyclotomicValue operator+(const CyclotomicValue& a, const CyclotomicValue& b) {
  auto [x, y] = common(a, b);
  for (size_t i = 0; i < x.coords_.size(); ++i) x.coords_[i] += y.coords_[i];
  return x;
}

CyclotomicValue operator-(const CyclotomicValue& a, const CyclotomicValue& b) {
  auto [x, y] = common(a, b);
  for (size_t i = 0; i < x.coords_.size(); ++i) x.coords_[i] -= y.coords_[i];
  return x;
}

CyclotomicValue operator*(const CyclotomicValue& a, const CyclotomicValue& b) {
  auto [x, y] = common(a, b);
  if (x.is_rational()) return y.scaled(x.coords_[0]);
  if (y.is_rational()) return x.scaled(y.coords_[0]);
  std::vector<Rational> prod(x.coords_.size() + y.coords_.size(), Rational(0));
  for (size_t i = 0; i < x.coords_.size(); ++i) {
    if (x.coords_[i] == 0) continue;
    for (size_t j = 0; j < y.coords_.size(); ++j) prod[i + j] += x.coords_[i] * y.coords_[j];
  }
  CyclotomicValue out(x.order_);
  out.coords_ = reduce_mod_phi(std::move(prod), x.order_);
  return out;
}

CyclotomicValue CyclotomicValue::scaled(const Rational& r) const {
  CyclotomicValue out = *this;
  for (auto& c : out.coords_) c *= r;
  return out;
}

bool CyclotomicValue::operator==(const CyclotomicValue& other) const {
  auto [x, y] = common(*this, other);
  return x.coords_ == y.coords_;
}

std::string CyclotomicValue::to_string() const {
  if (is_rational()) return coords_[0].get_str();
  std::ostringstream out;
  bool first = true;
  std::string z = "zeta" + std::to_string(order_);
  for (size_t i = 0; i < coords_.size(); ++i) {
    const Rational& c = coords_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    out << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    if (i == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << z;
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

bool von_staudt_clausen_holds(long n, const Rational& b) {
  if (n == 0) return b == 1;
  if (n == 1) return b == Rational(-1, 2);
  if (n % 2 == 1) return b == 0;
  Integer expected = 1;
  Rational shifted = b;
  for (long d = 1; d <= n; ++d) {
    if (n % d == 0 && is_prime(d + 1)) {
      expected *= d + 1;
      shifted += Rational(1, d + 1);
    }
  }
  return b.get_den() == expected && shifted.get_den() == 1;
}

BernoulliCache::BernoulliCache(std::filesystem::path file) : file_(std::move(file)) {
  std::ifstream in(*file_);
  if (!in) return;  // created on first write
  std::map<long, Rational> records;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto where = file_->string() + ":" + std::to_string(line_no);
    long n = 0;
    Rational value;
    try {
      auto j = nlohmann::json::parse(line);
      n = j.at("n").get<long>();
      Integer num(j.at("num").get<std::string>());
      Integer den(j.at("den").get<std::string>());
      if (den <= 0) fail(ErrorKind::CacheCorrupt, where + ": non-positive denominator");
      value = Rational(num, den);
      value.canonicalize();
      if (value.get_den() != den)
        fail(ErrorKind::CacheCorrupt, where + ": fraction not in lowest terms");
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      fail(ErrorKind::CacheCorrupt, where + ": " + e.what());
    }
    if (n < 0) fail(ErrorKind::CacheCorrupt, where + ": negative index");
    if (!von_staudt_clausen_holds(n, value))
      fail(ErrorKind::CacheCorrupt, where + ": B_" + std::to_string(n) + " fails von Staudt-Clausen");
    auto [it, inserted] = records.emplace(n, value);
    if (!inserted && it->second != value)
      fail(ErrorKind::CacheCorrupt, where + ": conflicting values for B_" + std::to_string(n));
  }
  long expect = 0;
  for (const auto& [n, v] : records) {
    if (n != expect) fail(ErrorKind::CacheCorrupt, file_->string() + ": missing B_" + std::to_string(expect));
    values_.push_back(v);
    ++expect;
  }
}

BernoulliCache& BernoulliCache::shared() {
  static BernoulliCache cache;
  return cache;
}

void BernoulliCache::extend_locked(long n) {
  size_t first_new = values_.size();
  // Binomials C(k+1, j) for the current k, updated row by row.
  for (long k = static_cast<long>(values_.size()); k <= n; ++k) {
    Rational b;
    if (k == 0) {
      b = 1;
    } else if (k > 1 && k % 2 == 1) {
      b = 0;
    } else {
      Rational sum = 0;
      Integer binom = 1;  // C(k+1, 0)
      for (long j = 0; j < k; ++j) {
        if (values_[j] != 0) sum += binom * values_[j];
        binom = binom * (k + 1 - j) / (j + 1);
      }
      b = -sum / (k + 1);
    }
    if (!von_staudt_clausen_holds(k, b))
      fail(ErrorKind::CacheCorrupt, "computed B_" + std::to_string(k) + " fails von Staudt-Clausen");
    values_.push_back(b);
  }
  if (file_ && first_new < values_.size()) {
    std::ofstream out(*file_, std::ios::app);
    if (!out) fail(ErrorKind::CacheCorrupt, "cannot append to " + file_->string());
    for (size_t k = first_new; k < values_.size(); ++k) {
      nlohmann::json rec = {{"n", static_cast<long>(k)},
                            {"num", values_[k].get_num().get_str()},
                            {"den", values_[k].get_den().get_str()}};
      out << rec.dump() << '\n';
    }
  }
}

Rational BernoulliCache::get(long n) {
  if (n < 0) fail(ErrorKind::InvalidArgument, "Bernoulli index must be non-negative");
  {
    std::shared_lock lock(mutex_);
    if (n < static_cast<long>(values_.size())) return values_[n];
  }
  std::unique_lock lock(mutex_);
  if (n >= static_cast<long>(values_.size())) extend_locked(n);
  return values_[n];
}

void BernoulliCache::prewarm(long max_n) {
  if (max_n >= 0) get(max_n);
}

BernoulliCache::Stats BernoulliCache::stats() const {
  std::shared_lock lock(mutex_);
  return {values_.size(), static_cast<long>(values_.size()) - 1};
}

Rational bernoulli(long n, BernoulliCache& cache) { return cache.get(n); }

CyclotomicValue generalized_bernoulli(long n, const DirichletCharacter& chi, BernoulliCache& cache) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "generalized Bernoulli index must be at least 1");
  DirichletCharacter prim = chi.primitive();
  long f = prim.modulus();
  long d = prim.order();
  std::vector<Rational> b(n + 1);
  for (long k = 0; k <= n; ++k) b[k] = cache.get(k);
  std::vector<Integer> binom(n + 1);
  binom[0] = 1;
  for (long k = 1; k <= n; ++k) binom[k] = binom[k - 1] * (n - k + 1) / k;
  // f^(n-1) B_n(a/f) = sum_k C(n,k) B_k a^(n-k) f^(k-1)
  std::vector<Rational> sums(d, Rational(0));
  for (long a = 1; a <= f; ++a) {
    auto e = prim.evaluate(a);
    if (!e) continue;
    Rational term = 0;
    for (long k = 0; k <= n; ++k) {
      if (b[k] == 0) continue;
      Rational fpow = k >= 1 ? Rational(power_of(f, k - 1)) : Rational(Integer(1), Integer(f));
      term += binom[k] * b[k] * power_of(a, n - k) * fpow;
    }
    sums[*e] += term;
  }
  return CyclotomicValue::from_exponent_sums(d, sums);
}

CyclotomicValue l_star(long m, const DirichletCharacter& chi, BernoulliCache& cache) {
  if (m > 0) fail(ErrorKind::InvalidArgument, "l_star is defined here only for m <= 0");
  long n = 1 - m;
  long d = chi.order();
  bool sign_matches = chi.is_even() == (n % 2 == 0);
  if (!sign_matches && !(n == 1 && chi.is_trivial())) return CyclotomicValue(d);
  return generalized_bernoulli(n, chi, cache).scaled(Rational(-1, n));
}

CyclotomicValue EulerFactorPolynomial::value_at(long m) const {
  if (ramified) return CyclotomicValue::rational(1, order);
  Rational t = m <= 0 ? Rational(power_of(prime, -m)) : Rational(Integer(1), power_of(prime, m));
  return CyclotomicValue::rational(1, order) - CyclotomicValue::root_power(order, frobenius_exponent).scaled(t);
}

EulerFactorPolynomial euler_factor(long v, const DirichletCharacter& chi) {
  if (!is_prime(v)) fail(ErrorKind::InvalidArgument, std::to_string(v) + " is not prime");
  DirichletCharacter prim = chi.primitive();
  EulerFactorPolynomial out;
  out.prime = v;
  out.character = prim.to_text();
  out.order = prim.order();
  auto e = prim.evaluate(v);
  out.ramified = !e.has_value();
  out.frobenius_exponent = e.value_or(0);
  return out;
}

CyclotomicValue euler_factor_value(long v, const DirichletCharacter& chi, long m) {
  return euler_factor(v, chi).value_at(m);
}

CyclotomicValue l_star_truncated(long m, const DirichletCharacter& chi, const std::set<long>& primes,
                                 BernoulliCache& cache) {
  CyclotomicValue out = l_star(m, chi, cache);
  for (long v : primes) out = out * euler_factor_value(v, chi, m);
  return out;
}

}  // namespace iwalab
