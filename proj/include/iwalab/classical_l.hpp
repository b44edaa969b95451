#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "iwalab/characters.hpp"
#include "iwalab/padic.hpp"

namespace iwalab {

// Phi_d, lowest coefficient first.
std::vector<Integer> cyclotomic_polynomial(long d);

// An element of Q(zeta_d) in the basis 1, zeta, ..., zeta^(phi(d)-1).
class CyclotomicValue {
 public:
  static constexpr long kMaxOrder = 1L << 20;

  CyclotomicValue() : CyclotomicValue(1) {}
  explicit CyclotomicValue(long order);
  static CyclotomicValue rational(const Rational& value, long order = 1);
  static CyclotomicValue root_power(long order, long k);
  // sum_r c_r zeta^r for r = 0..d-1 (any length; indices taken mod d).
  static CyclotomicValue from_exponent_sums(long order, const std::vector<Rational>& by_exponent);

  long order() const { return order_; }
  const std::vector<Rational>& coords() const { return coords_; }
  bool is_zero() const;
  bool is_rational() const;
  Rational as_rational() const;

  // Viewed in Q(zeta_D) via zeta_d = zeta_D^(D/d).
  CyclotomicValue in_order(long multiple) const;
  // The automorphism zeta -> zeta^a, gcd(a, d) = 1.
  CyclotomicValue galois(long a) const;
  // Image under zeta_d -> zeta_image.
  PadicNumber embed(const PadicNumber& zeta_image) const;

  friend CyclotomicValue operator+(const CyclotomicValue& a, const CyclotomicValue& b);
  friend CyclotomicValue operator-(const CyclotomicValue& a, const CyclotomicValue& b);
  friend CyclotomicValue operator*(const CyclotomicValue& a, const CyclotomicValue& b);
  CyclotomicValue scaled(const Rational& r) const;
  bool operator==(const CyclotomicValue& other) const;
  std::string to_string() const;

 private:
  long order_;
  std::vector<Rational> coords_;
};

// True when B_n satisfies von Staudt-Clausen (and vanishes for odd n > 1).
bool von_staudt_clausen_holds(long n, const Rational& b);

// Bernoulli numbers B_0, B_1 = -1/2, B_2, ... behind a reader/writer lock.
// With a file, records are loaded on construction and new values appended as
// {"n":..,"num":"..","den":".."} lines.
class BernoulliCache {
 public:
  BernoulliCache() = default;
  explicit BernoulliCache(std::filesystem::path file);

  Rational get(long n);
  void prewarm(long max_n);

  struct Stats {
    size_t entries = 0;
    long max_n = -1;
  };
  Stats stats() const;
  const std::optional<std::filesystem::path>& file() const { return file_; }

  // Process-wide in-memory cache used when no explicit cache is passed.
  static BernoulliCache& shared();

 private:
  void extend_locked(long n);

  mutable std::shared_mutex mutex_;
  std::vector<Rational> values_;
  std::optional<std::filesystem::path> file_;
};

Rational bernoulli(long n, BernoulliCache& cache = BernoulliCache::shared());
// B_{n,chi} for the primitive character inducing chi; exact in Q(zeta_d).
CyclotomicValue generalized_bernoulli(long n, const DirichletCharacter& chi,
                                      BernoulliCache& cache = BernoulliCache::shared());
// L*(m, chi) = -B_{1-m,chi}/(1-m) for m <= 0.
CyclotomicValue l_star(long m, const DirichletCharacter& chi, BernoulliCache& cache = BernoulliCache::shared());

struct EulerFactorPolynomial {
  long prime = 0;
  std::string character;
  bool ramified = false;
  long order = 1;               // order of the character
  long frobenius_exponent = 0;  // chi(v) = zeta^k when unramified
  // 1 - chi(v) t at t = v^(-m).
  CyclotomicValue value_at(long m) const;
};

EulerFactorPolynomial euler_factor(long v, const DirichletCharacter& chi);
CyclotomicValue euler_factor_value(long v, const DirichletCharacter& chi, long m);
CyclotomicValue l_star_truncated(long m, const DirichletCharacter& chi, const std::set<long>& primes,
                                 BernoulliCache& cache = BernoulliCache::shared());

}  // namespace iwalab
