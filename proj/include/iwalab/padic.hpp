#pragma once

#include <gmpxx.h>

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iwalab/errors.hpp"

namespace iwalab {

using Integer = mpz_class;
using Rational = mpq_class;

bool is_prime(long n);
std::vector<long> prime_factors(long n);  // distinct, ascending
long gcd_long(long a, long b);
long lcm_long(long a, long b);
long euler_phi(long n);
// v_p of a nonzero integer or rational.
long valuation_of(const Integer& n, long p);
long valuation_of(const Rational& q, long p);
Integer power_of(long base, long exponent);
// Reduced num/den.
Rational make_rational(long num, long den);
// Integer floor/ceil of a rational.
Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

class ExtensionField;
using FieldPtr = std::shared_ptr<const ExtensionField>;

// A single-step extension E of Q_p: Q_p itself, an unramified extension, or a
// totally ramified extension cut out by an Eisenstein polynomial. Elements are
// written in the power basis of x, which is an integral basis in all cases.
class ExtensionField {
 public:
  enum class Kind { Base, Unramified, Eisenstein };

  static FieldPtr base(long p);
  static FieldPtr unramified(long p, std::vector<Integer> monic_modulus);
  static FieldPtr eisenstein(long p, std::vector<Integer> monic_modulus);
  // Q_p(zeta_{p^level}) with modulus Phi_{p^level}(x+1); x+1 is the root.
  static FieldPtr cyclotomic(long p, int level);
  // Unramified extension of degree f using the smallest monic irreducible.
  static FieldPtr unramified_of_degree(long p, int f);
  // `Qp`, `unram:<poly>`, `eis:<poly>`, or `cyc:<level>`.
  static FieldPtr parse(long p, std::string_view text);

  long p() const { return p_; }
  Kind kind() const { return kind_; }
  int degree() const { return degree_; }
  int ramification_index() const { return kind_ == Kind::Eisenstein ? degree_ : 1; }
  int residue_degree() const { return kind_ == Kind::Unramified ? degree_ : 1; }
  // Monic, lowest coefficient first, length degree()+1. Base field: x.
  const std::vector<Integer>& modulus() const { return modulus_; }
  // k when the modulus is Phi_{p^k}(x+1), else 0.
  int cyclotomic_level() const { return cyclotomic_level_; }
  std::string description() const;
  std::string uniformizer_description() const;
  bool same_as(const ExtensionField& other) const;
  Integer p_power(long k) const;

  struct Key {};
  ExtensionField(Key, long p, Kind kind, std::vector<Integer> modulus);

 private:
  long p_;
  Kind kind_;
  int degree_;
  std::vector<Integer> modulus_;
  int cyclotomic_level_ = 0;
  std::vector<Integer> p_powers_;
};

// An element of E known modulo p^N (absolute precision N), or an exact element
// of the number field Q[x]/(modulus) when no rounding has occurred.
//
// Approximate representation: p^shift * sum c_i x^i with 0 <= c_i < p^(N-shift)
// and not all c_i divisible by p; zero to precision has no coordinates.
class PadicNumber {
 public:
  static constexpr long kExact = std::numeric_limits<long>::max() / 8;

  PadicNumber() = default;

  static PadicNumber exact(const FieldPtr& field, const Rational& value);
  static PadicNumber exact(const FieldPtr& field, std::vector<Rational> coords);
  static PadicNumber from_rational(const FieldPtr& field, const Rational& value, long prec);
  static PadicNumber from_coords(const FieldPtr& field, std::vector<Integer> coords, long shift,
                                 long prec);
  static PadicNumber zero(const FieldPtr& field, long prec);
  // The generator x of the power basis, exact. For Eisenstein fields it is a
  // uniformizer; otherwise p is.
  static PadicNumber generator(const FieldPtr& field);
  static PadicNumber uniformizer(const FieldPtr& field);

  bool valid() const { return field_ != nullptr; }
  const FieldPtr& field() const { return field_; }
  long p() const;
  bool is_exact() const { return exact_; }
  // Absolute precision in whole powers of p (floor of the pi-adic precision).
  long precision() const;
  // Absolute precision in units of v(pi) = 1/e.
  long precision_pi() const;
  bool is_zero() const;
  bool is_exact_zero() const { return exact_ && is_zero(); }
  // Valuation in units of 1/e_ram. Zero to precision reports prec*e_ram.
  long valuation_pi() const;
  // v_p, normalised by v_p(p) = 1; ZeroToPrecision when indistinguishable from 0.
  Rational valuation() const;
  // v_p when nonzero, else the precision (a lower bound).
  Rational valuation_bound() const;
  bool is_unit() const;
  bool is_integral() const;

  PadicNumber with_precision(long prec) const;
  PadicNumber with_precision_pi(long prec_pi) const;
  // Approximate image of an exact element; identity on approximate ones apart
  // from capping.
  PadicNumber rounded(long prec) const;
  // Canonical representative as rational power-basis coordinates.
  std::vector<Rational> rational_coords() const;
  // Representative of an integral element modulo p^k, coordinates in [0,p^k).
  std::vector<Integer> integer_coords(long k) const;
  // The base-field coordinate when all other coordinates vanish.
  Rational to_rational() const;

  PadicNumber operator-() const;
  PadicNumber& operator+=(const PadicNumber& y) { return *this = *this + y; }
  PadicNumber& operator-=(const PadicNumber& y) { return *this = *this - y; }
  PadicNumber& operator*=(const PadicNumber& y) { return *this = *this * y; }
  friend PadicNumber operator+(const PadicNumber& x, const PadicNumber& y);
  friend PadicNumber operator-(const PadicNumber& x, const PadicNumber& y);
  friend PadicNumber operator*(const PadicNumber& x, const PadicNumber& y);
  friend PadicNumber operator/(const PadicNumber& x, const PadicNumber& y);
  PadicNumber inverse() const;
  PadicNumber pow(long n) const;
  PadicNumber embed_into(const FieldPtr& target) const;

  std::string to_string() const;

  // Raw accessors for serialisation.
  long shift() const { return shift_; }
  const std::vector<Integer>& unit_coords() const { return c_; }

 private:
  static PadicNumber from_coords_pi(const FieldPtr& field, std::vector<Integer> coords, long shift,
                                    long prec_pi);
  void normalize();
  void compute_exact_valuation();
  PadicNumber approx_inverse() const;
  PadicNumber exact_inverse() const;

  FieldPtr field_;
  bool exact_ = false;
  bool zero_ = true;
  long prec_pi_ = 0;
  long shift_ = 0;
  long val_pi_ = 0;
  std::vector<Integer> c_;
  std::vector<Rational> q_;
};

bool equal_to_precision(const PadicNumber& a, const PadicNumber& b);

struct CyclotomicFrame {
  long p = 0;
  long q0 = 0;
  long q = 0;
  // e is admissible iff v(e) exceeds this floor.
  Rational domain_valuation_floor;
  static CyclotomicFrame for_prime(long p);
  Rational kappa() const;  // v_p(q0) = v_p(q - 1)
};

struct DiamondParts {
  PadicNumber omega;
  PadicNumber angle;
};

// Functions taking an optional precision use it to round exact inputs and to
// cap approximate ones.
PadicNumber teichmuller(const PadicNumber& z, std::optional<long> prec = {});
DiamondParts diamond_decompose(const PadicNumber& z, std::optional<long> prec = {});
PadicNumber plog(const PadicNumber& x, std::optional<long> prec = {}, long term_cap = 10000);
PadicNumber pexp(const PadicNumber& x, std::optional<long> prec = {}, long term_cap = 10000);
PadicNumber diamond_pow(const PadicNumber& z, const PadicNumber& e, const CyclotomicFrame& frame,
                        std::optional<long> prec = {});
bool in_twist_domain(const PadicNumber& e, const CyclotomicFrame& frame, bool excludes_one);

namespace detail {
// O_E / p^k arithmetic on power-basis coordinates.
std::vector<Integer> ring_mul(const ExtensionField& field, const std::vector<Integer>& a,
                              const std::vector<Integer>& b, const Integer& mod);
std::vector<Integer> ring_pow(const ExtensionField& field, std::vector<Integer> a, Integer n,
                              const Integer& mod);
// Inverse of a unit modulo p^k by Newton iteration.
std::vector<Integer> ring_unit_inverse(const ExtensionField& field, const std::vector<Integer>& u,
                                       long k);
bool is_irreducible_mod_p(const std::vector<Integer>& monic, long p);
}  // namespace detail

}  // namespace iwalab
