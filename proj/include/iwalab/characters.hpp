#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iwalab/padic.hpp"

namespace iwalab {

enum class Parity { Even, Odd };

// A canonical generator of one cyclic factor of (Z/f)^x.
struct CharacterGenerator {
  long prime = 0;        // the prime l of this local factor
  long prime_power = 0;  // l^a exactly dividing f
  long local = 0;        // generator modulo l^a
  long lift = 0;         // CRT lift: local mod l^a, 1 mod f/l^a
  long order = 0;        // order of `local` in (Z/l^a)^x
};

// Smallest primitive root for odd prime powers; -1 for 4; {-1, 5} for 2^a, a >= 3.
std::vector<CharacterGenerator> canonical_generators(long f);

// A Dirichlet character stored by its values on the canonical generators:
// chi(g_i) = exp(2 pi i turns_i / order_i). Values are reported as exponents of
// zeta_d where d is the exact order.
class DirichletCharacter {
 public:
  DirichletCharacter() = default;  // trivial modulo 1

  static DirichletCharacter trivial(long modulus = 1);
  static DirichletCharacter from_turns(long modulus, std::vector<long> turns);
  // chi(lift) = zeta_d^k for each listed (lift, k); unlisted generators map to 1.
  static DirichletCharacter from_generator_values(long modulus, long d,
                                                  const std::vector<std::pair<long, long>>& vals);
  // Build from a multiplicative exponent function a -> k with chi(a) = zeta_d^k.
  template <class Fn>
  static DirichletCharacter from_function(long modulus, long d, Fn&& exponent_at);
  static DirichletCharacter quadratic(long f);
  static DirichletCharacter teichmuller(long p);
  // `triv`, `quad:<f>`, `teich:<p>^<j>`, `chi:f=<f>;d=<d>;vals=<g>-><k>,...`.
  static DirichletCharacter parse(std::string_view text);
  static std::vector<DirichletCharacter> all_modulo(long f);

  long modulus() const { return modulus_; }
  long order() const { return order_; }
  const std::vector<CharacterGenerator>& generators() const { return gens_; }
  const std::vector<long>& turns() const { return turns_; }

  // Exponent k with chi(a) = zeta_d^k, or nullopt when gcd(a, f) > 1.
  std::optional<long> evaluate(long a) const;
  // evaluate(a) for a = 0..f-1.
  std::vector<std::optional<long>> value_table() const;
  Parity parity() const;
  bool is_even() const { return parity() == Parity::Even; }
  bool is_trivial() const { return order_ == 1; }
  long conductor() const;
  bool is_primitive() const { return conductor() == modulus_; }
  DirichletCharacter primitive() const;
  DirichletCharacter induce(long multiple) const;
  DirichletCharacter pow(long k) const;
  DirichletCharacter inverse() const { return pow(-1); }
  friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b);
  // (lift, exponent) for each canonical generator.
  std::vector<std::pair<long, long>> generator_values() const;
  std::string to_text() const;
  bool operator==(const DirichletCharacter& other) const {
    return modulus_ == other.modulus_ && turns_ == other.turns_;
  }

 private:
  long modulus_ = 1;
  long order_ = 1;
  std::vector<CharacterGenerator> gens_;
  std::vector<long> turns_;
};

// Discrete log of a unit modulo gen.prime_power; for the 2-power factor uses
// the pair (-1, 5) and returns the log for the requested generator.
long local_discrete_log(const CharacterGenerator& gen, long a, const std::vector<CharacterGenerator>& all);

template <class Fn>
DirichletCharacter DirichletCharacter::from_function(long modulus, long d, Fn&& exponent_at) {
  auto gens = canonical_generators(modulus);
  std::vector<long> turns;
  for (const auto& g : gens) {
    long k = ((exponent_at(g.lift) % d) + d) % d;
    if ((k * g.order) % d != 0)
      fail(ErrorKind::InvalidArgument, "character value on generator " + std::to_string(g.lift) +
                                           " is not an order-" + std::to_string(g.order) + " root");
    turns.push_back(k * g.order / d);
  }
  return from_turns(modulus, std::move(turns));
}

// chi * omega_p^j, primitivised.
DirichletCharacter twist(const DirichletCharacter& chi, long j, long p);

struct SecondKindSplit {
  DirichletCharacter theta;  // first-kind part, primitive
  DirichletCharacter psi;    // p-power order, p-power conductor, primitive
  long gamma0_exponent = 0;  // psi(q) = zeta_{ord psi}^k
  bool second_kind = false;  // chi itself factors through Gal(Q_infinity/Q)
};

SecondKindSplit second_kind_split(const DirichletCharacter& chi, long p);

// Order N of the distinguished root-of-unity group recognised in `field`.
long max_root_order(const FieldPtr& field);
// zeta_d = Z^(N/d) for a fixed generator Z of the recognised roots; different d
// therefore give compatible roots (zeta_{de}^e = zeta_d).
PadicNumber root_of_unity(const FieldPtr& field, long d, long prec);
// The canonical smallest field of this library that contains mu_d.
FieldPtr field_for_order(long p, long d);

class EmbeddedCharacter {
 public:
  EmbeddedCharacter() = default;
  static EmbeddedCharacter embed(const DirichletCharacter& chi, const FieldPtr& field, long prec);

  const DirichletCharacter& character() const { return chi_; }
  const FieldPtr& field() const { return field_; }
  const PadicNumber& zeta() const { return powers_.at(1 % powers_.size()); }
  long precision() const { return prec_; }
  // zeta^k for any integer k.
  const PadicNumber& root_power(long k) const;
  // chi(a) in the field; exact zero when gcd(a, f) > 1.
  PadicNumber value(long a) const;
  // Same field and precision, different character (which must fit the field).
  EmbeddedCharacter with_character(const DirichletCharacter& other) const;

 private:
  DirichletCharacter chi_;
  FieldPtr field_;
  long prec_ = 0;
  std::vector<PadicNumber> powers_;
};

}  // namespace iwalab
