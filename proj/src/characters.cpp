#include "iwalab/characters.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace iwalab {
namespace {

long mod_pos(long a, long m) { return ((a % m) + m) % m; }

long pow_mod(long b, long e, long m) {
  __int128 r = 1 % m, x = mod_pos(b, m);
  while (e > 0) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<long>(r);
}

long smallest_primitive_root(long l, long pa) {
  long phi = euler_phi(pa);
  auto factors = prime_factors(phi);
  for (long g = 2; g < pa; ++g) {
    if (g % l == 0) continue;
    bool ok = true;
    for (long r : factors)
      if (pow_mod(g, phi / r, pa) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return 1;  // pa = 2
}

long crt_lift(long local, long pa, long f) {
  long rest = f / pa;
  if (rest == 1) return mod_pos(local, f);
  // x = local + pa*t with x = 1 mod rest.
  Integer inv, pa_z = pa, rest_z = rest;
  mpz_invert(inv.get_mpz_t(), pa_z.get_mpz_t(), rest_z.get_mpz_t());
  long t = mod_pos((1 - local) % rest * inv.get_si() % rest, rest);
  return mod_pos(local + pa * t, f);
}

long multiplicative_order_mod(long a, long m) {
  long x = mod_pos(a, m);
  long k = 1;
  for (long y = x; y != 1 % m; y = y * x % m) ++k;
  return k;
}

long expect_number(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    fail(ErrorKind::ParseError, "expected an integer for " + what + ", got '" + s + "'");
  }
}

}  // namespace

std::vector<CharacterGenerator> canonical_generators(long f) {
  if (f < 1) fail(ErrorKind::InvalidArgument, "modulus must be positive");
  std::vector<CharacterGenerator> out;
  long rest = f;
  for (long l : prime_factors(f)) {
    long pa = 1;
    while (rest % l == 0) {
      rest /= l;
      pa *= l;
    }
    if (l == 2) {
      if (pa == 2) continue;
      out.push_back({2, pa, pa - 1, crt_lift(pa - 1, pa, f), 2});
      if (pa >= 8) out.push_back({2, pa, 5, crt_lift(5, pa, f), pa / 4});
      continue;
    }
    long g = smallest_primitive_root(l, pa);
    out.push_back({l, pa, g, crt_lift(g, pa, f), euler_phi(pa)});
  }
  return out;
}

long local_discrete_log(const CharacterGenerator& gen, long a, const std::vector<CharacterGenerator>&) {
  const long m = gen.prime_power;
  long x = mod_pos(a, m);
  if (gen.prime == 2) {
    long sign = (x % 4 == 3) ? 1 : 0;
    if (gen.local != 5) return sign;
    long b = sign ? mod_pos(-x, m) : x;
    long y = 1;
    for (long k = 0; k < gen.order; ++k) {
      if (y == b) return k;
      y = y * 5 % m;
    }
    fail(ErrorKind::InvalidArgument, "discrete log failed");
  }
  long y = 1;
  for (long k = 0; k < gen.order; ++k) {
    if (y == x) return k;
    y = y * gen.local % m;
  }
  fail(ErrorKind::InvalidArgument, "discrete log of a non-unit");
}

DirichletCharacter DirichletCharacter::trivial(long modulus) {
  return from_turns(modulus, std::vector<long>(canonical_generators(modulus).size(), 0));
}

DirichletCharacter DirichletCharacter::from_turns(long modulus, std::vector<long> turns) {
  DirichletCharacter out;
  out.modulus_ = modulus;
  out.gens_ = canonical_generators(modulus);
  if (turns.size() != out.gens_.size())
    fail(ErrorKind::InvalidArgument, "expected " + std::to_string(out.gens_.size()) + " generator values");
  out.order_ = 1;
  for (size_t i = 0; i < turns.size(); ++i) {
    long ord = out.gens_[i].order;
    turns[i] = mod_pos(turns[i], ord);
    out.order_ = lcm_long(out.order_, ord / std::gcd(ord, turns[i]));
  }
  out.turns_ = std::move(turns);
  return out;
}

DirichletCharacter DirichletCharacter::from_generator_values(long modulus, long d,
                                                             const std::vector<std::pair<long, long>>& vals) {
  if (d < 1) fail(ErrorKind::InvalidArgument, "order must be positive");
  auto gens = canonical_generators(modulus);
  std::map<long, long> given;
  for (auto [g, k] : vals) {
    bool known = std::any_of(gens.begin(), gens.end(), [&](const auto& x) { return x.lift == g; });
    if (!known) {
      std::string list;
      for (const auto& x : gens) list += (list.empty() ? "" : ",") + std::to_string(x.lift);
      fail(ErrorKind::ParseError, "value given on " + std::to_string(g) + ", which is not a canonical generator mod " +
                                      std::to_string(modulus) + " (generators: " + list + ")");
    }
    given[g] = k;
  }
  std::vector<long> turns;
  for (const auto& g : gens) {
    long k = given.count(g.lift) ? mod_pos(given[g.lift], d) : 0;
    if ((k * g.order) % d != 0)
      fail(ErrorKind::ParseError, "zeta_" + std::to_string(d) + "^" + std::to_string(k) + " is not a value of order dividing " +
                                      std::to_string(g.order) + " on generator " + std::to_string(g.lift));
    turns.push_back(k * g.order / d);
  }
  return from_turns(modulus, std::move(turns));
}

DirichletCharacter DirichletCharacter::quadratic(long f) {
  long two = 1, odd = f;
  while (odd % 2 == 0) {
    odd /= 2;
    two *= 2;
  }
  bool squarefree = true;
  for (long l : prime_factors(odd))
    if ((odd / l) % l == 0) squarefree = false;
  if (f < 3 || !squarefree || !(two == 1 || two == 4 || two == 8))
    fail(ErrorKind::InvalidArgument, "no quadratic character of conductor " + std::to_string(f));
  auto gens = canonical_generators(f);
  std::vector<long> turns;
  for (const auto& g : gens) {
    if (g.prime == 2) {
      // 4: the character of Q(i); 8: the even character of Q(sqrt 2).
      bool on_minus_one = g.local != 5;
      turns.push_back(two == 4 ? 1 : (on_minus_one ? 0 : 1));
    } else {
      turns.push_back(g.order / 2);
    }
  }
  return from_turns(f, std::move(turns));
}

DirichletCharacter DirichletCharacter::teichmuller(long p) {
  if (!is_prime(p)) fail(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  return from_turns(p == 2 ? 4 : p, {1});
}

DirichletCharacter DirichletCharacter::parse(std::string_view text_view) {
  std::string text(text_view);
  text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
  if (text == "triv" || text == "trivial") return trivial(1);
  if (text.rfind("quad:", 0) == 0) return quadratic(expect_number(text.substr(5), "quadratic conductor"));
  if (text.rfind("teich:", 0) == 0) {
    std::string body = text.substr(6);
    long j = 1;
    auto caret = body.find('^');
    if (caret != std::string::npos) {
      j = expect_number(body.substr(caret + 1), "Teichmüller exponent");
      body = body.substr(0, caret);
    }
    long p = expect_number(body, "Teichmüller prime");
    if (!is_prime(p)) fail(ErrorKind::ParseError, body + " is not prime");
    return teichmuller(p).pow(j).primitive();
  }
  if (text.rfind("chi:", 0) == 0) {
    long f = 0, d = 0;
    std::vector<std::pair<long, long>> vals;
    bool have_vals = false;
    std::stringstream fields(text.substr(4));
    std::string item;
    while (std::getline(fields, item, ';')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) fail(ErrorKind::ParseError, "expected key=value in '" + item + "'");
      std::string key = item.substr(0, eq), value = item.substr(eq + 1);
      if (key == "f") {
        f = expect_number(value, "f");
      } else if (key == "d") {
        d = expect_number(value, "d");
      } else if (key == "vals") {
        have_vals = true;
        std::stringstream entries(value);
        std::string entry;
        while (std::getline(entries, entry, ',')) {
          auto arrow = entry.find("->");
          if (arrow == std::string::npos) fail(ErrorKind::ParseError, "expected g->k in '" + entry + "'");
          vals.emplace_back(expect_number(entry.substr(0, arrow), "generator"),
                            expect_number(entry.substr(arrow + 2), "exponent"));
        }
      } else {
        fail(ErrorKind::ParseError, "unknown key '" + key + "' in character text");
      }
    }
    if (f < 1 || d < 1 || !have_vals) fail(ErrorKind::ParseError, "chi: needs f, d and vals");
    return from_generator_values(f, d, vals);
  }
  fail(ErrorKind::ParseError, "unrecognised character '" + text + "'");
}

std::vector<DirichletCharacter> DirichletCharacter::all_modulo(long f) {
  auto gens = canonical_generators(f);
  std::vector<DirichletCharacter> out;
  std::vector<long> turns(gens.size(), 0);
  while (true) {
    out.push_back(from_turns(f, turns));
    size_t i = 0;
    while (i < gens.size()) {
      if (++turns[i] < gens[i].order) break;
      turns[i] = 0;
      ++i;
    }
    if (i == gens.size()) break;
  }
  return out;
}

std::optional<long> DirichletCharacter::evaluate(long a) const {
  long x = mod_pos(a, modulus_);
  if (std::gcd(x, modulus_) != 1 && modulus_ != 1) return std::nullopt;
  long k = 0;
  for (size_t i = 0; i < gens_.size(); ++i) {
    if (turns_[i] == 0) continue;
    long log = local_discrete_log(gens_[i], x, gens_);
    long exponent = turns_[i] * order_ / gens_[i].order;  // chi(g_i) = zeta_d^exponent
    k = (k + exponent * log) % order_;
  }
  return k;
}

std::vector<std::optional<long>> DirichletCharacter::value_table() const {
  std::vector<std::optional<long>> out(modulus_);
  for (long a = 0; a < modulus_; ++a) out[a] = evaluate(a);
  return out;
}

Parity DirichletCharacter::parity() const {
  auto v = evaluate(modulus_ - 1);
  return (!v || *v == 0) ? Parity::Even : Parity::Odd;
}

long DirichletCharacter::conductor() const {
  long out = 1;
  long r_minus = 1, r_five = 1;
  for (size_t i = 0; i < gens_.size(); ++i) {
    const auto& g = gens_[i];
    long r = g.order / std::gcd(g.order, turns_[i]);
    if (g.prime == 2) {
      (g.local == 5 ? r_five : r_minus) = r;
      continue;
    }
    if (r == 1) continue;
    long pc = g.prime;
    while (euler_phi(pc) % r != 0) pc *= g.prime;
    out *= pc;
  }
  if (r_five > 1) {
    long c = 4;
    for (long r = r_five; r > 1; r /= 2) c *= 2;
    out *= c;
  } else if (r_minus > 1) {
    out *= 4;
  }
  return out;
}

DirichletCharacter DirichletCharacter::primitive() const {
  long fc = conductor();
  if (fc == modulus_) return *this;
  return from_function(fc, order_, [&](long h) {
    long b = h;
    while (std::gcd(b, modulus_) != 1) b += fc;
    return *evaluate(b);
  });
}

DirichletCharacter DirichletCharacter::induce(long multiple) const {
  if (multiple % modulus_ != 0) fail(ErrorKind::InvalidArgument, "induced modulus must be a multiple");
  return from_function(multiple, order_, [&](long a) { return *evaluate(a); });
}

DirichletCharacter DirichletCharacter::pow(long k) const {
  std::vector<long> t = turns_;
  for (size_t i = 0; i < t.size(); ++i) {
    __int128 v = static_cast<__int128>(t[i]) * k;
    t[i] = static_cast<long>(((v % gens_[i].order) + gens_[i].order) % gens_[i].order);
  }
  return from_turns(modulus_, std::move(t));
}

DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
  long m = lcm_long(a.modulus(), b.modulus());
  long d = lcm_long(a.order(), b.order());
  return DirichletCharacter::from_function(m, d, [&](long x) {
    return *a.evaluate(x) * (d / a.order()) + *b.evaluate(x) * (d / b.order());
  });
}

std::vector<std::pair<long, long>> DirichletCharacter::generator_values() const {
  std::vector<std::pair<long, long>> out;
  for (size_t i = 0; i < gens_.size(); ++i) out.emplace_back(gens_[i].lift, turns_[i] * order_ / gens_[i].order);
  return out;
}

std::string DirichletCharacter::to_text() const {
  if (modulus_ == 1) return "triv";
  std::string out = "chi:f=" + std::to_string(modulus_) + ";d=" + std::to_string(order_) + ";vals=";
  bool first = true;
  for (auto [g, k] : generator_values()) {
    out += (first ? "" : ",") + std::to_string(g) + "->" + std::to_string(k);
    first = false;
  }
  return out;
}

DirichletCharacter twist(const DirichletCharacter& chi, long j, long p) {
  if (j == 0) return chi.primitive();
  return (chi * DirichletCharacter::teichmuller(p).pow(j)).primitive();
}

SecondKindSplit second_kind_split(const DirichletCharacter& chi, long p) {
  const DirichletCharacter c = chi.primitive();
  const auto& gens = c.generators();
  std::vector<long> psi_turns(gens.size(), 0);
  for (size_t i = 0; i < gens.size(); ++i) {
    const auto& g = gens[i];
    if (g.prime != p) continue;
    if (p == 2) {
      // 1 + 4Z_2 is generated by 5; the sign part belongs to the tame layer.
      if (g.local == 5) psi_turns[i] = c.turns()[i];
      continue;
    }
    long ord = g.order;
    long t = c.turns()[i];
    long r = ord / std::gcd(ord, t);
    long rp = 1;
    while (r % p == 0) {
      r /= p;
      rp *= p;
    }
    // u = 1 mod rp, u = 0 mod r projects onto the p-power-order part.
    long u = 0;
    for (long cand = 0; cand < r * rp; cand += r)
      if (cand % rp == 1 % rp) {
        u = cand;
        break;
      }
    psi_turns[i] = static_cast<long>(static_cast<__int128>(t) * u % ord);
  }
  SecondKindSplit out;
  out.psi = DirichletCharacter::from_turns(c.modulus(), psi_turns).primitive();
  out.theta = (c * out.psi.inverse()).primitive();
  out.second_kind = out.theta.is_trivial();
  long q = CyclotomicFrame::for_prime(p).q;
  out.gamma0_exponent = out.psi.is_trivial() ? 0 : *out.psi.evaluate(q);
  return out;
}

// ---------------------------------------------------------------------------
// Roots of unity

long max_root_order(const FieldPtr& field) {
  const long p = field->p();
  long tame = power_of(p, field->residue_degree()).get_si() - 1;
  long level = field->cyclotomic_level();
  if (level > 0) return tame * power_of(p, level).get_si();
  return p == 2 ? tame * 2 : tame;
}

namespace {

PadicNumber tame_generator(const FieldPtr& field, long prec) {
  const long p = field->p();
  FieldPtr base = ExtensionField::base(p);
  long g = p == 2 ? 1 : smallest_primitive_root(p, p);
  if (field->kind() != ExtensionField::Kind::Unramified)
    return teichmuller(PadicNumber::from_rational(base, Rational(g), prec)).embed_into(field);
  // Smallest residue generator whose norm to F_p is g, so that the induced
  // root of order p-1 is the Teichmüller lift of g.
  const int n = field->degree();
  const Integer pp = p;
  const Integer q = power_of(p, n);
  const Integer group = q - 1;
  std::vector<Integer> primes;
  {
    Integer rest = group;
    for (long r = 2; Integer(r) * r <= rest; ++r)
      if (rest % r == 0) {
        primes.push_back(r);
        while (rest % r == 0) rest /= r;
      }
    if (rest > 1) primes.push_back(rest);
  }
  Integer norm_exp = group / (p - 1);
  for (Integer code = 1; code < q; ++code) {
    std::vector<Integer> c(n, 0);
    Integer t = code;
    for (int i = 0; i < n; ++i) {
      c[i] = t % p;
      t /= p;
    }
    bool generator = true;
    for (const auto& r : primes) {
      auto y = detail::ring_pow(*field, c, group / r, pp);
      std::vector<Integer> one(n, 0);
      one[0] = 1;
      if (y == one) {
        generator = false;
        break;
      }
    }
    if (!generator) continue;
    auto nrm = detail::ring_pow(*field, c, norm_exp, pp);
    std::vector<Integer> target(n, 0);
    target[0] = g % p;
    if (nrm != target) continue;
    return teichmuller(PadicNumber::from_coords(field, c, 0, prec));
  }
  fail(ErrorKind::RootOfUnityUnavailable, "no residue generator found");
}

}  // namespace

PadicNumber root_of_unity(const FieldPtr& field, long d, long prec) {
  const long n_max = max_root_order(field);
  const long p = field->p();
  if (d < 1 || n_max % d != 0) {
    long dp = d, pk = 1;
    while (dp % p == 0) {
      dp /= p;
      pk *= p;
    }
    long f_req = dp > 1 ? multiplicative_order_mod(p, dp) : 1;
    std::string need = "residue degree " + std::to_string(f_req);
    if (pk > (p == 2 ? 2 : 1)) need += " and the cyclotomic field containing mu_" + std::to_string(pk);
    fail(ErrorKind::RootOfUnityUnavailable, "mu_" + std::to_string(d) + " is not contained in " + field->description() +
                                                " (p = " + std::to_string(p) + "); needs " + need);
  }
  PadicNumber z = tame_generator(field, prec);
  if (field->cyclotomic_level() > 0) {
    z = z * (PadicNumber::generator(field) + PadicNumber::exact(field, Rational(1)));
  } else if (p == 2) {
    z = -z;
  }
  return z.with_precision(prec).pow(n_max / d);
}

FieldPtr field_for_order(long p, long d) {
  long dp = d, k = 0;
  while (dp % p == 0) {
    dp /= p;
    ++k;
  }
  long f = dp > 1 ? multiplicative_order_mod(p, dp) : 1;
  bool wild = p == 2 ? k >= 2 : k >= 1;
  if (!wild) return ExtensionField::unramified_of_degree(p, static_cast<int>(f));
  if (f != 1)
    fail(ErrorKind::RootOfUnityUnavailable, "mu_" + std::to_string(d) +
                                                " needs an unramified-over-cyclotomic tower, which is not supported");
  return ExtensionField::cyclotomic(p, static_cast<int>(k));
}

EmbeddedCharacter EmbeddedCharacter::embed(const DirichletCharacter& chi, const FieldPtr& field, long prec) {
  EmbeddedCharacter out;
  out.chi_ = chi;
  out.field_ = field;
  out.prec_ = prec;
  const long d = chi.order();
  PadicNumber zeta = root_of_unity(field, d, prec);
  PadicNumber one = PadicNumber::exact(field, Rational(1));
  if (!equal_to_precision(zeta.pow(d), one))
    fail(ErrorKind::RootOfUnityUnavailable, "zeta^d != 1 to precision");
  for (long l : prime_factors(d))
    if (equal_to_precision(zeta.pow(d / l), one))
      fail(ErrorKind::RootOfUnityUnavailable, "root of unity is not primitive to precision");
  out.powers_.reserve(d);
  PadicNumber acc = one.rounded(prec);
  for (long k = 0; k < d; ++k) {
    out.powers_.push_back(acc);
    acc = acc * zeta;
  }
  return out;
}

const PadicNumber& EmbeddedCharacter::root_power(long k) const {
  const long d = static_cast<long>(powers_.size());
  return powers_[mod_pos(k, d)];
}

PadicNumber EmbeddedCharacter::value(long a) const {
  auto k = chi_.evaluate(a);
  if (!k) return PadicNumber::exact(field_, Rational(0));
  return root_power(*k);
}

EmbeddedCharacter EmbeddedCharacter::with_character(const DirichletCharacter& other) const {
  return embed(other, field_, prec_);
}

}  // namespace iwalab
