#include "support.hpp"

#include <filesystem>
#include <fstream>
#include <numeric>

#include "iwalab/classical_l.hpp"

using namespace iwalab;
using namespace iwalab::test;

namespace {

// B_n via sum_{j<=n} C(n+1, j) B_j = 0, independent of the library cache.
std::vector<Rational> bernoulli_oracle(long n) {
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (long m = 1; m <= n; ++m) {
    Rational s = 0;
    Integer binom = 1;
    for (long j = 0; j < m; ++j) {
      s += Rational(binom) * b[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    b[m] = -s / (m + 1);
  }
  return b;
}

// B_{n,chi} = f^(n-1) sum_a chi(a) B_n(a/f) for a real character.
Rational real_bernoulli_oracle(long n, const DirichletCharacter& chi) {
  auto b = bernoulli_oracle(n);
  const long f = chi.modulus();
  Rational total = 0;
  for (long a = 1; a <= f; ++a) {
    auto k = chi.evaluate(a % f);
    if (!k) continue;
    Rational x(a, f), poly = 0;
    Integer binom = 1;
    for (long j = 0; j <= n; ++j) {
      Rational xp = 1;
      for (long t = 0; t < n - j; ++t) xp *= x;
      poly += Rational(binom) * b[j] * xp;
      binom = binom * (n - j) / (j + 1);
    }
    total += (*k == 0 ? 1 : -1) * poly;
  }
  Rational scale = 1;
  for (long t = 0; t < n - 1; ++t) scale *= f;
  return total * scale;
}

}  // namespace

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(2) == Rational(1, 6));
  CHECK(bernoulli(12) == Rational(-691, 2730));
  CHECK(bernoulli(12).get_den() == 2 * 3 * 5 * 7 * 13);
  auto oracle = bernoulli_oracle(40);
  for (long n = 0; n <= 40; ++n) {
    CHECK(bernoulli(n) == oracle[n]);
    CHECK(von_staudt_clausen_holds(n, bernoulli(n)));
  }
  CHECK_FALSE(von_staudt_clausen_holds(12, Rational(691, 2730)));
}

TEST_CASE("generalized Bernoulli numbers of real characters") {
  CHECK(generalized_bernoulli(2, DirichletCharacter::trivial()).as_rational() == Rational(1, 6));
  CHECK(generalized_bernoulli(2, DirichletCharacter::quadratic(5)).as_rational() == Rational(4, 5));
  CHECK(generalized_bernoulli(2, DirichletCharacter::quadratic(3)).is_zero());
  for (long f : {5L, 8L, 12L, 13L, 17L, 24L})
    for (long n = 1; n <= 8; ++n) {
      auto chi = DirichletCharacter::quadratic(f);
      CHECK(generalized_bernoulli(n, chi).as_rational() == real_bernoulli_oracle(n, chi));
    }
}

TEST_CASE("Galois conjugate characters give conjugate Bernoulli values") {
  for (const auto& chi : DirichletCharacter::all_modulo(13)) {
    if (chi.order() <= 2) continue;
    for (long a = 2; a < chi.order(); ++a) {
      if (std::gcd(a, chi.order()) != 1) continue;
      CHECK(generalized_bernoulli(3, chi.pow(a)) == generalized_bernoulli(3, chi).galois(a));
    }
  }
}

TEST_CASE("L-values at non-positive integers") {
  CHECK(l_star(-1, DirichletCharacter::trivial()).as_rational() == Rational(-1, 12));
  CHECK(l_star(-1, DirichletCharacter::quadratic(5)).as_rational() == Rational(-2, 5));
  CHECK(l_star(-2, DirichletCharacter::quadratic(5)).is_zero());
  CHECK(l_star(-3, DirichletCharacter::trivial()).as_rational() == Rational(1, 120));
}

TEST_CASE("Euler factors") {
  auto q = DirichletCharacter::quadratic(5);
  CHECK(euler_factor_value(2, q, -1).as_rational() == 3);
  CHECK(euler_factor(5, q).ramified);
  CHECK(euler_factor_value(5, q, -3).as_rational() == 1);
  CHECK(euler_factor_value(3, DirichletCharacter::trivial(), 0).is_zero());
}

TEST_CASE("truncated L-values") {
  auto triv = DirichletCharacter::trivial();
  CHECK(l_star_truncated(-1, triv, {5}).as_rational() == Rational(1, 3));
  CHECK(l_star_truncated(-1, triv, {}).as_rational() == Rational(-1, 12));
  CHECK(l_star_truncated(-1, DirichletCharacter::quadratic(5), {2}).as_rational() == Rational(-6, 5));
}

TEST_CASE("a cache file persists values and reports corrupt lines") {
  auto dir = std::filesystem::temp_directory_path() / "iwalab_cache_test";
  std::filesystem::create_directories(dir);
  auto path = dir / "bern.jsonl";
  std::filesystem::remove(path);
  {
    BernoulliCache cache(path);
    CHECK(cache.stats().entries == 0);
    cache.prewarm(20);
    CHECK(cache.stats().entries == 21);
    CHECK(cache.stats().max_n == 20);
  }
  {
    BernoulliCache reloaded(path);
    CHECK(reloaded.stats().entries == 21);
    CHECK(reloaded.get(20) == bernoulli_oracle(20)[20]);
  }
  {
    std::ofstream out(path, std::ios::app);
    out << "{\"n\":21,\"num\":\"1\",\"den\":\"2\"}\n";
  }
  try {
    BernoulliCache broken(path);
    FAIL("corrupt cache accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CacheCorrupt);
    CHECK(std::string(e.what()).find(":22:") != std::string::npos);
  }
  std::filesystem::remove_all(dir);
}
