// One PASS/FAIL line per acceptance criterion. Tolerances are pinned here and
// do not follow the library defaults.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "iwalab/cohom_predict.hpp"
#include "iwalab/json_io.hpp"
#include "iwalab/verify.hpp"

using namespace iwalab;

namespace {

constexpr long kPrecision = 20;
constexpr long kInterpolationResidual = 15;
constexpr double kInterpolationSeconds = 60;
constexpr long kDiamondResidual = kPrecision - 2;
constexpr long kLambdaInstances = 200;
constexpr double kLambdaSeconds = 30;
constexpr long kWeierstrassInstances = 100;
constexpr long kUnitsPerPrime = 200;
constexpr std::uint64_t kSeed = 7;

struct Outcome {
  bool passed = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string counts(const SuiteResult& r) {
  std::string s = std::to_string(r.checks) + " checks, " + std::to_string(r.failures) + " failures";
  if (!r.failure_details.empty()) s += "; first: " + r.failure_details.front();
  return s;
}

PadicNumber q5(const Rational& v) { return PadicNumber::exact(ExtensionField::base(5), v); }

long agreement(const PadicNumber& x, const Rational& r) {
  PadicNumber d = x - PadicNumber::exact(x.field(), r);
  return d.is_zero() ? d.precision() : floor_of(d.valuation()).get_si();
}

Outcome interpolation() {
  VerifyConfig cfg;
  cfg.primes = {3, 5, 7};
  cfg.precision = kPrecision;
  cfg.max_conductor = 40;
  auto start = std::chrono::steady_clock::now();
  SuiteResult r = run_suite("interpolation", cfg);
  const double elapsed = seconds_since(start);
  const long worst = r.summary["worst_residual_valuation"].get<long>();

  LSeriesOptions opts;
  opts.precision = kPrecision;
  auto triv = DirichletCharacter::trivial();
  auto quad5 = DirichletCharacter::quadratic(5);
  const bool spots =
      agreement(lp_eval(lp_series(quad5, default_field_for(quad5, 5), opts), q5(-1)), Rational(1, 3)) >=
          kInterpolationResidual &&
      agreement(lp_eval(lp_series(triv, ExtensionField::base(3), opts), PadicNumber::exact(ExtensionField::base(3), -1)),
                Rational(1, 6)) >= kInterpolationResidual &&
      agreement(lp_eval(lp_series(triv, ExtensionField::base(5), opts), q5(-3)), Rational(-31, 30)) >=
          kInterpolationResidual;
  char buf[160];
  std::snprintf(buf, sizeof buf, "; worst residual %ld (need %ld); %.1f s (limit %.0f s); spot values %s", worst,
                kInterpolationResidual, elapsed, kInterpolationSeconds, spots ? "ok" : "wrong");
  return {r.passed() && worst >= kInterpolationResidual && elapsed < kInterpolationSeconds && spots, counts(r) + buf};
}

Outcome diamond() {
  VerifyConfig cfg;
  cfg.primes = {3, 5, 7};
  cfg.precision = kPrecision;
  cfg.count = 20;
  cfg.seed = kSeed;
  SuiteResult r = run_suite("diamond", cfg);
  const long worst = r.summary["worst_residual_valuation"].get<long>();

  // v = 2, eta = quadratic mod 5, m = -1: F_2(<2>, eta omega) = F_2(2, eta) = 1 + 2.
  auto eta = EmbeddedCharacter::embed(twist(DirichletCharacter::quadratic(5), 1, 5), ExtensionField::base(5), kPrecision);
  const bool anchor = agreement(diamond_euler_factor(2, eta, q5(-1), kPrecision), Rational(3)) >= kDiamondResidual &&
                      euler_factor_value(2, DirichletCharacter::quadratic(5), -1).as_rational() == 3;
  return {r.passed() && worst >= kDiamondResidual && anchor,
          counts(r) + "; worst residual " + std::to_string(worst) + " (need " + std::to_string(kDiamondResidual) +
              "); anchor " + (anchor ? "3 = 3" : "mismatch")};
}

Outcome lambda_oracle() {
  VerifyConfig cfg;
  cfg.primes = {3, 5};
  cfg.count = kLambdaInstances;
  cfg.seed = kSeed;
  auto start = std::chrono::steady_clock::now();
  SuiteResult r = run_suite("lambda-oracle", cfg);
  const double elapsed = seconds_since(start);
  const long per_prime = r.summary["instances_per_prime"].get<long>();
  char buf[96];
  std::snprintf(buf, sizeof buf, "; %ld instances per prime; %.1f s (limit %.0f s)", per_prime, elapsed, kLambdaSeconds);
  return {r.passed() && per_prime == kLambdaInstances && elapsed < kLambdaSeconds, counts(r) + buf};
}

Outcome weierstrass() {
  VerifyConfig cfg;
  cfg.count = kWeierstrassInstances;
  cfg.seed = kSeed;
  SuiteResult r = run_suite("weierstrass", cfg);
  const long instances = r.summary["instances"].get<long>();
  return {r.passed() && instances == kWeierstrassInstances, counts(r) + "; " + std::to_string(instances) + " instances"};
}

Outcome section6() {
  const auto dir = bundled_data_dir();
  std::string detail;
  bool ok = true;
  auto require = [&](bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += " [" + what + "]";
    }
  };

  auto one = section6_report(load_section6(dir / "sec6_1.json"), kPrecision);
  for (const auto& row : one.rows)
    require(row.h1_order_log == 0 && row.report.h0.val == 0 && row.report.h0.exact, "P = 1 orders trivial");

  auto two = section6_report(load_section6(dir / "sec6_2.json"), kPrecision);
  std::string table;
  for (const auto& row : two.rows) {
    const Rational e = row.e.to_rational();
    for (long want_e : {1L, 2L, 5L})
      if (e == want_e) {
        const long expected = want_e == 5 ? 2 : 1;
        require(row.h1_order_log == expected, "#H1 at e = " + std::to_string(want_e));
        if (row.h1_order_log) table += " " + std::to_string(want_e) + ":5^" + std::to_string(*row.h1_order_log);
      }
    if (e == 0) require(row.report.nu_exact == 1, "nu = 1 at e = 0");
  }

  auto four = section6_report(load_section6(dir / "sec6_4.json"), kPrecision);
  require(four.eisenstein, "Eisenstein verdict");
  for (const auto& row : four.rows)
    if (row.e.to_rational().get_den() % 5 != 0) require(row.h1_order_log == 1, "#H1 = 5 on Z_5");
  for (const auto& r : four.roots) require(r.passed, "root of P");
  bool flagged = false;
  for (const auto& c : four.claims)
    if (c.name == "abs_L_on_Zp") flagged = !c.agrees && c.expected_discrepancy && c.computed_value == "1/5";
  require(flagged, "|L_5| = 1 vs 1/5 flagged");

  VerifyConfig cfg;
  cfg.precision = kPrecision;
  SuiteResult suite = run_suite("section6", cfg);
  require(suite.passed(), "suite");
  return {ok, counts(suite) + "; #H1 at e = 1, 2, 5:" + table + "; |L_5| on Z_5 computed 1/5, published 1 (flagged)" +
                  detail};
}

Outcome additive() {
  VerifyConfig cfg;
  SuiteResult r = run_suite("additive", cfg);
  return {r.passed() && r.summary["max_dim"].get<long>() == 6, counts(r) + "; dim <= 6"};
}

Outcome decomposition() {
  VerifyConfig cfg;
  cfg.primes = {2, 3, 5, 7};
  cfg.count = kUnitsPerPrime;
  cfg.seed = kSeed;
  SuiteResult r = run_suite("decomposition", cfg);
  const long units = r.summary["units_per_prime"].get<long>();
  return {r.passed() && units == kUnitsPerPrime, counts(r) + "; " + std::to_string(units) + " units per prime"};
}

Outcome not_reproducible() {
  return {false,
          "real-quadratic p-adic L-functions, the etale cohomology groups and the main-conjecture inputs are not "
          "computed; the published Iwasawa data enter as user-supplied input"};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    bool attainable;
  };
  const Criterion criteria[] = {
      {1, "interpolation identity", interpolation, true},
      {2, "diamond Euler interpolation", diamond, true},
      {3, "SNF oracle equivalence", lambda_oracle, true},
      {4, "Weierstrass round-trip", weierstrass, true},
      {5, "published data reproduction", section6, true},
      {6, "additive Euler characteristic", additive, true},
      {7, "diamond decomposition", decomposition, true},
      {8, "ab-initio construction side", not_reproducible, false},
  };
  bool attainable_ok = true;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const Error& e) {
      o = {false, std::string(to_string(e.kind())) + ": " + e.what()};
    }
    std::printf("%s [%d] %s: %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    if (c.attainable && !o.passed) attainable_ok = false;
  }
  // Criterion 8 fails by construction and does not affect the exit status.
  return attainable_ok ? 0 : 1;
}
