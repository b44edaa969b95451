#include "iwalab/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>

#ifndef IWALAB_DATA_DIR
#define IWALAB_DATA_DIR "data"
#endif

namespace iwalab {

namespace {

constexpr size_t kMaxDetails = 20;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  bool coin(long one_in) { return uniform(1, one_in) == 1; }
  // Uniform in [0, p^digits).
  Integer digits(long p, long digits) {
    Integer out = 0;
    for (long i = 0; i < digits; ++i) out = out * p + uniform(0, p - 1);
    return out;
  }
  Integer unit(long p, long count) { return digits(p, count - 1) * p + uniform(1, p - 1); }

 private:
  std::mt19937_64 gen_;
};

struct Tally {
  SuiteResult& r;
  void check(bool ok, const std::function<std::string()>& detail) {
    ++r.checks;
    if (ok) return;
    ++r.failures;
    if (r.failure_details.size() < kMaxDetails) r.failure_details.push_back(detail());
  }
};

std::vector<long> primes_or(const VerifyConfig& c, std::vector<long> fallback) {
  return c.primes.empty() ? fallback : c.primes;
}

long count_or(const VerifyConfig& c, long fallback) { return c.count > 0 ? c.count : fallback; }

PadicNumber exact_int(const FieldPtr& field, long v) { return PadicNumber::exact(field, Rational(v)); }

long floor_long(const Rational& q) { return floor_of(q).get_si(); }

std::vector<DirichletCharacter> even_primitive_characters(long p, long max_conductor) {
  std::vector<DirichletCharacter> out;
  const long orders = p == 2 ? 2 : p * (p - 1);
  for (long f = 1; f <= max_conductor; ++f)
    for (const auto& c : DirichletCharacter::all_modulo(f))
      if (c.is_primitive() && c.is_even() && orders % c.order() == 0) out.push_back(c);
  return out;
}

// Acceptance: v(L_{p,S}(m) - L_S*(m, chi omega^(m-1))) >= N - 5.
SuiteResult suite_interpolation(const VerifyConfig& cfg) {
  SuiteResult r;
  Tally t{r};
  long worst = PadicNumber::kExact;
  Json per_prime = Json::object();
  for (long p : primes_or(cfg, {3, 5, 7})) {
    LSeriesOptions opts;
    opts.precision = cfg.precision;
    opts.assume_p2 = cfg.assume_p2;
    long n = 0;
    for (const auto& chi : even_primitive_characters(p, cfg.max_conductor)) {
      PadicLSeries s = lp_series(chi, default_field_for(chi, p), opts);
      for (long m = 0; m >= -5; --m) {
        InterpolationReport rep = interpolation_check(s, m, {p});
        worst = std::min(worst, rep.residual_valuation);
        ++n;
        t.check(rep.passed, [&] {
          return "p=" + std::to_string(p) + " chi=" + chi.to_text() + " m=" + std::to_string(m) +
                 " residual " + std::to_string(rep.residual_valuation);
        });
      }
    }
    per_prime[std::to_string(p)] = n;
  }
  r.summary = {{"identities", per_prime}, {"worst_residual_valuation", worst}, {"target", cfg.precision - 5}};
  return r;
}

// F_v(<v>^-m, eta omega^-m) = F_v(v^-m, eta) to precision N - 2.
SuiteResult suite_diamond(const VerifyConfig& cfg) {
  SuiteResult r;
  Tally t{r};
  Rng rng(cfg.seed);
  const long per_prime = count_or(cfg, 20);
  long worst = PadicNumber::kExact;
  for (long p : primes_or(cfg, {3, 5, 7})) {
    long made = 0;
    while (made < per_prime) {
      long f = rng.uniform(1, 60);
      auto all = DirichletCharacter::all_modulo(f);
      const auto& eta = all[rng.uniform(0, static_cast<long>(all.size()) - 1)];
      if (!eta.is_primitive()) continue;
      FieldPtr field;
      try {
        field = default_field_for(eta, p);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::RootOfUnityUnavailable) continue;
        throw;
      }
      ++made;
      const long W = cfg.precision + 4;
      for (long m = -5; m <= 5; ++m) {
        EmbeddedCharacter twisted = EmbeddedCharacter::embed(twist(eta, -m, p), field, W);
        for (long v : {2L, 3L, 7L, 11L}) {
          if (v == p) continue;
          PadicNumber lhs = diamond_euler_factor(v, twisted, exact_int(field, m), W);
          CyclotomicValue rhs_exact = euler_factor_value(v, eta, m);
          PadicNumber rhs = rhs_exact.embed(root_of_unity(field, rhs_exact.order(), W));
          long res = floor_long((lhs - rhs).valuation_bound());
          worst = std::min(worst, res);
          t.check(res >= cfg.precision - 2, [&] {
            return "p=" + std::to_string(p) + " eta=" + eta.to_text() + " v=" + std::to_string(v) +
                   " m=" + std::to_string(m) + " residual " + std::to_string(res);
          });
        }
      }
    }
  }
  r.summary = {{"characters_per_prime", per_prime}, {"worst_residual_valuation", worst}};
  return r;
}

PadicPolynomial random_distinguished(Rng& rng, const FieldPtr& field, long degree, long precision) {
  const long p = field->p();
  PadicPolynomial g(degree + 1, exact_int(field, 0));
  g[degree] = exact_int(field, 1);
  for (long i = 0; i < degree; ++i) {
    long v = rng.uniform(1, 3);
    Integer c = power_of(p, v) * rng.unit(p, precision);
    if (rng.coin(2)) c = -c;
    g[i] = PadicNumber::exact(field, Rational(c));
  }
  return g;
}

// SNF of u(1+T) - 1 on O[T]/(g) against |g(u^-1 - 1)|.
SuiteResult suite_lambda_oracle(const VerifyConfig& cfg) {
  SuiteResult r;
  Tally t{r};
  Rng rng(cfg.seed);
  const long per_prime = count_or(cfg, 200);
  long infinite = 0;
  long structure_checks = 0;
  for (long p : primes_or(cfg, {3, 5})) {
    FieldPtr field = ExtensionField::base(p);
    const auto frame = CyclotomicFrame::for_prime(p);
    for (long k = 0; k < per_prime; ++k) {
      long degree = rng.uniform(1, 4);
      PadicPolynomial g = random_distinguished(rng, field, degree, 6);
      if (rng.coin(8)) g = poly_mul(polynomial_from_text(field, "T"), random_distinguished(rng, field, degree - 1, 6));
      long e = rng.uniform(-4, 4);
      Rational u_val = 1;
      for (long i = 0; i < std::abs(e - 1); ++i) u_val *= frame.q;
      if (e - 1 < 0) u_val = 1 / u_val;
      PadicNumber u = PadicNumber::exact(field, u_val);
      LambdaModuleStructure Y;
      Y.poly_parts = {g};
      GammaSizeReport size = gamma_invariants_size(Y, u, field);
      SnfReport snf = snf_oracle(g, u, cfg.precision + 10);
      bool ok = size.finite == snf.finite;
      if (ok && size.finite) ok = snf.cokernel_valuation - snf.kernel_valuation == size.ratio_valuation;
      if (!size.finite) ++infinite;
      t.check(ok, [&] {
        return "p=" + std::to_string(p) + " g=" + poly_to_string(g) + " e=" + std::to_string(e) +
               " gamma finite=" + std::to_string(size.finite) + " v=" + size.ratio_valuation.get_str() +
               " snf finite=" + std::to_string(snf.finite) + " coker=" + snf.cokernel_valuation.get_str();
      });
      if (size.finite && rng.coin(2)) {
        // Coinvariants of A (+) B multiply to the size ratio of the product.
        PadicPolynomial g2 = random_distinguished(rng, field, rng.uniform(0, 3), 6);
        Y.poly_parts.push_back(g2);
        GammaSizeReport both = gamma_invariants_size(Y, u, field);
        Rational sum = 0;
        for (const auto& s : coinvariants_structure(Y.poly_parts, u)) sum += s.valuation;
        ++structure_checks;
        t.check(both.finite && sum == both.ratio_valuation, [&] {
          return "coinvariants of " + poly_to_string(g) + " and " + poly_to_string(g2) + " sum " + sum.get_str() +
                 " vs " + both.ratio_valuation.get_str();
        });
      }
    }
  }
  r.summary = {{"instances_per_prime", per_prime}, {"not_finite", infinite}, {"structure_checks", structure_checks}};
  return r;
}

// prepare(pi^mu g u) recovers (mu, g mod pi^(N' - mu)).
SuiteResult suite_weierstrass(const VerifyConfig& cfg) {
  SuiteResult r;
  Tally t{r};
  Rng rng(cfg.seed);
  const long total = count_or(cfg, 100);
  const long n_prime = 12;
  const long M = 64;
  auto primes = primes_or(cfg, {3, 5});
  long min_cert = PadicNumber::kExact;
  for (long k = 0; k < total; ++k) {
    long p = primes[k % primes.size()];
    FieldPtr field = ExtensionField::base(p);
    long mu = rng.uniform(0, 2);
    long degree = rng.uniform(0, 4);
    PadicPolynomial g = random_distinguished(rng, field, degree, n_prime);
    PadicPolynomial unit(rng.uniform(1, 7), exact_int(field, 0));
    unit[0] = PadicNumber::exact(field, Rational(rng.unit(p, n_prime)));
    for (size_t i = 1; i < unit.size(); ++i) unit[i] = PadicNumber::exact(field, Rational(rng.digits(p, n_prime)));
    PadicPolynomial G = poly_mul(g, unit);
    Integer scale = power_of(p, mu);
    for (auto& c : G) c = (c * PadicNumber::exact(field, Rational(scale))).with_precision(n_prime);
    WeierstrassData w = weierstrass_prepare(TruncatedPowerSeries::from_polynomial(G, M));
    bool ok = w.mu == mu && w.lambda == degree && w.certification == Certification::Exact;
    for (long i = 0; ok && i <= degree; ++i)
      ok = (w.distinguished[i] - g[i]).valuation_bound() >= n_prime - mu;
    if (ok) {
      // pi^mu g u reproduces G mod (pi^(N' - mu), T^M).
      auto prod = TruncatedPowerSeries::from_polynomial(w.distinguished, M) * w.unit_head;
      for (long i = 0; ok && i < prod.terms(); ++i) {
        PadicNumber lhs = prod[i] * PadicNumber::exact(field, Rational(scale));
        PadicNumber rhs = i < static_cast<long>(G.size()) ? G[i] : exact_int(field, 0);
        ok = (lhs - rhs).valuation_bound() >= n_prime - mu;
      }
    }
    min_cert = std::min(min_cert, w.certified_precision_pi);
    t.check(ok, [&] {
      return "p=" + std::to_string(p) + " mu=" + std::to_string(mu) + " g=" + poly_to_string(g) + " got mu=" +
             std::to_string(w.mu) + " lambda=" + std::to_string(w.lambda) + " g=" + poly_to_string(w.distinguished);
    });
  }
  r.summary = {{"instances", total}, {"coefficient_precision", n_prime}, {"terms", M},
               {"min_certified_precision_pi", min_cert}};
  return r;
}

// Additive Euler characteristic over dim <= 6: <= 0, and 0 iff even.
SuiteResult suite_additive(const VerifyConfig&) {
  SuiteResult r;
  Tally t{r};
  long mismatches_rejected = 0;
  for (long dim = 0; dim <= 6; ++dim) {
    for (long tr = -dim; tr <= dim; ++tr) {
      if ((dim - tr) % 2 != 0) {
        try {
          additive_euler_char(dim, tr);
          t.check(false, [&] { return "parity mismatch accepted at dim " + std::to_string(dim); });
        } catch (const Error& e) {
          ++mismatches_rejected;
          t.check(e.kind() == ErrorKind::ParityMismatch, [&] { return std::string("wrong error kind"); });
        }
        continue;
      }
      long v = additive_euler_char(dim, tr);
      t.check(v <= 0 && ((v == 0) == (tr == dim)), [&] {
        return "dim " + std::to_string(dim) + " trace " + std::to_string(tr) + " gave " + std::to_string(v);
      });
    }
  }
  r.summary = {{"max_dim", 6}, {"parity_mismatches_rejected", mismatches_rejected}};
  return r;
}

// z = omega <z>, omega^(p-1) = 1, <z> = 1 mod q0, and integer powers agree.
SuiteResult suite_decomposition(const VerifyConfig& cfg) {
  SuiteResult r;
  Tally t{r};
  Rng rng(cfg.seed);
  const long per_prime = count_or(cfg, 200);
  const long N = cfg.precision;
  for (long p : primes_or(cfg, {2, 3, 5, 7})) {
    FieldPtr field = ExtensionField::base(p);
    const auto frame = CyclotomicFrame::for_prime(p);
    const long root_order = p == 2 ? 2 : p - 1;
    for (long k = 0; k < per_prime; ++k) {
      PadicNumber z = PadicNumber::from_rational(field, Rational(rng.unit(p, N)), N);
      DiamondParts parts = diamond_decompose(z, N);
      PadicNumber one = exact_int(field, 1);
      bool ok = (parts.omega * parts.angle - z).valuation_bound() >= N;
      ok = ok && (parts.omega.pow(root_order) - one).valuation_bound() >= N;
      ok = ok && (parts.angle - one).valuation_bound() >= frame.kappa();
      long n = rng.uniform(-5, 5);
      PadicNumber via_pow = diamond_pow(z, exact_int(field, n), frame, N);
      ok = ok && (via_pow - parts.angle.pow(n)).valuation_bound() >= N;
      t.check(ok, [&] { return "p=" + std::to_string(p) + " z=" + z.to_string() + " n=" + std::to_string(n); });
    }
  }
  r.summary = {{"units_per_prime", per_prime}};
  return r;
}

Rational pipeline_valuation(const PadicLSeries& s, const PadicNumber& e, long p, long terms) {
  IwasawaAnalyticSeries iw = to_iwasawa_series(s, terms);
  std::vector<PadicNumber> phi(iw.phi.begin(), iw.phi.end());
  WeierstrassData w = weierstrass_prepare(TruncatedPowerSeries(iw.field, phi));
  LambdaModuleStructure Y = main_conjecture_link(w, p, s.character().character().order(), false);
  CharacteristicData data = char_series(Y, iw.field);
  PadicNumber t = iw.t_at(e.embed_into(iw.field), s.working_precision());
  const long e_ram = iw.field->ramification_index();
  return make_rational(data.mu, e_ram) + poly_eval(data.g, t).valuation() - iw.h_at(t).valuation();
}

SuiteResult suite_euler_char(const VerifyConfig& cfg) {
  SuiteResult r;
  Tally t{r};
  Rng rng(cfg.seed);
  long identities = 0, pipelines = 0, additivity = 0, s_changes = 0, constancy = 0;
  for (long p : primes_or(cfg, {5})) {
    LSeriesOptions opts;
    opts.precision = cfg.precision;
    opts.terms = 16;
    auto chars = even_primitive_characters(p, std::min(cfg.max_conductor, 25L));
    std::vector<PadicLSeries> series;
    for (const auto& chi : chars) series.push_back(lp_series(chi, default_field_for(chi, p), opts));
    const std::vector<Rational> points = {2, -1, -2, -3, make_rational(1, 2), make_rational(-2, 3), 7};
    std::map<size_t, std::vector<Rational>> ec_by_char;
    for (size_t ci = 0; ci < series.size(); ++ci) {
      const auto& s = series[ci];
      const auto& chi = chars[ci];
      const FieldPtr& field = s.character().field();
      for (const auto& ev : points) {
        PadicNumber e = PadicNumber::exact(field, ev);
        TwistPoint tp = TwistPoint::for_character(e, chi, p);
        EulerCharReport rep = euler_char(s, tp, {p});
        BoundsVerdict b = conjecture_check(rep);
        ++identities;
        t.check(!rep.finite || (*rep.ec_valuation == rep.h1.val - rep.h0.val && rep.h2_trivial && b.holds), [&] {
          return "identity at chi=" + chi.to_text() + " e=" + ev.get_str();
        });
        ec_by_char[ci].push_back(rep.finite ? *rep.ec_valuation : Rational(-1));
        // The module side applies when p does not divide the order.
        if (rep.finite && chi.order() % p != 0) {
          Rational via_modules = pipeline_valuation(s, e, p, 16);
          ++pipelines;
          t.check(via_modules == *rep.ec_valuation, [&] {
            return "pipeline at chi=" + chi.to_text() + " e=" + ev.get_str() + ": " + via_modules.get_str() +
                   " vs " + rep.ec_valuation->get_str();
          });
        }
        // S-change: EC over S' = EC over S + sum of added factor valuations.
        std::set<long> larger = {p, 2, 3, 7, 11};
        larger.erase(p == 2 ? 3 : 0);
        EulerCharReport big = euler_char(s, tp, larger);
        SChangeReport sc = s_change(s.character(), e, {p}, larger, s.working_precision());
        if (rep.finite && big.finite && sc.corank_jump == 0) {
          ++s_changes;
          t.check(*big.ec_valuation == *rep.ec_valuation + sc.factor_valuation, [&] {
            return "S-change at chi=" + chi.to_text() + " e=" + ev.get_str();
          });
        }
        // #H^0 is locally constant in e.
        if (rep.h0.exact && !rep.h0.infinite) {
          long n = floor_long(rep.h0.val) + 3;
          Rational shifted = ev + Rational(power_of(p, n)) * rng.uniform(1, 50);
          PadicNumber e2 = PadicNumber::exact(field, shifted);
          H0Prediction h2 = predict_h0(s.character(), TwistPoint::for_character(e2, chi, p), s.working_precision());
          ++constancy;
          t.check(h2.size.val == rep.h0.val && h2.size.exact, [&] {
            return "H^0 not locally constant at chi=" + chi.to_text() + " e=" + ev.get_str();
          });
        }
      }
    }
    // EC is additive over direct sums: the sum's L-value is the product.
    for (long k = 0; k < 20 && series.size() >= 2; ++k) {
      size_t a = rng.uniform(0, static_cast<long>(series.size()) - 1);
      size_t b = rng.uniform(0, static_cast<long>(series.size()) - 1);
      size_t pi = rng.uniform(0, static_cast<long>(points.size()) - 1);
      Rational ea = ec_by_char[a][pi], eb = ec_by_char[b][pi];
      if (ea < 0 || eb < 0) continue;
      // Embed both values in a field containing both and multiply.
      FieldPtr fa = series[a].character().field(), fb = series[b].character().field();
      FieldPtr big = fa->degree() >= fb->degree() ? fa : fb;
      PadicNumber la = lps_eval(series[a], PadicNumber::exact(fa, points[pi]), {p});
      PadicNumber lb = lps_eval(series[b], PadicNumber::exact(fb, points[pi]), {p});
      Rational joint;
      try {
        joint = (la.embed_into(big) * lb.embed_into(big)).valuation();
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::FieldMismatch) continue;
        throw;
      }
      ++additivity;
      t.check(joint == ea + eb, [&] { return "additivity for " + chars[a].to_text() + " + " + chars[b].to_text(); });
    }
  }
  r.summary = {{"identities", identities},     {"module_pipelines", pipelines}, {"additivity_pairs", additivity},
               {"s_change_checks", s_changes}, {"local_constancy", constancy}};
  return r;
}

SuiteResult suite_section6(const VerifyConfig& cfg) {
  SuiteResult r;
  Tally t{r};
  std::vector<std::filesystem::path> files = cfg.data;
  if (files.empty()) {
    auto dir = bundled_data_dir();
    for (const char* name : {"sec6_1.json", "sec6_2.json", "sec6_4.json"}) files.push_back(dir / name);
  }
  Json reports = Json::array();
  for (const auto& f : files) {
    Section6Report rep = section6_report(load_section6(f), cfg.precision);
    for (const auto& c : rep.claims)
      t.check(c.agrees != c.expected_discrepancy, [&] {
        return f.filename().string() + ": claim " + c.name + " published " + c.published_value + " computed " +
               c.computed_value;
      });
    for (const auto& root : rep.roots)
      t.check(root.passed, [&] { return f.filename().string() + ": root check " + root.alpha.to_string(); });
    Json table = Json::array();
    for (const auto& row : rep.rows)
      table.push_back({{"e", row.e.to_rational().get_str()},
                       {"h1_order_log_p", row.h1_order_log ? Json(*row.h1_order_log) : Json(nullptr)},
                       {"nu", row.report.nu_exact ? Json(*row.report.nu_exact) : Json(nullptr)}});
    Json discrepancies = Json::array();
    for (const auto& c : rep.claims)
      if (!c.agrees) discrepancies.push_back({{"claim", c.name}, {"published", c.published_value}, {"computed", c.computed_value}});
    reports.push_back({{"file", f.filename().string()},
                       {"name", rep.name},
                       {"eisenstein", rep.eisenstein},
                       {"table", table},
                       {"discrepancies", discrepancies}});
  }
  r.summary = {{"reports", reports}};
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"interpolation", "diamond",  "lambda-oracle", "weierstrass",
                                                 "euler-char",    "section6", "additive",      "decomposition"};
  return names;
}

SuiteResult run_suite(const std::string& name, const VerifyConfig& config) {
  static const std::map<std::string, std::function<SuiteResult(const VerifyConfig&)>> table = {
      {"interpolation", suite_interpolation}, {"diamond", suite_diamond},     {"lambda-oracle", suite_lambda_oracle},
      {"weierstrass", suite_weierstrass},     {"euler-char", suite_euler_char}, {"section6", suite_section6},
      {"additive", suite_additive},           {"decomposition", suite_decomposition}};
  auto it = table.find(name);
  if (it == table.end()) fail(ErrorKind::InvalidArgument, "unknown suite '" + name + "'");
  SuiteResult r = it->second(config);
  r.suite = name;
  r.seed = config.seed;
  return r;
}

Json suite_json(const SuiteResult& result) {
  return {{"suite", result.suite},   {"seed", result.seed},       {"checks", result.checks},
          {"failures", result.failures}, {"passed", result.passed()}, {"summary", result.summary},
          {"failure_details", result.failure_details}};
}

std::filesystem::path bundled_data_dir() {
  if (const char* env = std::getenv("IWALAB_DATA")) return env;
  return IWALAB_DATA_DIR;
}

}  // namespace iwalab
