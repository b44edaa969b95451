#include "iwalab/cli.hpp"

#include <algorithm>
#include <memory>
#include <optional>

#include "CLI11.hpp"

#include "iwalab/json_io.hpp"
#include "iwalab/poly_text.hpp"
#include "iwalab/verify.hpp"

namespace iwalab {

namespace {

struct RunConfig {
  long p = 5;
  long precision = 20;
  long terms = 16;
  std::string cache_path;
  bool assume_p2 = false;
  std::string format = "json";
};

void require_config(const RunConfig& c) {
  if (!is_prime(c.p)) throw CLI::ValidationError("--p", std::to_string(c.p) + " is not prime");
  if (c.precision < 4) throw CLI::ValidationError("--prec", "precision must be at least 4");
  if (c.terms < 8) throw CLI::ValidationError("--terms", "series terms must be at least 8");
}

// An element of `field` written as a polynomial in its generator x, e.g.
// "-1", "1/2" or "1/5*x".
PadicNumber parse_point(const FieldPtr& field, const std::string& text) {
  auto parsed = parse_polynomial(text, 'x');
  if (static_cast<long>(parsed.size()) > field->degree() && field->kind() != ExtensionField::Kind::Base)
    fail(ErrorKind::ParseError, "'" + text + "' has degree at least [E:Q_p] in x");
  if (field->kind() == ExtensionField::Kind::Base && parsed.size() > 1)
    fail(ErrorKind::ParseError, "'" + text + "' uses x over Q_p; pass --field");
  std::vector<Rational> coords(std::max<long>(field->degree(), 1), Rational(0));
  for (size_t i = 0; i < parsed.size(); ++i) {
    if (parsed[i].precision) fail(ErrorKind::ParseError, "evaluation points must be exact");
    coords[i] = parsed[i].value;
  }
  return PadicNumber::exact(field, coords);
}

class Session {
 public:
  explicit Session(const RunConfig& cfg) {
    if (!cfg.cache_path.empty()) owned_ = std::make_unique<BernoulliCache>(cfg.cache_path);
  }
  BernoulliCache& cache() { return owned_ ? *owned_ : BernoulliCache::shared(); }

 private:
  std::unique_ptr<BernoulliCache> owned_;
};

Json value_json(const CyclotomicValue& v) {
  return v.is_rational() ? rational_json(v.as_rational()) : cyclotomic_json(v);
}

std::set<long> prime_set(const std::vector<long>& list, long p) {
  std::set<long> s(list.begin(), list.end());
  s.insert(p);
  for (long v : s)
    if (!is_prime(v)) throw CLI::ValidationError("--S", std::to_string(v) + " is not prime");
  return s;
}

PadicLSeries series_for_point(const DirichletCharacter& chi, const RunConfig& cfg, const PadicNumber* point,
                              BernoulliCache& cache) {
  LSeriesOptions opts;
  opts.precision = cfg.precision;
  opts.assume_p2 = cfg.assume_p2;
  if (point) {
    PadicNumber u = *point - PadicNumber::exact(point->field(), Rational(1));
    if (!u.is_zero() && u.valuation() < 0) opts.min_u_valuation = u.valuation();
  }
  return lp_series(chi, default_field_for(chi, cfg.p), opts, cache);
}

// a/b with |a|, |b| <= sqrt(m/2) and a = b x mod m, by the half extended
// Euclidean algorithm; nullopt when no such fraction exists.
std::optional<Rational> reconstruct(const Integer& x, const Integer& m) {
  Integer bound = sqrt(Integer(m / 2));
  Integer r0 = m, r1 = x % m, t0 = 0, t1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1, r1 = r2, t0 = t1, t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound || gcd(r1, t1) != 1) return std::nullopt;
  Rational out(r1, t1);
  out.canonicalize();
  return out;
}

// Small rational with this p-adic expansion, when the value lies in Q_p.
std::optional<Rational> rational_guess(const PadicNumber& v) {
  auto coords = v.rational_coords();
  for (size_t i = 1; i < coords.size(); ++i)
    if (coords[i] != 0) return std::nullopt;
  if (v.is_exact() || v.is_zero()) return v.is_zero() ? Rational(0) : coords[0];
  const long p = v.p();
  const long k = valuation_of(coords[0], p);
  const long room = v.precision() - k;
  if (room < 2) return std::nullopt;
  Rational pk = k >= 0 ? Rational(power_of(p, k)) : Rational(1) / Rational(power_of(p, -k));
  Rational w = coords[0] / pk;
  Integer mod = power_of(p, room);
  Integer den_inv;
  mpz_invert(den_inv.get_mpz_t(), w.get_den().get_mpz_t(), mod.get_mpz_t());
  auto r = reconstruct(Integer(w.get_num() * den_inv % mod), mod);
  if (!r) return std::nullopt;
  return *r * pk;
}

void emit(std::ostream& out, const Json& j, const std::string& format) {
  if (format == "json") {
    out << dump(j);
    return;
  }
  for (const auto& [key, value] : j.items())
    out << key << "\t" << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kubota-Leopoldt p-adic L-functions, Iwasawa data and cohomology predictions", "iwalab"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--cache", cfg.cache_path, "Bernoulli cache file (JSON lines)")->envname("IWALAB_CACHE");
  app.add_option("--format", cfg.format, "Output mode")->check(CLI::IsMember({"json", "table"}));

  auto add_common = [&](CLI::App* sub, bool with_p) {
    if (with_p) sub->add_option("--p", cfg.p, "The prime p");
    sub->add_option("--prec", cfg.precision, "Target absolute precision N")->envname("IWALAB_PREC");
    sub->add_flag("--assume-p2", cfg.assume_p2, "Accept p = 2 under the odd-order main-conjecture assumption");
  };

  long n = 0;
  long m = 0;
  std::string chi_text;
  std::string point_text;
  std::string field_text;
  std::vector<long> s_list;
  std::optional<long> r2;

  auto* bern = app.add_subcommand("bernoulli", "Bernoulli number B_n or B_{n,chi}");
  bern->add_option("--n", n, "Index n")->required()->check(CLI::NonNegativeNumber);
  bern->add_option("--char", chi_text, "Dirichlet character");

  auto* lval = app.add_subcommand("lvalue", "Classical L*(m, chi) at m <= 0");
  lval->add_option("--char", chi_text, "Dirichlet character")->required();
  lval->add_option("--m", m, "Non-positive integer m")->required()->check(CLI::Range(-100000L, 0L));
  lval->add_option("--S", s_list, "Primes whose Euler factors are removed")->delimiter(',');

  auto* plval = app.add_subcommand("plvalue", "p-adic L_{p,S}(s, chi)");
  add_common(plval, true);
  plval->add_option("--char", chi_text, "Even Dirichlet character")->required();
  plval->add_option("--s", point_text, "Evaluation point as a polynomial in the field generator x")->required();
  plval->add_option("--field", field_text, "Field of the point: Qp, unram:<poly>, eis:<poly>, cyc:<k>");
  plval->add_option("--S", s_list, "Prime set S (p is always included)")->delimiter(',');

  auto* iws = app.add_subcommand("iwaseries", "Iwasawa power series Phi(T), h(T) and Weierstrass data");
  add_common(iws, true);
  iws->add_option("--char", chi_text, "Even Dirichlet character")->required();
  iws->add_option("--terms", cfg.terms, "Number of T-coefficients M");

  auto* ec = app.add_subcommand("eulerchar", "Predicted cohomology sizes from L_{p,S}(e, chi)");
  add_common(ec, true);
  ec->add_option("--char", chi_text, "Even Dirichlet character")->required();
  ec->add_option("--e", point_text, "Twist e as a polynomial in the field generator x")->required();
  ec->add_option("--field", field_text, "Field of e");
  ec->add_option("--S", s_list, "Prime set S")->delimiter(',');
  ec->add_option("--r2", r2, "Supplied corank r2 for the conjecture check");

  std::vector<std::string> g_texts;
  std::vector<long> mu_parts;
  std::string u_text = "1";
  auto* lam = app.add_subcommand("lambda-oracle", "Gamma-invariant sizes and the Smith normal form oracle");
  add_common(lam, true);
  lam->add_option("--g", g_texts, "Distinguished polynomial in T (repeatable)")->required();
  lam->add_option("--mu", mu_parts, "mu-parts")->delimiter(',');
  lam->add_option("--u", u_text, "1-unit u acting as u(1+T)");

  std::vector<std::string> data_files;
  auto* sec = app.add_subcommand("section6", "Report on user-supplied Iwasawa data");
  add_common(sec, false);
  sec->add_option("--data", data_files, "Data file")->required()->check(CLI::ExistingFile);

  std::string suite;
  VerifyConfig vcfg;
  std::vector<long> suite_primes;
  auto* ver = app.add_subcommand("verify", "Run a property suite");
  add_common(ver, false);
  ver->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  ver->add_option("--p", suite_primes, "Primes (comma separated)")->delimiter(',');
  ver->add_option("--max-conductor", vcfg.max_conductor, "Largest conductor enumerated");
  ver->add_option("--count", vcfg.count, "Random instances");
  ver->add_option("--seed", vcfg.seed, "Seed");
  ver->add_option("--data", data_files, "Iwasawa data files")->check(CLI::ExistingFile);

  std::string action;
  long max_n = 60;
  auto* cache = app.add_subcommand("cache", "Bernoulli cache administration");
  cache->add_option("action", action, "stats or prewarm")->required()->check(CLI::IsMember({"stats", "prewarm"}));
  cache->add_option("--max-n", max_n, "Prewarm through B_K")->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    require_config(cfg);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "iwalab: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    Session session(cfg);
    Json result;
    if (*bern) {
      if (chi_text.empty()) {
        result = {{"n", n}, {"value", rational_json(bernoulli(n, session.cache()))}};
      } else {
        auto chi = DirichletCharacter::parse(chi_text);
        result = {{"n", n}, {"char", chi.to_text()}, {"value", value_json(generalized_bernoulli(n, chi, session.cache()))}};
      }
    } else if (*lval) {
      auto chi = DirichletCharacter::parse(chi_text);
      CyclotomicValue v = s_list.empty() ? l_star(m, chi, session.cache())
                                         : l_star_truncated(m, chi, {s_list.begin(), s_list.end()}, session.cache());
      result = {{"char", chi.to_text()}, {"m", m}, {"S", s_list}, {"value", value_json(v)}};
    } else if (*plval || *ec) {
      auto chi = DirichletCharacter::parse(chi_text);
      FieldPtr point_field = field_text.empty() ? default_field_for(chi, cfg.p) : ExtensionField::parse(cfg.p, field_text);
      PadicNumber point = parse_point(point_field, point_text);
      PadicLSeries series = series_for_point(chi, cfg, &point, session.cache());
      std::set<long> S = prime_set(s_list, cfg.p);
      if (*plval) {
        PadicNumber v = lps_eval(series, point, S);
        result = {{"char", chi.to_text()}, {"p", cfg.p}, {"s", padic_json(point)},
                  {"S", std::vector<long>(S.begin(), S.end())}, {"value", padic_json(v)}};
        if (auto r = rational_guess(v)) result["rational"] = r->get_str();
      } else {
        TwistPoint tp = TwistPoint::for_character(point, chi, cfg.p);
        EulerCharReport rep = euler_char(series, tp, S);
        if (r2) {
          rep.r2 = *r2;
          rep.r1 = *r2;
        }
        result = euler_report_json(rep, conjecture_check(rep));
      }
    } else if (*iws) {
      auto chi = DirichletCharacter::parse(chi_text);
      LSeriesOptions opts;
      opts.precision = cfg.precision;
      opts.assume_p2 = cfg.assume_p2;
      opts.terms = cfg.terms;
      PadicLSeries series = lp_series(chi, default_field_for(chi, cfg.p), opts, session.cache());
      IwasawaAnalyticSeries iw = to_iwasawa_series(series, cfg.terms);
      result = {{"series", series_json(series)}, {"iwasawa", iwasawa_json(iw)}};
      WeierstrassData w = weierstrass_prepare(TruncatedPowerSeries(iw.field, iw.phi));
      result["weierstrass"] = weierstrass_json(w);
    } else if (*lam) {
      FieldPtr field = ExtensionField::base(cfg.p);
      PadicNumber u = parse_point(field, u_text);
      LambdaModuleStructure Y;
      Y.mu_parts = mu_parts;
      for (const auto& g : g_texts) Y.poly_parts.push_back(polynomial_from_text(field, g));
      GammaSizeReport size = gamma_invariants_size(Y, u, field);
      Json coinv = Json::array();
      Json snf = Json::array();
      for (const auto& s : coinvariants_structure(Y.poly_parts, u))
        coinv.push_back({{"finite", s.finite}, {"valuation", s.finite ? Json(s.valuation.get_str()) : Json(nullptr)}});
      for (const auto& g : Y.poly_parts) {
        SnfReport r = snf_oracle(g, u, cfg.precision);
        Json diag = Json::array();
        for (const auto& d : r.diagonal) diag.push_back(d.get_str());
        snf.push_back({{"g", poly_to_string(g)}, {"finite", r.finite}, {"kernel_valuation", r.kernel_valuation.get_str()},
                       {"cokernel_valuation", r.cokernel_valuation.get_str()}, {"diagonal", diag},
                       {"rank_deficiency", r.rank_deficiency}});
      }
      result = {{"gamma", {{"finite", size.finite}, {"ratio_valuation", size.ratio_valuation.get_str()},
                           {"log_p_order", size.log_p_order}}},
                {"coinvariants", coinv},
                {"snf", snf}};
    } else if (*sec) {
      Json reports = Json::array();
      for (const auto& f : data_files) reports.push_back(section6_json(section6_report(load_section6(f), cfg.precision)));
      result = reports.size() == 1 ? reports[0] : Json{{"reports", reports}};
    } else if (*ver) {
      vcfg.primes = suite_primes;
      vcfg.precision = cfg.precision;
      vcfg.assume_p2 = cfg.assume_p2;
      for (const auto& f : data_files) vcfg.data.emplace_back(f);
      SuiteResult r = run_suite(suite, vcfg);
      emit(out, suite_json(r), cfg.format);
      return r.passed() ? kExitOk : kExitVerifyFailed;
    } else if (*cache) {
      BernoulliCache& c = session.cache();
      if (action == "prewarm") c.prewarm(max_n);
      auto st = c.stats();
      result = {{"action", action}, {"entries", st.entries}, {"max_n", st.max_n},
                {"file", c.file() ? Json(c.file()->string()) : Json(nullptr)}};
      if (action == "prewarm") result["vsc_verified"] = st.entries;
    }
    emit(out, result, cfg.format);
    return kExitOk;
  } catch (const CLI::ValidationError& e) {
    err << "iwalab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    out << dump(error_json(e));
    return kExitDomain;
  }
}

}  // namespace iwalab
