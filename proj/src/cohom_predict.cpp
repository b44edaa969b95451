#include "iwalab/cohom_predict.hpp"

#include <algorithm>

namespace iwalab {

namespace {

PadicNumber exact_int(const FieldPtr& field, long v) { return PadicNumber::exact(field, Rational(v)); }

bool has_prime_other_than(long n, long p) {
  for (long l : prime_factors(n))
    if (l != p) return true;
  return false;
}

// p^(degree * v) as text when it is a whole power, else "p^(v)".
std::string order_text(long p, const Rational& v, long degree) {
  Rational k = v * degree;
  if (k.get_den() == 1 && k >= 0 && k < 4096) return power_of(p, k.get_num().get_si()).get_str();
  return std::to_string(p) + "^(" + k.get_str() + ")";
}

std::string abs_text(long p, const Rational& v) {
  if (v == 0) return "1";
  if (v.get_den() == 1 && v > 0) return "1/" + power_of(p, v.get_num().get_si()).get_str();
  return std::to_string(p) + "^(" + Rational(-v).get_str() + ")";
}

}  // namespace

TwistPoint TwistPoint::for_character(const PadicNumber& e, const DirichletCharacter& chi, long p) {
  return {e, CyclotomicFrame::for_prime(p), chi.is_trivial()};
}

void TwistPoint::require_admissible() const {
  if (!e_.valid()) fail(ErrorKind::InvalidArgument, "twist point is uninitialised");
  if (!admissible())
    fail(ErrorKind::InadmissibleTwist, "e = " + e_.to_string() + " is not in the admissible domain" +
                                           (excludes_one_ ? " (e = 1 is excluded for the trivial character)" : ""));
}

H0Prediction predict_h0_from_order(long p, long chi_order, bool second_kind) {
  if (chi_order < 1) fail(ErrorKind::InvalidArgument, "character order must be positive");
  H0Prediction out;
  if (has_prime_other_than(chi_order, p)) {
    out.which = H0Case::OrderNotPPower;
    return out;
  }
  if (second_kind)
    fail(ErrorKind::InvalidArgument, "the second-kind case needs the embedded character to evaluate h");
  out.which = H0Case::PPowerOutside;
  out.size.exact = false;
  out.size.strict = true;
  return out;
}

H0Prediction predict_h0(const EmbeddedCharacter& chi, const TwistPoint& e, long prec) {
  e.require_admissible();
  const auto& frame = e.frame();
  const long p = frame.p;
  const DirichletCharacter& c = chi.character();
  if (has_prime_other_than(c.order(), p)) return predict_h0_from_order(p, c.order(), false);
  SecondKindSplit split = second_kind_split(c, p);
  if (!split.second_kind) return predict_h0_from_order(p, c.order(), false);

  // gamma_0 acts on the twist by psi(q) q^(1-e), so H^0 = ker(1 - gamma_0).
  H0Prediction out;
  out.which = H0Case::InsideCyclotomic;
  auto h = h_polynomial(chi, frame, prec);
  FieldPtr field = e.e().field()->degree() >= chi.field()->degree() ? e.e().field() : chi.field();
  PadicNumber one = exact_int(field, 1);
  PadicNumber ee = e.e().embed_into(field);
  PadicNumber q = PadicNumber::exact(ExtensionField::base(p), Rational(frame.q));
  PadicNumber t = diamond_pow(q, one - ee, frame, prec) - one;
  PadicNumber value = h.size() == 1 ? h[0] : h[0] + h[1] * t;
  if (value.is_exact_zero()) {
    out.size.infinite = true;
    return out;
  }
  if (value.is_zero())
    fail(ErrorKind::PrecisionExhausted, "h(q^(1-e) - 1) is zero to precision " + std::to_string(value.precision()));
  out.size.val = value.valuation();
  return out;
}

EulerCharReport euler_char(const H0Prediction& h0, const PadicNumber& e, const std::set<long>& primes,
                           const PadicNumber& l_value, const std::optional<VanishingOrder>& nu) {
  if (!l_value.valid()) fail(ErrorKind::InvalidArgument, "L-value is uninitialised");
  EulerCharReport out;
  out.e = e;
  out.primes = primes;
  out.l_value = l_value;
  out.h0 = h0.size;
  out.r0 = 0;  // Q_p/Z_p(1-e) twisted by chi is never fixed on the admissible domain
  if (!l_value.is_zero()) {
    out.finite = true;
    out.h2_trivial = true;
    out.ec_valuation = l_value.valuation();
    out.h1 = h0.size;
    out.h1.val = h0.size.val + *out.ec_valuation;
    out.r1 = 0;
    out.r2 = 0;
    out.nu_lower = 0;
    out.nu_exact = 0;
    if (!h0.size.exact) out.notes.push_back("H^0 is only bounded below, so H^1 is too");
    return out;
  }
  if (l_value.precision() <= 0) fail(ErrorKind::PrecisionExhausted, "L-value carries no precision");
  out.finite = false;
  out.h1.infinite = true;
  out.h1.exact = false;
  if (nu) {
    out.nu_lower = nu->lower;
    out.nu_exact = nu->exact;
  } else {
    out.nu_lower = 1;
  }
  out.notes.push_back("L-value is zero to precision " + std::to_string(l_value.precision()) +
                      "; H^1 and H^2 are infinite candidates");
  return out;
}

EulerCharReport euler_char(const PadicLSeries& series, const TwistPoint& e, const std::set<long>& primes,
                           long terms) {
  e.require_admissible();
  const auto& chi = series.character();
  H0Prediction h0 = predict_h0(chi, e, series.working_precision());
  PadicNumber l = lps_eval(series, e.e(), primes);
  std::optional<VanishingOrder> nu;
  if (l.is_zero()) {
    IwasawaAnalyticSeries iw = to_iwasawa_series(series, std::min(terms, series.s_precision()));
    nu = order_of_vanishing(iw, e.e(), primes, series.working_precision());
  }
  EulerCharReport out = euler_char(h0, e.e(), primes, l, nu);
  out.character = chi.character().to_text();
  if (h0.which == H0Case::InsideCyclotomic && !chi.character().is_trivial() && h0.size.val > 0)
    out.notes.push_back("second-kind character: H^0 is nontrivial");
  return out;
}

long additive_euler_char(long dim, long conj_trace) {
  if (dim < 0) fail(ErrorKind::InvalidArgument, "dimension must be non-negative");
  if (std::abs(conj_trace) > dim) fail(ErrorKind::ParityMismatch, "|trace of c| exceeds the dimension");
  if ((dim - conj_trace) % 2 != 0)
    fail(ErrorKind::ParityMismatch, "trace of c must have the parity of the dimension");
  return (conj_trace - dim) / 2;
}

SChangeReport s_change(const EmbeddedCharacter& chi, const PadicNumber& e, const std::set<long>& primes,
                       const std::set<long>& larger, long prec) {
  if (!std::includes(larger.begin(), larger.end(), primes.begin(), primes.end()))
    fail(ErrorKind::InvalidArgument, "S must be contained in S'");
  const long p = chi.field()->p();
  EmbeddedCharacter eta = chi.with_character(twist(chi.character(), -1, p));
  SChangeReport out;
  for (long v : larger) {
    if (primes.count(v) || v == p) continue;
    PadicNumber f = diamond_euler_factor(v, eta, e, prec);
    if (f.is_zero()) {
      auto k = eta.character().primitive().evaluate(v);
      if (e.is_exact_zero() && k && *k == 0) {
        ++out.corank_jump;
        out.vanishing_at.push_back(v);
        continue;
      }
      fail(ErrorKind::PrecisionExhausted, "Euler factor at " + std::to_string(v) + " is zero to precision");
    }
    out.factor_valuation += f.valuation();
  }
  return out;
}

BoundsVerdict conjecture_check(const EulerCharReport& report) {
  BoundsVerdict out;
  if (!report.r0 || !report.r2) {
    out.detail = "coranks r0 and r2 are needed";
    return out;
  }
  const long r0 = *report.r0;
  const long r2 = *report.r2;
  const long diff = r2 - r0;
  const long nu_lo = report.nu_lower;
  out.determined = report.nu_exact.has_value();
  if (report.nu_exact) {
    const long nu = *report.nu_exact;
    out.holds = std::min(1 - r0, nu) <= diff && diff <= nu;
    out.equality = diff == nu ? EqualityStatus::Holds : EqualityStatus::Fails;
  } else {
    // With only nu >= nu_lo known, the upper bound cannot be refuted.
    out.holds = std::min(1 - r0, nu_lo) <= diff;
    out.equality = EqualityStatus::Undetermined;
  }
  out.detail = "min(1 - r0, nu) <= r2 - r0 <= nu with r0 = " + std::to_string(r0) + ", r2 = " + std::to_string(r2) +
               ", nu " + (report.nu_exact ? "= " + std::to_string(*report.nu_exact) : ">= " + std::to_string(nu_lo));
  if (!out.holds) out.equality = EqualityStatus::Fails;
  return out;
}

Section6Report section6_report(const Section6Data& data, long prec) {
  const long p = data.iwasawa.p;
  if (!data.field) fail(ErrorKind::InvalidArgument, "Iwasawa data needs a coefficient field E");
  IwasawaAnalyticSeries series = from_user_data(data.iwasawa);
  const auto frame = CyclotomicFrame::for_prime(p);
  const long degree = data.field->degree();

  Section6Report out;
  out.name = data.name;
  out.distinguished = is_distinguished(data.iwasawa.P);
  out.eisenstein = is_eisenstein(data.iwasawa.P);
  if (!out.distinguished) fail(ErrorKind::FileFormat, "P(T) is not distinguished");

  H0Prediction h0 = predict_h0_from_order(p, data.chi_order, data.second_kind);
  for (const auto& ev : data.e_values) {
    Section6Row row;
    row.e = PadicNumber::exact(data.field, ev);
    TwistPoint tp(row.e, frame, false);
    tp.require_admissible();
    row.t = series.t_at(row.e, prec);
    PadicNumber h = series.h_at(row.t);
    if (h.is_zero()) fail(ErrorKind::PoleAtOne, "h(T) vanishes at e = " + ev.get_str());
    row.l_value = series.phi_at(row.t) / h;
    std::optional<VanishingOrder> nu;
    if (row.l_value.is_zero()) nu = order_of_vanishing(series, row.e, {p}, prec);
    row.report = euler_char(h0, row.e, {p}, row.l_value, nu);
    row.report.provenance = Provenance::UserSupplied;
    row.report.character = "order " + std::to_string(data.chi_order);
    row.abs_l_valuation = row.report.finite ? *row.report.ec_valuation : row.l_value.valuation_bound();
    if (row.report.finite && row.report.h1.exact) {
      Rational k = row.report.h1.val * degree;
      if (k.get_den() == 1) row.h1_order_log = k.get_num().get_si();
    }
    auto override_it = data.r2_overrides.find(ev.get_str());
    if (override_it != data.r2_overrides.end()) {
      row.report.r2 = override_it->second;
      row.report.r1 = override_it->second;
    }
    row.bounds = conjecture_check(row.report);
    out.rows.push_back(std::move(row));
  }

  for (const auto& coords : data.roots) {
    if (!data.root_field) fail(ErrorKind::FileFormat, "roots need a root field");
    RootCheck rc;
    rc.alpha = coords.front().embed_into(data.root_field);
    PadicNumber x = PadicNumber::generator(data.root_field);
    for (size_t i = 1; i < coords.size(); ++i) rc.alpha += coords[i].embed_into(data.root_field) * x.pow(i);
    std::vector<PadicNumber> P;
    for (const auto& c : data.iwasawa.P) P.push_back(c.embed_into(data.root_field));
    rc.value = poly_eval(P, rc.alpha);
    rc.value_valuation = rc.value.valuation_bound();
    rc.required = make_rational(data.root_radius_pi, data.root_field->ramification_index());
    rc.passed = rc.value.is_zero() && rc.value_valuation >= rc.required;
    out.roots.push_back(std::move(rc));
  }

  auto computed = [&](const std::string& name) -> std::optional<std::string> {
    if (name == "eisenstein") return std::string(out.eisenstein ? "true" : "false");
    if (name == "all_orders_trivial") {
      bool all = !out.rows.empty();
      for (const auto& r : out.rows)
        all = all && r.report.finite && r.report.h0.exact && r.report.h0.val == 0 && r.report.h1.val == 0;
      return std::string(all ? "true" : "false");
    }
    if (name == "abs_L_on_Zp" || name == "h1_order_on_Zp") {
      std::optional<std::string> common;
      for (const auto& r : out.rows) {
        if (!r.report.finite) return std::string("infinite at e = " + r.e.to_rational().get_str());
        std::string s = name == "abs_L_on_Zp" ? abs_text(p, r.abs_l_valuation)
                                              : order_text(p, r.report.h1.val, degree);
        if (common && *common != s) return std::string("varies");
        common = s;
      }
      return common;
    }
    if (name == "roots_verified") {
      bool all = !out.roots.empty();
      for (const auto& r : out.roots) all = all && r.passed;
      return std::string(all ? "true" : "false");
    }
    auto at = name.find('@');
    if (at == std::string::npos) return std::nullopt;
    std::string key = name.substr(0, at);
    std::string ev = name.substr(at + 1);
    for (const auto& r : out.rows) {
      if (r.e.to_rational().get_str() != ev) continue;
      if (key == "h1_order")
        return r.report.finite ? order_text(p, r.report.h1.val, degree) : std::string("infinite");
      if (key == "nu")
        return r.report.nu_exact ? std::to_string(*r.report.nu_exact) : ">= " + std::to_string(r.report.nu_lower);
      if (key == "equality") return to_string(r.bounds.equality);
    }
    return std::nullopt;
  };

  out.passed = true;
  for (const auto& [name, value] : data.claims) {
    Section6Claim claim;
    claim.name = name;
    claim.published_value = value;
    auto c = computed(name);
    if (!c) fail(ErrorKind::FileFormat, "unknown claim '" + name + "'");
    claim.computed_value = *c;
    claim.agrees = claim.computed_value == claim.published_value;
    claim.expected_discrepancy = data.expected_discrepancies.count(name) > 0;
    if (claim.agrees == claim.expected_discrepancy) out.passed = false;
    out.claims.push_back(std::move(claim));
  }
  for (const auto& r : out.roots) out.passed = out.passed && r.passed;
  for (const auto& name : data.expected_discrepancies)
    if (!data.claims.count(name)) fail(ErrorKind::FileFormat, "expected discrepancy '" + name + "' has no claim");
  return out;
}

std::string to_string(H0Case which) {
  switch (which) {
    case H0Case::OrderNotPPower: return "order-not-p-power";
    case H0Case::InsideCyclotomic: return "inside-cyclotomic";
    case H0Case::PPowerOutside: return "p-power-outside";
  }
  return "unknown";
}

std::string to_string(EqualityStatus status) {
  switch (status) {
    case EqualityStatus::Holds: return "holds";
    case EqualityStatus::Fails: return "fails";
    case EqualityStatus::Undetermined: return "undetermined";
  }
  return "unknown";
}

}  // namespace iwalab
