#include "iwalab/json_io.hpp"

#include <fstream>
#include <sstream>

#include "iwalab/poly_text.hpp"

namespace iwalab {

namespace {

Json valuation_json(const Rational& v) {
  if (v.get_den() == 1) return integer_json(v.get_num());
  return v.get_str();
}

Json rational_set(const std::set<long>& s) { return Json(std::vector<long>(s.begin(), s.end())); }

[[noreturn]] void format_error(const std::string& what) { fail(ErrorKind::FileFormat, what); }

const Json& require(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) format_error(std::string("missing key '") + key + "'");
  return *it;
}

PadicNumber coefficient_from_json(const Json& c, const FieldPtr& field, bool digits_allowed) {
  if (c.is_number_integer()) return PadicNumber::exact(field, Rational(c.get<long>()));
  if (!c.is_string()) format_error("coefficients must be integers or strings");
  ParsedCoefficient parsed = parse_coefficient(c.get<std::string>());
  if (!parsed.precision) return PadicNumber::exact(field, parsed.value);
  if (!digits_allowed) format_error("digit-string coefficient '" + c.get<std::string>() + "' needs base5_notation");
  if (*parsed.digit_base != field->p())
    format_error("digit string in base " + std::to_string(*parsed.digit_base) + " over p = " +
                 std::to_string(field->p()));
  return PadicNumber::from_rational(field, parsed.value, *parsed.precision);
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) format_error("expected an integer or a rational string");
  ParsedCoefficient c = parse_coefficient(j.get<std::string>());
  if (c.precision) format_error("expected an exact rational");
  return c.value;
}

}  // namespace

Json integer_json(const Integer& n) {
  std::string s = n.get_str();
  size_t digits = s.size() - (s[0] == '-' ? 1 : 0);
  if (digits > 15) return s;
  return n.get_si();
}

Json rational_json(const Rational& q) { return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

Json padic_json(const PadicNumber& x) {
  Json j;
  j["exact"] = x.is_exact();
  j["digits"] = x.to_string();
  if (x.is_exact()) {
    j["prec"] = nullptr;
  } else {
    j["prec"] = x.precision();
    j["prec_pi"] = x.precision_pi();
  }
  if (x.is_zero()) {
    j["val"] = nullptr;
  } else {
    j["val"] = valuation_json(x.valuation());
  }
  return j;
}

Json cyclotomic_json(const CyclotomicValue& v) {
  Json coords = Json::array();
  for (const auto& c : v.coords()) coords.push_back(rational_json(c));
  Json j{{"order", v.order()}, {"text", v.to_string()}, {"coords", coords}};
  if (v.is_rational()) j["rational"] = rational_json(v.as_rational());
  return j;
}

Json polynomial_json(const PadicPolynomial& g) {
  Json coeffs = Json::array();
  for (const auto& c : g) coeffs.push_back(padic_json(c));
  return {{"text", poly_to_string(g)}, {"coeffs", coeffs}};
}

Json size_json(const SizeValuation& s) {
  Json j{{"exact", s.exact}, {"infinite", s.infinite}, {"strict_lower_bound", s.strict}};
  j["val"] = s.infinite ? Json(nullptr) : valuation_json(s.val);
  return j;
}

Json series_json(const PadicLSeries& series) {
  Json coeffs = Json::array();
  for (const auto& c : series.coefficients()) coeffs.push_back(padic_json(c));
  return {{"char", series.character().character().to_text()},
          {"p", series.frame().p},
          {"field", series.character().field()->description()},
          {"pole_order", series.pole_order()},
          {"coeffs", coeffs},
          {"ledger",
           {{"N", series.value_precision()}, {"M", series.s_precision()}, {"delta", 0},
            {"working", series.working_precision()}}}};
}

Json iwasawa_json(const IwasawaAnalyticSeries& series) {
  Json phi = Json::array();
  for (const auto& c : series.phi) phi.push_back(padic_json(c));
  Json h = Json::array();
  for (const auto& c : series.h) h.push_back(padic_json(c));
  Json j{{"p", series.p},
         {"q", rational_json(series.q)},
         {"field", series.field->description()},
         {"phi", phi},
         {"h", h},
         {"provenance", series.provenance == Provenance::Computed ? "computed" : "user_supplied"},
         {"ledger",
          {{"N", series.ledger.value_precision}, {"M", series.ledger.terms}, {"delta", series.ledger.delta}}}};
  if (series.character) j["char"] = series.character->to_text();
  return j;
}

Json weierstrass_json(const WeierstrassData& w) {
  Json unit = Json::array();
  for (const auto& c : w.unit_head.coefficients()) unit.push_back(padic_json(c));
  return {{"mu", w.mu},
          {"lambda", w.lambda},
          {"distinguished", polynomial_json(w.distinguished)},
          {"unit_head", unit},
          {"certification", w.certification == Certification::Exact ? "exact" : "mu_ambiguous"},
          {"certified_precision_pi",
           w.certified_precision_pi >= PadicNumber::kExact ? Json(nullptr) : Json(w.certified_precision_pi)}};
}

Json euler_report_json(const EulerCharReport& report, const BoundsVerdict& bounds) {
  auto opt = [](const std::optional<long>& v) { return v ? Json(*v) : Json(nullptr); };
  Json j{{"char", report.character},
         {"e", padic_json(report.e)},
         {"S", rational_set(report.primes)},
         {"L", padic_json(report.l_value)},
         {"h0", size_json(report.h0)},
         {"h1", size_json(report.h1)},
         {"h2_trivial", report.h2_trivial},
         {"finite", report.finite},
         {"coranks", {{"r0", opt(report.r0)}, {"r1", opt(report.r1)}, {"r2", opt(report.r2)}}},
         {"nu", {{"lower", report.nu_lower}, {"exact", opt(report.nu_exact)}}},
         {"bounds", {{"holds", bounds.holds}, {"determined", bounds.determined},
                     {"equality", to_string(bounds.equality)}, {"detail", bounds.detail}}},
         {"notes", report.notes},
         {"provenance", report.provenance == Provenance::Computed ? "computed" : "user_supplied"}};
  j["ec_val"] = report.ec_valuation ? valuation_json(*report.ec_valuation) : Json(nullptr);
  return j;
}

Json section6_json(const Section6Report& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json row = euler_report_json(r.report, r.bounds);
    row["e_value"] = rational_json(r.e.to_rational());
    row["T"] = padic_json(r.t);
    row["abs_L_valuation"] = valuation_json(r.abs_l_valuation);
    row["h1_order_log_p"] = r.h1_order_log ? Json(*r.h1_order_log) : Json(nullptr);
    rows.push_back(row);
  }
  Json roots = Json::array();
  for (const auto& r : report.roots)
    roots.push_back({{"alpha", padic_json(r.alpha)},
                     {"P_alpha", padic_json(r.value)},
                     {"valuation_at_least", valuation_json(r.value_valuation)},
                     {"required", valuation_json(r.required)},
                     {"passed", r.passed}});
  Json claims = Json::array();
  for (const auto& c : report.claims)
    claims.push_back({{"name", c.name},
                      {"published", c.published_value},
                      {"computed", c.computed_value},
                      {"agrees", c.agrees},
                      {"expected_discrepancy", c.expected_discrepancy}});
  return {{"name", report.name}, {"eisenstein", report.eisenstein}, {"distinguished", report.distinguished},
          {"rows", rows},        {"roots", roots},                  {"claims", claims},
          {"passed", report.passed}};
}

Json error_json(const Error& error) {
  return {{"error", std::string(to_string(error.kind()))}, {"message", error.what()}};
}

LambdaModuleStructure structure_from_json(const Json& j, const FieldPtr& field) {
  LambdaModuleStructure out;
  if (j.contains("mu"))
    for (const auto& m : j["mu"]) out.mu_parts.push_back(m.get<long>());
  if (j.contains("g")) {
    for (const auto& g : j["g"]) {
      PadicPolynomial poly;
      if (g.is_string()) {
        poly = polynomial_from_text(field, g.get<std::string>());
      } else {
        for (const auto& c : g) poly.push_back(coefficient_from_json(c, field, true));
      }
      out.poly_parts.push_back(std::move(poly));
    }
  }
  if (j.contains("models")) out.models = j["models"].get<std::string>();
  return out;
}

Section6Data section6_from_json(const Json& j) {
  try {
    Section6Data out;
    out.name = j.value("name", std::string("Iwasawa data"));
    const long p = j.value("p", 5L);
    if (!is_prime(p)) format_error("p must be prime");
    out.field = ExtensionField::parse(p, j.value("field", std::string("Qp")));
    const bool digits = j.value("base5_notation", false);
    out.iwasawa.p = p;
    out.iwasawa.q = rational_from_json(require(j, "q"));
    out.iwasawa.mu = j.value("mu", 0L);
    for (const auto& c : require(j, "P")) out.iwasawa.P.push_back(coefficient_from_json(c, out.field, digits));
    std::string h = j.value("h", std::string("1"));
    out.iwasawa.h = polynomial_from_text(out.field, h);
    if (out.iwasawa.h.size() > 2) format_error("h(T) has degree at most 1");
    out.chi_order = require(j, "chi_order").get<long>();
    out.second_kind = j.value("second_kind", false);
    for (const auto& e : require(j, "e")) out.e_values.push_back(rational_from_json(e));
    if (j.contains("r2"))
      for (const auto& [key, value] : j["r2"].items()) out.r2_overrides[rational_from_json(Json(key)).get_str()] = value.get<long>();
    if (j.contains("roots")) {
      const Json& r = j["roots"];
      out.root_field = ExtensionField::parse(p, require(r, "field").get<std::string>());
      out.root_radius_pi = require(r, "radius_pi").get<long>();
      for (const auto& alpha : require(r, "values")) {
        std::vector<PadicNumber> coords;
        for (const auto& c : alpha) coords.push_back(coefficient_from_json(c, ExtensionField::base(p), true));
        out.roots.push_back(std::move(coords));
      }
    }
    if (j.contains("claims"))
      for (const auto& [key, value] : j["claims"].items()) out.claims[key] = value.get<std::string>();
    if (j.contains("expected_discrepancies"))
      for (const auto& name : j["expected_discrepancies"]) out.expected_discrepancies.insert(name.get<std::string>());
    return out;
  } catch (const Json::exception& ex) {
    format_error(std::string("Iwasawa data: ") + ex.what());
  }
}

Section6Data load_section6(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) format_error("cannot open " + path.string());
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& ex) {
    format_error(path.string() + ": " + ex.what());
  }
  return section6_from_json(j);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace iwalab
