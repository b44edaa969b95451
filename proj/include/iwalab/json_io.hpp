#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "iwalab/classical_l.hpp"
#include "iwalab/cohom_predict.hpp"
#include "iwalab/errors.hpp"
#include "iwalab/lambda_modules.hpp"
#include "iwalab/padic.hpp"
#include "iwalab/padic_l.hpp"

namespace iwalab {

using Json = nlohmann::json;

// Integers with more than 15 significant digits become decimal strings.
Json integer_json(const Integer& n);
// {"num": "...", "den": "..."} with both parts as decimal strings.
Json rational_json(const Rational& q);
// {"val", "prec", "exact", "digits"}; "val" is null for zero to precision.
Json padic_json(const PadicNumber& x);
Json cyclotomic_json(const CyclotomicValue& v);
Json polynomial_json(const PadicPolynomial& g);
Json size_json(const SizeValuation& s);

Json series_json(const PadicLSeries& series);
Json iwasawa_json(const IwasawaAnalyticSeries& series);
Json weierstrass_json(const WeierstrassData& w);
Json euler_report_json(const EulerCharReport& report, const BoundsVerdict& bounds);
Json section6_json(const Section6Report& report);
Json error_json(const Error& error);

// Lambda-module structure {"mu":[...], "g":[[c0, c1, ...], ...]}.
LambdaModuleStructure structure_from_json(const Json& j, const FieldPtr& field);

// Published Iwasawa data: {"q", "h", "mu", "P", "base5_notation", plus report inputs}.
Section6Data section6_from_json(const Json& j);
Section6Data load_section6(const std::filesystem::path& path);

// Stable text form: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace iwalab
